#include "qil/suite.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "qil/channel.hpp"
#include "qil/entropy.hpp"
#include "qil/protocols.hpp"
#include "qil/rng.hpp"
#include "qil/state.hpp"

namespace qil {

using nlohmann::json;

namespace {

constexpr std::uint64_t kWitnessSeed = ~std::uint64_t{0};
constexpr std::size_t kSuiteStateCap = 256;  // total dim cap for sampled states

const std::vector<std::pair<PropertyId, const char*>>& name_table() {
    static const std::vector<std::pair<PropertyId, const char*>> t = {
        {PropertyId::a, "a"},
        {PropertyId::b, "b"},
        {PropertyId::b_prime, "b_prime"},
        {PropertyId::c, "c"},
        {PropertyId::d, "d"},
        {PropertyId::e, "e"},
        {PropertyId::e_prime, "e_prime"},
        {PropertyId::f, "f"},
        {PropertyId::g, "g"},
        {PropertyId::h, "h"},
        {PropertyId::holevo, "holevo"},
        {PropertyId::dpi, "dpi"},
        {PropertyId::zeroth, "zeroth"},
        {PropertyId::second_first_step, "second_first_step"},
        {PropertyId::chi_identity, "chi_identity"},
        {PropertyId::observer_agreement, "observer_agreement"},
    };
    return t;
}

std::vector<std::size_t> sample_dims(Rng& rng, const PropertyCheckConfig& cfg,
                                     std::size_t count) {
    std::vector<std::size_t> dims(count);
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::size_t total = 1;
        for (auto& d : dims) {
            d = cfg.dims[rng.integer(cfg.dims.size())];
            total *= d;
        }
        if (total <= kSuiteStateCap) return dims;
    }
    return std::vector<std::size_t>(count, 2);  // pool is pathological; fall back to qubits
}

SystemRegistry make_registry(std::span<const std::string> labels,
                             std::span<const std::size_t> dims) {
    std::vector<SystemEntry> entries;
    for (std::size_t i = 0; i < labels.size(); ++i)
        entries.push_back(SystemEntry::physical(labels[i], dims[i]));
    return SystemRegistry(std::move(entries));
}

DensityMatrix sample_state(Rng& rng, const SystemRegistry& reg,
                           const PropertyCheckConfig& cfg) {
    std::size_t rank = cfg.ranks.empty() ? 1 : cfg.ranks[rng.integer(cfg.ranks.size())];
    if (rank == 0 || rank > reg.total_dim()) rank = reg.total_dim();
    return random_density_matrix(reg, rank, rng);
}

DensityMatrix sample_multipartite(Rng& rng, const PropertyCheckConfig& cfg,
                                  std::span<const std::string> labels) {
    auto dims = sample_dims(rng, cfg, labels.size());
    return sample_state(rng, make_registry(labels, dims), cfg);
}

Ensemble sample_ensemble(Rng& rng, std::size_t dim, std::size_t count) {
    std::vector<Ensemble::Item> items;
    double total = 0.0;
    std::vector<double> weights(count);
    for (auto& w : weights) {
        w = -std::log(1.0 - rng.uniform());
        total += w;
    }
    for (std::size_t i = 0; i < count; ++i) {
        Vec v(static_cast<Eigen::Index>(dim));
        for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cplx(rng.normal(), rng.normal());
        v /= v.norm();
        items.push_back({weights[i] / total, std::move(v)});
    }
    return Ensemble(dim, std::move(items));
}

Channel sample_preset_channel(Rng& rng, std::size_t dim) {
    const double param = rng.uniform();
    switch (rng.integer(dim == 2 ? 4 : 3)) {
        case 0: return preset_channel("identity", 0.0, dim);
        case 1: return preset_channel("dephasing", param, dim);
        case 2: return preset_channel("depolarizing", param, dim);
        default: return preset_channel("amplitude_damping", param, dim);
    }
}

double margin_a(const DensityMatrix& rho) {
    const double e = directed_entanglement(rho, {"X"}, {"Y"});
    const double sx = von_neumann(partial_trace(rho, {"X"}));
    return std::min(sx - e, e + sx);
}

double margin_f(const DensityMatrix& rho) {
    const double e = directed_entanglement(rho, {"X"}, {"Y"});
    const double e_yc = directed_entanglement(classicize(rho, {"Y"}), {"X"}, {"Y"});
    const double e_cc = directed_entanglement(classicize(rho, {"X", "Y"}), {"X"}, {"Y"});
    return std::min(e - e_yc, e_yc - e_cc);
}

double margin_h(const DensityMatrix& rho) {
    const double e_yc = directed_entanglement(classicize(rho, {"Y"}), {"X"}, {"Y"});
    const double sx = von_neumann(partial_trace(rho, {"X"}));
    return std::min(-e_yc, e_yc + sx);
}

double observer_margin(const PureState& input) {
    MeasurementSpec spec;
    spec.target = "L";
    PureState state = add_observer(simulate_measurement(input, spec), "M", "C");
    std::vector<std::string> bc{"B", "C"};
    ProbabilityVector joint = joint_diagonal_distribution(
        partial_trace(state, std::span<const std::string>(bc)), std::span<const std::string>(bc));
    const std::size_t m = state.registry().dim_of("B");
    double pr_equal = 0.0;
    for (std::size_t j = 0; j < m; ++j) pr_equal += joint[j * m + j];
    const double h_b = shannon(diagonal_distribution(state, "B"));
    const double h_c = shannon(diagonal_distribution(state, "C"));
    const double i_bc = mutual_information_rv(state, {"B"}, {"C"});
    return std::min({-std::abs(pr_equal - 1.0), -std::abs(i_bc - h_b), -std::abs(h_b - h_c)});
}

double random_trial_margin(PropertyId id, Rng& rng, const PropertyCheckConfig& cfg) {
    static const std::vector<std::string> xy{"X", "Y"};
    static const std::vector<std::string> xyz{"X", "Y", "Z"};
    static const std::vector<std::string> xyzw{"X", "Y", "Z", "W"};
    switch (id) {
        case PropertyId::a:
            return margin_a(sample_multipartite(rng, cfg, xy));
        case PropertyId::b: {
            DensityMatrix rho = sample_multipartite(rng, cfg, xyz);
            return directed_entanglement(rho, {"X"}, {"Y", "Z"}) -
                   directed_entanglement(rho, {"X"}, {"Y"});
        }
        case PropertyId::b_prime: {
            DensityMatrix rho_xy = sample_multipartite(rng, cfg, xy);
            std::vector<std::string> z{"Z"};
            DensityMatrix rho = tensor(rho_xy, sample_multipartite(rng, cfg, z));
            return -std::abs(directed_entanglement(rho, {"X"}, {"Y", "Z"}) -
                             directed_entanglement(rho, {"X"}, {"Y"}));
        }
        case PropertyId::c: {
            DensityMatrix rho = sample_multipartite(rng, cfg, xyz);
            return -std::abs(directed_entanglement(rho, {"X", "Y"}, {"Z"}) -
                             directed_entanglement(rho, {"X"}, {"Z"}) -
                             directed_entanglement(rho, {"Y"}, {"X", "Z"}));
        }
        case PropertyId::d: {
            DensityMatrix rho = sample_multipartite(rng, cfg, xyz);
            return directed_entanglement(rho, {"X"}, {"Y", "Z"}) -
                   directed_entanglement(rho, {"X"}, {"Y"}) -
                   directed_entanglement(rho, {"X"}, {"Z"});
        }
        case PropertyId::e: {
            DensityMatrix rho = sample_multipartite(rng, cfg, xyzw);
            return directed_entanglement(rho, {"X", "Y"}, {"Z", "W"}) -
                   directed_entanglement(rho, {"X"}, {"Z"}) -
                   directed_entanglement(rho, {"Y"}, {"W"});
        }
        case PropertyId::e_prime: {
            std::vector<std::string> xz{"X", "Z"}, yw{"Y", "W"};
            DensityMatrix rho =
                tensor(sample_multipartite(rng, cfg, xz), sample_multipartite(rng, cfg, yw));
            return -std::abs(directed_entanglement(rho, {"X", "Y"}, {"Z", "W"}) -
                             directed_entanglement(rho, {"X"}, {"Z"}) -
                             directed_entanglement(rho, {"Y"}, {"W"}));
        }
        case PropertyId::f:
            return margin_f(sample_multipartite(rng, cfg, xy));
        case PropertyId::g: {
            DensityMatrix rho = sample_multipartite(rng, cfg, xy);
            const double e = directed_entanglement(rho, {"X"}, {"Y"});
            DensityMatrix rot = apply_unitary(
                rho, random_haar_unitary(rho.registry().dim_of("X"), rng, {"X"}));
            rot = apply_unitary(rot,
                                random_haar_unitary(rot.registry().dim_of("Y"), rng, {"Y"}));
            return -std::abs(directed_entanglement(rot, {"X"}, {"Y"}) - e);
        }
        case PropertyId::h:
            return margin_h(sample_multipartite(rng, cfg, xy));
        case PropertyId::holevo:
        case PropertyId::chi_identity: {
            const std::size_t dim = 2 + rng.integer(2);  // qubit or qutrit
            Ensemble ens = sample_ensemble(rng, dim, 2 + rng.integer(3));
            Channel ch = sample_preset_channel(rng, dim);
            MeasurementSpec meas;
            meas.basis = haar_matrix(dim, rng);
            HolevoReport rep = simulate_classical_communication(ens, ch, meas, cfg.tolerance);
            return id == PropertyId::holevo ? rep.bound_margin : rep.identity_margin;
        }
        case PropertyId::dpi: {
            SystemRegistry reg({SystemEntry::physical("Q", 2)});
            DensityMatrix rho = random_density_matrix(reg, 1 + rng.integer(2), rng);
            DpiReport rep = simulate_dpi_chain(rho, sample_preset_channel(rng, 2),
                                               sample_preset_channel(rng, 2), cfg.tolerance);
            return std::min(rep.chain_margin, rep.identity_margin);
        }
        case PropertyId::zeroth: {
            std::vector<std::string> l1{"Q1"}, l2{"Q2"};
            auto d1 = sample_dims(rng, cfg, 1), d2 = sample_dims(rng, cfg, 1);
            DensityMatrix rho1 = sample_state(rng, make_registry(l1, d1), cfg);
            DensityMatrix rho2 = sample_state(rng, make_registry(l2, d2), cfg);
            DensityMatrix joint = make_zeroth_joint(rho1, rho2, 2);
            Unitary u = random_haar_unitary(d1[0] * d2[0], rng, {"Q1", "Q2"});
            std::vector<std::string> lb{"B"};
            ZerothLawReport rep = check_zeroth_law(joint, l1, l2, lb, u, cfg.tolerance);
            return std::min({rep.monotonicity_margin, rep.subadditivity_margin,
                             rep.initial_equality_margin});
        }
        case PropertyId::second_first_step: {
            CascadeConfig cc;
            cc.dims = {2, 4, 8};
            cc.sweeps = 1;
            cc.seed = rng.integer(~std::uint64_t{0} - 1);
            CascadeReport rep = simulate_cascade(cc, "B", cfg.tolerance);
            return std::min(rep.first_step_margin, rep.bound_margin);
        }
        case PropertyId::observer_agreement: {
            auto dims = sample_dims(rng, cfg, 2);
            SystemRegistry reg({SystemEntry::physical("R", dims[0]),
                                SystemEntry::physical("L", dims[1])});
            return observer_margin(random_pure_state(reg, rng));
        }
    }
    throw std::logic_error("unknown property id");
}

// Constructed extremal/equality witness per property (Bell states for the
// entanglement extremes, products for the zero cases, noiseless setups for
// the experiment properties).
double witness_margin(PropertyId id, const PropertyCheckConfig& cfg) {
    SystemRegistry bell_reg(
        {SystemEntry::physical("X", 2), SystemEntry::physical("Y", 2)});
    Vec bell(4);
    bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    DensityMatrix bell_rho = DensityMatrix::from_pure(PureState(bell_reg, bell));
    Rng rng(split_seed(cfg.seed, kWitnessSeed));
    auto product = [&](std::span<const std::string> labels) {
        DensityMatrix rho = DensityMatrix::from_pure(random_pure_state(
            SystemRegistry({SystemEntry::physical(std::string(labels[0]), 2)}), rng));
        for (std::size_t i = 1; i < labels.size(); ++i)
            rho = tensor(rho, DensityMatrix::from_pure(random_pure_state(
                                  SystemRegistry({SystemEntry::physical(labels[i], 2)}), rng)));
        return rho;
    };
    static const std::vector<std::string> xy{"X", "Y"};
    static const std::vector<std::string> xyz{"X", "Y", "Z"};
    static const std::vector<std::string> xyzw{"X", "Y", "Z", "W"};
    switch (id) {
        case PropertyId::a:
            return margin_a(bell_rho);  // E = S(X): upper bound saturated
        case PropertyId::b: {
            DensityMatrix rho = product(xyz);
            return directed_entanglement(rho, {"X"}, {"Y", "Z"}) -
                   directed_entanglement(rho, {"X"}, {"Y"});
        }
        case PropertyId::b_prime: {
            std::vector<std::string> z{"Z"};
            DensityMatrix rho = tensor(bell_rho, product(z));
            return -std::abs(directed_entanglement(rho, {"X"}, {"Y", "Z"}) -
                             directed_entanglement(rho, {"X"}, {"Y"}));
        }
        case PropertyId::c: {
            DensityMatrix rho = product(xyz);
            return -std::abs(directed_entanglement(rho, {"X", "Y"}, {"Z"}) -
                             directed_entanglement(rho, {"X"}, {"Z"}) -
                             directed_entanglement(rho, {"Y"}, {"X", "Z"}));
        }
        case PropertyId::d: {
            DensityMatrix rho = product(xyz);
            return directed_entanglement(rho, {"X"}, {"Y", "Z"}) -
                   directed_entanglement(rho, {"X"}, {"Y"}) -
                   directed_entanglement(rho, {"X"}, {"Z"});
        }
        case PropertyId::e: {
            DensityMatrix rho = product(xyzw);
            return directed_entanglement(rho, {"X", "Y"}, {"Z", "W"}) -
                   directed_entanglement(rho, {"X"}, {"Z"}) -
                   directed_entanglement(rho, {"Y"}, {"W"});
        }
        case PropertyId::e_prime: {
            SystemRegistry yw_reg(
                {SystemEntry::physical("Y", 2), SystemEntry::physical("W", 2)});
            Vec bell_yw(4);
            bell_yw << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
            SystemRegistry xz_reg(
                {SystemEntry::physical("X", 2), SystemEntry::physical("Z", 2)});
            Vec bell_xz = bell_yw;
            DensityMatrix rho =
                tensor(DensityMatrix::from_pure(PureState(xz_reg, bell_xz)),
                       DensityMatrix::from_pure(PureState(yw_reg, bell_yw)));
            return -std::abs(directed_entanglement(rho, {"X", "Y"}, {"Z", "W"}) -
                             directed_entanglement(rho, {"X"}, {"Z"}) -
                             directed_entanglement(rho, {"Y"}, {"W"}));
        }
        case PropertyId::f:
            return margin_f(product(xy));
        case PropertyId::g: {
            const double e = directed_entanglement(bell_rho, {"X"}, {"Y"});
            DensityMatrix rot =
                apply_unitary(bell_rho, random_haar_unitary(2, rng, {"X"}));
            rot = apply_unitary(rot, random_haar_unitary(2, rng, {"Y"}));
            return -std::abs(directed_entanglement(rot, {"X"}, {"Y"}) - e);
        }
        case PropertyId::h:
            return margin_h(bell_rho);  // classicized Bell: E(X->Y^c) = 0, the upper extreme
        case PropertyId::holevo:
        case PropertyId::chi_identity: {
            // orthogonal ensemble through a noiseless channel, matching basis
            Vec e0 = Vec::Zero(2), e1 = Vec::Zero(2);
            e0(0) = 1.0;
            e1(1) = 1.0;
            Ensemble ens(2, {{0.5, e0}, {0.5, e1}});
            HolevoReport rep = simulate_classical_communication(
                ens, preset_channel("identity", 0.0, 2), MeasurementSpec{}, cfg.tolerance);
            const double extremal = -std::abs(rep.mutual_ab - rep.chi);  // I = chi = 1
            return id == PropertyId::holevo ? std::min(rep.bound_margin, extremal)
                                            : rep.identity_margin;
        }
        case PropertyId::dpi: {
            SystemRegistry reg({SystemEntry::physical("Q", 2)});
            DensityMatrix rho = random_density_matrix(reg, 2, rng);
            Channel id2 = preset_channel("identity", 0.0, 2);
            DpiReport rep = simulate_dpi_chain(rho, id2, id2, cfg.tolerance);
            const double equal = -std::max(std::abs(rep.s_rho - rep.ic_1),
                                           std::abs(rep.ic_1 - rep.ic_21));
            return std::min({rep.chain_margin, rep.identity_margin, equal});
        }
        case PropertyId::zeroth: {
            std::vector<std::string> l1{"Q1"}, l2{"Q2"};
            DensityMatrix rho1 = random_density_matrix(
                SystemRegistry({SystemEntry::physical("Q1", 2)}), 2, rng);
            DensityMatrix rho2 = random_density_matrix(
                SystemRegistry({SystemEntry::physical("Q2", 2)}), 2, rng);
            DensityMatrix joint = make_zeroth_joint(rho1, rho2, 2);
            Unitary u(Mat::Identity(4, 4), {"Q1", "Q2"});
            std::vector<std::string> lb{"B"};
            ZerothLawReport rep = check_zeroth_law(joint, l1, l2, lb, u, cfg.tolerance);
            return std::min({-std::abs(rep.monotonicity_margin), rep.subadditivity_margin,
                             rep.initial_equality_margin});
        }
        case PropertyId::second_first_step: {
            CascadeConfig cc;  // no couplings: S_T sits exactly at the lower extreme
            cc.dims = {2, 4};
            cc.sweeps = 0;
            CascadeReport rep = simulate_cascade(cc, "B", cfg.tolerance);
            return std::min(-std::abs(rep.trajectory.front().s_t), rep.bound_margin);
        }
        case PropertyId::observer_agreement: {
            SystemRegistry reg({SystemEntry::physical("L", 2)});
            return observer_margin(PureState::basis(reg, 0));  // eigenstate: H = I = 0
        }
    }
    throw std::logic_error("unknown property id");
}

}  // namespace

std::string property_name(PropertyId id) {
    for (const auto& [pid, name] : name_table())
        if (pid == id) return name;
    throw std::logic_error("unknown property id");
}

PropertyId property_from_name(const std::string& name) {
    for (const auto& [pid, n] : name_table())
        if (name == n) return pid;
    throw std::invalid_argument("unknown property '" + name + "'");
}

double evaluate_property_margin(PropertyId id, std::uint64_t trial_seed,
                                const PropertyCheckConfig& cfg) {
    Rng rng(trial_seed);
    return random_trial_margin(id, rng, cfg);
}

PropertyResult check_property(const PropertyCheckConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("check_property: trials must be >= 1");
    if (cfg.dims.empty()) throw std::invalid_argument("check_property: dim pool must be nonempty");
    for (std::size_t d : cfg.dims)
        if (d < 1 || d > max_total_dim())
            throw std::invalid_argument("check_property: dim pool entry out of range");
    PropertyResult res;
    res.id = cfg.id;
    res.tolerance = cfg.tolerance;
    auto account = [&](double margin, std::uint64_t seed) {
        if (res.trials == 0 || margin < res.worst_margin) {
            res.worst_margin = margin;
            res.worst_seed = seed;
        }
        ++res.trials;
        if (margin < -cfg.tolerance) ++res.violations;
    };
    try {
        account(witness_margin(cfg.id, cfg), kWitnessSeed);
        for (std::size_t t = 1; t < cfg.trials; ++t) {
            const std::uint64_t seed = split_seed(cfg.seed, t);
            account(evaluate_property_margin(cfg.id, seed, cfg), seed);
        }
    } catch (const std::exception& ex) {
        res.error = ex.what();
    }
    return res;
}

SuiteReport run_suite(const std::vector<PropertyCheckConfig>& configs) {
    if (configs.empty()) throw std::invalid_argument("run_suite: config list must be nonempty");
    SuiteReport rep;
    rep.pass = true;
    for (const auto& cfg : configs) {
        rep.results.push_back(check_property(cfg));
        const auto& r = rep.results.back();
        if (r.violations > 0 || !r.error.empty()) rep.pass = false;
    }
    return rep;
}

std::vector<PropertyCheckConfig> default_suite(std::uint64_t seed, std::size_t trials_override,
                                               double tolerance) {
    std::vector<PropertyCheckConfig> configs;
    std::size_t stream = 0;
    auto add = [&](PropertyId id, std::size_t trials, double tol) {
        PropertyCheckConfig cfg;
        cfg.id = id;
        cfg.trials = trials_override ? trials_override : trials;
        cfg.seed = split_seed(seed, stream++);
        cfg.tolerance = tol;
        configs.push_back(cfg);
    };
    add(PropertyId::a, 500, tolerance);
    add(PropertyId::b, 500, tolerance);
    add(PropertyId::b_prime, 500, tolerance / 10);  // constructed equality, tighter
    add(PropertyId::c, 500, tolerance);
    add(PropertyId::d, 500, tolerance);
    add(PropertyId::e, 500, tolerance);
    add(PropertyId::e_prime, 500, tolerance / 10);
    add(PropertyId::f, 500, tolerance);
    add(PropertyId::g, 500, tolerance / 10);  // spectra identical up to rounding
    add(PropertyId::h, 500, tolerance);
    add(PropertyId::holevo, 200, tolerance);
    add(PropertyId::chi_identity, 200, tolerance);
    add(PropertyId::dpi, 200, tolerance);
    add(PropertyId::zeroth, 500, tolerance);
    add(PropertyId::second_first_step, 200, tolerance);
    add(PropertyId::observer_agreement, 100, tolerance);
    return configs;
}

json PropertyResult::to_json() const {
    json j{{"property", property_name(id)}, {"trials", trials},       {"violations", violations},
           {"worst_margin", worst_margin},  {"worst_seed", worst_seed}, {"tolerance", tolerance}};
    if (!error.empty()) j["error"] = error;
    return j;
}

json SuiteReport::to_json() const {
    json props = json::array();
    for (const auto& r : results) props.push_back(r.to_json());
    return json{{"results", props}, {"pass", pass}};
}

}  // namespace qil
