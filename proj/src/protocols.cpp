#include "qil/protocols.hpp"

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "qil/rng.hpp"
#include "qil/tolerances.hpp"

namespace qil {

using nlohmann::json;

namespace {

// Unitary whose first column is exactly `c` (assumed normalized),
// completed by QR.
Mat complete_column(const Vec& c) {
    const auto n = c.size();
    Eigen::HouseholderQR<Mat> qr(c);
    Mat q = qr.householderQ();
    const cplx r00 = qr.matrixQR()(0, 0);
    q.col(0) *= (r00 == cplx(0)) ? cplx(1.0) : r00 / std::abs(r00);
    // align: q.col(0) now equals c up to rounding
    (void)n;
    return q;
}

double entropy_of_matrix(const Mat& rho) {
    Mat h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h, Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double x = solver.eigenvalues()(i);
        if (x < -tol::psd * scale) throw std::runtime_error("entropy: matrix not PSD");
        if (x > 0.0) s -= x * std::log2(x);
    }
    return s;
}

}  // namespace

PureState simulate_measurement(const PureState& psi, const MeasurementSpec& spec) {
    const std::size_t m = psi.registry().dim_of(spec.target);
    PureState state = psi;
    if (spec.basis.size() != 0) {
        if (static_cast<std::size_t>(spec.basis.rows()) != m ||
            static_cast<std::size_t>(spec.basis.cols()) != m)
            throw std::invalid_argument("measurement: basis side does not match target dim");
        state = apply_unitary(state, Unitary(spec.basis.adjoint(), {spec.target}));
    }
    state = extend_fresh(state, SystemEntry::physical(spec.apparatus_label, m));
    state = extend_fresh(state, SystemEntry::knowledge(spec.knowledge_label, m, spec.owner));
    state = apply_unitary(state, copy_shift_unitary(m, spec.target, spec.apparatus_label));
    state = apply_unitary(state, copy_shift_unitary(m, spec.apparatus_label, spec.knowledge_label));
    return state;
}

PureState add_observer(const PureState& psi, const std::string& apparatus_label,
                       const std::string& knowledge_label, const std::string& owner) {
    const std::size_t m = psi.registry().dim_of(apparatus_label);
    PureState state = extend_fresh(psi, SystemEntry::knowledge(knowledge_label, m, owner));
    return apply_unitary(state, copy_shift_unitary(m, apparatus_label, knowledge_label));
}

PureState simulate_preparation(const Ensemble& ens, const PreparationLabels& labels) {
    const std::size_t n = ens.size();
    const std::size_t d = ens.dim();
    SystemRegistry reg({
        SystemEntry::knowledge(labels.a1, 1, labels.owner),
        SystemEntry::physical(labels.q, d),
        SystemEntry::knowledge(labels.a2, n, labels.owner),
    });
    PureState state = PureState::basis(reg, 0);

    // coherent amplitude load sqrt(p_i) onto A2
    Vec load(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        load(static_cast<Eigen::Index>(i)) = std::sqrt(std::max(0.0, ens.items()[i].prob));
    load /= load.norm();
    state = apply_unitary(state, Unitary(complete_column(load), {labels.a2}));

    // conditional unitary: |i>_A2 (x) U_i on Q, with U_i|0> = |psi_i>
    const auto nd = static_cast<Eigen::Index>(n * d);
    Mat cond = Mat::Zero(nd, nd);
    for (std::size_t i = 0; i < n; ++i) {
        Mat ui = complete_column(ens.items()[i].amplitudes);
        cond.block(static_cast<Eigen::Index>(i * d), static_cast<Eigen::Index>(i * d),
                   static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)) = ui;
    }
    state = apply_unitary(state, Unitary(std::move(cond), {labels.a2, labels.q}));

    // produce A and record which unitary was applied
    state = extend_fresh(state, SystemEntry::knowledge(labels.a, n, labels.owner));
    state = apply_unitary(state, copy_shift_unitary(n, labels.a2, labels.a));
    return state;
}

HolevoReport simulate_classical_communication(const Ensemble& ens, const Channel& ch,
                                              const MeasurementSpec& meas, double tolerance) {
    if (ch.dim_in() != ens.dim() || ch.dim_out() != ens.dim())
        throw std::invalid_argument("classical communication: channel must act on the prepared system");
    PreparationLabels labels;
    if (!meas.target.empty()) labels.q = meas.target;
    PureState state = simulate_preparation(ens, labels);

    // noisy channel as entanglement with an unobserved environment
    StinespringDilation dil = stinespring_dilation(ch);
    state = extend_fresh(state, SystemEntry::physical("E", dil.env_dim));
    state = apply_unitary(state, Unitary(dil.unitary, {labels.q, "E"}));

    HolevoReport rep;
    rep.tolerance = tolerance;
    rep.h_a = shannon(diagonal_distribution(state, labels.a));
    rep.chi = holevo_chi(ens, ch);
    rep.e_a_q = directed_entanglement(state, {labels.a}, {labels.q});

    MeasurementSpec m = meas;
    m.target = labels.q;
    state = simulate_measurement(state, m);
    rep.mutual_ab = mutual_information_rv(state, {labels.a}, {m.knowledge_label});

    rep.identity_margin = -std::abs(rep.e_a_q - (rep.chi - rep.h_a));
    rep.bound_margin = rep.chi - rep.mutual_ab;
    rep.pass = rep.identity_margin >= -tolerance && rep.bound_margin >= -tolerance;
    return rep;
}

DpiReport simulate_dpi_chain(const Mat& rho, const Channel& ch1, const Channel& ch2,
                             double tolerance) {
    const std::size_t d = static_cast<std::size_t>(rho.rows());
    if (ch1.dim_in() != d || ch1.dim_out() != d || ch2.dim_in() != d || ch2.dim_out() != d)
        throw std::invalid_argument("dpi: channels must be square and match the state dimension");

    DpiReport rep;
    rep.tolerance = tolerance;
    rep.s_rho = entropy_of_matrix(rho);
    rep.ic_1 = coherent_information(rho, ch1);
    rep.ic_21 = coherent_information(rho, channel_compose(ch2, ch1));

    // explicit route: purify, dilate both channels, measure directed entanglement
    Mat h = 0.5 * (rho + rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> solver(h);
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        if (solver.eigenvalues()(i) > 1e-14) support.push_back(i);
    const std::size_t rank = support.size();
    SystemRegistry reg({SystemEntry::physical("R", rank), SystemEntry::physical("Q", d)});
    Vec psi = Vec::Zero(static_cast<Eigen::Index>(rank * d));
    for (std::size_t r = 0; r < rank; ++r)
        psi.segment(static_cast<Eigen::Index>(r * d), static_cast<Eigen::Index>(d)) =
            std::sqrt(solver.eigenvalues()(support[r])) * solver.eigenvectors().col(support[r]);
    psi /= psi.norm();
    PureState state(reg, std::move(psi));

    StinespringDilation d1 = stinespring_dilation(ch1);
    state = extend_fresh(state, SystemEntry::physical("E1", d1.env_dim));
    state = apply_unitary(state, Unitary(d1.unitary, {"Q", "E1"}));
    StinespringDilation d2 = stinespring_dilation(ch2);
    state = extend_fresh(state, SystemEntry::physical("E2", d2.env_dim));
    state = apply_unitary(state, Unitary(d2.unitary, {"Q", "E2"}));

    rep.e_r_qe1e2 = directed_entanglement(state, {"R"}, {"Q", "E1", "E2"});
    rep.e_r_qe2 = directed_entanglement(state, {"R"}, {"Q", "E2"});
    rep.e_r_q = directed_entanglement(state, {"R"}, {"Q"});

    rep.chain_margin = std::min(rep.s_rho - rep.ic_1, rep.ic_1 - rep.ic_21);
    rep.identity_margin = -std::max({std::abs(rep.e_r_qe1e2 - rep.s_rho),
                                     std::abs(rep.e_r_qe2 - rep.ic_1),
                                     std::abs(rep.e_r_q - rep.ic_21)});
    rep.pass = rep.chain_margin >= -tolerance && rep.identity_margin >= -tolerance;
    return rep;
}

DpiReport simulate_dpi_chain(const DensityMatrix& rho, const Channel& ch1, const Channel& ch2,
                             double tolerance) {
    return simulate_dpi_chain(rho.matrix(), ch1, ch2, tolerance);
}

DensityMatrix make_zeroth_joint(const DensityMatrix& rho_q1, const DensityMatrix& rho_q2,
                                std::size_t b_dim, const std::string& b_label) {
    SystemRegistry breg({SystemEntry::knowledge(b_label, b_dim, "Bob")});
    return tensor(tensor(rho_q1, rho_q2), DensityMatrix::from_pure(PureState::basis(breg, 0)));
}

ZerothLawReport check_zeroth_law(const DensityMatrix& joint,
                                 std::span<const std::string> q1,
                                 std::span<const std::string> q2,
                                 std::span<const std::string> b,
                                 const Unitary& u, double tolerance) {
    // precondition: Q1 and Q2 unentangled (joint reduction factorizes);
    // requires q1 labels to precede q2 labels in the registry
    std::vector<std::string> q12(q1.begin(), q1.end());
    q12.insert(q12.end(), q2.begin(), q2.end());
    DensityMatrix r12 = partial_trace(joint, std::span<const std::string>(q12));
    DensityMatrix prod = tensor(partial_trace(joint, q1), partial_trace(joint, q2));
    if (!r12.registry().same_labels(prod.registry()))
        throw std::invalid_argument("zeroth law: q1 labels must precede q2 labels in the registry");
    const double dev = (r12.matrix() - prod.matrix()).cwiseAbs().maxCoeff();
    if (dev > 1e-7)
        throw std::invalid_argument("zeroth law: Q1 and Q2 are initially entangled (deviation " +
                                    std::to_string(dev) + ")");

    ZerothLawReport rep;
    rep.tolerance = tolerance;
    rep.st_q1_before = thermodynamic_entropy(joint, q1, b);
    rep.st_q2_before = thermodynamic_entropy(joint, q2, b);
    rep.st_joint_before = thermodynamic_entropy(joint, std::span<const std::string>(q12), b);

    DensityMatrix after = apply_unitary(joint, u);
    rep.st_q1_after = thermodynamic_entropy(after, q1, b);
    rep.st_q2_after = thermodynamic_entropy(after, q2, b);
    rep.st_joint_after = thermodynamic_entropy(after, std::span<const std::string>(q12), b);

    const double sum_before = rep.st_q1_before + rep.st_q2_before;
    const double sum_after = rep.st_q1_after + rep.st_q2_after;
    rep.monotonicity_margin = sum_after - sum_before;
    rep.subadditivity_margin = sum_after - rep.st_joint_after;
    rep.initial_equality_margin = -std::abs(sum_before - rep.st_joint_before);
    rep.pass = rep.monotonicity_margin >= -tolerance && rep.subadditivity_margin >= -tolerance &&
               rep.initial_equality_margin >= -tolerance;
    return rep;
}

json CascadeConfig::to_json() const {
    return json{{"dims", dims}, {"sweeps", sweeps}, {"seed", seed}};
}

CascadeConfig CascadeConfig::from_json(const json& j) {
    CascadeConfig cfg;
    cfg.dims = j.at("dims").get<std::vector<std::size_t>>();
    cfg.sweeps = j.at("sweeps").get<std::size_t>();
    cfg.seed = j.value("seed", std::uint64_t{0});
    return cfg;
}

CascadeReport simulate_cascade(const CascadeConfig& cfg, const std::string& b_label,
                               double tolerance) {
    if (cfg.dims.size() < 2)
        throw std::invalid_argument("cascade: dims must list the macroscopic factor and at least one microscopic factor");
    for (std::size_t d : cfg.dims)
        if (d < 2) throw std::invalid_argument("cascade: all dims must be >= 2");

    const std::size_t d_macro = cfg.dims.front();
    const std::size_t n_micro = cfg.dims.size() - 1;

    // B maximally entangled with Qmacro, dummy Btilde disentangled and
    // never touched, each microscopic factor uniform
    SystemRegistry bell_reg({SystemEntry::knowledge(b_label, d_macro, "Bob"),
                             SystemEntry::physical("Qmacro", d_macro)});
    Vec bell = Vec::Zero(static_cast<Eigen::Index>(d_macro * d_macro));
    for (std::size_t j = 0; j < d_macro; ++j)
        bell(static_cast<Eigen::Index>(j * d_macro + j)) = 1.0 / std::sqrt(static_cast<double>(d_macro));
    DensityMatrix rho = DensityMatrix::from_pure(PureState(bell_reg, std::move(bell)));
    SystemRegistry btilde_reg({SystemEntry::knowledge("Btilde", 2, "Bob")});
    rho = tensor(rho, DensityMatrix::from_pure(PureState::basis(btilde_reg, 0)));
    std::vector<std::string> micro_labels;
    for (std::size_t k = 0; k < n_micro; ++k) {
        micro_labels.push_back("Q" + std::to_string(k));
        SystemRegistry micro({SystemEntry::physical(micro_labels.back(), cfg.dims[k + 1])});
        rho = tensor(rho, DensityMatrix::maximally_mixed(micro));
    }

    CascadeReport rep;
    rep.seed = cfg.seed;
    rep.tolerance = tolerance;
    const std::vector<std::string> q_macro{"Qmacro"};
    const std::vector<std::string> b_set{b_label};
    auto record = [&](std::size_t step, const std::string& coupling) {
        rep.trajectory.push_back(
            {step, coupling,
             thermodynamic_entropy(rho, std::span<const std::string>(q_macro),
                                   std::span<const std::string>(b_set))});
    };
    record(0, "");

    Rng rng(cfg.seed);
    std::size_t step = 0;
    for (std::size_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
        for (std::size_t k = 0; k < n_micro; ++k) {
            const std::string left = (k == 0) ? "Qmacro" : micro_labels[k - 1];
            const std::string right = micro_labels[k];
            const std::size_t pair_dim = rho.registry().dim_of(left) * rho.registry().dim_of(right);
            rho = apply_unitary(rho, random_haar_unitary(pair_dim, rng, {left, right}));
            record(++step, left + "-" + right);
        }
    }

    const double cap = std::log2(static_cast<double>(d_macro));
    rep.first_step_margin =
        rep.trajectory.size() > 1 ? rep.trajectory[1].s_t - rep.trajectory[0].s_t : 0.0;
    rep.bound_margin = cap;
    for (const auto& t : rep.trajectory)
        rep.bound_margin = std::min({rep.bound_margin, t.s_t, cap - t.s_t});
    rep.final_value = rep.trajectory.back().s_t;
    rep.pass = rep.first_step_margin >= -tolerance && rep.bound_margin >= -tolerance;
    return rep;
}

json HolevoReport::to_json() const {
    return json{{"H_A", h_a},
                {"chi", chi},
                {"E_A_Q", e_a_q},
                {"I_AB", mutual_ab},
                {"identity_margin", identity_margin},
                {"bound_margin", bound_margin},
                {"pass", pass},
                {"tolerance", tolerance}};
}

json DpiReport::to_json() const {
    return json{{"S_rho", s_rho},
                {"Ic_1", ic_1},
                {"Ic_21", ic_21},
                {"E_R_QE1E2", e_r_qe1e2},
                {"E_R_QE2", e_r_qe2},
                {"E_R_Q", e_r_q},
                {"chain_margin", chain_margin},
                {"identity_margin", identity_margin},
                {"pass", pass},
                {"tolerance", tolerance}};
}

json ZerothLawReport::to_json() const {
    return json{{"S_T_Q1_before", st_q1_before},
                {"S_T_Q2_before", st_q2_before},
                {"S_T_joint_before", st_joint_before},
                {"S_T_Q1_after", st_q1_after},
                {"S_T_Q2_after", st_q2_after},
                {"S_T_joint_after", st_joint_after},
                {"monotonicity_margin", monotonicity_margin},
                {"subadditivity_margin", subadditivity_margin},
                {"initial_equality_margin", initial_equality_margin},
                {"pass", pass},
                {"tolerance", tolerance}};
}

json CascadeReport::to_json() const {
    json traj = json::array();
    for (const auto& t : trajectory)
        traj.push_back({{"step", t.step}, {"coupling_pair", t.coupling}, {"S_T", t.s_t}});
    return json{{"trajectory", traj},
                {"first_step_margin", first_step_margin},
                {"bound_margin", bound_margin},
                {"final_value", final_value},
                {"seed", seed},
                {"pass", pass},
                {"tolerance", tolerance}};
}

std::string CascadeReport::trajectory_csv() const {
    std::ostringstream out;
    out << "step,coupling_pair,S_T\n";
    out.precision(17);
    for (const auto& t : trajectory) out << t.step << "," << t.coupling << "," << t.s_t << "\n";
    return out.str();
}

}  // namespace qil
