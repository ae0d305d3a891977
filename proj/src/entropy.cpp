#include "qil/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "qil/tolerances.hpp"

namespace qil {

namespace {

double entropy_of_spectrum(const Eigen::VectorXd& lam, double scale) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        const double x = lam(i);
        if (x < -tol::psd * scale)
            throw std::runtime_error("entropy: eigenvalue " + std::to_string(x) +
                                     " below -tol_psd");
        if (x > 0.0) s -= x * std::log2(x);
    }
    return s;
}

void require_disjoint(std::span<const std::string> a, std::span<const std::string> b) {
    std::unordered_set<std::string> sa(a.begin(), a.end());
    for (const auto& l : b)
        if (sa.count(l))
            throw std::invalid_argument("label sets must be disjoint; '" + l + "' appears in both");
}

std::vector<std::string> join(std::span<const std::string> a, std::span<const std::string> b) {
    std::vector<std::string> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

ProbabilityVector::ProbabilityVector(Eigen::VectorXd probs) : p_(std::move(probs)) {
    if (p_.size() == 0) throw std::invalid_argument("probability vector: empty");
    for (Eigen::Index i = 0; i < p_.size(); ++i) {
        if (p_(i) < -tol::psd)
            throw std::invalid_argument("probability vector: entry " + std::to_string(p_(i)) +
                                        " below -tol_psd");
        if (p_(i) < 0.0) p_(i) = 0.0;
    }
    const double sum = p_.sum();
    if (std::abs(sum - 1.0) > tol::trace)
        throw std::invalid_argument("probability vector: sum " + std::to_string(sum) + " is not 1");
}

double shannon(const ProbabilityVector& p) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < p.probs().size(); ++i) {
        const double x = p.probs()(i);
        if (x > 0.0) s -= x * std::log2(x);
    }
    return s;
}

double von_neumann(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(rho.matrix(), Eigen::EigenvaluesOnly);
    const double scale = std::max(1.0, rho.matrix().cwiseAbs().maxCoeff());
    return entropy_of_spectrum(solver.eigenvalues(), scale);
}

ProbabilityVector diagonal_distribution(const DensityMatrix& rho, const std::string& label) {
    std::vector<std::string> keep{label};
    DensityMatrix red = partial_trace(rho, std::span<const std::string>(keep));
    Eigen::VectorXd d = red.matrix().diagonal().real();
    const double sum = d.sum();
    if (sum > 0.0) d /= sum;  // renormalize away clamped rounding noise
    return ProbabilityVector(std::move(d));
}

ProbabilityVector diagonal_distribution(const PureState& psi, const std::string& label) {
    return diagonal_distribution(partial_trace(psi, {label}), label);
}

ProbabilityVector joint_diagonal_distribution(const DensityMatrix& rho,
                                              std::span<const std::string> labels) {
    DensityMatrix red = partial_trace(rho, labels);
    // marginalize the reduced diagonal onto the requested labels, indexed
    // row-major over the order given (not registry order)
    const auto& reg = red.registry();
    auto pos = reg.positions(labels);
    auto offs = subset_offsets(reg, pos);
    // offs enumerates full reduced indices only if labels cover the whole
    // reduced registry, which they do after partial_trace.
    Eigen::VectorXd p(static_cast<Eigen::Index>(offs.size()));
    for (std::size_t i = 0; i < offs.size(); ++i)
        p(static_cast<Eigen::Index>(i)) =
            red.matrix()(static_cast<Eigen::Index>(offs[i]), static_cast<Eigen::Index>(offs[i])).real();
    const double sum = p.sum();
    if (sum > 0.0) p /= sum;
    return ProbabilityVector(std::move(p));
}

DensityMatrix classicize(const DensityMatrix& rho, std::span<const std::string> labels) {
    const auto& reg = rho.registry();
    auto pos = reg.positions(labels);
    auto strides = reg.strides();
    const auto d = static_cast<Eigen::Index>(rho.dim());
    Mat out = rho.matrix();
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i == j) continue;
            for (std::size_t p : pos) {
                const std::size_t dim = reg.entry(p).dim;
                const std::size_t di = (static_cast<std::size_t>(i) / strides[p]) % dim;
                const std::size_t dj = (static_cast<std::size_t>(j) / strides[p]) % dim;
                if (di != dj) {
                    out(i, j) = 0.0;
                    break;
                }
            }
        }
    return detail::unchecked_density(reg, std::move(out));
}

double directed_entanglement(const DensityMatrix& rho,
                             std::span<const std::string> x,
                             std::span<const std::string> y) {
    require_disjoint(x, y);
    auto xy = join(x, y);
    const double s_y = von_neumann(partial_trace(rho, y));
    const double s_xy = von_neumann(partial_trace(rho, std::span<const std::string>(xy)));
    return s_y - s_xy;
}

double directed_entanglement(const PureState& psi,
                             std::span<const std::string> x,
                             std::span<const std::string> y) {
    require_disjoint(x, y);
    auto xy = join(x, y);
    return von_neumann(partial_trace(psi, y)) -
           von_neumann(partial_trace(psi, std::span<const std::string>(xy)));
}

double mutual_information_rv(const DensityMatrix& rho,
                             std::span<const std::string> a,
                             std::span<const std::string> b) {
    require_disjoint(a, b);
    auto ab = join(a, b);
    DensityMatrix red = partial_trace(rho, std::span<const std::string>(ab));
    ProbabilityVector joint = joint_diagonal_distribution(red, std::span<const std::string>(ab));
    // marginals: joint is row-major over (a..., b...) in the order of `ab`
    std::size_t da = 1, db = 1;
    for (const auto& l : a) da *= red.registry().dim_of(l);
    for (const auto& l : b) db *= red.registry().dim_of(l);
    Eigen::VectorXd pa = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(da));
    Eigen::VectorXd pb = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(db));
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j) {
            const double v = joint[i * db + j];
            pa(static_cast<Eigen::Index>(i)) += v;
            pb(static_cast<Eigen::Index>(j)) += v;
        }
    return shannon(ProbabilityVector(pa)) + shannon(ProbabilityVector(pb)) - shannon(joint);
}

double mutual_information_rv(const PureState& psi,
                             std::span<const std::string> a,
                             std::span<const std::string> b) {
    auto ab = join(a, b);
    return mutual_information_rv(partial_trace(psi, std::span<const std::string>(ab)), a, b);
}

double thermodynamic_entropy(const DensityMatrix& rho,
                             std::span<const std::string> q,
                             std::span<const std::string> b) {
    require_disjoint(q, b);
    auto qb = join(q, b);
    DensityMatrix red = partial_trace(rho, std::span<const std::string>(qb));
    DensityMatrix dephased = classicize(red, b);
    return -directed_entanglement(dephased, q, b) + 0.0;  // normalize -0
}

double thermodynamic_entropy(const PureState& psi,
                             std::span<const std::string> q,
                             std::span<const std::string> b) {
    auto qb = join(q, b);
    return thermodynamic_entropy(partial_trace(psi, std::span<const std::string>(qb)), q, b);
}

}  // namespace qil
