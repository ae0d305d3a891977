#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "qil/state.hpp"

namespace qil {

/// Probability vector; entries in [-tol_psd, 0) are clamped to zero on
/// construction, the sum must be 1 within tol_trace.
class ProbabilityVector {
public:
    explicit ProbabilityVector(Eigen::VectorXd probs);

    const Eigen::VectorXd& probs() const { return p_; }
    std::size_t size() const { return static_cast<std::size_t>(p_.size()); }
    double operator[](std::size_t i) const { return p_(static_cast<Eigen::Index>(i)); }

private:
    Eigen::VectorXd p_;
};

/// All entropies are in bits (base-2 logarithm), with 0 log 0 = 0.

double shannon(const ProbabilityVector& p);

/// S(rho) = -tr(rho log2 rho). Throws if the spectrum dips below -tol_psd
/// relative to the matrix norm.
double von_neumann(const DensityMatrix& rho);

/// Diagonal of the reduction to `label` in the computational basis; this is
/// the distribution of the random variable carried by a knowledge system.
ProbabilityVector diagonal_distribution(const DensityMatrix& rho, const std::string& label);
ProbabilityVector diagonal_distribution(const PureState& psi, const std::string& label);

/// Joint diagonal distribution over an ordered list of labels.
ProbabilityVector joint_diagonal_distribution(const DensityMatrix& rho,
                                              std::span<const std::string> labels);

/// Full dephasing of the listed subsystems in the computational basis.
/// Idempotent and trace preserving.
DensityMatrix classicize(const DensityMatrix& rho, std::span<const std::string> labels);

/// E(X -> Y) = S(Y) - S(XY). Its negation is the conditional entropy S(X|Y).
double directed_entanglement(const DensityMatrix& rho,
                             std::span<const std::string> x,
                             std::span<const std::string> y);
double directed_entanglement(const PureState& psi,
                             std::span<const std::string> x,
                             std::span<const std::string> y);

/// Shannon mutual information of the joint diagonal distribution of A and B.
double mutual_information_rv(const DensityMatrix& rho,
                             std::span<const std::string> a,
                             std::span<const std::string> b);
double mutual_information_rv(const PureState& psi,
                             std::span<const std::string> a,
                             std::span<const std::string> b);

/// S_T(Q|B) = -E(Q -> B^c): thermodynamic entropy of Q relative to the
/// classicized knowledge system B. Lies in [0, S(Q)].
double thermodynamic_entropy(const DensityMatrix& rho,
                             std::span<const std::string> q,
                             std::span<const std::string> b);
double thermodynamic_entropy(const PureState& psi,
                             std::span<const std::string> q,
                             std::span<const std::string> b);

// initializer-list conveniences
inline DensityMatrix classicize(const DensityMatrix& rho, std::initializer_list<std::string> labels) {
    std::vector<std::string> l(labels);
    return classicize(rho, std::span<const std::string>(l));
}
inline double directed_entanglement(const DensityMatrix& rho,
                                    std::initializer_list<std::string> x,
                                    std::initializer_list<std::string> y) {
    std::vector<std::string> vx(x), vy(y);
    return directed_entanglement(rho, std::span<const std::string>(vx), std::span<const std::string>(vy));
}
inline double directed_entanglement(const PureState& psi,
                                    std::initializer_list<std::string> x,
                                    std::initializer_list<std::string> y) {
    std::vector<std::string> vx(x), vy(y);
    return directed_entanglement(psi, std::span<const std::string>(vx), std::span<const std::string>(vy));
}
inline double mutual_information_rv(const DensityMatrix& rho,
                                    std::initializer_list<std::string> a,
                                    std::initializer_list<std::string> b) {
    std::vector<std::string> va(a), vb(b);
    return mutual_information_rv(rho, std::span<const std::string>(va), std::span<const std::string>(vb));
}
inline double mutual_information_rv(const PureState& psi,
                                    std::initializer_list<std::string> a,
                                    std::initializer_list<std::string> b) {
    std::vector<std::string> va(a), vb(b);
    return mutual_information_rv(psi, std::span<const std::string>(va), std::span<const std::string>(vb));
}
inline double thermodynamic_entropy(const DensityMatrix& rho,
                                    std::initializer_list<std::string> q,
                                    std::initializer_list<std::string> b) {
    std::vector<std::string> vq(q), vb(b);
    return thermodynamic_entropy(rho, std::span<const std::string>(vq), std::span<const std::string>(vb));
}
inline double thermodynamic_entropy(const PureState& psi,
                                    std::initializer_list<std::string> q,
                                    std::initializer_list<std::string> b) {
    std::vector<std::string> vq(q), vb(b);
    return thermodynamic_entropy(psi, std::span<const std::string>(vq), std::span<const std::string>(vb));
}

}  // namespace qil
