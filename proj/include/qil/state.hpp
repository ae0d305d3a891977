#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "qil/registry.hpp"

namespace qil {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

class PureState;
class DensityMatrix;

namespace detail {
// Internal constructors that skip invariant checks; for intermediate results
// that are valid by construction.
PureState unchecked_pure(SystemRegistry reg, Vec amps);
DensityMatrix unchecked_density(SystemRegistry reg, Mat mat);
}  // namespace detail

/// Unitary acting on an ordered subset of registry labels. The matrix side
/// must equal the product of the target dims, row-major over target order.
class Unitary {
public:
    Unitary(Mat matrix, std::vector<std::string> targets);

    const Mat& matrix() const { return matrix_; }
    const std::vector<std::string>& targets() const { return targets_; }

private:
    Mat matrix_;
    std::vector<std::string> targets_;
};

class PureState {
public:
    PureState(SystemRegistry registry, Vec amplitudes);

    /// Computational basis state |index> on the given registry.
    static PureState basis(SystemRegistry registry, std::size_t index = 0);

    const SystemRegistry& registry() const { return registry_; }
    const Vec& amplitudes() const { return amps_; }
    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }

private:
    PureState() = default;
    friend PureState detail::unchecked_pure(SystemRegistry, Vec);
    SystemRegistry registry_;
    Vec amps_;
};

class DensityMatrix {
public:
    /// Validates hermiticity and unit trace; stores the hermitized (M+M^t)/2.
    /// Positivity is checked where the spectrum is actually computed.
    DensityMatrix(SystemRegistry registry, Mat matrix);

    static DensityMatrix from_pure(const PureState& psi);
    static DensityMatrix maximally_mixed(SystemRegistry registry);

    const SystemRegistry& registry() const { return registry_; }
    const Mat& matrix() const { return mat_; }
    std::size_t dim() const { return static_cast<std::size_t>(mat_.rows()); }

private:
    DensityMatrix() = default;
    friend DensityMatrix detail::unchecked_density(SystemRegistry, Mat);
    SystemRegistry registry_;
    Mat mat_;
};

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep);
DensityMatrix partial_trace(const PureState& psi, std::span<const std::string> keep);

PureState apply_unitary(const PureState& psi, const Unitary& u);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u);

/// Appends a fresh subsystem in basis state |0>.
PureState extend_fresh(const PureState& psi, const SystemEntry& entry);
DensityMatrix extend_fresh(const DensityMatrix& rho, const SystemEntry& entry);

/// Modular-shift copy |j>|k> -> |j>|(k+j) mod m> on two m-dimensional
/// systems; reduces to CNOT at m = 2.
Unitary copy_shift_unitary(std::size_t m, const std::string& src, const std::string& dst);

/// Global offsets of the sub-indices over the given entry positions,
/// row-major over the order of `positions`.
std::vector<std::size_t> subset_offsets(const SystemRegistry& reg,
                                        std::span<const std::size_t> positions);

// initializer-list friendly overloads
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::string> keep) {
    std::vector<std::string> k(keep);
    return partial_trace(rho, std::span<const std::string>(k));
}
inline DensityMatrix partial_trace(const PureState& psi, std::initializer_list<std::string> keep) {
    std::vector<std::string> k(keep);
    return partial_trace(psi, std::span<const std::string>(k));
}

}  // namespace qil
