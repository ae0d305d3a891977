#include "qil/state.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

#include "qil/tolerances.hpp"

namespace qil {

namespace detail {

PureState unchecked_pure(SystemRegistry reg, Vec amps) {
    PureState s;
    s.registry_ = std::move(reg);
    s.amps_ = std::move(amps);
    return s;
}

DensityMatrix unchecked_density(SystemRegistry reg, Mat mat) {
    DensityMatrix r;
    r.registry_ = std::move(reg);
    r.mat_ = std::move(mat);
    return r;
}

}  // namespace detail

Unitary::Unitary(Mat matrix, std::vector<std::string> targets)
    : matrix_(std::move(matrix)), targets_(std::move(targets)) {
    if (targets_.empty()) throw std::invalid_argument("unitary: targets must be nonempty");
    if (matrix_.rows() != matrix_.cols())
        throw std::invalid_argument("unitary: matrix must be square");
    const auto n = matrix_.rows();
    double dev = (matrix_.adjoint() * matrix_ - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    if (dev > tol::unitary * std::max(1.0, matrix_.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("unitary: U^t U deviates from identity by " + std::to_string(dev));
}

PureState::PureState(SystemRegistry registry, Vec amplitudes)
    : registry_(std::move(registry)), amps_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amps_.size()) != registry_.total_dim())
        throw std::invalid_argument("pure state: amplitude length does not match registry dimension");
    double n = amps_.norm();
    if (std::abs(n - 1.0) > tol::norm)
        throw std::invalid_argument("pure state: norm " + std::to_string(n) + " is not 1");
}

PureState PureState::basis(SystemRegistry registry, std::size_t index) {
    if (index >= registry.total_dim())
        throw std::invalid_argument("pure state: basis index out of range");
    Vec v = Vec::Zero(static_cast<Eigen::Index>(registry.total_dim()));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(registry), std::move(v));
}

DensityMatrix::DensityMatrix(SystemRegistry registry, Mat matrix)
    : registry_(std::move(registry)), mat_(std::move(matrix)) {
    const auto d = static_cast<Eigen::Index>(registry_.total_dim());
    if (mat_.rows() != d || mat_.cols() != d)
        throw std::invalid_argument("density matrix: side does not match registry dimension");
    double scale = std::max(1.0, mat_.cwiseAbs().maxCoeff());
    double herm_dev = (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
    if (herm_dev > tol::herm * scale)
        throw std::invalid_argument("density matrix: not Hermitian (deviation " +
                                    std::to_string(herm_dev) + ")");
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());  // kill asymmetric rounding noise
    double tr_dev = std::abs(mat_.trace() - cplx(1.0));
    if (tr_dev > tol::trace)
        throw std::invalid_argument("density matrix: trace deviates from 1 by " +
                                    std::to_string(tr_dev));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
    Mat m = psi.amplitudes() * psi.amplitudes().adjoint();
    return detail::unchecked_density(psi.registry(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(SystemRegistry registry) {
    const auto d = static_cast<Eigen::Index>(registry.total_dim());
    Mat m = Mat::Identity(d, d) / static_cast<double>(d);
    return detail::unchecked_density(std::move(registry), std::move(m));
}

PureState tensor(const PureState& a, const PureState& b) {
    SystemRegistry reg = a.registry().concat(b.registry());  // rejects shared labels
    Vec v = Eigen::kroneckerProduct(a.amplitudes(), b.amplitudes());
    return detail::unchecked_pure(std::move(reg), std::move(v));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
    SystemRegistry reg = a.registry().concat(b.registry());
    Mat m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
    return detail::unchecked_density(std::move(reg), std::move(m));
}

std::vector<std::size_t> subset_offsets(const SystemRegistry& reg,
                                        std::span<const std::size_t> positions) {
    auto strides = reg.strides();
    std::vector<std::size_t> offs{0};
    for (std::size_t p : positions) {
        const std::size_t d = reg.entry(p).dim;
        std::vector<std::size_t> next;
        next.reserve(offs.size() * d);
        for (std::size_t o : offs)
            for (std::size_t k = 0; k < d; ++k) next.push_back(o + k * strides[p]);
        offs = std::move(next);
    }
    return offs;
}

namespace {

std::vector<std::size_t> complement_positions(const SystemRegistry& reg,
                                              std::span<const std::size_t> pos) {
    std::vector<bool> used(reg.size(), false);
    for (std::size_t p : pos) used[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (!used[i]) rest.push_back(i);
    return rest;
}

// In-place action of u on the target digits of a state vector.
void apply_to_vector(const SystemRegistry& reg, const Mat& u,
                     std::span<const std::size_t> toffs, std::span<const std::size_t> roffs,
                     Vec& v) {
    const auto dt = static_cast<Eigen::Index>(toffs.size());
    Vec in(dt), out(dt);
    for (std::size_t base : roffs) {
        for (Eigen::Index a = 0; a < dt; ++a)
            in(a) = v(static_cast<Eigen::Index>(base + toffs[static_cast<std::size_t>(a)]));
        out.noalias() = u * in;
        for (Eigen::Index a = 0; a < dt; ++a)
            v(static_cast<Eigen::Index>(base + toffs[static_cast<std::size_t>(a)])) = out(a);
    }
}

struct TargetPlan {
    std::vector<std::size_t> toffs, roffs;
};

TargetPlan plan_targets(const SystemRegistry& reg, const Unitary& u) {
    auto tpos = reg.positions(u.targets());
    std::size_t dt = 1;
    for (std::size_t p : tpos) dt *= reg.entry(p).dim;
    if (static_cast<std::size_t>(u.matrix().rows()) != dt)
        throw std::invalid_argument("apply_unitary: matrix side does not match target dims");
    return {subset_offsets(reg, tpos), subset_offsets(reg, complement_positions(reg, tpos))};
}

}  // namespace

PureState apply_unitary(const PureState& psi, const Unitary& u) {
    auto plan = plan_targets(psi.registry(), u);
    Vec v = psi.amplitudes();
    apply_to_vector(psi.registry(), u.matrix(), plan.toffs, plan.roffs, v);
    return detail::unchecked_pure(psi.registry(), std::move(v));
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const Unitary& u) {
    auto plan = plan_targets(rho.registry(), u);
    const auto& reg = rho.registry();
    // U rho U^t, column by column: A = U rho, result = (U A^t)^t.
    Mat a = rho.matrix();
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        Vec col = a.col(c);
        apply_to_vector(reg, u.matrix(), plan.toffs, plan.roffs, col);
        a.col(c) = col;
    }
    Mat b = a.adjoint();
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
        Vec col = b.col(c);
        apply_to_vector(reg, u.matrix(), plan.toffs, plan.roffs, col);
        b.col(c) = col;
    }
    Mat out = b.adjoint();
    return detail::unchecked_density(reg, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::string> keep) {
    const auto& reg = rho.registry();
    auto kpos = reg.positions(keep);  // validates labels; rejects empty via subset below
    SystemRegistry out_reg = reg.subset(keep);
    // offsets in original entry order so the result indexing matches out_reg
    std::vector<std::size_t> kpos_sorted;
    for (std::size_t i = 0; i < reg.size(); ++i)
        for (std::size_t p : kpos)
            if (p == i) kpos_sorted.push_back(i);
    auto kofs = subset_offsets(reg, kpos_sorted);
    auto tofs = subset_offsets(reg, complement_positions(reg, kpos_sorted));
    const auto dk = static_cast<Eigen::Index>(kofs.size());
    Mat out = Mat::Zero(dk, dk);
    const Mat& m = rho.matrix();
    for (Eigen::Index a = 0; a < dk; ++a)
        for (Eigen::Index b = 0; b < dk; ++b) {
            cplx s = 0;
            const std::size_t ka = kofs[static_cast<std::size_t>(a)];
            const std::size_t kb = kofs[static_cast<std::size_t>(b)];
            for (std::size_t t : tofs)
                s += m(static_cast<Eigen::Index>(ka + t), static_cast<Eigen::Index>(kb + t));
            out(a, b) = s;
        }
    return detail::unchecked_density(std::move(out_reg), std::move(out));
}

DensityMatrix partial_trace(const PureState& psi, std::span<const std::string> keep) {
    const auto& reg = psi.registry();
    auto kpos = reg.positions(keep);
    SystemRegistry out_reg = reg.subset(keep);
    std::vector<std::size_t> kpos_sorted;
    for (std::size_t i = 0; i < reg.size(); ++i)
        for (std::size_t p : kpos)
            if (p == i) kpos_sorted.push_back(i);
    auto kofs = subset_offsets(reg, kpos_sorted);
    auto tofs = subset_offsets(reg, complement_positions(reg, kpos_sorted));
    const auto dk = static_cast<Eigen::Index>(kofs.size());
    Mat out = Mat::Zero(dk, dk);
    const Vec& v = psi.amplitudes();
    for (std::size_t t : tofs)
        for (Eigen::Index a = 0; a < dk; ++a) {
            const cplx va = v(static_cast<Eigen::Index>(kofs[static_cast<std::size_t>(a)] + t));
            if (va == cplx(0)) continue;
            for (Eigen::Index b = 0; b < dk; ++b)
                out(a, b) += va * std::conj(v(static_cast<Eigen::Index>(
                                 kofs[static_cast<std::size_t>(b)] + t)));
        }
    return detail::unchecked_density(std::move(out_reg), std::move(out));
}

PureState extend_fresh(const PureState& psi, const SystemEntry& entry) {
    SystemRegistry reg = psi.registry().extended(entry);  // rejects duplicate label
    Vec fresh = Vec::Zero(static_cast<Eigen::Index>(entry.dim));
    fresh(0) = 1.0;
    Vec v = Eigen::kroneckerProduct(psi.amplitudes(), fresh);
    return detail::unchecked_pure(std::move(reg), std::move(v));
}

DensityMatrix extend_fresh(const DensityMatrix& rho, const SystemEntry& entry) {
    SystemRegistry reg = rho.registry().extended(entry);
    Mat fresh = Mat::Zero(static_cast<Eigen::Index>(entry.dim), static_cast<Eigen::Index>(entry.dim));
    fresh(0, 0) = 1.0;
    Mat m = Eigen::kroneckerProduct(rho.matrix(), fresh);
    return detail::unchecked_density(std::move(reg), std::move(m));
}

Unitary copy_shift_unitary(std::size_t m, const std::string& src, const std::string& dst) {
    if (m < 1) throw std::invalid_argument("copy_shift_unitary: dim must be >= 1");
    const auto d = static_cast<Eigen::Index>(m * m);
    Mat u = Mat::Zero(d, d);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k)
            u(static_cast<Eigen::Index>(j * m + (k + j) % m), static_cast<Eigen::Index>(j * m + k)) = 1.0;
    return Unitary(std::move(u), {src, dst});
}

}  // namespace qil
