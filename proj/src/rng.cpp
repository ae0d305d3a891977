#include "qil/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qil {

std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream) {
    // splitmix64 finalizer over the combined value
    std::uint64_t z = base + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    // 53-bit mantissa in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    double u1 = 0.0;
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
}

std::uint64_t Rng::integer(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("rng: integer bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = gen_();
    } while (v >= limit);
    return v % bound;
}

Mat haar_matrix(std::size_t dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("haar unitary: dim must be >= 1");
    const auto n = static_cast<Eigen::Index>(dim);
    Mat g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    // fix the phase ambiguity of QR so the result is Haar distributed
    for (Eigen::Index j = 0; j < n; ++j) {
        cplx d = r(j, j);
        q.col(j) *= (d == cplx(0)) ? cplx(1.0) : d / std::abs(d);
    }
    return q;
}

Unitary random_haar_unitary(std::size_t dim, Rng& rng, std::vector<std::string> targets) {
    return Unitary(haar_matrix(dim, rng), std::move(targets));
}

PureState random_pure_state(const SystemRegistry& reg, Rng& rng) {
    const auto n = static_cast<Eigen::Index>(reg.total_dim());
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cplx(rng.normal(), rng.normal());
    v /= v.norm();
    return detail::unchecked_pure(reg, std::move(v));
}

DensityMatrix random_density_matrix(const SystemRegistry& reg, std::size_t rank, Rng& rng) {
    const std::size_t d = reg.total_dim();
    if (rank < 1 || rank > d)
        throw std::invalid_argument("random state: rank must be in [1, total dim]");
    const auto nd = static_cast<Eigen::Index>(d);
    const auto nr = static_cast<Eigen::Index>(rank);
    // Haar pure state on system (x) rank-dimensional extension, extension traced out
    Vec v(nd * nr);
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(rng.normal(), rng.normal());
    v /= v.norm();
    Mat rho = Mat::Zero(nd, nd);
    for (Eigen::Index t = 0; t < nr; ++t)
        for (Eigen::Index a = 0; a < nd; ++a) {
            const cplx va = v(a * nr + t);
            for (Eigen::Index b = 0; b < nd; ++b) rho(a, b) += va * std::conj(v(b * nr + t));
        }
    rho = 0.5 * (rho + rho.adjoint().eval());
    return detail::unchecked_density(reg, std::move(rho));
}

}  // namespace qil
