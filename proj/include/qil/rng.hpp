#pragma once

#include <cstdint>
#include <random>

#include "qil/state.hpp"

namespace qil {

/// Derives an independent child seed from (base, stream) via splitmix64.
/// Used to split trials deterministically so results are independent of
/// execution order.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t stream);

/// Deterministic RNG; all randomness in the library flows through this.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform();               // [0, 1)
    double normal();                // standard normal, Box-Muller
    std::uint64_t integer(std::uint64_t bound);  // [0, bound)

private:
    std::mt19937_64 gen_;
    bool have_cached_ = false;
    double cached_ = 0.0;
};

/// Haar-distributed unitary via complex Ginibre + QR with phase fix.
Mat haar_matrix(std::size_t dim, Rng& rng);
Unitary random_haar_unitary(std::size_t dim, Rng& rng, std::vector<std::string> targets);

/// Haar-random pure state on the registry.
PureState random_pure_state(const SystemRegistry& reg, Rng& rng);

/// Reduction of a Haar-random pure state on a rank-fold extension;
/// rank = 1 gives a pure projector, rank = total dim a generic full-rank state.
DensityMatrix random_density_matrix(const SystemRegistry& reg, std::size_t rank, Rng& rng);

}  // namespace qil
