// Seeded test ensembles: rejection-sampled separated nodes and equispaced
// product grids.
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>

#include "mprony/ensemble.hpp"

namespace mprony {

class PackingInfeasible : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

constexpr std::size_t kMaxAttemptsPerPoint = 100000;

/// M uniform points with pairwise wrap distance >= q; coefficients have
/// modulus uniform in [0.5, 2] and uniform phase. Throws PackingInfeasible
/// when M q^d > 1 (disjoint cubes of side q cannot fit) or when no valid
/// configuration appears within max_attempts_per_point * M draws.
DiracEnsemble random_separated_ensemble(std::size_t d, std::size_t m, double q, std::uint64_t seed,
                                        std::size_t max_attempts_per_point = kMaxAttemptsPerPoint);

/// The product grid {i/m}^d with unit coefficients.
DiracEnsemble equispaced_ensemble(std::size_t d, std::size_t points_per_axis);

}  // namespace mprony
