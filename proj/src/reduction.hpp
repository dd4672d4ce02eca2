#pragma once

#include "orbcoh/ring.hpp"
#include "orbcoh/sparse.hpp"

#include <cstddef>
#include <vector>

namespace orbcoh::detail {

struct ReductionResult {
    std::vector<ModuleInvariants> cohomology; // H^0 .. H^D
    std::vector<std::size_t> residual;        // surviving basis size of C^0 .. C^D
    std::size_t pivots = 0;
    bool big_integers = false; // int64 arithmetic overflowed and was redone with GMP
    // Filled by the column engine: rank of delta^k and its invariant factors
    // other than 1 (over Z).
    std::vector<std::size_t> ranks;
    std::vector<std::vector<Integer>> factors;
};

/// Cohomology of C^0 -> ... -> C^{D+1} given deltas[k] : C^k -> C^{k+1},
/// k = 0..D, returning H^0 .. H^D.
///
/// Over Z, Q and prime fields the coboundary columns are reduced degree by
/// degree, lowest degree first, pivoting only on units; columns whose pivot
/// row already paired a column one degree down are skipped since they reduce
/// to zero. Columns left with a non-unit pivot are reduced to their Schur
/// complement and handed to the dense Smith form, which yields the rank and
/// the invariant factors of every delta^k.
///
/// Over Z/m with m composite the ranks do not determine the cohomology, so
/// unit pairs are split off by sparse elimination and the remaining complex
/// goes to the dense kernel/image code.
///
/// Throws ResourceCapError when the dense remainder exceeds dense_cap
/// generators.
ReductionResult reduce_cohomology(const Ring& ring, const std::vector<IntSparse>& deltas,
                                  std::size_t dense_cap);
ReductionResult reduce_cohomology(const Ring& ring, const std::vector<RationalSparse>& deltas,
                                  std::size_t dense_cap);

/// H^k(C (x) Z/m) from a reduction of the integral complex C:
/// H^k(C) (x) Z/m + Tor(H^{k+1}(C), Z/m). Needs the ranks and factors.
std::vector<ModuleInvariants> universal_coefficients(const ReductionResult& integral,
                                                     const std::vector<std::size_t>& dims, const Ring& ring);

} // namespace orbcoh::detail
