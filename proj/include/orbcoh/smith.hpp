#pragma once

#include "orbcoh/exact_matrix.hpp"

#include <vector>

namespace orbcoh {

/// U * A * V = S with U, V invertible over the ring and S diagonal,
/// S(i,i) | S(i+1,i+1). Over Z the diagonal is non-negative; over Z/m each
/// nonzero diagonal entry is a divisor of m; over Q it is 1s then 0s.
struct SmithDecomposition {
    ExactMatrix U;
    ExactMatrix S;
    ExactMatrix V;
};

SmithDecomposition smith_normal_form(const ExactMatrix& a);

/// Same elimination as smith_normal_form but only the diagonal is kept.
/// Returns the nonzero diagonal entries in order.
std::vector<Integer> smith_diagonal(const ExactMatrix& a);

std::size_t rank(const ExactMatrix& a);

namespace detail {

/// Full result of the integral elimination, including V^{-1}; used by the
/// Z/m kernel computation.
struct IntegralSmith {
    std::vector<Integer> diagonal; // min(rows, cols) entries, zeros included
    ExactMatrix U;
    ExactMatrix V;
    ExactMatrix Vinv;
};

IntegralSmith integral_smith(const ExactMatrix& a, bool track);

} // namespace detail

} // namespace orbcoh
