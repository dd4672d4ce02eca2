#pragma once

#include "orbcoh/exact_matrix.hpp"
#include "orbcoh/ring.hpp"

namespace orbcoh {

/// ker(d_out) / im(d_in) for C^{k-1} --d_in--> C^k --d_out--> C^{k+1}.
/// d_out has dim C^k columns and d_in has dim C^k rows.
ModuleInvariants cohomology_at(const ExactMatrix& d_out, const ExactMatrix& d_in);

/// Checks d_out * d_in == 0; throws NotAComplexError naming the first
/// nonzero entry of the product.
void check_composable(const ExactMatrix& d_out, const ExactMatrix& d_in);

} // namespace orbcoh
