#pragma once

#include "orbcoh/orbifold_complex.hpp"

namespace orbcoh {

/// The circle covered by three closed arcs meeting pairwise in one point.
OrbifoldComplex circle_complex();
/// The 2-sphere covered by the four faces of a tetrahedron boundary.
OrbifoldComplex sphere_complex();
/// One top simplex whose interior has isotropy group G.
OrbifoldComplex single_simplex_complex(const FiniteGroup& group, int dim = 0);

} // namespace orbcoh
