#pragma once

#include "orbcoh/exact_matrix.hpp"
#include "orbcoh/local_system.hpp"
#include "orbcoh/simplicial_set.hpp"
#include "orbcoh/sparse.hpp"

#include <chrono>
#include <cstddef>
#include <variant>
#include <vector>

namespace orbcoh {

/// Degree-k piece of the cochain complex: delta maps C^k to C^{k+1}. The
/// coordinate of simplex i and module component c is i * rank + c.
struct CochainComplexSlice {
    int degree = 0;
    std::vector<OrbSimplex> basis;
    ExactMatrix delta;
};

/// The differentials delta^0 .. delta^D in sparse form. Integer entries are
/// used unless some twist has a non-integral rational entry.
struct SparseCochains {
    Ring ring;
    int rank = 0;
    bool normalized = true;
    std::vector<std::size_t> dims; // dim C^0 .. C^{D+1}
    std::variant<std::vector<IntSparse>, std::vector<RationalSparse>> deltas;

    std::size_t degrees() const { return dims.size() - 1; }
};

/// (delta c)(s) = twist(leading edge of s) c(d_0 s) + sum_{i>=1} (-1)^i c(d_i s).
/// With normalized = true only nondegenerate simplices are used. Requires
/// a simplicial set enumerated to degree D+1.
SparseCochains build_sparse_cochains(const SimplicialSet& S, const LocalSystem& system, bool normalized);

/// The leading edge (s0 <- g s1) of a simplex, obtained by repeated last faces.
OrbSimplex leading_edge(const OrbifoldComplex& complex, const OrbSimplex& s);

/// Dense slices for degrees 0..D. Throws IncoherentSystemError for an
/// incoherent system and ResourceCapError when a dense matrix would exceed
/// max_entries.
std::vector<CochainComplexSlice> build_cochain_matrices(const OrbifoldComplex& complex, const LocalSystem& system,
                                                        int max_degree, std::size_t max_entries = 20'000'000);
std::vector<CochainComplexSlice> build_unnormalized_matrices(const OrbifoldComplex& complex,
                                                             const LocalSystem& system, int max_degree,
                                                             std::size_t max_entries = 20'000'000);

/// Throws NotAComplexError naming the first basis element of C^k where
/// delta^{k+1} delta^k is nonzero.
void check_square_zero(const SparseCochains& cochains, const SimplicialSet& S);
void check_square_zero(const std::vector<CochainComplexSlice>& slices, const OrbifoldComplex& complex, int rank);

struct CohomologyOptions {
    bool normalized = true;
    bool check_coherence = true;
    bool check_square_zero = true;
    std::size_t dense_cap = 4000; // generators left after the sparse reduction
};

struct CohomologyTimings {
    double enumerate = 0, build = 0, check = 0, reduce = 0;
};

struct CohomologyResult {
    std::vector<ModuleInvariants> groups;   // H^0 .. H^D
    std::vector<std::size_t> dims;          // dim C^0 .. C^{D+1}
    std::vector<std::size_t> residual;      // generators after reduction, degrees 0..D
    bool big_integers = false;
    CohomologyTimings timings;
};

/// H^k(S; system) for k = 0..D.
CohomologyResult cohomology(const OrbifoldComplex& complex, const LocalSystem& system, int max_degree,
                            const CohomologyOptions& options = {});

/// Cohomology of a sparse cochain complex C^0 -> ... -> C^{D+1}, degrees 0..D.
CohomologyResult sparse_cohomology(const Ring& ring, const std::variant<std::vector<IntSparse>,
                                   std::vector<RationalSparse>>& deltas, std::size_t dense_cap);

/// H^k(G; A) for k = 0..D through the inhomogeneous bar complex, where
/// action[g] is the matrix of g on A = ring^r. Throws GroupAxiomError naming
/// the first pair (g, h) with action[g] action[h] != action[gh], or
/// LocalSystemError for malformed matrices.
CohomologyResult group_cohomology(const FiniteGroup& group, const Ring& ring,
                                  const std::vector<ExactMatrix>& action, int max_degree,
                                  std::size_t dense_cap = 4000);
/// Trivial action on ring^rank.
CohomologyResult group_cohomology(const FiniteGroup& group, const Ring& ring, int rank, int max_degree);

} // namespace orbcoh
