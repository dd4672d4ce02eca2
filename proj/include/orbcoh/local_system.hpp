#pragma once

#include "orbcoh/exact_matrix.hpp"
#include "orbcoh/simplicial_set.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace orbcoh {

/// A free module of rank r over a ring, shared by every top simplex, with an
/// invertible twist for each nondegenerate 1-simplex. The twist of
/// (s0 <-g- s1) carries the stalk at s1 to the stalk at s0. Edges without a
/// stored twist act as the identity.
class LocalSystem {
public:
    LocalSystem(Ring ring, int rank);

    const Ring& ring() const { return ring_; }
    int rank() const { return rank_; }
    const std::map<OrbSimplex, ExactMatrix>& twists() const { return twists_; }
    /// True when no edge carries a non-identity twist.
    bool is_trivial() const { return twists_.empty(); }

    /// Checks that e is a nondegenerate edge of the complex and that the
    /// matrix is r x r over the ring and invertible; throws LocalSystemError
    /// (UnknownSimplexError / NoSimplexError for a bad edge). Identity
    /// matrices are not stored.
    void set_twist(const OrbifoldComplex& complex, const OrbSimplex& e, const ExactMatrix& m);

    /// Stored matrix or the identity. Throws for edges not in the complex.
    ExactMatrix twist_of(const OrbifoldComplex& complex, const OrbSimplex& e) const;
    /// Stored matrix or nullptr, without validating the edge.
    const ExactMatrix* find_twist(const OrbSimplex& e) const;

private:
    Ring ring_;
    int rank_;
    std::map<OrbSimplex, ExactMatrix> twists_;
};

LocalSystem trivial_system(const Ring& ring, int rank);

/// twist(d1 x) != twist(d2 x) * twist(d0 x) for a 2-simplex x.
struct CoherenceViolation {
    OrbSimplex simplex;
    ExactMatrix expected; // twist(d1 x)
    ExactMatrix actual;   // twist(d2 x) * twist(d0 x)

    std::string describe(const OrbifoldComplex& complex) const;
};

struct CoherenceReport {
    std::vector<CoherenceViolation> violations;
    std::size_t checked = 0;

    bool ok() const { return violations.empty(); }
};

/// Checks the cocycle condition on every nondegenerate 2-simplex. A trivial
/// system is coherent without enumeration.
CoherenceReport validate_coherence(const LocalSystem& system, const OrbifoldComplex& complex);

/// {"ring": "Z"|"Q"|"Zmod:m", "rank": r, "twists": [{"edge": {"sigmas":
/// [s0, s1], "g": i}, "matrix": [[...]]}], "default": "identity"}. Matrix
/// entries are integers, or strings such as "2/3" over Q.
LocalSystem load_local_system(const nlohmann::json& document, const OrbifoldComplex& complex);
nlohmann::json local_system_to_json(const LocalSystem& system, const OrbifoldComplex& complex);

} // namespace orbcoh
