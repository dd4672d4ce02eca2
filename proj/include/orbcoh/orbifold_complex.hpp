#pragma once

#include "orbcoh/group.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace orbcoh {

/// A set of top simplices, bit i standing for top simplex i.
using SubsetMask = std::uint64_t;

inline constexpr int kMaxTopSimplices = 64;

inline SubsetMask bit(int i) { return SubsetMask{1} << i; }

struct IntersectionRecord {
    SubsetMask subset = 0;
    int dimension = -1; // informational only
    int group = 0;      // index into OrbifoldComplex::groups()
};

/// Key of mu_{tau, rho, from, to}: rho is a subset of tau (as sets of top
/// simplices, so the intersection of tau lies inside that of rho) and both
/// from and to belong to rho.
struct MuKey {
    SubsetMask tau = 0;
    SubsetMask rho = 0;
    int from = 0;
    int to = 0;

    bool operator==(const MuKey&) const = default;
    bool operator<(const MuKey& o) const;
};

struct MuKeyHash {
    std::size_t operator()(const MuKey& k) const noexcept;
};

/// table[i] is the image of element i of G_{v(tau)} in G_{v(rho)}.
struct MuFunction {
    std::vector<int> table;

    bool operator==(const MuFunction&) const = default;
};

class OrbifoldComplex {
public:
    struct GroupEntry {
        std::string name;
        FiniteGroup group;
    };

    OrbifoldComplex() = default;

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& top_simplices() const { return names_; }
    const std::string& name(int i) const { return names_.at(i); }
    SubsetMask all() const { return size() == 64 ? ~SubsetMask{0} : bit(size()) - 1; }

    /// Throws UnknownSimplexError.
    int index_of(const std::string& name) const;
    SubsetMask mask_of(const std::vector<std::string>& names) const;
    std::vector<std::string> names_of(SubsetMask mask) const;
    /// "{a,b,c}"
    std::string describe(SubsetMask mask) const;
    std::string describe(const MuKey& key) const;

    const std::vector<GroupEntry>& groups() const { return groups_; }
    const FiniteGroup& group(int id) const { return groups_.at(id).group; }

    /// Record for a nonempty subset, or nullptr when the intersection is empty.
    const IntersectionRecord* find_record(SubsetMask mask) const;
    /// Isotropy group of the intersection; throws NoSimplexError when empty.
    const FiniteGroup& isotropy(SubsetMask mask) const;
    /// All records, ordered by subset size then lexicographically.
    std::vector<IntersectionRecord> records() const;

    /// Stored table for the key, or the forced table when the key has only one
    /// possible value (identity for tau = rho and from = to, or trivial groups
    /// on both sides). nullptr when neither applies.
    const MuFunction* find_mu(const MuKey& key) const;
    /// Throws MissingMuError when find_mu returns nullptr.
    const MuFunction& mu(const MuKey& key) const;
    int mu_apply(const MuKey& key, int g) const { return mu(key).table.at(g); }
    /// Stored tables only, in key order.
    std::vector<std::pair<MuKey, MuFunction>> stored_mu() const;
    bool has_stored_mu(const MuKey& key) const { return mu_.count(key) != 0; }

    // Construction. Each setter validates what it can locally; finish()
    // checks the global invariants.
    static OrbifoldComplex create(int dim, const std::vector<std::string>& top_simplices);
    int add_group(const std::string& name, FiniteGroup group);
    int group_id(const std::string& name) const; // -1 when absent
    void add_intersection(SubsetMask subset, int group, int dimension = -1);
    void add_mu(const MuKey& key, MuFunction table);
    void set_mu(const MuKey& key, MuFunction table); // overwrite, used by tests and tools
    void finish() const;

    bool operator==(const OrbifoldComplex& other) const;

private:
    void check_key_shape(const MuKey& key) const;

    int dim_ = 0;
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
    std::vector<GroupEntry> groups_;
    std::unordered_map<SubsetMask, IntersectionRecord> records_;
    std::unordered_map<MuKey, MuFunction, MuKeyHash> mu_;
    std::vector<MuFunction> identities_; // identity table per group id
};

/// Builds a complex from the JSON document format. Shape errors raise
/// ParseError; semantic errors raise ComplexFormatError, UnknownSimplexError
/// or GroupAxiomError. When completeness_degree is set, also checks that all
/// mu keys reachable by face maps up to that degree are available.
OrbifoldComplex load_complex(const nlohmann::json& document,
                             std::optional<int> completeness_degree = std::nullopt);
nlohmann::json complex_to_json(const OrbifoldComplex& complex);

/// Parses "cyclic:n" or returns nullopt.
std::optional<FiniteGroup> parse_group_shorthand(const std::string& text);

std::optional<IntersectionRecord> intersection_of(const OrbifoldComplex& complex,
                                                  const std::vector<std::string>& subset);

GroupElement mu_apply(const OrbifoldComplex& complex, const MuKey& key, const GroupElement& g);

struct MuViolation {
    enum class Kind { Multiplicativity, Identity, NotInjective };
    Kind kind = Kind::Multiplicativity;
    SubsetMask tau = 0;
    SubsetMask rho = 0;
    int sigma0 = 0, sigma1 = 0, sigma2 = 0;
    int h1 = 0, h2 = 0;
    int expected = 0; // mu_{s0,s2}(h1 h2)
    int actual = 0;   // mu_{s0,s1}(h1) * mu_{s1,s2}(h2)

    std::string describe(const OrbifoldComplex& complex) const;
};

struct MuReport {
    std::vector<MuViolation> violations;
    std::size_t checked = 0;

    bool ok() const { return violations.empty(); }
};

/// Exhaustive check of the multiplicative law, identity and injectivity over
/// every (tau, rho) pair that has tables. Triples with a missing table are
/// skipped; completeness is the job of check_mu_completeness.
MuReport validate_mu(const OrbifoldComplex& complex);

/// Every mu key used by some face map of some simplex of degree <= max_degree.
std::vector<MuKey> reachable_mu_keys(const OrbifoldComplex& complex, int max_degree);

/// Throws MissingMuError naming the first unavailable reachable key.
void check_mu_completeness(const OrbifoldComplex& complex, int max_degree);

} // namespace orbcoh
