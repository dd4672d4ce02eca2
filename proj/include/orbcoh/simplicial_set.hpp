#pragma once

#include "orbcoh/orbifold_complex.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace orbcoh {

/// sigma_0 <-g_1- sigma_1 <- ... <-g_k- sigma_k, with the g_i in the isotropy
/// group of the intersection of all sigma_i. Top simplices are indices.
struct OrbSimplex {
    std::vector<int> sigmas;
    std::vector<int> arrows;

    int degree() const { return static_cast<int>(sigmas.size()) - 1; }
    SubsetMask mask() const;

    bool operator==(const OrbSimplex&) const = default;
    auto operator<=>(const OrbSimplex&) const = default;
};

/// Throws NoSimplexError when the sigmas have empty intersection.
const FiniteGroup& simplex_group(const OrbifoldComplex& complex, const std::vector<int>& sigmas);

/// Checks that the simplex belongs to S(complex); throws NoSimplexError or
/// DimensionMismatchError.
void check_simplex(const OrbifoldComplex& complex, const OrbSimplex& s);

/// d_j for 0 <= j <= k, k >= 1. Missing tables raise MissingMuError.
OrbSimplex face(const OrbifoldComplex& complex, const OrbSimplex& s, int j);
/// s_i for 0 <= i <= k.
OrbSimplex degeneracy(const OrbifoldComplex& complex, const OrbSimplex& s, int i);
bool is_degenerate(const OrbSimplex& s);

/// "f <-1- c <-0- a" with arrow element indices.
std::string to_string(const OrbifoldComplex& complex, const OrbSimplex& s);

/// The simplices of S up to a fixed degree, grouped by their sequence of
/// top simplices. Within a degree, sequences are in lexicographic order and
/// arrows in lexicographic order inside a sequence, which fixes the
/// canonical basis of each cochain group.
class SimplicialSet {
public:
    struct Sequence {
        std::vector<int> sigmas;
        SubsetMask mask = 0;
        int group = 0;               // group id in the complex
        int order = 1;
        std::int64_t offset = 0;     // first nondegenerate index
        std::int64_t count = 0;      // nondegenerate simplices on this sequence
        std::int64_t offset_all = 0; // first index counting degenerate ones
        std::int64_t count_all = 0;  // order^k
    };

    SimplicialSet(const OrbifoldComplex& complex, int max_degree);

    const OrbifoldComplex& complex() const { return *complex_; }
    int max_degree() const { return static_cast<int>(degrees_.size()) - 1; }

    const std::vector<Sequence>& sequences(int k) const { return degrees_.at(k).sequences; }
    /// Number of nondegenerate k-simplices.
    std::int64_t count(int k) const { return degrees_.at(k).count; }
    /// Number of all k-simplices, degenerate ones included.
    std::int64_t count_all(int k) const { return degrees_.at(k).count_all; }

    /// Index of the sequence in degree sigmas.size()-1, or -1.
    int find_sequence(const std::vector<int>& sigmas) const;

    /// Position among nondegenerate simplices, -1 when degenerate.
    std::int64_t index_of(const OrbSimplex& s) const;
    /// Position among all simplices.
    std::int64_t index_all(const OrbSimplex& s) const;

    /// Arrows for a nondegenerate local index inside a sequence.
    void decode(int k, int seq, std::int64_t local, int* arrows) const;
    /// Arrows for a local index counting degenerate ones.
    void decode_all(int k, int seq, std::int64_t local, int* arrows) const;
    /// Local nondegenerate index of arrows inside a sequence, -1 if degenerate.
    std::int64_t encode(int k, int seq, const int* arrows) const;
    std::int64_t encode_all(int k, int seq, const int* arrows) const;

    OrbSimplex simplex(int k, std::int64_t index) const;
    OrbSimplex simplex_all(int k, std::int64_t index) const;
    std::vector<OrbSimplex> enumerate_nondegenerate(int k) const;

private:
    struct Degree {
        std::vector<Sequence> sequences;
        std::unordered_map<std::uint64_t, int> lookup;
        std::int64_t count = 0;
        std::int64_t count_all = 0;
    };

    std::uint64_t code(const std::vector<int>& sigmas) const;
    std::uint64_t code(const int* sigmas, int len) const;

    const OrbifoldComplex* complex_;
    int bits_ = 1;
    std::vector<Degree> degrees_;
};

std::vector<OrbSimplex> enumerate_nondegenerate(const OrbifoldComplex& complex, int k);

} // namespace orbcoh
