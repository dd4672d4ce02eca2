#include "orbcoh/simplicial_set.hpp"

#include "orbcoh/errors.hpp"

#include <functional>

namespace orbcoh {

SubsetMask OrbSimplex::mask() const
{
    SubsetMask m = 0;
    for (int s : sigmas)
        m |= bit(s);
    return m;
}

const FiniteGroup& simplex_group(const OrbifoldComplex& complex, const std::vector<int>& sigmas)
{
    if (sigmas.empty())
        throw NoSimplexError("a simplex needs at least one top simplex");
    SubsetMask m = 0;
    for (int s : sigmas) {
        if (s < 0 || s >= complex.size())
            throw UnknownSimplexError("top simplex index " + std::to_string(s) + " is out of range");
        m |= bit(s);
    }
    return complex.isotropy(m);
}

void check_simplex(const OrbifoldComplex& complex, const OrbSimplex& s)
{
    const FiniteGroup& g = simplex_group(complex, s.sigmas);
    if (s.arrows.size() + 1 != s.sigmas.size())
        throw DimensionMismatchError("simplex has " + std::to_string(s.sigmas.size()) +
                                     " top simplices but " + std::to_string(s.arrows.size()) +
                                     " arrows");
    for (int a : s.arrows)
        if (a < 0 || a >= g.order())
            throw DimensionMismatchError("arrow " + std::to_string(a) +
                                         " is not an element of the isotropy group");
}

OrbSimplex face(const OrbifoldComplex& complex, const OrbSimplex& s, int j)
{
    check_simplex(complex, s);
    const int k = s.degree();
    if (k < 1 || j < 0 || j > k)
        throw DimensionMismatchError("face d_" + std::to_string(j) + " of a " + std::to_string(k) +
                                     "-simplex");
    const SubsetMask tau = s.mask();
    OrbSimplex r;
    for (int i = 0; i <= k; ++i)
        if (i != j)
            r.sigmas.push_back(s.sigmas[i]);
    const SubsetMask rho = r.mask();
    const FiniteGroup& g = complex.isotropy(tau);

    // output arrow between r.sigmas[p] and r.sigmas[p+1]
    for (int p = 0; p + 1 <= k - 1; ++p) {
        // positions in s of the two ends
        const int left = p < j ? p : p + 1;
        const int right = p + 1 < j ? p + 1 : p + 2;
        int element;
        if (right - left == 1)
            element = s.arrows[left];
        else // merged arrow g_j g_{j+1}
            element = g.mul(s.arrows[left], s.arrows[left + 1]);
        r.arrows.push_back(complex.mu_apply({tau, rho, s.sigmas[left], s.sigmas[right]}, element));
    }
    return r;
}

OrbSimplex degeneracy(const OrbifoldComplex& complex, const OrbSimplex& s, int i)
{
    check_simplex(complex, s);
    if (i < 0 || i > s.degree())
        throw DimensionMismatchError("degeneracy s_" + std::to_string(i) + " of a " +
                                     std::to_string(s.degree()) + "-simplex");
    OrbSimplex r = s;
    r.sigmas.insert(r.sigmas.begin() + i, s.sigmas[i]);
    r.arrows.insert(r.arrows.begin() + i, FiniteGroup::identity());
    return r;
}

bool is_degenerate(const OrbSimplex& s)
{
    for (std::size_t i = 0; i < s.arrows.size(); ++i)
        if (s.sigmas[i] == s.sigmas[i + 1] && s.arrows[i] == FiniteGroup::identity())
            return true;
    return false;
}

std::string to_string(const OrbifoldComplex& complex, const OrbSimplex& s)
{
    std::string out;
    for (std::size_t i = 0; i < s.sigmas.size(); ++i) {
        if (i)
            out += " <-" + std::to_string(s.arrows[i - 1]) + "- ";
        out += complex.name(s.sigmas[i]);
    }
    return out;
}

SimplicialSet::SimplicialSet(const OrbifoldComplex& complex, int max_degree) : complex_(&complex)
{
    if (max_degree < 0)
        throw DimensionMismatchError("negative maximal degree");
    while ((1 << bits_) < complex.size())
        ++bits_;
    if (bits_ * (max_degree + 1) > 64)
        throw ResourceCapError("degree " + std::to_string(max_degree) +
                               " is too large to index with " + std::to_string(complex.size()) +
                               " top simplices");
    degrees_.resize(max_degree + 1);

    // depth-first in lexicographic order so every degree comes out sorted
    std::vector<int> seq;
    std::function<void(SubsetMask)> extend = [&](SubsetMask mask) {
        const int k = static_cast<int>(seq.size()) - 1;
        const auto* rec = complex.find_record(mask);
        Degree& d = degrees_[k];
        Sequence s;
        s.sigmas = seq;
        s.mask = mask;
        s.group = rec->group;
        s.order = complex.group(rec->group).order();
        s.count = 1;
        s.count_all = 1;
        for (int i = 1; i <= k; ++i) {
            s.count *= s.order - (seq[i - 1] == seq[i] ? 1 : 0);
            s.count_all *= s.order;
        }
        s.offset = d.count;
        s.offset_all = d.count_all;
        d.count += s.count;
        d.count_all += s.count_all;
        d.lookup.emplace(code(seq), static_cast<int>(d.sequences.size()));
        d.sequences.push_back(std::move(s));
        if (k == max_degree)
            return;
        for (int x = 0; x < complex.size(); ++x) {
            const SubsetMask bigger = mask | bit(x);
            if (!complex.find_record(bigger))
                continue;
            seq.push_back(x);
            extend(bigger);
            seq.pop_back();
        }
    };
    for (int x = 0; x < complex.size(); ++x) {
        seq = {x};
        extend(bit(x));
    }
}

std::uint64_t SimplicialSet::code(const int* sigmas, int len) const
{
    std::uint64_t c = 0;
    for (int i = 0; i < len; ++i)
        c = (c << bits_) | static_cast<std::uint64_t>(sigmas[i]);
    return c;
}

std::uint64_t SimplicialSet::code(const std::vector<int>& sigmas) const
{
    return code(sigmas.data(), static_cast<int>(sigmas.size()));
}

int SimplicialSet::find_sequence(const std::vector<int>& sigmas) const
{
    const int k = static_cast<int>(sigmas.size()) - 1;
    if (k < 0 || k > max_degree())
        return -1;
    for (int s : sigmas)
        if (s < 0 || s >= complex_->size())
            return -1;
    const auto& lookup = degrees_[k].lookup;
    auto it = lookup.find(code(sigmas));
    return it == lookup.end() ? -1 : it->second;
}

std::int64_t SimplicialSet::encode(int k, int seq, const int* arrows) const
{
    const Sequence& s = degrees_[k].sequences[seq];
    std::int64_t local = 0;
    for (int i = 1; i <= k; ++i) {
        const bool repeat = s.sigmas[i - 1] == s.sigmas[i];
        int digit = arrows[i - 1];
        if (repeat) {
            if (digit == 0)
                return -1;
            --digit;
        }
        local = local * (s.order - (repeat ? 1 : 0)) + digit;
    }
    return local;
}

std::int64_t SimplicialSet::encode_all(int k, int seq, const int* arrows) const
{
    const Sequence& s = degrees_[k].sequences[seq];
    std::int64_t local = 0;
    for (int i = 0; i < k; ++i)
        local = local * s.order + arrows[i];
    return local;
}

void SimplicialSet::decode(int k, int seq, std::int64_t local, int* arrows) const
{
    const Sequence& s = degrees_[k].sequences[seq];
    for (int i = k; i >= 1; --i) {
        const bool repeat = s.sigmas[i - 1] == s.sigmas[i];
        const int radix = s.order - (repeat ? 1 : 0);
        arrows[i - 1] = static_cast<int>(local % radix) + (repeat ? 1 : 0);
        local /= radix;
    }
}

void SimplicialSet::decode_all(int k, int seq, std::int64_t local, int* arrows) const
{
    const Sequence& s = degrees_[k].sequences[seq];
    for (int i = k; i >= 1; --i) {
        arrows[i - 1] = static_cast<int>(local % s.order);
        local /= s.order;
    }
}

std::int64_t SimplicialSet::index_of(const OrbSimplex& s) const
{
    const int seq = find_sequence(s.sigmas);
    if (seq < 0)
        throw NoSimplexError("simplex " + to_string(*complex_, s) + " is not in the enumerated range");
    const std::int64_t local = encode(s.degree(), seq, s.arrows.data());
    return local < 0 ? -1 : degrees_[s.degree()].sequences[seq].offset + local;
}

std::int64_t SimplicialSet::index_all(const OrbSimplex& s) const
{
    const int seq = find_sequence(s.sigmas);
    if (seq < 0)
        throw NoSimplexError("simplex " + to_string(*complex_, s) + " is not in the enumerated range");
    return degrees_[s.degree()].sequences[seq].offset_all + encode_all(s.degree(), seq, s.arrows.data());
}

namespace {

template <class Offset>
int locate(const std::vector<SimplicialSet::Sequence>& seqs, std::int64_t index, Offset offset)
{
    int lo = 0, hi = static_cast<int>(seqs.size()) - 1;
    while (lo < hi) {
        const int mid = (lo + hi + 1) / 2;
        if (offset(seqs[mid]) <= index)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

} // namespace

OrbSimplex SimplicialSet::simplex(int k, std::int64_t index) const
{
    if (index < 0 || index >= count(k))
        throw NoSimplexError("simplex index out of range");
    const auto& seqs = degrees_[k].sequences;
    // sequences with no nondegenerate simplices share offsets; skip them
    int seq = locate(seqs, index, [](const Sequence& s) { return s.offset; });
    while (seqs[seq].count == 0 || index >= seqs[seq].offset + seqs[seq].count)
        --seq;
    OrbSimplex s;
    s.sigmas = seqs[seq].sigmas;
    s.arrows.resize(k);
    decode(k, seq, index - seqs[seq].offset, s.arrows.data());
    return s;
}

OrbSimplex SimplicialSet::simplex_all(int k, std::int64_t index) const
{
    if (index < 0 || index >= count_all(k))
        throw NoSimplexError("simplex index out of range");
    const auto& seqs = degrees_[k].sequences;
    const int seq = locate(seqs, index, [](const Sequence& s) { return s.offset_all; });
    OrbSimplex s;
    s.sigmas = seqs[seq].sigmas;
    s.arrows.resize(k);
    decode_all(k, seq, index - seqs[seq].offset_all, s.arrows.data());
    return s;
}

std::vector<OrbSimplex> SimplicialSet::enumerate_nondegenerate(int k) const
{
    std::vector<OrbSimplex> out;
    out.reserve(static_cast<std::size_t>(count(k)));
    const auto& seqs = degrees_.at(k).sequences;
    for (int q = 0; q < static_cast<int>(seqs.size()); ++q)
        for (std::int64_t i = 0; i < seqs[q].count; ++i) {
            OrbSimplex s;
            s.sigmas = seqs[q].sigmas;
            s.arrows.resize(k);
            decode(k, q, i, s.arrows.data());
            out.push_back(std::move(s));
        }
    return out;
}

std::vector<OrbSimplex> enumerate_nondegenerate(const OrbifoldComplex& complex, int k)
{
    return SimplicialSet(complex, k).enumerate_nondegenerate(k);
}

} // namespace orbcoh
