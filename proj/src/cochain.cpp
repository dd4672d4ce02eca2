#include "orbcoh/cochain.hpp"

#include "reduction.hpp"

#include "orbcoh/errors.hpp"
#include "orbcoh/homology.hpp"

#include <limits>
#include <map>

namespace orbcoh {

namespace {

constexpr std::size_t kMaxNonzeros = 150'000'000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

// Integral entries of twist matrices as int64, reduced for Z/m. Returns
// false when some entry is not an integer.
bool integral_entries(const ExactMatrix& m, const Ring& ring, std::vector<std::int64_t>& out)
{
    out.assign(m.rows() * m.cols(), 0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& q = m.at(i, j);
            if (q.get_den() != 1)
                return false;
            const Integer x = ring.is_modular() ? ring.reduce(q.get_num()) : Integer(q.get_num());
            if (!x.fits_slong_p() || abs(x) > (Integer(1) << 40))
                throw ResourceCapError("twist entry " + x.get_str() + " is too large for the sparse engine");
            out[i * m.cols() + j] = x.get_si();
        }
    return true;
}

// Entry arithmetic for the two storage types.
struct IntArith {
    std::int64_t modulus;
    std::int64_t one() const { return 1; }
    std::int64_t sign(int s) const { return modulus && s < 0 ? modulus - 1 : s; }
    std::int64_t add(std::int64_t a, std::int64_t b) const
    {
        const std::int64_t s = a + b;
        return modulus ? s % modulus : s;
    }
    bool zero(std::int64_t a) const { return a == 0; }
};

struct RationalArith {
    Rational one() const { return 1; }
    Rational sign(int s) const { return s; }
    Rational add(const Rational& a, const Rational& b) const { return a + b; }
    bool zero(const Rational& a) const { return a == 0; }
};

template <class T>
T entry_from(const Rational& q, const Ring& ring);

template <>
std::int64_t entry_from<std::int64_t>(const Rational& q, const Ring& ring)
{
    return ring.is_modular() ? ring.reduce(q.get_num()).get_si() : q.get_num().get_si();
}

template <>
Rational entry_from<Rational>(const Rational& q, const Ring&)
{
    return q;
}

// One face d_j on every simplex of one sigma sequence.
struct FacePlan {
    int target = -1;              // sequence index one degree down
    std::vector<const int*> table; // mu table per output arrow
    std::vector<int> left;         // source arrow position per output arrow
    std::vector<char> merged;      // output arrow is the product of two source arrows
};

template <class T, class Arith>
std::vector<SparseMatrix<T>> assemble(const SimplicialSet& S, const LocalSystem& system, bool normalized,
                                      Arith arith)
{
    const OrbifoldComplex& complex = S.complex();
    const Ring& ring = system.ring();
    const int r = system.rank();
    const int top = S.max_degree();

    // converted twists, keyed by edge
    std::map<OrbSimplex, std::vector<T>> twists;
    for (const auto& [e, m] : system.twists()) {
        std::vector<T> flat;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                flat.push_back(entry_from<T>(m.at(i, j), ring));
        twists.emplace(e, std::move(flat));
    }

    auto count = [&](int k) { return normalized ? S.count(k) : S.count_all(k); };
    for (int k = 0; k <= top; ++k)
        if (count(k) * r > std::numeric_limits<std::int32_t>::max())
            throw ResourceCapError("cochain group in degree " + std::to_string(k) + " is too large");

    std::vector<SparseMatrix<T>> deltas;
    std::vector<std::pair<std::int32_t, T>> entries;
    std::vector<int> arrows(static_cast<std::size_t>(top) + 1), out(static_cast<std::size_t>(top) + 1);
    std::vector<std::int64_t> target(static_cast<std::size_t>(top) + 1);
    std::size_t nonzeros = 0;

    for (int m = 1; m <= top; ++m) {
        SparseMatrix<T> delta(static_cast<std::size_t>(count(m - 1) * r));
        const auto& seqs = S.sequences(m);
        const auto& lower = S.sequences(m - 1);
        for (int q = 0; q < static_cast<int>(seqs.size()); ++q) {
            const auto& seq = seqs[q];
            const FiniteGroup& G = complex.group(seq.group);
            std::vector<FacePlan> plans(static_cast<std::size_t>(m) + 1);
            for (int j = 0; j <= m; ++j) {
                std::vector<int> rest;
                for (int i = 0; i <= m; ++i)
                    if (i != j)
                        rest.push_back(seq.sigmas[i]);
                FacePlan& plan = plans[j];
                plan.target = S.find_sequence(rest);
                SubsetMask rho = 0;
                for (int x : rest)
                    rho |= bit(x);
                for (int p = 0; p + 1 <= m - 1; ++p) {
                    const int left = p < j ? p : p + 1;
                    const int right = p + 1 < j ? p + 1 : p + 2;
                    plan.left.push_back(left);
                    plan.merged.push_back(right - left == 2);
                    plan.table.push_back(
                        complex.mu({seq.mask, rho, seq.sigmas[left], seq.sigmas[right]}).table.data());
                }
            }

            // twist of the leading edge as a function of the first arrow
            std::vector<const std::vector<T>*> lead_twist(static_cast<std::size_t>(G.order()), nullptr);
            if (!twists.empty() && r > 0) {
                for (int g = 0; g < G.order(); ++g) {
                    int x = g;
                    SubsetMask tau = seq.mask;
                    for (int j = m; j >= 2; --j) {
                        SubsetMask rho = 0;
                        for (int i = 0; i < j; ++i)
                            rho |= bit(seq.sigmas[i]);
                        x = complex.mu({tau, rho, seq.sigmas[0], seq.sigmas[1]}).table[x];
                        tau = rho;
                    }
                    auto it = twists.find(OrbSimplex{{seq.sigmas[0], seq.sigmas[1]}, {x}});
                    if (it != twists.end())
                        lead_twist[g] = &it->second;
                }
            }

            const std::int64_t n = normalized ? seq.count : seq.count_all;
            for (std::int64_t local = 0; local < n; ++local) {
                if (normalized)
                    S.decode(m, q, local, arrows.data());
                else
                    S.decode_all(m, q, local, arrows.data());
                for (int j = 0; j <= m; ++j) {
                    const FacePlan& plan = plans[j];
                    for (int p = 0; p < m - 1; ++p) {
                        const int a = plan.merged[p] ? G.mul(arrows[plan.left[p]], arrows[plan.left[p] + 1])
                                                     : arrows[plan.left[p]];
                        out[p] = plan.table[p][a];
                    }
                    const auto& tseq = lower[plan.target];
                    if (normalized) {
                        const std::int64_t l = S.encode(m - 1, plan.target, out.data());
                        target[j] = l < 0 ? -1 : tseq.offset + l;
                    } else {
                        target[j] = tseq.offset_all + S.encode_all(m - 1, plan.target, out.data());
                    }
                }
                const std::vector<T>* tw = lead_twist[arrows[0]];
                for (int c = 0; c < r; ++c) {
                    entries.clear();
                    if (target[0] >= 0) {
                        if (!tw)
                            entries.emplace_back(static_cast<std::int32_t>(target[0] * r + c), arith.one());
                        else
                            for (int c2 = 0; c2 < r; ++c2) {
                                const T& v = (*tw)[static_cast<std::size_t>(c) * r + c2];
                                if (!arith.zero(v))
                                    entries.emplace_back(static_cast<std::int32_t>(target[0] * r + c2), v);
                            }
                    }
                    for (int j = 1; j <= m; ++j)
                        if (target[j] >= 0)
                            entries.emplace_back(static_cast<std::int32_t>(target[j] * r + c),
                                                 arith.sign(j % 2 ? -1 : 1));
                    delta.push_row(entries, [&](const T& a, const T& b) { return arith.add(a, b); },
                                   [&](const T& a) { return arith.zero(a); });
                }
            }
            if ((nonzeros + delta.nonzeros()) > kMaxNonzeros)
                throw ResourceCapError("cochain differentials exceed " + std::to_string(kMaxNonzeros) +
                                       " nonzero entries");
        }
        nonzeros += delta.nonzeros();
        deltas.push_back(std::move(delta));
    }
    return deltas;
}

bool all_integral(const LocalSystem& system)
{
    std::vector<std::int64_t> scratch;
    for (const auto& [e, m] : system.twists())
        if (!integral_entries(m, system.ring(), scratch))
            return false;
    return true;
}

void require_coherent(const LocalSystem& system, const OrbifoldComplex& complex)
{
    const auto report = validate_coherence(system, complex);
    if (!report.ok())
        throw IncoherentSystemError("local system is not coherent (" + std::to_string(report.violations.size()) +
                                    " violations); first: " + report.violations.front().describe(complex));
}

std::vector<CochainComplexSlice> dense_slices(const OrbifoldComplex& complex, const LocalSystem& system,
                                              int max_degree, std::size_t max_entries, bool normalized)
{
    if (max_degree < 0)
        throw DimensionMismatchError("negative maximal degree");
    require_coherent(system, complex);
    const SimplicialSet S(complex, max_degree + 1);
    const auto r = static_cast<std::size_t>(system.rank());
    for (int k = 0; k <= max_degree; ++k) {
        const auto rows = static_cast<std::size_t>(normalized ? S.count(k + 1) : S.count_all(k + 1)) * r;
        const auto cols = static_cast<std::size_t>(normalized ? S.count(k) : S.count_all(k)) * r;
        if (rows * cols > max_entries)
            throw ResourceCapError("dense delta^" + std::to_string(k) + " would have " + std::to_string(rows) +
                                   " x " + std::to_string(cols) + " entries");
    }
    const SparseCochains sparse = build_sparse_cochains(S, system, normalized);
    std::vector<CochainComplexSlice> slices;
    for (int k = 0; k <= max_degree; ++k) {
        CochainComplexSlice slice;
        slice.degree = k;
        if (normalized) {
            slice.basis = S.enumerate_nondegenerate(k);
        } else {
            for (std::int64_t i = 0; i < S.count_all(k); ++i)
                slice.basis.push_back(S.simplex_all(k, i));
        }
        std::visit([&](const auto& ds) { slice.delta = to_dense(system.ring(), ds[k]); }, sparse.deltas);
        slices.push_back(std::move(slice));
    }
    return slices;
}

} // namespace

OrbSimplex leading_edge(const OrbifoldComplex& complex, const OrbSimplex& s)
{
    OrbSimplex e = s;
    while (e.degree() > 1)
        e = face(complex, e, e.degree());
    return e;
}

SparseCochains build_sparse_cochains(const SimplicialSet& S, const LocalSystem& system, bool normalized)
{
    SparseCochains out;
    out.ring = system.ring();
    out.rank = system.rank();
    out.normalized = normalized;
    for (int k = 0; k <= S.max_degree(); ++k)
        out.dims.push_back(static_cast<std::size_t>(normalized ? S.count(k) : S.count_all(k)) *
                           static_cast<std::size_t>(system.rank()));
    if (S.max_degree() < 1)
        throw DimensionMismatchError("cochains need simplices of degree at least 1");
    if (all_integral(system))
        out.deltas = assemble<std::int64_t>(S, system, normalized,
                                            IntArith{system.ring().is_modular() ? system.ring().modulus : 0});
    else
        out.deltas = assemble<Rational>(S, system, normalized, RationalArith{});
    return out;
}

std::vector<CochainComplexSlice> build_cochain_matrices(const OrbifoldComplex& complex, const LocalSystem& system,
                                                        int max_degree, std::size_t max_entries)
{
    return dense_slices(complex, system, max_degree, max_entries, true);
}

std::vector<CochainComplexSlice> build_unnormalized_matrices(const OrbifoldComplex& complex,
                                                             const LocalSystem& system, int max_degree,
                                                             std::size_t max_entries)
{
    return dense_slices(complex, system, max_degree, max_entries, false);
}

void check_square_zero(const SparseCochains& cochains, const SimplicialSet& S)
{
    const auto r = static_cast<std::size_t>(cochains.rank);
    std::visit(
        [&](const auto& ds) {
            for (std::size_t k = 0; k + 1 < ds.size(); ++k) {
                const auto bad = first_nonzero_product(cochains.ring, ds[k + 1], ds[k]);
                if (!bad)
                    continue;
                const auto row = static_cast<std::int64_t>(bad->row / r);
                const auto col = static_cast<std::int64_t>(bad->col / r);
                const int kk = static_cast<int>(k);
                const OrbSimplex above = cochains.normalized ? S.simplex(kk + 2, row) : S.simplex_all(kk + 2, row);
                const OrbSimplex below = cochains.normalized ? S.simplex(kk, col) : S.simplex_all(kk, col);
                throw NotAComplexError("delta^" + std::to_string(k + 1) + " delta^" + std::to_string(k) +
                                       " is nonzero on basis simplex " + to_string(S.complex(), below) +
                                       " (component " + std::to_string(bad->col % r) + "), seen from " +
                                       to_string(S.complex(), above) + ": " + bad->value.get_str());
            }
        },
        cochains.deltas);
}

void check_square_zero(const std::vector<CochainComplexSlice>& slices, const OrbifoldComplex& complex, int rank)
{
    for (std::size_t k = 0; k + 1 < slices.size(); ++k) {
        const ExactMatrix& inner = slices[k].delta;
        const ExactMatrix& outer = slices[k + 1].delta;
        if (inner.empty() || outer.empty())
            continue;
        const ExactMatrix p = outer * inner;
        for (std::size_t j = 0; j < p.cols(); ++j)
            for (std::size_t i = 0; i < p.rows(); ++i)
                if (p.at(i, j) != 0)
                    throw NotAComplexError("delta^" + std::to_string(k + 1) + " delta^" + std::to_string(k) +
                                           " is nonzero on basis simplex " +
                                           to_string(complex, slices[k].basis[j / rank]) + " (component " +
                                           std::to_string(j % rank) + ")");
    }
}

CohomologyResult sparse_cohomology(const Ring& ring,
                                   const std::variant<std::vector<IntSparse>, std::vector<RationalSparse>>& deltas,
                                   std::size_t dense_cap)
{
    CohomologyResult out;
    const auto reduced =
        std::visit([&](const auto& ds) { return detail::reduce_cohomology(ring, ds, dense_cap); }, deltas);
    out.groups = reduced.cohomology;
    out.residual = reduced.residual;
    out.big_integers = reduced.big_integers;
    return out;
}

CohomologyResult cohomology(const OrbifoldComplex& complex, const LocalSystem& system, int max_degree,
                            const CohomologyOptions& options)
{
    if (max_degree < 0)
        throw DimensionMismatchError("negative maximal degree");
    CohomologyResult out;
    auto t = Clock::now();
    if (options.check_coherence)
        require_coherent(system, complex);
    const SimplicialSet S(complex, max_degree + 1);
    out.timings.enumerate = seconds_since(t);

    if (system.rank() == 0) {
        out.groups.assign(static_cast<std::size_t>(max_degree) + 1, ModuleInvariants{system.ring(), 0, {}});
        out.dims.assign(static_cast<std::size_t>(max_degree) + 2, 0);
        out.residual.assign(static_cast<std::size_t>(max_degree) + 1, 0);
        return out;
    }

    // Over Z/m with m composite the constant system is the reduction of the
    // integral one, and the universal coefficient theorem applies.
    const Ring ring = system.ring();
    const bool via_integers = ring.is_modular() && !ring.is_field() && system.is_trivial();

    t = Clock::now();
    const SparseCochains cochains =
        build_sparse_cochains(S, via_integers ? trivial_system(Ring::Z(), system.rank()) : system, options.normalized);
    out.timings.build = seconds_since(t);

    t = Clock::now();
    if (options.check_square_zero)
        check_square_zero(cochains, S);
    out.timings.check = seconds_since(t);

    t = Clock::now();
    const auto reduced = std::visit(
        [&](const auto& ds) { return detail::reduce_cohomology(cochains.ring, ds, options.dense_cap); },
        cochains.deltas);
    out.timings.reduce = seconds_since(t);
    out.dims = cochains.dims;
    out.groups = via_integers
                     ? detail::universal_coefficients(
                           reduced, std::vector<std::size_t>(out.dims.begin(), out.dims.end() - 1), ring)
                     : reduced.cohomology;
    out.residual = reduced.residual;
    out.big_integers = reduced.big_integers;
    return out;
}

namespace {

void validate_action(const FiniteGroup& group, const Ring& ring, const std::vector<ExactMatrix>& action, int rank)
{
    if (static_cast<int>(action.size()) != group.order())
        throw LocalSystemError("action has " + std::to_string(action.size()) + " matrices for a group of order " +
                               std::to_string(group.order()));
    for (int g = 0; g < group.order(); ++g)
        if (!(action[g].ring() == ring) || action[g].rows() != static_cast<std::size_t>(rank) ||
            action[g].cols() != static_cast<std::size_t>(rank))
            throw LocalSystemError("action matrix of element " + std::to_string(g) + " is not " +
                                   std::to_string(rank) + "x" + std::to_string(rank) + " over " + ring.name());
    if (!(action[0] == ExactMatrix::identity(ring, rank)))
        throw GroupAxiomError("the identity element does not act as the identity");
    for (int g = 0; g < group.order(); ++g)
        for (int h = 0; h < group.order(); ++h)
            if (!(action[g] * action[h] == action[group.mul(g, h)]))
                throw GroupAxiomError("action is not a homomorphism at the pair (" + std::to_string(g) + ", " +
                                      std::to_string(h) + ")");
}

template <class T, class Arith>
std::vector<SparseMatrix<T>> bar_complex(const FiniteGroup& G, const Ring& ring, const std::vector<ExactMatrix>& action,
                                         int rank, int max_degree, Arith arith)
{
    const int n = G.order();
    const int r = rank;
    std::vector<std::vector<T>> act;
    for (const auto& m : action) {
        std::vector<T> flat;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                flat.push_back(entry_from<T>(m.at(i, j), ring));
        act.push_back(std::move(flat));
    }
    std::vector<SparseMatrix<T>> deltas;
    std::vector<std::pair<std::int32_t, T>> entries;
    std::int64_t cols = 1;
    for (int k = 0; k <= max_degree; ++k) {
        const std::int64_t rows = cols * n;
        SparseMatrix<T> delta(static_cast<std::size_t>(cols * r));
        std::vector<int> g(static_cast<std::size_t>(k) + 1), merged(static_cast<std::size_t>(k) + 1);
        auto index = [&](const std::vector<int>& t, int len) {
            std::int64_t x = 0;
            for (int i = 0; i < len; ++i)
                x = x * n + t[i];
            return x;
        };
        for (std::int64_t row = 0; row < rows; ++row) {
            std::int64_t x = row;
            for (int i = k; i >= 0; --i) {
                g[i] = static_cast<int>(x % n);
                x /= n;
            }
            const std::int64_t tail = index(std::vector<int>(g.begin() + 1, g.end()), k);
            std::vector<std::int64_t> others;
            std::vector<int> signs;
            for (int i = 1; i <= k; ++i) {
                merged.assign(g.begin(), g.end());
                merged[i - 1] = G.mul(g[i - 1], g[i]);
                merged.erase(merged.begin() + i);
                others.push_back(index(merged, k));
                signs.push_back(i % 2 ? -1 : 1);
            }
            others.push_back(index(g, k));
            signs.push_back((k + 1) % 2 ? -1 : 1);
            for (int c = 0; c < r; ++c) {
                entries.clear();
                for (int c2 = 0; c2 < r; ++c2) {
                    const T& v = act[g[0]][static_cast<std::size_t>(c) * r + c2];
                    if (!arith.zero(v))
                        entries.emplace_back(static_cast<std::int32_t>(tail * r + c2), v);
                }
                for (std::size_t i = 0; i < others.size(); ++i)
                    entries.emplace_back(static_cast<std::int32_t>(others[i] * r + c), arith.sign(signs[i]));
                delta.push_row(entries, [&](const T& a, const T& b) { return arith.add(a, b); },
                               [&](const T& a) { return arith.zero(a); });
            }
        }
        deltas.push_back(std::move(delta));
        cols = rows;
    }
    return deltas;
}

} // namespace

CohomologyResult group_cohomology(const FiniteGroup& group, const Ring& ring, const std::vector<ExactMatrix>& action,
                                  int max_degree, std::size_t dense_cap)
{
    if (max_degree < 0)
        throw DimensionMismatchError("negative maximal degree");
    const int rank = action.empty() ? 0 : static_cast<int>(action[0].rows());
    validate_action(group, ring, action, rank);
    double size = static_cast<double>(rank);
    for (int k = 0; k <= max_degree + 1; ++k)
        size *= group.order();
    if (size > 2e7)
        throw ResourceCapError("bar complex in degree " + std::to_string(max_degree + 1) + " has " +
                               std::to_string(static_cast<long long>(size)) + " generators");
    if (rank == 0) {
        CohomologyResult out;
        out.groups.assign(static_cast<std::size_t>(max_degree) + 1, ModuleInvariants{ring, 0, {}});
        return out;
    }

    bool integral = true;
    bool trivial = true;
    std::vector<std::int64_t> scratch;
    for (const auto& m : action) {
        integral = integral && integral_entries(m, ring, scratch);
        trivial = trivial && m == ExactMatrix::identity(ring, static_cast<std::size_t>(rank));
    }
    const bool via_integers = ring.is_modular() && !ring.is_field() && trivial;
    const Ring build_ring = via_integers ? Ring::Z() : ring;
    const std::vector<ExactMatrix> build_action =
        via_integers ? std::vector<ExactMatrix>(action.size(), ExactMatrix::identity(build_ring, rank)) : action;
    std::variant<std::vector<IntSparse>, std::vector<RationalSparse>> deltas;
    if (integral)
        deltas = bar_complex<std::int64_t>(group, build_ring, build_action, rank, max_degree,
                                           IntArith{build_ring.is_modular() ? build_ring.modulus : 0});
    else
        deltas = bar_complex<Rational>(group, build_ring, build_action, rank, max_degree, RationalArith{});

    std::size_t cols = static_cast<std::size_t>(rank);
    CohomologyResult out;
    for (int k = 0; k <= max_degree + 1; ++k) {
        out.dims.push_back(cols);
        cols *= static_cast<std::size_t>(group.order());
    }
    const auto reduced =
        std::visit([&](const auto& ds) { return detail::reduce_cohomology(build_ring, ds, dense_cap); }, deltas);
    out.groups = via_integers ? detail::universal_coefficients(
                                    reduced, std::vector<std::size_t>(out.dims.begin(), out.dims.end() - 1), ring)
                              : reduced.cohomology;
    out.residual = reduced.residual;
    out.big_integers = reduced.big_integers;
    return out;
}

CohomologyResult group_cohomology(const FiniteGroup& group, const Ring& ring, int rank, int max_degree)
{
    return group_cohomology(group, ring, std::vector<ExactMatrix>(group.order(), ExactMatrix::identity(ring, rank)),
                            max_degree);
}

} // namespace orbcoh
