#include "reduction.hpp"

#include "orbcoh/errors.hpp"
#include "orbcoh/homology.hpp"
#include "orbcoh/smith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

namespace orbcoh::detail {

namespace {

struct Overflow {};

struct CheckedInt {
    using T = std::int64_t;
    bool is_zero(T x) const { return x == 0; }
    bool is_unit(T x) const { return x == 1 || x == -1; }
    T inverse(T u) const { return u; }
    T mul(T a, T b) const
    {
        T r;
        if (__builtin_mul_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    T sub(T a, T b) const
    {
        T r;
        if (__builtin_sub_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    T add(T a, T b) const
    {
        T r;
        if (__builtin_add_overflow(a, b, &r))
            throw Overflow{};
        return r;
    }
    bool integral() const { return true; }
    T from(std::int64_t x) const { return x; }
    Rational rational(T x) const { return Rational(Integer(static_cast<long>(x))); }
};

struct BigInt {
    using T = Integer;
    bool is_zero(const T& x) const { return x == 0; }
    bool is_unit(const T& x) const { return x == 1 || x == -1; }
    T inverse(const T& u) const { return u; }
    T mul(const T& a, const T& b) const { return a * b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T add(const T& a, const T& b) const { return a + b; }
    bool integral() const { return true; }
    T from(std::int64_t x) const { return Integer(static_cast<long>(x)); }
    Rational rational(const T& x) const { return Rational(x); }
};

struct Modular {
    using T = std::int64_t;
    std::int64_t m;
    bool is_zero(T x) const { return x == 0; }
    bool is_unit(T x) const { return std::gcd(x, m) == 1; }
    T inverse(T u) const
    {
        // extended Euclid on (u, m)
        std::int64_t a = u, b = m, x0 = 1, x1 = 0;
        while (b) {
            const std::int64_t q = a / b;
            std::tie(a, b) = std::make_pair(b, a - q * b);
            std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
        }
        return ((x0 % m) + m) % m;
    }
    T mul(T a, T b) const { return static_cast<T>(static_cast<__int128>(a) * b % m); }
    T sub(T a, T b) const
    {
        const T r = a - b;
        return r < 0 ? r + m : r;
    }
    T add(T a, T b) const
    {
        const T r = a + b;
        return r >= m ? r - m : r;
    }
    bool integral() const { return false; }
    T from(std::int64_t x) const { return ((x % m) + m) % m; }
    Rational rational(T x) const { return Rational(Integer(static_cast<long>(x))); }
};

struct Rationals {
    using T = Rational;
    bool is_zero(const T& x) const { return x == 0; }
    bool is_unit(const T& x) const { return x != 0; }
    T inverse(const T& u) const { return 1 / u; }
    T mul(const T& a, const T& b) const { return a * b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T add(const T& a, const T& b) const { return a + b; }
    bool integral() const { return false; }
    T from(const Rational& x) const { return x; }
    Rational rational(const T& x) const { return x; }
};

// Z-lattice spanned by integer rows, kept in echelon form. Over Z/m the
// multiples of m are added up front so entries can be reduced mod m.
class LatticeBasis {
public:
    LatticeBasis(std::size_t n, const Ring& ring) : n_(n), modulus_(ring.is_modular() ? ring.modulus : 0)
    {
        if (modulus_)
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<Integer> e(n, 0);
                e[i] = Integer(static_cast<long>(modulus_));
                rows_.push_back(std::move(e));
            }
    }

    void insert(std::vector<Integer> v)
    {
        normalise(v);
        while (true) {
            const std::size_t c = lead(v);
            if (c == n_)
                return;
            auto it = std::find_if(rows_.begin(), rows_.end(), [&](const auto& b) { return lead(b) >= c; });
            if (it == rows_.end() || lead(*it) != c) {
                rows_.insert(it, std::move(v));
                return;
            }
            auto& b = *it;
            if (v[c] % b[c] == 0) {
                const Integer q = v[c] / b[c];
                for (std::size_t j = c; j < n_; ++j)
                    v[j] -= q * b[j];
            } else {
                Integer g, s, t;
                mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), b[c].get_mpz_t(), v[c].get_mpz_t());
                const Integer x = b[c] / g, y = v[c] / g;
                for (std::size_t j = c; j < n_; ++j) {
                    const Integer bj = b[j], vj = v[j];
                    b[j] = s * bj + t * vj;
                    v[j] = x * vj - y * bj;
                }
                normalise(b);
            }
            normalise(v);
        }
    }

    const std::vector<std::vector<Integer>>& rows() const { return rows_; }

private:
    std::size_t lead(const std::vector<Integer>& v) const
    {
        for (std::size_t j = 0; j < n_; ++j)
            if (v[j] != 0)
                return j;
        return n_;
    }

    void normalise(std::vector<Integer>& v) const
    {
        if (!modulus_)
            return;
        for (auto& x : v) {
            x %= modulus_;
            if (x < 0)
                x += modulus_;
        }
    }

    std::size_t n_;
    std::int64_t modulus_;
    std::vector<std::vector<Integer>> rows_;
};

template <class Ops>
class Reducer {
public:
    using T = typename Ops::T;
    using Row = std::vector<std::pair<std::int32_t, T>>;

    template <class In>
    Reducer(Ops ops, const Ring& ring, const std::vector<SparseMatrix<In>>& deltas)
        : ops_(ops), ring_(ring)
    {
        const std::size_t top = deltas.size() - 1;
        alive_.resize(top + 2);
        for (std::size_t k = 0; k <= top; ++k)
            alive_[k].assign(deltas[k].cols, 1);
        alive_[top + 1].assign(deltas[top].rows, 1);
        levels_.resize(top + 1);
        for (std::size_t k = 0; k <= top; ++k) {
            const auto& m = deltas[k];
            auto& rows = levels_[k];
            rows.resize(m.rows);
            for (std::size_t r = 0; r < m.rows; ++r) {
                rows[r].reserve(static_cast<std::size_t>(m.row_end(r) - m.row_begin(r)));
                for (auto p = m.row_begin(r); p < m.row_end(r); ++p)
                    rows[r].emplace_back(m.index[p], ops_.from(m.value[p]));
            }
        }
    }

    ReductionResult run(std::size_t dense_cap)
    {
        const std::size_t top = levels_.size() - 1;
        for (std::size_t k = top + 1; k-- > 0;)
            reduce_level(k);

        ReductionResult out;
        out.pivots = pivots_;
        std::vector<std::vector<std::int32_t>> position(top + 2);
        for (std::size_t k = 0; k <= top + 1; ++k) {
            position[k].assign(alive_[k].size(), -1);
            std::int32_t next = 0;
            for (std::size_t i = 0; i < alive_[k].size(); ++i)
                if (alive_[k][i])
                    position[k][i] = next++;
            if (k <= top) {
                out.residual.push_back(static_cast<std::size_t>(next));
                if (static_cast<std::size_t>(next) > dense_cap)
                    throw ResourceCapError("reduced cochain group in degree " + std::to_string(k) +
                                           " still has " + std::to_string(next) +
                                           " generators (cap " + std::to_string(dense_cap) + ")");
            }
        }

        ExactMatrix d_in(ring_, out.residual[0], 0);
        for (std::size_t k = 0; k <= top; ++k) {
            const std::size_t n = out.residual[k];
            const ExactMatrix d_out = compressed(k, position[k], n);
            out.cohomology.push_back(cohomology_at(d_out, d_in));
            if (k < top)
                d_in = residual(k, position[k + 1], position[k], out.residual[k + 1], n);
        }
        return out;
    }

private:
    static const T* find(const Row& row, std::int32_t col)
    {
        auto it = std::lower_bound(row.begin(), row.end(), col,
                                   [](const auto& e, std::int32_t c) { return e.first < c; });
        return it != row.end() && it->first == col ? &it->second : nullptr;
    }

    void compact(std::size_t k, std::vector<std::int32_t>& list, std::int32_t col) const
    {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
        const auto& rows = levels_[k];
        list.erase(std::remove_if(list.begin(), list.end(),
                                  [&](std::int32_t r) {
                                      return !alive_[k + 1][r] || !find(rows[r], col);
                                  }),
                   list.end());
    }

    void reduce_level(std::size_t k)
    {
        auto& rows = levels_[k];
        const std::size_t ncols = alive_[k].size();
        cols_.assign(ncols, {});
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (alive_[k + 1][r])
                for (const auto& e : rows[r])
                    cols_[e.first].push_back(static_cast<std::int32_t>(r));

        // Markowitz-style: accept pivots whose fill-in bound stays under a
        // growing threshold, cheapest first.
        std::int64_t threshold = 0;
        while (true) {
            bool any_candidate = false;
            bool progress = true;
            while (progress) {
                progress = false;
                any_candidate = false;
                for (std::size_t b = 0; b < ncols; ++b) {
                    if (!alive_[k][b] || cols_[b].empty())
                        continue;
                    compact(k, cols_[b], static_cast<std::int32_t>(b));
                    const auto count = static_cast<std::int64_t>(cols_[b].size());
                    std::int32_t best = -1;
                    std::size_t best_weight = 0;
                    for (std::int32_t r : cols_[b]) {
                        const T* v = find(rows[r], static_cast<std::int32_t>(b));
                        if (!ops_.is_unit(*v))
                            continue;
                        if (best < 0 || rows[r].size() < best_weight) {
                            best = r;
                            best_weight = rows[r].size();
                        }
                    }
                    if (best < 0)
                        continue;
                    any_candidate = true;
                    const std::int64_t cost = static_cast<std::int64_t>(best_weight - 1) * (count - 1);
                    if (cost > threshold)
                        continue;
                    eliminate(k, best, static_cast<std::int32_t>(b));
                    progress = true;
                }
            }
            if (!any_candidate)
                break;
            threshold = threshold == 0 ? 1 : threshold * 2;
        }
        cols_.clear();
        cols_.shrink_to_fit();
    }

    void eliminate(std::size_t k, std::int32_t a, std::int32_t b)
    {
        auto& rows = levels_[k];
        Row pivot = std::move(rows[a]);
        rows[a] = Row{};
        alive_[k + 1][a] = 0;
        const T uinv = ops_.inverse(*find(pivot, b));

        Row merged;
        for (std::int32_t r : cols_[b]) {
            if (r == a)
                continue;
            Row& row = rows[r];
            const T f = ops_.mul(*find(row, b), uinv);
            merged.clear();
            merged.reserve(row.size() + pivot.size());
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < pivot.size()) {
                const std::int32_t ci = i < row.size() ? row[i].first : std::numeric_limits<std::int32_t>::max();
                const std::int32_t cj = j < pivot.size() ? pivot[j].first : std::numeric_limits<std::int32_t>::max();
                if (ci < cj) {
                    if (ci != b)
                        merged.push_back(std::move(row[i]));
                    ++i;
                } else if (cj < ci) {
                    if (cj != b) {
                        T v = ops_.sub(ops_.from(0), ops_.mul(f, pivot[j].second));
                        if (!ops_.is_zero(v)) {
                            merged.emplace_back(cj, std::move(v));
                            cols_[cj].push_back(r);
                        }
                    }
                    ++j;
                } else {
                    if (ci != b) {
                        T v = ops_.sub(row[i].second, ops_.mul(f, pivot[j].second));
                        if (!ops_.is_zero(v))
                            merged.emplace_back(ci, std::move(v));
                    }
                    ++i;
                    ++j;
                }
            }
            row.swap(merged);
        }
        alive_[k][b] = 0;
        cols_[b].clear();
        cols_[b].shrink_to_fit();
        ++pivots_;
    }

    // Surviving part of delta^k with its rows replaced by a basis of the
    // lattice they span; the kernel over the ring is unchanged.
    ExactMatrix compressed(std::size_t k, const std::vector<std::int32_t>& colpos, std::size_t n) const
    {
        std::set<std::vector<std::pair<std::int32_t, Rational>>> distinct;
        for (std::size_t r = 0; r < levels_[k].size(); ++r) {
            if (!alive_[k + 1][r])
                continue;
            std::vector<std::pair<std::int32_t, Rational>> entry;
            for (const auto& [c, v] : levels_[k][r])
                if (colpos[c] >= 0)
                    entry.emplace_back(colpos[c], ops_.rational(v));
            if (!entry.empty())
                distinct.insert(std::move(entry));
        }
        LatticeBasis basis(n, ring_);
        std::vector<std::vector<Integer>> small;
        const bool direct = distinct.size() <= n && !ring_.is_modular();
        for (const auto& entry : distinct) {
            Integer scale = 1;
            for (const auto& e : entry)
                mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), e.second.get_den_mpz_t());
            std::vector<Integer> v(n, 0);
            for (const auto& [c, q] : entry)
                v[c] = Rational(q * scale).get_num();
            if (direct)
                small.push_back(std::move(v));
            else
                basis.insert(std::move(v));
        }
        const auto& rows = direct ? small : basis.rows();
        ExactMatrix out(ring_, rows.size(), n);
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (rows[i][j] != 0)
                    out.set(i, j, Rational(rows[i][j]));
        return out;
    }

    ExactMatrix residual(std::size_t k, const std::vector<std::int32_t>& rowpos,
                         const std::vector<std::int32_t>& colpos, std::size_t nrows, std::size_t ncols) const
    {
        ExactMatrix out(ring_, nrows, ncols);
        for (std::size_t r = 0; r < levels_[k].size(); ++r) {
            if (rowpos[r] < 0)
                continue;
            for (const auto& [c, v] : levels_[k][r])
                if (colpos[c] >= 0)
                    out.set(static_cast<std::size_t>(rowpos[r]), static_cast<std::size_t>(colpos[c]),
                            ops_.rational(v));
        }
        return out;
    }

    Ops ops_;
    Ring ring_;
    std::vector<std::vector<Row>> levels_;  // levels_[k]: rows are C^{k+1}, columns C^k
    std::vector<std::vector<char>> alive_;  // alive_[k]: surviving basis of C^k
    std::vector<std::vector<std::int32_t>> cols_;
    std::size_t pivots_ = 0;
};

// Column reduction of the coboundary matrices, lowest degree first. A column
// of delta^k is reduced by adding earlier columns until its largest row is
// either unclaimed with a unit entry (the column then claims that row) or a
// non-unit (the column is set aside). Claimed rows of delta^{k-1} are skipped
// as columns of delta^k: they can be replaced by coboundaries, which reduce to
// zero.
template <class Ops>
class ColumnReducer {
public:
    using T = typename Ops::T;
    using Column = std::vector<std::pair<std::int32_t, T>>;

    explicit ColumnReducer(Ops ops) : ops_(ops) {}

    template <class In>
    ReductionResult run(const std::vector<SparseMatrix<In>>& deltas, std::size_t dense_cap)
    {
        ReductionResult out;
        std::vector<char> cleared(deltas.front().cols, 0);
        std::size_t units_below = 0;
        for (std::size_t k = 0; k < deltas.size(); ++k) {
            const auto& m = deltas[k];
            load(m);
            claim_.assign(m.rows, -1);
            reduced_.assign(m.cols, {});
            acc_.assign(m.rows, ops_.from(0));
            stamp_.assign(m.rows, -1);
            std::vector<std::int32_t> deferred;
            std::size_t units = 0;
            for (std::size_t b = 0; b < m.cols; ++b) {
                if (cleared[b])
                    continue;
                const auto col = static_cast<std::int32_t>(b);
                seed(column(col));
                if (reduce(col, false))
                    ++units;
                else if (!reduced_[b].empty())
                    deferred.push_back(col);
            }
            out.pivots += units;
            out.residual.push_back(m.cols - units - units_below);

            // Schur complement of the unit pairs on the deferred columns
            std::vector<Column> schur;
            for (std::int32_t b : deferred) {
                Column c = std::move(reduced_[b]);
                seed(c);
                reduce(b, true);
                if (!reduced_[b].empty())
                    schur.push_back(std::move(reduced_[b]));
            }
            const auto [rank, factors] = smith(schur, k, dense_cap);
            out.ranks.push_back(units + rank);
            out.factors.push_back(factors);

            cleared.assign(m.rows, 0);
            for (std::size_t r = 0; r < m.rows; ++r)
                cleared[r] = claim_[r] >= 0;
            units_below = units;
        }
        release();
        return out;
    }

private:
    template <class In>
    void load(const SparseMatrix<In>& m)
    {
        col_start_.assign(m.cols + 1, 0);
        for (std::size_t e = 0; e < m.nonzeros(); ++e)
            ++col_start_[static_cast<std::size_t>(m.index[e]) + 1];
        for (std::size_t c = 0; c < m.cols; ++c)
            col_start_[c + 1] += col_start_[c];
        col_entries_.assign(m.nonzeros(), {});
        std::vector<std::int64_t> next(col_start_.begin(), col_start_.end() - 1);
        for (std::size_t r = 0; r < m.rows; ++r)
            for (auto e = m.row_begin(r); e < m.row_end(r); ++e)
                col_entries_[static_cast<std::size_t>(next[m.index[e]]++)] = {static_cast<std::int32_t>(r),
                                                                               ops_.from(m.value[e])};
    }

    Column column(std::int32_t b) const
    {
        return Column(col_entries_.begin() + col_start_[b], col_entries_.begin() + col_start_[b + 1]);
    }

    void seed(const Column& c)
    {
        heap_.clear();
        ++epoch_;
        for (const auto& [r, v] : c)
            add_to(r, v);
    }

    void add_to(std::int32_t r, const T& v)
    {
        if (stamp_[r] != epoch_) {
            stamp_[r] = epoch_;
            acc_[r] = v;
            heap_.push_back(r);
            std::push_heap(heap_.begin(), heap_.end());
        } else {
            acc_[r] = ops_.add(acc_[r], v);
        }
    }

    // Returns true when column b claims a row. With full = true every entry
    // on a claimed row is eliminated and the column never claims.
    bool reduce(std::int32_t b, bool full)
    {
        Column kept;
        bool claimed = false;
        while (!heap_.empty()) {
            std::pop_heap(heap_.begin(), heap_.end());
            const std::int32_t r = heap_.back();
            heap_.pop_back();
            const T v = acc_[r];
            acc_[r] = ops_.from(0);
            if (ops_.is_zero(v))
                continue;
            const std::int32_t owner = claim_[r];
            if (owner >= 0) {
                // the pivot column's own pivot entry comes first
                const Column& p = reduced_[owner];
                const T f = ops_.mul(v, ops_.inverse(p.front().second));
                for (std::size_t i = 1; i < p.size(); ++i)
                    add_to(p[i].first, ops_.sub(ops_.from(0), ops_.mul(f, p[i].second)));
                continue;
            }
            kept.emplace_back(r, v);
            if (full)
                continue;
            claimed = ops_.is_unit(v);
            break;
        }
        for (std::int32_t r : heap_) {
            if (!ops_.is_zero(acc_[r]))
                kept.emplace_back(r, acc_[r]);
            acc_[r] = ops_.from(0);
        }
        heap_.clear();
        if (claimed)
            claim_[kept.front().first] = b;
        reduced_[b] = std::move(kept);
        return claimed;
    }

    std::pair<std::size_t, std::vector<Integer>> smith(const std::vector<Column>& schur, std::size_t k,
                                                       std::size_t dense_cap) const
    {
        if (schur.empty())
            return {0, {}};
        std::vector<std::int32_t> rows;
        for (const auto& c : schur)
            for (const auto& e : c)
                rows.push_back(e.first);
        std::sort(rows.begin(), rows.end());
        rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
        if (schur.size() > dense_cap || schur.size() * rows.size() > dense_cap * dense_cap)
            throw ResourceCapError("delta^" + std::to_string(k) + " leaves a " + std::to_string(rows.size()) +
                                   " x " + std::to_string(schur.size()) +
                                   " block without unit pivots (cap " + std::to_string(dense_cap) + ")");
        // scale each column to an integer vector; the ring only matters for
        // which diagonal entries count as units
        ExactMatrix a(Ring::Z(), schur.size(), rows.size());
        for (std::size_t j = 0; j < schur.size(); ++j) {
            Integer scale = 1;
            for (const auto& e : schur[j]) {
                const Rational q = ops_.rational(e.second);
                mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
            }
            for (const auto& e : schur[j]) {
                const auto i = std::lower_bound(rows.begin(), rows.end(), e.first) - rows.begin();
                a.set(j, static_cast<std::size_t>(i), Rational(ops_.rational(e.second) * scale));
            }
        }
        std::vector<Integer> factors;
        const auto diagonal = smith_diagonal(a);
        if (ops_.integral())
            for (const auto& d : diagonal)
                if (abs(d) != 1)
                    factors.push_back(abs(d));
        return {diagonal.size(), factors};
    }

    void release()
    {
        col_start_ = {};
        col_entries_ = {};
        reduced_ = {};
        acc_ = {};
    }

    Ops ops_;
    std::vector<std::int64_t> col_start_;
    Column col_entries_;
    std::vector<Column> reduced_;      // reduced columns; a claiming column starts with its pivot
    std::vector<std::int32_t> claim_;  // row -> claiming column
    std::vector<T> acc_;
    std::vector<std::int64_t> stamp_; // rows already in the heap for the current epoch
    std::int64_t epoch_ = 0;
    std::vector<std::int32_t> heap_;
};

void check_shapes(std::size_t count, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    if (count == 0)
        throw DimensionMismatchError("no differentials to reduce");
    for (std::size_t k = 0; k + 1 < count; ++k)
        if (rows[k] != cols[k + 1])
            throw DimensionMismatchError("delta^" + std::to_string(k) + " has " + std::to_string(rows[k]) +
                                         " rows but delta^" + std::to_string(k + 1) + " has " +
                                         std::to_string(cols[k + 1]) + " columns");
}

template <class T>
void check_shapes(const std::vector<SparseMatrix<T>>& deltas)
{
    std::vector<std::size_t> rows, cols;
    for (const auto& d : deltas) {
        rows.push_back(d.rows);
        cols.push_back(d.cols);
    }
    check_shapes(deltas.size(), rows, cols);
}

} // namespace

namespace {

template <class T>
std::vector<std::size_t> column_counts(const std::vector<SparseMatrix<T>>& deltas)
{
    std::vector<std::size_t> dims;
    for (const auto& d : deltas)
        dims.push_back(d.cols);
    return dims;
}

// H^k has free rank n_k - rank delta^k - rank delta^{k-1} and, over Z, the
// torsion of coker delta^{k-1}.
void assemble_from_ranks(ReductionResult& out, const Ring& ring, const std::vector<std::size_t>& dims)
{
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const std::size_t below = k ? out.ranks[k - 1] : 0;
        const std::size_t free = dims[k] - out.ranks[k] - below;
        std::vector<Integer> orders;
        if (ring.is_integers() && k)
            orders = out.factors[k - 1];
        out.cohomology.push_back(ModuleInvariants::from_cyclic_orders(ring, free, orders));
    }
}

template <class Ops, class In>
ReductionResult by_columns(Ops ops, const Ring& ring, const std::vector<SparseMatrix<In>>& deltas,
                           std::size_t dense_cap)
{
    auto out = ColumnReducer<Ops>(ops).run(deltas, dense_cap);
    assemble_from_ranks(out, ring, column_counts(deltas));
    return out;
}

} // namespace

ReductionResult reduce_cohomology(const Ring& ring, const std::vector<IntSparse>& deltas, std::size_t dense_cap)
{
    check_shapes(deltas);
    if (ring.is_modular()) {
        if (ring.is_field())
            return by_columns(Modular{ring.modulus}, ring, deltas, dense_cap);
        return Reducer<Modular>(Modular{ring.modulus}, ring, deltas).run(dense_cap);
    }
    // over Q as well, pivoting on +-1 keeps the arithmetic integral
    try {
        return by_columns(CheckedInt{}, ring, deltas, dense_cap);
    } catch (const Overflow&) {
        auto out = by_columns(BigInt{}, ring, deltas, dense_cap);
        out.big_integers = true;
        return out;
    }
}

ReductionResult reduce_cohomology(const Ring& ring, const std::vector<RationalSparse>& deltas,
                                  std::size_t dense_cap)
{
    check_shapes(deltas);
    if (!ring.is_rationals())
        throw DimensionMismatchError("rational differentials over " + ring.name());
    return by_columns(Rationals{}, ring, deltas, dense_cap);
}

std::vector<ModuleInvariants> universal_coefficients(const ReductionResult& integral,
                                                     const std::vector<std::size_t>& dims, const Ring& ring)
{
    const Integer m(static_cast<long>(ring.modulus));
    const auto reduce = [&](const std::vector<Integer>& factors, std::vector<Integer>& orders) {
        for (const auto& t : factors) {
            Integer g;
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
            orders.push_back(g);
        }
    };
    std::vector<ModuleInvariants> out;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        const std::size_t below = k ? integral.ranks[k - 1] : 0;
        std::vector<Integer> orders(dims[k] - integral.ranks[k] - below, m);
        if (k)
            reduce(integral.factors[k - 1], orders);
        reduce(integral.factors[k], orders);
        out.push_back(ModuleInvariants::from_cyclic_orders(ring, 0, std::move(orders)));
    }
    return out;
}

} // namespace orbcoh::detail
