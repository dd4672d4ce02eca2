#include "orbcoh/smith.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>
#include <utility>

namespace orbcoh {

namespace {

/// Elimination over Z or Z/m on a row-major integer matrix. Every step is a
/// 2x2 unimodular transform, so U and V stay invertible over the ring.
class IntegralEliminator {
public:
    IntegralEliminator(const ExactMatrix& a, bool track)
        : rows_(a.rows()), cols_(a.cols()), track_(track), ring_(a.ring())
    {
        if (ring_.is_modular())
            modulus_ = Integer(static_cast<long>(ring_.modulus));
        a_.resize(rows_ * cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                a_[i * cols_ + j] = a.integer_at(i, j);
        if (track_) {
            u_ = identity(rows_);
            v_ = identity(cols_);
            vinv_ = identity(cols_);
        }
    }

    void run()
    {
        const std::size_t n = std::min(rows_, cols_);
        for (std::size_t t = 0; t < n; ++t) {
            if (!place_pivot(t))
                break;
            while (true) {
                clear_column(t);
                clear_row(t);
                if (!column_clear(t))
                    continue;
                std::size_t bad_row = 0;
                if (!pivot_divides_rest(t, bad_row))
                    add_row(t, bad_row);
                else
                    break;
            }
            normalise(t);
        }
    }

    std::vector<Integer> diagonal() const
    {
        std::vector<Integer> d(std::min(rows_, cols_));
        for (std::size_t i = 0; i < d.size(); ++i)
            d[i] = a_[i * cols_ + i];
        return d;
    }

    ExactMatrix matrix(const std::vector<Integer>& m, std::size_t r, std::size_t c) const
    {
        ExactMatrix out(ring_, r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                out.set(i, j, Rational(m[i * c + j]));
        return out;
    }

    ExactMatrix U() const { return matrix(u_, rows_, rows_); }
    ExactMatrix V() const { return matrix(v_, cols_, cols_); }
    ExactMatrix Vinv() const { return matrix(vinv_, cols_, cols_); }

private:
    std::vector<Integer> identity(std::size_t n) const
    {
        std::vector<Integer> m(n * n);
        for (std::size_t i = 0; i < n; ++i)
            m[i * n + i] = 1;
        return m;
    }

    void reduce(Integer& x) const
    {
        if (modulus_ == 0)
            return;
        x %= modulus_;
        if (x < 0)
            x += modulus_;
    }

    Integer& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    /// Size used for pivot choice: |x| over Z, gcd(x, m) over Z/m.
    Integer norm(const Integer& x) const
    {
        if (modulus_ == 0)
            return abs(x);
        Integer g;
        mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
        return g;
    }

    bool place_pivot(std::size_t t)
    {
        std::size_t bi = rows_, bj = cols_;
        Integer best;
        for (std::size_t i = t; i < rows_; ++i)
            for (std::size_t j = t; j < cols_; ++j) {
                const Integer& x = a_[i * cols_ + j];
                if (x == 0)
                    continue;
                Integer nx = norm(x);
                if (bi == rows_ || nx < best) {
                    best = nx;
                    bi = i;
                    bj = j;
                    if (best == 1)
                        goto found;
                }
            }
        if (bi == rows_)
            return false;
    found:
        swap_rows(t, bi);
        swap_cols(t, bj);
        normalise(t);
        return true;
    }

    /// Over Z makes the pivot positive; over Z/m scales it to gcd(pivot, m).
    void normalise(std::size_t t)
    {
        Integer& p = at(t, t);
        if (p == 0)
            return;
        if (modulus_ == 0) {
            if (p < 0)
                scale_row(t, Integer(-1));
            return;
        }
        Integer g = norm(p);
        if (g == p)
            return;
        Integer pp = p / g;
        Integer mm = modulus_ / g;
        Integer u;
        if (mm == 1) {
            u = 1;
        } else {
            mpz_invert(u.get_mpz_t(), pp.get_mpz_t(), mm.get_mpz_t());
        }
        // Lift u to a unit mod m: u + k*mm for the first k coprime to m.
        while (true) {
            Integer gg;
            mpz_gcd(gg.get_mpz_t(), u.get_mpz_t(), modulus_.get_mpz_t());
            if (gg == 1)
                break;
            u += mm;
        }
        scale_row(t, u);
    }

    void scale_row(std::size_t r, const Integer& f)
    {
        for (std::size_t j = 0; j < cols_; ++j) {
            at(r, j) *= f;
            reduce(at(r, j));
        }
        if (track_)
            for (std::size_t j = 0; j < rows_; ++j) {
                u_[r * rows_ + j] *= f;
                reduce(u_[r * rows_ + j]);
            }
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(at(a, j), at(b, j));
        if (track_)
            for (std::size_t j = 0; j < rows_; ++j)
                std::swap(u_[a * rows_ + j], u_[b * rows_ + j]);
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap(at(i, a), at(i, b));
        if (track_) {
            for (std::size_t i = 0; i < cols_; ++i)
                std::swap(v_[i * cols_ + a], v_[i * cols_ + b]);
            for (std::size_t j = 0; j < cols_; ++j)
                std::swap(vinv_[a * cols_ + j], vinv_[b * cols_ + j]);
        }
    }

    // rows (a, b) <- (x*a + y*b, z*a + w*b), determinant 1.
    static void combine(std::vector<Integer>& m, std::size_t stride, std::size_t len,
                        std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                        const Integer& z, const Integer& w, const IntegralEliminator& self)
    {
        for (std::size_t j = 0; j < len; ++j) {
            Integer& ea = m[a * stride + j];
            Integer& eb = m[b * stride + j];
            if (ea == 0 && eb == 0)
                continue;
            Integer na = x * ea + y * eb;
            Integer nb = z * ea + w * eb;
            self.reduce(na);
            self.reduce(nb);
            ea = std::move(na);
            eb = std::move(nb);
        }
    }

    // columns (a, b) <- (x*a + y*b, z*a + w*b).
    static void combine_cols(std::vector<Integer>& m, std::size_t stride, std::size_t nrows,
                             std::size_t a, std::size_t b, const Integer& x, const Integer& y,
                             const Integer& z, const Integer& w, const IntegralEliminator& self)
    {
        for (std::size_t i = 0; i < nrows; ++i) {
            Integer& ea = m[i * stride + a];
            Integer& eb = m[i * stride + b];
            if (ea == 0 && eb == 0)
                continue;
            Integer na = x * ea + y * eb;
            Integer nb = z * ea + w * eb;
            self.reduce(na);
            self.reduce(nb);
            ea = std::move(na);
            eb = std::move(nb);
        }
    }

    void row_transform(std::size_t t, std::size_t i, const Integer& x, const Integer& y,
                       const Integer& z, const Integer& w)
    {
        combine(a_, cols_, cols_, t, i, x, y, z, w, *this);
        if (track_)
            combine(u_, rows_, rows_, t, i, x, y, z, w, *this);
    }

    void col_transform(std::size_t t, std::size_t j, const Integer& x, const Integer& y,
                       const Integer& z, const Integer& w)
    {
        combine_cols(a_, cols_, rows_, t, j, x, y, z, w, *this);
        if (track_) {
            combine_cols(v_, cols_, cols_, t, j, x, y, z, w, *this);
            // inverse of [[x, z], [y, w]] acting on rows of V^{-1}
            combine(vinv_, cols_, cols_, t, j, w, Integer(-z), Integer(-y), x, *this);
        }
    }

    /// Bezout data: x*p + y*q = g.
    static void bezout(const Integer& p, const Integer& q, Integer& g, Integer& x, Integer& y)
    {
        mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    }

    bool divides(const Integer& d, const Integer& a) const
    {
        if (modulus_ == 0)
            return a % d == 0;
        // d is normalised to a divisor of m
        return a % d == 0;
    }

    void clear_column(std::size_t t)
    {
        for (std::size_t i = t + 1; i < rows_; ++i) {
            Integer q = at(i, t);
            if (q == 0)
                continue;
            Integer p = at(t, t);
            if (divides(p, q)) {
                Integer f = q / p;
                row_transform(t, i, Integer(1), Integer(0), Integer(-f), Integer(1));
            } else {
                Integer g, x, y;
                bezout(p, q, g, x, y);
                row_transform(t, i, x, y, Integer(-q / g), Integer(p / g));
                normalise(t);
            }
        }
    }

    void clear_row(std::size_t t)
    {
        for (std::size_t j = t + 1; j < cols_; ++j) {
            Integer q = at(t, j);
            if (q == 0)
                continue;
            Integer p = at(t, t);
            if (divides(p, q)) {
                Integer f = q / p;
                // col_j <- col_j - f * col_t
                col_transform(t, j, Integer(1), Integer(0), Integer(-f), Integer(1));
            } else {
                Integer g, x, y;
                bezout(p, q, g, x, y);
                col_transform(t, j, x, y, Integer(-q / g), Integer(p / g));
                normalise(t);
            }
        }
    }

    bool column_clear(std::size_t t)
    {
        for (std::size_t i = t + 1; i < rows_; ++i)
            if (at(i, t) != 0)
                return false;
        return true;
    }

    bool pivot_divides_rest(std::size_t t, std::size_t& bad_row)
    {
        const Integer& p = at(t, t);
        for (std::size_t i = t + 1; i < rows_; ++i)
            for (std::size_t j = t + 1; j < cols_; ++j) {
                const Integer& x = at(i, j);
                if (x != 0 && !divides(p, x)) {
                    bad_row = i;
                    return false;
                }
            }
        return true;
    }

    void add_row(std::size_t t, std::size_t i)
    {
        row_transform(t, i, Integer(1), Integer(1), Integer(0), Integer(1));
    }

    std::size_t rows_, cols_;
    bool track_;
    Ring ring_;
    Integer modulus_ = 0;
    std::vector<Integer> a_, u_, v_, vinv_;
};

SmithDecomposition rational_smith(const ExactMatrix& a)
{
    const std::size_t r = a.rows(), c = a.cols();
    std::vector<Rational> m(r * c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m[i * c + j] = a.at(i, j);
    ExactMatrix U = ExactMatrix::identity(a.ring(), r);
    ExactMatrix V = ExactMatrix::identity(a.ring(), c);
    std::vector<Rational> u(r * r), v(c * c);
    for (std::size_t i = 0; i < r; ++i)
        u[i * r + i] = 1;
    for (std::size_t i = 0; i < c; ++i)
        v[i * c + i] = 1;

    const std::size_t n = std::min(r, c);
    for (std::size_t t = 0; t < n; ++t) {
        std::size_t pi = r, pj = c;
        for (std::size_t i = t; i < r && pi == r; ++i)
            for (std::size_t j = t; j < c; ++j)
                if (m[i * c + j] != 0) {
                    pi = i;
                    pj = j;
                    break;
                }
        if (pi == r)
            break;
        if (pi != t) {
            for (std::size_t j = 0; j < c; ++j)
                std::swap(m[pi * c + j], m[t * c + j]);
            for (std::size_t j = 0; j < r; ++j)
                std::swap(u[pi * r + j], u[t * r + j]);
        }
        if (pj != t) {
            for (std::size_t i = 0; i < r; ++i)
                std::swap(m[i * c + pj], m[i * c + t]);
            for (std::size_t i = 0; i < c; ++i)
                std::swap(v[i * c + pj], v[i * c + t]);
        }
        const Rational inv = 1 / m[t * c + t];
        for (std::size_t j = 0; j < c; ++j)
            m[t * c + j] *= inv;
        for (std::size_t j = 0; j < r; ++j)
            u[t * r + j] *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == t || m[i * c + t] == 0)
                continue;
            const Rational f = m[i * c + t];
            for (std::size_t j = 0; j < c; ++j)
                m[i * c + j] -= f * m[t * c + j];
            for (std::size_t j = 0; j < r; ++j)
                u[i * r + j] -= f * u[t * r + j];
        }
        for (std::size_t j = t + 1; j < c; ++j) {
            if (m[t * c + j] == 0)
                continue;
            const Rational f = m[t * c + j];
            for (std::size_t i = 0; i < r; ++i)
                m[i * c + j] -= f * m[i * c + t];
            for (std::size_t i = 0; i < c; ++i)
                v[i * c + j] -= f * v[i * c + t];
        }
    }

    SmithDecomposition out{ExactMatrix(a.ring(), r, r), ExactMatrix(a.ring(), r, c),
                           ExactMatrix(a.ring(), c, c)};
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            out.U.set(i, j, u[i * r + j]);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out.S.set(i, j, m[i * c + j]);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            out.V.set(i, j, v[i * c + j]);
    return out;
}

} // namespace

namespace detail {

IntegralSmith integral_smith(const ExactMatrix& a, bool track)
{
    if (a.ring().is_rationals())
        throw DimensionMismatchError("integral_smith called on a matrix over Q");
    IntegralEliminator e(a, track);
    e.run();
    IntegralSmith out;
    out.diagonal = e.diagonal();
    if (track) {
        out.U = e.U();
        out.V = e.V();
        out.Vinv = e.Vinv();
    }
    return out;
}

} // namespace detail

SmithDecomposition smith_normal_form(const ExactMatrix& a)
{
    if (a.ring().is_rationals())
        return rational_smith(a);
    auto res = detail::integral_smith(a, true);
    ExactMatrix S(a.ring(), a.rows(), a.cols());
    for (std::size_t i = 0; i < res.diagonal.size(); ++i)
        S.set(i, i, Rational(res.diagonal[i]));
    return {std::move(res.U), std::move(S), std::move(res.V)};
}

std::vector<Integer> smith_diagonal(const ExactMatrix& a)
{
    std::vector<Integer> out;
    if (a.ring().is_rationals()) {
        // rank is all that matters over a field; scale rows to integers first
        ExactMatrix scaled(Ring::Z(), a.rows(), a.cols());
        for (std::size_t i = 0; i < a.rows(); ++i) {
            Integer l = 1;
            for (std::size_t j = 0; j < a.cols(); ++j)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.at(i, j).get_den_mpz_t());
            for (std::size_t j = 0; j < a.cols(); ++j)
                scaled.set(i, j, Rational(a.at(i, j) * l));
        }
        for (const auto& d : detail::integral_smith(scaled, false).diagonal)
            if (d != 0)
                out.emplace_back(1);
        return out;
    }
    for (auto& d : detail::integral_smith(a, false).diagonal)
        if (d != 0)
            out.push_back(std::move(d));
    return out;
}

std::size_t rank(const ExactMatrix& a)
{
    if (a.ring().is_modular() && !a.ring().is_field())
        throw DimensionMismatchError("rank is not defined over " + a.ring().name());
    return smith_diagonal(a).size();
}

} // namespace orbcoh
