#include "orbcoh/exact_matrix.hpp"

#include "orbcoh/errors.hpp"

#include <sstream>

namespace orbcoh {

ExactMatrix::ExactMatrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols)
{
}

ExactMatrix ExactMatrix::identity(Ring ring, std::size_t n)
{
    ExactMatrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.set(i, i, 1L);
    return m;
}

ExactMatrix ExactMatrix::from_rows(Ring ring, const std::vector<std::vector<long>>& rows)
{
    const std::size_t r = rows.size();
    const std::size_t c = r ? rows.front().size() : 0;
    ExactMatrix m(ring, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw DimensionMismatchError("ragged matrix: row " + std::to_string(i) + " has " +
                                         std::to_string(rows[i].size()) + " entries");
        for (std::size_t j = 0; j < c; ++j)
            m.set(i, j, rows[i][j]);
    }
    return m;
}

void ExactMatrix::set(std::size_t i, std::size_t j, const Rational& value)
{
    if (ring_.is_rationals()) {
        data_[i * cols_ + j] = value;
        return;
    }
    if (value.get_den() != 1)
        throw DimensionMismatchError("non-integral entry " + value.get_str() + " over " +
                                     ring_.name());
    data_[i * cols_ + j] = Rational(ring_.reduce(value.get_num()));
}

bool ExactMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

bool ExactMatrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && at(i, j) != 0)
                return false;
    return true;
}

ExactMatrix ExactMatrix::transpose() const
{
    ExactMatrix t(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.data_[j * rows_ + i] = at(i, j);
    return t;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw DimensionMismatchError("cannot multiply " + std::to_string(rows_) + "x" +
                                     std::to_string(cols_) + " by " + std::to_string(rhs.rows_) +
                                     "x" + std::to_string(rhs.cols_));
    if (!(ring_ == rhs.ring_))
        throw DimensionMismatchError("cannot multiply matrices over " + ring_.name() + " and " +
                                     rhs.ring_.name());
    ExactMatrix out(ring_, rows_, rhs.cols_);
    Rational acc;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rhs.cols_; ++j) {
            acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rational& a = at(i, k);
                if (a == 0)
                    continue;
                acc += a * rhs.at(k, j);
            }
            out.set(i, j, acc);
        }
    return out;
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const
{
    return ring_ == rhs.ring_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::string ExactMatrix::to_string() const
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? ", " : "") << at(i, j).get_str();
        os << "]";
    }
    os << "]";
    return os.str();
}

Rational determinant(const ExactMatrix& a)
{
    if (a.rows() != a.cols())
        throw DimensionMismatchError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Rational> m(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = a.at(i, j);

    Rational det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p * n + c] == 0)
            ++p;
        if (p == n)
            return 0;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(m[p * n + j], m[c * n + j]);
            det = -det;
        }
        const Rational pivot = m[c * n + c];
        det *= pivot;
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m[i * n + c] == 0)
                continue;
            const Rational f = m[i * n + c] / pivot;
            for (std::size_t j = c; j < n; ++j)
                m[i * n + j] -= f * m[c * n + j];
        }
    }
    if (a.ring().is_modular())
        return Rational(a.ring().reduce(det.get_num()));
    return det;
}

bool is_invertible(const ExactMatrix& a)
{
    if (a.rows() != a.cols())
        return false;
    const Rational d = determinant(a);
    if (a.ring().is_rationals())
        return d != 0;
    return a.ring().is_unit(d.get_num());
}

} // namespace orbcoh
