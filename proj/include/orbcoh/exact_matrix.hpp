#pragma once

#include "orbcoh/ring.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace orbcoh {

/// Dense matrix over Z, Q or Z/m with arbitrary-precision entries.
///
/// Entries are stored as rationals; over Z and Z/m they are always integral,
/// and over Z/m they are kept reduced to 0..m-1.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(Ring ring, std::size_t rows, std::size_t cols);

    static ExactMatrix identity(Ring ring, std::size_t n);
    static ExactMatrix from_rows(Ring ring, const std::vector<std::vector<long>>& rows);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    /// Integral entry; only valid over Z and Z/m.
    Integer integer_at(std::size_t i, std::size_t j) const { return at(i, j).get_num(); }

    void set(std::size_t i, std::size_t j, const Rational& value);
    void set(std::size_t i, std::size_t j, long value) { set(i, j, Rational(value)); }

    bool is_zero() const;
    bool is_diagonal() const;

    ExactMatrix transpose() const;
    ExactMatrix operator*(const ExactMatrix& rhs) const;

    bool operator==(const ExactMatrix& rhs) const;

    std::string to_string() const;

private:
    Ring ring_ = Ring::Z();
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Determinant of a square matrix over the matrix's ring.
Rational determinant(const ExactMatrix& a);

/// True when the square matrix is invertible over its ring.
bool is_invertible(const ExactMatrix& a);

} // namespace orbcoh
