#pragma once

#include "orbcoh/exact_matrix.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace orbcoh {

/// Compressed sparse rows. Entries within a row are sorted by column and
/// nonzero. T is std::int64_t (Z, Z/m, integral Q) or Rational.
template <class T>
struct SparseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::int64_t> start{0};
    std::vector<std::int32_t> index;
    std::vector<T> value;

    SparseMatrix() = default;
    explicit SparseMatrix(std::size_t columns) : cols(columns) {}

    std::size_t nonzeros() const { return index.size(); }
    std::int64_t row_begin(std::size_t r) const { return start[r]; }
    std::int64_t row_end(std::size_t r) const { return start[r + 1]; }

    /// Appends a row given as unsorted (column, value) pairs; duplicates are
    /// summed by `add` and zeros dropped by `is_zero`.
    template <class Add, class IsZero>
    void push_row(std::vector<std::pair<std::int32_t, T>>& entries, Add add, IsZero is_zero);
};

template <class T>
template <class Add, class IsZero>
void SparseMatrix<T>::push_row(std::vector<std::pair<std::int32_t, T>>& entries, Add add, IsZero is_zero)
{
    std::sort(entries.begin(), entries.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    std::size_t i = 0;
    while (i < entries.size()) {
        T sum = entries[i].second;
        std::size_t j = i + 1;
        for (; j < entries.size() && entries[j].first == entries[i].first; ++j)
            sum = add(sum, entries[j].second);
        if (!is_zero(sum)) {
            index.push_back(entries[i].first);
            value.push_back(sum);
        }
        i = j;
    }
    start.push_back(static_cast<std::int64_t>(index.size()));
    ++rows;
}

using IntSparse = SparseMatrix<std::int64_t>;
using RationalSparse = SparseMatrix<Rational>;

/// Dense copy over the given ring.
ExactMatrix to_dense(const Ring& ring, const IntSparse& m);
ExactMatrix to_dense(const Ring& ring, const RationalSparse& m);

/// Position of the first nonzero entry of outer * inner, or nullopt.
struct ProductEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    Rational value;
};
std::optional<ProductEntry> first_nonzero_product(const Ring& ring, const IntSparse& outer, const IntSparse& inner);
std::optional<ProductEntry> first_nonzero_product(const Ring& ring, const RationalSparse& outer,
                                                  const RationalSparse& inner);

} // namespace orbcoh
