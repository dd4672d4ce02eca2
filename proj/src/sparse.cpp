#include "orbcoh/sparse.hpp"

#include <string>
#include <unordered_map>

namespace orbcoh {

namespace {

Rational as_rational(std::int64_t x) { return Rational(Integer(std::to_string(x))); }
const Rational& as_rational(const Rational& x) { return x; }

template <class T>
ExactMatrix dense_copy(const Ring& ring, const SparseMatrix<T>& m)
{
    ExactMatrix out(ring, m.rows, m.cols);
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto p = m.row_begin(r); p < m.row_end(r); ++p)
            out.set(r, static_cast<std::size_t>(m.index[p]), as_rational(m.value[p]));
    return out;
}

template <class T>
std::optional<ProductEntry> product_check(const Ring& ring, const SparseMatrix<T>& outer,
                                          const SparseMatrix<T>& inner)
{
    std::unordered_map<std::int32_t, Rational> acc;
    for (std::size_t r = 0; r < outer.rows; ++r) {
        acc.clear();
        for (auto p = outer.row_begin(r); p < outer.row_end(r); ++p) {
            const Rational a = as_rational(outer.value[p]);
            const auto mid = static_cast<std::size_t>(outer.index[p]);
            for (auto q = inner.row_begin(mid); q < inner.row_end(mid); ++q)
                acc[inner.index[q]] += a * as_rational(inner.value[q]);
        }
        std::optional<ProductEntry> worst;
        for (auto& [c, v] : acc) {
            if (!ring.is_rationals())
                v = Rational(ring.reduce(v.get_num()));
            if (v != 0 && (!worst || static_cast<std::size_t>(c) < worst->col))
                worst = ProductEntry{r, static_cast<std::size_t>(c), v};
        }
        if (worst)
            return worst;
    }
    return std::nullopt;
}

} // namespace

ExactMatrix to_dense(const Ring& ring, const IntSparse& m) { return dense_copy(ring, m); }
ExactMatrix to_dense(const Ring& ring, const RationalSparse& m) { return dense_copy(ring, m); }

std::optional<ProductEntry> first_nonzero_product(const Ring& ring, const IntSparse& outer, const IntSparse& inner)
{
    // entries stay far below 2^63, so 128-bit sums of a few products are exact
    std::vector<std::pair<std::int32_t, __int128>> acc;
    for (std::size_t r = 0; r < outer.rows; ++r) {
        acc.clear();
        for (auto p = outer.row_begin(r); p < outer.row_end(r); ++p) {
            const auto mid = static_cast<std::size_t>(outer.index[p]);
            for (auto q = inner.row_begin(mid); q < inner.row_end(mid); ++q)
                acc.emplace_back(inner.index[q], static_cast<__int128>(outer.value[p]) * inner.value[q]);
        }
        std::sort(acc.begin(), acc.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        for (std::size_t i = 0; i < acc.size();) {
            __int128 sum = 0;
            std::size_t j = i;
            for (; j < acc.size() && acc[j].first == acc[i].first; ++j)
                sum += acc[j].second;
            if (ring.is_modular())
                sum %= ring.modulus;
            if (sum != 0) {
                const bool negative = sum < 0;
                unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(sum) : sum;
                std::string digits;
                while (mag) {
                    digits.insert(digits.begin(), static_cast<char>('0' + static_cast<int>(mag % 10)));
                    mag /= 10;
                }
                Rational v(Integer((negative ? "-" : "") + digits));
                if (ring.is_modular())
                    v = Rational(ring.reduce(v.get_num()));
                return ProductEntry{r, static_cast<std::size_t>(acc[i].first), v};
            }
            i = j;
        }
    }
    return std::nullopt;
}

std::optional<ProductEntry> first_nonzero_product(const Ring& ring, const RationalSparse& outer,
                                                  const RationalSparse& inner)
{
    return product_check(ring, outer, inner);
}

} // namespace orbcoh
