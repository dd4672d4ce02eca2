#pragma once

#include "orbcoh/exact_matrix.hpp"
#include "orbcoh/homology.hpp"
#include "orbcoh/sparse.hpp"

#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using namespace orbcoh;

inline ExactMatrix power(const ExactMatrix& t, int e)
{
    ExactMatrix out = ExactMatrix::identity(t.ring(), t.rows());
    for (int i = 0; i < e; ++i)
        out = out * t;
    return out;
}

/// H^0..H^D of C_n acting on ring^r through the generator t, from the
/// periodic resolution A -(t-1)-> A -N-> A -(t-1)-> ...
inline std::vector<ModuleInvariants> cyclic_cohomology(int n, const ExactMatrix& t, int max_degree)
{
    const Ring ring = t.ring();
    const std::size_t r = t.rows();
    ExactMatrix t_minus(ring, r, r), norm(ring, r, r);
    const ExactMatrix id = ExactMatrix::identity(ring, r);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            t_minus.set(i, j, t.at(i, j) - id.at(i, j));
    for (int e = 0; e < n; ++e) {
        const ExactMatrix p = power(t, e);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j)
                norm.set(i, j, norm.at(i, j) + p.at(i, j));
    }
    std::vector<ModuleInvariants> out;
    ExactMatrix d_in(ring, r, 0);
    for (int k = 0; k <= max_degree; ++k) {
        const ExactMatrix& d_out = k % 2 == 0 ? t_minus : norm;
        out.push_back(cohomology_at(d_out, d_in));
        d_in = d_out;
    }
    return out;
}

inline std::vector<ExactMatrix> cyclic_action(int n, const ExactMatrix& t)
{
    std::vector<ExactMatrix> out;
    for (int e = 0; e < n; ++e)
        out.push_back(power(t, e));
    return out;
}

/// A cochain complex over Z with prescribed cohomology: a direct sum of free
/// generators and pieces Z -d-> Z, hidden behind random unimodular changes of
/// basis in every degree.
struct KnownComplex {
    std::vector<ExactMatrix> deltas;     // delta^0 .. delta^D over Z
    std::vector<std::size_t> free;       // free generators in degree k
    std::vector<std::vector<long>> maps; // maps[k]: pieces C^k -> C^{k+1}
};

inline std::pair<ExactMatrix, ExactMatrix> unimodular(std::size_t n, std::mt19937& rng)
{
    const Ring Z = Ring::Z();
    ExactMatrix m = ExactMatrix::identity(Z, n), inv = ExactMatrix::identity(Z, n);
    if (n < 2)
        return {m, inv};
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> coef(-1, 1);
    for (std::size_t step = 0; step < 3 * n; ++step) {
        const std::size_t i = idx(rng), j = idx(rng);
        const int a = coef(rng);
        if (i == j || a == 0)
            continue;
        // row i += a row j, applied on the left; its inverse on the right
        for (std::size_t c = 0; c < n; ++c)
            m.set(i, c, m.at(i, c) + a * m.at(j, c));
        for (std::size_t r = 0; r < n; ++r)
            inv.set(r, j, inv.at(r, j) - a * inv.at(r, i));
    }
    return {m, inv};
}

inline KnownComplex random_known_complex(int max_degree, std::mt19937& rng)
{
    const Ring Z = Ring::Z();
    std::uniform_int_distribution<int> count(0, 2);
    const std::vector<long> choices{1, -1, 1, 2, 3, 4, 6, -2};
    std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);

    KnownComplex out;
    out.free.assign(static_cast<std::size_t>(max_degree) + 2, 0);
    out.maps.assign(static_cast<std::size_t>(max_degree) + 1, {});
    for (auto& f : out.free)
        f = static_cast<std::size_t>(count(rng));
    for (auto& m : out.maps)
        for (int i = count(rng) + count(rng); i > 0; --i)
            m.push_back(choices[pick(rng)]);

    // basis of C^k: free generators, then targets of maps[k-1], then sources of maps[k]
    std::vector<std::size_t> dims;
    for (std::size_t k = 0; k < out.free.size(); ++k)
        dims.push_back(out.free[k] + (k ? out.maps[k - 1].size() : 0) + (k < out.maps.size() ? out.maps[k].size() : 0));
    std::vector<std::pair<ExactMatrix, ExactMatrix>> basis;
    for (std::size_t n : dims)
        basis.push_back(unimodular(n, rng));
    for (std::size_t k = 0; k < out.maps.size(); ++k) {
        ExactMatrix d(Z, dims[k + 1], dims[k]);
        const std::size_t src = out.free[k] + (k ? out.maps[k - 1].size() : 0);
        const std::size_t dst = out.free[k + 1];
        for (std::size_t i = 0; i < out.maps[k].size(); ++i)
            d.set(dst + i, src + i, Rational(out.maps[k][i]));
        out.deltas.push_back(basis[k + 1].first * d * basis[k].second);
    }
    return out;
}

/// Expected H^k over the ring: Z^free + Z/d for maps into degree k, and over
/// Z/m also the kernels of the maps out of degree k.
inline ModuleInvariants expected(const KnownComplex& c, std::size_t k, const Ring& ring)
{
    std::vector<Integer> orders;
    std::size_t free = c.free[k];
    const auto reduce = [&](long d) -> Integer {
        if (ring.is_integers())
            return Integer(std::labs(d));
        if (ring.is_rationals())
            return Integer(1);
        return Integer(std::gcd(std::labs(d), static_cast<long>(ring.modulus)));
    };
    if (k)
        for (long d : c.maps[k - 1])
            orders.push_back(reduce(d));
    if (ring.is_modular())
        for (long d : c.maps[k])
            orders.push_back(reduce(d));
    return ModuleInvariants::from_cyclic_orders(ring, free, orders);
}

inline IntSparse to_sparse(const ExactMatrix& m)
{
    IntSparse out(m.cols());
    std::vector<std::pair<std::int32_t, std::int64_t>> row;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        row.clear();
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0)
                row.emplace_back(static_cast<std::int32_t>(j), m.integer_at(i, j).get_si());
        out.push_row(row, [](std::int64_t a, std::int64_t b) { return a + b; },
                     [](std::int64_t a) { return a == 0; });
    }
    return out;
}

} // namespace oracle
