#include "orbcoh/homology.hpp"

#include "orbcoh/errors.hpp"
#include "orbcoh/smith.hpp"

namespace orbcoh {

namespace {

std::size_t nonzero_count(const std::vector<Integer>& diagonal)
{
    std::size_t n = 0;
    for (const auto& d : diagonal)
        if (d != 0)
            ++n;
    return n;
}

ModuleInvariants over_integers(const ExactMatrix& d_out, const ExactMatrix& d_in)
{
    const std::size_t n = d_in.rows();
    const std::size_t r_out = nonzero_count(detail::integral_smith(d_out, false).diagonal);
    const auto in_diag = detail::integral_smith(d_in, false).diagonal;
    const std::size_t r_in = nonzero_count(in_diag);
    std::vector<Integer> orders;
    for (const auto& d : in_diag)
        if (d != 0)
            orders.push_back(abs(d));
    return ModuleInvariants::from_cyclic_orders(d_in.ring(), n - r_out - r_in, orders);
}

ModuleInvariants over_rationals(const ExactMatrix& d_out, const ExactMatrix& d_in)
{
    const std::size_t n = d_in.rows();
    return ModuleInvariants::from_cyclic_orders(d_in.ring(), n - rank(d_out) - rank(d_in), {});
}

// Over Z/m the kernel of d_out is not free in general. In the coordinates
// y = V^{-1} x given by the Smith form of d_out, the kernel is the direct sum
// of k_i * Z/m with k_i = m / gcd(s_i, m). The quotient by im(d_in) is then the
// cokernel of an integer matrix [diag(e_i) | Y / k_i].
ModuleInvariants over_residues(const ExactMatrix& d_out, const ExactMatrix& d_in)
{
    const Ring ring = d_in.ring();
    const std::size_t n = d_in.rows();
    const Integer m(static_cast<long>(ring.modulus));

    const auto snf = detail::integral_smith(d_out, true);
    std::vector<Integer> e(n, m);
    for (std::size_t i = 0; i < snf.diagonal.size(); ++i)
        if (snf.diagonal[i] != 0)
            mpz_gcd(e[i].get_mpz_t(), snf.diagonal[i].get_mpz_t(), m.get_mpz_t());

    const ExactMatrix y = d_in.cols() ? snf.Vinv * d_in : ExactMatrix(ring, n, 0);

    ExactMatrix presentation(Ring::Z(), n, n + d_in.cols());
    for (std::size_t i = 0; i < n; ++i) {
        presentation.set(i, i, Rational(e[i]));
        const Integer k = m / e[i];
        for (std::size_t j = 0; j < d_in.cols(); ++j) {
            const Integer v = y.integer_at(i, j);
            if (v % k != 0)
                throw NotAComplexError("image of d_in leaves the kernel of d_out in row " +
                                       std::to_string(i));
            presentation.set(i, n + j, Rational(v / k));
        }
    }
    const auto factors = detail::integral_smith(presentation, false).diagonal;
    std::size_t free = 0;
    std::vector<Integer> orders;
    for (const auto& d : factors) {
        if (abs(d) == m)
            ++free;
        else
            orders.push_back(abs(d));
    }
    return ModuleInvariants::from_cyclic_orders(ring, free, orders);
}

} // namespace

void check_composable(const ExactMatrix& d_out, const ExactMatrix& d_in)
{
    if (!(d_out.ring() == d_in.ring()))
        throw DimensionMismatchError("differentials over different rings: " + d_out.ring().name() +
                                     " and " + d_in.ring().name());
    if (d_out.cols() != d_in.rows())
        throw DimensionMismatchError("d_out has " + std::to_string(d_out.cols()) +
                                     " columns but d_in has " + std::to_string(d_in.rows()) +
                                     " rows");
    if (d_out.rows() == 0 || d_in.cols() == 0)
        return;
    const ExactMatrix product = d_out * d_in;
    for (std::size_t i = 0; i < product.rows(); ++i)
        for (std::size_t j = 0; j < product.cols(); ++j)
            if (product.at(i, j) != 0)
                throw NotAComplexError("d_out * d_in is nonzero at (" + std::to_string(i) + ", " +
                                       std::to_string(j) + "): " + product.at(i, j).get_str());
}

ModuleInvariants cohomology_at(const ExactMatrix& d_out, const ExactMatrix& d_in)
{
    check_composable(d_out, d_in);
    switch (d_in.ring().kind) {
    case RingKind::Integers: return over_integers(d_out, d_in);
    case RingKind::Rationals: return over_rationals(d_out, d_in);
    case RingKind::IntegersMod: return over_residues(d_out, d_in);
    }
    return {};
}

} // namespace orbcoh
