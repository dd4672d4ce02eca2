#include "orbcoh/errors.hpp"
#include "orbcoh/smith.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace orbcoh;

namespace {

void check_postconditions(const ExactMatrix& a)
{
    const auto d = smith_normal_form(a);
    REQUIRE(d.U * a * d.V == d.S);
    REQUIRE(d.S.is_diagonal());
    REQUIRE(is_invertible(d.U));
    REQUIRE(is_invertible(d.V));
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Integer x = d.S.integer_at(i, i), y = d.S.integer_at(i + 1, i + 1);
        if (a.ring().is_rationals())
            continue;
        if (x == 0)
            REQUIRE(y == 0);
        else
            REQUIRE(y % x == 0);
    }
    if (a.ring().is_integers())
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(d.S.integer_at(i, i) >= 0);
    if (a.ring().is_modular()) {
        const Integer m(static_cast<long>(a.ring().modulus));
        for (std::size_t i = 0; i < n; ++i) {
            const Integer x = d.S.integer_at(i, i);
            if (x != 0)
                REQUIRE(m % x == 0);
        }
    }
}

ExactMatrix random_matrix(std::mt19937& rng, Ring ring, std::size_t r, std::size_t c, int spread)
{
    std::uniform_int_distribution<long> entry(-spread, spread);
    std::bernoulli_distribution zero(0.3);
    ExactMatrix a(ring, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            a.set(i, j, zero(rng) ? 0L : entry(rng));
    return a;
}

} // namespace

TEST_CASE("smith normal form of diag(2,3)")
{
    auto a = ExactMatrix::from_rows(Ring::Z(), {{2, 0}, {0, 3}});
    auto d = smith_normal_form(a);
    CHECK(d.S == ExactMatrix::from_rows(Ring::Z(), {{1, 0}, {0, 6}}));
    check_postconditions(a);
}

TEST_CASE("smith normal form of trivial inputs")
{
    auto id = ExactMatrix::identity(Ring::Z(), 4);
    CHECK(smith_normal_form(id).S == id);
    ExactMatrix zero(Ring::Z(), 2, 3);
    CHECK(smith_normal_form(zero).S.is_zero());
    ExactMatrix empty(Ring::Z(), 0, 3);
    CHECK(smith_normal_form(empty).S.rows() == 0);
    CHECK(smith_diagonal(ExactMatrix(Ring::Z(), 3, 0)).empty());
}

TEST_CASE("smith normal form over Z/m keeps divisors of m")
{
    auto a = ExactMatrix::from_rows(Ring::Zmod(12), {{4, 6}, {8, 3}});
    check_postconditions(a);
    // 3 generates the ideal (3) in Z/12 and 4 generates (4); together they give 1
    auto b = ExactMatrix::from_rows(Ring::Zmod(12), {{3, 0}, {0, 4}});
    CHECK(smith_normal_form(b).S == ExactMatrix::from_rows(Ring::Zmod(12), {{1, 0}, {0, 0}}));
    auto c = ExactMatrix::from_rows(Ring::Zmod(8), {{6}});
    CHECK(smith_diagonal(c) == std::vector<Integer>{2});
}

TEST_CASE("rank over fields")
{
    auto a = ExactMatrix::from_rows(Ring::Q(), {{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(rank(a) == 2);
    check_postconditions(a);
    auto b = ExactMatrix::from_rows(Ring::Zmod(5), {{1, 2}, {3, 1}});
    CHECK(rank(b) == 1);
    CHECK_THROWS(rank(ExactMatrix::from_rows(Ring::Zmod(6), {{2}})));
}

TEST_CASE("smith postconditions on random matrices")
{
    std::mt19937 rng(20261015);
    std::uniform_int_distribution<std::size_t> dim(0, 5);
    const std::vector<Ring> rings = {Ring::Z(), Ring::Zmod(2), Ring::Zmod(12), Ring::Zmod(30),
                                     Ring::Zmod(7), Ring::Q()};
    int checked = 0;
    for (int trial = 0; trial < 1200; ++trial) {
        const Ring ring = rings[trial % rings.size()];
        auto a = random_matrix(rng, ring, dim(rng), dim(rng), 9);
        check_postconditions(a);
        ++checked;
    }
    CHECK(checked >= 1000);
}
