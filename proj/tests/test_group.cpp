#include "orbcoh/errors.hpp"
#include "orbcoh/group.hpp"

#include <catch_amalgamated.hpp>

using namespace orbcoh;

TEST_CASE("cyclic groups")
{
    auto c1 = cyclic_group(1);
    CHECK(c1.order() == 1);
    CHECK(c1.is_trivial());

    auto c3 = cyclic_group(3);
    CHECK(c3.mul(1, 2) == 0);
    CHECK(c3.inv(1) == 2);
    CHECK(c3.pow(1, 1) == 1);
    CHECK(c3.pow(1, 2) == 2);
    CHECK(c3.pow(1, 3) == 0);

    CHECK_THROWS_AS(cyclic_group(0), InvalidOrderError);
    CHECK_THROWS_AS(cyclic_group(-2), InvalidOrderError);
}

TEST_CASE("group_from_table accepts the Klein four-group")
{
    auto v4 = group_from_table({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
    CHECK(v4.order() == 4);
    for (int x = 0; x < 4; ++x) {
        CHECK(v4.mul(x, x) == 0);
        CHECK(v4.inv(x) == x);
    }
    CHECK(v4.is_abelian());
}

TEST_CASE("group_from_table rejects broken tables")
{
    CHECK(group_from_table({{0}}).is_trivial());
    CHECK_THROWS_AS(group_from_table({{0, 1}, {1, 1}}), GroupAxiomError);
    CHECK_THROWS_AS(group_from_table({{1, 0}, {0, 1}}), GroupAxiomError);
    CHECK_THROWS_AS(group_from_table({{0, 1}, {1}}), GroupAxiomError);
    CHECK_THROWS_AS(group_from_table({{0, 5}, {1, 0}}), GroupAxiomError);
    // Latin square with identity 0 that is not associative.
    CHECK_THROWS_AS(group_from_table({{0, 1, 2, 3, 4},
                                      {1, 0, 3, 4, 2},
                                      {2, 4, 0, 1, 3},
                                      {3, 2, 4, 0, 1},
                                      {4, 3, 1, 2, 0}}),
                    GroupAxiomError);
    try {
        group_from_table({{0, 1}, {1, 1}});
    } catch (const GroupAxiomError& e) {
        CHECK(std::string(e.what()).find("1") != std::string::npos);
    }
}

TEST_CASE("symmetric group S3 from a table")
{
    // permutations of {0,1,2} in a fixed order, composed as (p*q)(x) = p(q(x))
    std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            std::vector<int> c(3);
            for (int x = 0; x < 3; ++x)
                c[x] = perms[a][perms[b][x]];
            for (int k = 0; k < 6; ++k)
                if (perms[k] == c)
                    table[a][b] = k;
        }
    auto s3 = group_from_table(table);
    CHECK_FALSE(s3.is_abelian());
    for (int a = 0; a < 6; ++a) {
        CHECK(s3.mul(a, s3.inv(a)) == 0);
        CHECK(s3.mul(s3.inv(a), a) == 0);
    }
    GroupElement x{&s3, 1}, y{&s3, 2};
    CHECK((x * y).index == s3.mul(1, 2));
    CHECK((x * x.inverse()).index == 0);
}
