#include "loop_chain.hpp"

#include "orbcoh/errors.hpp"
#include "orbcoh/fixtures.hpp"
#include "orbcoh/local_system.hpp"
#include "orbcoh/teardrop.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace orbcoh;

namespace {

// Random matrix of determinant 1 together with its inverse, built from
// elementary row operations.
std::pair<ExactMatrix, ExactMatrix> random_unimodular(const Ring& ring, int r, std::mt19937& rng)
{
    ExactMatrix m = ExactMatrix::identity(ring, r);
    ExactMatrix inv = ExactMatrix::identity(ring, r);
    std::uniform_int_distribution<int> idx(0, r - 1), coef(-2, 2);
    for (int step = 0; step < 4 * r && r > 1; ++step) {
        const int i = idx(rng), j = idx(rng);
        const int a = coef(rng);
        if (i == j || a == 0)
            continue;
        ExactMatrix e = ExactMatrix::identity(ring, r), einv = ExactMatrix::identity(ring, r);
        e.set(i, j, Rational(a));
        einv.set(i, j, Rational(-a));
        m = e * m;
        inv = inv * einv;
    }
    return {m, inv};
}

// twist(s0 <- s1) = P(s0) P(s1)^{-1}: coherent by construction.
LocalSystem gauge_system(const OrbifoldComplex& c, const Ring& ring, int r, std::mt19937& rng)
{
    std::vector<std::pair<ExactMatrix, ExactMatrix>> p;
    for (int i = 0; i < c.size(); ++i)
        p.push_back(random_unimodular(ring, r, rng));
    LocalSystem sys(ring, r);
    for (const auto& e : enumerate_nondegenerate(c, 1))
        sys.set_twist(c, e, p[e.sigmas[0]].first * p[e.sigmas[1]].second);
    return sys;
}

ExactMatrix mat(const Ring& ring, std::vector<std::vector<long>> rows)
{
    return ExactMatrix::from_rows(ring, rows);
}

} // namespace

TEST_CASE("trivial systems act by the identity")
{
    const auto c = generate_teardrop(3).complex;
    const auto sys = trivial_system(Ring::Z(), 1);
    const auto edges = enumerate_nondegenerate(c, 1);
    CHECK(edges.size() == 48);
    for (const auto& e : edges)
        CHECK(sys.twist_of(c, e) == ExactMatrix::identity(Ring::Z(), 1));
    CHECK(sys.twist_of(c, loop_chain::edge(c, "c*a")) == ExactMatrix::identity(Ring::Z(), 1));
    CHECK(sys.twist_of(c, loop_chain::edge(c, "e1e")) == ExactMatrix::identity(Ring::Z(), 1));
    CHECK(validate_coherence(sys, c).ok());

    const auto z5 = trivial_system(Ring::Zmod(5), 2);
    CHECK(z5.twist_of(c, edges[7]) == ExactMatrix::identity(Ring::Zmod(5), 2));
    const auto zero = trivial_system(Ring::Z(), 0);
    CHECK(zero.twist_of(c, edges[0]).rows() == 0);
}

TEST_CASE("twists are stored and validated")
{
    const auto c = generate_teardrop(3).complex;
    LocalSystem sys(Ring::Z(), 2);
    const auto e = loop_chain::edge(c, "f1c");
    const auto m = mat(Ring::Z(), {{1, 2}, {0, 1}});
    sys.set_twist(c, e, m);
    CHECK(sys.twist_of(c, e) == m);
    CHECK_FALSE(sys.is_trivial());

    CHECK_THROWS_AS(sys.set_twist(c, e, mat(Ring::Z(), {{2, 0}, {0, 1}})), LocalSystemError);
    CHECK_THROWS_AS(sys.set_twist(c, e, mat(Ring::Z(), {{1}})), LocalSystemError);
    CHECK_THROWS_AS(sys.set_twist(c, e, mat(Ring::Q(), {{1, 0}, {0, 1}})), LocalSystemError);
    CHECK_THROWS_AS(sys.set_twist(c, loop_chain::edge(c, "a1a"), m), LocalSystemError);
    CHECK_THROWS_AS(sys.set_twist(c, OrbSimplex{{0}, {}}, m), LocalSystemError);
    CHECK_THROWS_AS(sys.twist_of(c, OrbSimplex{{0, 1}, {7}}), DimensionMismatchError);

    LocalSystem q(Ring::Q(), 1);
    q.set_twist(c, e, mat(Ring::Q(), {{2}}));
    LocalSystem z6(Ring::Zmod(6), 1);
    CHECK_THROWS_AS(z6.set_twist(c, e, mat(Ring::Zmod(6), {{2}})), LocalSystemError);
    z6.set_twist(c, e, mat(Ring::Zmod(6), {{5}}));
}

TEST_CASE("the loop around the cone point is forced to act trivially")
{
    const auto c = generate_teardrop(3).complex;
    std::mt19937 rng(7);
    for (const Ring& ring : {Ring::Z(), Ring::Zmod(5), Ring::Q()}) {
        for (int r : {1, 2, 3}) {
            const auto sys = gauge_system(c, ring, r, rng);
            REQUIRE(validate_coherence(sys, c).ok());
            const auto result = loop_chain::replay(c, sys);
            INFO(result.failure);
            CHECK(result.rewrites_ok);
            CHECK(result.values_agree);
            CHECK(result.ends_trivial);
            CHECK(sys.twist_of(c, loop_chain::edge(c, "a*a")) == ExactMatrix::identity(ring, r));
        }
    }
}

TEST_CASE("a nontrivial twist on the cone loop is incoherent")
{
    for (int n : {2, 3, 5}) {
        const auto c = generate_teardrop(n).complex;
        LocalSystem sys(Ring::Z(), 1);
        sys.set_twist(c, loop_chain::edge(c, "a*a"), mat(Ring::Z(), {{-1}}));
        const auto report = validate_coherence(sys, c);
        CHECK_FALSE(report.ok());
        CHECK(report.checked == static_cast<std::size_t>(SimplicialSet(c, 2).count(2)));
        // the first rewrite step already uses a 2-simplex that sees the violation
        bool found = false;
        for (const auto& v : report.violations)
            found = found || v.simplex == loop_chain::triangle(c, "a1c*a");
        CHECK(found);
        CHECK_FALSE(report.violations.front().describe(c).empty());
    }
}

TEST_CASE("an incompatible triple of twists is reported on trivial isotropy")
{
    const auto c = sphere_complex();
    LocalSystem sys(Ring::Z(), 2);
    // f0 <- f1 and f1 <- f2 twisted by non-commuting matrices, f0 <- f2 left alone
    sys.set_twist(c, OrbSimplex{{0, 1}, {0}}, mat(Ring::Z(), {{1, 1}, {0, 1}}));
    sys.set_twist(c, OrbSimplex{{1, 2}, {0}}, mat(Ring::Z(), {{1, 0}, {1, 1}}));
    const auto report = validate_coherence(sys, c);
    bool found = false;
    for (const auto& v : report.violations)
        found = found || v.simplex == OrbSimplex{{0, 1, 2}, {0, 0}};
    CHECK(found);
}

TEST_CASE("local system documents round-trip")
{
    const auto c = generate_teardrop(3).complex;
    std::mt19937 rng(11);
    const auto sys = gauge_system(c, Ring::Z(), 2, rng);
    const auto doc = local_system_to_json(sys, c);
    const auto back = load_local_system(doc, c);
    CHECK(back.twists() == sys.twists());
    CHECK(back.ring() == sys.ring());

    const auto q = load_local_system(nlohmann::json::parse(R"({"ring": "Q", "rank": 1,
        "twists": [{"edge": {"sigmas": ["f", "c"], "g": 0}, "matrix": [["2/3"]]}], "default": "identity"})"), c);
    CHECK(q.twist_of(c, loop_chain::edge(c, "f1c")).at(0, 0) == Rational(2, 3));

    CHECK_THROWS_AS(load_local_system(nlohmann::json::parse(R"({"rank": 1})"), c), ParseError);
    CHECK_THROWS_AS(load_local_system(nlohmann::json::parse(R"({"ring": "R", "rank": 1})"), c), ParseError);
    CHECK_THROWS_AS(load_local_system(nlohmann::json::parse(R"({"ring": "Z", "rank": 1,
        "twists": [{"edge": {"sigmas": ["f"], "g": 0}, "matrix": [[1]]}]})"), c), ParseError);
    CHECK_THROWS_AS(load_local_system(nlohmann::json::parse(R"({"ring": "Z", "rank": 1,
        "twists": [{"edge": {"sigmas": ["f", "q"], "g": 0}, "matrix": [[1]]}]})"), c), UnknownSimplexError);
    CHECK_THROWS_AS(load_local_system(nlohmann::json::parse(R"({"ring": "Z", "rank": 1,
        "twists": [{"edge": {"sigmas": ["f", "c"], "g": 0}, "matrix": [["1/2"]]}]})"), c), LocalSystemError);
    CHECK_THROWS_AS(load_local_system(nlohmann::json::parse(R"({"ring": "Z", "rank": 1,
        "twists": [{"edge": {"sigmas": ["f", "c"], "g": 0}, "matrix": [[3]]}]})"), c), LocalSystemError);
}
