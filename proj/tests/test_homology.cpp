#include "orbcoh/errors.hpp"
#include "orbcoh/homology.hpp"
#include "orbcoh/smith.hpp"

#include <catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace orbcoh;

namespace {

ModuleInvariants make(Ring ring, std::size_t free, std::vector<long> torsion = {})
{
    ModuleInvariants m;
    m.ring = ring;
    m.freeRank = free;
    for (long t : torsion)
        m.torsion.emplace_back(t);
    return m;
}

using Vec = std::vector<long>;

std::vector<Vec> all_vectors(std::size_t n, long m)
{
    std::vector<Vec> out{Vec(n, 0)};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec> next;
        for (const auto& v : out)
            for (long x = 0; x < m; ++x) {
                auto w = v;
                w[i] = x;
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

Vec apply(const ExactMatrix& a, const Vec& x, long m)
{
    Vec y(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        long acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += a.integer_at(i, j).get_si() * x[j];
        y[i] = ((acc % m) + m) % m;
    }
    return y;
}

// For a finite abelian group H, the sizes |H[d]| for all d | m determine H.
std::vector<std::size_t> brute_force_profile(const ExactMatrix& d_out, const ExactMatrix& d_in, long m)
{
    const std::size_t n = d_in.rows();
    std::set<Vec> image;
    for (const auto& x : all_vectors(d_in.cols(), m))
        image.insert(apply(d_in, x, m));
    std::vector<Vec> kernel;
    for (const auto& x : all_vectors(n, m)) {
        auto y = apply(d_out, x, m);
        if (std::all_of(y.begin(), y.end(), [](long v) { return v == 0; }))
            kernel.push_back(x);
    }
    std::vector<std::size_t> profile;
    for (long d = 1; d <= m; ++d) {
        if (m % d != 0)
            continue;
        std::size_t killed = 0;
        for (const auto& x : kernel) {
            Vec dx(n);
            for (std::size_t i = 0; i < n; ++i)
                dx[i] = (d * x[i]) % m;
            if (image.count(dx))
                ++killed;
        }
        profile.push_back(killed / image.size());
    }
    return profile;
}

std::vector<std::size_t> profile_of(const ModuleInvariants& h, long m)
{
    std::vector<long> cyclic;
    for (std::size_t i = 0; i < h.freeRank; ++i)
        cyclic.push_back(m);
    for (const auto& t : h.torsion)
        cyclic.push_back(t.get_si());
    std::vector<std::size_t> profile;
    for (long d = 1; d <= m; ++d) {
        if (m % d != 0)
            continue;
        std::size_t size = 1;
        for (long c : cyclic)
            size *= std::gcd(c, d);
        profile.push_back(size);
    }
    return profile;
}

} // namespace

TEST_CASE("cohomology_at of small complexes")
{
    const Ring Z = Ring::Z();
    CHECK(cohomology_at(ExactMatrix(Z, 0, 1), ExactMatrix(Z, 1, 0)) == make(Z, 1));
    CHECK(cohomology_at(ExactMatrix(Z, 1, 1), ExactMatrix(Z, 1, 1)) == make(Z, 1));
    CHECK(cohomology_at(ExactMatrix(Z, 0, 1), ExactMatrix::from_rows(Z, {{5}})) == make(Z, 0, {5}));
    CHECK(cohomology_at(ExactMatrix::from_rows(Z, {{1, 1}}), ExactMatrix(Z, 2, 0)) == make(Z, 1));
    CHECK(cohomology_at(ExactMatrix(Z, 0, 3), ExactMatrix::from_rows(Z, {{2, 0}, {0, 3}, {0, 0}})) ==
          make(Z, 1, {6}));
}

TEST_CASE("cohomology_at rejects non-complexes")
{
    const Ring Z = Ring::Z();
    auto d_out = ExactMatrix::from_rows(Z, {{1, 0}});
    auto d_in = ExactMatrix::from_rows(Z, {{1}, {0}});
    CHECK_THROWS_AS(cohomology_at(d_out, d_in), NotAComplexError);
    try {
        cohomology_at(d_out, d_in);
    } catch (const NotAComplexError& e) {
        CHECK(std::string(e.what()).find("(0, 0)") != std::string::npos);
    }
    CHECK_THROWS_AS(cohomology_at(ExactMatrix(Z, 1, 2), ExactMatrix(Z, 3, 1)), DimensionMismatchError);
}

TEST_CASE("cohomology_at over Z/m and Q")
{
    const Ring Z4 = Ring::Zmod(4);
    // Z/4 --2--> Z/4: kernel 2Z/4, no image
    CHECK(cohomology_at(ExactMatrix::from_rows(Z4, {{2}}), ExactMatrix(Z4, 1, 0)) == make(Z4, 0, {2}));
    // 0 --> Z/4 --2--> Z/4 --2--> Z/4 in the middle: ker 2 = im 2
    CHECK(cohomology_at(ExactMatrix::from_rows(Z4, {{2}}), ExactMatrix::from_rows(Z4, {{2}})).is_zero());
    const Ring Z2 = Ring::Zmod(2);
    CHECK(cohomology_at(ExactMatrix(Z2, 0, 1), ExactMatrix::from_rows(Z2, {{0}})) == make(Z2, 1));
    const Ring Q = Ring::Q();
    CHECK(cohomology_at(ExactMatrix(Q, 0, 1), ExactMatrix::from_rows(Q, {{3}})).is_zero());
    CHECK(cohomology_at(ExactMatrix::from_rows(Q, {{1, -1}}), ExactMatrix(Q, 2, 0)) == make(Q, 1));
}

TEST_CASE("cohomology_at over Z/m agrees with brute-force enumeration")
{
    std::mt19937 rng(7);
    for (long m : {2L, 4L, 6L, 8L, 9L}) {
        const Ring ring = Ring::Zmod(m);
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<std::size_t> dim(0, 3);
            std::uniform_int_distribution<long> entry(0, m - 1);
            const std::size_t n = 1 + dim(rng) % 3, p = dim(rng), q = dim(rng);
            // d_in = B * C and d_out = A with A * B = 0 built from a kernel basis
            ExactMatrix a(ring, q, n);
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    a.set(i, j, entry(rng));
            // pick d_in columns among kernel vectors of a by brute force
            std::vector<Vec> kernel;
            for (const auto& x : all_vectors(n, m)) {
                auto y = apply(a, x, m);
                if (std::all_of(y.begin(), y.end(), [](long v) { return v == 0; }))
                    kernel.push_back(x);
            }
            std::uniform_int_distribution<std::size_t> pick(0, kernel.size() - 1);
            ExactMatrix b(ring, n, p);
            for (std::size_t j = 0; j < p; ++j) {
                const auto& v = kernel[pick(rng)];
                for (std::size_t i = 0; i < n; ++i)
                    b.set(i, j, v[i]);
            }
            const auto h = cohomology_at(a, b);
            INFO("m=" << m << " A=" << a.to_string() << " B=" << b.to_string() << " H=" << h.render());
            CHECK(profile_of(h, m) == brute_force_profile(a, b, m));
        }
    }
}

TEST_CASE("cohomology_at is invariant under change of basis")
{
    const Ring Z = Ring::Z();
    // C^0 = Z, C^1 = Z^2, C^2 = Z
    auto d0 = ExactMatrix::from_rows(Z, {{2}, {4}});
    auto d1 = ExactMatrix::from_rows(Z, {{2, -1}});
    auto p = ExactMatrix::from_rows(Z, {{1, 1}, {1, 2}});      // det 1
    auto p_inv = ExactMatrix::from_rows(Z, {{2, -1}, {-1, 1}});
    REQUIRE(p * p_inv == ExactMatrix::identity(Z, 2));
    CHECK(cohomology_at(d1, d0) == cohomology_at(d1 * p_inv, p * d0));
    CHECK(cohomology_at(d1, d0) == make(Z, 0, {2}));
}

TEST_CASE("zero differentials give the full module")
{
    for (Ring ring : {Ring::Z(), Ring::Q(), Ring::Zmod(6)}) {
        auto h = cohomology_at(ExactMatrix(ring, 2, 3), ExactMatrix(ring, 3, 4));
        CHECK(h.freeRank == 3);
        CHECK(h.torsion.empty());
    }
}

TEST_CASE("module rendering")
{
    CHECK(make(Ring::Z(), 0).render() == "0");
    CHECK(make(Ring::Z(), 1).render() == "Z");
    CHECK(make(Ring::Z(), 2, {3}).render() == "Z^2 + Z/3");
    CHECK(make(Ring::Q(), 1).render() == "Q");
    CHECK(make(Ring::Zmod(2), 1).render() == "Z/2");
    CHECK(make(Ring::Zmod(4), 2, {2}).render() == "(Z/4)^2 + Z/2");
    auto chain = ModuleInvariants::from_cyclic_orders(Ring::Z(), 0, {Integer(2), Integer(3), Integer(4), Integer(1)});
    CHECK(chain == make(Ring::Z(), 0, {2, 12}));
}

TEST_CASE("cyclic orders regroup into free summands over Z/m")
{
    const Ring R = Ring::Zmod(12);
    const auto m = ModuleInvariants::from_cyclic_orders(R, 1, {Integer(4), Integer(3), Integer(2)});
    CHECK(m.freeRank == 2);
    CHECK(m.torsion == std::vector<Integer>{Integer(2)});
    CHECK(m.render() == "(Z/12)^2 + Z/2");
}
