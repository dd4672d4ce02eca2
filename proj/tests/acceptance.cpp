// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include "loop_chain.hpp"
#include "oracles.hpp"

#include "orbcoh/cochain.hpp"
#include "orbcoh/errors.hpp"
#include "orbcoh/fixtures.hpp"
#include "orbcoh/local_system.hpp"
#include "orbcoh/smith.hpp"
#include "orbcoh/teardrop.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace orbcoh;

namespace {

constexpr int kDegree = 4;

struct Outcome {
    bool ok = true;
    std::ostringstream note;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok)
            note << what;
        ok = ok && cond;
    }
};

ModuleInvariants module(const Ring& ring, std::size_t free, std::vector<long> orders = {})
{
    std::vector<Integer> o(orders.begin(), orders.end());
    return ModuleInvariants::from_cyclic_orders(ring, free, o);
}

std::string render(const std::vector<ModuleInvariants>& groups)
{
    std::string out;
    for (const auto& g : groups)
        out += (out.empty() ? "" : ", ") + g.render();
    return out;
}

// Integral teardrop runs shared by the first two criteria.
const std::map<int, CohomologyResult>& teardrop_runs()
{
    static const std::map<int, CohomologyResult> runs = [] {
        std::map<int, CohomologyResult> out;
        for (int n : {2, 3, 5})
            out[n] = cohomology(generate_teardrop(n).complex, trivial_system(Ring::Z(), 1), kDegree);
        return out;
    }();
    return runs;
}

void teardrop_low(Outcome& r)
{
    const Ring Z = Ring::Z();
    for (const auto& [n, res] : teardrop_runs()) {
        const auto& h = res.groups;
        r.require(h.size() == kDegree + 1 && h[0] == module(Z, 1) && h[1] == module(Z, 0) && h[2] == module(Z, 1),
                  "n=" + std::to_string(n) + " gave " + render(h));
        const auto& t = res.timings;
        r.note << (r.note.tellp() ? "; " : "") << "n=" << n << " in "
               << static_cast<int>(1000 * (t.enumerate + t.build + t.check + t.reduce)) << " ms";
    }
}

void teardrop_high(Outcome& r)
{
    const Ring Z = Ring::Z();
    for (const auto& [n, res] : teardrop_runs()) {
        const auto bar = group_cohomology(cyclic_group(n), Z, 1, kDegree).groups;
        const auto periodic = oracle::cyclic_cohomology(n, ExactMatrix::identity(Z, 1), kDegree);
        const std::string tag = "n=" + std::to_string(n) + ": ";
        for (int k : {3, 4}) {
            r.require(res.groups[k] == bar[k], tag + "H^" + std::to_string(k) + " differs from the bar complex");
            r.require(bar[k] == periodic[k], tag + "bar complex differs from the periodic resolution");
        }
        r.require(periodic[3] == module(Z, 0) && periodic[4] == module(Z, 0, {n}), tag + "periodic oracle is off");
    }
}

void mu_tables(Outcome& r)
{
    for (int n : {2, 3, 5}) {
        const auto c = generate_teardrop(n).complex;
        const SubsetMask ac = c.mask_of({"a", "c"});
        const int a = c.index_of("a"), cc = c.index_of("c");
        int special = 0;
        for (const auto& [k, f] : c.stored_mu()) {
            const int from_order = c.isotropy(k.tau).order();
            const int to_order = c.isotropy(k.rho).order();
            const std::string where = "n=" + std::to_string(n) + " " + c.describe(k);
            if (from_order == n) {
                for (int g = 0; g < n; ++g)
                    r.require(f.table[g] == g, where + " is not the identity");
            } else if (to_order == n && k.rho == ac && k.from != k.to) {
                ++special;
                r.require(f.table[0] == (k.from == cc && k.to == a ? 1 : n - 1), where + " has the wrong rotation");
            } else {
                r.require(f.table == std::vector<int>{0}, where + " is not trivial");
            }
        }
        r.require(special > 0, "n=" + std::to_string(n) + ": no table from {a,c} into the cone group");
        const auto report = validate_mu(c);
        r.require(report.ok() && report.checked > 0, "n=" + std::to_string(n) + " fails the multiplicative law");
    }
}

// twist(s0 <- s1) = P(s0) P(s1)^{-1} for random invertible P: coherent by construction.
LocalSystem gauge_system(const OrbifoldComplex& c, int r, std::mt19937& rng)
{
    std::vector<std::pair<ExactMatrix, ExactMatrix>> p;
    for (int i = 0; i < c.size(); ++i)
        p.push_back(oracle::unimodular(static_cast<std::size_t>(r), rng));
    LocalSystem sys(Ring::Z(), r);
    for (const auto& e : enumerate_nondegenerate(c, 1))
        sys.set_twist(c, e, p[e.sigmas[0]].first * p[e.sigmas[1]].second);
    return sys;
}

void loop_triviality(Outcome& r)
{
    const auto c = generate_teardrop(3).complex;
    std::mt19937 rng(3);
    std::vector<LocalSystem> systems{trivial_system(Ring::Z(), 1)};
    for (int rank : {1, 2, 3})
        systems.push_back(gauge_system(c, rank, rng));
    for (const auto& sys : systems) {
        const auto replay = loop_chain::replay(c, sys);
        r.require(replay.rewrites_ok && replay.values_agree && replay.ends_trivial, replay.failure);
        r.require(sys.twist_of(c, loop_chain::edge(c, "a*a")) == ExactMatrix::identity(Ring::Z(), sys.rank()),
                  "the loop twist is not the identity");
    }
    LocalSystem bad(Ring::Z(), 1);
    bad.set_twist(c, loop_chain::edge(c, "a*a"), ExactMatrix::from_rows(Ring::Z(), {{-1}}));
    r.require(!validate_coherence(bad, c).ok(), "a sign on the loop was accepted");
}

void classifying_space(Outcome& r)
{
    const Ring Z = Ring::Z();
    for (int n = 1; n <= 6; ++n) {
        const auto point = cohomology(single_simplex_complex(cyclic_group(n)), trivial_system(Z, 1), 5).groups;
        const auto bar = group_cohomology(cyclic_group(n), Z, 1, 5).groups;
        const auto periodic = oracle::cyclic_cohomology(n, ExactMatrix::identity(Z, 1), 5);
        r.require(point == bar, "C_" + std::to_string(n) + ": " + render(point) + " vs bar " + render(bar));
        r.require(bar == periodic, "C_" + std::to_string(n) + ": bar vs periodic " + render(periodic));
    }
}

void manifolds(Outcome& r)
{
    const Ring Z = Ring::Z();
    const auto circle = cohomology(circle_complex(), trivial_system(Z, 1), 1).groups;
    r.require(circle == std::vector<ModuleInvariants>{module(Z, 1), module(Z, 1)}, "circle gave " + render(circle));
    const auto sphere = cohomology(sphere_complex(), trivial_system(Z, 1), 2).groups;
    r.require(sphere == std::vector<ModuleInvariants>{module(Z, 1), module(Z, 0), module(Z, 1)},
              "sphere gave " + render(sphere));
}

bool identities_hold(const OrbifoldComplex& c, const OrbSimplex& x)
{
    const int k = x.degree();
    bool ok = true;
    for (int j = 0; j <= k; ++j) {
        const OrbSimplex sj = degeneracy(c, x, j);
        ok = ok && face(c, sj, j) == x && face(c, sj, j + 1) == x;
        for (int i = 0; i <= k + 1; ++i) {
            if (i < j)
                ok = ok && face(c, sj, i) == degeneracy(c, face(c, x, i), j - 1);
            else if (i > j + 1)
                ok = ok && face(c, sj, i) == degeneracy(c, face(c, x, i - 1), j);
        }
        for (int i = 0; i <= j; ++i)
            ok = ok && degeneracy(c, sj, i) == degeneracy(c, degeneracy(c, x, i), j + 1);
    }
    for (int j = 1; j <= k && k >= 2; ++j)
        for (int i = 0; i < j; ++i)
            ok = ok && face(c, face(c, x, j), i) == face(c, face(c, x, i), j - 1);
    return ok;
}

bool smith_holds(const ExactMatrix& a)
{
    const auto d = smith_normal_form(a);
    if (!(d.U * a * d.V == d.S) || !d.S.is_diagonal() || !is_invertible(d.U) || !is_invertible(d.V))
        return false;
    const std::size_t n = std::min(a.rows(), a.cols());
    for (std::size_t i = 0; i + 1 < n && !a.ring().is_rationals(); ++i) {
        const Integer x = d.S.integer_at(i, i), y = d.S.integer_at(i + 1, i + 1);
        if (x == 0 ? y != 0 : y % x != 0)
            return false;
    }
    return true;
}

void properties(Outcome& r)
{
    std::mt19937 rng(20261015);

    std::vector<OrbifoldComplex> complexes;
    for (int n : {2, 3, 5})
        complexes.push_back(generate_teardrop(n).complex);
    complexes.push_back(circle_complex());
    complexes.push_back(sphere_complex());
    complexes.push_back(single_simplex_complex(symmetric_group(3)));

    int samples = 0, failures = 0;
    for (const auto& c : complexes) {
        const SimplicialSet S(c, kDegree);
        for (int k = 0; k <= kDegree; ++k) {
            const auto& seqs = S.sequences(k);
            for (int t = 0; t < 500; ++t) {
                const auto& q = seqs[std::uniform_int_distribution<std::size_t>(0, seqs.size() - 1)(rng)];
                OrbSimplex x{q.sigmas, {}};
                for (int i = 0; i < k; ++i)
                    x.arrows.push_back(std::uniform_int_distribution<int>(0, q.order - 1)(rng));
                failures += !identities_hold(c, x);
                ++samples;
            }
        }
    }
    r.require(samples >= 10000 && failures == 0, std::to_string(failures) + " simplicial identity failures");

    // delta^2 = 0 on every complex, normalized and not, trivial and twisted
    int complexes_checked = 0;
    for (const auto& c : complexes)
        for (bool normalized : {true, false}) {
            const int degree = normalized ? kDegree : 2;
            const SimplicialSet S(c, degree + 1);
            for (int rank : {1, 2}) {
                const auto sys = rank == 1 ? trivial_system(Ring::Z(), 1) : gauge_system(c, rank, rng);
                try {
                    check_square_zero(build_sparse_cochains(S, sys, normalized), S);
                } catch (const Error& e) {
                    r.require(false, e.what());
                }
                ++complexes_checked;
            }
        }

    for (int n : {2, 3}) {
        const auto c = generate_teardrop(n).complex;
        CohomologyOptions full;
        full.normalized = false;
        const int degree = n == 2 ? 3 : 2;
        const auto normal = cohomology(c, trivial_system(Ring::Z(), 1), degree).groups;
        const auto unnormal = cohomology(c, trivial_system(Ring::Z(), 1), degree, full).groups;
        r.require(normal == unnormal, "normalized and unnormalized differ for n=" + std::to_string(n));
    }

    const std::vector<Ring> rings = {Ring::Z(), Ring::Zmod(2), Ring::Zmod(12), Ring::Zmod(30), Ring::Zmod(7), Ring::Q()};
    std::uniform_int_distribution<std::size_t> dim(0, 5);
    std::uniform_int_distribution<long> entry(-9, 9);
    std::bernoulli_distribution zero(0.3);
    int matrices = 0, smith_failures = 0;
    for (; matrices < 1200; ++matrices) {
        ExactMatrix a(rings[matrices % rings.size()], dim(rng), dim(rng));
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                a.set(i, j, zero(rng) ? 0L : entry(rng));
        smith_failures += !smith_holds(a);
    }
    r.require(smith_failures == 0, std::to_string(smith_failures) + " smith failures");
    r.note << samples << " simplices, " << complexes_checked << " complexes, " << matrices << " matrices";
}

void rational(Outcome& r)
{
    const Ring Q = Ring::Q();
    const std::vector<ModuleInvariants> want{module(Q, 1), module(Q, 0), module(Q, 1), module(Q, 0), module(Q, 0)};
    for (int n : {2, 3, 5}) {
        const auto h = cohomology(generate_teardrop(n).complex, trivial_system(Q, 1), kDegree).groups;
        r.require(h == want, "n=" + std::to_string(n) + " gave " + render(h));
    }
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"teardrop H^0..H^2 over Z for n = 2, 3, 5", teardrop_low},
        {"teardrop H^3, H^4 match the bar complex and the periodic resolution", teardrop_high},
        {"teardrop mu tables: rotations on {a,c}, identities and trivial maps elsewhere", mu_tables},
        {"the loop around the cone point acts trivially", loop_triviality},
        {"single simplex with C_n reproduces H^k(C_n; Z) for k <= 5", classifying_space},
        {"circle and 2-sphere give classical cohomology", manifolds},
        {"simplicial identities, delta^2 = 0, normalization, smith postconditions", properties},
        {"teardrop over Q gives Q, 0, Q, 0, 0", rational},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome r;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(r);
        } catch (const std::exception& e) {
            r.require(false, std::string("threw: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !r.ok;
        std::printf("%s %zu %s (%.2f s%s%s)\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                    r.note.tellp() ? ": " : "", r.note.str().c_str());
    }
    return failed ? 1 : 0;
}
