#include "orbcoh/teardrop.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>

namespace orbcoh {

namespace {

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

// Rotation action of C_n on a disk whose vertex 0 is the centre and whose
// remaining vertices come in `rings` groups of n, vertex 1 + r*n + k being
// the k-th copy in ring r.
std::vector<std::vector<int>> rotation_action(int n, int rings)
{
    std::vector<std::vector<int>> action(n, std::vector<int>(1 + rings * n));
    for (int g = 0; g < n; ++g) {
        action[g][0] = 0;
        for (int r = 0; r < rings; ++r)
            for (int k = 0; k < n; ++k)
                action[g][1 + r * n + k] = 1 + r * n + (k + g) % n;
    }
    return action;
}

ChartPtr point_chart(const std::string& x)
{
    auto c = std::make_shared<CombinatorialChart>(trivial_chart(x, {x}, {{0}}));
    c->validate();
    return c;
}

ChartPtr edge_chart(const std::string& x, const std::string& y)
{
    auto c = std::make_shared<CombinatorialChart>(trivial_chart(x + y, {x, y}, {{0, 1}}));
    c->validate();
    return c;
}

// Base embedding of a trivial-group chart, sending each vertex to the named
// target vertex.
ChartEmbedding base_embedding(const ChartPtr& source, const ChartPtr& target,
                              const std::vector<std::string>& images)
{
    ChartEmbedding e;
    e.source = source;
    e.target = target;
    for (const auto& name : images)
        e.vertexMap.push_back(target->vertex(name));
    e.groupMap = {0};
    return e;
}

std::string lift(const std::string& x, int k, int n)
{
    return x + std::to_string(((k % n) + n) % n);
}

} // namespace

TriangulatedAtlas teardrop_atlas(int n)
{
    if (n < 2)
        throw InvalidOrderError("the teardrop needs a cone point of order at least 2, got " +
                                std::to_string(n));
    TriangulatedAtlas atlas;
    atlas.dim = 2;
    atlas.base_vertices = {"w", "t", "u", "v", "z"};
    atlas.top_simplices = {"a", "b", "c", "d", "e", "f"};
    atlas.top_vertices = {{"a", {"w", "t", "v"}}, {"b", {"w", "t", "u"}}, {"c", {"w", "u", "v"}},
                          {"d", {"z", "t", "v"}}, {"e", {"z", "t", "u"}}, {"f", {"z", "u", "v"}}};

    // upper disk: w, then rings t_k, u_k, v_k
    auto upper = std::make_shared<CombinatorialChart>();
    upper->id = "U";
    upper->group = cyclic_group(n);
    upper->vertices = {"w"};
    upper->baseLabel = {"w"};
    for (const char* x : {"t", "u", "v"})
        for (int k = 0; k < n; ++k) {
            upper->vertices.push_back(lift(x, k, n));
            upper->baseLabel.push_back(x);
        }
    auto T = [n](int k) { return 1 + ((k % n) + n) % n; };
    auto U = [n](int k) { return 1 + n + ((k % n) + n) % n; };
    auto V = [n](int k) { return 1 + 2 * n + ((k % n) + n) % n; };
    for (int k = 0; k < n; ++k) {
        upper->simplices.push_back(sorted({0, T(k), U(k)}));     // b_k
        upper->simplices.push_back(sorted({0, U(k), V(k)}));     // c_k
        upper->simplices.push_back(sorted({0, V(k), T(k + 1)})); // a_k
    }
    upper->action = rotation_action(n, 3);
    upper->validate();

    auto lower = std::make_shared<CombinatorialChart>(
        trivial_chart("L", {"z", "t", "u", "v"}, {{0, 1, 3}, {0, 1, 2}, {0, 2, 3}}));
    lower->validate();

    std::map<std::string, ChartPtr> points{{"t", point_chart("t")}, {"u", point_chart("u")},
                                           {"v", point_chart("v")}};
    auto tu = edge_chart("t", "u");
    auto uv = edge_chart("u", "v");
    auto tv = edge_chart("t", "v");
    atlas.charts = {upper, lower, points["t"], points["u"], points["v"], tu, uv, tv};

    for (const auto& [x, c] : points) {
        atlas.catalog.add(base_embedding(c, upper, {lift(x, 0, n)}));
        atlas.catalog.add(base_embedding(c, lower, {x}));
    }
    atlas.catalog.add(base_embedding(tu, upper, {lift("t", 0, n), lift("u", 0, n)}));
    atlas.catalog.add(base_embedding(uv, upper, {lift("u", 0, n), lift("v", 0, n)}));
    atlas.catalog.add(base_embedding(tv, upper, {lift("t", 1, n), lift("v", 0, n)}));
    atlas.catalog.add(base_embedding(tu, lower, {"t", "u"}));
    atlas.catalog.add(base_embedding(uv, lower, {"u", "v"}));
    atlas.catalog.add(base_embedding(tv, lower, {"t", "v"}));
    for (const auto& edge : {tu, uv, tv})
        for (const auto& x : edge->vertices)
            atlas.catalog.add(base_embedding(points[x], edge, {x}));

    atlas.vertex_charts = {{"w", {upper, 0}},
                           {"z", {lower, lower->vertex("z")}},
                           {"t", {points["t"], 0}},
                           {"u", {points["u"], 0}},
                           {"v", {points["v"], 0}}};

    // chosen liftings: a_0, b_1, c_1 in the upper disk
    atlas.liftings["a"] = {upper, sorted({0, V(0), T(1)})};
    atlas.liftings["b"] = {upper, sorted({0, T(1), U(1)})};
    atlas.liftings["c"] = {upper, sorted({0, U(1), V(1)})};
    atlas.liftings["d"] = {lower, sorted({0, 1, 3})};
    atlas.liftings["e"] = {lower, sorted({0, 1, 2})};
    atlas.liftings["f"] = {lower, sorted({0, 2, 3})};
    return atlas;
}

Teardrop generate_teardrop(int n)
{
    Teardrop t{teardrop_atlas(n), {}};
    t.complex = build_complex(t.atlas);
    return t;
}

ChainDemo teardrop_chain_demo(int n, const std::string& from, const std::string& to)
{
    const auto atlas = teardrop_atlas(n);
    const auto complex = build_complex(atlas);
    ChainDemo demo;
    const MuKey key{complex.mask_of({"a", "c", "f"}), complex.mask_of({"a", "c"}),
                    complex.index_of(from), complex.index_of(to)};
    demo.single = derive_mu_single(config_for(atlas, complex, key));

    // Upper disk with a midpoint m_k on every edge w v_k; the triangles
    // c_k and a_k are split along w m_k.
    auto fine = std::make_shared<CombinatorialChart>();
    fine->id = "U'";
    fine->group = cyclic_group(n);
    fine->vertices = {"w"};
    fine->baseLabel = {"w"};
    for (const char* x : {"t", "u", "v", "m"})
        for (int k = 0; k < n; ++k) {
            fine->vertices.push_back(lift(x, k, n));
            fine->baseLabel.push_back(x);
        }
    auto T = [n](int k) { return 1 + ((k % n) + n) % n; };
    auto U = [n](int k) { return 1 + n + ((k % n) + n) % n; };
    auto V = [n](int k) { return 1 + 2 * n + ((k % n) + n) % n; };
    auto M = [n](int k) { return 1 + 3 * n + ((k % n) + n) % n; };
    for (int k = 0; k < n; ++k) {
        fine->simplices.push_back(sorted({0, T(k), U(k)}));
        fine->simplices.push_back(sorted({0, U(k), M(k)}));
        fine->simplices.push_back(sorted({U(k), V(k), M(k)}));
        fine->simplices.push_back(sorted({0, M(k), T(k + 1)}));
        fine->simplices.push_back(sorted({M(k), V(k), T(k + 1)}));
    }
    fine->action = rotation_action(n, 4);
    fine->validate();

    auto pv = point_chart("v");
    auto pm = point_chart("m");
    auto vm = edge_chart("v", "m");
    EmbeddingCatalog catalog;
    catalog.add(base_embedding(pv, fine, {lift("v", 0, n)}));
    catalog.add(base_embedding(pm, fine, {lift("m", 0, n)}));
    catalog.add(base_embedding(vm, fine, {lift("v", 0, n), lift("m", 0, n)}));
    catalog.add(base_embedding(pv, vm, {"v"}));
    catalog.add(base_embedding(pm, vm, {"m"}));

    // lifted top simplices as regions of the subdivided disk
    std::map<std::string, LiftedSimplex> region{
        {"a", {fine, sorted({0, V(0), T(1), M(0)})}},
        {"c", {fine, sorted({0, U(1), V(1), M(1)})}},
    };
    const LiftedSimplex& s0 = region.at(from);
    const LiftedSimplex& s1 = region.at(to);
    const VertexChart cv{pv, 0}, cm{pm, 0}, cw{fine, 0};
    demo.steps.push_back(assemble_config(catalog, {vm}, s0, s1, cv, cm, {"v", "m"}));
    demo.steps.push_back(assemble_config(catalog, {fine}, s0, s1, cm, cw, {"m", "w"}));
    demo.chain = derive_mu_chain(demo.steps);
    return demo;
}

} // namespace orbcoh
