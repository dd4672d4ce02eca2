#include "orbcoh/atlas.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>
#include <functional>

namespace orbcoh {

int TriangulatedAtlas::isotropy_order(const std::string& vertex) const
{
    auto it = vertex_charts.find(vertex);
    if (it == vertex_charts.end())
        throw ChartInconsistencyError("no chart for base vertex '" + vertex + "'");
    return static_cast<int>(it->second.chart->stabilizer(it->second.lift).size());
}

std::vector<std::string> TriangulatedAtlas::common_vertices(const std::vector<std::string>& tops) const
{
    std::vector<std::string> out;
    for (const auto& x : base_vertices) {
        bool everywhere = true;
        for (const auto& t : tops) {
            const auto& vs = top_vertices.at(t);
            if (std::find(vs.begin(), vs.end(), x) == vs.end())
                everywhere = false;
        }
        if (everywhere)
            out.push_back(x);
    }
    return out;
}

std::string TriangulatedAtlas::max_vertex(const std::vector<std::string>& face) const
{
    if (face.empty())
        throw NoSimplexError("empty face has no vertex");
    std::string best = face.front();
    for (const auto& x : face)
        if (isotropy_order(x) > isotropy_order(best))
            best = x;
    return best;
}

ChartDocument TriangulatedAtlas::document() const
{
    ChartDocument doc;
    doc.charts = charts;
    for (const auto& [name, vc] : vertex_charts)
        if (std::find(doc.charts.begin(), doc.charts.end(), vc.chart) == doc.charts.end())
            doc.charts.push_back(vc.chart);
    doc.embeddings = catalog.bases();
    doc.liftings = liftings;
    return doc;
}

namespace {

std::string group_name(const FiniteGroup& g, const std::string& vertex)
{
    if (g == cyclic_group(g.order()))
        return "cyclic:" + std::to_string(g.order());
    return "G_" + vertex;
}

} // namespace

MuDerivationConfig config_for(const TriangulatedAtlas& atlas, const OrbifoldComplex& complex,
                              const MuKey& key)
{
    const auto tau = atlas.common_vertices(complex.names_of(key.tau));
    const auto rho = atlas.common_vertices(complex.names_of(key.rho));
    if (tau.empty() || rho.empty())
        throw NoSimplexError("mu key " + complex.describe(key) + " has an empty intersection");
    const std::string v = atlas.max_vertex(tau);
    const std::string w = atlas.max_vertex(rho);
    std::vector<std::string> theta{v};
    if (w != v)
        theta.push_back(w);
    return assemble_config(atlas.catalog, atlas.charts, atlas.liftings.at(complex.name(key.from)),
                           atlas.liftings.at(complex.name(key.to)), atlas.vertex_charts.at(v),
                           atlas.vertex_charts.at(w), theta);
}

OrbifoldComplex build_complex(const TriangulatedAtlas& atlas)
{
    OrbifoldComplex c = OrbifoldComplex::create(atlas.dim, atlas.top_simplices);
    const int m = c.size();

    // depth-first over subsets with a common vertex
    std::vector<SubsetMask> subsets;
    std::function<void(SubsetMask, int)> grow = [&](SubsetMask mask, int next) {
        for (int i = next; i < m; ++i) {
            const SubsetMask bigger = mask | bit(i);
            if (atlas.common_vertices(c.names_of(bigger)).empty())
                continue;
            subsets.push_back(bigger);
            grow(bigger, i + 1);
        }
    };
    grow(0, 0);

    for (SubsetMask s : subsets) {
        const auto face = atlas.common_vertices(c.names_of(s));
        const std::string v = atlas.max_vertex(face);
        const FiniteGroup& g = atlas.vertex_charts.at(v).chart->group;
        const std::string name = group_name(g, v);
        int id = c.group_id(name);
        if (id < 0)
            id = c.add_group(name, g);
        c.add_intersection(s, id, static_cast<int>(face.size()) - 1);
    }
    c.finish();

    for (SubsetMask t : subsets) {
        std::vector<SubsetMask> rhos{t};
        for (int i = 0; i < m; ++i)
            if ((t & bit(i)) && (t & ~bit(i)))
                rhos.push_back(t & ~bit(i));
        for (SubsetMask r : rhos)
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b) {
                    if (!(r & bit(a)) || !(r & bit(b)))
                        continue;
                    const MuKey key{t, r, a, b};
                    c.add_mu(key, derive_mu_single(config_for(atlas, c, key)));
                }
    }
    return c;
}

} // namespace orbcoh
