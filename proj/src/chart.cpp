#include "orbcoh/chart.hpp"

#include "json_util.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>
#include <set>

namespace orbcoh {

using nlohmann::json;

namespace {

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

bool contains(const std::vector<int>& set, int x)
{
    return std::find(set.begin(), set.end(), x) != set.end();
}

std::string vertex_list(const CombinatorialChart& c, const std::vector<int>& vs)
{
    std::string s = "{";
    for (std::size_t i = 0; i < vs.size(); ++i)
        s += (i ? "," : "") + c.vertices[vs[i]];
    return s + "}";
}

// Every nonempty face of every maximal simplex.
std::set<std::vector<int>> all_faces(const CombinatorialChart& c)
{
    std::set<std::vector<int>> faces;
    for (const auto& s : c.simplices) {
        const std::size_t k = s.size();
        for (std::uint32_t m = 1; m < (1u << k); ++m) {
            std::vector<int> f;
            for (std::size_t i = 0; i < k; ++i)
                if (m & (1u << i))
                    f.push_back(s[i]);
            faces.insert(f);
        }
    }
    return faces;
}

} // namespace

int CombinatorialChart::vertex(const std::string& name) const
{
    for (int i = 0; i < vertex_count(); ++i)
        if (vertices[i] == name)
            return i;
    throw ChartInconsistencyError("chart " + id + " has no vertex '" + name + "'");
}

bool CombinatorialChart::is_simplex(const std::vector<int>& vs) const
{
    if (vs.empty())
        return false;
    for (const auto& s : simplices)
        if (std::all_of(vs.begin(), vs.end(), [&](int x) { return contains(s, x); }))
            return true;
    return false;
}

std::vector<int> CombinatorialChart::stabilizer(int x) const
{
    std::vector<int> out;
    for (int g = 0; g < group.order(); ++g)
        if (act(g, x) == x)
            out.push_back(g);
    return out;
}

void CombinatorialChart::validate() const
{
    const int n = vertex_count();
    const std::string where = "chart " + id;
    if (static_cast<int>(baseLabel.size()) != n)
        throw ChartInconsistencyError(where + ": one base label per vertex is required");
    if (static_cast<int>(action.size()) != group.order())
        throw ChartInconsistencyError(where + ": action needs one row per group element");
    std::set<std::string> names(vertices.begin(), vertices.end());
    if (static_cast<int>(names.size()) != n)
        throw ChartInconsistencyError(where + ": duplicate vertex names");
    for (const auto& s : simplices) {
        if (s.empty() || s != sorted(s) || std::adjacent_find(s.begin(), s.end()) != s.end())
            throw ChartInconsistencyError(where + ": simplices must be nonempty sorted vertex sets");
        for (int x : s)
            if (x < 0 || x >= n)
                throw ChartInconsistencyError(where + ": simplex refers to an unknown vertex");
    }
    for (int g = 0; g < group.order(); ++g) {
        if (static_cast<int>(action[g].size()) != n)
            throw ChartInconsistencyError(where + ": action row " + std::to_string(g) +
                                          " has the wrong length");
        std::vector<char> hit(n);
        for (int x = 0; x < n; ++x) {
            const int y = action[g][x];
            if (y < 0 || y >= n || hit[y])
                throw ChartInconsistencyError(where + ": element " + std::to_string(g) +
                                              " does not permute the vertices");
            hit[y] = 1;
        }
    }
    for (int x = 0; x < n; ++x)
        if (act(0, x) != x)
            throw ChartInconsistencyError(where + ": the identity moves vertex " + vertices[x]);
    for (int g = 0; g < group.order(); ++g)
        for (int h = 0; h < group.order(); ++h)
            for (int x = 0; x < n; ++x)
                if (act(g, act(h, x)) != act(group.mul(g, h), x))
                    throw ChartInconsistencyError(where + ": not a group action at (" +
                                                  std::to_string(g) + ", " + std::to_string(h) +
                                                  ", " + vertices[x] + ")");
    for (int g = 0; g < group.order(); ++g) {
        for (int x = 0; x < n; ++x)
            if (baseLabel[act(g, x)] != baseLabel[x])
                throw ChartInconsistencyError(where + ": element " + std::to_string(g) +
                                              " changes the base label of " + vertices[x]);
        for (const auto& s : simplices) {
            std::vector<int> image;
            for (int x : s)
                image.push_back(act(g, x));
            if (!is_simplex(image))
                throw ChartInconsistencyError(where + ": element " + std::to_string(g) +
                                              " maps simplex " + vertex_list(*this, s) +
                                              " to a non-simplex");
        }
    }
    // faces with the same labels must lie in one orbit
    const auto faces = all_faces(*this);
    std::map<std::vector<std::string>, std::vector<int>> first_with_labels;
    for (const auto& f : faces) {
        std::vector<std::string> labels;
        for (int x : f)
            labels.push_back(baseLabel[x]);
        std::sort(labels.begin(), labels.end());
        auto [it, inserted] = first_with_labels.emplace(labels, f);
        if (inserted)
            continue;
        bool same_orbit = false;
        for (int g = 0; g < group.order() && !same_orbit; ++g) {
            std::vector<int> image;
            for (int x : it->second)
                image.push_back(act(g, x));
            same_orbit = sorted(image) == f;
        }
        if (!same_orbit)
            throw ChartInconsistencyError(where + ": simplices " + vertex_list(*this, it->second) +
                                          " and " + vertex_list(*this, f) +
                                          " lie over the same base simplex but in different orbits");
    }
}

CombinatorialChart trivial_chart(std::string id, std::vector<std::string> vertices,
                                 std::vector<std::vector<int>> simplices)
{
    CombinatorialChart c;
    c.id = std::move(id);
    c.baseLabel = vertices;
    c.vertices = std::move(vertices);
    c.simplices = std::move(simplices);
    std::vector<int> row(c.vertices.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        row[i] = static_cast<int>(i);
    c.action = {row};
    return c;
}

void ChartEmbedding::validate() const
{
    if (!source || !target)
        throw ChartInconsistencyError("embedding without source or target chart");
    const auto& s = *source;
    const auto& t = *target;
    const std::string where = "embedding " + s.id + " -> " + t.id;
    if (static_cast<int>(vertexMap.size()) != s.vertex_count() ||
        static_cast<int>(groupMap.size()) != s.group.order())
        throw ChartInconsistencyError(where + ": maps have the wrong size");
    std::set<int> image;
    for (int x = 0; x < s.vertex_count(); ++x) {
        const int y = vertexMap[x];
        if (y < 0 || y >= t.vertex_count())
            throw ChartInconsistencyError(where + ": vertex " + s.vertices[x] + " maps outside the target");
        if (!image.insert(y).second)
            throw ChartInconsistencyError(where + ": vertex map is not injective");
        if (s.baseLabel[x] != t.baseLabel[y])
            throw ChartInconsistencyError(where + ": vertex " + s.vertices[x] + " over " +
                                          s.baseLabel[x] + " maps to " + t.vertices[y] + " over " +
                                          t.baseLabel[y]);
    }
    for (const auto& simplex : s.simplices) {
        std::vector<int> img;
        for (int x : simplex)
            img.push_back(vertexMap[x]);
        if (!t.is_simplex(img))
            throw ChartInconsistencyError(where + ": simplex " + vertex_list(s, simplex) +
                                          " does not map to a simplex");
    }
    std::set<int> gimage;
    for (int g = 0; g < s.group.order(); ++g) {
        if (groupMap[g] < 0 || groupMap[g] >= t.group.order())
            throw ChartInconsistencyError(where + ": group map leaves the target group");
        if (!gimage.insert(groupMap[g]).second)
            throw ChartInconsistencyError(where + ": group map is not injective");
        for (int h = 0; h < s.group.order(); ++h)
            if (groupMap[s.group.mul(g, h)] != t.group.mul(groupMap[g], groupMap[h]))
                throw ChartInconsistencyError(where + ": group map is not a homomorphism at (" +
                                              std::to_string(g) + ", " + std::to_string(h) + ")");
        for (int x = 0; x < s.vertex_count(); ++x)
            if (vertexMap[s.act(g, x)] != t.act(groupMap[g], vertexMap[x]))
                throw ChartInconsistencyError(where + ": not equivariant at element " +
                                              std::to_string(g) + ", vertex " + s.vertices[x]);
    }
}

ChartEmbedding act_after(int h, const ChartEmbedding& e)
{
    ChartEmbedding out = e;
    const auto& t = *e.target;
    for (auto& y : out.vertexMap)
        y = t.act(h, y);
    for (auto& k : out.groupMap)
        k = t.group.mul(t.group.mul(h, k), t.group.inv(h));
    return out;
}

ChartEmbedding act_before(const ChartEmbedding& e, int g)
{
    ChartEmbedding out = e;
    const auto& s = *e.source;
    for (int x = 0; x < s.vertex_count(); ++x)
        out.vertexMap[x] = e.vertexMap[s.act(g, x)];
    for (int k = 0; k < s.group.order(); ++k)
        out.groupMap[k] = e.groupMap[s.group.mul(s.group.mul(g, k), s.group.inv(g))];
    return out;
}

ChartEmbedding compose(const ChartEmbedding& b, const ChartEmbedding& a)
{
    if (a.target != b.source)
        throw ChartInconsistencyError("cannot compose embeddings " + a.source->id + " -> " +
                                      a.target->id + " and " + b.source->id + " -> " + b.target->id);
    ChartEmbedding out;
    out.source = a.source;
    out.target = b.target;
    for (int y : a.vertexMap)
        out.vertexMap.push_back(b.vertexMap[y]);
    for (int k : a.groupMap)
        out.groupMap.push_back(b.groupMap[k]);
    return out;
}

ChartEmbedding identity_embedding(const ChartPtr& chart)
{
    ChartEmbedding e;
    e.source = e.target = chart;
    for (int x = 0; x < chart->vertex_count(); ++x)
        e.vertexMap.push_back(x);
    for (int g = 0; g < chart->group.order(); ++g)
        e.groupMap.push_back(g);
    return e;
}

int match_embeddings(const ChartEmbedding& lam, const ChartEmbedding& mu_emb)
{
    if (lam.source != mu_emb.source || lam.target != mu_emb.target)
        throw ChartInconsistencyError("embeddings to match must share source and target");
    const auto& t = *lam.target;
    int found = -1;
    for (int h = 0; h < t.group.order(); ++h) {
        bool ok = true;
        for (std::size_t x = 0; x < lam.vertexMap.size() && ok; ++x)
            ok = t.act(h, lam.vertexMap[x]) == mu_emb.vertexMap[x];
        if (!ok)
            continue;
        if (found >= 0)
            throw ChartInconsistencyError("embeddings into " + t.id +
                                          " differ by more than one group element (action not effective)");
        found = h;
    }
    if (found < 0)
        throw ChartInconsistencyError("embeddings " + lam.source->id + " -> " + t.id +
                                      " do not differ by a group element");
    return found;
}

void MuDerivationConfig::check() const
{
    auto need = [](bool ok, const std::string& what) {
        if (!ok)
            throw ChartInconsistencyError("derivation config: " + what);
    };
    need(gamma0.source == gamma1.source, "gamma0 and gamma1 must start at W");
    need(alpha.target == gamma0.source && beta.target == gamma0.source, "alpha and beta must end in W");
    need(lambda0.source == alpha.source && lambda1.source == alpha.source, "lambda_i must start at U_v");
    need(chi0.source == beta.source && chi1.source == beta.source, "chi_i must start at U_w");
    need(lambda0.target == gamma0.target && chi0.target == gamma0.target, "sigma_0 chart mismatch");
    need(lambda1.target == gamma1.target && chi1.target == gamma1.target, "sigma_1 chart mismatch");
    need(contains(theta, alpha.map_vertex(v_tilde)), "alpha(v~) is not on the lifted theta");
    need(contains(theta, beta.map_vertex(w_tilde)), "beta(w~) is not on the lifted theta");
    for (int x : theta) {
        need(contains(sigma0, gamma0.map_vertex(x)), "gamma0 does not map theta into sigma_0");
        need(contains(sigma1, gamma1.map_vertex(x)), "gamma1 does not map theta into sigma_1");
    }
    need(contains(sigma0, lambda0.map_vertex(v_tilde)), "lambda0(v~) is not in sigma_0");
    need(contains(sigma1, lambda1.map_vertex(v_tilde)), "lambda1(v~) is not in sigma_1");
    need(contains(sigma0, chi0.map_vertex(w_tilde)), "chi0(w~) is not in sigma_0");
    need(contains(sigma1, chi1.map_vertex(w_tilde)), "chi1(w~) is not in sigma_1");
}

namespace {

// The element g of the source group with e o g = h o e, given h.
int pull_back(const ChartEmbedding& e, int h, const char* what)
{
    for (int g = 0; g < e.source->group.order(); ++g)
        if (e.groupMap[g] == h)
            return g;
    throw DerivationError(std::string("no element realises ") + what);
}

} // namespace

MuFunction derive_mu_single(const MuDerivationConfig& cfg)
{
    cfg.check();
    const FiniteGroup& gv = cfg.alpha.source->group;
    const FiniteGroup& gw = cfg.beta.source->group;

    // gamma_i alpha = lambda_i g_i and gamma_i beta = chi_i h_i
    const int g0 = pull_back(cfg.lambda0, match_embeddings(cfg.lambda0, compose(cfg.gamma0, cfg.alpha)), "g0");
    const int g1 = pull_back(cfg.lambda1, match_embeddings(cfg.lambda1, compose(cfg.gamma1, cfg.alpha)), "g1");
    const int h0 = pull_back(cfg.chi0, match_embeddings(cfg.chi0, compose(cfg.gamma0, cfg.beta)), "h0");
    const int h1 = pull_back(cfg.chi1, match_embeddings(cfg.chi1, compose(cfg.gamma1, cfg.beta)), "h1");

    MuFunction out;
    out.table.resize(gv.order());
    for (int k = 0; k < gv.order(); ++k) {
        const int ell = cfg.alpha.map_group(gv.mul(gv.mul(gv.inv(g0), k), g1));
        int ell_prime = -1;
        for (int x = 0; x < gw.order(); ++x)
            if (cfg.beta.map_group(x) == ell) {
                if (ell_prime >= 0)
                    throw DerivationError("beta is not injective on groups");
                ell_prime = x;
            }
        if (ell_prime < 0)
            throw DerivationError("element " + std::to_string(ell) + " of the group of " +
                                  cfg.alpha.target->id +
                                  " is not in the image of beta: isotropy is not monotone along theta");
        out.table[k] = gw.mul(gw.mul(h0, ell_prime), gw.inv(h1));
    }
    return out;
}

MuFunction derive_mu_chain(const std::vector<MuDerivationConfig>& cfgs)
{
    if (cfgs.empty())
        throw ChainMismatchError("empty derivation chain");
    MuFunction result = derive_mu_single(cfgs.front());
    for (std::size_t i = 1; i < cfgs.size(); ++i) {
        const auto& prev = cfgs[i - 1];
        const auto& next = cfgs[i];
        if (prev.beta.source != next.alpha.source || prev.w_tilde != next.v_tilde)
            throw ChainMismatchError("step " + std::to_string(i - 1) + " ends in chart " +
                                     prev.beta.source->id + " but step " + std::to_string(i) +
                                     " starts in chart " + next.alpha.source->id);
        const MuFunction step = derive_mu_single(next);
        for (auto& x : result.table)
            x = step.table[x];
    }
    return result;
}

void EmbeddingCatalog::add(ChartEmbedding base)
{
    base.validate();
    for (const auto& b : bases_)
        if (b.source == base.source && b.target == base.target)
            throw ChartInconsistencyError("two base embeddings " + base.source->id + " -> " +
                                          base.target->id);
    bases_.push_back(std::move(base));
}

std::vector<ChartEmbedding> EmbeddingCatalog::between(const ChartPtr& source, const ChartPtr& target) const
{
    std::vector<ChartEmbedding> out;
    const ChartEmbedding* base = nullptr;
    ChartEmbedding id;
    if (source == target) {
        id = identity_embedding(source);
        base = &id;
    } else {
        for (const auto& b : bases_)
            if (b.source == source && b.target == target)
                base = &b;
    }
    if (!base)
        return out;
    for (int h = 0; h < target->group.order(); ++h)
        out.push_back(act_after(h, *base));
    return out;
}

MuDerivationConfig assemble_config(const EmbeddingCatalog& catalog,
                                   const std::vector<ChartPtr>& w_candidates,
                                   const LiftedSimplex& sigma0, const LiftedSimplex& sigma1,
                                   const VertexChart& v, const VertexChart& w,
                                   const std::vector<std::string>& theta_labels)
{
    auto first_into = [&](const ChartPtr& src, int point, const LiftedSimplex& s) {
        for (auto& e : catalog.between(src, s.chart))
            if (contains(s.vertices, e.map_vertex(point)))
                return e;
        throw DerivationError("no embedding of " + src->id + " sends its base point into the lifted simplex in " +
                              s.chart->id);
    };

    MuDerivationConfig cfg;
    cfg.v_tilde = v.lift;
    cfg.w_tilde = w.lift;
    cfg.sigma0 = sigma0.vertices;
    cfg.sigma1 = sigma1.vertices;
    cfg.lambda0 = first_into(v.chart, v.lift, sigma0);
    cfg.lambda1 = first_into(v.chart, v.lift, sigma1);
    cfg.chi0 = first_into(w.chart, w.lift, sigma0);
    cfg.chi1 = first_into(w.chart, w.lift, sigma1);

    const std::set<std::string> labels(theta_labels.begin(), theta_labels.end());
    for (const auto& W : w_candidates) {
        for (const auto& g0 : catalog.between(W, sigma0.chart)) {
            std::vector<int> theta;
            std::set<std::string> covered;
            for (int x = 0; x < W->vertex_count(); ++x)
                if (labels.count(W->baseLabel[x]) && contains(sigma0.vertices, g0.map_vertex(x))) {
                    theta.push_back(x);
                    covered.insert(W->baseLabel[x]);
                }
            if (covered != labels || theta.size() != labels.size() || !W->is_simplex(theta))
                continue;
            const ChartEmbedding* g1 = nullptr;
            const auto to1 = catalog.between(W, sigma1.chart);
            for (const auto& e : to1)
                if (std::all_of(theta.begin(), theta.end(),
                                [&](int x) { return contains(sigma1.vertices, e.map_vertex(x)); })) {
                    g1 = &e;
                    break;
                }
            if (!g1)
                continue;
            const ChartEmbedding* a = nullptr;
            const auto from_v = catalog.between(v.chart, W);
            for (const auto& e : from_v)
                if (contains(theta, e.map_vertex(v.lift))) {
                    a = &e;
                    break;
                }
            const ChartEmbedding* b = nullptr;
            const auto from_w = catalog.between(w.chart, W);
            for (const auto& e : from_w)
                if (contains(theta, e.map_vertex(w.lift))) {
                    b = &e;
                    break;
                }
            if (!a || !b)
                continue;
            cfg.gamma0 = g0;
            cfg.gamma1 = *g1;
            cfg.alpha = *a;
            cfg.beta = *b;
            cfg.theta = theta;
            cfg.check();
            return cfg;
        }
    }
    std::string lab;
    for (const auto& l : theta_labels)
        lab += l + " ";
    throw DerivationError("no chart W contains a lift of theta = { " + lab + "} compatible with both lifted simplices");
}

namespace {

json group_json(const FiniteGroup& g)
{
    // cyclic groups are written in shorthand
    const auto c = cyclic_group(g.order());
    if (c == g)
        return "cyclic:" + std::to_string(g.order());
    return {{"order", g.order()}, {"mul", g.table()}};
}

FiniteGroup group_from(const json& j, const std::string& where)
{
    if (j.is_string()) {
        auto g = parse_group_shorthand(j.get<std::string>());
        if (!g)
            throw ParseError(where + ": unknown group shorthand");
        return *g;
    }
    if (!j.is_object() || !j.contains("mul"))
        throw ParseError(where + ": group must be a shorthand string or an object with 'mul'");
    try {
        return group_from_table(j.at("mul").get<std::vector<std::vector<int>>>());
    } catch (const json::exception&) {
        throw ParseError(where + ": malformed group table");
    }
}

} // namespace

using detail::get_field;

json chart_document_to_json(const ChartDocument& doc)
{
    json charts = json::array();
    for (const auto& c : doc.charts) {
        json simplices = json::array();
        for (const auto& s : c->simplices) {
            json names = json::array();
            for (int x : s)
                names.push_back(c->vertices[x]);
            simplices.push_back(names);
        }
        json action = json::array();
        for (const auto& row : c->action) {
            json names = json::array();
            for (int x : row)
                names.push_back(c->vertices[x]);
            action.push_back(names);
        }
        charts.push_back({{"id", c->id},
                          {"group", group_json(c->group)},
                          {"vertices", c->vertices},
                          {"baseLabels", c->baseLabel},
                          {"simplices", simplices},
                          {"action", action}});
    }
    json embeddings = json::array();
    for (const auto& e : doc.embeddings) {
        json vmap = json::object();
        for (int x = 0; x < e.source->vertex_count(); ++x)
            vmap[e.source->vertices[x]] = e.target->vertices[e.vertexMap[x]];
        embeddings.push_back({{"source", e.source->id},
                              {"target", e.target->id},
                              {"vertexMap", vmap},
                              {"groupMap", e.groupMap}});
    }
    json liftings = json::array();
    for (const auto& [name, l] : doc.liftings) {
        json names = json::array();
        for (int x : l.vertices)
            names.push_back(l.chart->vertices[x]);
        liftings.push_back({{"simplex", name}, {"chart", l.chart->id}, {"vertices", names}});
    }
    return {{"charts", charts}, {"embeddings", embeddings}, {"liftings", liftings}};
}

ChartDocument load_chart_document(const json& j)
{
    if (!j.is_object() || !j.contains("charts"))
        throw ParseError("chart document must be an object with 'charts'");
    ChartDocument doc;
    std::map<std::string, ChartPtr> by_id;
    const json& charts = j.at("charts");
    if (!charts.is_array())
        throw ParseError("'charts' must be an array");
    for (std::size_t i = 0; i < charts.size(); ++i) {
        const std::string where = "charts[" + std::to_string(i) + "]";
        auto c = std::make_shared<CombinatorialChart>();
        c->id = get_field<std::string>(charts[i], "id", where);
        c->group = group_from(charts[i].contains("group") ? charts[i].at("group") : json("cyclic:1"), where);
        c->vertices = get_field<std::vector<std::string>>(charts[i], "vertices", where);
        c->baseLabel = charts[i].contains("baseLabels")
                           ? get_field<std::vector<std::string>>(charts[i], "baseLabels", where)
                           : c->vertices;
        for (const auto& s : get_field<std::vector<std::vector<std::string>>>(charts[i], "simplices", where)) {
            std::vector<int> vs;
            for (const auto& name : s)
                vs.push_back(c->vertex(name));
            c->simplices.push_back(sorted(vs));
        }
        if (charts[i].contains("action")) {
            for (const auto& row : get_field<std::vector<std::vector<std::string>>>(charts[i], "action", where)) {
                std::vector<int> r;
                for (const auto& name : row)
                    r.push_back(c->vertex(name));
                c->action.push_back(r);
            }
        } else {
            std::vector<int> row(c->vertices.size());
            for (std::size_t x = 0; x < row.size(); ++x)
                row[x] = static_cast<int>(x);
            c->action.assign(c->group.order(), row);
        }
        c->validate();
        if (!by_id.emplace(c->id, c).second)
            throw ChartInconsistencyError("duplicate chart id '" + c->id + "'");
        doc.charts.push_back(c);
    }
    auto chart = [&](const std::string& id) {
        auto it = by_id.find(id);
        if (it == by_id.end())
            throw ChartInconsistencyError("unknown chart '" + id + "'");
        return it->second;
    };
    const json& embeddings = j.contains("embeddings") ? j.at("embeddings") : json::array();
    for (std::size_t i = 0; i < embeddings.size(); ++i) {
        const std::string where = "embeddings[" + std::to_string(i) + "]";
        ChartEmbedding e;
        e.source = chart(get_field<std::string>(embeddings[i], "source", where));
        e.target = chart(get_field<std::string>(embeddings[i], "target", where));
        const auto vmap = get_field<std::map<std::string, std::string>>(embeddings[i], "vertexMap", where);
        e.vertexMap.assign(e.source->vertex_count(), -1);
        for (const auto& [from, to] : vmap)
            e.vertexMap[e.source->vertex(from)] = e.target->vertex(to);
        if (std::count(e.vertexMap.begin(), e.vertexMap.end(), -1))
            throw ChartInconsistencyError(where + ": vertex map is not total");
        e.groupMap = get_field<std::vector<int>>(embeddings[i], "groupMap", where);
        e.validate();
        doc.embeddings.push_back(std::move(e));
    }
    const json& liftings = j.contains("liftings") ? j.at("liftings") : json::array();
    for (std::size_t i = 0; i < liftings.size(); ++i) {
        const std::string where = "liftings[" + std::to_string(i) + "]";
        LiftedSimplex l;
        l.chart = chart(get_field<std::string>(liftings[i], "chart", where));
        for (const auto& name : get_field<std::vector<std::string>>(liftings[i], "vertices", where))
            l.vertices.push_back(l.chart->vertex(name));
        l.vertices = sorted(l.vertices);
        if (!doc.liftings.emplace(get_field<std::string>(liftings[i], "simplex", where), l).second)
            throw ChartInconsistencyError(where + ": duplicate lifting");
    }
    return doc;
}

} // namespace orbcoh
