#include "orbcoh/orbifold_complex.hpp"

#include "json_util.hpp"

#include "orbcoh/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <set>

namespace orbcoh {

using nlohmann::json;

bool MuKey::operator<(const MuKey& o) const
{
    const int pa = std::popcount(tau), pb = std::popcount(o.tau);
    if (pa != pb)
        return pa < pb;
    if (tau != o.tau)
        return tau < o.tau;
    const int qa = std::popcount(rho), qb = std::popcount(o.rho);
    if (qa != qb)
        return qa < qb;
    if (rho != o.rho)
        return rho < o.rho;
    if (from != o.from)
        return from < o.from;
    return to < o.to;
}

std::size_t MuKeyHash::operator()(const MuKey& k) const noexcept
{
    std::uint64_t h = k.tau * 0x9E3779B97F4A7C15ull;
    h ^= (k.rho + 0x632BE59BD9B4E019ull) * 0xC2B2AE3D27D4EB4Full;
    h ^= (static_cast<std::uint64_t>(k.from) << 32 | static_cast<std::uint32_t>(k.to)) *
         0x165667B19E3779F9ull;
    return static_cast<std::size_t>(h ^ (h >> 29));
}

OrbifoldComplex OrbifoldComplex::create(int dim, const std::vector<std::string>& top_simplices)
{
    if (dim < 0)
        throw ComplexFormatError("dimension must be nonnegative, got " + std::to_string(dim));
    if (top_simplices.empty())
        throw ComplexFormatError("complex has no top simplices");
    if (top_simplices.size() > static_cast<std::size_t>(kMaxTopSimplices))
        throw ComplexFormatError("at most " + std::to_string(kMaxTopSimplices) +
                                 " top simplices are supported, got " +
                                 std::to_string(top_simplices.size()));
    OrbifoldComplex c;
    c.dim_ = dim;
    c.names_ = top_simplices;
    for (int i = 0; i < c.size(); ++i) {
        if (c.names_[i].empty())
            throw ComplexFormatError("top simplex " + std::to_string(i) + " has an empty name");
        if (!c.index_.emplace(c.names_[i], i).second)
            throw ComplexFormatError("duplicate top simplex '" + c.names_[i] + "'");
    }
    return c;
}

int OrbifoldComplex::index_of(const std::string& name) const
{
    auto it = index_.find(name);
    if (it == index_.end())
        throw UnknownSimplexError("unknown top simplex '" + name + "'");
    return it->second;
}

SubsetMask OrbifoldComplex::mask_of(const std::vector<std::string>& names) const
{
    SubsetMask m = 0;
    for (const auto& n : names)
        m |= bit(index_of(n));
    return m;
}

std::vector<std::string> OrbifoldComplex::names_of(SubsetMask mask) const
{
    std::vector<std::string> out;
    for (int i = 0; i < size(); ++i)
        if (mask & bit(i))
            out.push_back(names_[i]);
    return out;
}

std::string OrbifoldComplex::describe(SubsetMask mask) const
{
    std::string s = "{";
    bool first = true;
    for (const auto& n : names_of(mask)) {
        s += (first ? "" : ",") + n;
        first = false;
    }
    return s + "}";
}

std::string OrbifoldComplex::describe(const MuKey& key) const
{
    return "(tau=" + describe(key.tau) + ", rho=" + describe(key.rho) + ", from=" +
           names_.at(key.from) + ", to=" + names_.at(key.to) + ")";
}

const IntersectionRecord* OrbifoldComplex::find_record(SubsetMask mask) const
{
    auto it = records_.find(mask);
    return it == records_.end() ? nullptr : &it->second;
}

const FiniteGroup& OrbifoldComplex::isotropy(SubsetMask mask) const
{
    const auto* r = find_record(mask);
    if (!r)
        throw NoSimplexError("the intersection of " + describe(mask) + " is empty");
    return group(r->group);
}

std::vector<IntersectionRecord> OrbifoldComplex::records() const
{
    std::vector<IntersectionRecord> out;
    out.reserve(records_.size());
    for (const auto& [m, r] : records_)
        out.push_back(r);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        const int pa = std::popcount(a.subset), pb = std::popcount(b.subset);
        return pa != pb ? pa < pb : a.subset < b.subset;
    });
    return out;
}

const MuFunction* OrbifoldComplex::find_mu(const MuKey& key) const
{
    auto it = mu_.find(key);
    if (it != mu_.end())
        return &it->second;
    const auto* t = find_record(key.tau);
    const auto* r = find_record(key.rho);
    if (!t || !r || (key.rho & ~key.tau) || !(key.rho & bit(key.from)) || !(key.rho & bit(key.to)))
        return nullptr;
    const FiniteGroup& gt = group(t->group);
    const FiniteGroup& gr = group(r->group);
    const bool identity = key.tau == key.rho && key.from == key.to;
    if (!identity && !(gt.is_trivial() && gr.is_trivial()))
        return nullptr;
    return &identities_[t->group];
}

const MuFunction& OrbifoldComplex::mu(const MuKey& key) const
{
    const auto* f = find_mu(key);
    if (!f)
        throw MissingMuError("no mu-table for key " + describe(key));
    return *f;
}

std::vector<std::pair<MuKey, MuFunction>> OrbifoldComplex::stored_mu() const
{
    std::vector<std::pair<MuKey, MuFunction>> out(mu_.begin(), mu_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

int OrbifoldComplex::add_group(const std::string& name, FiniteGroup g)
{
    if (group_id(name) >= 0)
        throw ComplexFormatError("duplicate group '" + name + "'");
    MuFunction identity;
    for (int i = 0; i < g.order(); ++i)
        identity.table.push_back(i);
    identities_.push_back(std::move(identity));
    groups_.push_back({name, std::move(g)});
    return static_cast<int>(groups_.size()) - 1;
}

int OrbifoldComplex::group_id(const std::string& name) const
{
    for (std::size_t i = 0; i < groups_.size(); ++i)
        if (groups_[i].name == name)
            return static_cast<int>(i);
    return -1;
}

void OrbifoldComplex::add_intersection(SubsetMask subset, int group, int dimension)
{
    if (subset == 0)
        throw ComplexFormatError("intersection record with an empty subset");
    if (subset & ~all())
        throw UnknownSimplexError("intersection subset refers to unknown top simplices");
    if (group < 0 || group >= static_cast<int>(groups_.size()))
        throw ComplexFormatError("intersection " + describe(subset) + " has an unknown group");
    if (records_.count(subset))
        throw ComplexFormatError("duplicate intersection record " + describe(subset));
    records_[subset] = {subset, dimension, group};
}

void OrbifoldComplex::check_key_shape(const MuKey& key) const
{
    if (key.from < 0 || key.from >= size() || key.to < 0 || key.to >= size())
        throw UnknownSimplexError("mu key refers to an unknown top simplex");
    const std::string k = describe(key);
    if (!find_record(key.tau))
        throw ComplexFormatError("mu key " + k + " references an absent intersection tau");
    if (!find_record(key.rho))
        throw ComplexFormatError("mu key " + k + " references an absent intersection rho");
    if (key.rho & ~key.tau)
        throw ComplexFormatError("mu key " + k + ": rho must be a subset of tau");
    if (!(key.rho & bit(key.from)) || !(key.rho & bit(key.to)))
        throw ComplexFormatError("mu key " + k + ": from and to must belong to rho");
}

void OrbifoldComplex::add_mu(const MuKey& key, MuFunction f)
{
    if (mu_.count(key))
        throw ComplexFormatError("duplicate mu-table for key " + describe(key));
    set_mu(key, std::move(f));
}

void OrbifoldComplex::set_mu(const MuKey& key, MuFunction f)
{
    check_key_shape(key);
    const FiniteGroup& gt = isotropy(key.tau);
    const FiniteGroup& gr = isotropy(key.rho);
    const std::string k = describe(key);
    if (static_cast<int>(f.table.size()) != gt.order())
        throw ComplexFormatError("mu-table for key " + k + " has " + std::to_string(f.table.size()) +
                                 " entries, expected " + std::to_string(gt.order()));
    std::vector<char> hit(gr.order());
    for (std::size_t i = 0; i < f.table.size(); ++i) {
        const int x = f.table[i];
        if (x < 0 || x >= gr.order())
            throw ComplexFormatError("mu-table for key " + k + " maps " + std::to_string(i) +
                                     " outside the target group");
        if (hit[x])
            throw ComplexFormatError("mu-table for key " + k + " is not injective: value " +
                                     std::to_string(x) + " is hit twice");
        hit[x] = 1;
    }
    mu_[key] = std::move(f);
}

void OrbifoldComplex::finish() const
{
    for (int i = 0; i < size(); ++i)
        if (!find_record(bit(i)))
            throw ComplexFormatError("missing intersection record for singleton {" + names_[i] + "}");
    for (const auto& [mask, rec] : records_) {
        // downward closure: every subset obtained by dropping one element
        for (SubsetMask rest = mask; rest; rest &= rest - 1) {
            const SubsetMask smaller = mask & ~(rest & -rest);
            if (smaller && !find_record(smaller))
                throw ComplexFormatError("intersection " + describe(mask) + " is recorded but " +
                                         describe(smaller) + " is not");
        }
    }
}

bool OrbifoldComplex::operator==(const OrbifoldComplex& other) const
{
    if (dim_ != other.dim_ || names_ != other.names_ || records_.size() != other.records_.size() ||
        mu_.size() != other.mu_.size())
        return false;
    for (const auto& [mask, rec] : records_) {
        const auto* o = other.find_record(mask);
        if (!o || !(group(rec.group) == other.group(o->group)))
            return false;
    }
    for (const auto& [key, f] : mu_) {
        auto it = other.mu_.find(key);
        if (it == other.mu_.end() || !(it->second == f))
            return false;
    }
    return true;
}

std::optional<FiniteGroup> parse_group_shorthand(const std::string& text)
{
    const std::string prefix = "cyclic:";
    if (text.rfind(prefix, 0) != 0)
        return std::nullopt;
    int n = 0;
    const char* first = text.data() + prefix.size();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec != std::errc() || ptr != last)
        throw ParseError("bad group shorthand '" + text + "'");
    return cyclic_group(n);
}

namespace {

using detail::get_field;

FiniteGroup group_from_json(const json& value, const std::string& name)
{
    if (value.is_string()) {
        auto g = parse_group_shorthand(value.get<std::string>());
        if (!g)
            throw ParseError("group '" + name + "': unknown shorthand '" + value.get<std::string>() + "'");
        return *g;
    }
    const std::string where = "group '" + name + "'";
    const int order = get_field<int>(value, "order", where);
    auto mul = get_field<std::vector<std::vector<int>>>(value, "mul", where);
    if (static_cast<int>(mul.size()) != order)
        throw GroupAxiomError(where + ": order " + std::to_string(order) + " but table has " +
                              std::to_string(mul.size()) + " rows");
    return group_from_table(mul);
}

} // namespace

OrbifoldComplex load_complex(const json& doc, std::optional<int> completeness_degree)
{
    if (!doc.is_object())
        throw ParseError("complex document must be a JSON object");
    const int dim = get_field<int>(doc, "dim", "complex");
    auto tops = get_field<std::vector<std::string>>(doc, "topSimplices", "complex");
    OrbifoldComplex c = OrbifoldComplex::create(dim, tops);

    if (doc.contains("groups")) {
        const json& groups = doc.at("groups");
        if (!groups.is_object())
            throw ParseError("'groups' must be an object");
        for (const auto& [name, value] : groups.items())
            c.add_group(name, group_from_json(value, name));
    }
    auto resolve_group = [&c](const std::string& name) {
        int id = c.group_id(name);
        if (id >= 0)
            return id;
        if (auto g = parse_group_shorthand(name))
            return c.add_group(name, *g);
        throw ComplexFormatError("unknown group '" + name + "'");
    };

    const json& inter = doc.contains("intersections") ? doc.at("intersections") : json::array();
    if (!inter.is_array())
        throw ParseError("'intersections' must be an array");
    for (std::size_t i = 0; i < inter.size(); ++i) {
        const std::string where = "intersections[" + std::to_string(i) + "]";
        auto subset = get_field<std::vector<std::string>>(inter[i], "subset", where);
        auto iso = get_field<std::string>(inter[i], "isotropy", where);
        int dimension = inter[i].contains("dimension") ? get_field<int>(inter[i], "dimension", where) : -1;
        if (subset.empty())
            throw ComplexFormatError(where + ": empty subset");
        if (std::set<std::string>(subset.begin(), subset.end()).size() != subset.size())
            throw ComplexFormatError(where + ": repeated top simplex in subset");
        c.add_intersection(c.mask_of(subset), resolve_group(iso), dimension);
    }
    c.finish();

    const json& mu = doc.contains("mu") ? doc.at("mu") : json::array();
    if (!mu.is_array())
        throw ParseError("'mu' must be an array");
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const std::string where = "mu[" + std::to_string(i) + "]";
        MuKey key;
        key.tau = c.mask_of(get_field<std::vector<std::string>>(mu[i], "tau", where));
        key.rho = c.mask_of(get_field<std::vector<std::string>>(mu[i], "rho", where));
        key.from = c.index_of(get_field<std::string>(mu[i], "from", where));
        key.to = c.index_of(get_field<std::string>(mu[i], "to", where));
        c.add_mu(key, {get_field<std::vector<int>>(mu[i], "table", where)});
    }

    if (completeness_degree)
        check_mu_completeness(c, *completeness_degree);
    return c;
}

json complex_to_json(const OrbifoldComplex& c)
{
    json doc;
    doc["dim"] = c.dim();
    doc["topSimplices"] = c.top_simplices();
    json groups = json::object();
    for (const auto& g : c.groups()) {
        if (parse_group_shorthand(g.name)) {
            groups[g.name] = g.name;
            continue;
        }
        groups[g.name] = {{"order", g.group.order()}, {"mul", g.group.table()}};
    }
    doc["groups"] = groups;
    json inter = json::array();
    for (const auto& r : c.records()) {
        json entry = {{"subset", c.names_of(r.subset)}, {"isotropy", c.groups()[r.group].name}};
        if (r.dimension >= 0)
            entry["dimension"] = r.dimension;
        inter.push_back(entry);
    }
    doc["intersections"] = inter;
    json mu = json::array();
    for (const auto& [key, f] : c.stored_mu())
        mu.push_back({{"tau", c.names_of(key.tau)},
                      {"rho", c.names_of(key.rho)},
                      {"from", c.name(key.from)},
                      {"to", c.name(key.to)},
                      {"table", f.table}});
    doc["mu"] = mu;
    return doc;
}

std::optional<IntersectionRecord> intersection_of(const OrbifoldComplex& complex,
                                                  const std::vector<std::string>& subset)
{
    if (subset.empty())
        throw ComplexFormatError("intersection_of needs a nonempty subset");
    const auto* r = complex.find_record(complex.mask_of(subset));
    if (!r)
        return std::nullopt;
    return *r;
}

GroupElement mu_apply(const OrbifoldComplex& complex, const MuKey& key, const GroupElement& g)
{
    const FiniteGroup& domain = complex.isotropy(key.tau);
    if (!g.group || !(*g.group == domain) || g.index < 0 || g.index >= domain.order())
        throw DimensionMismatchError("element is not in the domain group of " + complex.describe(key));
    return {&complex.isotropy(key.rho), complex.mu_apply(key, g.index)};
}

std::string MuViolation::describe(const OrbifoldComplex& c) const
{
    const std::string where = "tau=" + c.describe(tau) + " rho=" + c.describe(rho);
    switch (kind) {
    case Kind::Identity:
        return where + " from=to=" + c.name(sigma0) + ": table is not the identity at " +
               std::to_string(h1) + " (maps to " + std::to_string(actual) + ")";
    case Kind::NotInjective:
        return where + " from=" + c.name(sigma0) + " to=" + c.name(sigma1) +
               ": table is not injective";
    case Kind::Multiplicativity:
        break;
    }
    return where + " sigmas=(" + c.name(sigma0) + "," + c.name(sigma1) + "," + c.name(sigma2) +
           ") h1=" + std::to_string(h1) + " h2=" + std::to_string(h2) +
           ": mu(h1)*mu(h2)=" + std::to_string(actual) + " but mu(h1*h2)=" + std::to_string(expected);
}

MuReport validate_mu(const OrbifoldComplex& c)
{
    MuReport report;
    std::set<std::pair<SubsetMask, SubsetMask>> pairs;
    for (const auto& [key, f] : c.stored_mu())
        pairs.emplace(key.tau, key.rho);
    // order by the same convention as MuKey
    std::vector<std::pair<SubsetMask, SubsetMask>> ordered(pairs.begin(), pairs.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        return MuKey{a.first, a.second, 0, 0} < MuKey{b.first, b.second, 0, 0};
    });

    for (const auto& [tau, rho] : ordered) {
        const FiniteGroup& gt = c.isotropy(tau);
        const FiniteGroup& gr = c.isotropy(rho);
        std::vector<int> members;
        for (int i = 0; i < c.size(); ++i)
            if (rho & bit(i))
                members.push_back(i);
        auto table = [&](int a, int b) { return c.find_mu({tau, rho, a, b}); };

        for (int s : members) {
            if (tau != rho)
                break;
            const auto* f = table(s, s);
            if (!f)
                continue;
            for (int h = 0; h < gt.order(); ++h)
                if (f->table[h] != h) {
                    MuViolation v;
                    v.kind = MuViolation::Kind::Identity;
                    v.tau = tau;
                    v.rho = rho;
                    v.sigma0 = v.sigma1 = v.sigma2 = s;
                    v.h1 = h;
                    v.actual = f->table[h];
                    v.expected = h;
                    report.violations.push_back(v);
                }
        }
        for (int s0 : members)
            for (int s1 : members)
                for (int s2 : members) {
                    const auto* f01 = table(s0, s1);
                    const auto* f12 = table(s1, s2);
                    const auto* f02 = table(s0, s2);
                    if (!f01 || !f12 || !f02)
                        continue;
                    for (int h1 = 0; h1 < gt.order(); ++h1)
                        for (int h2 = 0; h2 < gt.order(); ++h2) {
                            ++report.checked;
                            const int lhs = gr.mul(f01->table[h1], f12->table[h2]);
                            const int rhs = f02->table[gt.mul(h1, h2)];
                            if (lhs != rhs) {
                                MuViolation v;
                                v.tau = tau;
                                v.rho = rho;
                                v.sigma0 = s0;
                                v.sigma1 = s1;
                                v.sigma2 = s2;
                                v.h1 = h1;
                                v.h2 = h2;
                                v.expected = rhs;
                                v.actual = lhs;
                                report.violations.push_back(v);
                            }
                        }
                }
    }
    return report;
}

std::vector<MuKey> reachable_mu_keys(const OrbifoldComplex& c, int max_degree)
{
    // A key (T, T', a, b) is used by a face map iff T' is T or T minus one
    // element and some sequence over exactly T' of length <= max_degree has
    // a and b adjacent. The shortest such sequence has |T'| entries when
    // a != b and |T'| + 1 when a == b.
    std::vector<MuKey> keys;
    for (const auto& rec : c.records()) {
        const SubsetMask t = rec.subset;
        std::vector<SubsetMask> rhos{t};
        for (SubsetMask rest = t; rest; rest &= rest - 1) {
            const SubsetMask smaller = t & ~(rest & -rest);
            if (smaller)
                rhos.push_back(smaller);
        }
        for (SubsetMask rho : rhos) {
            const int size = std::popcount(rho);
            for (int a = 0; a < c.size(); ++a) {
                if (!(rho & bit(a)))
                    continue;
                for (int b = 0; b < c.size(); ++b) {
                    if (!(rho & bit(b)))
                        continue;
                    const int shortest = a == b ? size + 1 : size;
                    if (shortest <= max_degree)
                        keys.push_back({t, rho, a, b});
                }
            }
        }
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

void check_mu_completeness(const OrbifoldComplex& c, int max_degree)
{
    for (const auto& key : reachable_mu_keys(c, max_degree))
        if (!c.find_mu(key))
            throw MissingMuError("no mu-table for key " + c.describe(key) +
                                 ", which face maps up to degree " + std::to_string(max_degree) +
                                 " need");
}

} // namespace orbcoh
