#include "orbcoh/local_system.hpp"

#include "json_util.hpp"

#include "orbcoh/errors.hpp"

namespace orbcoh {

using detail::get_field;

LocalSystem::LocalSystem(Ring ring, int rank) : ring_(ring), rank_(rank)
{
    if (rank < 0)
        throw LocalSystemError("module rank must be non-negative, got " + std::to_string(rank));
}

void LocalSystem::set_twist(const OrbifoldComplex& complex, const OrbSimplex& e, const ExactMatrix& m)
{
    if (e.degree() != 1)
        throw LocalSystemError("twists are attached to 1-simplices, got degree " +
                               std::to_string(e.degree()));
    check_simplex(complex, e);
    const std::string where = "twist of " + to_string(complex, e);
    if (!(m.ring() == ring_))
        throw LocalSystemError(where + " is over " + m.ring().name() + ", expected " + ring_.name());
    if (m.rows() != static_cast<std::size_t>(rank_) || m.cols() != static_cast<std::size_t>(rank_))
        throw LocalSystemError(where + " is " + std::to_string(m.rows()) + "x" +
                               std::to_string(m.cols()) + ", expected " + std::to_string(rank_) +
                               "x" + std::to_string(rank_));
    const bool identity = m == ExactMatrix::identity(ring_, rank_);
    if (is_degenerate(e)) {
        if (!identity)
            throw LocalSystemError(where + ": degenerate edges act as the identity");
        return;
    }
    if (rank_ > 0 && !is_invertible(m))
        throw LocalSystemError(where + " is not invertible over " + ring_.name());
    if (identity)
        twists_.erase(e);
    else
        twists_[e] = m;
}

const ExactMatrix* LocalSystem::find_twist(const OrbSimplex& e) const
{
    auto it = twists_.find(e);
    return it == twists_.end() ? nullptr : &it->second;
}

ExactMatrix LocalSystem::twist_of(const OrbifoldComplex& complex, const OrbSimplex& e) const
{
    if (e.degree() != 1)
        throw LocalSystemError("twists are attached to 1-simplices, got degree " +
                               std::to_string(e.degree()));
    check_simplex(complex, e);
    if (const auto* m = find_twist(e))
        return *m;
    return ExactMatrix::identity(ring_, rank_);
}

LocalSystem trivial_system(const Ring& ring, int rank)
{
    return LocalSystem(ring, rank);
}

std::string CoherenceViolation::describe(const OrbifoldComplex& complex) const
{
    return "2-simplex " + to_string(complex, simplex) + ": twist(d1) = " + expected.to_string() +
           " but twist(d2) * twist(d0) = " + actual.to_string();
}

CoherenceReport validate_coherence(const LocalSystem& system, const OrbifoldComplex& complex)
{
    CoherenceReport report;
    if (system.is_trivial() || system.rank() == 0)
        return report;
    const SimplicialSet S(complex, 2);
    for (const auto& x : S.enumerate_nondegenerate(2)) {
        ++report.checked;
        const OrbSimplex e0 = face(complex, x, 0);
        const OrbSimplex e1 = face(complex, x, 1);
        const OrbSimplex e2 = face(complex, x, 2);
        const ExactMatrix* t0 = system.find_twist(e0);
        const ExactMatrix* t1 = system.find_twist(e1);
        const ExactMatrix* t2 = system.find_twist(e2);
        if (!t0 && !t1 && !t2)
            continue;
        const ExactMatrix id = ExactMatrix::identity(system.ring(), system.rank());
        const ExactMatrix expected = t1 ? *t1 : id;
        const ExactMatrix actual = (t2 ? *t2 : id) * (t0 ? *t0 : id);
        if (!(expected == actual))
            report.violations.push_back({x, expected, actual});
    }
    return report;
}

namespace {

Rational parse_entry(const nlohmann::json& v, const std::string& where)
{
    if (v.is_number_integer())
        return Rational(Integer(std::to_string(v.get<long long>())));
    if (v.is_string()) {
        try {
            Rational q(v.get<std::string>());
            q.canonicalize();
            return q;
        } catch (const std::invalid_argument&) {
        }
    }
    throw ParseError(where + ": matrix entries must be integers or rational strings");
}

} // namespace

LocalSystem load_local_system(const nlohmann::json& doc, const OrbifoldComplex& complex)
{
    if (!doc.is_object())
        throw ParseError("local system document must be a JSON object");
    Ring ring = Ring::Z();
    try {
        ring = Ring::parse(get_field<std::string>(doc, "ring", "local system"));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(std::string("local system: ") + e.what());
    }
    const int rank = get_field<int>(doc, "rank", "local system");
    if (doc.contains("default") && doc.at("default") != "identity")
        throw ParseError("local system: only \"identity\" is supported as the default twist");
    LocalSystem system(ring, rank);

    const nlohmann::json twists = doc.contains("twists") ? doc.at("twists") : nlohmann::json::array();
    if (!twists.is_array())
        throw ParseError("local system: 'twists' must be an array");
    for (std::size_t i = 0; i < twists.size(); ++i) {
        const std::string where = "twists[" + std::to_string(i) + "]";
        const auto& edge = twists[i].is_object() && twists[i].contains("edge") ? twists[i].at("edge")
                                                                                 : nlohmann::json();
        if (!edge.is_object())
            throw ParseError(where + ": missing field 'edge'");
        const auto names = get_field<std::vector<std::string>>(edge, "sigmas", where + ".edge");
        if (names.size() != 2)
            throw ParseError(where + ".edge: 'sigmas' must name two top simplices");
        OrbSimplex e{{complex.index_of(names[0]), complex.index_of(names[1])},
                     {get_field<int>(edge, "g", where + ".edge")}};
        if (!twists[i].contains("matrix") || !twists[i].at("matrix").is_array())
            throw ParseError(where + ": missing field 'matrix'");
        const auto& rows = twists[i].at("matrix");
        ExactMatrix m(ring, rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (!rows[r].is_array() || rows[r].size() != m.cols())
                throw ParseError(where + ": matrix rows must be arrays of equal length");
            for (std::size_t c = 0; c < m.cols(); ++c) {
                try {
                    m.set(r, c, parse_entry(rows[r][c], where));
                } catch (const DimensionMismatchError& err) {
                    throw LocalSystemError(where + ": " + err.what());
                }
            }
        }
        if (system.find_twist(e))
            throw LocalSystemError(where + ": duplicate twist for " + to_string(complex, e));
        system.set_twist(complex, e, m);
    }
    return system;
}

nlohmann::json local_system_to_json(const LocalSystem& system, const OrbifoldComplex& complex)
{
    nlohmann::json twists = nlohmann::json::array();
    for (const auto& [e, m] : system.twists()) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < m.rows(); ++r) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t c = 0; c < m.cols(); ++c) {
                const Rational& q = m.at(r, c);
                if (q.get_den() == 1 && q.get_num().fits_slong_p())
                    row.push_back(q.get_num().get_si());
                else
                    row.push_back(q.get_str());
            }
            rows.push_back(row);
        }
        twists.push_back({{"edge",
                           {{"sigmas", {complex.name(e.sigmas[0]), complex.name(e.sigmas[1])}},
                            {"g", e.arrows[0]}}},
                          {"matrix", rows}});
    }
    return {{"ring", system.ring().name()},
            {"rank", system.rank()},
            {"twists", twists},
            {"default", "identity"}};
}

} // namespace orbcoh
