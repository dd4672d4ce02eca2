// Command line front end: validation, enumeration, cohomology and fixtures.
//
// Exit codes: 0 success, 1 semantic failure, 2 parse failure, 3 resource cap.

#include "orbcoh/cochain.hpp"
#include "orbcoh/errors.hpp"
#include "orbcoh/local_system.hpp"
#include "orbcoh/simplicial_set.hpp"
#include "orbcoh/teardrop.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace orbcoh;
using nlohmann::json;

namespace {

enum Exit { Ok = 0, Semantic = 1, Parse = 2, Cap = 3 };

// Raised for problems with the command line or input files themselves.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Sha256 {
public:
    Sha256() : ctx_(EVP_MD_CTX_new()) { EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr); }
    ~Sha256() { EVP_MD_CTX_free(ctx_); }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    void update(const std::string& bytes)
    {
        // length prefix keeps concatenations of several inputs unambiguous
        const std::string prefix = std::to_string(bytes.size()) + ":";
        EVP_DigestUpdate(ctx_, prefix.data(), prefix.size());
        EVP_DigestUpdate(ctx_, bytes.data(), bytes.size());
    }

    std::string hex()
    {
        unsigned char md[EVP_MAX_MD_SIZE];
        unsigned int len = 0;
        EVP_DigestFinal_ex(ctx_, md, &len);
        std::string out;
        char buf[3];
        for (unsigned int i = 0; i < len; ++i) {
            std::snprintf(buf, sizeof buf, "%02x", md[i]);
            out += buf;
        }
        return out;
    }

private:
    EVP_MD_CTX* ctx_;
};

struct Report {
    std::string command;
    Sha256 digest;
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> body;
    std::vector<std::string> violations;
    std::vector<std::pair<std::string, double>> timings;
    json data = json::object();

    std::string read_input(const std::string& path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw InputError("cannot read " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        digest.update(buf.str());
        return buf.str();
    }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t)
{
    return std::chrono::duration<double>(Clock::now() - t).count();
}

// Parses JSON text; syntax errors become InputError with line and column.
json parse_json(const std::string& text, const std::string& path)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, column = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                         ": malformed JSON (" + e.what() + ")");
    }
}

json group_record(const ModuleInvariants& m, std::size_t degree)
{
    json torsion = json::array();
    for (const auto& t : m.torsion)
        torsion.push_back(t.get_str());
    return {{"degree", degree}, {"group", m.render()}, {"freeRank", m.freeRank}, {"torsion", torsion}};
}

void per_degree(Report& report, const std::vector<ModuleInvariants>& groups)
{
    json list = json::array();
    for (std::size_t k = 0; k < groups.size(); ++k) {
        report.body.push_back("H^" + std::to_string(k) + " = " + groups[k].render());
        list.push_back(group_record(groups[k], k));
    }
    report.data["perDegree"] = list;
}

OrbifoldComplex read_complex(Report& report, const std::string& path)
{
    return load_complex(parse_json(report.read_input(path), path));
}

// ---------------------------------------------------------------- validate

void validate_complex(Report& report, const json& doc, int max_degree)
{
    const OrbifoldComplex c = load_complex(doc);
    report.header.emplace_back("document", "orbifold complex");
    report.header.emplace_back("top simplices", std::to_string(c.size()));
    report.header.emplace_back("intersections", std::to_string(c.records().size()));
    report.header.emplace_back("stored mu tables", std::to_string(c.stored_mu().size()));
    const MuReport mu = validate_mu(c);
    for (const auto& v : mu.violations)
        report.violations.push_back(v.describe(c));
    report.body.push_back("mu triples checked: " + std::to_string(mu.checked));
    try {
        check_mu_completeness(c, max_degree);
        report.body.push_back("mu tables complete through degree " + std::to_string(max_degree));
    } catch (const MissingMuError& e) {
        report.violations.push_back(e.what());
    }
}

void validate_charts(Report& report, const json& doc)
{
    const ChartDocument charts = load_chart_document(doc);
    report.header.emplace_back("document", "charts");
    report.body.push_back("charts: " + std::to_string(charts.charts.size()));
    report.body.push_back("embeddings: " + std::to_string(charts.embeddings.size()));
    report.body.push_back("liftings: " + std::to_string(charts.liftings.size()));
}

void validate_system(Report& report, const json& doc, const std::string& complex_path)
{
    if (complex_path.empty())
        throw InputError("a local-system document needs --complex");
    const OrbifoldComplex c = read_complex(report, complex_path);
    const LocalSystem system = load_local_system(doc, c);
    report.header.emplace_back("document", "local system");
    report.header.emplace_back("ring", system.ring().name());
    report.header.emplace_back("rank", std::to_string(system.rank()));
    const CoherenceReport coherence = validate_coherence(system, c);
    for (const auto& v : coherence.violations)
        report.violations.push_back(v.describe(c));
    report.body.push_back("2-simplices checked: " + std::to_string(coherence.checked));
}

int cmd_validate(Report& report, const std::string& path, const std::string& complex_path, int max_degree)
{
    const json doc = parse_json(report.read_input(path), path);
    report.header.emplace_back("input", path);
    if (doc.is_object() && doc.contains("topSimplices"))
        validate_complex(report, doc, max_degree);
    else if (doc.is_object() && doc.contains("charts"))
        validate_charts(report, doc);
    else if (doc.is_object() && doc.contains("ring"))
        validate_system(report, doc, complex_path);
    else
        throw ParseError(path + ": not an orbifold-complex, chart or local-system document");
    report.body.push_back(report.violations.empty() ? "valid" : "invalid");
    return report.violations.empty() ? Ok : Semantic;
}

// ---------------------------------------------------------------- cohomology

struct CohomologyFlags {
    std::string coefficients = "trivial";
    std::string ring = "Z";
    int rank = 1;
    int max_degree = 5;
    bool unnormalized = false;
    std::size_t warn_columns = 20000;
    std::size_t dense_cap = 4000;
    std::string emit_matrices;
};

json sparse_json(const IntSparse& m)
{
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto p = m.row_begin(r); p < m.row_end(r); ++p)
            entries.push_back({r, m.index[static_cast<std::size_t>(p)], m.value[static_cast<std::size_t>(p)]});
    return {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

json sparse_json(const RationalSparse& m)
{
    json entries = json::array();
    for (std::size_t r = 0; r < m.rows; ++r)
        for (auto p = m.row_begin(r); p < m.row_end(r); ++p)
            entries.push_back(
                {r, m.index[static_cast<std::size_t>(p)], m.value[static_cast<std::size_t>(p)].get_str()});
    return {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
}

void emit_matrices(const std::string& path, const SimplicialSet& S, const LocalSystem& system, bool normalized)
{
    const SparseCochains cochains = build_sparse_cochains(S, system, normalized);
    json out = {{"ring", system.ring().name()}, {"rank", system.rank()}, {"normalized", normalized}};
    json basis = json::array();
    for (int k = 0; k < S.max_degree(); ++k) {
        json names = json::array();
        if (normalized)
            for (const auto& s : S.enumerate_nondegenerate(k))
                names.push_back(to_string(S.complex(), s));
        else
            for (std::int64_t i = 0; i < S.count_all(k); ++i)
                names.push_back(to_string(S.complex(), S.simplex_all(k, i)));
        basis.push_back(names);
    }
    out["basis"] = basis;
    json deltas = json::array();
    std::visit([&](const auto& ds) {
        for (const auto& d : ds)
            deltas.push_back(sparse_json(d));
    }, cochains.deltas);
    out["deltas"] = deltas;
    std::ofstream file(path);
    if (!file)
        throw InputError("cannot write " + path);
    file << out.dump(1) << '\n';
}

int cmd_cohomology(Report& report, const std::string& path, const CohomologyFlags& flags)
{
    if (flags.max_degree < 0)
        throw InputError("--max-degree must be non-negative");
    auto t = Clock::now();
    const OrbifoldComplex c = read_complex(report, path);
    std::optional<LocalSystem> system;
    if (flags.coefficients == "trivial") {
        if (flags.rank < 0)
            throw InputError("--rank must be non-negative");
        system = trivial_system(Ring::parse(flags.ring), flags.rank);
    } else {
        system = load_local_system(parse_json(report.read_input(flags.coefficients), flags.coefficients), c);
    }
    report.timings.emplace_back("parse", since(t));

    report.header.emplace_back("input", path);
    report.header.emplace_back("coefficients", flags.coefficients);
    report.header.emplace_back("ring", system->ring().name());
    report.header.emplace_back("rank", std::to_string(system->rank()));
    report.header.emplace_back("max degree", std::to_string(flags.max_degree));
    report.header.emplace_back("cochains", flags.unnormalized ? "unnormalized" : "normalized");

    const CoherenceReport coherence = validate_coherence(*system, c);
    if (!coherence.ok()) {
        for (const auto& v : coherence.violations)
            report.violations.push_back(v.describe(c));
        report.body.push_back("local system is not coherent");
        return Semantic;
    }

    t = Clock::now();
    check_mu_completeness(c, flags.max_degree + 1);
    const SimplicialSet S(c, flags.max_degree + 1);
    report.timings.emplace_back("enumerate", since(t));
    json dims = json::array();
    for (int k = 0; k <= flags.max_degree + 1; ++k) {
        const auto n = static_cast<std::size_t>(flags.unnormalized ? S.count_all(k) : S.count(k)) *
                       static_cast<std::size_t>(system->rank());
        dims.push_back(n);
        if (k <= flags.max_degree && n > flags.warn_columns)
            std::cerr << "warning: C^" << k << " has " << n << " basis elements (threshold " << flags.warn_columns
                      << ")\n";
    }
    report.data["cochainDims"] = dims;

    if (!flags.emit_matrices.empty()) {
        t = Clock::now();
        emit_matrices(flags.emit_matrices, S, *system, !flags.unnormalized);
        report.timings.emplace_back("emit", since(t));
    }

    CohomologyOptions options;
    options.normalized = !flags.unnormalized;
    options.check_coherence = false;
    options.dense_cap = flags.dense_cap;
    const CohomologyResult result = cohomology(c, *system, flags.max_degree, options);
    report.timings.emplace_back("build", result.timings.build);
    report.timings.emplace_back("check", result.timings.check);
    report.timings.emplace_back("reduce", result.timings.reduce);
    per_degree(report, result.groups);
    return Ok;
}

// ---------------------------------------------------------------- teardrop

int cmd_teardrop(Report& report, int n, const std::string& out_dir)
{
    auto t = Clock::now();
    const Teardrop tear = generate_teardrop(n);
    report.timings.emplace_back("generate", since(t));
    report.digest.update("teardrop:" + std::to_string(n));

    std::filesystem::create_directories(out_dir);
    const std::string stem = "teardrop-" + std::to_string(n);
    const auto complex_path = (std::filesystem::path(out_dir) / (stem + ".json")).string();
    const auto charts_path = (std::filesystem::path(out_dir) / (stem + "-charts.json")).string();
    const auto write = [](const std::string& path, const json& doc) {
        std::ofstream file(path);
        if (!file)
            throw InputError("cannot write " + path);
        file << doc.dump(1) << '\n';
    };
    write(complex_path, complex_to_json(tear.complex));
    write(charts_path, chart_document_to_json(tear.atlas.document()));

    // round trip through the validators
    t = Clock::now();
    Report check;
    const int complex_status = cmd_validate(check, complex_path, "", 2);
    Report check_charts;
    const int chart_status = cmd_validate(check_charts, charts_path, "", 2);
    report.timings.emplace_back("validate", since(t));

    report.header.emplace_back("n", std::to_string(n));
    report.body.push_back("complex: " + complex_path);
    report.body.push_back("charts: " + charts_path);
    report.body.push_back("top simplices: " + std::to_string(tear.complex.size()));
    std::size_t nontrivial = 0;
    for (const auto& [key, mu] : tear.complex.stored_mu()) {
        bool identity = true;
        std::string images;
        for (std::size_t g = 0; g < mu.table.size(); ++g) {
            identity = identity && mu.table[g] == static_cast<int>(g);
            images += (g ? " " : "") + std::to_string(mu.table[g]);
        }
        if (!identity) {
            ++nontrivial;
            report.body.push_back("nontrivial mu " + tear.complex.describe(key) + ": [" + images + "]");
        }
    }
    report.body.push_back("nontrivial mu tables: " + std::to_string(nontrivial));
    report.violations = check.violations;
    report.violations.insert(report.violations.end(), check_charts.violations.begin(),
                             check_charts.violations.end());
    report.body.push_back(complex_status == Ok && chart_status == Ok ? "round trip: valid" : "round trip: invalid");
    report.data["files"] = {complex_path, charts_path};
    return complex_status == Ok && chart_status == Ok ? Ok : Semantic;
}

// ---------------------------------------------------------------- group cohomology

FiniteGroup read_group(Report& report, const std::string& spec)
{
    if (spec.rfind("table:", 0) == 0) {
        const std::string path = spec.substr(6);
        const json doc = parse_json(report.read_input(path), path);
        const json& mul = doc.is_object() ? doc.at("mul") : doc;
        if (!mul.is_array())
            throw ParseError(path + ": \"mul\" must be an array of rows");
        std::vector<std::vector<int>> table;
        for (const auto& row : mul) {
            if (!row.is_array())
                throw ParseError(path + ": \"mul\" rows must be arrays of integers");
            table.emplace_back();
            for (const auto& x : row) {
                if (!x.is_number_integer())
                    throw ParseError(path + ": \"mul\" entries must be integers");
                table.back().push_back(x.get<int>());
            }
        }
        if (doc.is_object() && doc.contains("order") &&
            (!doc["order"].is_number_integer() || doc["order"].get<std::size_t>() != table.size()))
            throw ParseError(path + ": \"order\" does not match the table");
        return group_from_table(table);
    }
    report.digest.update(spec);
    if (auto g = parse_group_shorthand(spec))
        return *g;
    throw InputError("--group must be cyclic:n or table:path, got '" + spec + "'");
}

int cmd_group_cohomology(Report& report, const std::string& spec, const std::string& ring, int rank, int max_degree)
{
    if (max_degree < 0 || rank < 0)
        throw InputError("--max-degree and --rank must be non-negative");
    const FiniteGroup G = read_group(report, spec);
    const Ring R = Ring::parse(ring);
    report.header.emplace_back("group", spec);
    report.header.emplace_back("order", std::to_string(G.order()));
    report.header.emplace_back("ring", R.name());
    report.header.emplace_back("rank", std::to_string(rank));
    report.header.emplace_back("max degree", std::to_string(max_degree));
    const auto t = Clock::now();
    const auto result = group_cohomology(G, R, rank, max_degree);
    report.timings.emplace_back("reduce", since(t));
    per_degree(report, result.groups);
    return Ok;
}

// ---------------------------------------------------------------- enumerate

int cmd_enumerate(Report& report, const std::string& path, int max_degree)
{
    if (max_degree < 0)
        throw InputError("--max-degree must be non-negative");
    const OrbifoldComplex c = read_complex(report, path);
    report.header.emplace_back("input", path);
    report.header.emplace_back("max degree", std::to_string(max_degree));
    const auto t = Clock::now();
    check_mu_completeness(c, max_degree);
    const SimplicialSet S(c, max_degree);
    report.timings.emplace_back("enumerate", since(t));
    json counts = json::array();
    for (int k = 0; k <= max_degree; ++k) {
        report.body.push_back("degree " + std::to_string(k) + ": " + std::to_string(S.count(k)) +
                              " nondegenerate, " + std::to_string(S.count_all(k)) + " total");
        counts.push_back({{"degree", k}, {"nondegenerate", S.count(k)}, {"total", S.count_all(k)}});
    }
    report.data["counts"] = counts;
    return Ok;
}

// ---------------------------------------------------------------- output

void print(Report& report, int status, const std::string& json_out)
{
    const std::string digest = report.digest.hex();
    std::cout << "command: " << report.command << '\n';
    std::cout << "input sha256: " << digest << '\n';
    for (const auto& [k, v] : report.header)
        std::cout << k << ": " << v << '\n';
    for (const auto& line : report.body)
        std::cout << line << '\n';
    for (const auto& v : report.violations)
        std::cout << "violation: " << v << '\n';
    for (const auto& [phase, seconds] : report.timings)
        std::fprintf(stderr, "time %s: %.3f s\n", phase.c_str(), seconds);

    if (json_out.empty())
        return;
    json out = report.data;
    out["command"] = report.command;
    out["inputDigest"] = digest;
    out["status"] = status;
    json header = json::object();
    for (const auto& [k, v] : report.header)
        header[k] = v;
    out["parameters"] = header;
    out["validation"] = report.violations;
    json timings = json::object();
    for (const auto& [phase, seconds] : report.timings)
        timings[phase] = seconds;
    out["timings"] = timings;
    std::ofstream file(json_out);
    if (!file)
        throw InputError("cannot write " + json_out);
    file << out.dump(2) << '\n';
}

int fail(const std::string& message, int status)
{
    std::cerr << "error: " << message << '\n';
    return status;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Cohomology of triangulated orbifolds with local coefficients"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string json_out;
    app.add_option("--json-out", json_out, "Also write the report as JSON to this path");

    std::string path, complex_path;
    int max_degree = 5;

    auto* validate = app.add_subcommand("validate", "Check an orbifold-complex, chart or local-system document");
    validate->add_option("path", path, "Document")->required();
    validate->add_option("--complex", complex_path, "Orbifold complex for a local-system document");
    validate->add_option("--max-degree", max_degree, "Degree through which mu tables must be available");

    CohomologyFlags flags;
    auto* coh = app.add_subcommand("cohomology", "Cohomology with local coefficients");
    coh->add_option("path", path, "Orbifold-complex document")->required();
    coh->add_option("--coefficients", flags.coefficients, "trivial or a local-system document");
    coh->add_option("--ring", flags.ring, "Z, Q or Zmod:m (trivial coefficients)");
    coh->add_option("--rank", flags.rank, "Rank of the trivial module");
    coh->add_option("--max-degree", flags.max_degree, "Highest degree D");
    coh->add_flag("--unnormalized", flags.unnormalized, "Use all simplices, degenerate ones included");
    coh->add_option("--warn-columns", flags.warn_columns, "Warn when some C^k exceeds this many basis elements");
    coh->add_option("--dense-cap", flags.dense_cap, "Largest block handed to the dense Smith form");
    coh->add_option("--emit-matrices", flags.emit_matrices, "Write the differentials as JSON to this path");

    int n = 0;
    std::string out_dir = ".";
    auto* tear = app.add_subcommand("teardrop", "Write the teardrop fixture documents");
    tear->add_option("--n", n, "Order of the cone point")->required();
    tear->add_option("--out", out_dir, "Output directory");

    std::string group, ring = "Z";
    int rank = 1, group_degree = 5;
    auto* gc = app.add_subcommand("group-cohomology", "H^k(G; ring^r) with trivial action");
    gc->add_option("--group", group, "cyclic:n or table:path")->required();
    gc->add_option("--ring", ring, "Z, Q or Zmod:m");
    gc->add_option("--rank", rank, "Rank of the module");
    gc->add_option("--max-degree", group_degree, "Highest degree D");

    int enum_degree = 5;
    auto* en = app.add_subcommand("enumerate", "Count simplices per degree");
    en->add_option("path", path, "Orbifold-complex document")->required();
    en->add_option("--max-degree", enum_degree, "Highest degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return Parse;
    }

    Report report;
    int status = Ok;
    try {
        if (*validate) {
            report.command = "validate";
            status = cmd_validate(report, path, complex_path, max_degree);
        } else if (*coh) {
            report.command = "cohomology";
            status = cmd_cohomology(report, path, flags);
        } else if (*tear) {
            report.command = "teardrop";
            status = cmd_teardrop(report, n, out_dir);
        } else if (*gc) {
            report.command = "group-cohomology";
            status = cmd_group_cohomology(report, group, ring, rank, group_degree);
        } else {
            report.command = "enumerate";
            status = cmd_enumerate(report, path, enum_degree);
        }
        print(report, status, json_out);
    } catch (const InputError& e) {
        return fail(e.what(), Parse);
    } catch (const ParseError& e) {
        return fail(e.what(), Parse);
    } catch (const ResourceCapError& e) {
        return fail(e.what(), Cap);
    } catch (const Error& e) {
        return fail(e.what(), Semantic);
    } catch (const json::exception& e) {
        return fail(e.what(), Parse);
    }
    return status;
}
