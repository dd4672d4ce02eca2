// Runs the orbcoh binary end to end: exit codes, report lines, fixtures.
#include <catch_amalgamated.hpp>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;

    bool has(const std::string& line) const { return out.find(line + "\n") != std::string::npos; }
    int count(const std::string& prefix) const
    {
        int n = 0;
        std::istringstream in(out);
        for (std::string line; std::getline(in, line);)
            n += line.rfind(prefix, 0) == 0;
        return n;
    }
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(ORBCOH_BIN) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::array<char, 4096> buf;
    for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), pipe)) > 0;)
        r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path workdir()
{
    static const fs::path dir = [] {
        fs::path d = fs::path(CLI_WORKDIR) / "cli_work";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

fs::path teardrop(int n)
{
    const fs::path out = workdir() / ("teardrop-" + std::to_string(n) + ".json");
    if (!fs::exists(out))
        REQUIRE(run("teardrop --n " + std::to_string(n) + " --out " + workdir().string()).code == 0);
    return out;
}

json read_json(const fs::path& p)
{
    std::ifstream in(p);
    return json::parse(in);
}

fs::path write(const std::string& name, const std::string& text)
{
    const fs::path p = workdir() / name;
    std::ofstream(p) << text;
    return p;
}

} // namespace

TEST_CASE("teardrop fixtures round-trip through validate")
{
    const fs::path doc = teardrop(3);
    CHECK(fs::exists(workdir() / "teardrop-3-charts.json"));
    const Run r = run("validate " + doc.string());
    CHECK(r.code == 0);
    CHECK(r.has("valid"));
    CHECK(r.count("violation:") == 0);
    CHECK(run("validate " + (workdir() / "teardrop-3-charts.json").string()).code == 0);
    CHECK(run("teardrop --n 1 --out " + workdir().string()).code == 1);
}

TEST_CASE("validate reports a corrupted mu entry with exit 1")
{
    json doc = read_json(teardrop(3));
    bool hit = false;
    for (auto& m : doc["mu"])
        if (m["tau"] == json{"a", "c", "d"} && m["rho"] == json{"a", "c"} && m["from"] == "a" && m["to"] == "c") {
            REQUIRE(m["table"] == json{2});
            m["table"] = json{1};
            hit = true;
        }
    REQUIRE(hit);
    const Run r = run("validate " + write("corrupt.json", doc.dump()).string());
    CHECK(r.code == 1);
    CHECK(r.has("invalid"));
    CHECK(r.count("violation: tau={a,c,d} rho={a,c}") == 2);
    CHECK(r.count("violation:") == 2);
}

TEST_CASE("malformed documents exit 2 with a position")
{
    const fs::path p = write("broken.json", "{\"topSimplices\": [\n");
    const std::string cmd = std::string(ORBCOH_BIN) + " validate " + p.string() + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    std::string err;
    std::array<char, 512> buf;
    for (std::size_t got; (got = fread(buf.data(), 1, buf.size(), pipe)) > 0;)
        err.append(buf.data(), got);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(err.find("broken.json:2:") != std::string::npos);
    CHECK(run("validate " + (workdir() / "missing.json").string()).code == 2);
}

TEST_CASE("cohomology of the teardrop from the command line")
{
    const std::string doc = teardrop(3).string();
    const Run z = run("cohomology " + doc + " --max-degree 4");
    REQUIRE(z.code == 0);
    CHECK(z.has("H^0 = Z"));
    CHECK(z.has("H^1 = 0"));
    CHECK(z.has("H^2 = Z"));
    CHECK(z.has("H^3 = 0"));
    CHECK(z.has("H^4 = Z/3"));

    const Run q = run("cohomology " + doc + " --ring Q --max-degree 4");
    REQUIRE(q.code == 0);
    CHECK(q.has("H^0 = Q"));
    CHECK(q.has("H^2 = Q"));
    CHECK(q.has("H^4 = 0"));

    // identical input, identical report
    CHECK(run("cohomology " + doc + " --max-degree 4").out == z.out);

    const fs::path js = workdir() / "report.json";
    REQUIRE(run("cohomology " + doc + " --max-degree 3 --json-out " + js.string()).code == 0);
    const json rep = read_json(js);
    CHECK(rep["status"] == 0);
    CHECK(rep["perDegree"].size() == 4);
    CHECK(rep["inputDigest"].get<std::string>().size() == 64);

    const Run cap = run("cohomology " + doc + " --max-degree 4 --dense-cap 1");
    CHECK(cap.code == 3);
}

TEST_CASE("incoherent coefficients exit 1 with violations")
{
    const std::string doc = teardrop(3).string();
    const fs::path ls = write("flip.json",
                              R"({"ring":"Z","rank":1,"twists":[{"edge":{"sigmas":["a","c"],"g":0},"matrix":[[-1]]}]})");
    const Run r = run("cohomology " + doc + " --coefficients " + ls.string() + " --max-degree 2");
    CHECK(r.code == 1);
    CHECK(r.count("violation: 2-simplex") > 0);
    CHECK(run("validate " + ls.string() + " --complex " + doc).code == 1);
}

TEST_CASE("group cohomology and enumeration")
{
    const Run c3 = run("group-cohomology --group cyclic:3");
    REQUIRE(c3.code == 0);
    for (const char* line : {"H^0 = Z", "H^1 = 0", "H^2 = Z/3", "H^3 = 0", "H^4 = Z/3", "H^5 = 0"})
        CHECK(c3.has(line));

    const Run c1 = run("group-cohomology --group cyclic:1 --max-degree 3");
    CHECK(c1.has("H^0 = Z"));
    CHECK(c1.has("H^1 = 0"));
    CHECK(c1.has("H^3 = 0"));

    const Run c2 = run("group-cohomology --group cyclic:2 --ring Zmod:2 --max-degree 3");
    for (const char* line : {"H^0 = Z/2", "H^1 = Z/2", "H^2 = Z/2", "H^3 = Z/2"})
        CHECK(c2.has(line));

    CHECK(run("group-cohomology --group cyclic:0").code != 0);

    const Run e = run("enumerate " + teardrop(3).string() + " --max-degree 2");
    REQUIRE(e.code == 0);
    CHECK(e.has("degree 0: 6 nondegenerate, 6 total"));
    CHECK(e.has("degree 1: 48 nondegenerate, 54 total"));
}
