#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "ncgeo/json_io.hpp"
#include "ncgeo/random.hpp"

using namespace ncgeo;
using io::json;

namespace {

struct Run {
    int status;
    std::string out;
};

std::string env(const char* name) {
    const char* v = std::getenv(name);
    REQUIRE_MESSAGE(v != nullptr, name << " is not set");
    return v;
}

// stderr is folded into the captured output
Run run(const std::string& args) {
    const std::string cmd = env("NCGEO_CLI") + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t got;
    while ((got = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, got);
    const int raw = pclose(p);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

std::string data(const std::string& file) { return env("NCGEO_DATA") + "/" + file; }

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("ncgeo_test_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("json round trips") {
    TrialRng rng(21);
    const GR z{Rational::parse("-3/4"), Rational(2)};
    CHECK(io::to_json(z) == json::array({"-3/4", "2"}));
    CHECK(io::gr_from_json(io::to_json(z)) == z);
    CHECK(io::gr_from_json(json::array({"6/8", 1})) == GR(Rational::parse("3/4"), Rational(1)));
    CHECK_THROWS_AS((void)io::gr_from_json(json::array({"x", "1"})), io::SchemaError);

    for (int n : {2, 3}) {
        const NCForm w = rng.form(n, 2);
        CHECK(io::form_from_json(io::to_json(w)) == w);
    }
    // unsorted indices pick up the permutation sign
    json j = {{"n", 2}, {"degree", 2}, {"components", {{{"indices", {1, 0}}, {"matrix", io::to_json(DenseMatrix::identity(2))}}}}};
    CHECK(io::form_from_json(j) == NCForm::scalar(2, 0b11, GR(-1)));
    j["components"][0]["indices"] = {1, 1};
    CHECK_THROWS_AS((void)io::form_from_json(j), io::SchemaError);

    SparseMatrix m(3, 4);
    m.set(0, 1, GR(5));
    m.set(2, 3, z);
    CHECK(io::matrix_from_dump(io::matrix_dump(m)) == m);

    for (const auto& name : bundled_complex_names()) {
        const auto k = std::make_shared<const SimplicialComplex>(*bundled_complex(name));
        CHECK(io::complex_from_json(io::to_json(*k)) == *k);
        const auto g = bundled_flat_cocycle(name, k, 2);
        CHECK(io::cocycle_from_json(io::to_json(g), k).stored() == g.stored());
    }
    const GroupElement g = phase_i(3);
    CHECK(io::group_from_json(io::to_json(g)) == g);
}

TEST_CASE("schema errors") {
    const auto hex = std::make_shared<const SimplicialComplex>(hexagon_circle());
    json bad = {{"n", 2}, {"edges", {{{"pair", {"v0", "v9"}}, {"matrix", io::to_json(DenseMatrix::identity(2))}}}}};
    CHECK_THROWS_AS((void)io::cocycle_from_json(bad, hex), io::SchemaError);
    bad["edges"][0]["pair"] = {"v0", "v3"};  // not an edge
    CHECK_THROWS_AS((void)io::cocycle_from_json(bad, hex), io::SchemaError);
    bad["edges"][0]["pair"] = {"v0", "v1"};
    bad["edges"][0]["matrix"] = io::to_json(DenseMatrix::identity(2) * GR(2));
    CHECK_THROWS_AS((void)io::cocycle_from_json(bad, hex), InvalidGroupElement);
    CHECK_THROWS_AS((void)io::complex_from_json(json{{"vertices", {"a"}}, {"simplices", {{"a", "b"}}}}), io::SchemaError);
    CHECK_THROWS_AS((void)io::form_from_json(json{{"n", 2}}), io::SchemaError);
}

TEST_CASE("cli: matrix cohomology") {
    const Run r = run("matrix-cohomology --n 2");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["betti"] == json::array({1, 0, 0, 1}));
    CHECK(j["conventions"].contains("sl_basis"));
    CHECK(j["conventions"].contains("nc_integral"));

    const Run csv = run("matrix-cohomology --n 3 --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.out == "degree,dimension\n0,1\n1,0\n2,0\n3,1\n4,0\n5,1\n6,0\n7,0\n8,1\n");

    const Run large = run("matrix-cohomology --n 4");
    CHECK(large.status != 0);
    CHECK(large.out.find("--allow-large") != std::string::npos);
    CHECK(run("matrix-cohomology --n 0").status != 0);
}

TEST_CASE("cli: total cohomology with a holonomy file") {
    const Run r = run("total --complex s1-hexagon --n 2 --cocycle " + data("holonomy-i.json"));
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["betti_total"] == json::array({1, 1, 0, 1, 1}));
    CHECK(j["match_product"] == true);
    CHECK(j["degenerate_at_e2"] == true);
    CHECK(j["betti_e2"] == json::parse("[[0,0,1],[0,3,1],[1,0,1],[1,3,1]]"));
}

TEST_CASE("cli: complexes from files and de Rham") {
    const Run r = run("derham --complex " + data("square.json") + " --format csv");
    CHECK(r.status == 0);
    CHECK(r.out == "degree,dimension\n0,1\n1,1\n");
    const Run t = run("total --complex " + data("square.json") + " --n 2 --format csv");
    CHECK(t.status == 0);
    CHECK(t.out == "degree,dimension\n0,1\n1,1\n2,0\n3,1\n4,1\n");
    CHECK(run("derham --complex /nonexistent.json").status == 2);
}

TEST_CASE("cli: broken cocycle reports its witness") {
    const Run r = run("total --complex s2-octahedron --n 2 --cocycle " + data("broken-octahedron.json"));
    CHECK(r.status != 0);
    CHECK(r.out.find("{v0,v1,v2}") != std::string::npos);
    // holonomy file on the wrong complex: v5 has no edge to v0 on the torus
    const Run w = run("total --complex t2-nine --n 2 --cocycle " + data("holonomy-i.json"));
    CHECK(w.status == 2);
}

TEST_CASE("cli: spectral pages") {
    const Run r = run("spectral --complex t2-nine --n 2 --cocycle bundled --page 1");
    REQUIRE(r.status == 0);
    const json j = json::parse(r.out);
    CHECK(j["page"]["r"] == 1);
    // E_1 = C^p ⊗ H(fiber): 9, 27, 18 simplices times (1 + t^3)
    CHECK(j["page"]["slots"] == json::parse("[[0,0,9],[0,3,9],[1,0,27],[1,3,27],[2,0,18],[2,3,18]]"));
    CHECK(j["degenerate_at_e2"] == true);
    // every total degree up to p_max + q_max = 7
    CHECK(j["e2_sums"] == json::array({1, 2, 1, 1, 2, 1, 0, 0}));
}

TEST_CASE("cli: integrals") {
    const auto path = scratch("vol.json");
    {
        std::ofstream f(path);
        f << io::to_json(NCForm::scalar(2, 0b111, GR(3))).dump();
    }
    const Run r = run("integrate --form " + path.string());
    std::filesystem::remove(path);
    REQUIRE(r.status == 0);
    CHECK(json::parse(r.out)["integral"] == json::array({"3", "0"}));

    const Run f = run("integrate --complex s2-octahedron --n 2 --cocycle bundled --format csv");
    CHECK(f.status == 0);
    CHECK(f.out == "vertex,value\nv0,6\nv1,6\nv2,6\nv3,6\nv4,6\nv5,6\n");
}

TEST_CASE("cli: verify is deterministic and writes to --out") {
    const auto a = scratch("a.json");
    const auto b = scratch("b.json");
    CHECK(run("verify --suite calculus --seed 7 --out " + a.string()).status == 0);
    CHECK(run("verify --suite calculus --seed 7 --out " + b.string()).status == 0);
    auto slurp = [](const std::filesystem::path& p) {
        std::ifstream f(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(f), {});
    };
    const std::string first = slurp(a);
    CHECK_FALSE(first.empty());
    CHECK(first == slurp(b));
    const json j = json::parse(first);
    CHECK(j["passed"] == true);
    CHECK(j["seed"] == 7);
    CHECK(j["criteria"].size() == 2);
    std::filesystem::remove(a);
    std::filesystem::remove(b);

    const Run csv = run("verify --suite collapse --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("check_name,status,detail\n", 0) == 0);
    CHECK(csv.out.find(",fail,") == std::string::npos);
    CHECK(run("verify --suite nonsense").status != 0);
}
