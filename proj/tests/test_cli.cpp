#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <ainf/json_io.hpp>
#include <ainf/fixtures.hpp>

using namespace ainf;

namespace {

std::string cli() { return AINF_CLI_PATH; }
std::string fixture(const std::string& name) { return std::string(AINF_FIXTURE_DIR) + "/" + name; }

int run(const std::string& args, std::string* out = nullptr) {
    std::string cmd = cli() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string text;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, p)) text.append(buf, n);
    int status = pclose(p);
    if (out) *out = text;
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("verify subcommands accept the committed fixtures") {
    CHECK(run("verify pontryagin --in " + fixture("digraph_squares.json")) == 0);
    CHECK(run("verify ainfty --in " + fixture("transferred_mu3.json") + " --dmax 4") == 0);
    CHECK(run("verify ainfty --in " + fixture("dg_category.json")) == 0);
    CHECK(run("verify functor --in " + fixture("functor_transfer.json") +
              " --convention paper-literal") == 0);
    CHECK(run("verify cubical --in " + fixture("cubical_torus.json")) == 0);
}

TEST_CASE("exit codes: 2 on malformed fixtures, 1 on check failure") {
    CHECK(run("verify ainfty --in /nonexistent.json") == 2);

    // malformed: not the right schema
    std::string bad = "/tmp/ainf_bad_schema.json";
    std::ofstream(bad) << "{\"schema\":\"nope/9\"}";
    CHECK(run("verify ainfty --in " + bad) == 2);

    // a failing fixture: flip one sign in the transferred category
    AInftyCategory t = fixtures::transferred_mu3();
    auto sites = flip_sites(t);
    AInftyCategory broken = with_flip(t, sites.front());
    std::string path = "/tmp/ainf_flipped.json";
    save_text_file(path, category_to_json(broken).dump(2));
    CHECK(run("verify ainfty --in " + path + " --dmax 4") == 1);
}

TEST_CASE("strata listing matches the interval endpoints") {
    std::string out;
    CHECK(run("strata --space Z --d 2 --list", &out) == 0);
    int lines = 0;
    for (char ch : out)
        if (ch == '\n') ++lines;
    CHECK(lines == 2);
    CHECK(run("strata --space Z --d 3 --check mod2") == 0);
}

TEST_CASE("maslov subcommand reads a frame path CSV") {
    std::string out;
    CHECK(run("branes maslov --in " + fixture("frame_rotating_line.csv") + " --closed", &out) == 0);
    CHECK(out.find("winding 1") != std::string::npos);
}

TEST_CASE("fixture generation is deterministic per seed") {
    std::string a = "/tmp/ainf_g1.json", b = "/tmp/ainf_g2.json", c = "/tmp/ainf_g3.json";
    CHECK(run("fixtures gen --kind digraph-squares --seed 7 --out " + a) == 0);
    CHECK(run("fixtures gen --kind digraph-squares --seed 7 --out " + b) == 0);
    CHECK(run("fixtures gen --kind digraph-squares --seed 8 --out " + c) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) != slurp(c));
    CHECK(run("fixtures gen --kind nonsense --seed 1 --out /tmp/x.json") == 2);
}

TEST_CASE("json round trips preserve categories, functors, digraphs, cubical sets") {
    AInftyCategory c = fixtures::transferred_mu3();
    AInftyCategory c2 = category_from_json(category_to_json(c));
    CHECK(category_to_json(c2) == category_to_json(c));
    CHECK(check_ainfty(c2, 4).ok);

    auto fx = fixtures::transfer_functor();
    auto loaded = functor_from_json(functor_to_json(fx.functor));
    CHECK(functor_to_json(loaded->functor) == functor_to_json(fx.functor));

    Digraph g = fixtures::random_digraph(3);
    CHECK(digraph_to_json(digraph_from_json(digraph_to_json(g))) == digraph_to_json(g));

    PresentedCubicalSet x = fixtures::piece_torus();
    PresentedCubicalSet x2 = cubical_from_json(cubical_to_json(x));
    CHECK(cubical_to_json(x2) == cubical_to_json(x));

    // module schema round trip
    auto m = make_module({{"a", 0}, {"b", 1}});
    SparseMap d(m, m, -1);
    d.set_entry(1, Chain::unit(m, 0, 2));
    json j = module_to_json(*m, {{"d", d}});
    LoadedModule lm = module_from_json(j);
    CHECK(lm.maps.size() == 1);
    CHECK(lm.maps[0].second.apply_gen(1).coeff(0) == 2);
}

TEST_CASE("reports carry the schema tag and omit wall times by default") {
    std::string rp = "/tmp/ainf_rep_cli.json";
    CHECK(run("verify cubical --in " + fixture("cubical_torus.json") + " --report " + rp) == 0);
    json j = load_json_file(rp);
    CHECK(j.at("schema") == "ainf-report/1");
    CHECK_FALSE(j.at("checks").at(0).contains("wall_ms"));

    CHECK(run("verify cubical --in " + fixture("cubical_torus.json") + " --report " + rp +
              " --timings") == 0);
    json jt = load_json_file(rp);
    CHECK(jt.at("checks").at(0).contains("wall_ms"));
}
