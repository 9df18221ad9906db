#include <doctest.h>

#include "fraisse/cli.hpp"

#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <string>
#include <vector>

using namespace fraisse;
namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() / ("fraisse_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string put(const std::string& name, const Json& j) const {
        auto p = dir / name;
        std::ofstream(p) << j.dump();
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

cli::CommandResult run(std::vector<std::string> args) { return cli::run(args); }

}  // namespace

TEST_CASE("cli check-epi and amalgamate") {
    Scratch s;
    Graph pt = Graph::point();
    auto f = s.put("f.json", to_json(GraphMorphism::to_point(Graph::path(3), pt)));
    auto g = s.put("g.json", to_json(GraphMorphism::to_point(Graph::path(2), pt)));

    auto r = run({"check-epi", f});
    CHECK(r.exit_code == 0);
    CHECK(r.payload == Json{{"homomorphism", true}, {"epimorphism", true}, {"connected_epi", true}});

    // edge 0-1 squashed onto a non-edge: not a homomorphism
    Graph two({"a", "b"}, {});
    auto bad = s.put("bad.json", to_json(GraphMorphism(Graph::path(2), two, {0, 1})));
    r = run({"check-epi", bad});
    CHECK(r.payload["homomorphism"] == false);
    CHECK(r.payload["connected_epi"] == false);

    r = run({"amalgamate", f, g});
    REQUIRE(r.status == "ok");
    auto sq = square_from_json(r.payload);
    CHECK(sq.apex().size() == 6);

    auto sq_file = s.put("sq.json", r.payload);
    CHECK(run({"check-exact", sq_file}).payload["exact"] == true);
    r = run({"check-structural", sq_file, "--side", "f"});
    CHECK(r.payload == Json{{"f", true}});
}

TEST_CASE("cli errors map to exit codes") {
    Scratch s;
    auto r = run({"check-epi", s.path("missing.json")});
    CHECK(r.exit_code == 2);
    CHECK(r.status == "contract-violation");
    CHECK(r.payload.is_null());

    r = run({"no-such-command"});
    CHECK(r.exit_code == 2);

    auto malformed = s.put("m.json", Json::parse(R"({"source":{"vertices":["a"],"edges":[]}})"));
    r = run({"check-epi", malformed});
    CHECK(r.exit_code == 2);
    CHECK(r.diagnostics.at(0).find("invalid JSON at /") != std::string::npos);

    // a graph on 12 vertices is past the structural bound of 4
    Graph big = Graph::path(12);
    auto sq = amalgamate(GraphMorphism::identity(big), GraphMorphism::identity(big));
    auto sq_file = s.put("big.json", to_json(sq));
    r = run({"check-structural", sq_file, "--bound", "4"});
    CHECK(r.exit_code == 4);
    CHECK(r.status == "resource-limit");

    Json env = r.envelope();
    CHECK(env.contains("status"));
    CHECK(env.contains("payload"));
    CHECK(env.contains("diagnostics"));
}

TEST_CASE("cli tower build is deterministic and resumable") {
    Scratch s;
    auto a = run({"tower", "build", "--depth", "3", "--seed", "2"});
    auto b = run({"tower", "build", "--depth", "3", "--seed", "2"});
    REQUIRE(a.exit_code == 0);
    CHECK(a.render() == b.render());

    auto t = s.put("t.json", a.payload);
    auto ext = run({"tower", "extend", t, "--depth", "4"});
    auto direct = run({"tower", "build", "--depth", "4", "--seed", "2"});
    CHECK(ext.payload == direct.payload);

    auto tri = run({"tower", "triangles", t});
    CHECK(tri.payload["persistence"].size() == 10);

    auto dot = run({"--pretty", "export-dot", t, "--level", "2"});
    CHECK(dot.render().rfind("graph \"L2\" {", 0) == 0);
}

TEST_CASE("cli tower witness not found exits 3") {
    Scratch s;
    auto t = s.put("t.json", run({"tower", "build", "--depth", "0"}).payload);
    // L_0 is the point; the only map to a 2-path's end is not a connected epi
    Graph pt = Graph::point(), p2 = Graph::path(2);
    auto f = s.put("f.json", to_json(GraphMorphism::identity(pt)));
    auto g = s.put("g.json", to_json(GraphMorphism::to_point(p2, pt)));
    auto r = run({"tower", "witness", t, f, g});
    CHECK(r.exit_code == 3);
    CHECK(r.status == "witness-not-found");
}

TEST_CASE("cli simplicial commands") {
    Scratch s;
    auto rp2 = s.put("rp2.json", Json{{"maximal_faces", Json::parse(R"([
        ["1","2","3"],["1","3","4"],["1","4","5"],["1","5","6"],["1","2","6"],
        ["2","3","5"],["2","4","5"],["2","4","6"],["3","4","6"],["3","5","6"]])")}});
    auto r = run({"sx", "homology", rp2, "--degree", "1"});
    CHECK(r.payload == Json::parse(R"({"degree":1,"rank":0,"torsion":[2]})"));
    r = run({"sx", "homology", rp2});
    CHECK(r.payload["reports"].size() == 4);

    r = run({"sx", "acyclic", rp2, "-n", "1"});
    CHECK(r.payload["acyclic"] == false);
    CHECK(r.payload["failing_degree"] == 1);
    CHECK(run({"sx", "acyclic", rp2, "-n", "0"}).payload["acyclic"] == true);

    auto two = s.put("two.json", Json{{"maximal_faces", Json::parse(R"([["a","b","c"],["b","c","d"]])")}});
    r = run({"sx", "closure", two});
    CHECK(r.payload["face_count"] == 12);
    r = run({"sx", "skeleton", two, "-n", "0"});
    CHECK(r.payload["maximal_faces"].size() == 4);

    auto z = s.put("z.json", Json::parse(R"({"terms":[{"face":["a","b","c"],"coeff":1}]})"));
    r = run({"sx", "boundary", z});
    CHECK(chain_from_json(r.payload) == boundary(Chain::oriented({"a", "b", "c"})));
    auto cyc = s.put("cyc.json", r.payload);
    r = run({"sx", "solve", two, cyc});
    CHECK(r.payload["solvable"] == true);
    CHECK(boundary(chain_from_json(r.payload["chain"])) == chain_from_json(load_json_file(cyc)));
}

TEST_CASE("cli simplicial amalgamation checks the class") {
    Scratch s;
    auto pt = SimplicialComplex::closure({{"0"}});
    auto seg = SimplicialComplex::closure({{"0", "1"}});
    auto tri = SimplicialComplex::closure({{"0", "1", "2"}});
    auto f = s.put("f.json", to_json(SimplicialMap::from_names(seg, pt, {{"0", "0"}, {"1", "0"}})));
    auto g = s.put("g.json", to_json(SimplicialMap::from_names(tri, pt, {{"0", "0"}, {"1", "0"}, {"2", "0"}})));
    // the triangle is outside the class for n = 1
    auto r = run({"sx", "amalgamate", f, g, "-n", "1"});
    CHECK(r.exit_code == 2);
    r = run({"sx", "amalgamate", f, g, "-n", "2"});
    REQUIRE(r.exit_code == 0);
    auto apex = complex_from_json(r.payload["f_prime"]["source"]);
    CHECK(apex.vertex_count() == 6);
    CHECK(apex.dim() == 2);
    r = run({"sx", "acyclic-map", f, "-m", "2"});
    CHECK(r.payload["acyclic"] == true);
}

TEST_CASE("cli output file and pretty") {
    Scratch s;
    auto g = s.put("g.json", to_json(Graph::path(3)));
    auto r = run({"-o", s.path("out.dot"), "--pretty", "export-dot", g});
    CHECK(r.output_path == s.path("out.dot"));
    CHECK(r.render().find("\"1\" -- \"2\"") != std::string::npos);
    CHECK(run({"export-dot", g}).render().rfind("{\"diagnostics\"", 0) == 0);
    CHECK(!run({"--help"}).help.empty());
}
