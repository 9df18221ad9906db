#include <doctest.h>

#include "fraisse/engine.hpp"
#include "fraisse/errors.hpp"
#include "fraisse/search.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <numeric>

using namespace fraisse;

namespace {

std::vector<std::vector<Vertex>> brute_automorphisms(const Graph& g) {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> p(g.size());
    std::iota(p.begin(), p.end(), Vertex{0});
    do {
        bool ok = true;
        for (Vertex u = 0; u < g.size() && ok; ++u)
            for (Vertex v = 0; v < g.size() && ok; ++v) ok = g.adjacent(u, v) == g.adjacent(p[u], p[v]);
        if (ok) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Number of connected epis between iso classes of connected graphs with at
// most n vertices, counted up to isomorphism of arrows.
std::size_t arrow_classes(std::size_t n) {
    std::vector<Graph> reps;
    for (std::size_t k = 1; k <= n; ++k)
        for (auto& g : oracle::connected_iso_classes(k)) reps.push_back(g);
    std::size_t total = 0;
    for (auto& c : reps)
        for (auto& b : reps) {
            auto ac = brute_automorphisms(c), ab = brute_automorphisms(b);
            std::vector<std::vector<Vertex>> seen;
            for (auto& m : oracle::connected_epis_by_definition(c, b)) {
                bool known = false;
                for (auto& alpha : ac)
                    for (auto& beta : ab) {
                        std::vector<Vertex> moved(c.size());
                        for (Vertex x = 0; x < c.size(); ++x) moved[alpha[x]] = beta[m(x)];
                        known = known || std::find(seen.begin(), seen.end(), moved) != seen.end();
                    }
                if (!known) {
                    seen.push_back(m.assignment());
                    ++total;
                }
            }
        }
    return total;
}

EnumerationBudget budget(std::size_t vertices, std::size_t depth, std::uint64_t seed = 0) {
    EnumerationBudget b;
    b.max_vertices = vertices;
    b.max_depth = depth;
    b.seed = seed;
    return b;
}

}  // namespace

TEST_CASE("graph enumeration counts isomorphism classes") {
    std::size_t expected = 0;
    for (std::size_t n = 1; n <= 4; ++n) {
        expected += oracle::connected_iso_classes(n).size();
        auto gs = enumerate_graphs(budget(n, 0));
        CHECK(gs.size() == expected);
        for (std::size_t i = 0; i < gs.size(); ++i)
            for (std::size_t j = i + 1; j < gs.size(); ++j) CHECK_FALSE(oracle::isomorphic(gs[i], gs[j]));
    }
    CHECK(enumerate_graphs(budget(1, 0)).front().size() == 1);
}

TEST_CASE("morphism enumeration counts arrow classes") {
    CHECK(enumerate_morphisms(budget(3, 0)).size() == 9);
    CHECK(arrow_classes(3) == 9);
    CHECK(enumerate_morphisms(budget(4, 0)).size() == arrow_classes(4));
    for (const auto& m : enumerate_morphisms(budget(4, 0))) CHECK(oracle::connected_epi_by_definition(m));
}

TEST_CASE("seeded enumeration permutes but keeps the point first") {
    auto plain = enumerate_graphs(budget(4, 0));
    auto shuffled = enumerate_graphs(budget(4, 0, 9));
    REQUIRE(plain.size() == shuffled.size());
    CHECK(shuffled.front() == plain.front());
    for (const auto& g : plain) CHECK(std::find(shuffled.begin(), shuffled.end(), g) != shuffled.end());
    CHECK(enumerate_graphs(budget(4, 0, 9)) == shuffled);
}

TEST_CASE("morphism types are found up to isomorphism") {
    auto types = enumerate_morphisms(budget(3, 0));
    // the path 0-1-2 relabelled and folded onto an edge at its middle vertex
    Graph p3 = Graph::numbered(3, {{1, 0}, {0, 2}});
    Graph e = Graph::path(2);
    GraphMorphism fold(p3, e, {1, 0, 1});
    auto t = morphism_type(fold, types);
    REQUIRE(t.has_value());
    CHECK(types[*t].source().size() == 3);
    CHECK(types[*t].target().size() == 2);
    CHECK_FALSE(morphism_type(GraphMorphism::identity(Graph::cycle(4)), types).has_value());
}

TEST_CASE("budget checks") {
    CHECK_THROWS_AS(budget(0, 2).validate(), ContractViolation);
    CHECK_THROWS_AS(enumerate_graphs(budget(max_enumerated_graph + 1, 0)), ResourceLimit);
}

TEST_CASE("depth 0 tower is the point") {
    auto t = build_generic_tower(budget(3, 0));
    CHECK(t.depth() == 0);
    CHECK(t.level(0).size() == 1);
    CHECK(t.bondings().empty());
    CHECK_NOTHROW(t.validate());
}

TEST_CASE("generic tower is deterministic and resumable") {
    auto t = build_generic_tower(budget(3, 5));
    CHECK(t == build_generic_tower(budget(3, 5)));
    CHECK_NOTHROW(t.validate());
    auto short_t = build_generic_tower(budget(3, 3));
    CHECK(extend(short_t, 5) == t);
    CHECK_THROWS_AS(extend(t, 2), ContractViolation);
    for (const auto& st : t.log()) {
        CHECK(st.all_discharged());
        CHECK_FALSE(st.truncated);
    }
    for (std::size_t n = 0; n < t.depth(); ++n) CHECK(is_connected_epi(t.bondings()[n]));
    CHECK(t.composite(1, 1) == GraphMorphism::identity(t.level(1)));
    CHECK(t.composite(0, 3) == compose(t.composite(0, 2), t.bondings()[2]));
}

TEST_CASE("tower levels reach every enumerated graph") {
    auto t = build_generic_tower(budget(3, 6));
    for (const auto& a : enumerate_graphs(t.budget())) {
        bool reached = false;
        for (std::size_t n = 0; n <= t.depth() && !reached; ++n)
            reached = !all_connected_epis(t.level(n), a).empty();
        CHECK(reached);
    }
}

TEST_CASE("extension witness") {
    auto t = build_generic_tower(budget(3, 4));
    // g the identity: the witness is f itself at the same level
    for (std::size_t n = 0; n <= t.depth(); ++n) {
        auto f = GraphMorphism::to_point(t.level(n), Graph::point());
        auto w = extension_witness(t, n, f, GraphMorphism::identity(Graph::point()));
        CHECK(w.level == n);
        CHECK(w.map == f);
    }
    // a graph larger than any level cannot be covered
    Graph big = Graph::path(40);
    auto f = GraphMorphism::to_point(t.level(0), Graph::point());
    CHECK_THROWS_AS(extension_witness(t, 0, f, GraphMorphism::to_point(big, Graph::point())), WitnessNotFound);
    CHECK_THROWS_AS(extension_witness(t, 1, f, GraphMorphism::identity(Graph::point())), ContractViolation);
}

TEST_CASE("back and forth") {
    auto t1 = build_generic_tower(budget(3, 6, 0));
    auto t2 = build_generic_tower(budget(3, 6, 2));
    CHECK(back_and_forth(t1, t2, 0).maps.empty());
    auto it = back_and_forth(t1, t2, 2);
    CHECK(it.maps.size() == 5);
    CHECK_NOTHROW(verify_intertwiner(t1, t2, it));
    auto broken = it;
    broken.maps[1] = broken.maps[3];
    CHECK_THROWS_AS(verify_intertwiner(t1, t2, broken), ContractViolation);
}

TEST_CASE("triangle persistence") {
    auto t = build_generic_tower(budget(3, 6));
    for (std::size_t n = 0; n <= t.depth(); ++n) CHECK(triangle_persistence(t, n, n) == triangle_count(t.level(n)));
    for (std::size_t n = 0; n <= 2; ++n) {
        bool dies = false;
        for (std::size_t m = n; m <= t.depth(); ++m) dies = dies || triangle_persistence(t, n, m) == 0;
        CHECK(dies);
    }
    CHECK_THROWS_AS(triangle_persistence(t, 3, 2), ContractViolation);
}

TEST_CASE("open tower maps") {
    auto src = build_generic_tower(budget(3, 6));
    Graph pt = Graph::point();
    PlainTower points{{pt, pt, pt}, {GraphMorphism::identity(pt), GraphMorphism::identity(pt)}};
    auto om = open_tower_map(src, points);
    CHECK(om.maps.size() == 3);
    for (std::size_t i = 0; i + 1 < om.maps.size(); ++i) CHECK(verify_openness_claim(src, points, om, i));

    Graph p2 = Graph::path(2), p3 = Graph::numbered(3, {{0, 2}, {1, 2}});
    PlainTower paths{{pt, p2, p3}, {GraphMorphism::to_point(p2, pt), GraphMorphism(p3, p2, {0, 1, 0})}};
    auto pm = open_tower_map(src, paths);
    REQUIRE(pm.maps.size() == 3);
    for (std::size_t i = 0; i < 2; ++i) CHECK(verify_openness_claim(src, paths, pm, i));
    for (Vertex a = 0; a < p3.size(); ++a) {
        std::vector<std::vector<Vertex>> thread{{0}, {paths.bondings[1](a)}, {a}};
        auto sub = clique_fiber_subtower(src, paths, pm, thread);
        CHECK_NOTHROW(sub.validate());
    }
    CHECK_FALSE(verify_openness_claim(src, paths, pm, 2));
    CHECK_THROWS_AS(clique_fiber_subtower(src, paths, pm, {{0}, {0}, {1}}), ContractViolation);
}
