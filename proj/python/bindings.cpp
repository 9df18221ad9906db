#include "fraisse/cli.hpp"
#include "fraisse/errors.hpp"
#include "fraisse/io.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fraisse;

// Artifacts cross the boundary as JSON text; the Python package turns them
// into dicts.

namespace {

Json in(const std::string& text) { return parse_json(text, "argument"); }
std::string out(const Json& j) { return j.dump(); }

Side side_of(const std::string& s) {
    if (s == "f") return Side::f;
    if (s == "g") return Side::g;
    throw ContractViolation("side must be \"f\" or \"g\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "native core of the fraisse package";

    auto base = py::register_exception<Error>(m, "FraisseError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", base.ptr());
    py::register_exception<WitnessNotFound>(m, "WitnessNotFound", base.ptr());
    py::register_exception<ResourceLimit>(m, "ResourceLimit", base.ptr());

    m.def("check_epi", [](const std::string& mj) {
        GraphMorphism f = morphism_from_json(in(mj));
        bool hom = is_homomorphism(f);
        bool ep = hom && is_epimorphism(f);
        return out({{"homomorphism", hom}, {"epimorphism", ep}, {"connected_epi", ep && is_connected_epi(f)}});
    });
    m.def("amalgamate", [](const std::string& f, const std::string& g) {
        return out(to_json(amalgamate(morphism_from_json(in(f)), morphism_from_json(in(g)))));
    });
    m.def("is_exact", [](const std::string& sq) { return is_exact(square_from_json(in(sq))); });
    m.def(
        "is_structurally_exact",
        [](const std::string& sq, const std::string& side, std::size_t bound) {
            return is_structurally_exact(square_from_json(in(sq)), side_of(side), bound);
        },
        py::arg("square"), py::arg("side"), py::arg("bound") = default_structural_bound);
    m.def("mapping_cylinder", [](const std::string& a) { return out(to_json(mapping_cylinder(morphism_from_json(in(a))))); });
    m.def("cylinder_extension", [](const std::string& g, const std::string& beta, const std::string& alpha) {
        return out(to_json(cylinder_extension(morphism_from_json(in(g)), morphism_from_json(in(beta)),
                                              morphism_from_json(in(alpha)))));
    });
    m.def("subdivide_edges", [](const std::string& g, std::size_t n) {
        return out(to_json(subdivide_edges(graph_from_json(in(g)), n)));
    });
    m.def("collapse_map", [](const std::string& g, std::size_t n, const std::vector<std::size_t>& gamma) {
        return out(to_json(collapse_map(graph_from_json(in(g)), n, gamma)));
    });
    m.def("local_refinement", [](const std::string& f, const std::string& i) {
        return out(to_json(local_refinement(morphism_from_json(in(f)), morphism_from_json(in(i)))));
    });
    m.def("to_dot", [](const std::string& g, const std::string& name) { return to_dot(graph_from_json(in(g)), name); },
          py::arg("graph"), py::arg("name") = "G");

    m.def(
        "build_tower",
        [](std::size_t max_vertices, std::size_t depth, std::uint64_t seed, std::size_t size_cap,
           std::size_t refine_period, std::size_t search_nodes, std::size_t max_obligations) {
            EnumerationBudget b;
            b.max_vertices = max_vertices;
            b.max_depth = depth;
            b.seed = seed;
            b.size_cap = size_cap ? size_cap : size_cap_from_env();
            b.refine_period = refine_period;
            b.search_nodes = search_nodes;
            b.max_obligations = max_obligations;
            py::gil_scoped_release release;
            return out(to_json(build_generic_tower(b)));
        },
        py::arg("max_vertices") = 3, py::arg("depth") = 6, py::arg("seed") = 0, py::arg("size_cap") = 0,
        py::arg("refine_period") = 3, py::arg("search_nodes") = 200000, py::arg("max_obligations") = 20000);
    m.def("extend_tower", [](const std::string& t, std::size_t depth) {
        return out(to_json(extend(tower_from_json(in(t)), depth)));
    });
    m.def("extension_witness", [](const std::string& t, std::size_t n, const std::string& f, const std::string& g) {
        Tower tower = tower_from_json(in(t));
        GraphMorphism fm = morphism_from_json(in(f));
        fm = GraphMorphism(tower.level(n), fm.target(), fm.assignment());
        return out(to_json(extension_witness(tower, n, fm, morphism_from_json(in(g)))));
    });
    m.def("back_and_forth", [](const std::string& t1, const std::string& t2, std::size_t rounds) {
        Tower a = tower_from_json(in(t1)), b = tower_from_json(in(t2));
        Intertwiner it = back_and_forth(a, b, rounds);
        verify_intertwiner(a, b, it);
        return out(to_json(it));
    });
    m.def("triangle_persistence", [](const std::string& t, std::size_t n, std::size_t k) {
        return triangle_persistence(tower_from_json(in(t)), n, k);
    });
    m.def("open_tower_map", [](const std::string& t, const std::string& target) {
        Tower tower = tower_from_json(in(t));
        PlainTower pt = plain_tower_from_json(in(target));
        OpenTowerMap om = open_tower_map(tower, pt);
        Json claims = Json::array();
        for (std::size_t i = 0; i < om.squares.size(); ++i) claims.push_back(verify_openness_claim(tower, pt, om, i));
        return out({{"map", to_json(om)}, {"claims", claims}});
    });

    m.def("closure", [](const std::string& c) {
        SimplicialComplex k = complex_from_json(in(c));
        Json faces = Json::array();
        for (const auto& f : k.all_faces()) faces.push_back(f);
        return out({{"complex", to_json(k)}, {"faces", faces}, {"face_count", k.face_count()}, {"dim", k.dim()}});
    });
    m.def("skeleton", [](const std::string& c, int n) { return out(to_json(skeleton(complex_from_json(in(c)), n))); });
    m.def("reduced_homology", [](const std::string& c, int k) {
        return out(to_json(reduced_homology(complex_from_json(in(c)), k)));
    });
    m.def("is_n_acyclic", [](const std::string& c, int n) { return is_n_acyclic(complex_from_json(in(c)), n); });
    m.def("in_class_acyclic", [](const std::string& c, int n) { return in_class_acyclic(complex_from_json(in(c)), n); });
    m.def("is_n_acyclic_map", [](const std::string& f, int n) {
        return is_n_acyclic_map(simplicial_map_from_json(in(f)), n);
    });
    m.def("boundary", [](const std::string& z) { return out(to_json(boundary(chain_from_json(in(z))))); });
    m.def("solve_boundary", [](const std::string& c, const std::string& z) -> py::object {
        auto eta = solve_boundary(complex_from_json(in(c)), chain_from_json(in(z)));
        if (!eta) return py::none();
        return py::str(out(to_json(*eta)));
    });
    m.def(
        "simplicial_pullback",
        [](const std::string& f, const std::string& g, int max_dim) {
            return out(to_json(simplicial_pullback(simplicial_map_from_json(in(f)), simplicial_map_from_json(in(g)), max_dim)));
        },
        py::arg("f"), py::arg("g"), py::arg("max_dim") = -2);
    m.def("amalgamate_acyclic", [](const std::string& f, const std::string& g, int n) {
        return out(to_json(amalgamate_acyclic(simplicial_map_from_json(in(f)), simplicial_map_from_json(in(g)), n)));
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        cli::CommandResult r = cli::run(args);
        return py::make_tuple(r.exit_code, r.help.empty() ? out(r.envelope()) : r.help);
    });
}
