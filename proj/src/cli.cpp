#include "fraisse/cli.hpp"

#include "fraisse/errors.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

namespace fraisse::cli {

namespace {

using Diagnostics = std::vector<std::string>;
using Action = std::function<Json(Diagnostics&)>;

// Option targets must outlive parsing; the store owns them for one run().
class Store {
public:
    template <class T, class... A>
    T* make(A&&... a) {
        auto p = std::make_shared<T>(std::forward<A>(a)...);
        cells_.push_back(p);
        return p.get();
    }

private:
    std::vector<std::shared_ptr<void>> cells_;
};

// Accepts a bare artifact or the envelope of an earlier command, so outputs
// can be chained.
Json read_input(const std::string& path) {
    Json j;
    if (path == "-") {
        std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
        j = parse_json(text, "standard input");
    } else {
        j = load_json_file(path);
    }
    if (j.is_object() && j.contains("status") && j.contains("payload")) {
        if (j["status"] != "ok") throw ContractViolation(path + " holds a failed result");
        return j["payload"];
    }
    return j;
}

// Loads one artifact and tags any failure with the file it came from.
template <class F>
auto load(const std::string& path, F&& parse) {
    Json j = read_input(path);
    try {
        return parse(j);
    } catch (const ContractViolation& e) {
        throw ContractViolation(path + ": " + e.what());
    }
}

Graph load_graph(const std::string& p) {
    return load(p, [](const Json& j) { return graph_from_json(j); });
}
GraphMorphism load_morphism(const std::string& p) {
    return load(p, [](const Json& j) { return morphism_from_json(j); });
}
AmalgamSquare load_square(const std::string& p) {
    return load(p, [](const Json& j) { return square_from_json(j); });
}
Tower load_tower(const std::string& p) {
    return load(p, [](const Json& j) { return tower_from_json(j); });
}
PlainTower load_plain_tower(const std::string& p) {
    return load(p, [](const Json& j) { return plain_tower_from_json(j); });
}
SimplicialComplex load_complex(const std::string& p) {
    return load(p, [](const Json& j) { return complex_from_json(j); });
}
SimplicialMap load_simplicial_map(const std::string& p) {
    return load(p, [](const Json& j) { return simplicial_map_from_json(j); });
}
Chain load_chain(const std::string& p) {
    return load(p, [](const Json& j) { return chain_from_json(j); });
}

Json face_list(const std::vector<Face>& faces) {
    Json out = Json::array();
    for (const auto& f : faces) out.push_back(f);
    return out;
}

struct TowerFlags {
    std::size_t max_vertices = 3;
    std::size_t depth = 6;
    std::uint64_t seed = 0;
    std::size_t size_cap = 0;  // 0: FRAISSE_SIZE_CAP or the default
    std::size_t refine_every = 3;
    std::size_t search_nodes = 200000;
    std::size_t max_obligations = 20000;

    EnumerationBudget budget() const {
        EnumerationBudget b;
        b.max_vertices = max_vertices;
        b.max_depth = depth;
        b.seed = seed;
        b.size_cap = size_cap ? size_cap : size_cap_from_env();
        b.refine_period = refine_every;
        b.search_nodes = search_nodes;
        b.max_obligations = max_obligations;
        return b;
    }
};

void tower_summary(const Tower& t, Diagnostics& diag) {
    std::string sizes;
    for (const auto& g : t.levels()) sizes += (sizes.empty() ? "" : ",") + std::to_string(g.size());
    diag.push_back("level sizes " + sizes);
    for (const auto& st : t.log()) {
        for (const auto& n : st.notes) diag.push_back("stage " + std::to_string(st.level) + ": " + n);
        if (!st.all_discharged()) diag.push_back("stage " + std::to_string(st.level) + " has open obligations");
    }
}

// Clique threads are given as JSON: one list of vertex names per level.
std::vector<std::vector<Vertex>> parse_thread(const std::string& text, const PlainTower& target) {
    Json j = parse_json(text, "--thread");
    if (!j.is_array()) throw ContractViolation("--thread must be a JSON array of vertex-name lists");
    std::vector<std::vector<Vertex>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (i >= target.levels.size()) throw ContractViolation("--thread is longer than the target tower");
        if (!j[i].is_array()) throw ContractViolation("--thread entry " + std::to_string(i) + " must be an array");
        std::vector<Vertex> clique;
        for (const auto& v : j[i]) {
            if (!v.is_string()) throw ContractViolation("--thread entries must be vertex names");
            clique.push_back(target.levels[i].index_of(v.get<std::string>()));
        }
        out.push_back(std::move(clique));
    }
    return out;
}

void add_graph_commands(CLI::App& app, Action& action, Store& store) {
    auto* epi = app.add_subcommand("check-epi", "classify a morphism");
    auto* epi_file = store.make<std::string>();
    epi->add_option("morphism", *epi_file, "morphism JSON")->required();
    epi->callback([&action, epi_file] {
        action = [p = *epi_file](Diagnostics&) {
            GraphMorphism m = load_morphism(p);
            bool hom = is_homomorphism(m);
            bool ep = hom && is_epimorphism(m);
            return Json{{"homomorphism", hom}, {"epimorphism", ep}, {"connected_epi", ep && is_connected_epi(m)}};
        };
    });

    auto* am = app.add_subcommand("amalgamate", "fiber-product amalgam of two connected epis");
    auto* am_files = store.make<std::vector<std::string>>();
    am->add_option("maps", *am_files, "f.json g.json")->required()->expected(2);
    am->callback([&action, am_files] {
        action = [p = *am_files](Diagnostics& diag) {
            AmalgamSquare sq = amalgamate(load_morphism(p[0]), load_morphism(p[1]));
            diag.push_back("apex has " + std::to_string(sq.apex().size()) + " vertices");
            return to_json(sq);
        };
    });

    auto* ex = app.add_subcommand("check-exact", "exactness of an amalgam square");
    auto* ex_file = store.make<std::string>();
    ex->add_option("square", *ex_file)->required();
    ex->callback([&action, ex_file] {
        action = [p = *ex_file](Diagnostics&) { return Json{{"exact", is_exact(load_square(p))}}; };
    });

    auto* st = app.add_subcommand("check-structural", "structural exactness on one or both sides");
    auto* st_file = store.make<std::string>();
    auto* st_side = store.make<std::string>("both");
    auto* st_bound = store.make<std::size_t>(default_structural_bound);
    st->add_option("square", *st_file)->required();
    st->add_option("--side", *st_side)->check(CLI::IsMember({"f", "g", "both"}));
    st->add_option("--bound", *st_bound, "largest side graph searched exhaustively");
    st->callback([&action, st_file, st_side, st_bound] {
        action = [p = *st_file, side = *st_side, bound = *st_bound](Diagnostics&) {
            AmalgamSquare sq = load_square(p);
            Json out = Json::object();
            if (side != "g") out["f"] = is_structurally_exact(sq, Side::f, bound);
            if (side != "f") out["g"] = is_structurally_exact(sq, Side::g, bound);
            return out;
        };
    });

    auto* cy = app.add_subcommand("cylinder", "mapping cylinder of alpha: X -> A");
    auto* cy_file = store.make<std::string>();
    cy->add_option("alpha", *cy_file)->required();
    cy->callback([&action, cy_file] {
        action = [p = *cy_file](Diagnostics&) { return to_json(mapping_cylinder(load_morphism(p))); };
    });

    auto* ce = app.add_subcommand("cylinder-ext", "extension g*: C_beta -> C_alpha");
    auto* ce_files = store.make<std::vector<std::string>>();
    ce->add_option("maps", *ce_files, "g.json beta.json alpha.json")->required()->expected(3);
    ce->callback([&action, ce_files] {
        action = [p = *ce_files](Diagnostics&) {
            return Json{{"extension", to_json(cylinder_extension(load_morphism(p[0]), load_morphism(p[1]),
                                                                 load_morphism(p[2])))}};
        };
    });

    auto* sd = app.add_subcommand("subdivide", "edge subdivision with its collapse map");
    auto* sd_file = store.make<std::string>();
    auto* sd_n = store.make<std::size_t>(1);
    auto* sd_gamma = store.make<std::vector<std::size_t>>();
    sd->add_option("graph", *sd_file)->required();
    sd->add_option("-n,--n", *sd_n, "subdivision vertices per edge");
    sd->add_option("--gamma", *sd_gamma, "collapse thresholds, one per edge or a single shared value")
        ->delimiter(',');
    sd->callback([&action, sd_file, sd_n, sd_gamma] {
        action = [p = *sd_file, n = *sd_n, gamma = *sd_gamma](Diagnostics&) {
            Graph a = load_graph(p);
            std::vector<std::size_t> g = gamma;
            if (g.empty()) g.assign(a.edge_count(), 0);
            if (g.size() == 1) g.assign(a.edge_count(), gamma[0]);
            return Json{{"subdivision", to_json(subdivide_edges(a, n))}, {"collapse", to_json(collapse_map(a, n, g))}};
        };
    });

    auto* lr = app.add_subcommand("local-refine", "extend f: B0 -> A0 along an embedding A0 -> A");
    auto* lr_files = store.make<std::vector<std::string>>();
    lr->add_option("maps", *lr_files, "f.json i.json")->required()->expected(2);
    lr->callback([&action, lr_files] {
        action = [p = *lr_files](Diagnostics&) {
            return to_json(local_refinement(load_morphism(p[0]), load_morphism(p[1])));
        };
    });

    auto* cp = app.add_subcommand("clique-product", "product of a graph with a complete graph");
    auto* cp_file = store.make<std::string>();
    auto* cp_k = store.make<std::size_t>(2);
    cp->add_option("graph", *cp_file)->required();
    cp->add_option("-k,--clique", *cp_k);
    cp->callback([&action, cp_file, cp_k] {
        action = [p = *cp_file, k = *cp_k](Diagnostics&) { return to_json(clique_product(load_graph(p), k)); };
    });

    auto* dot = app.add_subcommand("export-dot", "DOT for a graph, a morphism's source, or a tower level");
    auto* dot_file = store.make<std::string>();
    auto* dot_level = store.make<long long>(-1);
    dot->add_option("file", *dot_file)->required();
    dot->add_option("--level", *dot_level, "tower level to export");
    dot->callback([&action, dot_file, dot_level] {
        action = [p = *dot_file, level = *dot_level](Diagnostics&) {
            Json j = read_input(p);
            Graph g;
            std::string name = "G";
            if (j.is_object() && j.contains("levels")) {
                if (level < 0) throw ContractViolation("export-dot: pass --level for a tower");
                Tower t = load_tower(p);
                g = t.level(static_cast<std::size_t>(level));
                name = "L" + std::to_string(level);
            } else if (j.is_object() && j.contains("source")) {
                g = load_morphism(p).source();
            } else {
                g = load_graph(p);
            }
            return Json{{"dot", to_dot(g, name)}};
        };
    });
}

void add_tower_commands(CLI::App& app, Action& action, Store& store) {
    auto* tower = app.add_subcommand("tower", "generic towers and maps between them");
    tower->require_subcommand(1);

    auto add_budget = [](CLI::App* c, TowerFlags* f) {
        c->add_option("--max-vertices", f->max_vertices, "largest enumerated graph");
        c->add_option("--depth", f->depth, "number of stages");
        c->add_option("--seed", f->seed, "shuffle seed for the schedule, 0 keeps canonical order");
        c->add_option("--size-cap", f->size_cap, "largest level (default FRAISSE_SIZE_CAP or 60)");
        c->add_option("--refine-every", f->refine_every, "refinement period, 0 disables");
        c->add_option("--search-nodes", f->search_nodes, "node budget per lifting search");
        c->add_option("--max-obligations", f->max_obligations, "obligations per stage");
    };

    auto* build = tower->add_subcommand("build", "build a generic tower");
    auto* bf = store.make<TowerFlags>();
    add_budget(build, bf);
    build->callback([&action, bf] {
        action = [f = *bf](Diagnostics& diag) {
            Tower t = build_generic_tower(f.budget());
            tower_summary(t, diag);
            return to_json(t);
        };
    });

    auto* ext = tower->add_subcommand("extend", "continue a tower to a greater depth");
    auto* ext_file = store.make<std::string>();
    auto* ext_depth = store.make<std::size_t>(0);
    ext->add_option("tower", *ext_file)->required();
    ext->add_option("--depth", *ext_depth)->required();
    ext->callback([&action, ext_file, ext_depth] {
        action = [p = *ext_file, d = *ext_depth](Diagnostics& diag) {
            Tower t = extend(load_tower(p), d);
            tower_summary(t, diag);
            return to_json(t);
        };
    });

    auto* wit = tower->add_subcommand("witness", "extension witness for f: L_n -> A and g: B -> A");
    auto* wit_files = store.make<std::vector<std::string>>();
    auto* wit_level = store.make<std::size_t>(0);
    wit->add_option("files", *wit_files, "tower.json f.json g.json")->required()->expected(3);
    wit->add_option("--level", *wit_level, "n, the level f starts from");
    wit->callback([&action, wit_files, wit_level] {
        action = [p = *wit_files, n = *wit_level](Diagnostics&) {
            Tower t = load_tower(p[0]);
            GraphMorphism f = load_morphism(p[1]);
            // f may be written against the level's own names, so re-anchor it
            f = GraphMorphism(t.level(n), f.target(), f.assignment());
            return to_json(extension_witness(t, n, f, load_morphism(p[2])));
        };
    });

    auto* zz = tower->add_subcommand("zigzag", "back-and-forth intertwiner between two towers");
    auto* zz_files = store.make<std::vector<std::string>>();
    auto* zz_rounds = store.make<std::size_t>(2);
    zz->add_option("towers", *zz_files, "t1.json t2.json")->required()->expected(2);
    zz->add_option("--rounds", *zz_rounds);
    zz->callback([&action, zz_files, zz_rounds] {
        action = [p = *zz_files, r = *zz_rounds](Diagnostics& diag) {
            Tower t1 = load_tower(p[0]), t2 = load_tower(p[1]);
            try {
                Intertwiner it = back_and_forth(t1, t2, r);
                verify_intertwiner(t1, t2, it);
                return Json{{"intertwiner", to_json(it)}, {"verified", true}};
            } catch (const PartialIntertwiner& e) {
                diag.push_back("built " + std::to_string(e.partial().maps.size()) + " maps before failing");
                throw;
            }
        };
    });

    auto* tri = tower->add_subcommand("triangles", "triangle persistence counts");
    auto* tri_file = store.make<std::string>();
    tri->add_option("tower", *tri_file)->required();
    tri->callback([&action, tri_file] {
        action = [p = *tri_file](Diagnostics&) {
            Tower t = load_tower(p);
            Json rows = Json::array();
            for (std::size_t n = 0; n <= t.depth(); ++n)
                for (std::size_t m = n; m <= t.depth(); ++m)
                    rows.push_back({{"n", n}, {"m", m}, {"count", triangle_persistence(t, n, m)}});
            return Json{{"persistence", rows}};
        };
    });

    auto* om = tower->add_subcommand("openmap", "open map from a generic tower onto a target tower");
    auto* om_files = store.make<std::vector<std::string>>();
    om->add_option("files", *om_files, "tower.json target.json")->required()->expected(2);
    om->callback([&action, om_files] {
        action = [p = *om_files](Diagnostics&) {
            Tower t = load_tower(p[0]);
            PlainTower target = load_plain_tower(p[1]);
            OpenTowerMap m = open_tower_map(t, target);
            Json claims = Json::array();
            for (std::size_t i = 0; i < m.squares.size(); ++i) claims.push_back(verify_openness_claim(t, target, m, i));
            return Json{{"map", to_json(m)}, {"claims", claims}};
        };
    });

    auto* fb = tower->add_subcommand("fiber", "preimage subtower over a thread of cliques");
    auto* fb_files = store.make<std::vector<std::string>>();
    auto* fb_thread = store.make<std::string>();
    fb->add_option("files", *fb_files, "tower.json target.json openmap.json")->required()->expected(3);
    fb->add_option("--thread", *fb_thread, "JSON list of cliques, e.g. [[\"0\"],[\"0\",\"1\"]]")->required();
    fb->callback([&action, fb_files, fb_thread] {
        action = [p = *fb_files, thread = *fb_thread](Diagnostics&) {
            Tower t = load_tower(p[0]);
            PlainTower target = load_plain_tower(p[1]);
            Json mj = read_input(p[2]);
            OpenTowerMap m = open_map_from_json(mj.contains("map") ? mj["map"] : mj);
            return to_json(clique_fiber_subtower(t, target, m, parse_thread(thread, target)));
        };
    });
}

void add_simplicial_commands(CLI::App& app, Action& action, Store& store) {
    auto* sx = app.add_subcommand("sx", "simplicial complexes, chains and homology");
    sx->require_subcommand(1);

    auto* cl = sx->add_subcommand("closure", "downward closure of a face list");
    auto* cl_file = store.make<std::string>();
    cl->add_option("complex", *cl_file)->required();
    cl->callback([&action, cl_file] {
        action = [p = *cl_file](Diagnostics&) {
            SimplicialComplex c = load_complex(p);
            return Json{{"complex", to_json(c)},
                        {"faces", face_list(c.all_faces())},
                        {"face_count", c.face_count()},
                        {"dim", c.dim()}};
        };
    });

    auto* sk = sx->add_subcommand("skeleton", "faces of dimension at most n");
    auto* sk_file = store.make<std::string>();
    auto* sk_n = store.make<int>(1);
    sk->add_option("complex", *sk_file)->required();
    sk->add_option("-n,--n", *sk_n)->required();
    sk->callback([&action, sk_file, sk_n] {
        action = [p = *sk_file, n = *sk_n](Diagnostics&) { return to_json(skeleton(load_complex(p), n)); };
    });

    auto* pb = sx->add_subcommand("pullback", "simplicial pullback of two maps");
    auto* pb_files = store.make<std::vector<std::string>>();
    pb->add_option("maps", *pb_files, "f.json g.json")->required()->expected(2);
    pb->callback([&action, pb_files] {
        action = [p = *pb_files](Diagnostics&) {
            return to_json(simplicial_pullback(load_simplicial_map(p[0]), load_simplicial_map(p[1])));
        };
    });

    auto* bd = sx->add_subcommand("boundary", "boundary of a chain");
    auto* bd_file = store.make<std::string>();
    bd->add_option("chain", *bd_file)->required();
    bd->callback([&action, bd_file] {
        action = [p = *bd_file](Diagnostics&) { return to_json(boundary(load_chain(p))); };
    });

    auto* cm = sx->add_subcommand("chain-map", "push a chain forward along a simplicial map");
    auto* cm_files = store.make<std::vector<std::string>>();
    cm->add_option("files", *cm_files, "map.json chain.json")->required()->expected(2);
    cm->callback([&action, cm_files] {
        action = [p = *cm_files](Diagnostics&) {
            SimplicialMap f = load_simplicial_map(p[0]);
            Chain z = load_chain(p[1]);
            check_chain(f.source(), z);
            return to_json(chain_map(f, z));
        };
    });

    auto* sv = sx->add_subcommand("solve", "a chain whose boundary is the given cycle");
    auto* sv_files = store.make<std::vector<std::string>>();
    sv->add_option("files", *sv_files, "complex.json cycle.json")->required()->expected(2);
    sv->callback([&action, sv_files] {
        action = [p = *sv_files](Diagnostics& diag) {
            auto eta = solve_boundary(load_complex(p[0]), load_chain(p[1]));
            if (!eta) diag.push_back("no integral chain has this boundary");
            return Json{{"solvable", eta.has_value()}, {"chain", eta ? to_json(*eta) : Json(nullptr)}};
        };
    });

    auto* ho = sx->add_subcommand("homology", "reduced integral homology");
    auto* ho_file = store.make<std::string>();
    auto* ho_degree = store.make<int>(-2);
    ho->add_option("complex", *ho_file)->required();
    ho->add_option("--degree", *ho_degree, "one degree; all degrees -1..dim when omitted");
    ho->callback([&action, ho_file, ho_degree] {
        action = [p = *ho_file, k = *ho_degree](Diagnostics&) {
            SimplicialComplex c = load_complex(p);
            if (k >= -1) return to_json(reduced_homology(c, k));
            Json reports = Json::array();
            for (int d = -1; d <= std::max(c.dim(), -1); ++d) reports.push_back(to_json(reduced_homology(c, d)));
            return Json{{"reports", reports}};
        };
    });

    auto* ac = sx->add_subcommand("acyclic", "n-acyclicity and class membership of a complex");
    auto* ac_file = store.make<std::string>();
    auto* ac_n = store.make<int>(0);
    ac->add_option("complex", *ac_file)->required();
    ac->add_option("-n,--n", *ac_n)->required();
    ac->callback([&action, ac_file, ac_n] {
        action = [p = *ac_file, n = *ac_n](Diagnostics&) {
            SimplicialComplex c = load_complex(p);
            auto bad = acyclicity_obstruction(c, n);
            return Json{{"acyclic", !bad.has_value()},
                        {"failing_degree", bad ? Json(*bad) : Json(nullptr)},
                        {"in_class", in_class_acyclic(c, n)}};
        };
    });

    auto* am = sx->add_subcommand("acyclic-map", "m-acyclicity of a simplicial map");
    auto* am_file = store.make<std::string>();
    auto* am_m = store.make<int>(0);
    am->add_option("map", *am_file)->required();
    am->add_option("-m,--m", *am_m)->required();
    am->callback([&action, am_file, am_m] {
        action = [p = *am_file, m = *am_m](Diagnostics&) {
            SimplicialMap f = load_simplicial_map(p);
            auto bad = acyclic_map_obstruction(f, m);
            return Json{{"acyclic", !bad.has_value()},
                        {"failing_face", bad ? Json(f.target().names(*bad)) : Json(nullptr)}};
        };
    });

    auto* sa = sx->add_subcommand("amalgamate", "n-skeleton of the pullback of two acyclic maps");
    auto* sa_files = store.make<std::vector<std::string>>();
    auto* sa_n = store.make<int>(1);
    sa->add_option("maps", *sa_files, "f.json g.json")->required()->expected(2);
    sa->add_option("-n,--n", *sa_n)->required();
    sa->callback([&action, sa_files, sa_n] {
        action = [p = *sa_files, n = *sa_n](Diagnostics&) {
            return to_json(amalgamate_acyclic(load_simplicial_map(p[0]), load_simplicial_map(p[1]), n));
        };
    });
}

const char* status_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::contract_violation: return "contract-violation";
    case ErrorKind::witness_not_found: return "witness-not-found";
    case ErrorKind::resource_limit: return "resource-limit";
    }
    return "contract-violation";
}

int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::contract_violation: return 2;
    case ErrorKind::witness_not_found: return 3;
    case ErrorKind::resource_limit: return 4;
    }
    return 2;
}

}  // namespace

Json CommandResult::envelope() const {
    return {{"status", status}, {"payload", payload}, {"diagnostics", diagnostics}};
}

std::string CommandResult::render() const {
    if (!help.empty()) return help;
    if (!pretty) return envelope().dump() + "\n";
    std::string out;
    if (status == "ok" && payload.is_object() && payload.size() == 1 && payload.contains("dot"))
        out = payload["dot"].get<std::string>();
    else if (status == "ok")
        out = payload.dump(2) + "\n";
    else
        out = "status: " + status + "\n";
    for (const auto& d : diagnostics) out += "# " + d + "\n";
    return out;
}

CommandResult run(const std::vector<std::string>& args) {
    CommandResult result;
    CLI::App app{"fraisse: connected graph epimorphisms, generic towers and acyclic complexes", "fraisse"};
    app.require_subcommand(1);
    bool json_flag = false;
    app.add_flag("--json", json_flag, "machine-readable envelope (default)");
    app.add_flag("--pretty", result.pretty, "indented payload for reading");
    app.add_option("-o,--output", result.output_path, "write the result to a file");
    app.fallthrough();

    Action action;
    Store store;
    add_graph_commands(app, action, store);
    add_tower_commands(app, action, store);
    add_simplicial_commands(app, action, store);
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* deepest = &app;
        while (!deepest->get_subcommands().empty()) deepest = deepest->get_subcommands().front();
        result.help = deepest->help();
        return result;
    } catch (const CLI::ParseError& e) {
        result.status = "contract-violation";
        result.exit_code = 2;
        result.payload = nullptr;
        result.diagnostics.push_back(e.what());
        return result;
    }
    if (json_flag) result.pretty = false;

    try {
        result.payload = action(result.diagnostics);
    } catch (const Error& e) {
        result.status = status_name(e.kind());
        result.exit_code = exit_code(e.kind());
        result.payload = nullptr;
        result.diagnostics.insert(result.diagnostics.begin(), e.what());
    } catch (const Json::exception& e) {
        result.status = "contract-violation";
        result.exit_code = 2;
        result.payload = nullptr;
        result.diagnostics.insert(result.diagnostics.begin(), e.what());
    }
    return result;
}

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CommandResult r = run(args);
    std::string text = r.render();
    if (!r.output_path.empty() && r.help.empty()) {
        std::ofstream out(r.output_path);
        if (!out) {
            std::cerr << "cannot write " << r.output_path << "\n";
            return 2;
        }
        out << text;
        if (r.exit_code != 0)
            for (const auto& d : r.diagnostics) std::cerr << d << "\n";
    } else {
        std::cout << text;
    }
    return r.exit_code;
}

}  // namespace fraisse::cli
