#include "fraisse/io.hpp"

#include "fraisse/errors.hpp"

#include <algorithm>
#include <climits>
#include <fstream>
#include <sstream>

namespace fraisse {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ContractViolation("invalid JSON at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

std::string escape_token(const std::string& key) {
    std::string out;
    for (char c : key) {
        if (c == '~')
            out += "~0";
        else if (c == '/')
            out += "~1";
        else
            out += c;
    }
    return out;
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + escape_token(key); }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

const Json& expect_object(const Json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    return j;
}

const Json& expect_array(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(path, "expected an array");
    return j;
}

const Json& member(const Json& j, const std::string& key, const std::string& path) {
    expect_object(j, path);
    auto it = j.find(key);
    if (it == j.end()) fail(path, "missing member \"" + key + "\"");
    return *it;
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

std::size_t as_size(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

bool as_bool(const Json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

// Runs a constructor and prefixes any contract failure with the path.
template <class F>
auto guarded(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ContractViolation& e) {
        std::string what = e.what();
        if (what.rfind("invalid JSON at ", 0) == 0) throw;
        fail(path, what);
    }
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
    expect_array(j, path);
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], at(path, i)));
    return out;
}

Json morphism_list(const std::vector<GraphMorphism>& ms) {
    Json out = Json::array();
    for (const auto& m : ms) out.push_back(to_json(m));
    return out;
}

std::vector<GraphMorphism> morphisms_from(const Json& j, const std::string& path) {
    expect_array(j, path);
    std::vector<GraphMorphism> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(morphism_from_json(j[i], at(path, i)));
    return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ContractViolation(origin + " is not valid JSON: " + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractViolation("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

Json integer_to_json(const Integer& x) {
    if (x >= LLONG_MIN && x <= LLONG_MAX) return Json(static_cast<long long>(x));
    return Json(x.str());
}

Integer integer_from_json(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Integer(j.get<long long>());
    if (j.is_number_unsigned()) return Integer(j.get<unsigned long long>());
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        std::size_t start = !s.empty() && s[0] == '-' ? 1 : 0;
        if (s.size() == start || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(), ::isdigit))
            fail(path, "expected an integer");
        return Integer(s);
    }
    fail(path, "expected an integer");
}

// ---- graphs ----

Json to_json(const Graph& g) {
    Json edges = Json::array();
    std::vector<std::pair<std::string, std::string>> named;
    for (auto [u, v] : g.edges()) {
        std::string a = g.name(u), b = g.name(v);
        if (b < a) std::swap(a, b);
        named.emplace_back(a, b);
    }
    std::sort(named.begin(), named.end());
    for (auto& [a, b] : named) edges.push_back({a, b});
    return {{"vertices", g.names()}, {"edges", edges}};
}

Graph graph_from_json(const Json& j, const std::string& path) {
    auto vertices = string_list(member(j, "vertices", path), at(path, "vertices"));
    const std::string ep = at(path, "edges");
    const Json& ej = expect_array(member(j, "edges", path), ep);
    std::vector<std::pair<std::string, std::string>> edges;
    for (std::size_t i = 0; i < ej.size(); ++i) {
        const std::string p = at(ep, i);
        auto pair = string_list(ej[i], p);
        if (pair.size() != 2) fail(p, "an edge needs exactly two endpoints");
        if (pair[0] == pair[1]) fail(p, "loops are implicit and may not be listed");
        edges.emplace_back(pair[0], pair[1]);
    }
    return guarded(path, [&] { return Graph(vertices, edges); });
}

Json assignment_to_json(const GraphMorphism& m) {
    Json out = Json::object();
    for (Vertex v = 0; v < m.source().size(); ++v) out[m.source().name(v)] = m.target().name(m(v));
    return out;
}

GraphMorphism assignment_from_json(const Json& j, const Graph& source, const Graph& target, const std::string& path) {
    expect_object(j, path);
    std::vector<Vertex> a(source.size());
    std::vector<char> seen(source.size(), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string p = at(path, it.key());
        auto s = source.find(it.key());
        if (!s) fail(p, "not a source vertex");
        auto t = target.find(as_string(it.value(), p));
        if (!t) fail(p, "image is not a target vertex");
        a[*s] = *t;
        seen[*s] = 1;
    }
    for (Vertex v = 0; v < source.size(); ++v)
        if (!seen[v]) fail(path, "no image for vertex " + source.name(v));
    return guarded(path, [&] { return GraphMorphism(source, target, a); });
}

Json to_json(const GraphMorphism& m) {
    return {{"source", to_json(m.source())}, {"target", to_json(m.target())}, {"map", assignment_to_json(m)}};
}

GraphMorphism morphism_from_json(const Json& j, const std::string& path) {
    Graph s = graph_from_json(member(j, "source", path), at(path, "source"));
    Graph t = graph_from_json(member(j, "target", path), at(path, "target"));
    return assignment_from_json(member(j, "map", path), s, t, at(path, "map"));
}

// ---- graph constructions ----

Json to_json(const AmalgamSquare& sq) {
    return {{"f", to_json(sq.f)}, {"g", to_json(sq.g)}, {"f_prime", to_json(sq.f_prime)}, {"g_prime", to_json(sq.g_prime)}};
}

AmalgamSquare square_from_json(const Json& j, const std::string& path) {
    AmalgamSquare sq{morphism_from_json(member(j, "f", path), at(path, "f")),
                     morphism_from_json(member(j, "g", path), at(path, "g")),
                     morphism_from_json(member(j, "f_prime", path), at(path, "f_prime")),
                     morphism_from_json(member(j, "g_prime", path), at(path, "g_prime"))};
    guarded(path, [&] {
        validate(sq);
        return 0;
    });
    return sq;
}

Json to_json(const CylinderResult& c) {
    return {{"cylinder", to_json(c.cylinder)},
            {"include_a", to_json(c.include_a)},
            {"include_x", to_json(c.include_x)},
            {"retraction", to_json(c.retraction)}};
}

Json to_json(const LocalRefinement& r) {
    return {{"refined", to_json(r.refined)}, {"embedding", to_json(r.embedding)}, {"map", to_json(r.map)}};
}

Json to_json(const CliqueProduct& p) { return {{"product", to_json(p.product)}, {"projection", to_json(p.projection)}}; }

// ---- towers ----

Json to_json(const EnumerationBudget& b) {
    return {{"max_vertices", b.max_vertices},       {"max_depth", b.max_depth},
            {"seed", b.seed},                       {"size_cap", b.size_cap},
            {"refine_period", b.refine_period},     {"search_nodes", b.search_nodes},
            {"max_obligations", b.max_obligations}};
}

EnumerationBudget budget_from_json(const Json& j, const std::string& path) {
    expect_object(j, path);
    EnumerationBudget b;
    auto opt = [&](const char* key, auto& field) {
        if (j.contains(key)) field = as_size(j[key], at(path, key));
    };
    opt("max_vertices", b.max_vertices);
    opt("max_depth", b.max_depth);
    opt("size_cap", b.size_cap);
    opt("refine_period", b.refine_period);
    opt("search_nodes", b.search_nodes);
    opt("max_obligations", b.max_obligations);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
            fail(at(path, "seed"), "expected a non-negative integer");
        b.seed = j["seed"].get<std::uint64_t>();
    }
    guarded(path, [&] {
        b.validate();
        return 0;
    });
    return b;
}

Json to_json(const Tower& t) {
    Json levels = Json::array();
    for (const auto& g : t.levels()) levels.push_back(to_json(g));
    Json bonds = Json::array();
    for (const auto& b : t.bondings()) bonds.push_back(assignment_to_json(b));
    Json log = Json::array();
    for (const auto& st : t.log()) {
        Json discharges = Json::array();
        for (const auto& d : st.discharges)
            discharges.push_back({{"s", assignment_to_json(d.s)},
                                  {"d", d.d ? assignment_to_json(*d.d) : Json(nullptr)},
                                  {"method", d.method}});
        Json refinement = nullptr;
        if (st.refinement)
            refinement = {{"level", st.refinement->level},
                          {"collapse", to_json(st.refinement->collapse)},
                          {"projection", assignment_to_json(st.refinement->projection)}};
        bool has_structure = st.structure_map.source().size() > 0;
        log.push_back({{"level", st.level},
                       {"structure",
                        {{"index", st.structure_index},
                         {"method", st.structure_method},
                         {"map", has_structure ? assignment_to_json(st.structure_map) : Json(nullptr)}}},
                       {"morphism",
                        {{"index", st.morphism_index},
                         {"universal", st.universal},
                         {"complete", st.obligations_complete},
                         {"discharges", discharges}}},
                       {"refinement", refinement},
                       {"truncated", st.truncated},
                       {"notes", st.notes}});
    }
    return {{"budget", to_json(t.budget())}, {"levels", levels}, {"bondings", bonds}, {"log", log}};
}

Tower tower_from_json(const Json& j, const std::string& path) {
    EnumerationBudget budget = budget_from_json(member(j, "budget", path), at(path, "budget"));
    const std::string lp = at(path, "levels");
    const Json& lj = expect_array(member(j, "levels", path), lp);
    if (lj.empty()) fail(lp, "a tower needs at least one level");
    std::vector<Graph> levels;
    for (std::size_t i = 0; i < lj.size(); ++i) levels.push_back(graph_from_json(lj[i], at(lp, i)));
    const std::string bp = at(path, "bondings");
    const Json& bj = expect_array(member(j, "bondings", path), bp);
    if (bj.size() + 1 != levels.size()) fail(bp, "need exactly one bonding per stage");
    std::vector<GraphMorphism> bonds;
    for (std::size_t i = 0; i < bj.size(); ++i)
        bonds.push_back(assignment_from_json(bj[i], levels[i + 1], levels[i], at(bp, i)));

    std::vector<StageLog> log;
    const std::string gp = at(path, "log");
    const Json& gj = expect_array(member(j, "log", path), gp);
    if (!gj.empty()) {
        if (gj.size() != bonds.size()) fail(gp, "need one record per stage");
        auto graphs = guarded(path, [&] { return enumerate_graphs(budget); });
        auto morphs = guarded(path, [&] { return enumerate_morphisms(budget); });
        for (std::size_t n = 0; n < gj.size(); ++n) {
            const std::string p = at(gp, n);
            const Json& rec = gj[n];
            StageLog st;
            st.level = as_size(member(rec, "level", p), at(p, "level"));
            if (st.level != n + 1) fail(at(p, "level"), "expected " + std::to_string(n + 1));

            const std::string sp = at(p, "structure");
            const Json& sj = member(rec, "structure", p);
            st.structure_index = as_size(member(sj, "index", sp), at(sp, "index"));
            if (st.structure_index >= graphs.size()) fail(at(sp, "index"), "outside the enumerated graphs");
            st.structure_method = as_string(member(sj, "method", sp), at(sp, "method"));
            const Json& smap = member(sj, "map", sp);
            const Graph& a = graphs[st.structure_index];
            st.structure_map = smap.is_null() ? GraphMorphism(Graph(), a, {})
                                              : assignment_from_json(smap, levels[n + 1], a, at(sp, "map"));

            const std::string mp = at(p, "morphism");
            const Json& mj = member(rec, "morphism", p);
            st.morphism_index = as_size(member(mj, "index", mp), at(mp, "index"));
            if (st.morphism_index >= morphs.size()) fail(at(mp, "index"), "outside the enumerated morphisms");
            st.universal = as_bool(member(mj, "universal", mp), at(mp, "universal"));
            st.obligations_complete = as_bool(member(mj, "complete", mp), at(mp, "complete"));
            const GraphMorphism& e = morphs[st.morphism_index];
            const std::string dp = at(mp, "discharges");
            const Json& dj = expect_array(member(mj, "discharges", mp), dp);
            for (std::size_t i = 0; i < dj.size(); ++i) {
                const std::string q = at(dp, i);
                Discharge d{assignment_from_json(member(dj[i], "s", q), levels[n], e.target(), at(q, "s")), std::nullopt,
                            as_string(member(dj[i], "method", q), at(q, "method"))};
                const Json& dd = member(dj[i], "d", q);
                if (!dd.is_null()) d.d = assignment_from_json(dd, levels[n + 1], e.source(), at(q, "d"));
                st.discharges.push_back(std::move(d));
            }

            const Json& rj = member(rec, "refinement", p);
            if (!rj.is_null()) {
                const std::string rp = at(p, "refinement");
                GraphMorphism collapse = morphism_from_json(member(rj, "collapse", rp), at(rp, "collapse"));
                GraphMorphism proj = assignment_from_json(member(rj, "projection", rp), levels[n + 1], collapse.source(),
                                                          at(rp, "projection"));
                st.refinement = RefinementRecord{as_size(member(rj, "level", rp), at(rp, "level")), collapse, proj};
            }
            st.truncated = as_bool(member(rec, "truncated", p), at(p, "truncated"));
            st.notes = string_list(member(rec, "notes", p), at(p, "notes"));
            log.push_back(std::move(st));
        }
    }
    return guarded(path, [&] {
        Tower t(budget, levels, bonds, log);
        t.validate();
        return t;
    });
}

Json to_json(const Witness& w) { return {{"level", w.level}, {"map", to_json(w.map)}}; }

Json to_json(const Intertwiner& it) { return {{"maps", morphism_list(it.maps)}, {"k", it.k}, {"l", it.l}}; }

Intertwiner intertwiner_from_json(const Json& j, const std::string& path) {
    Intertwiner it;
    it.maps = morphisms_from(member(j, "maps", path), at(path, "maps"));
    for (const char* key : {"k", "l"}) {
        const std::string p = at(path, key);
        const Json& a = expect_array(member(j, key, path), p);
        auto& dst = std::string(key) == "k" ? it.k : it.l;
        for (std::size_t i = 0; i < a.size(); ++i) dst.push_back(as_size(a[i], at(p, i)));
    }
    return it;
}

Json to_json(const PlainTower& t) {
    Json levels = Json::array();
    for (const auto& g : t.levels) levels.push_back(to_json(g));
    Json bonds = Json::array();
    for (const auto& b : t.bondings) bonds.push_back(assignment_to_json(b));
    return {{"levels", levels}, {"bondings", bonds}};
}

PlainTower plain_tower_from_json(const Json& j, const std::string& path) {
    PlainTower t;
    const std::string lp = at(path, "levels");
    const Json& lj = expect_array(member(j, "levels", path), lp);
    for (std::size_t i = 0; i < lj.size(); ++i) t.levels.push_back(graph_from_json(lj[i], at(lp, i)));
    if (t.levels.empty()) fail(lp, "a tower needs at least one level");
    const std::string bp = at(path, "bondings");
    const Json& bj = expect_array(member(j, "bondings", path), bp);
    if (bj.size() + 1 != t.levels.size()) fail(bp, "need exactly one bonding per stage");
    for (std::size_t i = 0; i < bj.size(); ++i)
        t.bondings.push_back(assignment_from_json(bj[i], t.levels[i + 1], t.levels[i], at(bp, i)));
    guarded(path, [&] {
        t.validate();
        return 0;
    });
    return t;
}

Json to_json(const OpenTowerMap& m) {
    Json squares = Json::array();
    for (const auto& sq : m.squares) squares.push_back(to_json(sq));
    return {{"levels", m.levels}, {"maps", morphism_list(m.maps)}, {"squares", squares}};
}

OpenTowerMap open_map_from_json(const Json& j, const std::string& path) {
    OpenTowerMap m;
    const std::string lp = at(path, "levels");
    const Json& lj = expect_array(member(j, "levels", path), lp);
    for (std::size_t i = 0; i < lj.size(); ++i) m.levels.push_back(as_size(lj[i], at(lp, i)));
    m.maps = morphisms_from(member(j, "maps", path), at(path, "maps"));
    const std::string sp = at(path, "squares");
    const Json& sj = expect_array(member(j, "squares", path), sp);
    for (std::size_t i = 0; i < sj.size(); ++i) m.squares.push_back(square_from_json(sj[i], at(sp, i)));
    if (m.levels.size() != m.maps.size()) fail(path, "levels and maps differ in length");
    return m;
}

// ---- simplicial ----

Json to_json(const SimplicialComplex& c) { return {{"maximal_faces", c.maximal_faces()}}; }

SimplicialComplex complex_from_json(const Json& j, const std::string& path) {
    const std::string p = at(path, "maximal_faces");
    const Json& fj = expect_array(member(j, "maximal_faces", path), p);
    std::vector<Face> faces;
    for (std::size_t i = 0; i < fj.size(); ++i) faces.push_back(string_list(fj[i], at(p, i)));
    return guarded(path, [&] { return SimplicialComplex::closure(faces); });
}

Json to_json(const SimplicialMap& f) {
    Json map = Json::object();
    for (std::uint32_t v = 0; v < f.source().vertex_count(); ++v)
        map[f.source().vertices()[v]] = f.target().vertices()[f(v)];
    return {{"source", to_json(f.source())}, {"target", to_json(f.target())}, {"map", map}};
}

SimplicialMap simplicial_map_from_json(const Json& j, const std::string& path) {
    auto s = complex_from_json(member(j, "source", path), at(path, "source"));
    auto t = complex_from_json(member(j, "target", path), at(path, "target"));
    const std::string mp = at(path, "map");
    const Json& mj = expect_object(member(j, "map", path), mp);
    std::map<std::string, std::string> a;
    for (auto it = mj.begin(); it != mj.end(); ++it) a[it.key()] = as_string(it.value(), at(mp, it.key()));
    return guarded(mp, [&] { return SimplicialMap::from_names(s, t, a); });
}

Json to_json(const SimplicialSquare& sq) {
    return {{"f", to_json(sq.f)}, {"g", to_json(sq.g)}, {"f_prime", to_json(sq.f_prime)}, {"g_prime", to_json(sq.g_prime)}};
}

Json to_json(const Chain& z) {
    Json terms = Json::array();
    for (const auto& [face, c] : z.terms()) terms.push_back({{"face", face}, {"coeff", integer_to_json(c)}});
    return {{"terms", terms}};
}

Chain chain_from_json(const Json& j, const std::string& path) {
    const std::string p = at(path, "terms");
    const Json& tj = expect_array(member(j, "terms", path), p);
    Chain z;
    for (std::size_t i = 0; i < tj.size(); ++i) {
        const std::string q = at(p, i);
        auto face = string_list(member(tj[i], "face", q), at(q, "face"));
        Integer c = integer_from_json(member(tj[i], "coeff", q), at(q, "coeff"));
        guarded(q, [&] {
            z.add(face, c);
            return 0;
        });
    }
    return z;
}

Json to_json(const HomologyReport& h) {
    Json torsion = Json::array();
    for (const auto& t : h.torsion) torsion.push_back(integer_to_json(t));
    return {{"degree", h.degree}, {"rank", h.rank}, {"torsion", torsion}};
}

// ---- dot ----

std::string to_dot(const Graph& g, const std::string& name) {
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    std::string out = "graph " + quote(name) + " {\n";
    for (const auto& v : g.names()) out += "  " + quote(v) + ";\n";
    for (auto [u, v] : g.edges()) out += "  " + quote(g.name(u)) + " -- " + quote(g.name(v)) + ";\n";
    return out + "}\n";
}

}  // namespace fraisse
