#include "fraisse/engine.hpp"

#include "fraisse/errors.hpp"
#include "fraisse/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

namespace fraisse {

std::size_t size_cap_from_env(std::size_t fallback) {
    const char* v = std::getenv("FRAISSE_SIZE_CAP");
    if (!v || !*v) return fallback;
    char* end = nullptr;
    unsigned long long n = std::strtoull(v, &end, 10);
    if (*end != '\0' || n == 0) return fallback;
    return static_cast<std::size_t>(n);
}

void EnumerationBudget::validate() const {
    if (max_vertices < 1) throw ContractViolation("budget: max_vertices must be at least 1");
    if (size_cap < 1) throw ContractViolation("budget: size_cap must be at least 1");
}

namespace {

// Fisher-Yates over positions [from, n) driven by mt19937_64, so the order is
// the same on every standard library.
template <class T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed, std::size_t from) {
    if (seed == 0 || items.size() <= from + 1) return;
    std::mt19937_64 rng(seed);
    for (std::size_t i = items.size() - 1; i > from; --i) {
        std::size_t span = i - from + 1;
        std::size_t j = from + static_cast<std::size_t>(rng() % span);
        std::swap(items[i], items[j]);
    }
}

std::vector<Graph> canonical_connected_graphs(std::size_t max_vertices) {
    std::vector<Graph> out;
    for (std::size_t n = 1; n <= max_vertices; ++n) {
        std::vector<Edge> pairs;
        for (Vertex u = 0; u < n; ++u)
            for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
        std::map<std::uint64_t, Graph> seen;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
            std::vector<Edge> e;
            for (std::size_t i = 0; i < pairs.size(); ++i)
                if (mask >> i & 1) e.push_back(pairs[i]);
            Graph g = Graph::numbered(n, e);
            if (!is_connected(g)) continue;
            CanonicalForm cf = canonical_form(g, max_enumerated_graph);
            seen.emplace(cf.code, cf.graph);
        }
        for (auto& [code, g] : seen) out.push_back(g);
    }
    return out;
}

// psi ∘ m ∘ phi^{-1} minimised over both automorphism groups.
std::vector<Vertex> orbit_representative(const std::vector<Vertex>& a, const std::vector<std::vector<Vertex>>& aut_s,
                                         const std::vector<std::vector<Vertex>>& aut_t) {
    std::vector<Vertex> best = a, cand(a.size());
    for (const auto& phi : aut_s)
        for (const auto& psi : aut_t) {
            // (psi ∘ m ∘ phi^{-1})(phi(x)) = psi(m(x))
            for (Vertex x = 0; x < a.size(); ++x) cand[phi[x]] = psi[a[x]];
            if (cand < best) best = cand;
        }
    return best;
}

}  // namespace

std::vector<Graph> enumerate_graphs(const EnumerationBudget& budget) {
    budget.validate();
    if (budget.max_vertices > max_enumerated_graph)
        throw ResourceLimit("enumerate_graphs: at most " + std::to_string(max_enumerated_graph) +
                            " vertices can be enumerated exhaustively");
    auto out = canonical_connected_graphs(budget.max_vertices);
    seeded_shuffle(out, budget.seed, 1);
    return out;
}

std::vector<GraphMorphism> enumerate_morphisms(const EnumerationBudget& budget) {
    budget.validate();
    if (budget.max_vertices > max_enumerated_morphism)
        throw ResourceLimit("enumerate_morphisms: at most " + std::to_string(max_enumerated_morphism) +
                            " vertices can be enumerated exhaustively");
    auto graphs = canonical_connected_graphs(budget.max_vertices);
    std::vector<std::vector<std::vector<Vertex>>> auts;
    for (auto& g : graphs) auts.push_back(automorphisms(g, max_enumerated_graph));

    std::vector<GraphMorphism> out;
    for (std::size_t i = 0; i < graphs.size(); ++i)
        for (std::size_t j = 0; j < graphs.size(); ++j) {
            if (graphs[j].size() > graphs[i].size()) continue;
            std::set<std::vector<Vertex>> reps;
            for (auto& m : all_connected_epis(graphs[i], graphs[j]))
                reps.insert(orbit_representative(m.assignment(), auts[i], auts[j]));
            for (auto& r : reps) out.emplace_back(graphs[i], graphs[j], r);
        }
    seeded_shuffle(out, budget.seed, 0);
    return out;
}

std::optional<std::size_t> morphism_type(const GraphMorphism& m, const std::vector<GraphMorphism>& types) {
    const Graph& s = m.source();
    const Graph& t = m.target();
    if (s.size() > max_enumerated_graph || t.size() > max_enumerated_graph) return std::nullopt;
    CanonicalForm cs = canonical_form(s, max_enumerated_graph);
    CanonicalForm ct = canonical_form(t, max_enumerated_graph);
    std::vector<Vertex> a(s.size());
    for (Vertex x = 0; x < s.size(); ++x) a[cs.relabel[x]] = ct.relabel[m(x)];
    auto rep = orbit_representative(a, automorphisms(cs.graph, max_enumerated_graph),
                                    automorphisms(ct.graph, max_enumerated_graph));
    for (std::size_t i = 0; i < types.size(); ++i)
        if (types[i].source() == cs.graph && types[i].target() == ct.graph && types[i].assignment() == rep)
            return i;
    return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

bool is_isomorphism(const GraphMorphism& e) {
    return e.source().size() == e.target().size() && e.source().edge_count() == e.target().edge_count() &&
           is_connected_epi(e);
}

}  // namespace

bool StageLog::all_discharged() const {
    if (!obligations_complete || truncated) return false;
    return std::all_of(discharges.begin(), discharges.end(), [](const Discharge& d) { return d.d.has_value(); });
}

Tower::Tower(EnumerationBudget budget, std::vector<Graph> levels, std::vector<GraphMorphism> bondings,
             std::vector<StageLog> log)
    : budget_(budget), levels_(std::move(levels)), bondings_(std::move(bondings)), log_(std::move(log)) {
    if (levels_.empty()) throw ContractViolation("tower: at least one level is required");
    if (bondings_.size() + 1 != levels_.size()) throw ContractViolation("tower: need one bonding per stage");
    if (!log_.empty() && log_.size() != bondings_.size())
        throw ContractViolation("tower: log must have one record per stage");
}

const Graph& Tower::level(std::size_t n) const {
    if (n >= levels_.size())
        throw ContractViolation("tower level " + std::to_string(n) + " out of range 0.." + std::to_string(depth()));
    return levels_[n];
}

GraphMorphism Tower::composite(std::size_t n, std::size_t m) const {
    if (n > m) throw ContractViolation("composite bond: need n <= m");
    level(m);
    GraphMorphism out = GraphMorphism::identity(levels_[m]);
    for (std::size_t k = m; k > n; --k) out = compose(bondings_[k - 1], out);
    return out;
}

bool operator==(const Tower& a, const Tower& b) {
    if (!(a.budget_ == b.budget_) || a.levels_ != b.levels_ || a.bondings_ != b.bondings_) return false;
    if (a.log_.size() != b.log_.size()) return false;
    for (std::size_t i = 0; i < a.log_.size(); ++i) {
        const StageLog& x = a.log_[i];
        const StageLog& y = b.log_[i];
        if (x.level != y.level || x.structure_index != y.structure_index ||
            x.structure_method != y.structure_method || !(x.structure_map == y.structure_map) ||
            x.morphism_index != y.morphism_index || x.obligations_complete != y.obligations_complete ||
            x.truncated != y.truncated || x.universal != y.universal || x.notes != y.notes || x.discharges.size() != y.discharges.size() ||
            x.refinement.has_value() != y.refinement.has_value())
            return false;
        for (std::size_t j = 0; j < x.discharges.size(); ++j) {
            const Discharge& p = x.discharges[j];
            const Discharge& q = y.discharges[j];
            if (!(p.s == q.s) || p.d != q.d || p.method != q.method) return false;
        }
        if (x.refinement && (x.refinement->level != y.refinement->level ||
                             !(x.refinement->collapse == y.refinement->collapse) ||
                             !(x.refinement->projection == y.refinement->projection)))
            return false;
    }
    return true;
}

void Tower::validate() const {
    for (std::size_t n = 0; n < levels_.size(); ++n)
        if (!is_connected(levels_[n])) throw ContractViolation("tower: level " + std::to_string(n) + " is not connected");
    for (std::size_t n = 0; n < bondings_.size(); ++n) {
        const GraphMorphism& b = bondings_[n];
        if (!(b.source() == levels_[n + 1]) || !(b.target() == levels_[n]))
            throw ContractViolation("tower: bonding " + std::to_string(n) + " does not match its levels");
        if (!is_connected_epi(b))
            throw ContractViolation("tower: bonding " + std::to_string(n) + " is not a connected epimorphism");
    }
    if (log_.empty()) return;
    auto graphs = enumerate_graphs(budget_);
    auto morphs = enumerate_morphisms(budget_);
    for (std::size_t n = 0; n < log_.size(); ++n) {
        const StageLog& st = log_[n];
        const std::string where = "tower log stage " + std::to_string(n + 1) + ": ";
        if (st.level != n + 1) throw ContractViolation(where + "wrong level number");
        if (st.structure_index >= graphs.size() || st.morphism_index >= morphs.size())
            throw ContractViolation(where + "index outside the enumerated lists");
        const Graph& a = graphs[st.structure_index];
        if (!st.truncated || st.structure_map.source().size() > 0) {
            if (!(st.structure_map.source() == levels_[n + 1]) || !(st.structure_map.target() == a) ||
                !is_connected_epi(st.structure_map))
                throw ContractViolation(where + "structure map is not a connected epi onto the scheduled graph");
        }
        const GraphMorphism& e = morphs[st.morphism_index];
        if (st.universal && !is_isomorphism(e))
            throw ContractViolation(where + "universal discharge recorded for a non-isomorphism");
        for (const Discharge& d : st.discharges) {
            if (!(d.s.source() == levels_[n]) || !(d.s.target() == e.target()) || !is_connected_epi(d.s))
                throw ContractViolation(where + "obligation is not a connected epi onto the scheduled target");
            if (!d.d) continue;
            if (!(d.d->source() == levels_[n + 1]) || !is_connected_epi(*d.d) ||
                compose(d.s, bondings_[n]).assignment() != compose(e, *d.d).assignment())
                throw ContractViolation(where + "recorded discharge does not satisfy s∘t == e∘d");
        }
        if (st.refinement) {
            const RefinementRecord& r = *st.refinement;
            if (r.level > n || !(r.collapse.target() == levels_[r.level]) || !is_connected_epi(r.collapse) ||
                !(r.projection.source() == levels_[n + 1]) || !(r.projection.target() == r.collapse.source()) ||
                compose(r.collapse, r.projection).assignment() != composite(r.level, n + 1).assignment())
                throw ContractViolation(where + "refinement record does not factor the composite bond");
        }
    }
}

// ---------------------------------------------------------------------------

namespace {

std::size_t persisting_triangles(const Graph& top, const GraphMorphism& down) {
    const Graph& low = down.target();
    std::size_t count = 0;
    for (auto [u, v] : top.edges())
        for (Vertex w : top.neighbors(v)) {
            if (w <= v || !top.has_edge(u, w)) continue;
            Vertex a = down(u), b = down(v), c = down(w);
            if (low.has_edge(a, b) && low.has_edge(b, c) && low.has_edge(a, c)) ++count;
        }
    return count;
}

// Level under construction: the graph H' with its map to the previous level
// and every morphism out of it that the stage has recorded so far.
struct Working {
    Graph graph;
    GraphMorphism to_prev;
    std::optional<GraphMorphism> structure;
    std::vector<Discharge> discharges;

    // Pulls everything back along a new projection D -> graph.
    void pull_back(const GraphMorphism& p) {
        to_prev = compose(to_prev, p);
        if (structure) structure = compose(*structure, p);
        for (auto& d : discharges)
            if (d.d) d.d = compose(*d.d, p);
        graph = p.source();
    }
};

GraphMorphism retarget_source(const GraphMorphism& m, const Graph& source) {
    return GraphMorphism(source, m.target(), m.assignment());
}

class TowerBuilder {
public:
    explicit TowerBuilder(const EnumerationBudget& b)
        : budget_(b), graphs_(enumerate_graphs(b)), morphs_(enumerate_morphisms(b)) {}

    TowerBuilder(const Tower& t)
        : budget_(t.budget()), graphs_(enumerate_graphs(t.budget())), morphs_(enumerate_morphisms(t.budget())),
          levels_(t.levels()), bonds_(t.bondings()), log_(t.log()) {}

    Tower build(std::size_t depth) {
        if (levels_.empty()) levels_.push_back(graphs_.front());
        while (levels_.size() <= depth) stage(levels_.size());
        return Tower(budget_, levels_, bonds_, log_);
    }

private:
    GraphMorphism composite(std::size_t n, std::size_t m) const {
        GraphMorphism out = GraphMorphism::identity(levels_[m]);
        for (std::size_t k = m; k > n; --k) out = compose(bonds_[k - 1], out);
        return out;
    }

    bool fits(const Graph& g, StageLog& st, const std::string& what) {
        if (g.size() <= budget_.size_cap) return true;
        st.truncated = true;
        st.notes.push_back(what + " would have " + std::to_string(g.size()) + " vertices, above the size cap " +
                           std::to_string(budget_.size_cap));
        return false;
    }

    void structure_step(std::size_t k, Working& w, StageLog& st) {
        st.structure_index = k % graphs_.size();
        const Graph& a = graphs_[st.structure_index];
        ConnectedEpiSearch search(w.graph, a);
        search.set_node_limit(budget_.search_nodes);
        if (auto m = search.first()) {
            st.structure_method = "direct";
            w.structure = *m;
            return;
        }
        st.structure_method = "product";
        Graph pt = Graph::point();
        AmalgamSquare sq = prune_amalgam(fiber_product(GraphMorphism::to_point(w.graph, pt), GraphMorphism::to_point(a, pt)));
        if (!fits(sq.apex(), st, "product with the scheduled graph")) return;
        w.pull_back(sq.f_prime);
        w.structure = sq.g_prime;
    }

    void morphism_step(std::size_t k, Working& w, StageLog& st) {
        st.morphism_index = (k - 1) % morphs_.size();
        const GraphMorphism& e = morphs_[st.morphism_index];
        if (is_isomorphism(e)) {
            st.universal = true;
            return;
        }
        const Graph& prev = levels_[k - 1];
        ConnectedEpiSearch obligations(prev, e.target());
        obligations.enumerate([&](const GraphMorphism& s) {
            if (w.discharges.size() == budget_.max_obligations) {
                st.obligations_complete = false;
                st.notes.push_back("stopped after " + std::to_string(budget_.max_obligations) + " obligations");
                return false;
            }
            GraphMorphism required = compose(s, w.to_prev);
            if (auto d = find_lift(required, e, budget_.search_nodes)) {
                w.discharges.push_back({s, *d, "lift"});
                return true;
            }
            AmalgamSquare sq = prune_amalgam(fiber_product(required, e));
            if (!fits(sq.apex(), st, "amalgam for an obligation")) {
                w.discharges.push_back({s, std::nullopt, "skipped"});
                return true;
            }
            w.pull_back(sq.f_prime);
            w.discharges.push_back({s, sq.g_prime, "amalgam"});
            return true;
        });
    }

    void refinement_step(std::size_t k, Working& w, StageLog& st) {
        if (budget_.refine_period == 0 || k % budget_.refine_period != 0) return;
        for (std::size_t j = 0; j < k; ++j) {
            GraphMorphism down = compose(composite(j, k - 1), w.to_prev);
            if (persisting_triangles(w.graph, down) == 0) continue;
            const Graph& lj = levels_[j];
            // Send each midpoint to the endpoint whose fiber is cheaper to
            // enlarge; gamma 1 keeps it at the earlier endpoint.
            std::vector<std::size_t> weight(lj.size(), 0);
            for (Vertex v : down.assignment()) ++weight[v];
            std::vector<std::size_t> gamma;
            for (auto [u, v] : lj.edges()) gamma.push_back(weight[u] <= weight[v] ? 1 : 0);
            GraphMorphism collapse = collapse_map(lj, 1, gamma);
            AmalgamSquare sq = prune_amalgam(fiber_product(down, collapse));
            if (sq.apex().size() > budget_.size_cap) {
                // Not a saturation obligation, so the stage is not truncated.
                st.notes.push_back("refinement over level " + std::to_string(j) + " skipped: " +
                                   std::to_string(sq.apex().size()) + " vertices exceed the size cap");
                return;
            }
            w.pull_back(sq.f_prime);
            st.refinement = RefinementRecord{j, collapse, sq.g_prime};
            return;
        }
    }

    void stage(std::size_t k) {
        StageLog st;
        st.level = k;
        const Graph& prev = levels_[k - 1];
        Working w{prev, GraphMorphism::identity(prev), std::nullopt, {}};
        structure_step(k, w, st);
        morphism_step(k, w, st);
        refinement_step(k, w, st);

        // Levels carry plain numeric identifiers; the bonds keep the structure.
        std::vector<std::string> names;
        for (std::size_t i = 0; i < w.graph.size(); ++i) names.push_back(std::to_string(i));
        Graph level = w.graph.renamed(std::move(names));
        bonds_.push_back(retarget_source(w.to_prev, level));
        if (w.structure) {
            st.structure_map = retarget_source(*w.structure, level);
        } else {
            st.structure_map = GraphMorphism(Graph(), graphs_[st.structure_index], {});
        }
        for (auto& d : w.discharges)
            if (d.d) d.d = retarget_source(*d.d, level);
        st.discharges = std::move(w.discharges);
        if (st.refinement) st.refinement->projection = retarget_source(st.refinement->projection, level);
        levels_.push_back(level);
        log_.push_back(std::move(st));
    }

    EnumerationBudget budget_;
    std::vector<Graph> graphs_;
    std::vector<GraphMorphism> morphs_;
    std::vector<Graph> levels_;
    std::vector<GraphMorphism> bonds_;
    std::vector<StageLog> log_;
};

}  // namespace

Tower build_generic_tower(const EnumerationBudget& budget) {
    budget.validate();
    return TowerBuilder(budget).build(budget.max_depth);
}

Tower extend(const Tower& tower, std::size_t new_depth) {
    if (new_depth < tower.depth()) throw ContractViolation("extend: new depth is below the current depth");
    Tower out = TowerBuilder(tower).build(new_depth);
    out.budget_.max_depth = std::max(out.budget_.max_depth, new_depth);
    return out;
}

// ---------------------------------------------------------------------------

Witness extension_witness(const Tower& tower, std::size_t n, const GraphMorphism& f, const GraphMorphism& g) {
    const Graph& ln = tower.level(n);
    if (!(f.source() == ln)) throw ContractViolation("extension_witness: f does not start at level " + std::to_string(n));
    if (!(f.target() == g.target())) throw ContractViolation("extension_witness: f and g have different targets");
    if (!is_connected_epi(f)) throw ContractViolation("extension_witness: f is not a connected epimorphism");
    if (!is_connected_epi(g)) throw ContractViolation("extension_witness: g is not a connected epimorphism");

    bool limited = false;
    GraphMorphism down = GraphMorphism::identity(ln);
    for (std::size_t m = n; m <= tower.depth(); ++m) {
        if (m > n) down = compose(down, tower.bondings()[m - 1]);
        SearchOutcome outcome;
        if (auto h = find_lift(compose(f, down), g, tower.budget().search_nodes, &outcome)) return {m, *h};
        limited = limited || outcome == SearchOutcome::node_limit;
    }

    std::string msg = "no extension witness between level " + std::to_string(n) + " and depth " +
                      std::to_string(tower.depth());
    if (g.source().size() > tower.budget().max_vertices) {
        msg += "; g has " + std::to_string(g.source().size()) +
               " source vertices, more than the enumerated graphs, so no scheduled obligation covers it";
    } else if (auto type = morphism_type(g, enumerate_morphisms(tower.budget()))) {
        std::vector<std::size_t> stages;
        for (const auto& st : tower.log())
            if (st.morphism_index == *type) stages.push_back(st.level);
        if (stages.empty()) {
            msg += "; the type of g was not scheduled at any stage";
        } else {
            msg += "; the type of g was scheduled at stage(s)";
            for (auto s : stages) msg += " " + std::to_string(s);
        }
    }
    if (limited) msg += "; some searches stopped at the node limit";
    throw WitnessNotFound(msg);
}

Intertwiner back_and_forth(const Tower& t1, const Tower& t2, std::size_t rounds) {
    Intertwiner it;
    if (rounds == 0) return it;
    auto fail = [&](const WitnessNotFound& e, const std::string& step) {
        throw PartialIntertwiner(step + ": " + e.what(), it);
    };
    Graph pt = Graph::point();
    const Graph& k0 = t1.level(0);
    try {
        Witness w = extension_witness(t2, 0, GraphMorphism::to_point(t2.level(0), pt), GraphMorphism::to_point(k0, pt));
        it.k.push_back(0);
        it.l.push_back(w.level);
        it.maps.push_back(w.map);
    } catch (const WitnessNotFound& e) {
        fail(e, "h_0");
    }
    for (std::size_t i = 0; i < rounds; ++i) {
        const std::size_t ki = it.k.back();
        const std::size_t li = it.l.back();
        if (ki + 1 > t1.depth()) throw PartialIntertwiner("first tower too shallow for round " + std::to_string(i), it);
        try {
            Witness w = extension_witness(t1, ki + 1, t1.bondings()[ki], it.maps.back());
            it.k.push_back(w.level);
            it.maps.push_back(w.map);
        } catch (const WitnessNotFound& e) {
            fail(e, "h_" + std::to_string(2 * i + 1));
        }
        if (li + 1 > t2.depth()) throw PartialIntertwiner("second tower too shallow for round " + std::to_string(i), it);
        try {
            Witness w = extension_witness(t2, li + 1, t2.bondings()[li], it.maps.back());
            it.l.push_back(w.level);
            it.maps.push_back(w.map);
        } catch (const WitnessNotFound& e) {
            fail(e, "h_" + std::to_string(2 * i + 2));
        }
    }
    return it;
}

void verify_intertwiner(const Tower& t1, const Tower& t2, const Intertwiner& it) {
    for (std::size_t i = 0; i < it.maps.size(); ++i)
        if (!is_connected_epi(it.maps[i]))
            throw ContractViolation("intertwiner: h_" + std::to_string(i) + " is not a connected epimorphism");
    for (std::size_t i = 1; i < it.k.size(); ++i)
        if (it.k[i] <= it.k[i - 1]) throw ContractViolation("intertwiner: first anchors are not increasing");
    for (std::size_t i = 1; i < it.l.size(); ++i)
        if (it.l[i] <= it.l[i - 1]) throw ContractViolation("intertwiner: second anchors are not increasing");
    for (std::size_t j = 0; j + 1 < it.maps.size(); ++j) {
        GraphMorphism lhs = compose(it.maps[j], it.maps[j + 1]);
        const std::size_t i = j / 2;
        GraphMorphism rhs = j % 2 == 0 ? t1.composite(it.k.at(i), it.k.at(i + 1)) : t2.composite(it.l.at(i), it.l.at(i + 1));
        if (!(lhs == rhs))
            throw ContractViolation("intertwiner: h_" + std::to_string(j) + " ∘ h_" + std::to_string(j + 1) +
                                    " differs from the composite bond");
    }
}

std::size_t triangle_persistence(const Tower& tower, std::size_t n, std::size_t m) {
    if (n > m) throw ContractViolation("triangle_persistence: need n <= m");
    return persisting_triangles(tower.level(m), tower.composite(n, m));
}

// ---------------------------------------------------------------------------

void PlainTower::validate() const {
    if (levels.empty()) throw ContractViolation("target tower: at least one level is required");
    if (bondings.size() + 1 != levels.size()) throw ContractViolation("target tower: need one bonding per stage");
    for (std::size_t i = 0; i < levels.size(); ++i)
        if (!is_connected(levels[i])) throw ContractViolation("target tower: level " + std::to_string(i) + " is not connected");
    for (std::size_t i = 0; i < bondings.size(); ++i) {
        if (!(bondings[i].source() == levels[i + 1]) || !(bondings[i].target() == levels[i]))
            throw ContractViolation("target tower: bonding " + std::to_string(i) + " does not match its levels");
        if (!is_connected_epi(bondings[i]))
            throw ContractViolation("target tower: bonding " + std::to_string(i) + " is not a connected epimorphism");
    }
}

OpenTowerMap open_tower_map(const Tower& source, const PlainTower& target) {
    target.validate();
    OpenTowerMap out;
    Graph pt = Graph::point();
    try {
        Witness w = extension_witness(source, 0, GraphMorphism::to_point(source.level(0), pt),
                                      GraphMorphism::to_point(target.levels[0], pt));
        out.levels.push_back(w.level);
        out.maps.push_back(w.map);
    } catch (const WitnessNotFound& e) {
        throw WitnessNotFound(std::string("open_tower_map: no map onto target level 0: ") + e.what());
    }
    for (std::size_t i = 0; i + 1 < target.levels.size(); ++i) {
        const std::size_t n = out.levels.back();
        AmalgamSquare sq = amalgamate(out.maps.back(), target.bondings[i]);
        if (n + 1 > source.depth())
            throw WitnessNotFound("open_tower_map: source tower ends before target level " + std::to_string(i + 1) +
                                  "; built " + std::to_string(out.maps.size()) + " maps");
        try {
            Witness w = extension_witness(source, n + 1, source.bondings()[n], sq.f_prime);
            out.levels.push_back(w.level);
            out.maps.push_back(compose(sq.g_prime, w.map));
            out.squares.push_back(std::move(sq));
        } catch (const WitnessNotFound& e) {
            throw WitnessNotFound("open_tower_map: no lift into the amalgam at target level " + std::to_string(i + 1) +
                                  " (built " + std::to_string(out.maps.size()) + " maps): " + e.what());
        }
    }
    return out;
}

bool verify_openness_claim(const Tower& source, const PlainTower& target, const OpenTowerMap& map, std::size_t i) {
    if (i >= map.squares.size() || i + 1 >= map.maps.size() || i + 1 >= map.levels.size()) return false;
    const AmalgamSquare& sq = map.squares[i];
    const GraphMorphism& hi = map.maps[i];
    const GraphMorphism& hn = map.maps[i + 1];
    const GraphMorphism& g = target.bondings.at(i);
    if (!(sq.f == hi) || !(sq.g == g)) return false;
    if (!is_homomorphism(sq.f_prime) || !is_homomorphism(sq.g_prime)) return false;
    if (compose(sq.f, sq.f_prime).assignment() != compose(sq.g, sq.g_prime).assignment()) return false;
    if (!is_exact(sq)) return false;

    GraphMorphism t = source.composite(map.levels[i], map.levels[i + 1]);
    if (compose(g, hn).assignment() != compose(hi, t).assignment()) return false;
    // h_{i+1}(t^{-1}(a)) == g^{-1}(h_i(a)) for every a
    const Graph& low = source.level(map.levels[i]);
    std::vector<std::set<Vertex>> image(low.size());
    for (Vertex x = 0; x < t.source().size(); ++x) image[t(x)].insert(hn(x));
    for (Vertex a = 0; a < low.size(); ++a) {
        auto fib = g.fiber(hi(a));
        if (!std::equal(image[a].begin(), image[a].end(), fib.begin(), fib.end())) return false;
    }
    return true;
}

PlainTower clique_fiber_subtower(const Tower& source, const PlainTower& target, const OpenTowerMap& map,
                                 const std::vector<std::vector<Vertex>>& thread) {
    if (thread.size() != map.maps.size())
        throw ContractViolation("clique_fiber_subtower: need one clique per constructed map");
    for (std::size_t i = 0; i < thread.size(); ++i) {
        const Graph& k = target.levels.at(i);
        if (thread[i].empty()) throw ContractViolation("clique_fiber_subtower: empty clique at level " + std::to_string(i));
        for (Vertex a : thread[i])
            for (Vertex b : thread[i])
                if (a >= k.size() || b >= k.size() || !k.adjacent(a, b))
                    throw ContractViolation("clique_fiber_subtower: thread entry " + std::to_string(i) + " is not a clique");
        if (i > 0) {
            std::set<Vertex> img;
            for (Vertex a : thread[i]) img.insert(target.bondings[i - 1](a));
            if (img != std::set<Vertex>(thread[i - 1].begin(), thread[i - 1].end()))
                throw ContractViolation("clique_fiber_subtower: bond does not carry clique " + std::to_string(i) +
                                        " onto clique " + std::to_string(i - 1));
        }
    }

    PlainTower out;
    std::vector<std::vector<Vertex>> members;
    for (std::size_t i = 0; i < thread.size(); ++i) {
        members.push_back(map.maps[i].preimage(thread[i]));
        out.levels.push_back(source.level(map.levels[i]).induced(members.back()));
        if (!is_connected(out.levels.back()))
            throw ContractViolation("clique_fiber_subtower: preimage at level " + std::to_string(i) + " is not connected");
    }
    for (std::size_t i = 0; i + 1 < thread.size(); ++i) {
        GraphMorphism t = source.composite(map.levels[i], map.levels[i + 1]);
        std::vector<Vertex> pos(t.target().size(), SIZE_MAX);
        for (Vertex j = 0; j < members[i].size(); ++j) pos[members[i][j]] = j;
        std::vector<Vertex> a;
        for (Vertex x : members[i + 1]) {
            if (pos[t(x)] == SIZE_MAX)
                throw ContractViolation("clique_fiber_subtower: bond leaves the preimage at level " + std::to_string(i));
            a.push_back(pos[t(x)]);
        }
        GraphMorphism r(out.levels[i + 1], out.levels[i], std::move(a));
        if (!is_connected_epi(r))
            throw ContractViolation("clique_fiber_subtower: restricted bond " + std::to_string(i) +
                                    " is not a connected epimorphism");
        out.bondings.push_back(std::move(r));
    }
    return out;
}

}  // namespace fraisse
