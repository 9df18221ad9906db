#include "fraisse/graph.hpp"

#include "fraisse/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace fraisse {

std::shared_ptr<const Graph::Data> Graph::build(std::vector<std::string> names,
                                                const std::vector<Edge>& edges) {
    auto d = std::make_shared<Data>();
    const std::size_t n = names.size();
    d->names = std::move(names);
    d->index.reserve(n);
    for (Vertex v = 0; v < n; ++v) {
        if (!d->index.emplace(d->names[v], v).second)
            throw ContractViolation("duplicate vertex identifier '" + d->names[v] + "'");
    }
    d->adj.assign(n * n, 0);
    for (Vertex v = 0; v < n; ++v) d->adj[v * n + v] = 1;
    std::set<Edge> unique;
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) throw ContractViolation("edge endpoint out of range");
        if (u == v) throw ContractViolation("loop on vertex '" + d->names[u] + "' (loops are implicit)");
        if (u > v) std::swap(u, v);
        unique.emplace(u, v);
    }
    d->nbrs.assign(n, {});
    for (auto [u, v] : unique) {
        d->adj[u * n + v] = d->adj[v * n + u] = 1;
        d->nbrs[u].push_back(v);
        d->nbrs[v].push_back(u);
    }
    for (auto& nb : d->nbrs) std::sort(nb.begin(), nb.end());
    d->edges.assign(unique.begin(), unique.end());
    return d;
}

Graph::Graph() : d_(build({}, {})) {}

Graph::Graph(std::vector<std::string> vertices,
             const std::vector<std::pair<std::string, std::string>>& edges) {
    std::unordered_map<std::string, Vertex> idx;
    for (Vertex v = 0; v < vertices.size(); ++v) idx.emplace(vertices[v], v);
    std::vector<Edge> e;
    e.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto ia = idx.find(a), ib = idx.find(b);
        if (ia == idx.end() || ib == idx.end())
            throw ContractViolation("edge {" + a + "," + b + "} has an endpoint outside the vertex set");
        e.emplace_back(ia->second, ib->second);
    }
    d_ = build(std::move(vertices), e);
}

Graph Graph::from_indices(std::vector<std::string> vertices, const std::vector<Edge>& edges) {
    return Graph(build(std::move(vertices), edges));
}

Graph Graph::numbered(std::size_t n, const std::vector<Edge>& edges) {
    std::vector<std::string> names(n);
    for (std::size_t i = 0; i < n; ++i) names[i] = std::to_string(i);
    return from_indices(std::move(names), edges);
}

Graph Graph::complete(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return numbered(n, e);
}

Graph Graph::path(std::size_t n) {
    std::vector<Edge> e;
    for (Vertex v = 1; v < n; ++v) e.emplace_back(v - 1, v);
    return numbered(n, e);
}

Graph Graph::cycle(std::size_t n) {
    if (n < 3) throw ContractViolation("a cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (Vertex v = 0; v < n; ++v) e.emplace_back(v, (v + 1) % n);
    return numbered(n, e);
}

std::optional<Vertex> Graph::find(std::string_view name) const {
    auto it = d_->index.find(std::string(name));
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

Vertex Graph::index_of(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw ContractViolation("unknown vertex '" + std::string(name) + "'");
}

Graph Graph::induced(std::span<const Vertex> members) const {
    std::vector<std::string> names;
    names.reserve(members.size());
    std::vector<std::size_t> pos(size(), SIZE_MAX);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (members[i] >= size()) throw ContractViolation("induced: vertex out of range");
        pos[members[i]] = i;
        names.push_back(name(members[i]));
    }
    std::vector<Edge> e;
    for (auto [u, v] : edges())
        if (pos[u] != SIZE_MAX && pos[v] != SIZE_MAX) e.emplace_back(pos[u], pos[v]);
    return from_indices(std::move(names), e);
}

Graph Graph::renamed(std::vector<std::string> names) const {
    if (names.size() != size()) throw ContractViolation("renamed: wrong number of identifiers");
    return from_indices(std::move(names), edges());
}

bool operator==(const Graph& a, const Graph& b) {
    if (a.d_ == b.d_) return true;
    return a.names() == b.names() && a.edges() == b.edges();
}

// ---------------------------------------------------------------------------

GraphMorphism::GraphMorphism(Graph source, Graph target, std::vector<Vertex> assignment)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(assignment)) {
    if (map_.size() != source_.size())
        throw ContractViolation("morphism assignment is not total on the source");
    for (Vertex t : map_)
        if (t >= target_.size()) throw ContractViolation("morphism lands outside the target");
}

GraphMorphism GraphMorphism::from_names(Graph source, Graph target,
                                        const std::vector<std::pair<std::string, std::string>>& map) {
    std::vector<Vertex> a(source.size(), SIZE_MAX);
    for (const auto& [s, t] : map) {
        auto sv = source.find(s);
        if (!sv) throw ContractViolation("map key '" + s + "' is not a source vertex");
        auto tv = target.find(t);
        if (!tv) throw ContractViolation("map value '" + t + "' is not a target vertex");
        if (a[*sv] != SIZE_MAX && a[*sv] != *tv)
            throw ContractViolation("source vertex '" + s + "' mapped twice");
        a[*sv] = *tv;
    }
    for (Vertex v = 0; v < a.size(); ++v)
        if (a[v] == SIZE_MAX) throw ContractViolation("source vertex '" + source.name(v) + "' is unmapped");
    return GraphMorphism(std::move(source), std::move(target), std::move(a));
}

GraphMorphism GraphMorphism::identity(const Graph& g) {
    std::vector<Vertex> a(g.size());
    std::iota(a.begin(), a.end(), Vertex{0});
    return GraphMorphism(g, g, std::move(a));
}

GraphMorphism GraphMorphism::to_point(const Graph& g, const Graph& point) {
    if (point.size() != 1) throw ContractViolation("to_point: target must have exactly one vertex");
    return GraphMorphism(g, point, std::vector<Vertex>(g.size(), 0));
}

std::vector<Vertex> GraphMorphism::fiber(Vertex t) const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < map_.size(); ++v)
        if (map_[v] == t) out.push_back(v);
    return out;
}

std::vector<Vertex> GraphMorphism::preimage(std::span<const Vertex> targets) const {
    std::vector<char> in(target_.size(), 0);
    for (Vertex t : targets) in.at(t) = 1;
    std::vector<Vertex> out;
    for (Vertex v = 0; v < map_.size(); ++v)
        if (in[map_[v]]) out.push_back(v);
    return out;
}

bool operator==(const GraphMorphism& a, const GraphMorphism& b) {
    return a.map_ == b.map_ && a.source_ == b.source_ && a.target_ == b.target_;
}

GraphMorphism compose(const GraphMorphism& outer, const GraphMorphism& inner) {
    if (!(inner.target() == outer.source()))
        throw ContractViolation("compose: inner target differs from outer source");
    std::vector<Vertex> a(inner.source().size());
    for (Vertex v = 0; v < a.size(); ++v) a[v] = outer(inner(v));
    return GraphMorphism(inner.source(), outer.target(), std::move(a));
}

// ---------------------------------------------------------------------------

VertexSubset::VertexSubset(Graph g, std::vector<Vertex> m) : ambient(std::move(g)), members(std::move(m)) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.back() >= ambient.size())
        throw ContractViolation("subset member outside the ambient graph");
}

VertexSubset VertexSubset::from_names(Graph g, const std::vector<std::string>& names) {
    std::vector<Vertex> m;
    for (const auto& n : names) {
        auto v = g.find(n);
        if (!v) throw ContractViolation("subset member '" + n + "' is not a vertex of the ambient graph");
        m.push_back(*v);
    }
    return VertexSubset(std::move(g), std::move(m));
}

namespace {

// Size of the component of `start` inside the vertices flagged in `in`.
std::size_t reach(const Graph& g, const std::vector<char>& in, Vertex start) {
    std::vector<char> seen(g.size(), 0);
    std::vector<Vertex> stack{start};
    seen[start] = 1;
    std::size_t count = 0;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        ++count;
        for (Vertex u : g.neighbors(v))
            if (in[u] && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    return count;
}

bool connected_within(const Graph& g, std::span<const Vertex> members) {
    if (members.empty()) return false;
    std::vector<char> in(g.size(), 0);
    for (Vertex v : members) in[v] = 1;
    return reach(g, in, members.front()) == members.size();
}

}  // namespace

bool is_connected_subset(const VertexSubset& s) { return connected_within(s.ambient, s.members); }

bool is_connected(const Graph& g) {
    std::vector<Vertex> all(g.size());
    std::iota(all.begin(), all.end(), Vertex{0});
    return connected_within(g, all);
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
    std::vector<std::vector<Vertex>> out;
    std::vector<char> seen(g.size(), 0);
    for (Vertex s = 0; s < g.size(); ++s) {
        if (seen[s]) continue;
        std::vector<Vertex> block, stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            block.push_back(v);
            for (Vertex u : g.neighbors(v))
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
        }
        std::sort(block.begin(), block.end());
        out.push_back(std::move(block));
    }
    return out;
}

bool is_homomorphism(const GraphMorphism& m) {
    for (auto [u, v] : m.source().edges())
        if (!m.target().adjacent(m(u), m(v))) return false;
    return true;
}

bool is_epimorphism(const GraphMorphism& m) {
    if (!is_homomorphism(m)) throw ContractViolation("is_epimorphism: map is not a homomorphism");
    const Graph& t = m.target();
    std::vector<char> hit(t.size(), 0);
    for (Vertex v : m.assignment()) hit[v] = 1;
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
    std::vector<char> covered(t.size() * t.size(), 0);
    for (auto [u, v] : m.source().edges()) {
        Vertex a = m(u), b = m(v);
        covered[a * t.size() + b] = covered[b * t.size() + a] = 1;
    }
    for (auto [a, b] : t.edges())
        if (!covered[a * t.size() + b]) return false;
    return true;
}

bool is_connected_epi(const GraphMorphism& m) {
    if (!is_homomorphism(m) || !is_epimorphism(m)) return false;
    std::vector<std::vector<Vertex>> fibers(m.target().size());
    for (Vertex v = 0; v < m.source().size(); ++v) fibers[m(v)].push_back(v);
    for (const auto& f : fibers)
        if (!connected_within(m.source(), f)) return false;
    return true;
}

bool is_induced_embedding(const GraphMorphism& m) {
    const auto& a = m.assignment();
    std::vector<char> used(m.target().size(), 0);
    for (Vertex t : a) {
        if (used[t]) return false;
        used[t] = 1;
    }
    const Graph& s = m.source();
    for (Vertex u = 0; u < s.size(); ++u)
        for (Vertex v = u + 1; v < s.size(); ++v)
            if (s.adjacent(u, v) != m.target().adjacent(a[u], a[v])) return false;
    return true;
}

namespace {

void extend_clique(const Graph& g, std::vector<Vertex>& candidates, std::size_t depth, std::size_t& best) {
    best = std::max(best, depth);
    if (depth + candidates.size() <= best) return;
    while (!candidates.empty()) {
        if (depth + candidates.size() <= best) return;
        Vertex v = candidates.back();
        candidates.pop_back();
        std::vector<Vertex> next;
        for (Vertex u : candidates)
            if (g.has_edge(u, v)) next.push_back(u);
        extend_clique(g, next, depth + 1, best);
    }
}

}  // namespace

std::size_t max_clique_size(const Graph& g) {
    if (g.empty()) throw ContractViolation("max_clique_size: empty graph");
    std::vector<Vertex> all(g.size());
    std::iota(all.begin(), all.end(), Vertex{0});
    std::size_t best = 0;
    extend_clique(g, all, 0, best);
    return best;
}

std::size_t triangle_count(const Graph& g) {
    std::size_t count = 0;
    for (auto [u, v] : g.edges())
        for (Vertex w : g.neighbors(v))
            if (w > v && g.has_edge(u, w)) ++count;
    return count;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t max_code_vertices = 11;  // 55 pair bits fit in 64

std::uint64_t adjacency_code(const Graph& g, const std::vector<Vertex>& perm) {
    const std::size_t n = g.size();
    const std::size_t pairs = n * (n - 1) / 2;
    std::uint64_t code = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j, ++idx)
            if (g.adjacent(perm[i], perm[j])) code |= std::uint64_t{1} << (pairs - 1 - idx);
    return code;
}

void check_bound(const Graph& g, std::size_t bound) {
    if (bound > max_code_vertices)
        throw ContractViolation("canonicalization bound may not exceed " + std::to_string(max_code_vertices));
    if (g.size() > bound)
        throw ResourceLimit("graph has " + std::to_string(g.size()) +
                            " vertices, above the canonicalization bound " + std::to_string(bound));
}

}  // namespace

CanonicalForm canonical_form(const Graph& g, std::size_t bound) {
    check_bound(g, bound);
    const std::size_t n = g.size();
    std::vector<Vertex> perm(n), best_perm;
    std::iota(perm.begin(), perm.end(), Vertex{0});
    std::uint64_t best = UINT64_MAX;
    do {
        std::uint64_t c = adjacency_code(g, perm);
        if (c < best) {
            best = c;
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) best = 0;

    CanonicalForm out;
    out.code = best;
    out.relabel.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) out.relabel[best_perm[i]] = i;
    std::vector<Edge> e;
    for (auto [u, v] : g.edges()) e.emplace_back(out.relabel[u], out.relabel[v]);
    out.graph = Graph::numbered(n, e);
    return out;
}

bool is_isomorphic(const Graph& a, const Graph& b, std::size_t bound) {
    check_bound(a, bound);
    check_bound(b, bound);
    if (a.size() != b.size() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a, bound).code == canonical_form(b, bound).code;
}

std::vector<std::vector<Vertex>> automorphisms(const Graph& g, std::size_t bound) {
    check_bound(g, bound);
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> perm(g.size());
    std::iota(perm.begin(), perm.end(), Vertex{0});
    do {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if (!g.adjacent(perm[u], perm[v])) {
                ok = false;
                break;
            }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace fraisse
