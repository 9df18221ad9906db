#include "fraisse/graph_ops.hpp"

#include "fraisse/errors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace fraisse {

namespace {

void require_connected_epi(const GraphMorphism& m, const char* what) {
    if (!is_connected_epi(m)) throw ContractViolation(std::string(what) + " is not a connected epimorphism");
}

// Prefix that keeps `names` disjoint from `taken`; empty when already disjoint.
std::string disjoint_prefix(const std::vector<std::string>& names, const std::vector<std::string>& taken,
                            const std::string& tag) {
    std::unordered_set<std::string> used(taken.begin(), taken.end());
    std::string prefix;
    auto clashes = [&] {
        return std::any_of(names.begin(), names.end(),
                           [&](const std::string& n) { return used.count(prefix + n) > 0; });
    };
    while (clashes()) prefix = tag + (prefix.empty() ? ":" : prefix);
    return prefix;
}

}  // namespace

void validate(const AmalgamSquare& sq) {
    if (!(sq.f.target() == sq.g.target())) throw ContractViolation("square: f and g have different targets");
    if (!(sq.f_prime.target() == sq.f.source())) throw ContractViolation("square: f' does not land in B");
    if (!(sq.g_prime.target() == sq.g.source())) throw ContractViolation("square: g' does not land in C");
    if (!(sq.f_prime.source() == sq.g_prime.source())) throw ContractViolation("square: f' and g' have different domains");
    require_connected_epi(sq.f, "square: f");
    require_connected_epi(sq.g, "square: g");
    require_connected_epi(sq.f_prime, "square: f'");
    require_connected_epi(sq.g_prime, "square: g'");
    if (compose(sq.f, sq.f_prime).assignment() != compose(sq.g, sq.g_prime).assignment())
        throw ContractViolation("square does not commute: f∘f' != g∘g'");
}

std::string pair_name(const std::string& b, const std::string& c) { return "(" + b + "|" + c + ")"; }

AmalgamSquare fiber_product(const GraphMorphism& f, const GraphMorphism& g) {
    if (!(f.target() == g.target())) throw ContractViolation("amalgamate: f and g have different targets");
    const Graph& b = f.source();
    const Graph& c = g.source();
    std::vector<std::vector<Vertex>> over(f.target().size());
    for (Vertex y = 0; y < c.size(); ++y) over[g(y)].push_back(y);

    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (Vertex x = 0; x < b.size(); ++x)
        for (Vertex y : over[f(x)]) pairs.emplace_back(x, y);

    std::vector<std::string> names;
    names.reserve(pairs.size());
    for (auto [x, y] : pairs) names.push_back(pair_name(b.name(x), c.name(y)));
    std::vector<Edge> edges;
    for (Vertex i = 0; i < pairs.size(); ++i)
        for (Vertex j = i + 1; j < pairs.size(); ++j)
            if (b.adjacent(pairs[i].first, pairs[j].first) && c.adjacent(pairs[i].second, pairs[j].second))
                edges.emplace_back(i, j);
    Graph d = Graph::from_indices(std::move(names), edges);

    std::vector<Vertex> pb(pairs.size()), pc(pairs.size());
    for (Vertex i = 0; i < pairs.size(); ++i) {
        pb[i] = pairs[i].first;
        pc[i] = pairs[i].second;
    }
    return {f, g, GraphMorphism(d, b, std::move(pb)), GraphMorphism(d, c, std::move(pc))};
}

AmalgamSquare amalgamate(const GraphMorphism& f, const GraphMorphism& g) {
    if (!(f.target() == g.target())) throw ContractViolation("amalgamate: f and g have different targets");
    require_connected_epi(f, "amalgamate: f");
    require_connected_epi(g, "amalgamate: g");
    return fiber_product(f, g);
}

bool is_exact(const AmalgamSquare& sq) {
    const Graph& b = sq.f.source();
    const Graph& c = sq.g.source();
    std::vector<char> hit(b.size() * c.size(), 0);
    for (Vertex d = 0; d < sq.apex().size(); ++d) hit[sq.f_prime(d) * c.size() + sq.g_prime(d)] = 1;
    for (Vertex x = 0; x < b.size(); ++x)
        for (Vertex y = 0; y < c.size(); ++y)
            if (sq.f(x) == sq.g(y) && !hit[x * c.size() + y]) return false;
    return true;
}

namespace {

// Can v leave `alive` without breaking the fibers of p or its edge coverage?
bool removable(const Graph& d, const std::vector<char>& alive, Vertex v, const GraphMorphism& p,
               const std::vector<std::size_t>& cover) {
    const std::size_t k = p.target().size();
    // fiber of p(v) without v: non-empty and connected
    std::vector<Vertex> rest;
    for (Vertex u = 0; u < d.size(); ++u)
        if (alive[u] && u != v && p(u) == p(v)) rest.push_back(u);
    if (rest.empty()) return false;
    std::vector<char> seen(d.size(), 0);
    std::vector<Vertex> stack{rest.front()};
    seen[rest.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : d.neighbors(u))
            if (!seen[w] && alive[w] && w != v && p(w) == p(v)) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    if (reached != rest.size()) return false;
    // every target edge keeps a preimage edge
    std::vector<std::size_t> lost(k, 0);
    for (Vertex w : d.neighbors(v))
        if (alive[w] && p(w) != p(v)) ++lost[p(w)];
    for (Vertex t = 0; t < k; ++t)
        if (lost[t] && cover[p(v) * k + t] <= lost[t]) return false;
    return true;
}

std::vector<std::size_t> edge_cover(const Graph& d, const std::vector<char>& alive, const GraphMorphism& p) {
    const std::size_t k = p.target().size();
    std::vector<std::size_t> cover(k * k, 0);
    for (auto [u, w] : d.edges())
        if (alive[u] && alive[w] && p(u) != p(w)) {
            ++cover[p(u) * k + p(w)];
            ++cover[p(w) * k + p(u)];
        }
    return cover;
}

}  // namespace

AmalgamSquare prune_amalgam(const AmalgamSquare& sq) {
    const Graph& d = sq.apex();
    std::vector<char> alive(d.size(), 1);
    auto cover_b = edge_cover(d, alive, sq.f_prime);
    auto cover_c = edge_cover(d, alive, sq.g_prime);
    auto drop = [&](const GraphMorphism& p, std::vector<std::size_t>& cover, Vertex v) {
        const std::size_t k = p.target().size();
        for (Vertex w : d.neighbors(v))
            if (alive[w] && p(w) != p(v)) {
                --cover[p(v) * k + p(w)];
                --cover[p(w) * k + p(v)];
            }
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (Vertex v = d.size(); v-- > 0;) {
            if (!alive[v]) continue;
            if (!removable(d, alive, v, sq.f_prime, cover_b) || !removable(d, alive, v, sq.g_prime, cover_c)) continue;
            drop(sq.f_prime, cover_b, v);
            drop(sq.g_prime, cover_c, v);
            alive[v] = 0;
            changed = true;
        }
    }
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < d.size(); ++v)
        if (alive[v]) keep.push_back(v);
    if (keep.size() == d.size()) return sq;
    Graph small = d.induced(keep);
    std::vector<Vertex> pb, pc;
    for (Vertex v : keep) {
        pb.push_back(sq.f_prime(v));
        pc.push_back(sq.g_prime(v));
    }
    return {sq.f, sq.g, GraphMorphism(small, sq.f.source(), std::move(pb)),
            GraphMorphism(small, sq.g.source(), std::move(pc))};
}

GraphMorphism restrict_to_image(const GraphMorphism& m, std::span<const Vertex> members) {
    std::vector<Vertex> dom(members.begin(), members.end());
    std::sort(dom.begin(), dom.end());
    std::vector<Vertex> img;
    for (Vertex v : dom) img.push_back(m(v));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    std::vector<Vertex> pos(m.target().size(), SIZE_MAX);
    for (Vertex i = 0; i < img.size(); ++i) pos[img[i]] = i;
    std::vector<Vertex> a;
    a.reserve(dom.size());
    for (Vertex v : dom) a.push_back(pos[m(v)]);
    return GraphMorphism(m.source().induced(dom), m.target().induced(img), std::move(a));
}

bool is_structurally_exact(const AmalgamSquare& sq, Side side, std::size_t bound) {
    const GraphMorphism& base = side == Side::f ? sq.f : sq.g;
    const GraphMorphism& up = side == Side::f ? sq.f_prime : sq.g_prime;
    const GraphMorphism& across = side == Side::f ? sq.g_prime : sq.f_prime;
    const Graph& b = base.source();
    if (b.size() > bound)
        throw ResourceLimit("structural exactness: side graph has " + std::to_string(b.size()) +
                            " vertices, above the exhaustive bound " + std::to_string(bound));
    if (b.size() >= 63) throw ResourceLimit("structural exactness: subset enumeration overflow");

    const std::uint64_t subsets = std::uint64_t{1} << b.size();
    std::vector<Vertex> b0, d0;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
        b0.clear();
        for (Vertex v = 0; v < b.size(); ++v)
            if (mask >> v & 1) b0.push_back(v);
        // base↾B0 in the class forces B0 itself to be connected.
        if (!is_connected_subset(VertexSubset(b, b0))) continue;
        if (!is_connected_epi(restrict_to_image(base, b0))) continue;
        d0 = up.preimage(b0);
        if (!is_connected_subset(VertexSubset(sq.apex(), d0))) return false;
        if (!is_connected_epi(restrict_to_image(across, d0))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------

CylinderResult mapping_cylinder(const GraphMorphism& alpha) {
    const Graph& x = alpha.source();
    const Graph& a = alpha.target();
    if (!is_connected(a)) throw ContractViolation("mapping_cylinder: target graph is not connected");
    if (!is_homomorphism(alpha)) throw ContractViolation("mapping_cylinder: alpha is not a homomorphism");

    const std::string prefix = disjoint_prefix(x.names(), a.names(), "x");
    std::vector<std::string> names = a.names();
    for (const auto& n : x.names()) names.push_back(prefix + n);
    const std::size_t off = a.size();

    std::vector<Edge> edges = a.edges();
    for (auto [u, v] : x.edges()) edges.emplace_back(off + u, off + v);
    for (Vertex v = 0; v < x.size(); ++v) {
        std::vector<Vertex> attach{alpha(v)};
        for (Vertex w : x.neighbors(v)) attach.push_back(alpha(w));
        std::sort(attach.begin(), attach.end());
        attach.erase(std::unique(attach.begin(), attach.end()), attach.end());
        for (Vertex t : attach) edges.emplace_back(off + v, t);
    }
    Graph cyl = Graph::from_indices(std::move(names), edges);

    std::vector<Vertex> inc_a(a.size()), inc_x(x.size()), ret(cyl.size());
    std::iota(inc_a.begin(), inc_a.end(), Vertex{0});
    std::iota(inc_x.begin(), inc_x.end(), off);
    for (Vertex v = 0; v < a.size(); ++v) ret[v] = v;
    for (Vertex v = 0; v < x.size(); ++v) ret[off + v] = alpha(v);
    return {cyl, GraphMorphism(a, cyl, std::move(inc_a)), GraphMorphism(x, cyl, std::move(inc_x)),
            GraphMorphism(cyl, a, std::move(ret))};
}

GraphMorphism cylinder_extension(const GraphMorphism& g, const GraphMorphism& beta, const GraphMorphism& alpha) {
    if (!(beta.target() == g.source())) throw ContractViolation("cylinder_extension: beta does not land in the source of g");
    if (!(alpha.target() == g.target())) throw ContractViolation("cylinder_extension: alpha does not land in the target of g");
    if (!(alpha.source() == beta.source())) throw ContractViolation("cylinder_extension: alpha and beta have different domains");
    require_connected_epi(g, "cylinder_extension: g");
    if (compose(g, beta).assignment() != alpha.assignment())
        throw ContractViolation("cylinder_extension: g∘beta != alpha");

    CylinderResult cb = mapping_cylinder(beta);
    CylinderResult ca = mapping_cylinder(alpha);
    std::vector<Vertex> a(cb.cylinder.size());
    for (Vertex v = 0; v < g.source().size(); ++v) a[cb.include_a(v)] = ca.include_a(g(v));
    for (Vertex v = 0; v < beta.source().size(); ++v) a[cb.include_x(v)] = ca.include_x(v);
    return GraphMorphism(cb.cylinder, ca.cylinder, std::move(a));
}

// ---------------------------------------------------------------------------

std::string subdivision_name(const std::string& u, const std::string& v, std::size_t m) {
    return u + "~" + v + "#" + std::to_string(m);
}

Graph subdivide_edges(const Graph& a, std::size_t n) {
    if (n < 1) throw ContractViolation("subdivide_edges: n must be at least 1");
    if (!is_connected(a)) throw ContractViolation("subdivide_edges: graph is not connected");
    std::vector<std::string> names = a.names();
    std::vector<Edge> edges;
    for (auto [u, v] : a.edges()) {
        Vertex prev = u;
        for (std::size_t m = 1; m <= n; ++m) {
            names.push_back(subdivision_name(a.name(u), a.name(v), m));
            edges.emplace_back(prev, names.size() - 1);
            prev = names.size() - 1;
        }
        edges.emplace_back(prev, v);
    }
    return Graph::from_indices(std::move(names), edges);
}

GraphMorphism collapse_map(const Graph& a, std::size_t n, const std::vector<std::size_t>& gamma) {
    if (gamma.size() != a.edge_count()) throw ContractViolation("collapse_map: gamma must assign every edge");
    for (std::size_t t : gamma)
        if (t > n) throw ContractViolation("collapse_map: threshold out of range 0.." + std::to_string(n));
    Graph sub = subdivide_edges(a, n);
    std::vector<Vertex> map(sub.size());
    std::iota(map.begin(), map.begin() + a.size(), Vertex{0});
    Vertex next = a.size();
    for (std::size_t e = 0; e < a.edge_count(); ++e) {
        auto [u, v] = a.edges()[e];
        for (std::size_t m = 1; m <= n; ++m) map[next++] = m > gamma[e] ? v : u;
    }
    return GraphMorphism(sub, a, std::move(map));
}

CliqueProduct clique_product(const Graph& b, std::size_t clique_size) {
    if (clique_size < 1) throw ContractViolation("clique_product: clique size must be at least 1");
    if (!is_connected(b)) throw ContractViolation("clique_product: graph is not connected");
    Graph q = Graph::complete(clique_size);
    Graph pt = Graph::point();
    AmalgamSquare sq = fiber_product(GraphMorphism::to_point(b, pt), GraphMorphism::to_point(q, pt));
    return {sq.apex(), sq.f_prime};
}

LocalRefinement local_refinement(const GraphMorphism& f, const GraphMorphism& i) {
    if (!(f.target() == i.source())) throw ContractViolation("local_refinement: f does not land in the domain of i");
    require_connected_epi(f, "local_refinement: f");
    if (!is_induced_embedding(i)) throw ContractViolation("local_refinement: i is not an induced embedding");
    const Graph& b0 = f.source();
    const Graph& a = i.target();
    if (!is_connected(a)) throw ContractViolation("local_refinement: ambient graph is not connected");

    std::vector<char> in_image(a.size(), 0);
    for (Vertex v : i.assignment()) in_image[v] = 1;
    std::vector<Vertex> outside;
    for (Vertex v = 0; v < a.size(); ++v)
        if (!in_image[v]) outside.push_back(v);

    std::vector<std::string> outside_names;
    for (Vertex v : outside) outside_names.push_back(a.name(v));
    const std::string prefix = disjoint_prefix(outside_names, b0.names(), "a");
    std::vector<std::string> names = b0.names();
    for (const auto& n : outside_names) names.push_back(prefix + n);

    const std::size_t off = b0.size();
    std::vector<Vertex> pos(a.size(), SIZE_MAX);
    for (Vertex k = 0; k < outside.size(); ++k) pos[outside[k]] = off + k;

    std::vector<Edge> edges = b0.edges();
    for (auto [u, v] : a.edges())
        if (pos[u] != SIZE_MAX && pos[v] != SIZE_MAX) edges.emplace_back(pos[u], pos[v]);
    for (Vertex b = 0; b < b0.size(); ++b) {
        Vertex image = i(f(b));
        for (Vertex w : a.neighbors(image))
            if (pos[w] != SIZE_MAX) edges.emplace_back(b, pos[w]);
    }
    Graph refined = Graph::from_indices(std::move(names), edges);

    std::vector<Vertex> j(b0.size()), g(refined.size());
    std::iota(j.begin(), j.end(), Vertex{0});
    for (Vertex b = 0; b < b0.size(); ++b) g[b] = i(f(b));
    for (Vertex k = 0; k < outside.size(); ++k) g[off + k] = outside[k];
    return {refined, GraphMorphism(b0, refined, std::move(j)), GraphMorphism(refined, a, std::move(g))};
}

}  // namespace fraisse
