#pragma once

// Finite reflexive graphs and the maps between them.
//
// Reflexive loops are implicit: every vertex is adjacent to itself, but only
// edges between distinct vertices are stored. Vertices carry opaque string
// identifiers; internally they are addressed by their position in the
// vertex list.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace fraisse {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

class Graph {
public:
    /// The empty graph.
    Graph();

    /// Builds a graph from named vertices and edges. Throws ContractViolation on
    /// duplicate identifiers, unknown endpoints, or loops.
    Graph(std::vector<std::string> vertices,
          const std::vector<std::pair<std::string, std::string>>& edges);

    /// Index-based construction; edges may be given in either orientation and
    /// may repeat.
    static Graph from_indices(std::vector<std::string> vertices, const std::vector<Edge>& edges);

    /// Vertices named "0", "1", ... .
    static Graph numbered(std::size_t n, const std::vector<Edge>& edges);
    static Graph complete(std::size_t n);
    static Graph path(std::size_t n);
    static Graph cycle(std::size_t n);
    static Graph point() { return numbered(1, {}); }

    std::size_t size() const noexcept { return d_->names.size(); }
    bool empty() const noexcept { return size() == 0; }
    const std::string& name(Vertex v) const { return d_->names.at(v); }
    const std::vector<std::string>& names() const noexcept { return d_->names; }
    std::optional<Vertex> find(std::string_view name) const;
    /// Throws ContractViolation if absent.
    Vertex index_of(std::string_view name) const;

    /// Reflexive adjacency: true for u == v.
    bool adjacent(Vertex u, Vertex v) const noexcept { return d_->adj[u * size() + v] != 0; }
    /// Stored edge between distinct vertices.
    bool has_edge(Vertex u, Vertex v) const noexcept { return u != v && adjacent(u, v); }
    /// Neighbors excluding the vertex itself, ascending.
    const std::vector<Vertex>& neighbors(Vertex v) const { return d_->nbrs.at(v); }
    /// Edges (u, v) with u < v, sorted.
    const std::vector<Edge>& edges() const noexcept { return d_->edges; }
    std::size_t edge_count() const noexcept { return d_->edges.size(); }

    /// Induced subgraph on the given vertices, kept in the given order.
    Graph induced(std::span<const Vertex> members) const;
    /// Same structure with new identifiers.
    Graph renamed(std::vector<std::string> names) const;

    friend bool operator==(const Graph& a, const Graph& b);

private:
    struct Data {
        std::vector<std::string> names;
        std::unordered_map<std::string, Vertex> index;
        std::vector<std::uint8_t> adj;
        std::vector<std::vector<Vertex>> nbrs;
        std::vector<Edge> edges;
    };
    explicit Graph(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    static std::shared_ptr<const Data> build(std::vector<std::string> names, const std::vector<Edge>& edges);

    std::shared_ptr<const Data> d_;
};

/// A total vertex map between two graphs. Nothing beyond totality is implied;
/// use the predicates below to classify it.
class GraphMorphism {
public:
    GraphMorphism() = default;
    /// Throws ContractViolation unless the assignment is total and in range.
    GraphMorphism(Graph source, Graph target, std::vector<Vertex> assignment);
    /// Name-based construction; every source vertex must be mapped.
    static GraphMorphism from_names(Graph source, Graph target,
                                    const std::vector<std::pair<std::string, std::string>>& map);

    static GraphMorphism identity(const Graph& g);
    /// The constant map onto a single-vertex graph.
    static GraphMorphism to_point(const Graph& g, const Graph& point);

    const Graph& source() const noexcept { return source_; }
    const Graph& target() const noexcept { return target_; }
    const std::vector<Vertex>& assignment() const noexcept { return map_; }
    Vertex operator()(Vertex v) const { return map_.at(v); }

    /// Vertices of the source mapped onto t.
    std::vector<Vertex> fiber(Vertex t) const;
    /// Preimage of a set of target vertices.
    std::vector<Vertex> preimage(std::span<const Vertex> targets) const;

    friend bool operator==(const GraphMorphism& a, const GraphMorphism& b);

private:
    Graph source_;
    Graph target_;
    std::vector<Vertex> map_;
};

/// outer ∘ inner. Throws ContractViolation if inner.target() != outer.source().
GraphMorphism compose(const GraphMorphism& outer, const GraphMorphism& inner);

struct VertexSubset {
    /// Throws ContractViolation if a member is outside the ambient graph.
    VertexSubset(Graph ambient, std::vector<Vertex> members);
    static VertexSubset from_names(Graph ambient, const std::vector<std::string>& names);

    Graph ambient;
    std::vector<Vertex> members;  // sorted, unique
};

bool is_connected_subset(const VertexSubset& s);
bool is_connected(const Graph& g);
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

bool is_homomorphism(const GraphMorphism& m);
/// Requires a homomorphism; throws ContractViolation otherwise.
bool is_epimorphism(const GraphMorphism& m);
/// Epimorphism with connected point fibers. False for non-homomorphisms.
bool is_connected_epi(const GraphMorphism& m);
/// Injective on vertices, reflecting adjacency: an isomorphism onto an induced subgraph.
bool is_induced_embedding(const GraphMorphism& m);

/// Throws ContractViolation on the empty graph.
std::size_t max_clique_size(const Graph& g);
/// Number of 3-element cliques.
std::size_t triangle_count(const Graph& g);

inline constexpr std::size_t default_canonical_bound = 8;

struct CanonicalForm {
    Graph graph;                   // vertices "0".."n-1"
    std::vector<Vertex> relabel;   // original vertex -> canonical vertex
    std::uint64_t code = 0;        // upper-triangle adjacency bits, minimal over relabelings
};

/// Brute force over all vertex permutations. Throws ResourceLimit above the bound.
CanonicalForm canonical_form(const Graph& g, std::size_t bound = default_canonical_bound);
bool is_isomorphic(const Graph& a, const Graph& b, std::size_t bound = default_canonical_bound);
/// Every automorphism as a vertex permutation, identity first.
std::vector<std::vector<Vertex>> automorphisms(const Graph& g, std::size_t bound = default_canonical_bound);

}  // namespace fraisse
