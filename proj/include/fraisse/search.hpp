#pragma once

// Backtracking search for connected epimorphisms between finite graphs.
//
// Variables are source vertices in index order and values are tried in
// ascending target order, so solutions come out lexicographically sorted by
// their assignment vector. Partial assignments are pruned by homomorphism
// forward checking, vertex and edge coverage, and fiber connectivity.

#include "fraisse/graph.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace fraisse {

enum class SearchOutcome {
    found,       // at least one solution was reported
    exhausted,   // the whole space was searched
    node_limit,  // stopped early by the node budget
};

class ConnectedEpiSearch {
public:
    ConnectedEpiSearch(Graph source, Graph target);

    /// Restrict the image of v to `allowed`.
    void restrict(Vertex v, std::span<const Vertex> allowed);
    /// Restrict every source vertex v to allowed[v].
    void restrict_all(const std::vector<std::vector<Vertex>>& allowed);
    /// 0 disables the limit.
    void set_node_limit(std::size_t nodes) { node_limit_ = nodes; }

    /// Lexicographically first connected epimorphism, if any. `outcome`
    /// distinguishes a proven absence from a node-limit stop.
    std::optional<GraphMorphism> first(SearchOutcome* outcome = nullptr);

    /// Visits solutions in lexicographic order until `visit` returns false.
    /// Returns found if visit stopped the enumeration, exhausted otherwise,
    /// or node_limit.
    SearchOutcome enumerate(const std::function<bool(const GraphMorphism&)>& visit);

    std::size_t nodes_visited() const noexcept { return nodes_; }

private:
    struct Impl;
    Graph source_;
    Graph target_;
    std::vector<std::vector<char>> allowed_;
    std::size_t node_limit_ = 0;
    std::size_t nodes_ = 0;
};

/// All connected epimorphisms source -> target, lexicographic order.
std::vector<GraphMorphism> all_connected_epis(const Graph& source, const Graph& target);

/// Connected epimorphisms h: source -> via.source() with via ∘ h == required,
/// i.e. lifts of `required` through `via`.
std::optional<GraphMorphism> find_lift(const GraphMorphism& required, const GraphMorphism& via,
                                       std::size_t node_limit = 0, SearchOutcome* outcome = nullptr);

}  // namespace fraisse
