#include "fraisse/search.hpp"

#include "fraisse/errors.hpp"

#include <boost/dynamic_bitset.hpp>

namespace fraisse {

using Bits = boost::dynamic_bitset<std::uint64_t>;

struct ConnectedEpiSearch::Impl {
    const Graph& s;
    const Graph& t;
    std::size_t node_limit;
    std::size_t& nodes;
    const std::function<bool(const GraphMorphism&)>& visit;

    std::vector<Bits> closed_nbr_t;  // over target vertices
    std::vector<Bits> open_nbr_s;    // over source vertices
    bool stopped = false;
    bool limited = false;

    Impl(const Graph& src, const Graph& tgt, std::size_t limit, std::size_t& counter,
         const std::function<bool(const GraphMorphism&)>& v)
        : s(src), t(tgt), node_limit(limit), nodes(counter), visit(v) {
        closed_nbr_t.assign(t.size(), Bits(t.size()));
        for (Vertex b = 0; b < t.size(); ++b) {
            closed_nbr_t[b].set(b);
            for (Vertex c : t.neighbors(b)) closed_nbr_t[b].set(c);
        }
        open_nbr_s.assign(s.size(), Bits(s.size()));
        for (Vertex u = 0; u < s.size(); ++u)
            for (Vertex w : s.neighbors(u)) open_nbr_s[u].set(w);
    }

    bool feasible(const std::vector<Bits>& dom) const {
        const std::size_t n = s.size(), k = t.size();
        std::vector<Bits> cand(k, Bits(n));
        std::vector<Bits> forced(k, Bits(n));
        for (Vertex u = 0; u < n; ++u) {
            const Bits& d = dom[u];
            const bool single = d.count() == 1;
            for (auto b = d.find_first(); b != Bits::npos; b = d.find_next(b)) {
                cand[b].set(u);
                if (single) forced[b].set(u);
            }
        }
        for (Vertex b = 0; b < k; ++b)
            if (cand[b].none()) return false;
        // A fiber that is already pinned down must stay connected through
        // vertices that may still join it.
        for (Vertex b = 0; b < k; ++b) {
            if (forced[b].count() < 2) continue;
            Bits seen(n);
            std::vector<Vertex> stack{forced[b].find_first()};
            seen.set(stack.back());
            while (!stack.empty()) {
                Vertex u = stack.back();
                stack.pop_back();
                Bits next = open_nbr_s[u] & cand[b];
                next -= seen;
                for (auto w = next.find_first(); w != Bits::npos; w = next.find_next(w)) {
                    seen.set(w);
                    stack.push_back(w);
                }
            }
            if (!forced[b].is_subset_of(seen)) return false;
        }
        // Every target edge still needs a source edge that can cover it.
        for (auto [a, b] : t.edges()) {
            bool ok = false;
            for (auto u = cand[a].find_first(); u != Bits::npos && !ok; u = cand[a].find_next(u))
                ok = open_nbr_s[u].intersects(cand[b]);
            if (!ok) return false;
        }
        return true;
    }

    void descend(std::vector<Bits>& dom, Vertex v) {
        if (stopped) return;
        if (node_limit && nodes >= node_limit) {
            limited = stopped = true;
            return;
        }
        ++nodes;
        if (v == s.size()) {
            std::vector<Vertex> a(s.size());
            for (Vertex u = 0; u < s.size(); ++u) a[u] = dom[u].find_first();
            GraphMorphism m(s, t, std::move(a));
            if (is_connected_epi(m) && !visit(m)) stopped = true;
            return;
        }
        const Bits options = dom[v];
        for (auto b = options.find_first(); b != Bits::npos && !stopped; b = options.find_next(b)) {
            std::vector<Bits> next = dom;
            next[v].reset();
            next[v].set(b);
            bool ok = true;
            for (Vertex u : s.neighbors(v)) {
                next[u] &= closed_nbr_t[b];
                if (next[u].none()) {
                    ok = false;
                    break;
                }
            }
            if (ok && feasible(next)) descend(next, v + 1);
        }
    }
};

ConnectedEpiSearch::ConnectedEpiSearch(Graph source, Graph target)
    : source_(std::move(source)), target_(std::move(target)),
      allowed_(source_.size(), std::vector<char>(target_.size(), 1)) {}

void ConnectedEpiSearch::restrict(Vertex v, std::span<const Vertex> allowed) {
    if (v >= source_.size()) throw ContractViolation("restrict: vertex out of range");
    std::vector<char> keep(target_.size(), 0);
    for (Vertex t : allowed) keep.at(t) = 1;
    for (Vertex t = 0; t < target_.size(); ++t) allowed_[v][t] = allowed_[v][t] && keep[t];
}

void ConnectedEpiSearch::restrict_all(const std::vector<std::vector<Vertex>>& allowed) {
    if (allowed.size() != source_.size()) throw ContractViolation("restrict_all: wrong arity");
    for (Vertex v = 0; v < allowed.size(); ++v) restrict(v, allowed[v]);
}

SearchOutcome ConnectedEpiSearch::enumerate(const std::function<bool(const GraphMorphism&)>& visit) {
    nodes_ = 0;
    if (target_.empty()) {
        // Only the empty map, which is an epimorphism exactly when the source is empty.
        if (source_.empty() && !visit(GraphMorphism(source_, target_, {}))) return SearchOutcome::found;
        return SearchOutcome::exhausted;
    }
    Impl impl(source_, target_, node_limit_, nodes_, visit);
    std::vector<Bits> dom(source_.size(), Bits(target_.size()));
    for (Vertex v = 0; v < source_.size(); ++v)
        for (Vertex t = 0; t < target_.size(); ++t)
            if (allowed_[v][t]) dom[v].set(t);
    for (const auto& d : dom)
        if (d.none()) return SearchOutcome::exhausted;
    if (!impl.feasible(dom)) return SearchOutcome::exhausted;
    impl.descend(dom, 0);
    if (impl.limited) return SearchOutcome::node_limit;
    return impl.stopped ? SearchOutcome::found : SearchOutcome::exhausted;
}

std::optional<GraphMorphism> ConnectedEpiSearch::first(SearchOutcome* outcome) {
    std::optional<GraphMorphism> out;
    SearchOutcome o = enumerate([&](const GraphMorphism& m) {
        out = m;
        return false;
    });
    if (outcome) *outcome = o;
    return out;
}

std::vector<GraphMorphism> all_connected_epis(const Graph& source, const Graph& target) {
    std::vector<GraphMorphism> out;
    ConnectedEpiSearch search(source, target);
    search.enumerate([&](const GraphMorphism& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::optional<GraphMorphism> find_lift(const GraphMorphism& required, const GraphMorphism& via,
                                       std::size_t node_limit, SearchOutcome* outcome) {
    if (!(required.target() == via.target()))
        throw ContractViolation("find_lift: the two maps have different targets");
    std::vector<std::vector<Vertex>> over(via.target().size());
    for (Vertex b = 0; b < via.source().size(); ++b) over[via(b)].push_back(b);
    ConnectedEpiSearch search(required.source(), via.source());
    std::vector<std::vector<Vertex>> allowed(required.source().size());
    for (Vertex v = 0; v < allowed.size(); ++v) allowed[v] = over[required(v)];
    search.restrict_all(allowed);
    search.set_node_limit(node_limit);
    return search.first(outcome);
}

}  // namespace fraisse
