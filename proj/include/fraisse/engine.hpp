#pragma once

// Bounded Fraïssé machinery for the class of finite connected graphs with
// connected epimorphisms: enumeration up to isomorphism, generic towers,
// extension witnesses, back-and-forth intertwiners and open maps between
// towers.

#include "fraisse/errors.hpp"
#include "fraisse/graph.hpp"
#include "fraisse/graph_ops.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fraisse {

inline constexpr std::size_t default_size_cap = 60;

/// FRAISSE_SIZE_CAP if set to a positive integer, otherwise `fallback`.
std::size_t size_cap_from_env(std::size_t fallback = default_size_cap);

struct EnumerationBudget {
    std::size_t max_vertices = 3;
    std::size_t max_depth = 6;
    std::uint64_t seed = 0;
    /// Largest level a tower may reach; larger amalgams are skipped and logged.
    std::size_t size_cap = default_size_cap;
    /// Every refine_period-th stage subdivides away persisting triangles; 0 disables.
    std::size_t refine_period = 3;
    /// Node budget for a single lifting search; 0 means unlimited.
    std::size_t search_nodes = 200000;
    /// Obligations enumerated per stage before the stage is marked incomplete.
    std::size_t max_obligations = 20000;

    /// Throws ContractViolation when max_vertices == 0.
    void validate() const;
    friend bool operator==(const EnumerationBudget&, const EnumerationBudget&) = default;
};

inline constexpr std::size_t max_enumerated_graph = 7;
inline constexpr std::size_t max_enumerated_morphism = 5;

/// Connected graphs with at most max_vertices vertices, one per isomorphism
/// class, in canonical form. Ordered by size then adjacency code, after which
/// a nonzero seed shuffles every entry but the first.
std::vector<Graph> enumerate_graphs(const EnumerationBudget& budget);

/// Connected epimorphisms between enumerated graphs up to isomorphism of the
/// pair: one representative per orbit under Aut(source) x Aut(target).
/// Ordered by (source position, target position, assignment) before the
/// seeded shuffle.
std::vector<GraphMorphism> enumerate_morphisms(const EnumerationBudget& budget);

/// Index of the enumerated morphism isomorphic to m as an arrow, if any.
std::optional<std::size_t> morphism_type(const GraphMorphism& m, const std::vector<GraphMorphism>& types);

/// One extension obligation of a stage: a connected epi s: L_n -> B and,
/// once discharged, d: L_{n+1} -> C with s ∘ t^{n+1}_n == e ∘ d.
struct Discharge {
    GraphMorphism s;
    std::optional<GraphMorphism> d;
    std::string method;  // "lift", "amalgam" or "skipped"
};

struct RefinementRecord {
    std::size_t level = 0;      // j: triangles of L_j are broken
    GraphMorphism collapse;     // d_gamma: subdivision of L_j -> L_j
    GraphMorphism projection;   // L_{n+1} -> subdivision of L_j
};

struct StageLog {
    std::size_t level = 0;  // the level this stage produced
    std::size_t structure_index = 0;
    std::string structure_method;  // "direct" or "product"
    GraphMorphism structure_map;   // L_{level} -> A
    std::size_t morphism_index = 0;
    std::vector<Discharge> discharges;
    /// The scheduled e is an isomorphism, so every s is discharged by
    /// d = e^{-1} ∘ s ∘ t without being listed.
    bool universal = false;
    bool obligations_complete = true;  // every s was enumerated
    std::optional<RefinementRecord> refinement;
    bool truncated = false;
    std::vector<std::string> notes;

    bool all_discharged() const;
};

class Tower {
public:
    Tower() = default;
    Tower(EnumerationBudget budget, std::vector<Graph> levels, std::vector<GraphMorphism> bondings,
          std::vector<StageLog> log);

    const EnumerationBudget& budget() const noexcept { return budget_; }
    std::size_t depth() const noexcept { return levels_.empty() ? 0 : levels_.size() - 1; }
    const std::vector<Graph>& levels() const noexcept { return levels_; }
    const Graph& level(std::size_t n) const;
    /// bondings()[n] is t^{n+1}_n: L_{n+1} -> L_n.
    const std::vector<GraphMorphism>& bondings() const noexcept { return bondings_; }
    const std::vector<StageLog>& log() const noexcept { return log_; }

    /// t^m_n: L_m -> L_n for n <= m.
    GraphMorphism composite(std::size_t n, std::size_t m) const;

    /// Throws ContractViolation unless levels are connected, bonds are
    /// connected epis matching the levels, and the log re-verifies.
    void validate() const;

    friend bool operator==(const Tower&, const Tower&);

private:
    friend Tower extend(const Tower&, std::size_t);
    EnumerationBudget budget_;
    std::vector<Graph> levels_;
    std::vector<GraphMorphism> bondings_;
    std::vector<StageLog> log_;
};

/// Builds the generic tower up to budget.max_depth. Stage n+1:
///  1. structure: a connected epi L_n -> A_{n+1} if one exists, otherwise
///     the product with A_{n+1} (the amalgam over the one-vertex graph);
///  2. morphism: for the scheduled e: C -> B and every connected epi
///     s: L_n -> B, a lift through e, amalgamating with e when none exists;
///  3. refinement (every refine_period stages): the smallest level j with
///     persisting triangles is replaced by its edge subdivision via an
///     amalgam with a collapse map.
Tower build_generic_tower(const EnumerationBudget& budget);

/// Continues a tower to new_depth stages with its own budget; identical to
/// rebuilding from scratch with the larger depth.
Tower extend(const Tower& tower, std::size_t new_depth);

struct Witness {
    std::size_t level;
    GraphMorphism map;  // h: L_level -> B
};

/// Smallest m >= n and a connected epi h: L_m -> B with g ∘ h == f ∘ t^m_n.
/// Throws WitnessNotFound when no level up to the depth has one.
Witness extension_witness(const Tower& tower, std::size_t n, const GraphMorphism& f, const GraphMorphism& g);

struct Intertwiner {
    std::vector<GraphMorphism> maps;  // h_0, h_1, ...
    std::vector<std::size_t> k;       // anchors in the first tower
    std::vector<std::size_t> l;       // anchors in the second tower
};

/// Raised when a zig-zag step has no witness; carries the completed prefix.
class PartialIntertwiner : public WitnessNotFound {
public:
    PartialIntertwiner(const std::string& what, Intertwiner partial)
        : WitnessNotFound(what), partial_(std::move(partial)) {}
    const Intertwiner& partial() const noexcept { return partial_; }

private:
    Intertwiner partial_;
};

/// h_{2i}: L2_{l_i} -> L1_{k_i} and h_{2i+1}: L1_{k_{i+1}} -> L2_{l_i} with
/// h_{2i} ∘ h_{2i+1} = t1^{k_{i+1}}_{k_i} and h_{2i+1} ∘ h_{2i+2} = t2^{l_{i+1}}_{l_i}.
/// `rounds` zig-zags produce h_0 .. h_{2 rounds}; rounds == 0 gives nothing.
Intertwiner back_and_forth(const Tower& t1, const Tower& t2, std::size_t rounds);

/// Throws ContractViolation naming the first failing identity.
void verify_intertwiner(const Tower& t1, const Tower& t2, const Intertwiner& it);

/// 3-cliques of L_m whose image under t^m_n is a 3-clique of L_n.
std::size_t triangle_persistence(const Tower& tower, std::size_t n, std::size_t m);

/// A tower given only by levels and bonds, used as the target of open maps.
struct PlainTower {
    std::vector<Graph> levels;
    std::vector<GraphMorphism> bondings;  // bondings[i]: levels[i+1] -> levels[i]

    void validate() const;
};

struct OpenTowerMap {
    std::vector<std::size_t> levels;      // n(i)
    std::vector<GraphMorphism> maps;      // h_i: M_{n(i)} -> K_i
    std::vector<AmalgamSquare> squares;   // squares[i]: h_i against g^{i+1}_i
};

/// Coherent maps h_i with g^{i+1}_i ∘ h_{i+1} == h_i ∘ t^{n(i+1)}_{n(i)}. Each
/// step amalgamates h_i with the next target bond and lifts the source bond
/// into the amalgam. WitnessNotFound carries how many maps were built.
OpenTowerMap open_tower_map(const Tower& source, const PlainTower& target);

/// At stage i: the square is exact with apex projections consistent with the
/// maps, coherence holds, and h_{i+1} carries each fiber of the source bond
/// over a onto the fiber of the target bond over h_i(a).
bool verify_openness_claim(const Tower& source, const PlainTower& target, const OpenTowerMap& map, std::size_t i);

/// Preimage subtower L^Q_i = h_i^{-1}(Q_i) with restricted bonds. thread[i]
/// is a clique of target level i. Throws ContractViolation if a restricted
/// bond leaves the class.
PlainTower clique_fiber_subtower(const Tower& source, const PlainTower& target, const OpenTowerMap& map,
                                 const std::vector<std::vector<Vertex>>& thread);

}  // namespace fraisse
