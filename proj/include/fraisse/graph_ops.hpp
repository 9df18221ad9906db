#pragma once

// Categorical constructions on finite connected graphs: fiber-product
// amalgams and their exactness checks, mapping cylinders, edge subdivision
// with collapse maps, clique products and local refinements.

#include "fraisse/graph.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace fraisse {

/// A commuting square
///
///     D --f'--> B
///     |         |
///     g'        f
///     v         v
///     C --g-->  A
struct AmalgamSquare {
    GraphMorphism f;        // B -> A
    GraphMorphism g;        // C -> A
    GraphMorphism f_prime;  // D -> B
    GraphMorphism g_prime;  // D -> C

    const Graph& apex() const { return f_prime.source(); }
};

/// Throws ContractViolation naming the first failed invariant: shapes agree,
/// all four maps are connected epimorphisms, f ∘ f' == g ∘ g'.
void validate(const AmalgamSquare& square);

/// Identifier used for the pair (b, c) in products and amalgams.
std::string pair_name(const std::string& b, const std::string& c);

/// Fiber product of two connected epimorphisms with a common target: the
/// subgraph of B × C induced on {(b, c) : f(b) = g(c)} with the coordinate
/// projections. Throws ContractViolation on bad input.
AmalgamSquare amalgamate(const GraphMorphism& f, const GraphMorphism& g);

/// Fiber product without the class-membership checks; the result is only
/// guaranteed to be a commuting square of homomorphisms.
AmalgamSquare fiber_product(const GraphMorphism& f, const GraphMorphism& g);

bool is_exact(const AmalgamSquare& square);

/// Removes apex vertices greedily (highest index first, repeated until
/// stable) while both projections stay connected epimorphisms. The result is
/// an amalgam of the same cospan, usually much smaller but no longer exact.
AmalgamSquare prune_amalgam(const AmalgamSquare& square);

enum class Side { f, g };

inline constexpr std::size_t default_structural_bound = 10;

/// For every connected induced B0 ⊆ B (C0 ⊆ C for Side::g) with the
/// restriction onto its induced image a connected epimorphism, the preimage D0
/// must be a connected graph and the other projection restricted to D0 a
/// connected epimorphism onto its image. Exhaustive over vertex subsets;
/// throws ResourceLimit when the side graph exceeds `bound` vertices.
bool is_structurally_exact(const AmalgamSquare& square, Side side,
                           std::size_t bound = default_structural_bound);

/// Restriction of m to the induced subgraph on `members`, co-restricted to the
/// induced subgraph on its image (both in ascending vertex order).
GraphMorphism restrict_to_image(const GraphMorphism& m, std::span<const Vertex> members);

struct CylinderResult {
    Graph cylinder;
    GraphMorphism include_a;   // A -> cylinder
    GraphMorphism include_x;   // X -> cylinder
    GraphMorphism retraction;  // cylinder -> A
};

/// Mapping cylinder of a homomorphism alpha: X -> A with A connected. X
/// vertices whose names clash with A are renamed with a reserved "x:" prefix
/// (repeated until unique).
CylinderResult mapping_cylinder(const GraphMorphism& alpha);

/// The unique extension g*: C_beta -> C_alpha of g: B -> A that is the
/// identity on X. Requires g connected epi and g ∘ beta == alpha.
GraphMorphism cylinder_extension(const GraphMorphism& g, const GraphMorphism& beta,
                                 const GraphMorphism& alpha);

/// Name of the m-th subdivision vertex (1-based) on the edge from u to v.
std::string subdivision_name(const std::string& u, const std::string& v, std::size_t m);

/// Replaces every edge {u, v} (u before v in vertex order) by a path
/// u, u~v#1, ..., u~v#n, v. Requires a connected graph and n >= 1.
Graph subdivide_edges(const Graph& a, std::size_t n);

/// d_gamma: subdivide_edges(a, n) -> a sending the m-th subdivision vertex of
/// edge e to its later endpoint when m > gamma[e], else to its earlier one.
/// gamma is indexed like a.edges().
GraphMorphism collapse_map(const Graph& a, std::size_t n, const std::vector<std::size_t>& gamma);

struct CliqueProduct {
    Graph product;
    GraphMorphism projection;  // product -> b
};

/// b × Q where Q is the complete graph on `clique_size` vertices "0".."k-1".
CliqueProduct clique_product(const Graph& b, std::size_t clique_size);

struct LocalRefinement {
    Graph refined;             // B
    GraphMorphism embedding;   // j: B0 -> B
    GraphMorphism map;         // g: B -> A
};

/// Extends f: B0 -> A0 along an induced embedding i: A0 -> A. The vertices of
/// A outside i(A0) are added with singleton fibers, and each b in B0 is joined
/// to every such vertex adjacent to i(f(b)).
LocalRefinement local_refinement(const GraphMorphism& f, const GraphMorphism& i);

}  // namespace fraisse
