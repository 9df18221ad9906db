#pragma once

// Finite simplicial complexes, integral chains, boundary and induced chain
// maps, reduced homology by Smith normal form, n-acyclicity of complexes and
// maps, and the skeleton-of-pullback amalgam.
//
// Vertices are kept in ascending name order, so an ascending index face is
// also the canonical orientation. The empty face is always present.

#include "fraisse/graph.hpp"
#include "fraisse/smith.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fraisse {

using Face = std::vector<std::string>;
using IndexFace = std::vector<std::uint32_t>;

class SimplicialComplex {
public:
    /// The empty complex: the empty face only.
    SimplicialComplex();

    /// Downward closure of the given faces (repeats inside a face are
    /// ignored). Faces of dimension above max_dim are not generated.
    static SimplicialComplex closure(const std::vector<Face>& faces, int max_dim = -2);

    /// Closure over a fixed vertex list, which must be sorted and unique.
    /// Vertices not covered by any face are dropped.
    static SimplicialComplex from_index_faces(const std::vector<std::string>& vertices,
                                              const std::vector<IndexFace>& faces, int max_dim = -2);

    const std::vector<std::string>& vertices() const noexcept { return d_->names; }
    std::size_t vertex_count() const noexcept { return d_->names.size(); }
    std::optional<std::uint32_t> find(std::string_view name) const;
    int dim() const noexcept { return static_cast<int>(d_->by_dim.size()) - 2; }
    bool is_empty() const noexcept { return d_->names.empty(); }
    std::size_t face_count() const noexcept { return d_->count; }

    /// Faces of dimension k in ascending lexicographic order; empty outside
    /// -1..dim().
    const std::vector<IndexFace>& faces(int k) const;
    /// Position of f within faces(|f| - 1).
    std::optional<std::size_t> face_index(const IndexFace& f) const;
    bool contains(const IndexFace& f) const { return face_index(f).has_value(); }
    bool contains_face(const Face& f) const;

    /// All faces, by dimension then lexicographically.
    std::vector<Face> all_faces() const;
    std::vector<Face> maximal_faces() const;

    Face names(const IndexFace& f) const;
    /// Sorted index form; throws ContractViolation on unknown vertices.
    IndexFace indices(const Face& f) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

private:
    struct Data {
        std::vector<std::string> names;
        std::unordered_map<std::string, std::uint32_t> index;
        std::vector<std::vector<IndexFace>> by_dim;  // by_dim[k + 1]
        std::size_t count = 0;
    };
    explicit SimplicialComplex(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    // faces must already be closed downwards and sorted by (size, lex)
    static SimplicialComplex from_closed(const std::vector<std::string>& vertices, std::vector<IndexFace> faces);
    friend SimplicialComplex skeleton(const SimplicialComplex&, int);
    friend SimplicialComplex induced_subcomplex(const SimplicialComplex&, const std::vector<std::uint32_t>&);
    std::shared_ptr<const Data> d_;
};

/// Faces of dimension at most n.
SimplicialComplex skeleton(const SimplicialComplex& c, int n);

/// Full subcomplex on the given vertices.
SimplicialComplex induced_subcomplex(const SimplicialComplex& c, const std::vector<std::uint32_t>& members);

class SimplicialMap {
public:
    /// Throws ContractViolation unless the assignment is total and every face
    /// of source lands on a face of target.
    SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<std::uint32_t> assignment);
    static SimplicialMap from_names(SimplicialComplex source, SimplicialComplex target,
                                    const std::map<std::string, std::string>& assignment);
    static SimplicialMap identity(const SimplicialComplex& c);

    const SimplicialComplex& source() const noexcept { return source_; }
    const SimplicialComplex& target() const noexcept { return target_; }
    const std::vector<std::uint32_t>& assignment() const noexcept { return assignment_; }
    std::uint32_t operator()(std::uint32_t v) const { return assignment_.at(v); }
    const std::string& image_name(const std::string& v) const;

    /// f(sigma) as a sorted index face of the target.
    IndexFace image(const IndexFace& sigma) const;

    friend bool operator==(const SimplicialMap& a, const SimplicialMap& b);

private:
    SimplicialComplex source_;
    SimplicialComplex target_;
    std::vector<std::uint32_t> assignment_;
};

SimplicialMap compose(const SimplicialMap& outer, const SimplicialMap& inner);

/// Every face of the target is the image of some face of the source.
bool is_face_surjective(const SimplicialMap& f);

/// Integer combination of canonically oriented faces. A face given in another
/// order is sorted and the permutation sign is folded into its coefficient.
class Chain {
public:
    Chain() = default;
    /// Throws ContractViolation on a repeated vertex.
    static Chain oriented(const Face& vertices, const Integer& coeff = 1);

    void add(const Face& oriented_face, const Integer& coeff);
    const std::map<Face, Integer>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    Integer coefficient(const Face& canonical) const;

    Chain& operator+=(const Chain& other);
    Chain& operator-=(const Chain& other);
    friend Chain operator+(Chain a, const Chain& b) { return a += b; }
    friend Chain operator-(Chain a, const Chain& b) { return a -= b; }
    friend Chain operator*(const Integer& k, const Chain& z);
    friend bool operator==(const Chain& a, const Chain& b) = default;

private:
    std::map<Face, Integer> terms_;
};

/// Augmented boundary: a vertex goes to the empty face, the empty face to 0.
Chain boundary(const Chain& z);

/// Induced chain map; faces whose image has lower dimension go to 0.
Chain chain_map(const SimplicialMap& f, const Chain& z);

/// Throws ContractViolation if some face of z is not in c.
void check_chain(const SimplicialComplex& c, const Chain& z);

/// Some chain eta on c with boundary(eta) == z, or nothing when no integral
/// solution exists. Throws ContractViolation unless z is a cycle on c.
std::optional<Chain> solve_boundary(const SimplicialComplex& c, const Chain& z);

/// Matrix of the boundary from k-faces to (k-1)-faces, columns and rows in
/// faces() order. k ranges over 0..dim+1; other k give an empty matrix.
IntMatrix boundary_matrix(const SimplicialComplex& c, int k);

struct HomologyReport {
    int degree = 0;
    std::size_t rank = 0;
    std::vector<Integer> torsion;  // each entry divides the next

    bool vanishes() const { return rank == 0 && torsion.empty(); }
    friend bool operator==(const HomologyReport&, const HomologyReport&) = default;
};

/// Reduced homology of the augmented chain complex in degree k >= -1.
HomologyReport reduced_homology(const SimplicialComplex& c, int k);

/// Reduced homology vanishes in every degree -1..n, torsion included. For n = -1
/// this is nonemptiness; n < -1 is vacuous.
bool is_n_acyclic(const SimplicialComplex& c, int n);

/// Lowest degree <= n with nonvanishing reduced homology.
std::optional<int> acyclicity_obstruction(const SimplicialComplex& c, int n);

/// m-acyclicity of a map through the simplex criterion: every nonempty target
/// face rho with dim(rho) <= m + 1 has an m-acyclic preimage f^{-1}(Delta(rho)).
/// (With m = n - 1 this is the bound dim(rho) <= n.)
bool is_n_acyclic_map(const SimplicialMap& f, int m);

/// A target face whose preimage fails the criterion above, if any.
std::optional<IndexFace> acyclic_map_obstruction(const SimplicialMap& f, int m);

/// dim(c) <= n and c is (n - 1)-acyclic.
bool in_class_acyclic(const SimplicialComplex& c, int n);

/// Commuting square f o f_prime == g o g_prime over complexes.
struct SimplicialSquare {
    SimplicialMap f;        // B -> A
    SimplicialMap g;        // C -> A
    SimplicialMap f_prime;  // D -> B
    SimplicialMap g_prime;  // D -> C

    const SimplicialComplex& apex() const { return f_prime.source(); }
};

/// Pullback whose faces are the sets sigma x_A tau = {(b, c) in sigma x tau :
/// f(b) = g(c)} over face pairs with f(sigma) == g(tau), closed downwards.
/// Faces above max_dim are not generated. Vertices are named "(b|c)".
SimplicialSquare simplicial_pullback(const SimplicialMap& f, const SimplicialMap& g, int max_dim = -2);

/// n-skeleton of the pullback. Requires B, C, A in the class for n and f, g
/// (n - 1)-acyclic; throws ContractViolation naming the failed condition.
SimplicialSquare amalgamate_acyclic(const SimplicialMap& f, const SimplicialMap& g, int n);

/// Graph as a 1-dimensional complex: vertices and edges.
SimplicialComplex graph_complex(const Graph& g);
SimplicialMap graph_complex_map(const GraphMorphism& m);

}  // namespace fraisse
