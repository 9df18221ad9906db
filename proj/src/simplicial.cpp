#include "fraisse/simplicial.hpp"

#include "fraisse/errors.hpp"
#include "fraisse/graph_ops.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace fraisse {

namespace {

constexpr std::size_t max_generated_faces = 4000000;

std::string show(const Face& f) {
    std::string s = "{";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += ",";
        s += f[i];
    }
    return s + "}";
}

// Appends every subset of `gen` with at most `limit` elements to `out`.
void subsets_up_to(const IndexFace& gen, std::size_t limit, std::vector<IndexFace>& out) {
    IndexFace cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        out.push_back(cur);
        if (cur.size() == limit) return;
        for (std::size_t i = start; i < gen.size(); ++i) {
            cur.push_back(gen[i]);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

double binomial_prefix(std::size_t n, std::size_t k) {
    double total = 0, term = 1;
    for (std::size_t i = 0; i <= std::min(n, k); ++i) {
        total += term;
        term = term * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    return total;
}

// Inclusion-maximal members of a family of sorted faces.
std::vector<IndexFace> maximal_members(std::vector<IndexFace> family) {
    std::sort(family.begin(), family.end(),
              [](const IndexFace& a, const IndexFace& b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
    family.erase(std::unique(family.begin(), family.end()), family.end());
    std::vector<IndexFace> out;
    for (const auto& f : family) {
        bool covered = false;
        for (const auto& g : out)
            if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
                covered = true;
                break;
            }
        if (!covered) out.push_back(f);
    }
    return out;
}

}  // namespace

SimplicialComplex::SimplicialComplex() {
    auto d = std::make_shared<Data>();
    d->by_dim = {{IndexFace{}}};
    d->count = 1;
    d_ = std::move(d);
}

SimplicialComplex SimplicialComplex::from_index_faces(const std::vector<std::string>& vertices,
                                                      const std::vector<IndexFace>& faces, int max_dim) {
    for (std::size_t i = 1; i < vertices.size(); ++i)
        if (!(vertices[i - 1] < vertices[i]))
            throw ContractViolation("complex vertices must be sorted and unique");
    std::vector<IndexFace> gens;
    gens.reserve(faces.size());
    for (IndexFace f : faces) {
        std::sort(f.begin(), f.end());
        f.erase(std::unique(f.begin(), f.end()), f.end());
        for (auto v : f)
            if (v >= vertices.size()) throw ContractViolation("face refers to a vertex outside the complex");
        gens.push_back(std::move(f));
    }
    gens = maximal_members(std::move(gens));
    std::size_t limit = max_dim < -1 ? SIZE_MAX : static_cast<std::size_t>(max_dim + 1);

    double estimate = 0;
    for (const auto& g : gens) estimate += binomial_prefix(g.size(), limit);
    if (estimate > static_cast<double>(max_generated_faces))
        throw ResourceLimit("closure would generate about " + std::to_string(static_cast<long long>(estimate)) +
                            " faces");

    std::vector<IndexFace> all;
    for (const auto& g : gens) subsets_up_to(g, limit, all);
    if (all.empty()) all.push_back({});
    std::sort(all.begin(), all.end(), [](const IndexFace& a, const IndexFace& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());

    return from_closed(vertices, std::move(all));
}

SimplicialComplex SimplicialComplex::from_closed(const std::vector<std::string>& vertices, std::vector<IndexFace> all) {
    // Keep only covered vertices, renumbered in the same order.
    std::vector<char> used(vertices.size(), 0);
    for (const auto& f : all)
        if (f.size() == 1) used[f[0]] = 1;
    std::vector<std::uint32_t> renumber(vertices.size(), 0);
    auto d = std::make_shared<Data>();
    for (std::size_t v = 0; v < vertices.size(); ++v)
        if (used[v]) {
            renumber[v] = static_cast<std::uint32_t>(d->names.size());
            d->index.emplace(vertices[v], renumber[v]);
            d->names.push_back(vertices[v]);
        }
    d->count = all.size();
    for (auto& f : all) {
        for (auto& v : f) v = renumber[v];
        if (d->by_dim.size() < f.size() + 1) d->by_dim.resize(f.size() + 1);
        d->by_dim[f.size()].push_back(std::move(f));
    }
    return SimplicialComplex(std::move(d));
}

SimplicialComplex SimplicialComplex::closure(const std::vector<Face>& faces, int max_dim) {
    std::vector<std::string> names;
    for (const auto& f : faces) names.insert(names.end(), f.begin(), f.end());
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::vector<IndexFace> gens;
    gens.reserve(faces.size());
    for (const auto& f : faces) {
        IndexFace g;
        for (const auto& v : f)
            g.push_back(static_cast<std::uint32_t>(std::lower_bound(names.begin(), names.end(), v) - names.begin()));
        gens.push_back(std::move(g));
    }
    return from_index_faces(names, gens, max_dim);
}

std::optional<std::uint32_t> SimplicialComplex::find(std::string_view name) const {
    auto it = d_->index.find(std::string(name));
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

const std::vector<IndexFace>& SimplicialComplex::faces(int k) const {
    static const std::vector<IndexFace> none;
    if (k < -1 || k > dim()) return none;
    return d_->by_dim[static_cast<std::size_t>(k + 1)];
}

std::optional<std::size_t> SimplicialComplex::face_index(const IndexFace& f) const {
    const auto& row = faces(static_cast<int>(f.size()) - 1);
    auto it = std::lower_bound(row.begin(), row.end(), f);
    if (it == row.end() || *it != f) return std::nullopt;
    return static_cast<std::size_t>(it - row.begin());
}

bool SimplicialComplex::contains_face(const Face& f) const {
    IndexFace idx;
    for (const auto& v : f) {
        auto i = find(v);
        if (!i) return false;
        idx.push_back(*i);
    }
    std::sort(idx.begin(), idx.end());
    if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return false;
    return contains(idx);
}

std::vector<Face> SimplicialComplex::all_faces() const {
    std::vector<Face> out;
    out.reserve(face_count());
    for (const auto& row : d_->by_dim)
        for (const auto& f : row) out.push_back(names(f));
    return out;
}

std::vector<Face> SimplicialComplex::maximal_faces() const {
    std::vector<Face> out;
    for (int k = dim(); k >= 0; --k) {
        std::set<IndexFace> covered;
        for (const auto& f : faces(k + 1))
            for (std::size_t i = 0; i < f.size(); ++i) {
                IndexFace g = f;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
                covered.insert(std::move(g));
            }
        for (const auto& f : faces(k))
            if (!covered.count(f)) out.push_back(names(f));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Face SimplicialComplex::names(const IndexFace& f) const {
    Face out;
    out.reserve(f.size());
    for (auto v : f) out.push_back(d_->names.at(v));
    return out;
}

IndexFace SimplicialComplex::indices(const Face& f) const {
    IndexFace out;
    for (const auto& v : f) {
        auto i = find(v);
        if (!i) throw ContractViolation("unknown vertex " + v);
        out.push_back(*i);
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.d_ == b.d_ || (a.d_->names == b.d_->names && a.d_->by_dim == b.d_->by_dim);
}

SimplicialComplex skeleton(const SimplicialComplex& c, int n) {
    std::vector<IndexFace> kept;
    for (int k = -1; k <= std::min(n, c.dim()); ++k)
        for (const auto& f : c.faces(k)) kept.push_back(f);
    return SimplicialComplex::from_closed(c.vertices(), std::move(kept));
}

SimplicialComplex induced_subcomplex(const SimplicialComplex& c, const std::vector<std::uint32_t>& members) {
    std::vector<char> in(c.vertex_count(), 0);
    for (auto v : members) in.at(v) = 1;
    std::vector<IndexFace> kept;
    for (int k = -1; k <= c.dim(); ++k)
        for (const auto& f : c.faces(k))
            if (std::all_of(f.begin(), f.end(), [&](std::uint32_t v) { return in[v]; })) kept.push_back(f);
    return SimplicialComplex::from_closed(c.vertices(), std::move(kept));
}

SimplicialMap::SimplicialMap(SimplicialComplex source, SimplicialComplex target, std::vector<std::uint32_t> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
    if (assignment_.size() != source_.vertex_count())
        throw ContractViolation("simplicial map assignment has " + std::to_string(assignment_.size()) +
                                " entries for " + std::to_string(source_.vertex_count()) + " vertices");
    for (auto v : assignment_)
        if (v >= target_.vertex_count()) throw ContractViolation("simplicial map lands outside the target");
    for (const auto& f : source_.maximal_faces()) {
        IndexFace img = image(source_.indices(f));
        if (!target_.contains(img))
            throw ContractViolation("face " + show(f) + " maps to " + show(target_.names(img)) +
                                    ", which is not a face of the target");
    }
}

SimplicialMap SimplicialMap::from_names(SimplicialComplex source, SimplicialComplex target,
                                        const std::map<std::string, std::string>& assignment) {
    std::vector<std::uint32_t> a(source.vertex_count());
    for (std::size_t v = 0; v < source.vertex_count(); ++v) {
        auto it = assignment.find(source.vertices()[v]);
        if (it == assignment.end())
            throw ContractViolation("simplicial map has no image for vertex " + source.vertices()[v]);
        auto t = target.find(it->second);
        if (!t) throw ContractViolation("simplicial map sends " + it->first + " to unknown vertex " + it->second);
        a[v] = *t;
    }
    for (const auto& [k, _] : assignment)
        if (!source.find(k)) throw ContractViolation("simplicial map names unknown source vertex " + k);
    return SimplicialMap(std::move(source), std::move(target), std::move(a));
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& c) {
    std::vector<std::uint32_t> a(c.vertex_count());
    for (std::uint32_t v = 0; v < a.size(); ++v) a[v] = v;
    return SimplicialMap(c, c, std::move(a));
}

const std::string& SimplicialMap::image_name(const std::string& v) const {
    auto i = source_.find(v);
    if (!i) throw ContractViolation("unknown source vertex " + v);
    return target_.vertices()[assignment_[*i]];
}

IndexFace SimplicialMap::image(const IndexFace& sigma) const {
    IndexFace out;
    out.reserve(sigma.size());
    for (auto v : sigma) out.push_back(assignment_.at(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool operator==(const SimplicialMap& a, const SimplicialMap& b) {
    return a.assignment_ == b.assignment_ && a.source_ == b.source_ && a.target_ == b.target_;
}

SimplicialMap compose(const SimplicialMap& outer, const SimplicialMap& inner) {
    if (!(outer.source() == inner.target()))
        throw ContractViolation("compose: inner target differs from outer source");
    std::vector<std::uint32_t> a(inner.source().vertex_count());
    for (std::uint32_t v = 0; v < a.size(); ++v) a[v] = outer(inner(v));
    return SimplicialMap(inner.source(), outer.target(), std::move(a));
}

bool is_face_surjective(const SimplicialMap& f) {
    std::set<IndexFace> hit;
    for (int k = -1; k <= f.source().dim(); ++k)
        for (const auto& s : f.source().faces(k)) hit.insert(f.image(s));
    return hit.size() == f.target().face_count();
}

// ---- chains ----

Chain Chain::oriented(const Face& vertices, const Integer& coeff) {
    Chain z;
    z.add(vertices, coeff);
    return z;
}

void Chain::add(const Face& oriented_face, const Integer& coeff) {
    if (coeff == 0) return;
    Face f = oriented_face;
    bool odd = false;
    for (std::size_t i = 1; i < f.size(); ++i)
        for (std::size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
            std::swap(f[j], f[j - 1]);
            odd = !odd;
        }
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
        throw ContractViolation("oriented face " + show(oriented_face) + " repeats a vertex");
    auto [it, fresh] = terms_.try_emplace(std::move(f), 0);
    if (odd)
        it->second -= coeff;
    else
        it->second += coeff;
    if (it->second == 0) terms_.erase(it);
}

Integer Chain::coefficient(const Face& canonical) const {
    auto it = terms_.find(canonical);
    return it == terms_.end() ? Integer(0) : it->second;
}

Chain& Chain::operator+=(const Chain& other) {
    for (const auto& [f, c] : other.terms_) {
        auto [it, fresh] = terms_.try_emplace(f, 0);
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

Chain& Chain::operator-=(const Chain& other) {
    for (const auto& [f, c] : other.terms_) {
        auto [it, fresh] = terms_.try_emplace(f, 0);
        it->second -= c;
        if (it->second == 0) terms_.erase(it);
    }
    return *this;
}

Chain operator*(const Integer& k, const Chain& z) {
    Chain out;
    if (k == 0) return out;
    for (const auto& [f, c] : z.terms_) out.terms_.emplace(f, k * c);
    return out;
}

Chain boundary(const Chain& z) {
    Chain out;
    for (const auto& [f, c] : z.terms()) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            Face g = f;
            g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
            out.add(g, i % 2 ? Integer(-c) : c);
        }
    }
    return out;
}

Chain chain_map(const SimplicialMap& f, const Chain& z) {
    Chain out;
    for (const auto& [face, c] : z.terms()) {
        Face img;
        img.reserve(face.size());
        for (const auto& v : face) img.push_back(f.image_name(v));
        Face sorted = img;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
        out.add(img, c);
    }
    return out;
}

void check_chain(const SimplicialComplex& c, const Chain& z) {
    for (const auto& [f, _] : z.terms())
        if (!c.contains_face(f)) throw ContractViolation("chain term " + show(f) + " is not a face of the complex");
}

// ---- homology ----

namespace {

std::vector<long long> small_boundary(const SimplicialComplex& c, int k, std::size_t& rows, std::size_t& cols) {
    const auto& col_faces = c.faces(k);
    const auto& row_faces = c.faces(k - 1);
    rows = row_faces.size();
    cols = col_faces.size();
    std::vector<long long> m(rows * cols, 0);
    if (k < 0) {
        rows = cols = 0;
        return {};
    }
    for (std::size_t j = 0; j < cols; ++j) {
        const auto& f = col_faces[j];
        for (std::size_t i = 0; i < f.size(); ++i) {
            IndexFace g = f;
            g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
            auto r = std::lower_bound(row_faces.begin(), row_faces.end(), g) - row_faces.begin();
            m[static_cast<std::size_t>(r) * cols + j] = i % 2 ? -1 : 1;
        }
    }
    return m;
}

std::vector<Integer> boundary_factors(const SimplicialComplex& c, int k) {
    if (k < 0 || k > c.dim()) return {};
    std::size_t rows = 0, cols = 0;
    auto m = small_boundary(c, k, rows, cols);
    return invariant_factors(rows, cols, m);
}

}  // namespace

IntMatrix boundary_matrix(const SimplicialComplex& c, int k) {
    if (k < 0 || k > c.dim() + 1) return IntMatrix();
    std::size_t rows = 0, cols = 0;
    auto m = small_boundary(c, k, rows, cols);
    IntMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = m[i * cols + j];
    return out;
}

HomologyReport reduced_homology(const SimplicialComplex& c, int k) {
    if (k < -1) throw ContractViolation("homology degree must be at least -1");
    HomologyReport r;
    r.degree = k;
    if (k > c.dim()) return r;
    auto here = boundary_factors(c, k);
    auto above = boundary_factors(c, k + 1);
    r.rank = c.faces(k).size() - here.size() - above.size();
    for (auto& x : above)
        if (x > 1) r.torsion.push_back(x);
    return r;
}

std::optional<int> acyclicity_obstruction(const SimplicialComplex& c, int n) {
    int top = std::min(n, c.dim());
    if (top < -1) return std::nullopt;
    std::vector<Integer> here;  // factors of the boundary out of degree k
    for (int k = -1; k <= top; ++k) {
        auto above = boundary_factors(c, k + 1);
        if (c.faces(k).size() != here.size() + above.size()) return k;
        for (const auto& x : above)
            if (x != 1) return k;
        here = std::move(above);
    }
    return std::nullopt;
}

bool is_n_acyclic(const SimplicialComplex& c, int n) { return !acyclicity_obstruction(c, n).has_value(); }

bool in_class_acyclic(const SimplicialComplex& c, int n) { return c.dim() <= n && is_n_acyclic(c, n - 1); }

std::optional<IndexFace> acyclic_map_obstruction(const SimplicialMap& f, int m) {
    // Simplex criterion: only faces rho with dim(rho) <= m + 1 need checking
    // (index shift: an m-acyclic map is tested like an (n-1)-acyclic one with
    // n = m + 1). The empty face is skipped; its preimage is the empty
    // complex, which is never acyclic.
    const auto& src = f.source();
    std::map<std::vector<std::uint32_t>, bool> seen;
    for (int k = 0; k <= std::min(m + 1, f.target().dim()); ++k) {
        for (const auto& rho : f.target().faces(k)) {
            std::vector<std::uint32_t> pre;
            for (std::uint32_t v = 0; v < src.vertex_count(); ++v)
                if (std::binary_search(rho.begin(), rho.end(), f(v))) pre.push_back(v);
            auto it = seen.find(pre);
            if (it == seen.end()) it = seen.emplace(pre, is_n_acyclic(induced_subcomplex(src, pre), m)).first;
            if (!it->second) return rho;
        }
    }
    return std::nullopt;
}

bool is_n_acyclic_map(const SimplicialMap& f, int m) { return !acyclic_map_obstruction(f, m).has_value(); }

std::optional<Chain> solve_boundary(const SimplicialComplex& c, const Chain& z) {
    check_chain(c, z);
    if (!boundary(z).is_zero()) throw ContractViolation("solve_boundary: the chain is not a cycle");

    std::map<int, std::vector<std::pair<IndexFace, Integer>>> by_degree;
    for (const auto& [f, coeff] : z.terms())
        by_degree[static_cast<int>(f.size()) - 1].emplace_back(c.indices(f), coeff);

    Chain eta;
    for (const auto& [k, terms] : by_degree) {
        const auto& rows = c.faces(k);
        const auto& cols = c.faces(k + 1);
        if (cols.empty()) return std::nullopt;  // a nonzero cycle in the top degree
        IntMatrix a = boundary_matrix(c, k + 1);
        auto snf = smith_decomposition(a);
        std::vector<Integer> rhs(rows.size());
        for (const auto& [f, coeff] : terms) rhs[*c.face_index(f)] = coeff;
        // d y = u z, then eta = v y
        std::vector<Integer> b(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows.size(); ++j)
                if (rhs[j] != 0) b[i] += snf.u(i, j) * rhs[j];
        std::vector<Integer> y(cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i < snf.rank) {
                if (b[i] % snf.d(i, i) != 0) return std::nullopt;
                y[i] = b[i] / snf.d(i, i);
            } else if (b[i] != 0) {
                return std::nullopt;
            }
        }
        for (std::size_t r = 0; r < cols.size(); ++r) {
            Integer x = 0;
            for (std::size_t i = 0; i < snf.rank; ++i)
                if (y[i] != 0) x += snf.v(r, i) * y[i];
            if (x != 0) eta.add(c.names(cols[r]), x);
        }
    }
    return eta;
}

// ---- pullback and amalgam ----

SimplicialSquare simplicial_pullback(const SimplicialMap& f, const SimplicialMap& g, int max_dim) {
    if (!(f.target() == g.target())) throw ContractViolation("pullback: the maps have different targets");
    const auto& b = f.source();
    const auto& c = g.source();

    // Faces of B and C grouped by image; only inclusion-maximal members of a
    // group matter since sigma x_A tau is monotone in both arguments.
    std::map<IndexFace, std::vector<IndexFace>> over_b, over_c;
    for (int k = 0; k <= b.dim(); ++k)
        for (const auto& s : b.faces(k)) over_b[f.image(s)].push_back(s);
    for (int k = 0; k <= c.dim(); ++k)
        for (const auto& t : c.faces(k)) over_c[g.image(t)].push_back(t);

    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t x = 0; x < b.vertex_count(); ++x)
        for (std::uint32_t y = 0; y < c.vertex_count(); ++y)
            if (f(x) == g(y)) pairs.emplace_back(x, y);
    std::vector<std::string> names;
    names.reserve(pairs.size());
    for (auto [x, y] : pairs) names.push_back(pair_name(b.vertices()[x], c.vertices()[y]));
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return names[i] < names[j]; });
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> slot;
    std::vector<std::string> sorted_names;
    for (std::size_t r = 0; r < order.size(); ++r) {
        slot[pairs[order[r]]] = static_cast<std::uint32_t>(r);
        sorted_names.push_back(names[order[r]]);
    }
    for (std::size_t i = 1; i < sorted_names.size(); ++i)
        if (sorted_names[i] == sorted_names[i - 1])
            throw ContractViolation("pullback vertex name " + sorted_names[i] + " is ambiguous");

    std::vector<IndexFace> gens;
    for (auto& [rho, sigmas] : over_b) {
        auto it = over_c.find(rho);
        if (it == over_c.end()) continue;
        auto top_b = maximal_members(sigmas);
        auto top_c = maximal_members(it->second);
        for (const auto& s : top_b)
            for (const auto& t : top_c) {
                IndexFace face;
                for (auto x : s)
                    for (auto y : t)
                        if (f(x) == g(y)) face.push_back(slot.at({x, y}));
                gens.push_back(std::move(face));
            }
    }
    auto apex = SimplicialComplex::from_index_faces(sorted_names, gens, max_dim);
    std::vector<std::uint32_t> to_b(apex.vertex_count()), to_c(apex.vertex_count());
    for (const auto& [p, r] : slot) {
        auto v = apex.find(sorted_names[r]);
        if (!v) continue;
        to_b[*v] = p.first;
        to_c[*v] = p.second;
    }
    SimplicialMap fp(apex, b, std::move(to_b));
    SimplicialMap gp(apex, c, std::move(to_c));
    return {f, g, std::move(fp), std::move(gp)};
}

SimplicialSquare amalgamate_acyclic(const SimplicialMap& f, const SimplicialMap& g, int n) {
    if (!(f.target() == g.target())) throw ContractViolation("amalgamate: the maps have different targets");
    auto check_complex = [n](const SimplicialComplex& c, const char* role) {
        if (c.dim() > n)
            throw ContractViolation(std::string(role) + " has dimension " + std::to_string(c.dim()) + " > " +
                                    std::to_string(n));
        if (auto k = acyclicity_obstruction(c, n - 1))
            throw ContractViolation(std::string(role) + " has nonzero reduced homology in degree " +
                                    std::to_string(*k));
    };
    check_complex(f.target(), "A");
    check_complex(f.source(), "B");
    check_complex(g.source(), "C");
    auto check_map = [n](const SimplicialMap& m, const char* role) {
        if (auto rho = acyclic_map_obstruction(m, n - 1))
            throw ContractViolation(std::string(role) + " is not " + std::to_string(n - 1) +
                                    "-acyclic: the preimage of face " + show(m.target().names(*rho)) + " fails");
    };
    check_map(f, "f");
    check_map(g, "g");
    return simplicial_pullback(f, g, n);
}

SimplicialComplex graph_complex(const Graph& g) {
    std::vector<Face> faces;
    for (const auto& name : g.names()) faces.push_back({name});
    for (auto [u, v] : g.edges()) faces.push_back({g.name(u), g.name(v)});
    return SimplicialComplex::closure(faces);
}

SimplicialMap graph_complex_map(const GraphMorphism& m) {
    std::map<std::string, std::string> a;
    for (Vertex v = 0; v < m.source().size(); ++v) a[m.source().name(v)] = m.target().name(m(v));
    return SimplicialMap::from_names(graph_complex(m.source()), graph_complex(m.target()), a);
}

}  // namespace fraisse
