#include "fraisse/smith.hpp"

#include <climits>
#include <numeric>
#include <utility>

namespace fraisse {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

namespace {

struct Overflow {};

long long sub_mul(long long a, long long q, long long b) {
    long long p = 0;
    long long r = 0;
    if (__builtin_mul_overflow(q, b, &p) || __builtin_sub_overflow(a, p, &r)) throw Overflow{};
    return r;
}
long long add(long long a, long long b) {
    long long r = 0;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
long long magnitude(long long a) {
    if (a == LLONG_MIN) throw Overflow{};
    return a < 0 ? -a : a;
}

Integer sub_mul(const Integer& a, const Integer& q, const Integer& b) { return a - q * b; }
Integer add(const Integer& a, const Integer& b) { return a + b; }
Integer magnitude(const Integer& a) { return a < 0 ? Integer(-a) : a; }

// Dense elimination to Smith form. Row operations are mirrored into u and
// column operations into v when those are present, so that d = u * a * v.
template <class Int>
class Eliminator {
public:
    Eliminator(std::size_t rows, std::size_t cols, std::vector<Int> a, bool track)
        : rows_(rows), cols_(cols), a_(std::move(a)), track_(track) {
        if (track_) {
            u_.assign(rows * rows, Int(0));
            v_.assign(cols * cols, Int(0));
            for (std::size_t i = 0; i < rows; ++i) u_[i * rows + i] = 1;
            for (std::size_t j = 0; j < cols; ++j) v_[j * cols + j] = 1;
        }
    }

    std::size_t run() {
        std::size_t t = 0;
        for (; t < rows_ && t < cols_; ++t) {
            if (!place_min(t, t, rows_, t, cols_)) break;
            reduce(t);
            if (a_[t * cols_ + t] < 0) negate_row(t);
        }
        return t;
    }

    Int& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const std::vector<Int>& u() const { return u_; }
    const std::vector<Int>& v() const { return v_; }

private:
    // Moves the nonzero entry of least magnitude within rows [r0, r1) x
    // cols [c0, c1) to (t, t). False if the block is zero.
    bool place_min(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
        bool found = false;
        std::size_t bi = 0, bj = 0;
        Int best(0);
        for (std::size_t i = r0; i < r1; ++i)
            for (std::size_t j = c0; j < c1; ++j) {
                const Int& x = a_[i * cols_ + j];
                if (x == 0) continue;
                Int m = magnitude(x);
                if (!found || m < best) {
                    found = true;
                    best = m;
                    bi = i;
                    bj = j;
                    if (best == 1) goto done;
                }
            }
    done:
        if (!found) return false;
        swap_rows(t, bi);
        swap_cols(t, bj);
        return true;
    }

    void reduce(std::size_t t) {
        for (;;) {
            const Int p = at(t, t);
            bool clean = true;
            for (std::size_t i = t + 1; i < rows_; ++i) {
                if (at(i, t) == 0) continue;
                Int q = at(i, t) / p;
                if (q != 0) row_sub(i, t, q);
                if (at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols_; ++j) {
                if (at(t, j) == 0) continue;
                Int q = at(t, j) / p;
                if (q != 0) col_sub(j, t, q);
                if (at(t, j) != 0) clean = false;
            }
            if (!clean) {
                // A smaller remainder now sits in row or column t.
                std::size_t bi = t, bj = t;
                Int best = magnitude(at(t, t));
                for (std::size_t i = t + 1; i < rows_; ++i)
                    if (at(i, t) != 0 && magnitude(at(i, t)) < best) best = magnitude(at(i, t)), bi = i, bj = t;
                for (std::size_t j = t + 1; j < cols_; ++j)
                    if (at(t, j) != 0 && magnitude(at(t, j)) < best) best = magnitude(at(t, j)), bi = t, bj = j;
                swap_rows(t, bi);
                swap_cols(t, bj);
                continue;
            }
            bool divides = true;
            for (std::size_t i = t + 1; i < rows_ && divides; ++i)
                for (std::size_t j = t + 1; j < cols_; ++j)
                    if (at(i, j) % p != 0) {
                        row_add(t, i);
                        divides = false;
                        break;
                    }
            if (divides) return;
        }
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(a_[a * cols_ + j], a_[b * cols_ + j]);
        if (track_)
            for (std::size_t j = 0; j < rows_; ++j) std::swap(u_[a * rows_ + j], u_[b * rows_ + j]);
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap(a_[i * cols_ + a], a_[i * cols_ + b]);
        if (track_)
            for (std::size_t i = 0; i < cols_; ++i) std::swap(v_[i * cols_ + a], v_[i * cols_ + b]);
    }
    // row[i] -= q * row[t]
    void row_sub(std::size_t i, std::size_t t, const Int& q) {
        for (std::size_t j = t; j < cols_; ++j)
            if (a_[t * cols_ + j] != 0) a_[i * cols_ + j] = sub_mul(a_[i * cols_ + j], q, a_[t * cols_ + j]);
        if (track_)
            for (std::size_t j = 0; j < rows_; ++j)
                if (u_[t * rows_ + j] != 0) u_[i * rows_ + j] = sub_mul(u_[i * rows_ + j], q, u_[t * rows_ + j]);
    }
    // col[j] -= q * col[t]
    void col_sub(std::size_t j, std::size_t t, const Int& q) {
        for (std::size_t i = t; i < rows_; ++i)
            if (a_[i * cols_ + t] != 0) a_[i * cols_ + j] = sub_mul(a_[i * cols_ + j], q, a_[i * cols_ + t]);
        if (track_)
            for (std::size_t i = 0; i < cols_; ++i)
                if (v_[i * cols_ + t] != 0) v_[i * cols_ + j] = sub_mul(v_[i * cols_ + j], q, v_[i * cols_ + t]);
    }
    // row[t] += row[i]
    void row_add(std::size_t t, std::size_t i) {
        for (std::size_t j = 0; j < cols_; ++j) a_[t * cols_ + j] = add(a_[t * cols_ + j], a_[i * cols_ + j]);
        if (track_)
            for (std::size_t j = 0; j < rows_; ++j) u_[t * rows_ + j] = add(u_[t * rows_ + j], u_[i * rows_ + j]);
    }
    void negate_row(std::size_t t) {
        for (std::size_t j = 0; j < cols_; ++j) a_[t * cols_ + j] = sub_mul(Int(0), Int(1), a_[t * cols_ + j]);
        if (track_)
            for (std::size_t j = 0; j < rows_; ++j) u_[t * rows_ + j] = sub_mul(Int(0), Int(1), u_[t * rows_ + j]);
    }

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Int> a_;
    bool track_;
    std::vector<Int> u_;
    std::vector<Int> v_;
};

template <class Int>
std::vector<Integer> factors_of(std::size_t rows, std::size_t cols, std::vector<Int> data) {
    Eliminator<Int> e(rows, cols, std::move(data), false);
    std::size_t r = e.run();
    std::vector<Integer> out;
    out.reserve(r);
    for (std::size_t t = 0; t < r; ++t) out.emplace_back(e.at(t, t));
    return out;
}

}  // namespace

SmithDecomposition smith_decomposition(const IntMatrix& a) {
    std::vector<Integer> data(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) data[i * a.cols() + j] = a(i, j);
    Eliminator<Integer> e(a.rows(), a.cols(), std::move(data), true);
    SmithDecomposition out;
    out.rank = e.run();
    out.d = IntMatrix(a.rows(), a.cols());
    for (std::size_t t = 0; t < out.rank; ++t) out.d(t, t) = e.at(t, t);
    out.u = IntMatrix(a.rows(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) out.u(i, j) = e.u()[i * a.rows() + j];
    out.v = IntMatrix(a.cols(), a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out.v(i, j) = e.v()[i * a.cols() + j];
    return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& a) {
    std::vector<long long> small(a.rows() * a.cols());
    bool fits = true;
    for (std::size_t i = 0; i < a.rows() && fits; ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Integer& x = a(i, j);
            if (x > LLONG_MAX || x < -LLONG_MAX) {
                fits = false;
                break;
            }
            small[i * a.cols() + j] = static_cast<long long>(x);
        }
    if (fits) return invariant_factors(a.rows(), a.cols(), small);
    std::vector<Integer> data(a.rows() * a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) data[i * a.cols() + j] = a(i, j);
    return factors_of<Integer>(a.rows(), a.cols(), std::move(data));
}

std::vector<Integer> invariant_factors(std::size_t rows, std::size_t cols, const std::vector<long long>& data) {
    try {
        return factors_of<long long>(rows, cols, data);
    } catch (const Overflow&) {
        std::vector<Integer> big(data.begin(), data.end());
        return factors_of<Integer>(rows, cols, std::move(big));
    }
}

}  // namespace fraisse
