#pragma once

// Smith normal form over the integers.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <vector>

namespace fraisse {

using Integer = boost::multiprecision::cpp_int;

/// Dense row-major integer matrix.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static IntMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// d = u * a * v with u, v unimodular and d diagonal, each positive diagonal
/// entry dividing the next, zeros last.
struct SmithDecomposition {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    std::size_t rank = 0;
};

SmithDecomposition smith_decomposition(const IntMatrix& a);

/// Nonzero diagonal of the Smith form, ascending under divisibility. Runs in
/// 64-bit arithmetic and redoes the work with unbounded integers if any
/// intermediate would overflow.
std::vector<Integer> invariant_factors(const IntMatrix& a);

/// Same for a small-entry matrix given as row-major int64 data.
std::vector<Integer> invariant_factors(std::size_t rows, std::size_t cols, const std::vector<long long>& data);

}  // namespace fraisse
