#pragma once

#include <optional>

#include "cosimplex/matrix.hpp"

namespace cosimplex {

/// Which transforms smith_normal_form should accumulate.
struct SmithOptions {
    bool left = true;           // U
    bool right = true;          // V
    bool left_inverse = false;  // U^{-1}
    bool right_inverse = false; // V^{-1}
};

/// S = U * M * V with S diagonal, d_1 | d_2 | ... | d_r > 0 followed by zeros.
struct SmithResult {
    Matrix S;
    Matrix U, V, U_inv, V_inv;  // empty when not requested
    std::size_t rank = 0;

    /// The nonzero invariant factors d_1..d_r.
    IntVector invariant_factors() const {
        IntVector d(rank);
        for (std::size_t i = 0; i < rank; ++i) d[i] = S(i, i);
        return d;
    }
};

inline SmithResult smith_normal_form(Matrix M, SmithOptions opt = {}) {
    const std::size_t rows = M.rows(), cols = M.cols();
    SmithResult res;
    if (opt.left) res.U = Matrix::identity(rows);
    if (opt.left_inverse) res.U_inv = Matrix::identity(rows);
    if (opt.right) res.V = Matrix::identity(cols);
    if (opt.right_inverse) res.V_inv = Matrix::identity(cols);

    auto row_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        M.add_row(dst, src, k);
        if (opt.left) res.U.add_row(dst, src, k);
        if (opt.left_inverse) res.U_inv.add_col(src, dst, -k);
    };
    auto row_swap = [&](std::size_t a, std::size_t b) {
        M.swap_rows(a, b);
        if (opt.left) res.U.swap_rows(a, b);
        if (opt.left_inverse) res.U_inv.swap_cols(a, b);
    };
    auto row_negate = [&](std::size_t r) {
        M.negate_row(r);
        if (opt.left) res.U.negate_row(r);
        if (opt.left_inverse) res.U_inv.negate_col(r);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Int& k) {
        M.add_col(dst, src, k);
        if (opt.right) res.V.add_col(dst, src, k);
        if (opt.right_inverse) res.V_inv.add_row(src, dst, -k);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        M.swap_cols(a, b);
        if (opt.right) res.V.swap_cols(a, b);
        if (opt.right_inverse) res.V_inv.swap_rows(a, b);
    };

    std::size_t t = 0;
    const std::size_t limit = std::min(rows, cols);
    while (t < limit) {
        // Pivot: smallest nonzero magnitude in the trailing block.
        bool found = false;
        std::size_t pr = 0, pc = 0;
        Int best;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                const Int& v = M(i, j);
                if (v == 0) continue;
                Int a = abs(v);
                if (!found || a < best) {
                    found = true;
                    best = a;
                    pr = i;
                    pc = j;
                    if (best == 1) goto pivot_chosen;
                }
            }
    pivot_chosen:
        if (!found) break;
        row_swap(t, pr);
        col_swap(t, pc);

        bool dirty = false;
        for (std::size_t i = t + 1; i < rows; ++i) {
            if (M(i, t) == 0) continue;
            Int q = M(i, t) / M(t, t);
            row_add(i, t, -q);
            if (M(i, t) != 0) dirty = true;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
            if (M(t, j) == 0) continue;
            Int q = M(t, j) / M(t, t);
            col_add(j, t, -q);
            if (M(t, j) != 0) dirty = true;
        }
        if (dirty) continue;  // a smaller remainder is now available as pivot

        // Row and column t are clear; enforce divisibility of the rest.
        bool fixed = true;
        for (std::size_t i = t + 1; i < rows && fixed; ++i)
            for (std::size_t j = t + 1; j < cols; ++j)
                if (M(i, j) % M(t, t) != 0) {
                    row_add(t, i, 1);
                    fixed = false;
                    break;
                }
        if (!fixed) continue;

        if (M(t, t) < 0) row_negate(t);
        ++t;
    }
    res.rank = t;
    res.S = std::move(M);
    return res;
}

/// Precomputed solver for integer systems M y = b with a fixed M.
class LatticeSolver {
public:
    LatticeSolver() = default;
    explicit LatticeSolver(const Matrix& M)
        : rows_(M.rows()), cols_(M.cols()), snf_(smith_normal_form(M)) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rank() const noexcept { return snf_.rank; }

    /// Some integer y with M y = b, or nullopt when b is outside the column lattice.
    std::optional<IntVector> solve(const IntVector& b) const {
        if (b.size() != rows_) throw ShapeMismatch("right-hand side length mismatch");
        IntVector ub = snf_.U * b;
        IntVector z(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i < snf_.rank) {
                const Int& d = snf_.S(i, i);
                if (ub[i] % d != 0) return std::nullopt;
                z[i] = ub[i] / d;
            } else if (ub[i] != 0) {
                return std::nullopt;
            }
        }
        return snf_.V * z;
    }

    bool contains(const IntVector& b) const { return solve(b).has_value(); }

    /// Basis of the integer kernel of M, as columns.
    Matrix kernel_basis() const {
        Matrix K(cols_, cols_ - snf_.rank);
        for (std::size_t j = snf_.rank; j < cols_; ++j)
            for (std::size_t i = 0; i < cols_; ++i) K(i, j - snf_.rank) = snf_.V(i, j);
        return K;
    }

    const SmithResult& smith() const noexcept { return snf_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    SmithResult snf_;
};

inline std::optional<IntVector> solve_integer(const Matrix& M, const IntVector& b) {
    return LatticeSolver(M).solve(b);
}

/// Basis (as columns) of the lattice of integer vectors x with M x = 0.
inline Matrix integer_kernel(const Matrix& M) { return LatticeSolver(M).kernel_basis(); }

/// Basis (as columns) of the lattice spanned by the columns of M.
inline Matrix column_lattice_basis(const Matrix& M) {
    SmithOptions opt;
    opt.left = false;
    opt.right = false;
    opt.left_inverse = true;
    SmithResult r = smith_normal_form(M, opt);
    // M V = U^{-1} S, so the column lattice is spanned by d_i * (U^{-1} column i).
    Matrix B(M.rows(), r.rank);
    for (std::size_t j = 0; j < r.rank; ++j)
        for (std::size_t i = 0; i < M.rows(); ++i) B(i, j) = r.U_inv(i, j) * r.S(j, j);
    return B;
}

}  // namespace cosimplex
