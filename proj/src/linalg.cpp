#include "liftsched/linalg.hpp"

#include "liftsched/errors.hpp"

#include <algorithm>

namespace liftsched {

namespace {

struct Echelon {
    RatMatrix mat;            // reduced row echelon form
    std::vector<int> pivot_col; // per pivot row
};

Echelon rref(RatMatrix A) {
    Echelon e;
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (A[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel == rows) continue;
        std::swap(A[r], A[sel]);
        Rat inv = 1 / A[r][c];
        for (std::size_t j = c; j < cols; ++j)
            if (A[r][j] != 0) A[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c];
            for (std::size_t j = c; j < cols; ++j)
                if (A[r][j] != 0) A[i][j] -= f * A[r][j];
        }
        e.pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    e.mat = std::move(A);
    return e;
}

} // namespace

std::optional<RatVec> solve_linear(RatMatrix A, RatVec b) {
    std::size_t rows = A.size();
    if (rows != b.size()) throw Error("solve_linear: shape mismatch");
    std::size_t cols = rows ? A[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) A[i].push_back(b[i]);
    Echelon e = rref(std::move(A));
    // inconsistent iff a pivot lands in the augmented column
    for (int pc : e.pivot_col)
        if (static_cast<std::size_t>(pc) == cols) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (std::size_t r = 0; r < e.pivot_col.size(); ++r)
        x[static_cast<std::size_t>(e.pivot_col[r])] = e.mat[r].back();
    return x;
}

std::vector<RatVec> kernel_basis(RatMatrix A) {
    std::size_t cols = A.empty() ? 0 : A[0].size();
    Echelon e = rref(std::move(A));
    std::vector<char> is_pivot(cols, 0);
    for (int pc : e.pivot_col) is_pivot[static_cast<std::size_t>(pc)] = 1;
    std::vector<RatVec> basis;
    for (std::size_t free_c = 0; free_c < cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        RatVec v(cols, Rat(0));
        v[free_c] = 1;
        for (std::size_t r = 0; r < e.pivot_col.size(); ++r)
            v[static_cast<std::size_t>(e.pivot_col[r])] = -e.mat[r][free_c];
        basis.push_back(std::move(v));
    }
    return basis;
}

PsdReport psd_check(RatMatrix M) {
    std::size_t n = M.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (M[i].size() != n) throw Error("psd_check: matrix not square");
        for (std::size_t j = i + 1; j < n; ++j)
            if (M[i][j] != M[j][i]) throw Error("psd_check: matrix not symmetric");
    }
    for (std::size_t k = 0; k < n; ++k) {
        const Rat d = M[k][k];
        if (d < 0) return {false, static_cast<int>(k)};
        if (d == 0) {
            // PSD requires the whole residual row to vanish
            for (std::size_t j = k + 1; j < n; ++j)
                if (M[k][j] != 0) return {false, static_cast<int>(k)};
            continue;
        }
        // symmetric elimination; the trailing block stays symmetric
        for (std::size_t i = k + 1; i < n; ++i) {
            if (M[i][k] == 0) continue;
            Rat f = M[i][k] / d;
            for (std::size_t j = k + 1; j < n; ++j)
                if (M[k][j] != 0) M[i][j] -= f * M[k][j];
        }
    }
    return {true, -1};
}

} // namespace liftsched
