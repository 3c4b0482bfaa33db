#pragma once

#include <vector>

#include "spinorbit/scalar.hpp"

namespace spinorbit {

using Vec = std::vector<GaussianRational>;
using Mat = std::vector<Vec>;

struct LinearSolution {
    bool consistent = false;
    bool unique = false;
    Vec solution;               // one solution when consistent
    std::vector<Vec> nullspace; // basis of the homogeneous solution space
};

// Exact Gauss-Jordan over the Gaussian rationals.
inline LinearSolution solve_linear(Mat a, Vec b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : (b.empty() ? 0 : 0);
    size_t n = cols;
    if (!rows)
        n = 0;
    std::vector<int> pivot_col_of_row;
    std::vector<int> pivot_row_of_col(n, -1);
    size_t r = 0;
    for (size_t c = 0; c < n && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c].is_zero())
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        GaussianRational inv = GaussianRational::one() / a[r][c];
        for (size_t j = c; j < n; ++j)
            a[r][j] *= inv;
        b[r] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero())
                continue;
            GaussianRational f = a[i][c];
            for (size_t j = c; j < n; ++j)
                a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        pivot_row_of_col[c] = static_cast<int>(r);
        pivot_col_of_row.push_back(static_cast<int>(c));
        ++r;
    }
    LinearSolution out;
    for (size_t i = r; i < rows; ++i)
        if (!b[i].is_zero())
            return out;  // inconsistent
    out.consistent = true;
    out.solution.assign(n, GaussianRational::zero());
    for (size_t c = 0; c < n; ++c)
        if (pivot_row_of_col[c] >= 0)
            out.solution[c] = b[pivot_row_of_col[c]];
    for (size_t c = 0; c < n; ++c) {
        if (pivot_row_of_col[c] >= 0)
            continue;
        Vec null(n, GaussianRational::zero());
        null[c] = GaussianRational::one();
        for (size_t cc = 0; cc < n; ++cc) {
            int pr = pivot_row_of_col[cc];
            if (pr >= 0)
                null[cc] = -a[pr][c];
        }
        out.nullspace.push_back(std::move(null));
    }
    out.unique = out.nullspace.empty();
    return out;
}

}  // namespace spinorbit
