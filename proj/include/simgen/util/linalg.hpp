#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace simgen::util {

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Solve A X = B in place by Gaussian elimination with partial pivoting.
/// A is row-major n x n (destroyed); B is row-major n x m and receives X.
inline void solve_linear(std::vector<double>& a, std::vector<double>& b, std::size_t n,
                         std::size_t m = 1) {
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == 0.0) throw SingularMatrix("singular linear system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[piv * n + c]);
            for (std::size_t c = 0; c < m; ++c) std::swap(b[col * m + c], b[piv * m + c]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            double f = a[r * n + col] / a[col * n + col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            for (std::size_t c = 0; c < m; ++c) b[r * m + c] -= f * b[col * m + c];
        }
    }
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t c = 0; c < m; ++c) {
            double s = b[ri * m + c];
            for (std::size_t k = ri + 1; k < n; ++k) s -= a[ri * n + k] * b[k * m + c];
            b[ri * m + c] = s / a[ri * n + ri];
        }
    }
}

}  // namespace simgen::util
