#include "linfix/kernels.hpp"

// Row-parallel variants of the reference kernels. Each output row is owned
// by one thread and computed with the same inner-loop order as the serial
// code, so results match the reference bitwise.

namespace linfix::kernels::omp {

void gemm(const double* a, const double* b, double* c,
          std::size_t m, std::size_t k, std::size_t n) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double* ai = a + i * k;
        double* ci = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += ai[l] * b[l * n + j];
            ci[j] = s;
        }
    }
#else
    serial::gemm(a, b, c, m, k, n);
#endif
}

void gemv(const double* a, const double* x, double* y,
          std::size_t m, std::size_t n) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long ii = 0; ii < static_cast<long long>(m); ++ii) {
        const std::size_t i = static_cast<std::size_t>(ii);
        const double* ai = a + i * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ai[j] * x[j];
        y[i] = s;
    }
#else
    serial::gemv(a, x, y, m, n);
#endif
}

}  // namespace linfix::kernels::omp
