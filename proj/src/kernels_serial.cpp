#include "linfix/kernels.hpp"

namespace linfix::kernels::serial {

void gemm(const double* a, const double* b, double* c,
          std::size_t m, std::size_t k, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a + i * k;
        double* ci = c + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += ai[l] * b[l * n + j];
            ci[j] = s;
        }
    }
}

void gemv(const double* a, const double* x, double* y,
          std::size_t m, std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* ai = a + i * n;
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += ai[j] * x[j];
        y[i] = s;
    }
}

}  // namespace linfix::kernels::serial
