#include "linfix/kernels.hpp"

namespace linfix::kernels {

Backend& backend() {
    static Backend selected = Backend::automatic;
    return selected;
}

bool openmp_compiled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

bool use_parallel(std::size_t work, std::size_t threshold) {
    if (!openmp_compiled()) return false;
#ifdef _OPENMP
    // Inside an enclosing parallel region (e.g. a batch run) the kernels
    // stay serial; nesting only adds team startup cost.
    if (omp_in_parallel()) return false;
#endif
    switch (backend()) {
        case Backend::serial: return false;
        case Backend::openmp: return true;
        case Backend::automatic: return work >= threshold;
    }
    return false;
}

}  // namespace

void gemm(const double* a, const double* b, double* c,
          std::size_t m, std::size_t k, std::size_t n) {
    if (use_parallel(m * k * n, gemm_parallel_threshold))
        omp::gemm(a, b, c, m, k, n);
    else
        serial::gemm(a, b, c, m, k, n);
}

void gemv(const double* a, const double* x, double* y,
          std::size_t m, std::size_t n) {
    if (use_parallel(m * n, gemv_parallel_threshold))
        omp::gemv(a, x, y, m, n);
    else
        serial::gemv(a, x, y, m, n);
}

}  // namespace linfix::kernels
