#pragma once

#include <cstddef>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace linfix::kernels {

/// Backend selection for the data-parallel kernels. `automatic` switches to
/// OpenMP above a work-size threshold; `serial` forces the reference path
/// (used by the equivalence tests and the benchmark).
enum class Backend { serial, openmp, automatic };

Backend& backend();

bool openmp_compiled();
int max_threads();

/// Serial reference kernels. The OpenMP variants parallelize the outer loop
/// only and keep the inner accumulation order identical, so both backends
/// produce bitwise-equal results.
namespace serial {
void gemm(const double* a, const double* b, double* c,
          std::size_t m, std::size_t k, std::size_t n);
void gemv(const double* a, const double* x, double* y,
          std::size_t m, std::size_t n);
}  // namespace serial

namespace omp {
void gemm(const double* a, const double* b, double* c,
          std::size_t m, std::size_t k, std::size_t n);
void gemv(const double* a, const double* x, double* y,
          std::size_t m, std::size_t n);
}  // namespace omp

// Dispatching entry points used by the Matrix operators.
void gemm(const double* a, const double* b, double* c,
          std::size_t m, std::size_t k, std::size_t n);
void gemv(const double* a, const double* x, double* y,
          std::size_t m, std::size_t n);

// Work-size thresholds (in fused multiply-adds) below which the automatic
// backend stays serial; tiny problems lose more to thread startup than the
// loop costs.
inline constexpr std::size_t gemm_parallel_threshold = std::size_t{1} << 18;
inline constexpr std::size_t gemv_parallel_threshold = std::size_t{1} << 16;

/// Runs body(0..count-1), in parallel when the active backend allows it.
/// Items must be independent. The first exception thrown by any item is
/// rethrown after the loop completes.
template <class F>
void parallel_for(std::size_t count, F&& body) {
#ifdef _OPENMP
    if (backend() != Backend::serial && count > 1) {
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
#pragma omp critical(linfix_parallel_for_err)
                {
                    if (!err) err = std::current_exception();
                }
            }
        }
        if (err) std::rethrow_exception(err);
        return;
    }
#endif
    for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace linfix::kernels
