// Benchmark of the OpenMP kernel backend against the serial reference:
// dense matrix products, matrix-vector products, and batched Mann runs.
// The two backends compute identical floating-point results; this tool
// reports wall time and the observed output difference (expected 0).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "linfix/iteration.hpp"
#include "linfix/kernels.hpp"
#include "linfix/matrix.hpp"

using namespace linfix;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_of(const std::function<void()>& body, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = Clock::now();
        body();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

Matrix random_matrix(std::size_t n, std::mt19937_64& rng, double scale) {
    Matrix m(n, n);
    std::uniform_real_distribution<double> d(-scale, scale);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
    return m;
}

void bench_gemm() {
    std::printf("gemm (C = A*B)\n");
    std::printf("%8s %12s %12s %9s %10s\n", "n", "serial[s]", "openmp[s]", "speedup",
                "max|diff|");
    std::mt19937_64 rng(2024);
    for (std::size_t n : {64, 128, 256, 384}) {
        const Matrix a = random_matrix(n, rng, 1.0);
        const Matrix b = random_matrix(n, rng, 1.0);
        Matrix c1(n, n), c2(n, n);
        const double ts = seconds_of(
            [&] { kernels::serial::gemm(a.data(), b.data(), c1.data(), n, n, n); });
        const double tp = seconds_of(
            [&] { kernels::omp::gemm(a.data(), b.data(), c2.data(), n, n, n); });
        double diff = 0.0;
        for (std::size_t i = 0; i < n * n; ++i)
            diff = std::max(diff, std::abs(c1.data()[i] - c2.data()[i]));
        std::printf("%8zu %12.6f %12.6f %8.2fx %10.3g\n", n, ts, tp, ts / tp, diff);
    }
}

void bench_gemv() {
    std::printf("\ngemv (y = A*x)\n");
    std::printf("%8s %12s %12s %9s %10s\n", "n", "serial[s]", "openmp[s]", "speedup",
                "max|diff|");
    std::mt19937_64 rng(7);
    for (std::size_t n : {512, 1024, 2048}) {
        const Matrix a = random_matrix(n, rng, 1.0);
        Vector x(n, 1.0), y1(n), y2(n);
        const int inner = 50;
        const double ts = seconds_of([&] {
            for (int r = 0; r < inner; ++r)
                kernels::serial::gemv(a.data(), x.data(), y1.data(), n, n);
        });
        const double tp = seconds_of([&] {
            for (int r = 0; r < inner; ++r)
                kernels::omp::gemv(a.data(), x.data(), y2.data(), n, n);
        });
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(y1[i] - y2[i]));
        std::printf("%8zu %12.6f %12.6f %8.2fx %10.3g\n", n, ts, tp, ts / tp, diff);
    }
}

void bench_batch_mann() {
    std::printf("\nbatched Mann iteration (independent simulations)\n");
    const std::size_t instances = 64;
    const std::size_t n = 16;
    const std::size_t iters = 20000;
    std::mt19937_64 rng(11);
    std::vector<Matrix> as;
    std::vector<Vector> x0s;
    for (std::size_t i = 0; i < instances; ++i) {
        as.push_back(random_matrix(n, rng, 0.4 / std::sqrt(double(n))));
        x0s.push_back(seeded_unit_vector(n, 1000 + i));
    }
    const StepSchedule sched = StepSchedule::harmonic(1.0);
    IterationOptions opts;
    opts.record_residuals = false;

    const auto run = [&] {
        auto out = mann_batch(as, x0s, sched, iters, opts);
        return out.size();
    };

    kernels::backend() = kernels::Backend::serial;
    const double ts = seconds_of([&] { (void)run(); }, 2);
    kernels::backend() = kernels::Backend::openmp;
    const double tp = seconds_of([&] { (void)run(); }, 2);
    kernels::backend() = kernels::Backend::automatic;

    std::printf("%zu instances of n=%zu, %zu iterations: serial %.3fs, openmp %.3fs, speedup %.2fx\n",
                instances, n, iters, ts, tp, ts / tp);
}

}  // namespace

int main() {
    std::printf("threads available: %d (OpenMP %s)\n\n", kernels::max_threads(),
                kernels::openmp_compiled() ? "enabled" : "disabled");
    bench_gemm();
    bench_gemv();
    bench_batch_mann();
    return 0;
}
