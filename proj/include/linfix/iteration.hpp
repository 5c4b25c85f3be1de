#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "linfix/linalg.hpp"
#include "linfix/matrix.hpp"

namespace linfix {

/// Step-size sequence (alpha_k) for the relaxed iterations. Emitted steps
/// are clamped to alpha_max and must stay positive. The built-in decaying
/// kinds are Mann-valid by construction (alpha_k -> 0, sum alpha_k = inf);
/// custom schedules carry a caller-asserted flag.
class StepSchedule {
public:
    enum class Kind { constant, harmonic, sqrt_harmonic, custom };

    static StepSchedule constant(double alpha, double alpha_max = 1.0);
    /// alpha_k = c / (k + 1)
    static StepSchedule harmonic(double c, double alpha_max = 1.0);
    /// alpha_k = c / sqrt(k + 1)
    static StepSchedule sqrt_harmonic(double c, double alpha_max = 1.0);
    static StepSchedule custom(std::function<double(std::size_t)> alpha_fn,
                               double alpha_max, bool mann_valid);

    Kind kind() const { return kind_; }
    double coefficient() const { return coeff_; }
    double alpha_max() const { return alpha_max_; }
    bool mann_valid() const { return mann_valid_; }

    /// Step at iteration k, clamped to alpha_max.
    double alpha(std::size_t k) const;

private:
    StepSchedule() = default;
    Kind kind_ = Kind::constant;
    double coeff_ = 1.0;
    double alpha_max_ = 1.0;
    bool mann_valid_ = false;
    std::function<double(std::size_t)> fn_;
};

enum class ConvergenceStatus { converged, diverged, oscillating, undecided };

struct ConvergenceVerdict {
    ConvergenceStatus status = ConvergenceStatus::undecided;
    Vector limit;  // populated when converged
    std::size_t iterations_used = 0;
    double final_fix_residual = 0.0;
    /// Mean ||x(k)|| over the last decile of the trailing half divided by
    /// the mean over its first decile; sustained values above the growth
    /// threshold indicate (possibly slow) divergence.
    double norm_growth_ratio = 1.0;
    /// Smallest cosine between trailing iterates and the final state; values
    /// near -1 reveal rotating trajectories.
    double rotation_proxy = 1.0;
};

struct Trajectory {
    std::vector<Vector> iterates;           // thinned; first and final kept
    std::vector<std::size_t> iterate_steps; // iteration index per stored state
    std::vector<double> residuals;          // ||x(k+1) - x(k)||
    std::vector<double> fix_residuals;      // ||(I - A) x(k)||
    ConvergenceVerdict verdict;

    const Vector& final_state() const { return iterates.back(); }
};

struct IterationOptions {
    double conv_tol = defaults::conv_tol;
    std::size_t conv_window = 50;   // consecutive small fixed-point residuals
    double divergence_factor = 1e12;
    double growth_threshold = 1.02;
    std::size_t thin = 0;           // iterate storage stride; 0 = automatic
    bool record_residuals = true;   // false keeps only evidence (batch runs)
};

/// x(k+1) = A x(k).
Trajectory picard(const Matrix& a, const Vector& x0, std::size_t max_iter = 100000,
                  const IterationOptions& opts = {});

/// x(k+1) = (1 - alpha) x(k) + alpha A x(k), constant alpha in (0, 1).
Trajectory krasnoselskij(const Matrix& a, const Vector& x0, double alpha,
                         std::size_t max_iter = 100000,
                         const IterationOptions& opts = {});

/// x(k+1) = (1 - alpha_k) x(k) + alpha_k A x(k) with a Mann-valid schedule.
Trajectory mann(const Matrix& a, const Vector& x0, const StepSchedule& schedule,
                std::size_t max_iter = 100000, const IterationOptions& opts = {});

// Batched variants; independent simulations run in parallel under the
// OpenMP backend and results keep the input order.
std::vector<Trajectory> picard_batch(const std::vector<Matrix>& as,
                                     const std::vector<Vector>& x0s,
                                     std::size_t max_iter,
                                     const IterationOptions& opts = {});
std::vector<Trajectory> krasnoselskij_batch(const std::vector<Matrix>& as,
                                            const std::vector<Vector>& x0s,
                                            const std::vector<double>& alphas,
                                            std::size_t max_iter,
                                            const IterationOptions& opts = {});
std::vector<Trajectory> mann_batch(const std::vector<Matrix>& as,
                                   const std::vector<Vector>& x0s,
                                   const StepSchedule& schedule,
                                   std::size_t max_iter,
                                   const IterationOptions& opts = {});

/// Closed-form state of the 2-d defective block [[1,1],[0,1]] under unit
/// steps: (y1(0) + k c, c) with c the invariant second component.
std::array<double, 2> oracle_jordan_growth(double c, double y1_0, std::size_t k);
/// Same block under an arbitrary schedule: (y1(0) + c * sum_{h<k} alpha_h, c).
std::array<double, 2> oracle_jordan_growth(double c, double y1_0, std::size_t k,
                                           const StepSchedule& schedule);

/// Scalar block 1 + epsilon: value prod_{h=0}^{k} (1 + epsilon alpha_h) * s0,
/// i.e. the state after k + 1 relaxed steps.
double oracle_scalar_product(double epsilon, const StepSchedule& schedule,
                             double s0, std::size_t k);

/// Rotation block [[sigma, -omega], [omega, sigma]], sigma = 1 + epsilon:
/// state after k + 1 relaxed steps, (prod rho_h) R(sum theta_h) z0 with
/// rho_h = sqrt((1 + eps a_h)^2 + (omega a_h)^2) and
/// theta_h = atan(omega a_h / (1 + eps a_h)).
std::array<double, 2> oracle_rotation(double sigma, double omega,
                                      const StepSchedule& schedule,
                                      const std::array<double, 2>& z0,
                                      std::size_t k);

/// Deterministic pseudo-random unit vector (explicit Box-Muller over
/// mt19937_64, stable across platforms). Default start for iterations.
Vector seeded_unit_vector(std::size_t n, std::uint64_t seed = 42);

}  // namespace linfix
