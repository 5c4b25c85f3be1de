#include "linfix/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "linfix/errors.hpp"
#include "linfix/kernels.hpp"

namespace linfix {

StepSchedule StepSchedule::constant(double alpha, double alpha_max) {
    if (alpha <= 0.0 || !std::isfinite(alpha))
        throw ParameterError("constant step size must be positive");
    if (alpha_max <= 0.0 || alpha > alpha_max)
        throw ParameterError("constant step size exceeds alpha_max");
    StepSchedule s;
    s.kind_ = Kind::constant;
    s.coeff_ = alpha;
    s.alpha_max_ = alpha_max;
    s.mann_valid_ = false;
    return s;
}

StepSchedule StepSchedule::harmonic(double c, double alpha_max) {
    if (c <= 0.0 || !std::isfinite(c))
        throw ParameterError("harmonic schedule coefficient must be positive");
    if (alpha_max <= 0.0) throw ParameterError("alpha_max must be positive");
    StepSchedule s;
    s.kind_ = Kind::harmonic;
    s.coeff_ = c;
    s.alpha_max_ = alpha_max;
    s.mann_valid_ = true;
    return s;
}

StepSchedule StepSchedule::sqrt_harmonic(double c, double alpha_max) {
    StepSchedule s = harmonic(c, alpha_max);
    s.kind_ = Kind::sqrt_harmonic;
    return s;
}

StepSchedule StepSchedule::custom(std::function<double(std::size_t)> alpha_fn,
                                  double alpha_max, bool mann_valid) {
    if (!alpha_fn) throw ParameterError("custom schedule requires a generator");
    if (alpha_max <= 0.0) throw ParameterError("alpha_max must be positive");
    StepSchedule s;
    s.kind_ = Kind::custom;
    s.alpha_max_ = alpha_max;
    s.mann_valid_ = mann_valid;
    s.fn_ = std::move(alpha_fn);
    return s;
}

double StepSchedule::alpha(std::size_t k) const {
    double raw = 0.0;
    switch (kind_) {
        case Kind::constant: raw = coeff_; break;
        case Kind::harmonic: raw = coeff_ / static_cast<double>(k + 1); break;
        case Kind::sqrt_harmonic:
            raw = coeff_ / std::sqrt(static_cast<double>(k + 1));
            break;
        case Kind::custom: raw = fn_(k); break;
    }
    if (!(raw > 0.0) || !std::isfinite(raw))
        throw ParameterError("schedule emitted a nonpositive step size");
    return std::min(raw, alpha_max_);
}

namespace {

Trajectory simulate(const Matrix& a, const Vector& x0,
                    const std::function<double(std::size_t)>& step,
                    std::size_t max_iter, const IterationOptions& opt) {
    if (!a.is_square()) throw InputError("iteration requires a square matrix");
    if (!a.all_finite()) throw InputError("iteration: non-finite matrix entry");
    if (x0.size() != a.rows()) throw InputError("x0 dimension mismatch");
    if (!all_finite(x0)) throw InputError("iteration: non-finite start vector");

    const std::size_t n = a.rows();
    Trajectory tr;

    // Iterate storage: either a fixed stride, or adaptive thinning that
    // keeps every state until the cap is reached, then halves the stored
    // set and doubles the stride. Residual lists always stay complete.
    std::size_t thin = opt.thin;
    const bool adaptive = thin == 0;
    if (adaptive) thin = 1;
    const std::size_t store_cap = opt.record_residuals ? 10000 : 256;
    if (opt.record_residuals) {
        tr.residuals.reserve(std::min<std::size_t>(max_iter, 1 << 20));
        tr.fix_residuals.reserve(std::min<std::size_t>(max_iter, 1 << 20));
    }

    Vector x = x0;
    Vector ax(n), xn(n);
    tr.iterates.push_back(x);
    tr.iterate_steps.push_back(0);

    // Trailing-window accumulators for the end-of-run analysis; window
    // bounds are fixed by max_iter.
    const std::size_t tail_start = max_iter / 2;
    const std::size_t decile = std::max<std::size_t>(1, max_iter / 10);
    const std::size_t head_end = std::min(tail_start + decile, max_iter);
    const std::size_t tail_begin = max_iter > decile ? max_iter - decile : 0;
    double min_tail_fix = std::numeric_limits<double>::infinity();
    double head_sum = 0.0, tail_sum = 0.0;
    std::size_t head_cnt = 0, tail_cnt = 0;

    const double x0_norm = norm2(x0);
    const double div_limit = opt.divergence_factor * (1.0 + x0_norm);
    std::size_t consecutive = 0;
    ConvergenceStatus status = ConvergenceStatus::undecided;
    std::size_t steps = 0;

    for (std::size_t k = 0; k < max_iter; ++k) {
        kernels::gemv(a.data(), x.data(), ax.data(), n, n);
        double fix2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - ax[i];
            fix2 += d * d;
        }
        const double fix = std::sqrt(fix2);
        const double xnorm = norm2(x);
        if (opt.record_residuals) tr.fix_residuals.push_back(fix);
        if (k >= tail_start) min_tail_fix = std::min(min_tail_fix, fix);
        if (k >= tail_start && k < head_end) {
            head_sum += xnorm;
            ++head_cnt;
        }
        if (k >= tail_begin) {
            tail_sum += xnorm;
            ++tail_cnt;
        }

        const double alpha = step(k);
        double step2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            xn[i] = (1.0 - alpha) * x[i] + alpha * ax[i];
            const double d = xn[i] - x[i];
            step2 += d * d;
        }
        if (opt.record_residuals) tr.residuals.push_back(std::sqrt(step2));
        x.swap(xn);
        steps = k + 1;

        if (steps % thin == 0) {
            tr.iterates.push_back(x);
            tr.iterate_steps.push_back(steps);
            if (adaptive && tr.iterates.size() > store_cap) {
                thin *= 2;
                std::size_t kept = 0;
                for (std::size_t s = 0; s < tr.iterates.size(); ++s) {
                    if (tr.iterate_steps[s] % thin == 0) {
                        if (kept != s) {
                            tr.iterates[kept] = std::move(tr.iterates[s]);
                            tr.iterate_steps[kept] = tr.iterate_steps[s];
                        }
                        ++kept;
                    }
                }
                tr.iterates.resize(kept);
                tr.iterate_steps.resize(kept);
            }
        }

        if (fix <= opt.conv_tol * (1.0 + xnorm)) {
            if (++consecutive >= opt.conv_window) {
                status = ConvergenceStatus::converged;
                break;
            }
        } else {
            consecutive = 0;
        }
        if (!all_finite(x) || norm2(x) > div_limit) {
            status = ConvergenceStatus::diverged;
            break;
        }
    }

    if (tr.iterate_steps.back() != steps) {
        tr.iterates.push_back(x);
        tr.iterate_steps.push_back(steps);
    }

    ConvergenceVerdict& v = tr.verdict;
    v.iterations_used = steps;
    {
        kernels::gemv(a.data(), x.data(), ax.data(), n, n);
        double fix2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = x[i] - ax[i];
            fix2 += d * d;
        }
        v.final_fix_residual = all_finite(x) ? std::sqrt(fix2)
                                             : std::numeric_limits<double>::infinity();
    }

    if (status == ConvergenceStatus::undecided && steps == max_iter) {
        const double head = head_cnt > 0 ? head_sum / static_cast<double>(head_cnt) : 0.0;
        const double tail = tail_cnt > 0 ? tail_sum / static_cast<double>(tail_cnt) : 0.0;
        if (head > 0.0)
            v.norm_growth_ratio = tail / head;
        else
            v.norm_growth_ratio = tail > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
        if (min_tail_fix > 10.0 * opt.conv_tol) {
            status = v.norm_growth_ratio >= opt.growth_threshold
                         ? ConvergenceStatus::diverged
                         : ConvergenceStatus::oscillating;
        }
    }
    v.status = status;
    if (status == ConvergenceStatus::converged) v.limit = x;

    // Rotation proxy: smallest cosine between stored iterates and the
    // final direction. Values near -1 mean the trajectory visited
    // anti-aligned states, i.e. it rotated or flipped.
    {
        const double fn = norm2(x);
        double proxy = 1.0;
        if (fn > 0.0 && all_finite(x)) {
            for (const Vector& xi : tr.iterates) {
                const double nn = norm2(xi);
                if (nn == 0.0) continue;
                proxy = std::min(proxy, dot(xi, x) / (nn * fn));
            }
        }
        v.rotation_proxy = proxy;
    }
    return tr;
}

}  // namespace

Trajectory picard(const Matrix& a, const Vector& x0, std::size_t max_iter,
                  const IterationOptions& opts) {
    return simulate(a, x0, [](std::size_t) { return 1.0; }, max_iter, opts);
}

Trajectory krasnoselskij(const Matrix& a, const Vector& x0, double alpha,
                         std::size_t max_iter, const IterationOptions& opts) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ParameterError("Krasnoselskij step size must lie in (0, 1)");
    return simulate(a, x0, [alpha](std::size_t) { return alpha; }, max_iter, opts);
}

Trajectory mann(const Matrix& a, const Vector& x0, const StepSchedule& schedule,
                std::size_t max_iter, const IterationOptions& opts) {
    if (!schedule.mann_valid())
        throw ParameterError(
            "Mann iteration requires a vanishing, non-summable schedule "
            "(constant schedules are not Mann-valid)");
    return simulate(a, x0, [&schedule](std::size_t k) { return schedule.alpha(k); },
                    max_iter, opts);
}

namespace {

void check_batch_sizes(std::size_t a, std::size_t b) {
    if (a != b) throw InputError("batch inputs have mismatched lengths");
}

}  // namespace

std::vector<Trajectory> picard_batch(const std::vector<Matrix>& as,
                                     const std::vector<Vector>& x0s,
                                     std::size_t max_iter,
                                     const IterationOptions& opts) {
    check_batch_sizes(as.size(), x0s.size());
    std::vector<Trajectory> out(as.size());
    kernels::parallel_for(as.size(), [&](std::size_t i) {
        out[i] = picard(as[i], x0s[i], max_iter, opts);
    });
    return out;
}

std::vector<Trajectory> krasnoselskij_batch(const std::vector<Matrix>& as,
                                            const std::vector<Vector>& x0s,
                                            const std::vector<double>& alphas,
                                            std::size_t max_iter,
                                            const IterationOptions& opts) {
    check_batch_sizes(as.size(), x0s.size());
    check_batch_sizes(as.size(), alphas.size());
    std::vector<Trajectory> out(as.size());
    kernels::parallel_for(as.size(), [&](std::size_t i) {
        out[i] = krasnoselskij(as[i], x0s[i], alphas[i], max_iter, opts);
    });
    return out;
}

std::vector<Trajectory> mann_batch(const std::vector<Matrix>& as,
                                   const std::vector<Vector>& x0s,
                                   const StepSchedule& schedule,
                                   std::size_t max_iter,
                                   const IterationOptions& opts) {
    check_batch_sizes(as.size(), x0s.size());
    std::vector<Trajectory> out(as.size());
    kernels::parallel_for(as.size(), [&](std::size_t i) {
        out[i] = mann(as[i], x0s[i], schedule, max_iter, opts);
    });
    return out;
}

std::array<double, 2> oracle_jordan_growth(double c, double y1_0, std::size_t k) {
    return {y1_0 + static_cast<double>(k) * c, c};
}

std::array<double, 2> oracle_jordan_growth(double c, double y1_0, std::size_t k,
                                           const StepSchedule& schedule) {
    double acc = 0.0;
    for (std::size_t h = 0; h < k; ++h) acc += schedule.alpha(h);
    return {y1_0 + c * acc, c};
}

double oracle_scalar_product(double epsilon, const StepSchedule& schedule,
                             double s0, std::size_t k) {
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    double s = s0;
    for (std::size_t h = 0; h <= k; ++h) s *= 1.0 + epsilon * schedule.alpha(h);
    return s;
}

std::array<double, 2> oracle_rotation(double sigma, double omega,
                                      const StepSchedule& schedule,
                                      const std::array<double, 2>& z0,
                                      std::size_t k) {
    if (!(sigma >= 1.0)) throw ParameterError("sigma must be at least 1");
    if (!(omega > 0.0)) throw ParameterError("omega must be positive");
    const double eps = sigma - 1.0;
    double radius = 1.0;
    double angle = 0.0;
    for (std::size_t h = 0; h <= k; ++h) {
        const double al = schedule.alpha(h);
        const double re = 1.0 + eps * al;
        const double im = omega * al;
        radius *= std::sqrt(re * re + im * im);
        angle += std::atan(im / re);
    }
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    return {radius * (cs * z0[0] - sn * z0[1]), radius * (sn * z0[0] + cs * z0[1])};
}

Vector seeded_unit_vector(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw InputError("seeded_unit_vector: dimension must be positive");
    std::mt19937_64 rng(seed);
    const auto uniform01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    Vector v(n);
    double s = 0.0;
    while (s == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            double u1 = 0.0;
            do {
                u1 = uniform01();
            } while (u1 <= 0.0);
            const double u2 = uniform01();
            v[i] = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(6.283185307179586476925287 * u2);
        }
        s = norm2(v);
    }
    for (double& x : v) x /= s;
    return v;
}

}  // namespace linfix
