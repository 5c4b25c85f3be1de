#include "linfix/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linfix/errors.hpp"

namespace linfix {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_square_finite(const Matrix& a, const char* op) {
    if (!a.is_square()) throw InputError(std::string(op) + " requires a square matrix");
    if (!a.all_finite()) throw InputError(std::string(op) + ": non-finite input entry");
}

struct Lu {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

Lu lu_factor(Matrix a) {
    const std::size_t n = a.rows();
    Lu f{std::move(a), std::vector<std::size_t>(n), 1, false};
    std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
    const double scale = f.lu.max_abs();
    const double pivot_floor = static_cast<double>(std::max<std::size_t>(n, 1)) * kEps * scale;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(f.lu(r, c)) > std::abs(f.lu(p, c))) p = r;
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(p, j), f.lu(c, j));
            std::swap(f.perm[p], f.perm[c]);
            f.sign = -f.sign;
        }
        const double piv = f.lu(c, c);
        if (std::abs(piv) <= pivot_floor) {
            f.singular = true;
            continue;
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double m = f.lu(r, c) / piv;
            f.lu(r, c) = m;
            for (std::size_t j = c + 1; j < n; ++j) f.lu(r, j) -= m * f.lu(c, j);
        }
    }
    return f;
}

Vector lu_solve_one(const Lu& f, const Vector& b) {
    const std::size_t n = f.lu.rows();
    Vector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= f.lu(ii, j) * x[j];
        x[ii] /= f.lu(ii, ii);
    }
    return x;
}

[[noreturn]] void throw_singular(const Matrix& a) {
    throw RankDeficiencyError("linear system singular to working precision",
                              rank(a, defaults::rank_tol));
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const Matrix& s) {
    require_square_finite(s, "symmetric_eigenvalues");
    const std::size_t n = s.rows();
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (s(i, j) + s(j, i));

    // Cyclic Jacobi sweeps until the off-diagonal mass is negligible.
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
        off = std::sqrt(off);
        if (off <= 1e-15 * std::max(1.0, a.frobenius_norm())) {
            std::vector<double> vals(n);
            for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i);
            std::sort(vals.begin(), vals.end());
            return vals;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                if (std::abs(apq) <= 1e-18 * (std::abs(app) + std::abs(aqq))) continue;
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
            }
        }
    }
    throw NumericError("Jacobi eigenvalue iteration did not converge");
}

Svd svd(const Matrix& a) {
    require_square_finite(a, "svd");
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix v = Matrix::identity(n);

    // The computed column dot product carries rounding noise of order
    // n * eps * |w_p| * |w_q|; the rotation threshold must sit above it or
    // near-parallel columns make the sweeps cycle forever.
    const double rot_tol = std::max(1e-13, static_cast<double>(n) * 8.0 * kEps);
    const int max_sweeps = 64;
    bool converged = n < 2;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        converged = true;
        // Columns whose norm has collapsed to rounding level carry zero
        // singular values; excluding them stops exactly-parallel pairs from
        // trading an eps-sized remainder back and forth across sweeps.
        double wmax2 = 0.0;
        std::vector<double> colnorm2(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += w(i, j) * w(i, j);
            colnorm2[j] = s;
            wmax2 = std::max(wmax2, s);
        }
        const double drop2 = 64.0 * kEps * kEps * wmax2;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (colnorm2[p] <= drop2 || colnorm2[q] <= drop2) continue;
                double dpp = 0.0, dqq = 0.0, dpq = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    dpp += w(i, p) * w(i, p);
                    dqq += w(i, q) * w(i, q);
                    dpq += w(i, p) * w(i, q);
                }
                if (std::abs(dpq) <= rot_tol * std::sqrt(dpp * dqq) || dpq == 0.0)
                    continue;
                converged = false;
                const double zeta = (dqq - dpp) / (2.0 * dpq);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double wip = w(i, p);
                    const double wiq = w(i, q);
                    w(i, p) = c * wip - sn * wiq;
                    w(i, q) = sn * wip + c * wiq;
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
        }
    }
    if (!converged) throw NumericError("one-sided Jacobi SVD did not converge");

    Svd out{Matrix(n, n), Vector(n), Matrix(n, n)};
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    Vector norms(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += w(i, j) * w(i, j);
        norms[j] = std::sqrt(s);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = norms[src];
        for (std::size_t i = 0; i < n; ++i) {
            out.v(i, j) = v(i, src);
            out.u(i, j) = norms[src] > 0.0 ? w(i, src) / norms[src] : 0.0;
        }
    }
    return out;
}

std::size_t rank(const Matrix& a, double tol) {
    if (tol <= 0.0) throw ParameterError("rank tolerance must be positive");
    if (a.empty()) return 0;
    const Svd d = svd(a);
    const double smax = d.sigma.empty() ? 0.0 : d.sigma.front();
    if (smax == 0.0) return 0;
    std::size_t r = 0;
    for (double s : d.sigma)
        if (s > tol * smax) ++r;
    return r;
}

namespace {

Matrix select_columns(const Matrix& m, const std::vector<std::size_t>& cols) {
    Matrix out(m.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = m(i, cols[j]);
    return out;
}

}  // namespace

Matrix nullspace(const Matrix& a, double tol) {
    const Svd d = svd(a);
    const double smax = d.sigma.empty() ? 0.0 : d.sigma.front();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < d.sigma.size(); ++j)
        if (smax == 0.0 || d.sigma[j] <= tol * smax) cols.push_back(j);
    return select_columns(d.v, cols);
}

Matrix range_basis(const Matrix& a, double tol) {
    const Svd d = svd(a);
    const double smax = d.sigma.empty() ? 0.0 : d.sigma.front();
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < d.sigma.size(); ++j)
        if (smax > 0.0 && d.sigma[j] > tol * smax) cols.push_back(j);
    return select_columns(d.u, cols);
}

double cond2(const Matrix& a) {
    const Svd d = svd(a);
    if (d.sigma.empty()) return 1.0;
    const double smin = d.sigma.back();
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return d.sigma.front() / smin;
}

double operator_norm2(const Matrix& a) {
    const Svd d = svd(a);
    return d.sigma.empty() ? 0.0 : d.sigma.front();
}

Vector solve_linear(const Matrix& a, const Vector& b) {
    require_square_finite(a, "solve_linear");
    if (b.size() != a.rows()) throw InputError("solve_linear: right-hand side size mismatch");
    const Lu f = lu_factor(a);
    if (f.singular) throw_singular(a);
    return lu_solve_one(f, b);
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
    require_square_finite(a, "solve_linear");
    if (b.rows() != a.rows()) throw InputError("solve_linear: right-hand side size mismatch");
    const Lu f = lu_factor(a);
    if (f.singular) throw_singular(a);
    Matrix x(b.rows(), b.cols());
    Vector col(b.rows());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < b.rows(); ++i) col[i] = b(i, j);
        const Vector sol = lu_solve_one(f, col);
        for (std::size_t i = 0; i < b.rows(); ++i) x(i, j) = sol[i];
    }
    return x;
}

Matrix inverse(const Matrix& a) { return solve_linear(a, Matrix::identity(a.rows())); }

double determinant(const Matrix& a) {
    require_square_finite(a, "determinant");
    const Lu f = lu_factor(a);
    if (f.singular) return 0.0;
    double d = static_cast<double>(f.sign);
    for (std::size_t i = 0; i < a.rows(); ++i) d *= f.lu(i, i);
    return d;
}

bool is_positive_definite(const Matrix& p, double tol_sym, double tol_pd) {
    require_square_finite(p, "is_positive_definite");
    const std::size_t n = p.rows();
    if (n == 0) return false;
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            asym = std::max(asym, std::abs(p(i, j) - p(j, i)));
    if (asym > tol_sym * std::max(p.max_abs(), 1e-300)) return false;
    const std::vector<double> vals = symmetric_eigenvalues(p);
    const double scale = std::max(std::abs(vals.front()), std::abs(vals.back()));
    return vals.front() > tol_pd * scale;
}

}  // namespace linfix
