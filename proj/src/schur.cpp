#include <algorithm>
#include <cmath>
#include <vector>

#include "linfix/errors.hpp"
#include "linfix/linalg.hpp"

// Eigenvalues of a general real matrix: orthogonal (Householder) reduction
// to upper Hessenberg form, then the implicit double-shift QR iteration in
// the classic EISPACK formulation (hqr), eigenvalues only.

namespace linfix {

namespace {

double sign_of(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

void hessenberg_reduce(Matrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    std::vector<double> ort(n, 0.0);
    for (std::size_t m = 1; m + 1 < n; ++m) {
        double scale = 0.0;
        for (std::size_t i = m; i < n; ++i) scale += std::abs(h(i, m - 1));
        if (scale == 0.0) continue;

        double hh = 0.0;
        for (std::size_t i = n; i-- > m;) {
            ort[i] = h(i, m - 1) / scale;
            hh += ort[i] * ort[i];
        }
        double g = std::sqrt(hh);
        if (ort[m] > 0.0) g = -g;
        hh -= ort[m] * g;
        ort[m] -= g;

        // Apply the Householder reflector from both sides.
        for (std::size_t j = m; j < n; ++j) {
            double f = 0.0;
            for (std::size_t i = n; i-- > m;) f += ort[i] * h(i, j);
            f /= hh;
            for (std::size_t i = m; i < n; ++i) h(i, j) -= f * ort[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            double f = 0.0;
            for (std::size_t j = n; j-- > m;) f += ort[j] * h(i, j);
            f /= hh;
            for (std::size_t j = m; j < n; ++j) h(i, j) -= f * ort[j];
        }
        h(m, m - 1) = scale * g;
        for (std::size_t i = m + 1; i < n; ++i) h(i, m - 1) = 0.0;
    }
}

void hqr_eigenvalues(Matrix& h, std::vector<double>& wr, std::vector<double>& wi) {
    const int n = static_cast<int>(h.rows());
    const int low = 0;
    const int high = n - 1;

    double norm = 0.0;
    {
        int k = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = k; j < n; ++j) norm += std::abs(h(i, j));
            k = i;
        }
    }

    int en = high;
    double t = 0.0;
    int itn = 40 * n;

    double p = 0.0, q = 0.0, r = 0.0, s = 0.0, w = 0.0, x = 0.0, y = 0.0, zz = 0.0;

    while (en >= low) {
        int its = 0;
        const int na = en - 1;
        const int enm2 = na - 1;
        bool two_roots = false;
        int l = low;

        for (;;) {
            // Look for a single small sub-diagonal element.
            for (l = en; l > low; --l) {
                s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = norm;
                const double tst1 = s;
                const double tst2 = tst1 + std::abs(h(l, l - 1));
                if (tst2 == tst1) break;
            }

            x = h(en, en);
            if (l == en) break;
            y = h(na, na);
            w = h(en, na) * h(na, en);
            if (l == na) {
                two_roots = true;
                break;
            }

            if (itn == 0)
                throw NumericError("QR eigenvalue iteration exceeded its budget");
            if (its == 10 || its == 20) {
                // Exceptional shift.
                t += x;
                for (int i = low; i <= en; ++i) h(i, i) -= x;
                s = std::abs(h(en, na)) + std::abs(h(na, enm2));
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            ++its;
            --itn;

            // Look for two consecutive small sub-diagonal elements.
            int m = enm2;
            for (; m >= l; --m) {
                zz = h(m, m);
                r = x - zz;
                s = y - zz;
                p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                q = h(m + 1, m + 1) - zz - r - s;
                r = h(m + 2, m + 1);
                s = std::abs(p) + std::abs(q) + std::abs(r);
                p /= s;
                q /= s;
                r /= s;
                if (m == l) break;
                const double tst1 =
                    std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(zz) +
                                   std::abs(h(m + 1, m + 1)));
                const double tst2 = tst1 + std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                if (tst2 == tst1) break;
            }

            for (int i = m + 2; i <= en; ++i) {
                h(i, i - 2) = 0.0;
                if (i != m + 2) h(i, i - 3) = 0.0;
            }

            // Double QR step on rows l..en, columns m..en.
            for (int k = m; k <= na; ++k) {
                const bool notlast = (k != na);
                if (k != m) {
                    p = h(k, k - 1);
                    q = h(k + 1, k - 1);
                    r = notlast ? h(k + 2, k - 1) : 0.0;
                    x = std::abs(p) + std::abs(q) + std::abs(r);
                    if (x == 0.0) continue;
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = sign_of(std::sqrt(p * p + q * q + r * r), p);
                if (k != m)
                    h(k, k - 1) = -s * x;
                else if (l != m)
                    h(k, k - 1) = -h(k, k - 1);
                p += s;
                x = p / s;
                y = q / s;
                zz = r / s;
                q /= p;
                r /= p;

                if (!notlast) {
                    for (int j = k; j < n; ++j) {
                        p = h(k, j) + q * h(k + 1, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                    }
                    const int jmax = std::min(en, k + 3);
                    for (int i = 0; i <= jmax; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                    }
                } else {
                    for (int j = k; j < n; ++j) {
                        p = h(k, j) + q * h(k + 1, j) + r * h(k + 2, j);
                        h(k, j) -= p * x;
                        h(k + 1, j) -= p * y;
                        h(k + 2, j) -= p * zz;
                    }
                    const int jmax = std::min(en, k + 3);
                    for (int i = 0; i <= jmax; ++i) {
                        p = x * h(i, k) + y * h(i, k + 1) + zz * h(i, k + 2);
                        h(i, k) -= p;
                        h(i, k + 1) -= p * q;
                        h(i, k + 2) -= p * r;
                    }
                }
            }
        }

        if (two_roots) {
            p = (y - x) / 2.0;
            q = p * p + w;
            zz = std::sqrt(std::abs(q));
            x += t;
            if (q >= 0.0) {
                // Real pair.
                zz = p + sign_of(zz, p);
                wr[na] = x + zz;
                wr[en] = wr[na];
                if (zz != 0.0) wr[en] = x - w / zz;
                wi[na] = 0.0;
                wi[en] = 0.0;
            } else {
                // Complex conjugate pair, positive imaginary part first.
                wr[na] = x + p;
                wr[en] = x + p;
                wi[na] = zz;
                wi[en] = -zz;
            }
            en = enm2;
        } else {
            // One root found.
            wr[en] = x + t;
            wi[en] = 0.0;
            en = na;
        }
    }
}

}  // namespace

std::vector<Complex> eigenvalues(const Matrix& a) {
    if (!a.is_square()) throw InputError("eigenvalues requires a square matrix");
    if (!a.all_finite()) throw InputError("eigenvalues: non-finite input entry");
    const std::size_t n = a.rows();
    if (n == 0) return {};
    if (n == 1) return {Complex(a(0, 0), 0.0)};

    Matrix h = a;
    hessenberg_reduce(h);
    std::vector<double> wr(n, 0.0), wi(n, 0.0);
    hqr_eigenvalues(h, wr, wi);

    std::vector<Complex> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = Complex(wr[i], wi[i]);
    return vals;
}

}  // namespace linfix
