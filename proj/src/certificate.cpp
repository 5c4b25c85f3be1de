#include <algorithm>
#include <cmath>
#include <vector>

#include "linfix/classify.hpp"
#include "linfix/errors.hpp"

// Certificate construction for nonexpansive linear maps. The spectrum is
// split into unit-circle eigenspaces (semi-simple by hypothesis) and the
// strictly stable invariant complement. In the basis S assembled from
// those subspaces the map is block diagonal: scaled-rotation blocks of
// norm one on the boundary part and a strictly stable block M2 on the
// rest. P = S^{-T} diag(I, P2) S^{-1} with P2 a Lyapunov solution for M2
// then satisfies M^T P M <= P.

namespace linfix {

namespace {

constexpr double kNullTol = 1e-8;  // relative σ cutoff for eigenspace bases

/// Squared-Smith iteration for P - m^T P m = I; requires rho(m) < 1.
Matrix smith_lyapunov(const Matrix& m) {
    const std::size_t n = m.rows();
    Matrix p = Matrix::identity(n);
    Matrix a = m;
    for (int iter = 0; iter < 64; ++iter) {
        const Matrix inc = a.transpose() * (p * a);
        p += inc;
        if (!p.all_finite())
            throw CertificateError("Lyapunov iteration diverged (spectrum not stable)");
        if (inc.max_abs() <= 1e-16 * p.max_abs()) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const double v = 0.5 * (p(i, j) + p(j, i));
                    p(i, j) = v;
                    p(j, i) = v;
                }
            return p;
        }
        a = a * a;
        if (!a.all_finite())
            throw CertificateError("Lyapunov iteration diverged (spectrum not stable)");
    }
    throw CertificateError("Lyapunov iteration did not converge");
}

/// Applies J: (p, q) -> (-q, p), multiplication by the imaginary unit in
/// the real embedding. J commutes with the embedding matrix, so it maps
/// its null space onto itself exactly.
Vector apply_j(const Vector& z) {
    const std::size_t n = z.size() / 2;
    Vector out(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = -z[n + i];
        out[n + i] = z[i];
    }
    return out;
}

void project_out(Vector& v, const std::vector<Vector>& basis) {
    for (const auto& b : basis) {
        double d = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) d += v[i] * b[i];
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= d * b[i];
    }
}

Matrix embedding(const Matrix& a, Complex lambda) {
    const std::size_t n = a.rows();
    Matrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = a(i, j);
            m(n + i, n + j) = a(i, j);
        }
        m(i, i) -= lambda.real();
        m(n + i, n + i) -= lambda.real();
        m(i, n + i) = lambda.imag();
        m(n + i, i) = -lambda.imag();
    }
    return m;
}

}  // namespace

namespace detail {

Matrix nonexpansive_certificate(const Matrix& m, const ClassifyOptions& opts) {
    const std::size_t n = m.rows();
    if (n == 0) throw InputError("certificate of an empty matrix");
    const Spectrum spec = analyze_spectrum(m, opts.cluster_tol);
    const double tolb = opts.boundary_tol * std::max(1.0, spec.spectral_radius);

    std::vector<const EigenCluster*> boundary;
    for (const auto& c : spec.clusters) {
        const double mod = std::abs(c.value);
        if (mod > 1.0 + tolb)
            throw CertificateError("spectrum leaves the closed unit disk");
        if (mod >= 1.0 - tolb) {
            if (!c.semisimple())
                throw CertificateError("boundary eigenvalue is not semi-simple");
            if (c.value.imag() >= 0.0) boundary.push_back(&c);
        }
    }

    // Columns spanning the unit-circle eigenspaces.
    std::vector<Vector> columns;
    for (const EigenCluster* c : boundary) {
        if (c->value.imag() == 0.0) {
            Matrix shifted = m;
            for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= c->value.real();
            const Matrix basis = nullspace(shifted, kNullTol);
            if (basis.cols() != c->algebraic)
                throw CertificateError("eigenspace dimension mismatch on the boundary");
            for (std::size_t j = 0; j < basis.cols(); ++j) {
                Vector col(n);
                for (std::size_t i = 0; i < n; ++i) col[i] = basis(i, j);
                columns.push_back(std::move(col));
            }
        } else {
            const Matrix basis = nullspace(embedding(m, c->value), kNullTol);
            if (basis.cols() != 2 * c->algebraic)
                throw CertificateError("eigenspace dimension mismatch on the boundary");
            // Pick one representative per complex dimension; its J-image
            // supplies the partner, and both stay inside the null space.
            std::vector<Vector> selected;
            for (std::size_t j = 0; j < basis.cols() &&
                                    selected.size() < 2 * c->algebraic;
                 ++j) {
                Vector z(2 * n);
                for (std::size_t i = 0; i < 2 * n; ++i) z[i] = basis(i, j);
                project_out(z, selected);
                const double nz = norm2(z);
                if (nz < 0.3) continue;
                for (double& v : z) v /= nz;
                selected.push_back(z);
                selected.push_back(apply_j(selected.back()));
            }
            if (selected.size() != 2 * c->algebraic)
                throw CertificateError("could not pair the complex eigenspace basis");
            for (std::size_t k = 0; k < selected.size(); k += 2) {
                Vector pcol(n), qcol(n);
                for (std::size_t i = 0; i < n; ++i) {
                    pcol[i] = selected[k][i];
                    qcol[i] = selected[k][n + i];
                }
                columns.push_back(std::move(pcol));
                columns.push_back(std::move(qcol));
            }
        }
    }

    const std::size_t nb = columns.size();
    if (nb == 0) {
        Matrix p = smith_lyapunov(m);
        if (p.max_abs() > 0.0) p *= 1.0 / p.max_abs();
        if (!is_positive_definite(p))
            throw CertificateError("certificate lost positive definiteness");
        return p;
    }

    Matrix s(n, n);
    for (std::size_t j = 0; j < nb; ++j)
        for (std::size_t i = 0; i < n; ++i) s(i, j) = columns[j][i];

    if (nb < n) {
        // Invariant complement: range of the product of the boundary
        // factors, which annihilates every unit-circle eigenspace (first
        // power suffices since they are semi-simple).
        Matrix poly = Matrix::identity(n);
        for (const EigenCluster* c : boundary) {
            if (c->value.imag() == 0.0) {
                Matrix f = m;
                for (std::size_t i = 0; i < n; ++i) f(i, i) -= c->value.real();
                poly = poly * f;
            } else {
                const double tr = 2.0 * c->value.real();
                const double det = std::norm(c->value);
                Matrix f = m * m - tr * m;
                for (std::size_t i = 0; i < n; ++i) f(i, i) += det;
                poly = poly * f;
            }
        }
        const Matrix stable = range_basis(poly, kNullTol);
        if (stable.cols() != n - nb)
            throw CertificateError("stable subspace dimension mismatch");
        for (std::size_t j = 0; j < stable.cols(); ++j)
            for (std::size_t i = 0; i < n; ++i) s(i, nb + j) = stable(i, j);
    }

    if (cond2(s) > opts.max_certificate_cond)
        throw CertificateError("similarity basis too ill-conditioned");

    Matrix ptilde = Matrix::identity(n);
    if (nb < n) {
        const Matrix b = solve_linear(s, m * s);
        Matrix m2(n - nb, n - nb);
        for (std::size_t i = 0; i < n - nb; ++i)
            for (std::size_t j = 0; j < n - nb; ++j) m2(i, j) = b(nb + i, nb + j);
        const Matrix p2 = smith_lyapunov(m2);
        for (std::size_t i = 0; i < n - nb; ++i)
            for (std::size_t j = 0; j < n - nb; ++j) ptilde(nb + i, nb + j) = p2(i, j);
    }

    const Matrix sinv = inverse(s);
    Matrix p = sinv.transpose() * (ptilde * sinv);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (p(i, j) + p(j, i));
            p(i, j) = v;
            p(j, i) = v;
        }
    if (p.max_abs() > 0.0) p *= 1.0 / p.max_abs();
    if (!is_positive_definite(p))
        throw CertificateError("certificate lost positive definiteness");
    return p;
}

}  // namespace detail

}  // namespace linfix
