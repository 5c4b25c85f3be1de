#include "linfix/classify.hpp"

#include <algorithm>
#include <cmath>

#include "linfix/errors.hpp"

namespace linfix {

namespace {

/// Smallest eigenvalue of (m + m^T)/2 must clear -tol * scale, where the
/// scale is the larger of the difference's own eigenvalue magnitude and the
/// magnitude of the terms it was assembled from (so that an exactly
/// feasible LMI is not rejected over last-ulp noise).
bool psd_within(const Matrix& m, double tol, double assembly_scale) {
    Matrix sym(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            sym(i, j) = 0.5 * (m(i, j) + m(j, i));
    const std::vector<double> vals = symmetric_eigenvalues(sym);
    const double scale =
        std::max({std::abs(vals.front()), std::abs(vals.back()), assembly_scale});
    return vals.front() >= -tol * scale;
}

void check_lmi_inputs(const Matrix& a, const Matrix& p) {
    if (!a.is_square() || !p.is_square() || a.rows() != p.rows())
        throw InputError("LMI check requires square matrices of equal size");
    if (!a.all_finite() || !p.all_finite())
        throw InputError("LMI check: non-finite input entry");
    if (!is_positive_definite(p))
        throw CertificateError("certificate P is not positive definite");
}

Matrix congruence(const Matrix& a, const Matrix& p) { return a.transpose() * (p * a); }

}  // namespace

bool verify_lipschitz_lmi(const Matrix& a, const Matrix& p, double l, double tol_psd) {
    check_lmi_inputs(a, p);
    if (l < 0.0) throw ParameterError("Lipschitz constant must be nonnegative");
    const Matrix apa = congruence(a, p);
    const Matrix diff = (l * l) * p - apa;
    return psd_within(diff, tol_psd, std::max(l * l * p.max_abs(), apa.max_abs()));
}

bool verify_avg_lmi(const Matrix& a, const Matrix& p, double eta, double tol_psd) {
    check_lmi_inputs(a, p);
    if (eta <= 0.0 || eta >= 1.0) throw ParameterError("eta must lie in (0, 1)");
    const Matrix apa = congruence(a, p);
    const Matrix cross = a.transpose() * p + p * a;
    const Matrix diff = (2.0 * eta - 1.0) * p + (1.0 - eta) * cross - apa;
    const double scale =
        std::max({p.max_abs(), cross.max_abs(), apa.max_abs()});
    return psd_within(diff, tol_psd, scale);
}

bool verify_spc_lmi(const Matrix& a, const Matrix& p, double kappa, double tol_psd) {
    check_lmi_inputs(a, p);
    if (kappa <= 0.0 || kappa >= 1.0) throw ParameterError("kappa must lie in (0, 1)");
    const Matrix apa = congruence(a, p);
    const Matrix cross = a.transpose() * p + p * a;
    const Matrix diff = (1.0 + kappa) * p - kappa * cross - (1.0 - kappa) * apa;
    const double scale =
        std::max({2.0 * p.max_abs(), cross.max_abs(), apa.max_abs()});
    return psd_within(diff, tol_psd, scale);
}

double min_kappa(Complex lambda) {
    const double a = lambda.real();
    const double b = lambda.imag();
    const double d2 = (a - 1.0) * (a - 1.0) + b * b;
    if (d2 <= 1e-28) return 0.0;  // lambda = 1 sits on every disk boundary
    if (a >= 1.0)
        throw DomainError("no admissible kappa: Re(lambda) >= 1 and lambda != 1");
    const double umax = 2.0 * (1.0 - a) / d2;
    return umax >= 1.0 ? 0.0 : 1.0 - umax;
}

double min_eta(Complex lambda) {
    const double a = lambda.real();
    const double b = lambda.imag();
    const double d2 = (a - 1.0) * (a - 1.0) + b * b;
    if (d2 <= 1e-28) return 0.0;
    if (a >= 1.0)
        throw DomainError("no admissible eta: Re(lambda) >= 1 and lambda != 1");
    return d2 / (2.0 * (1.0 - a));
}

namespace {

/// Witness = infimum + margin, kept strictly below 1.
double witness_above(double inf, double margin) {
    return std::min(inf + margin, 0.5 * (1.0 + inf));
}

void flag(std::vector<BorderlineFlag>& flags, Complex v, double dist, std::string note) {
    flags.push_back({v, dist, std::move(note)});
}

}  // namespace

ClassificationReport classify(const Matrix& a, const ClassifyOptions& opts) {
    if (!a.is_square()) throw InputError("classify requires a square matrix");
    if (!a.all_finite()) throw InputError("classify: non-finite input entry");
    if (a.rows() == 0) throw InputError("classify: empty matrix");

    ClassificationReport rep;
    rep.spectrum = analyze_spectrum(a, opts.cluster_tol);
    const Spectrum& spec = rep.spectrum;
    const double rho = spec.spectral_radius;
    const double tolb = opts.boundary_tol * std::max(1.0, rho);

    rep.lipschitz_in_p = std::make_pair(operator_norm2(a), Matrix::identity(a.rows()));

    const EigenCluster* one = nullptr;
    for (const auto& c : spec.clusters)
        if (std::abs(c.value - Complex(1.0, 0.0)) <= spec.cluster_tol_abs) one = &c;
    const bool one_ok = (one == nullptr) || one->semisimple();
    if (one && !one->semisimple())
        flag(rep.borderline_flags, one->value, 0.0,
             "eigenvalue 1 not semi-simple");

    // Contractive: spectral radius strictly inside the unit disk.
    rep.is_contraction = rho < 1.0 - tolb;
    if (std::abs(rho - 1.0) <= tolb)
        flag(rep.borderline_flags, Complex(rho, 0.0), rho - 1.0,
             "spectral radius within boundary tolerance of 1");
    if (rep.is_contraction) {
        bool attained_semisimple = true;
        for (const auto& c : spec.clusters)
            if (std::abs(c.value) >= rho - tolb && !c.semisimple())
                attained_semisimple = false;
        rep.contraction_factor =
            attained_semisimple ? rho : witness_above(rho, opts.witness_margin);
    }

    // Nonexpansive: unit disk with semi-simple boundary eigenvalues.
    rep.is_nonexpansive = true;
    for (const auto& c : spec.clusters) {
        const double m = std::abs(c.value);
        if (m > 1.0 + tolb) {
            rep.is_nonexpansive = false;
        } else if (m >= 1.0 - tolb) {
            flag(rep.borderline_flags, c.value, m - 1.0,
                 "eigenvalue on the unit-disk boundary");
            if (!c.semisimple()) rep.is_nonexpansive = false;
        }
    }

    // Averaged: only unit-modulus eigenvalue is a semi-simple 1; witness is
    // the largest per-eigenvalue disk parameter plus margin.
    bool avg = one_ok;
    double eta_inf = 0.0;
    for (const auto& c : spec.clusters) {
        if (&c == one) continue;
        const double m = std::abs(c.value);
        if (m >= 1.0 - tolb) {
            avg = false;
            if (m <= 1.0 + tolb)
                flag(rep.borderline_flags, c.value, m - 1.0,
                     "unit-modulus eigenvalue distinct from 1 blocks averagedness");
        } else {
            eta_inf = std::max(eta_inf, min_eta(c.value));
        }
    }
    rep.is_averaged = avg;
    if (avg) rep.averagedness = witness_above(eta_inf, opts.witness_margin);

    // Strictly pseudocontractive: Re(lambda) < 1 away from the semi-simple
    // fixed-point eigenvalue.
    bool spc = one_ok;
    double kappa_inf = 0.0;
    for (const auto& c : spec.clusters) {
        if (&c == one) continue;
        const double re = c.value.real();
        if (re >= 1.0 - tolb) {
            spc = false;
            if (std::abs(re - 1.0) <= tolb)
                flag(rep.borderline_flags, c.value, re - 1.0,
                     "eigenvalue on the half-plane boundary Re = 1");
        } else {
            kappa_inf = std::max(kappa_inf, min_kappa(c.value));
        }
    }
    rep.is_spc = spc;
    if (spc) rep.spc_constant = witness_above(kappa_inf, opts.witness_margin);

    if (opts.with_certificates) {
        const auto attach = [&](std::optional<Matrix>& slot, OperatorClass cls,
                                double witness, const char* what) {
            try {
                slot = construct_certificate(a, cls, witness, opts);
            } catch (const NumericError& e) {
                flag(rep.borderline_flags, Complex(0.0, 0.0), 0.0,
                     std::string(what) + " certificate failed: " + e.what());
            }
        };
        if (rep.is_nonexpansive)
            attach(rep.certificate_nonexpansive, OperatorClass::nonexpansive, 1.0,
                   "nonexpansive");
        if (rep.is_averaged)
            attach(rep.certificate_averaged, OperatorClass::averaged,
                   *rep.averagedness, "averaged");
        if (rep.is_spc)
            attach(rep.certificate_spc, OperatorClass::strictly_pseudocontractive,
                   *rep.spc_constant, "sPC");
        if (rep.is_contraction) {
            try {
                const double l = *rep.contraction_factor;
                if (l == 0.0) {
                    // Spectral radius zero and semi-simple: the zero map.
                    rep.certificate_contraction = Matrix::identity(a.rows());
                } else {
                    const Matrix scaled = (1.0 / l) * a;
                    Matrix p = detail::nonexpansive_certificate(scaled, opts);
                    if (!verify_lipschitz_lmi(a, p, l, opts.tol_psd))
                        throw CertificateError("contraction LMI re-verification failed");
                    rep.certificate_contraction = std::move(p);
                }
            } catch (const NumericError& e) {
                flag(rep.borderline_flags, Complex(0.0, 0.0), 0.0,
                     std::string("contraction certificate failed: ") + e.what());
            }
        }
    }
    return rep;
}

Matrix construct_certificate(const Matrix& a, OperatorClass cls, double witness,
                             const ClassifyOptions& opts) {
    if (!a.is_square() || !a.all_finite())
        throw InputError("construct_certificate requires a finite square matrix");
    Matrix m(0, 0);
    switch (cls) {
        case OperatorClass::nonexpansive:
            m = a;
            break;
        case OperatorClass::averaged: {
            if (witness <= 0.0 || witness >= 1.0)
                throw ParameterError("averagedness witness must lie in (0, 1)");
            const double inv = 1.0 / witness;
            m = (1.0 - inv) * Matrix::identity(a.rows()) + inv * a;
            break;
        }
        case OperatorClass::strictly_pseudocontractive: {
            if (witness <= 0.0 || witness >= 1.0)
                throw ParameterError("sPC witness must lie in (0, 1)");
            m = witness * Matrix::identity(a.rows()) + (1.0 - witness) * a;
            break;
        }
    }
    Matrix p = detail::nonexpansive_certificate(m, opts);

    bool ok = false;
    switch (cls) {
        case OperatorClass::nonexpansive:
            ok = verify_lipschitz_lmi(a, p, 1.0, opts.tol_psd);
            break;
        case OperatorClass::averaged:
            ok = verify_avg_lmi(a, p, witness, opts.tol_psd);
            break;
        case OperatorClass::strictly_pseudocontractive:
            ok = verify_spc_lmi(a, p, witness, opts.tol_psd);
            break;
    }
    if (!ok) throw CertificateError("certificate failed LMI re-verification");
    return p;
}

}  // namespace linfix
