#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "linfix/spectrum.hpp"

namespace linfix {

/// Operator classes certified through a weighted-norm LMI.
enum class OperatorClass { nonexpansive, averaged, strictly_pseudocontractive };

/// Eigenvalue sitting within boundary_tol of a verdict-deciding disk
/// boundary, reported with the raw signed distance.
struct BorderlineFlag {
    Complex eigenvalue;
    double distance = 0.0;
    std::string note;
};

struct ClassifyOptions {
    double cluster_tol = defaults::cluster_tol;
    double boundary_tol = defaults::boundary_tol;
    double tol_psd = defaults::tol_psd;
    /// Witnesses are open-interval parameters; the classifier reports the
    /// per-spectrum infimum plus this margin.
    double witness_margin = 1e-6;
    bool with_certificates = true;
    /// Similarity bases with condition number above this are rejected.
    double max_certificate_cond = 1e12;
};

/// Verdicts for the four operator classes of x -> Ax, with witness
/// parameters and (when construction succeeds) certifying matrices P.
struct ClassificationReport {
    Spectrum spectrum;

    /// Euclidean-norm Lipschitz pair: l = ||A||_2 with P = I.
    std::optional<std::pair<double, Matrix>> lipschitz_in_p;

    bool is_contraction = false;
    std::optional<double> contraction_factor;  // l* in [0, 1)

    bool is_nonexpansive = false;

    bool is_averaged = false;
    std::optional<double> averagedness;  // eta* in (0, 1)

    bool is_spc = false;
    std::optional<double> spc_constant;  // kappa* in (0, 1)

    std::optional<Matrix> certificate_contraction;
    std::optional<Matrix> certificate_nonexpansive;
    std::optional<Matrix> certificate_averaged;
    std::optional<Matrix> certificate_spc;

    std::vector<BorderlineFlag> borderline_flags;
};

ClassificationReport classify(const Matrix& a, const ClassifyOptions& opts = {});

/// LMI feasibility checks: the symmetric difference must be positive
/// semidefinite up to tol_psd relative slack. P must be positive definite.
bool verify_lipschitz_lmi(const Matrix& a, const Matrix& p, double l,
                          double tol_psd = defaults::tol_psd);
bool verify_avg_lmi(const Matrix& a, const Matrix& p, double eta,
                    double tol_psd = defaults::tol_psd);
bool verify_spc_lmi(const Matrix& a, const Matrix& p, double kappa,
                    double tol_psd = defaults::tol_psd);

/// Smallest kappa^ in [0,1) with |(1-kappa) lambda + kappa| <= 1 for every
/// kappa in [kappa^, 1); 0 whenever |lambda| <= 1. Throws DomainError when
/// Re(lambda) >= 1 and lambda != 1.
double min_kappa(Complex lambda);

/// Smallest eta with lambda inside the closed disk D_eta; 0 for lambda = 1.
/// Throws DomainError when Re(lambda) >= 1 and lambda != 1.
double min_eta(Complex lambda);

/// Builds a certifying P > 0 for the given class and witness from the real
/// block-diagonalizing similarity of the associated nonexpansive transform.
/// The witness is eta for averaged, kappa for strictly pseudocontractive,
/// and is ignored for nonexpansive. Throws CertificateError when the
/// similarity is too ill-conditioned or re-verification fails.
Matrix construct_certificate(const Matrix& a, OperatorClass cls, double witness,
                             const ClassifyOptions& opts = {});

namespace detail {
/// P > 0 with M^T P M <= P for a matrix whose spectrum lies in the closed
/// unit disk with semi-simple boundary eigenvalues.
Matrix nonexpansive_certificate(const Matrix& m, const ClassifyOptions& opts);
}  // namespace detail

}  // namespace linfix
