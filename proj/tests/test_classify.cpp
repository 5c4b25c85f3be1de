#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "linfix/classify.hpp"
#include "linfix/errors.hpp"
#include "support/fixtures.hpp"
#include "support/test_support.hpp"

using namespace linfix;

namespace {

Matrix diag2(double a, double b) {
    return Matrix::from_rows({{a, 0.0}, {0.0, b}});
}

ClassificationReport classify_of(const Matrix& a) { return classify(a); }

}  // namespace

TEST_CASE("Lipschitz LMI feasibility") {
    const Matrix zero(2, 2);
    CHECK(verify_lipschitz_lmi(zero, Matrix::identity(2), 0.5));
    CHECK_FALSE(verify_lipschitz_lmi(Matrix::identity(2), Matrix::identity(2), 0.5));

    // Direct multiplication for A = [[0,2],[0,0]]: A^T P A = diag(0, 4 p11),
    // so diag(1,4) certifies l = 1 while diag(4,1) does not.
    const Matrix a = Matrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    CHECK_FALSE(verify_lipschitz_lmi(a, diag2(4.0, 1.0), 1.0));
    CHECK(verify_lipschitz_lmi(a, diag2(1.0, 4.0), 1.0));

    CHECK_THROWS_AS((void)verify_lipschitz_lmi(a, diag2(1.0, 0.0), 1.0),
                    CertificateError);
    CHECK_THROWS_AS((void)verify_lipschitz_lmi(a, Matrix::identity(2), -0.1),
                    ParameterError);
}

TEST_CASE("averagedness LMI feasibility") {
    for (double eta : {0.1, 0.5, 0.9})
        CHECK(verify_avg_lmi(Matrix::identity(2), Matrix::identity(2), eta));
    CHECK_FALSE(verify_avg_lmi(-1.0 * Matrix::identity(2), Matrix::identity(2), 0.9));
    CHECK(verify_avg_lmi(0.5 * Matrix::identity(2), Matrix::identity(2), 0.5));
    CHECK_THROWS_AS((void)verify_avg_lmi(Matrix::identity(2), Matrix::identity(2), 1.0),
                    ParameterError);
}

TEST_CASE("strict pseudocontraction LMI feasibility") {
    for (double kappa : {0.1, 0.5, 0.9})
        CHECK(verify_spc_lmi(Matrix::identity(2), Matrix::identity(2), kappa));
    CHECK(verify_spc_lmi(-1.0 * Matrix::identity(2), Matrix::identity(2), 0.5));
    CHECK_FALSE(verify_spc_lmi(2.0 * Matrix::identity(2), Matrix::identity(2), 0.1));
}

TEST_CASE("min_kappa closed form") {
    CHECK(min_kappa(Complex(0.0, 0.0)) == 0.0);
    CHECK(min_kappa(Complex(-3.0, 0.0)) == doctest::Approx(0.5));
    CHECK(min_kappa(Complex(-0.5, -0.5)) == 0.0);
    CHECK(min_kappa(Complex(1.0, 0.0)) == 0.0);
    CHECK_THROWS_AS((void)min_kappa(Complex(1.0, 1.0)), DomainError);
    CHECK_THROWS_AS((void)min_kappa(Complex(2.0, 0.0)), DomainError);
}

TEST_CASE("min_eta closed form") {
    CHECK(min_eta(Complex(0.0, 0.0)) == doctest::Approx(0.5));
    CHECK(min_eta(Complex(-1.0, 0.0)) == doctest::Approx(1.0));
    CHECK(min_eta(Complex(1.0, 0.0)) == 0.0);
    CHECK_THROWS_AS((void)min_eta(Complex(1.0, 0.5)), DomainError);
}

TEST_CASE("min_kappa agrees with the disk geometry") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        const Complex lambda(support::uniform(rng, -4.0, 0.99),
                             support::uniform(rng, -3.0, 3.0));
        const double k = min_kappa(lambda);
        if (k > 2e-6) {
            CHECK(disk_membership(lambda, DiskRegion::spc(k - 1e-6), 0.0) ==
                  DiskClass::exterior);
        }
        const double above = k + 1e-6;
        if (above < 1.0) {
            CHECK(disk_membership(lambda, DiskRegion::spc(above), 1e-12) !=
                  DiskClass::exterior);
        }
    }
}

TEST_CASE("classification of the consensus operator I - L") {
    const Matrix a =
        Matrix::identity(3) - support::three_node_laplacian();
    const ClassificationReport rep = classify_of(a);
    CHECK(rep.is_spc);
    CHECK(rep.is_nonexpansive);
    CHECK(rep.is_averaged);
    CHECK_FALSE(rep.is_contraction);
    REQUIRE(rep.spc_constant.has_value());
    CHECK(*rep.spc_constant > 0.0);
    CHECK(*rep.spc_constant < 1.0);
    REQUIRE(rep.certificate_spc.has_value());
    CHECK(verify_spc_lmi(a, *rep.certificate_spc, *rep.spc_constant));
    CHECK(is_positive_definite(*rep.certificate_spc));
}

TEST_CASE("classification of the game operator I - F") {
    const ClassificationReport rep = classify_of(support::scalar_game_operator());
    CHECK_FALSE(rep.is_spc);
    CHECK_FALSE(rep.is_nonexpansive);
    CHECK_FALSE(rep.is_averaged);
    CHECK_FALSE(rep.is_contraction);
    // The deciding pair sits on the half-plane boundary Re = 1.
    bool flagged = false;
    for (const auto& f : rep.borderline_flags)
        if (f.note.find("Re = 1") != std::string::npos) flagged = true;
    CHECK(flagged);
}

TEST_CASE("classification of -I") {
    const ClassificationReport rep = classify_of(-1.0 * Matrix::identity(3));
    CHECK(rep.is_nonexpansive);
    CHECK_FALSE(rep.is_averaged);
    CHECK(rep.is_spc);
    CHECK_FALSE(rep.is_contraction);
    REQUIRE(rep.spc_constant.has_value());
    CHECK(*rep.spc_constant > 0.0);
    CHECK(*rep.spc_constant < 1.0);
}

TEST_CASE("classification of the defective block") {
    const ClassificationReport rep =
        classify_of(Matrix::from_rows({{1.0, 1.0}, {0.0, 1.0}}));
    CHECK_FALSE(rep.is_contraction);
    CHECK_FALSE(rep.is_nonexpansive);
    CHECK_FALSE(rep.is_averaged);
    CHECK_FALSE(rep.is_spc);
    bool flagged = false;
    for (const auto& f : rep.borderline_flags)
        if (f.note.find("not semi-simple") != std::string::npos) flagged = true;
    CHECK(flagged);
}

TEST_CASE("classification of the identity and scaled identity") {
    const ClassificationReport id = classify_of(Matrix::identity(2));
    CHECK_FALSE(id.is_contraction);
    CHECK(id.is_nonexpansive);
    CHECK(id.is_averaged);
    CHECK(id.is_spc);

    const ClassificationReport half = classify_of(0.5 * Matrix::identity(2));
    CHECK(half.is_contraction);
    REQUIRE(half.contraction_factor.has_value());
    CHECK(*half.contraction_factor == doctest::Approx(0.5));
    REQUIRE(half.certificate_contraction.has_value());
    CHECK(verify_lipschitz_lmi(0.5 * Matrix::identity(2),
                               *half.certificate_contraction, 0.5));
}

TEST_CASE("Euclidean Lipschitz pair") {
    const Matrix a = Matrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    const ClassificationReport rep = classify_of(a);
    REQUIRE(rep.lipschitz_in_p.has_value());
    CHECK(rep.lipschitz_in_p->first == doctest::Approx(2.0));
    CHECK(verify_lipschitz_lmi(a, rep.lipschitz_in_p->second,
                               rep.lipschitz_in_p->first));
}

TEST_CASE("nonexpansive certificates on boundary-heavy operators") {
    // -I and the quarter-turn rotation have their whole spectrum on the
    // unit circle; P = I certifies both, and so must the constructed P.
    for (const Matrix& a :
         {-1.0 * Matrix::identity(2),
          Matrix::from_rows({{0.0, 1.0}, {-1.0, 0.0}})}) {
        const Matrix p = construct_certificate(a, OperatorClass::nonexpansive, 1.0);
        CHECK(is_positive_definite(p));
        CHECK(verify_lipschitz_lmi(a, p, 1.0));
    }
}

TEST_CASE("certificates for symmetric nonexpansive operators") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        Matrix s = support::random_matrix(3, rng);
        s = 0.5 * (s + s.transpose());
        const double r = operator_norm2(s);
        if (r > 0.0) s *= support::uniform(rng, 0.3, 1.0) / r;
        CHECK(verify_lipschitz_lmi(s, Matrix::identity(3), 1.0));
        const Matrix p = construct_certificate(s, OperatorClass::nonexpansive, 1.0);
        CHECK(verify_lipschitz_lmi(s, p, 1.0));
    }
}

TEST_CASE("spc certificate for -I at kappa = 0.5") {
    const Matrix a = -1.0 * Matrix::identity(2);
    CHECK(verify_spc_lmi(a, Matrix::identity(2), 0.5));
    const Matrix p =
        construct_certificate(a, OperatorClass::strictly_pseudocontractive, 0.5);
    CHECK(verify_spc_lmi(a, p, 0.5));
}

TEST_CASE("implication chain on randomized spectra") {
    std::mt19937_64 rng(212);
    int seen_spc = 0, seen_ne = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Matrix a(0, 0);
        if (trial % 3 == 0) {
            a = support::random_matrix(4, rng, support::uniform(rng, 0.1, 0.8));
        } else {
            support::SpectrumSpec spec;
            if (trial % 3 == 1) {
                spec.reals = {{1.0, 1, false}, {support::uniform(rng, -0.9, 0.5), 1, false}};
                spec.pairs = {{support::uniform(rng, -0.8, 0.2),
                               support::uniform(rng, 0.2, 0.6), 1}};
            } else {
                spec.reals = {{support::uniform(rng, 1.05, 1.5), 1, false},
                              {support::uniform(rng, -0.5, 0.5), 3, false}};
            }
            a = support::matrix_with_spectrum(spec, rng);
        }
        ClassifyOptions opts;
        opts.with_certificates = false;
        const ClassificationReport rep = classify(a, opts);
        if (rep.is_contraction) {
            CHECK(rep.is_nonexpansive);
            CHECK(rep.is_spc);
        }
        if (rep.is_averaged) CHECK(rep.is_spc);
        seen_spc += rep.is_spc ? 1 : 0;
        seen_ne += rep.is_nonexpansive ? 1 : 0;
        if (rep.is_contraction) {
            REQUIRE(rep.contraction_factor.has_value());
            CHECK(*rep.contraction_factor >= 0.0);
            CHECK(*rep.contraction_factor < 1.0);
        }
        if (rep.is_averaged) {
            CHECK(*rep.averagedness > 0.0);
            CHECK(*rep.averagedness < 1.0);
        }
        if (rep.is_spc) {
            CHECK(*rep.spc_constant > 0.0);
            CHECK(*rep.spc_constant < 1.0);
        }
    }
    // The family must exercise both verdict polarities.
    CHECK(seen_spc > 5);
    CHECK(seen_spc < 60);
    CHECK(seen_ne > 5);
}

TEST_CASE("cross-lemma equivalences on a small random family") {
    std::mt19937_64 rng(999);
    ClassifyOptions lean;
    lean.with_certificates = false;
    for (int trial = 0; trial < 40; ++trial) {
        Matrix a(0, 0);
        if (trial % 2 == 0) {
            a = support::random_matrix(3, rng, support::uniform(rng, 0.2, 0.9));
        } else {
            support::SpectrumSpec spec;
            spec.reals = {{1.0, 1, false}};
            spec.pairs = {{support::uniform(rng, -1.5, 0.8),
                           support::uniform(rng, 0.3, 1.2), 1}};
            a = support::matrix_with_spectrum(spec, rng);
        }
        const ClassificationReport rep = classify(a, lean);
        const std::size_t n = a.rows();

        if (rep.is_spc) {
            const double k = *rep.spc_constant;
            const Matrix b = k * Matrix::identity(n) + (1.0 - k) * a;
            CHECK(classify(b, lean).is_nonexpansive);
            for (double alpha : {0.2, 0.5, 0.8}) {
                const double scaled = alpha * (1.0 - k);
                const Matrix c =
                    (1.0 - scaled) * Matrix::identity(n) + scaled * a;
                CHECK(classify(c, lean).is_averaged);
            }
        } else {
            for (double k : {0.15, 0.5, 0.85}) {
                const Matrix b = k * Matrix::identity(n) + (1.0 - k) * a;
                CHECK_FALSE(classify(b, lean).is_nonexpansive);
            }
            for (double alpha : {0.2, 0.5, 0.8}) {
                const Matrix c =
                    (1.0 - alpha) * Matrix::identity(n) + alpha * a;
                CHECK_FALSE(classify(c, lean).is_averaged);
            }
        }

        if (rep.is_averaged) {
            const double eta = *rep.averagedness;
            const Matrix b = (1.0 - 1.0 / eta) * Matrix::identity(n) +
                             (1.0 / eta) * a;
            CHECK(classify(b, lean).is_nonexpansive);
        }
    }
}

TEST_CASE("certificate failure flags the report without flipping the verdict") {
    // Nilpotent map: contractive with witness just above the zero spectral
    // radius. Any P certifying that tiny Lipschitz constant needs condition
    // ~ 1/witness^2, which the positive-definiteness tolerance rejects; the
    // verdict must survive with a flag.
    const Matrix a = Matrix::from_rows({{0.0, 2.0}, {0.0, 0.0}});
    const ClassificationReport rep = classify(a);
    CHECK(rep.is_contraction);
    REQUIRE(rep.contraction_factor.has_value());
    CHECK(*rep.contraction_factor > 0.0);
    CHECK(*rep.contraction_factor < 1.0);
    if (!rep.certificate_contraction.has_value()) {
        bool flagged = false;
        for (const auto& f : rep.borderline_flags)
            if (f.note.find("certificate failed") != std::string::npos) flagged = true;
        CHECK(flagged);
    }
    // The nonexpansive certificate is well conditioned and must be present.
    CHECK(rep.is_nonexpansive);
    REQUIRE(rep.certificate_nonexpansive.has_value());
    CHECK(verify_lipschitz_lmi(a, *rep.certificate_nonexpansive, 1.0));
}

TEST_CASE("witness parameter errors") {
    CHECK_THROWS_AS(
        (void)construct_certificate(Matrix::identity(2), OperatorClass::averaged, 1.5),
        ParameterError);
    CHECK_THROWS_AS((void)construct_certificate(
                        Matrix::identity(2),
                        OperatorClass::strictly_pseudocontractive, 0.0),
                    ParameterError);
    // Asking for a certificate the operator cannot have fails cleanly.
    CHECK_THROWS_AS((void)construct_certificate(2.0 * Matrix::identity(2),
                                                OperatorClass::nonexpansive, 1.0),
                    CertificateError);
}

TEST_CASE("construction fails exactly where the verdicts are false") {
    // -I is nonexpansive and sPC but not averaged: the averaged transform
    // has spectrum outside the unit disk for every eta, so no P exists.
    const Matrix neg = -1.0 * Matrix::identity(2);
    for (double eta : {0.25, 0.5, 0.9})
        CHECK_THROWS_AS(
            (void)construct_certificate(neg, OperatorClass::averaged, eta),
            CertificateError);

    // The game operator is in none of the classes.
    const Matrix game = support::scalar_game_operator();
    CHECK_THROWS_AS(
        (void)construct_certificate(game, OperatorClass::nonexpansive, 1.0),
        CertificateError);
    for (double kappa : {0.2, 0.7})
        CHECK_THROWS_AS((void)construct_certificate(
                            game, OperatorClass::strictly_pseudocontractive, kappa),
                        CertificateError);

    // The defective block at 1 sits on every deciding boundary.
    const Matrix jordan = Matrix::from_rows({{1.0, 1.0}, {0.0, 1.0}});
    CHECK_THROWS_AS(
        (void)construct_certificate(jordan, OperatorClass::nonexpansive, 1.0),
        CertificateError);
}
