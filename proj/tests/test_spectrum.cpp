#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "linfix/errors.hpp"
#include "linfix/spectrum.hpp"
#include "support/fixtures.hpp"
#include "support/test_support.hpp"

using namespace linfix;

TEST_CASE("identity has one semi-simple cluster") {
    const Spectrum s = analyze_spectrum(Matrix::identity(2));
    REQUIRE(s.clusters.size() == 1);
    CHECK(s.clusters[0].algebraic == 2);
    CHECK(s.clusters[0].geometric == 2);
    CHECK(std::abs(s.clusters[0].value - Complex(1.0, 0.0)) < 1e-12);
    CHECK(s.spectral_radius == doctest::Approx(1.0));
    CHECK(s.dimension == 2);
}

TEST_CASE("defective block at 1 is detected") {
    const Matrix a = Matrix::from_rows({{1.0, 1.0}, {0.0, 1.0}});
    const Spectrum s = analyze_spectrum(a);
    REQUIRE(s.clusters.size() == 1);
    CHECK(s.clusters[0].algebraic == 2);
    CHECK(s.clusters[0].geometric == 1);
    CHECK_FALSE(is_semisimple(s, Complex(1.0, 0.0)));
}

TEST_CASE("game operator spectrum is the conjugate pair 1 +/- j") {
    const Spectrum s = analyze_spectrum(support::scalar_game_operator());
    REQUIRE(s.clusters.size() == 2);
    for (const auto& c : s.clusters) {
        CHECK(c.algebraic == 1);
        CHECK(c.geometric == 1);
        CHECK(std::abs(c.value.real() - 1.0) < 1e-12);
        CHECK(std::abs(std::abs(c.value.imag()) - 1.0) < 1e-12);
    }
    CHECK(is_semisimple(s, Complex(1.0, 1.0)));
}

TEST_CASE("diagonal matrices are semi-simple everywhere") {
    const Matrix a = Matrix::from_rows(
        {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.5}});
    const Spectrum s = analyze_spectrum(a);
    REQUIRE(s.clusters.size() == 2);
    CHECK(is_semisimple(s, Complex(1.0, 0.0)));
    CHECK(is_semisimple(s, Complex(0.5, 0.0)));
    CHECK(s.cluster_of(Complex(1.0, 0.0)).algebraic == 2);
}

TEST_CASE("cluster gap reporting") {
    const Spectrum s = analyze_spectrum(
        Matrix::from_rows({{1.0, 0.0}, {0.0, 0.5}}));
    CHECK(s.min_cluster_gap == doctest::Approx(0.5));
    // A single cluster has no gap to report.
    CHECK(std::isinf(analyze_spectrum(Matrix::identity(2)).min_cluster_gap));
}

TEST_CASE("cluster lookup rejects distant values") {
    const Spectrum s = analyze_spectrum(Matrix::identity(2));
    CHECK_THROWS_AS((void)s.cluster_of(Complex(0.5, 0.0)), LookupError);
    CHECK(s.find(Complex(0.5, 0.0)) == nullptr);
}

TEST_CASE("algebraic multiplicities always sum to the dimension") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 2 + trial % 6;
        const Spectrum s = analyze_spectrum(support::random_matrix(n, rng));
        std::size_t total = 0;
        double radius = 0.0;
        for (const auto& c : s.clusters) {
            total += c.algebraic;
            radius = std::max(radius, std::abs(c.value));
            CHECK(c.geometric >= 1);
            CHECK(c.geometric <= c.algebraic);
            if (c.value.imag() != 0.0) {
                // Non-real clusters pair up exactly, with equal multiplicities.
                bool paired = false;
                for (const auto& d : s.clusters)
                    if (d.value == std::conj(c.value) && d.algebraic == c.algebraic &&
                        d.geometric == c.geometric)
                        paired = true;
                CHECK(paired);
            }
        }
        CHECK(total == n);
        CHECK(s.spectral_radius == doctest::Approx(radius));
    }
}

TEST_CASE("clusters are invariant under well-conditioned similarity") {
    std::mt19937_64 rng(77);
    support::SpectrumSpec spec;
    spec.reals = {{1.0, 2, false}, {-0.25, 1, false}};
    spec.pairs = {{0.5, 0.5, 1}};
    for (int trial = 0; trial < 10; ++trial) {
        const Matrix a = support::matrix_with_spectrum(spec, rng);
        const Spectrum sa = analyze_spectrum(a);

        // Mildly non-orthogonal similarity on top.
        Matrix t = support::random_orthogonal(5, rng);
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = 0; j < 5; ++j)
                t(i, j) += 0.2 * support::gaussian(rng) / 5.0;
        const Matrix b = t * a * inverse(t);
        const Spectrum sb = analyze_spectrum(b);

        REQUIRE(sa.clusters.size() == sb.clusters.size());
        for (const auto& ca : sa.clusters) {
            const EigenCluster& cb = sb.cluster_of(ca.value);
            CHECK(ca.algebraic == cb.algebraic);
            CHECK(ca.geometric == cb.geometric);
        }
    }
}

TEST_CASE("diagonalizable constructions are semi-simple in every cluster") {
    std::mt19937_64 rng(15);
    support::SpectrumSpec spec;
    spec.reals = {{0.9, 2, false}, {-0.9, 1, false}};
    spec.pairs = {{0.1, 0.8, 2}};
    for (int trial = 0; trial < 8; ++trial) {
        const Spectrum s =
            analyze_spectrum(support::matrix_with_spectrum(spec, rng));
        for (const auto& c : s.clusters) CHECK(c.semisimple());
    }
}

TEST_CASE("defective cluster through a perturbing similarity") {
    std::mt19937_64 rng(4);
    support::SpectrumSpec spec;
    spec.reals = {{1.0, 2, true}, {-0.5, 1, false}};
    for (int trial = 0; trial < 8; ++trial) {
        const Matrix a = support::matrix_with_spectrum(spec, rng);
        const Spectrum s = analyze_spectrum(a);
        const EigenCluster& c = s.cluster_of(Complex(1.0, 0.0));
        CHECK(c.algebraic == 2);
        CHECK(c.geometric == 1);
    }
}

TEST_CASE("the point 1 lies on the boundary of every standard disk") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const double r = support::uniform(rng, 1e-3, 10.0);
        CHECK(disk_membership(Complex(1.0, 0.0), DiskRegion::standard(r)) ==
              DiskClass::boundary);
    }
}

TEST_CASE("disk membership examples") {
    const DiskRegion unit = DiskRegion::scaled_unit(1.0);
    CHECK(disk_membership(Complex(0.0, 0.0), unit) == DiskClass::interior);
    CHECK(disk_membership(Complex(1.5, 0.5), unit) == DiskClass::exterior);
    CHECK(disk_signed_distance(Complex(1.5, 0.5), unit) ==
          doctest::Approx(std::sqrt(10.0) / 2.0 - 1.0));
    CHECK_THROWS_AS((void)DiskRegion::standard(0.0), ParameterError);
    CHECK_THROWS_AS(disk_membership(Complex(0, 0), unit, -1.0), ParameterError);
}

TEST_CASE("spc disk geometry and nesting") {
    const DiskRegion d = DiskRegion::spc(0.5);
    CHECK(d.radius == doctest::Approx(2.0));
    CHECK(d.center == doctest::Approx(-1.0));

    // D_{1/(1-k)} grows with kappa and always passes through 1.
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const double k1 = support::uniform(rng, 0.01, 0.98);
        const double k2 = support::uniform(rng, k1, 0.99);
        const DiskRegion small = DiskRegion::spc(k1);
        const DiskRegion big = DiskRegion::spc(k2);
        CHECK(small.center + small.radius == doctest::Approx(1.0));
        // Sampled points of the small disk stay inside the big one.
        for (int s = 0; s < 10; ++s) {
            const double ang = support::uniform(rng, 0.0, 6.2831853);
            const double rad = support::uniform(rng, 0.0, small.radius);
            const Complex z(small.center + rad * std::cos(ang), rad * std::sin(ang));
            CHECK(disk_signed_distance(z, big) <= 1e-12);
        }
    }
}
