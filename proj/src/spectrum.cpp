#include "linfix/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "linfix/errors.hpp"

namespace linfix {

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

/// Rank of m counting singular values above an absolute threshold.
std::size_t rank_abs(const Matrix& m, double abs_tol) {
    const Svd d = svd(m);
    std::size_t r = 0;
    for (double s : d.sigma)
        if (s > abs_tol) ++r;
    return r;
}

/// Geometric multiplicity of lambda as an eigenvalue of a. Complex lambda
/// goes through the real 2n x 2n embedding [[A-aI, bI], [-bI, A-aI]], whose
/// null space has twice the complex dimension.
std::size_t geometric_multiplicity(const Matrix& a, Complex lambda, double abs_tol) {
    const std::size_t n = a.rows();
    if (lambda.imag() == 0.0) {
        Matrix m = a;
        for (std::size_t i = 0; i < n; ++i) m(i, i) -= lambda.real();
        return n - rank_abs(m, abs_tol);
    }
    Matrix m(2 * n, 2 * n);
    const double re = lambda.real();
    const double im = lambda.imag();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = a(i, j);
            m(n + i, n + j) = a(i, j);
        }
        m(i, i) -= re;
        m(n + i, n + i) -= re;
        m(i, n + i) = im;
        m(n + i, i) = -im;
    }
    const std::size_t r = rank_abs(m, abs_tol);
    return (2 * n - r) / 2;
}

}  // namespace

const EigenCluster* Spectrum::find(Complex lambda) const {
    const EigenCluster* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : clusters) {
        const double d = std::abs(c.value - lambda);
        if (d < best_d) {
            best_d = d;
            best = &c;
        }
    }
    if (best && best_d <= cluster_tol_abs) return best;
    return nullptr;
}

const EigenCluster& Spectrum::cluster_of(Complex lambda) const {
    const EigenCluster* c = find(lambda);
    if (!c)
        throw LookupError("eigenvalue does not match any cluster of the spectrum");
    return *c;
}

Spectrum analyze_spectrum(const Matrix& a, double cluster_tol) {
    if (cluster_tol <= 0.0) throw ParameterError("cluster_tol must be positive");
    const std::vector<Complex> vals = eigenvalues(a);
    const std::size_t n = vals.size();

    double raw_radius = 0.0;
    for (const auto& v : vals) raw_radius = std::max(raw_radius, std::abs(v));
    const double tol_abs = cluster_tol * std::max(1.0, raw_radius);

    // Transitive merging of eigenvalues within tol_abs of each other.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(vals[i] - vals[j]) <= tol_abs)
                parent[find_root(parent, i)] = find_root(parent, j);

    Spectrum s;
    s.dimension = n;
    s.cluster_tol_abs = tol_abs;

    std::vector<std::size_t> root_of(n);
    std::vector<std::size_t> roots;
    for (std::size_t i = 0; i < n; ++i) {
        root_of[i] = find_root(parent, i);
        if (root_of[i] == i) roots.push_back(i);
    }
    for (std::size_t r : roots) {
        Complex sum(0.0, 0.0);
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (root_of[i] == r) {
                sum += vals[i];
                ++count;
            }
        }
        EigenCluster c;
        c.value = sum / static_cast<double>(count);
        if (std::abs(c.value.imag()) <= tol_abs) c.value.imag(0.0);
        c.algebraic = count;
        s.clusters.push_back(c);
    }

    // Enforce exact conjugate symmetry on the representatives.
    for (auto& c : s.clusters) {
        if (c.value.imag() <= 0.0) continue;
        for (auto& d : s.clusters) {
            if (d.value.imag() < 0.0 &&
                std::abs(d.value - std::conj(c.value)) <= 2.0 * tol_abs) {
                d.value = std::conj(c.value);
                break;
            }
        }
    }

    // Geometric multiplicities; conjugate clusters share theirs.
    const double rank_tol_abs = 3.0 * tol_abs;
    for (auto& c : s.clusters) {
        if (c.value.imag() < 0.0) continue;
        std::size_t geo = geometric_multiplicity(a, c.value, rank_tol_abs);
        geo = std::clamp<std::size_t>(geo, 1, c.algebraic);
        c.geometric = geo;
        if (c.value.imag() > 0.0) {
            for (auto& d : s.clusters) {
                if (d.value == std::conj(c.value)) {
                    d.geometric = geo;
                    break;
                }
            }
        }
    }

    for (const auto& c : s.clusters)
        s.spectral_radius = std::max(s.spectral_radius, std::abs(c.value));
    for (std::size_t i = 0; i < s.clusters.size(); ++i)
        for (std::size_t j = i + 1; j < s.clusters.size(); ++j)
            s.min_cluster_gap = std::min(
                s.min_cluster_gap, std::abs(s.clusters[i].value - s.clusters[j].value));
    return s;
}

bool is_semisimple(const Spectrum& s, Complex lambda) {
    return s.cluster_of(lambda).semisimple();
}

DiskRegion DiskRegion::standard(double r) {
    if (r <= 0.0) throw ParameterError("disk radius must be positive");
    return {1.0 - r, r};
}

DiskRegion DiskRegion::scaled_unit(double l) {
    if (l <= 0.0) throw ParameterError("disk radius must be positive");
    return {0.0, l};
}

DiskRegion DiskRegion::spc(double kappa) {
    if (kappa <= 0.0 || kappa >= 1.0)
        throw ParameterError("kappa must lie in (0, 1)");
    return standard(1.0 / (1.0 - kappa));
}

double disk_signed_distance(Complex lambda, const DiskRegion& disk) {
    return std::abs(lambda - Complex(disk.center, 0.0)) - disk.radius;
}

DiskClass disk_membership(Complex lambda, const DiskRegion& disk, double boundary_tol) {
    if (boundary_tol < 0.0) throw ParameterError("boundary_tol must be nonnegative");
    const double d = disk_signed_distance(lambda, disk);
    if (std::abs(d) <= boundary_tol) return DiskClass::boundary;
    return d < 0.0 ? DiskClass::interior : DiskClass::exterior;
}

}  // namespace linfix
