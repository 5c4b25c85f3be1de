#pragma once

#include <limits>
#include <vector>

#include "linfix/linalg.hpp"
#include "linfix/matrix.hpp"

namespace linfix {

/// One group of numerically coincident eigenvalues.
struct EigenCluster {
    Complex value;                 // cluster representative
    std::size_t algebraic = 0;
    std::size_t geometric = 0;
    bool semisimple() const { return algebraic == geometric; }
};

/// Clustered spectrum of a real square matrix. Non-real clusters appear in
/// exact conjugate pairs with equal multiplicities.
struct Spectrum {
    std::vector<EigenCluster> clusters;
    double spectral_radius = 0.0;
    std::size_t dimension = 0;
    /// Absolute clustering tolerance that was applied (cluster_tol scaled by
    /// max(1, spectral radius)).
    double cluster_tol_abs = 0.0;
    /// Smallest distance between distinct cluster representatives; small
    /// gaps mean the clustering is fragile.
    double min_cluster_gap = std::numeric_limits<double>::infinity();

    const EigenCluster* find(Complex lambda) const;
    /// Cluster matching lambda within the clustering tolerance; throws
    /// LookupError when no cluster matches.
    const EigenCluster& cluster_of(Complex lambda) const;
};

Spectrum analyze_spectrum(const Matrix& a, double cluster_tol = defaults::cluster_tol);

/// True iff the cluster matching lambda has equal algebraic and geometric
/// multiplicity.
bool is_semisimple(const Spectrum& s, Complex lambda);

/// Complex disk with center on the real axis.
struct DiskRegion {
    double center = 0.0;
    double radius = 1.0;

    /// D_r = { z : |z - (1-r)| <= r }; its boundary passes through 1.
    static DiskRegion standard(double r);
    /// l * D_1, the disk of radius l centered at the origin.
    static DiskRegion scaled_unit(double l);
    /// D_{1/(1-kappa)}, centered at -kappa/(1-kappa).
    static DiskRegion spc(double kappa);
};

enum class DiskClass { interior, boundary, exterior };

/// |lambda - center| - radius: negative inside, positive outside.
double disk_signed_distance(Complex lambda, const DiskRegion& disk);

DiskClass disk_membership(Complex lambda, const DiskRegion& disk,
                          double boundary_tol = defaults::boundary_tol);

}  // namespace linfix
