#pragma once

#include "linfix/matrix.hpp"

namespace linfix {

/// Weighted digraph on n nodes; weights(i, j) is the weight of edge i -> j.
/// Nonnegative weights, zero diagonal.
struct DirectedWeightedGraph {
    std::size_t n_nodes = 0;
    Matrix weights;  // n x n

    /// Throws ModelError on negative weights or nonzero diagonal.
    void validate() const;
};

/// Out-degree Laplacian L = D_out - W; rows sum to zero.
Matrix laplacian(const DirectedWeightedGraph& g);

/// Consensus iteration operator I - L.
Matrix consensus_operator(const Matrix& l);

/// True iff max_i |x_i - mean(x)| <= tol * (1 + |mean(x)|).
bool is_consensus(const Vector& x, double tol);

/// Strong connectivity of the positive-weight pattern.
bool is_strongly_connected(const DirectedWeightedGraph& g);

/// Two-player zero-sum game with bilinear costs x1^T C x2 and -x2^T C^T x1.
struct ZeroSumGame {
    Matrix c;  // square, symmetric, nonzero

    /// Throws ModelError unless C = C^T != 0.
    void validate() const;
};

/// Stacked pseudo-gradient matrix [[0, C], [-C, 0]] (the Kronecker product
/// [[0, 1], [-1, 0]] (x) C).
Matrix pseudogradient_matrix(const ZeroSumGame& game);

/// Iteration operator I - F of the pseudo-gradient dynamics.
Matrix game_iteration_operator(const ZeroSumGame& game);

}  // namespace linfix
