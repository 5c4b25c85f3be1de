#pragma once

#include "linfix/matrix.hpp"

namespace support {

/// Laplacian of the 3-node weighted digraph used by the consensus demo
/// (weights a12 = a13 = 1/2, a23 = a31 = 1). Spectrum {0, 3/2 +/- j/2}.
inline linfix::Matrix three_node_laplacian() {
    return linfix::Matrix::from_rows({{1.0, -0.5, -0.5},
                                      {0.0, 1.0, -1.0},
                                      {-1.0, 0.0, 1.0}});
}

/// Iteration operator of the scalar zero-sum game demo (C = 1):
/// I - F with F = [[0,1],[-1,0]]. Spectrum {1 +/- j}.
inline linfix::Matrix scalar_game_operator() {
    return linfix::Matrix::from_rows({{1.0, -1.0}, {1.0, 1.0}});
}

}  // namespace support
