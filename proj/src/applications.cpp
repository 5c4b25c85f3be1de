#include "linfix/applications.hpp"

#include <algorithm>
#include <cmath>

#include "linfix/errors.hpp"

namespace linfix {

void DirectedWeightedGraph::validate() const {
    if (weights.rows() != n_nodes || weights.cols() != n_nodes)
        throw ModelError("graph weight matrix size does not match n_nodes");
    if (!weights.all_finite()) throw ModelError("graph weights must be finite");
    for (std::size_t i = 0; i < n_nodes; ++i) {
        if (weights(i, i) != 0.0) throw ModelError("graph has a self-loop weight");
        for (std::size_t j = 0; j < n_nodes; ++j)
            if (weights(i, j) < 0.0) throw ModelError("graph has a negative weight");
    }
}

Matrix laplacian(const DirectedWeightedGraph& g) {
    g.validate();
    const std::size_t n = g.n_nodes;
    Matrix l = -1.0 * g.weights;
    for (std::size_t i = 0; i < n; ++i) {
        double out = 0.0;
        for (std::size_t j = 0; j < n; ++j) out += g.weights(i, j);
        l(i, i) = out;
    }
    return l;
}

Matrix consensus_operator(const Matrix& l) {
    if (!l.is_square()) throw InputError("consensus_operator requires a square matrix");
    return Matrix::identity(l.rows()) - l;
}

bool is_consensus(const Vector& x, double tol) {
    if (tol <= 0.0) throw ParameterError("consensus tolerance must be positive");
    if (x.empty()) return true;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    double dev = 0.0;
    for (double v : x) dev = std::max(dev, std::abs(v - mean));
    return dev <= tol * (1.0 + std::abs(mean));
}

namespace {

void reach(const Matrix& w, std::size_t start, bool forward, std::vector<bool>& seen) {
    std::vector<std::size_t> stack{start};
    seen.assign(w.rows(), false);
    seen[start] = true;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < w.rows(); ++v) {
            const double weight = forward ? w(u, v) : w(v, u);
            if (weight > 0.0 && !seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
}

}  // namespace

bool is_strongly_connected(const DirectedWeightedGraph& g) {
    g.validate();
    if (g.n_nodes <= 1) return true;
    std::vector<bool> seen;
    reach(g.weights, 0, true, seen);
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
    reach(g.weights, 0, false, seen);
    return std::find(seen.begin(), seen.end(), false) == seen.end();
}

void ZeroSumGame::validate() const {
    if (!c.is_square() || c.rows() == 0)
        throw ModelError("game coupling matrix C must be square and nonempty");
    if (!c.all_finite()) throw ModelError("game coupling matrix C must be finite");
    double scale = c.max_abs();
    if (scale == 0.0) throw ModelError("game coupling matrix C must be nonzero");
    for (std::size_t i = 0; i < c.rows(); ++i)
        for (std::size_t j = i + 1; j < c.cols(); ++j)
            if (std::abs(c(i, j) - c(j, i)) > 1e-12 * scale)
                throw ModelError("game coupling matrix C must be symmetric");
}

Matrix pseudogradient_matrix(const ZeroSumGame& game) {
    game.validate();
    const std::size_t n = game.c.rows();
    Matrix f(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            f(i, n + j) = game.c(i, j);
            f(n + i, j) = -game.c(i, j);
        }
    return f;
}

Matrix game_iteration_operator(const ZeroSumGame& game) {
    const Matrix f = pseudogradient_matrix(game);
    return Matrix::identity(f.rows()) - f;
}

}  // namespace linfix
