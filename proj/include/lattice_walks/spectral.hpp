#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "lattice_walks/errors.hpp"
#include "lattice_walks/graph.hpp"

namespace lattice_walks {

// Spectral data of the adjacency matrix, with a certified enclosure for the
// top eigenvalue.  lambda1_error_bound is the residual norm ||A v1 - l1 v1||,
// which bounds the distance from l1 to the true spectrum (A symmetric).
struct SpectralInfo {
    double lambda1 = 0.0;
    std::vector<double> v1;                // nonnegative, unit norm
    double lambda1_error_bound = 0.0;
    std::vector<double> all_eigenvalues;   // sorted descending
};

namespace detail {

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    const int n = g.vertex_count();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : g.edges()) {
        a(i, j) = 1.0;
        a(j, i) = 1.0;
    }
    return a;
}

// Perron pair of a connected graph's adjacency matrix.  The dense symmetric
// eigensolver supplies a machine-precision pair; the top eigenvalue of a
// connected graph is simple, so the eigenvector only needs its sign fixed.
// Power steps on A + I (primitive, so no bipartite oscillation) with fresh
// Rayleigh quotients polish the pair after the nonnegativity clamp.
inline void perron_pair_connected(const Eigen::MatrixXd& a, double& lambda,
                                  Eigen::VectorXd& v) {
    const int n = static_cast<int>(a.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    v = es.eigenvectors().col(n - 1);
    if (v.sum() < 0.0) v = -v;
    v = v.cwiseMax(0.0);
    v /= v.norm();
    for (int it = 0; it < 3; ++it) {
        Eigen::VectorXd w = a * v + v;
        v = w / w.norm();
    }
    lambda = v.dot(a * v);
}

} // namespace detail

inline SpectralInfo spectral_info(const Graph& g) {
    const int n = g.vertex_count();
    SpectralInfo s;
    if (g.edge_count() == 0) {
        // Zero matrix: lambda1 = 0 and any nonnegative unit vector is valid;
        // the uniform one keeps results deterministic.
        s.lambda1 = 0.0;
        s.v1.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
        s.lambda1_error_bound = 0.0;
        s.all_eigenvalues.assign(n, 0.0);
        return s;
    }

    const Eigen::MatrixXd a = detail::adjacency_matrix(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    s.all_eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    std::sort(s.all_eigenvalues.begin(), s.all_eigenvalues.end(), std::greater<>());

    // The Perron vector of the whole graph: compute per component, embed the
    // component attaining the largest eigenvalue (first such component wins,
    // for determinism).  For connected graphs this is the unique positive
    // eigenvector.
    auto comps = connected_components(g);
    double best_lambda = -1.0;
    Eigen::VectorXd best_v;
    const GraphComponent* best_comp = nullptr;
    for (const auto& c : comps) {
        if (c.graph.edge_count() == 0) continue;
        Eigen::MatrixXd ca = detail::adjacency_matrix(c.graph);
        double lam;
        Eigen::VectorXd v;
        detail::perron_pair_connected(ca, lam, v);
        if (lam > best_lambda + 1e-13) {
            best_lambda = lam;
            best_v = v;
            best_comp = &c;
        }
    }
    Eigen::VectorXd v1 = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < best_v.size(); ++k)
        v1[best_comp->vertex_map[static_cast<std::size_t>(k)]] = std::max(best_v[k], 0.0);
    v1 /= v1.norm();

    s.lambda1 = v1.dot(a * v1);
    const double residual = (a * v1 - s.lambda1 * v1).norm();
    s.lambda1_error_bound = residual + 4.0 * std::numeric_limits<double>::epsilon() *
                                            std::max(1.0, s.lambda1);
    s.v1.assign(v1.data(), v1.data() + n);
    return s;
}

// Certified check of the strict Perron inequality v1_i < sum_{j != i} v1_j
// for connected graphs with at least two edges.
inline bool perron_strict_inequality_check(const Graph& g) {
    if (!is_connected(g))
        throw input_error("perron_strict_inequality_check requires a connected graph");
    if (g.edge_count() < 2)
        throw input_error("perron_strict_inequality_check requires e(G) >= 2");
    const SpectralInfo s = spectral_info(g);
    double total = 0.0;
    for (double x : s.v1) total += x;
    for (double x : s.v1)
        if (!(x < (total - x) - 10.0 * s.lambda1_error_bound)) return false;
    return true;
}

} // namespace lattice_walks
