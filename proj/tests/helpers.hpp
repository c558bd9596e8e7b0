#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "lattice_walks/graph.hpp"
#include "lattice_walks/rng.hpp"
#include "lattice_walks/state.hpp"

namespace lw_test {

using lattice_walks::CounterRng;
using lattice_walks::Graph;

// Brute-force maximum independent set by subset enumeration; the oracle for
// the branch-and-bound path.
inline int independence_number_bruteforce(const Graph& g) {
    const int n = g.vertex_count();
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool ok = true;
        for (auto [i, j] : g.edges())
            if (((mask >> i) & 1u) && ((mask >> j) & 1u)) {
                ok = false;
                break;
            }
        if (ok) best = std::max(best, __builtin_popcount(mask));
    }
    return best;
}

inline Graph random_graph(int n, double edge_prob, CounterRng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < edge_prob) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

inline lattice_walks::State random_state(int n, std::int64_t max_coord, CounterRng& rng) {
    lattice_walks::State s(static_cast<std::size_t>(n));
    for (auto& x : s)
        x = static_cast<std::int64_t>(rng.next_u64() % static_cast<std::uint64_t>(max_coord + 1));
    return s;
}

// Upper tail of the chi-square distribution via the regularized upper
// incomplete gamma function Q(k/2, x/2) (series / continued-fraction split).
inline double chi_square_upper_tail(double x, int dof) {
    const double a = 0.5 * dof, half_x = 0.5 * x;
    if (half_x <= 0.0) return 1.0;
    auto gamma_p_series = [](double aa, double xx) {
        double sum = 1.0 / aa, term = sum, ap = aa;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= xx / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-xx + aa * std::log(xx) - std::lgamma(aa));
    };
    auto gamma_q_cf = [](double aa, double xx) {
        double b = xx + 1.0 - aa, c = 1e300, d = 1.0 / b, h = d;
        for (int i = 1; i <= 500; ++i) {
            const double an = -i * (i - aa);
            b += 2.0;
            d = an * d + b;
            if (std::abs(d) < 1e-300) d = 1e-300;
            c = b + an / c;
            if (std::abs(c) < 1e-300) c = 1e-300;
            d = 1.0 / d;
            const double del = d * c;
            h *= del;
            if (std::abs(del - 1.0) < 1e-15) break;
        }
        return h * std::exp(-xx + aa * std::log(xx) - std::lgamma(aa));
    };
    if (half_x < a + 1.0) return 1.0 - gamma_p_series(a, half_x);
    return gamma_q_cf(a, half_x);
}

} // namespace lw_test
