#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "lattice_walks/errors.hpp"
#include "lattice_walks/graph.hpp"
#include "lattice_walks/numerics.hpp"
#include "lattice_walks/params.hpp"
#include "lattice_walks/state.hpp"

namespace lattice_walks {

// (A xi)_i: occupancy of the neighbours of vertex i.  Exact integer.
inline std::int64_t neighbor_load(const Graph& g, const State& s, int i) {
    std::int64_t sum = 0;
    for (int j : g.neighbors(i)) sum += s[static_cast<std::size_t>(j)];
    return sum;
}

// Sum over edges {i,j} of xi_i * xi_j.  Exact integer.
inline std::int64_t edge_occupancy_product_sum(const Graph& g, const State& s) {
    std::int64_t sum = 0;
    for (auto [i, j] : g.edges())
        sum += s[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(j)];
    return sum;
}

// Sum of xi_i (xi_i - 1).  Exact integer.
inline std::int64_t self_pair_sum(const State& s) {
    std::int64_t sum = 0;
    for (auto x : s) sum += x * (x - 1);
    return sum;
}

// The hard-core state space Omega: no two neighbouring coordinates positive,
// i.e. the positive support is an independent set.
inline bool in_omega(const Graph& g, const State& s) {
    for (auto [i, j] : g.edges())
        if (s[static_cast<std::size_t>(i)] != 0 && s[static_cast<std::size_t>(j)] != 0)
            return false;
    return true;
}

// W(xi) = (alpha/2) sum xi_i(xi_i - 1) + beta sum_{i~j} xi_i xi_j.
// Both sums are exact integers, so the only rounding is the final two
// multiply-adds.  Hard-core: -inf off Omega, and the beta term vanishes on
// Omega (0 * inf = 0 by convention).
inline double potential(const Params& p, const Graph& g, const State& s) {
    check_params(p);
    const std::int64_t pair_sum = self_pair_sum(s);
    if (p.beta.is_hard_core()) {
        if (!in_omega(g, s)) return kNegInf;
        return 0.5 * p.alpha * static_cast<double>(pair_sum);
    }
    const std::int64_t edge_sum = edge_occupancy_product_sum(g, s);
    return 0.5 * p.alpha * static_cast<double>(pair_sum) +
           p.beta.value() * static_cast<double>(edge_sum);
}

// log q_{xi, xi + e_i}.  Standard: alpha*xi_i + beta*(A xi)_i, with the
// hard-core convention that any occupied neighbour blocks the jump entirely.
// Modified: alpha*xi_i.
inline double log_rate_up(const Params& p, const Graph& g, const State& s, int i) {
    const std::int64_t xi = s[static_cast<std::size_t>(i)];
    if (p.variant == Variant::Modified) return p.alpha * static_cast<double>(xi);
    const std::int64_t load = neighbor_load(g, s, i);
    if (p.beta.is_hard_core())
        return load > 0 ? kNegInf : p.alpha * static_cast<double>(xi);
    return p.alpha * static_cast<double>(xi) + p.beta.value() * static_cast<double>(load);
}

// log q_{xi, xi - e_i}; -inf when the coordinate is already zero.
// Standard: rate 1.  Modified: exp(-beta * (A xi)_i).
inline double log_rate_down(const Params& p, const Graph& g, const State& s, int i) {
    if (s[static_cast<std::size_t>(i)] <= 0) return kNegInf;
    if (p.variant == Variant::Modified)
        return -p.beta.value() * static_cast<double>(neighbor_load(g, s, i));
    return 0.0;
}

// q_{from, to} in linear scale; 0 for anything but a unit coordinate step.
// May saturate to +inf at extreme states; the log_rate_* functions are the
// overflow-safe primary interface.
inline double rate(const Params& p, const Graph& g, const State& from, const State& to) {
    check_params(p);
    if (from.size() != to.size()) return 0.0;
    int idx = -1;
    std::int64_t delta = 0;
    for (std::size_t k = 0; k < from.size(); ++k) {
        if (from[k] == to[k]) continue;
        if (idx >= 0) return 0.0;   // more than one coordinate differs
        idx = static_cast<int>(k);
        delta = to[k] - from[k];
    }
    if (idx < 0 || (delta != 1 && delta != -1)) return 0.0;
    const double lr = delta == 1 ? log_rate_up(p, g, from, idx)
                                 : log_rate_down(p, g, from, idx);
    return std::exp(lr);
}

inline double log_total_rate(const Params& p, const Graph& g, const State& s) {
    LogSumAccumulator acc;
    const int n = g.vertex_count();
    for (int i = 0; i < n; ++i) {
        acc.add(log_rate_up(p, g, s, i));
        acc.add(log_rate_down(p, g, s, i));
    }
    return acc.log_value();
}

inline double total_rate(const Params& p, const Graph& g, const State& s) {
    check_params(p);
    return std::exp(log_total_rate(p, g, s));
}

// Exact W(xi + e_i) - W(xi), from integer coordinate deltas: the pair sum
// changes by exactly 2 xi_i and the edge sum by exactly (A xi)_i.  -inf when
// the upper state leaves Omega in the hard-core case.
inline double delta_potential_up(const Params& p, const Graph& g, const State& s, int i) {
    const std::int64_t xi = s[static_cast<std::size_t>(i)];
    const std::int64_t load = neighbor_load(g, s, i);
    if (p.beta.is_hard_core()) return load > 0 ? kNegInf : p.alpha * static_cast<double>(xi);
    return 0.5 * p.alpha * static_cast<double>(2 * xi) +
           p.beta.value() * static_cast<double>(load);
}

// Relative residual of q_{xi,eta} e^{W(xi)} = q_{eta,xi} e^{W(eta)} for
// eta = xi + e_i, evaluated entirely in the log domain so it never overflows:
// residual = |x - y| / max(x, y) = 1 - exp(-|log x - log y|).
inline double detailed_balance_residual(const Params& p, const Graph& g, const State& s, int i) {
    check_params(p);
    if (p.beta.is_hard_core()) {
        if (!in_omega(g, s) || !in_omega(g, shifted(s, i, 1)))
            throw input_error("hard-core detailed balance needs both states in Omega");
    }
    const double log_up = log_rate_up(p, g, s, i);
    const double log_down = log_rate_down(p, g, shifted(s, i, 1), i);
    const double delta_w = delta_potential_up(p, g, s, i);
    return relative_gap_from_logs(log_up, log_down + delta_w);
}

// log C_{lower, lower + e_i}.  Standard: W(upper), which is independent of
// the direction i given the upper endpoint.  Modified: W(lower) + alpha *
// lower_i.  Hard-core falls out of W(upper) = -inf off Omega.
inline double log_conductance(const Params& p, const Graph& g, const State& lower, int i) {
    check_params(p);
    if (p.variant == Variant::Modified)
        return potential(p, g, lower) + p.alpha * static_cast<double>(lower[static_cast<std::size_t>(i)]);
    return potential(p, g, shifted(lower, i, 1));
}

inline double conductance(const Params& p, const Graph& g, const State& lower, int i) {
    return std::exp(log_conductance(p, g, lower, i));
}

// Embedded jump-chain distribution p_{xi,.} = q_{xi,.} / q_xi, over the
// neighbours with positive rate, in a fixed order (all up moves by vertex,
// then all down moves by vertex).
inline std::vector<std::pair<State, double>>
dtmc_transition_probs(const Params& p, const Graph& g, const State& s) {
    check_params(p);
    const int n = g.vertex_count();
    std::vector<std::pair<State, double>> out;
    std::vector<double> logs;
    for (int i = 0; i < n; ++i) {
        const double lr = log_rate_up(p, g, s, i);
        if (lr != kNegInf) {
            out.emplace_back(shifted(s, i, 1), lr);
            logs.push_back(lr);
        }
    }
    for (int i = 0; i < n; ++i) {
        const double lr = log_rate_down(p, g, s, i);
        if (lr != kNegInf) {
            out.emplace_back(shifted(s, i, -1), lr);
            logs.push_back(lr);
        }
    }
    if (out.empty()) throw model_error("zero total rate: no transition has positive rate");
    const double log_q = log_sum_exp(logs);
    for (auto& [state, value] : out) value = std::exp(value - log_q);
    return out;
}

} // namespace lattice_walks
