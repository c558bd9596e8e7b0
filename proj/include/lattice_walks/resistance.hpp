#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/IterativeLinearSolvers>

#include "lattice_walks/chain.hpp"
#include "lattice_walks/numerics.hpp"
#include "lattice_walks/parallel.hpp"
#include "lattice_walks/spectral.hpp"

namespace lattice_walks {

// Truncated electric network on {xi : S(xi) <= L} (intersected with Omega in
// the hard-core case): source at the origin, the whole level set V_L merged
// into a single grounded sink.  Enlarging L can only raise the resistance to
// the shorted boundary, so R_eff(L) increases towards the resistance to
// infinity of the full network.
struct TruncatedNetworkStats {
    std::size_t nodes = 0;          // interior unknowns (excludes source and sink)
    std::size_t edges = 0;
    std::size_t pruned_edges = 0;
    bool direct_solver = false;
};

inline constexpr std::uint64_t kMaxNetworkStates = 10'000'000;
inline constexpr std::size_t kDirectSolverNodeCap = 20'000;

// Conductances below 1e-300 of both endpoint row maxima are pruned: they are
// invisible at double precision and dropping them only lowers conductance,
// which keeps the Dirichlet value a valid lower bound.  Pruning that
// disconnects source from sink is an error, never a silent answer.
inline constexpr double kPruneLogThreshold = -690.0;

namespace detail {

struct NetworkEdge {
    std::int32_t a;
    std::int32_t b;
    double log_c;
};

// ids: 0..m-1 interior, m = source, m+1 = sink
inline constexpr std::int32_t kSourceTag = -1;
inline constexpr std::int32_t kSinkTag = -2;

} // namespace detail

inline double effective_resistance(const Params& p, const Graph& g, std::int64_t level_cap,
                                   TruncatedNetworkStats* stats_out = nullptr) {
    check_params(p);
    if (level_cap < 1) throw input_error("effective resistance needs a level cap >= 1");
    const int n = g.vertex_count();
    if (states_up_to_level(n, level_cap, kMaxNetworkStates + 1) > kMaxNetworkStates)
        throw capability_error("truncated network exceeds 1e7 states");

    const bool hard_core = p.beta.is_hard_core();

    // enumerate nodes; interior states get sequential ids
    std::unordered_map<State, std::int32_t, StateHash> node_id;
    std::int32_t interior_count = 0;
    for_each_state_up_to_level(n, level_cap, [&](const State& s) {
        if (hard_core && !in_omega(g, s)) return;
        const std::int64_t lvl = level(s);
        if (lvl == 0)
            node_id.emplace(s, detail::kSourceTag);
        else if (lvl == level_cap)
            node_id.emplace(s, detail::kSinkTag);
        else
            node_id.emplace(s, interior_count++);
    });

    const std::int32_t source = interior_count;
    const std::int32_t sink = interior_count + 1;
    auto resolve = [&](std::int32_t tag) {
        return tag == detail::kSourceTag ? source : tag == detail::kSinkTag ? sink : tag;
    };

    std::vector<detail::NetworkEdge> edges;
    double max_log_c = kNegInf;
    std::vector<double> row_max(static_cast<std::size_t>(interior_count) + 2, kNegInf);
    for (const auto& [s, tag] : node_id) {
        if (level(s) >= level_cap) continue;
        for (int i = 0; i < n; ++i) {
            const State upper = shifted(s, i, 1);
            const auto it = node_id.find(upper);
            if (it == node_id.end()) continue;   // off Omega
            const double log_c = log_conductance(p, g, s, i);
            if (log_c == kNegInf) continue;
            const std::int32_t a = resolve(tag), b = resolve(it->second);
            edges.push_back({a, b, log_c});
            max_log_c = std::max(max_log_c, log_c);
            row_max[static_cast<std::size_t>(a)] = std::max(row_max[static_cast<std::size_t>(a)], log_c);
            row_max[static_cast<std::size_t>(b)] = std::max(row_max[static_cast<std::size_t>(b)], log_c);
        }
    }
    if (edges.empty()) throw model_error("truncated network has no edges");

    std::vector<detail::NetworkEdge> retained;
    retained.reserve(edges.size());
    std::size_t pruned = 0;
    for (const auto& e : edges) {
        const double row_ref = std::min(row_max[static_cast<std::size_t>(e.a)],
                                        row_max[static_cast<std::size_t>(e.b)]);
        if (e.log_c - row_ref < kPruneLogThreshold) {
            ++pruned;
            continue;
        }
        retained.push_back(e);
    }

    // reachability from the source over retained edges; unreachable interior
    // nodes carry no current and are dropped exactly
    std::vector<std::vector<std::int32_t>> adj(static_cast<std::size_t>(interior_count) + 2);
    for (std::size_t k = 0; k < retained.size(); ++k) {
        adj[static_cast<std::size_t>(retained[k].a)].push_back(static_cast<std::int32_t>(k));
        adj[static_cast<std::size_t>(retained[k].b)].push_back(static_cast<std::int32_t>(k));
    }
    std::vector<char> reached(static_cast<std::size_t>(interior_count) + 2, 0);
    std::vector<std::int32_t> stack{source};
    reached[static_cast<std::size_t>(source)] = 1;
    while (!stack.empty()) {
        const std::int32_t v = stack.back();
        stack.pop_back();
        for (std::int32_t ek : adj[static_cast<std::size_t>(v)]) {
            const auto& e = retained[static_cast<std::size_t>(ek)];
            const std::int32_t w = e.a == v ? e.b : e.a;
            if (!reached[static_cast<std::size_t>(w)]) {
                reached[static_cast<std::size_t>(w)] = 1;
                if (w != sink) stack.push_back(w);
            }
        }
    }
    if (!reached[static_cast<std::size_t>(sink)])
        throw capability_error(
            "conductance pruning disconnected the source from the sink; "
            "the truncation is outside double-precision range");

    // compress unknowns to reachable interior nodes
    std::vector<std::int32_t> compact(static_cast<std::size_t>(interior_count), -1);
    std::int32_t m = 0;
    for (std::int32_t v = 0; v < interior_count; ++v)
        if (reached[static_cast<std::size_t>(v)]) compact[static_cast<std::size_t>(v)] = m++;

    // globally scaled conductances keep the assembly inside double range;
    // scaling all conductances by e^{-M} scales R_eff by e^{+M}
    const double scale = max_log_c;
    for (std::int32_t v = 0; v < interior_count; ++v)
        if (reached[static_cast<std::size_t>(v)] &&
            row_max[static_cast<std::size_t>(v)] - scale < kPruneLogThreshold)
            throw capability_error(
                "conductance spread exceeds double precision at this truncation");

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(retained.size() * 4);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    std::vector<double> diag(static_cast<std::size_t>(m), 0.0);
    double direct_current = 0.0;   // source-sink edges (only at level_cap = 1)
    for (const auto& e : retained) {
        const double c = std::exp(e.log_c - scale);
        const bool a_int = e.a < interior_count, b_int = e.b < interior_count;
        const std::int32_t ca = a_int ? compact[static_cast<std::size_t>(e.a)] : -1;
        const std::int32_t cb = b_int ? compact[static_cast<std::size_t>(e.b)] : -1;
        if (a_int && ca < 0) continue;
        if (b_int && cb < 0) continue;
        if (a_int) diag[static_cast<std::size_t>(ca)] += c;
        if (b_int) diag[static_cast<std::size_t>(cb)] += c;
        if (a_int && b_int) {
            triplets.emplace_back(ca, cb, -c);
            triplets.emplace_back(cb, ca, -c);
        } else if (a_int || b_int) {
            const std::int32_t interior = a_int ? ca : cb;
            const std::int32_t boundary = a_int ? e.b : e.a;
            if (boundary == source) rhs[interior] += c;
        } else {
            direct_current += c;
        }
    }
    for (std::int32_t v = 0; v < m; ++v) triplets.emplace_back(v, v, diag[static_cast<std::size_t>(v)]);

    Eigen::VectorXd phi(m);
    bool direct = true;
    if (m > 0) {
        Eigen::SparseMatrix<double> a(m, m);
        a.setFromTriplets(triplets.begin(), triplets.end());
        if (static_cast<std::size_t>(m) < kDirectSolverNodeCap) {
            Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(a);
            if (solver.info() != Eigen::Success)
                throw precision_error("direct factorization of the network Laplacian failed");
            phi = solver.solve(rhs);
        } else {
            direct = false;
            Eigen::ConjugateGradient<Eigen::SparseMatrix<double>,
                                     Eigen::Lower | Eigen::Upper,
                                     Eigen::DiagonalPreconditioner<double>> cg;
            cg.setTolerance(1e-12);
            cg.setMaxIterations(50'000);
            cg.compute(a);
            phi = cg.solve(rhs);
            if (cg.info() != Eigen::Success)
                throw precision_error("conjugate gradient did not reach the requested tolerance");
        }
        const double rel_residual = (a * phi - rhs).norm() / std::max(rhs.norm(), 1e-300);
        if (!(rel_residual <= 1e-10))
            throw precision_error("network solve residual exceeds 1e-10");
    }

    // current through the sink side: no cancellation, every term nonnegative
    double current = direct_current;
    for (const auto& e : retained) {
        const std::int32_t boundary = e.a >= interior_count ? e.a : e.b;
        const std::int32_t other = e.a >= interior_count ? e.b : e.a;
        if (boundary != sink || other >= interior_count) continue;
        const std::int32_t cv = compact[static_cast<std::size_t>(other)];
        if (cv < 0) continue;
        current += std::exp(e.log_c - scale) * phi[cv];
    }
    if (stats_out)
        *stats_out = {static_cast<std::size_t>(m), retained.size(), pruned, direct};
    if (current <= 0.0) return kPosInf;
    return std::exp(-scale) / current;
}

struct ResistanceCurve {
    std::vector<std::pair<std::int64_t, double>> points;   // (L, R_eff(L))
    bool monotone = true;
};

inline ResistanceCurve resistance_curve(const Params& p, const Graph& g,
                                        const std::vector<std::int64_t>& levels) {
    ResistanceCurve curve;
    curve.points.resize(levels.size());
    parallel_for_index(levels.size(), [&](std::size_t k) {
        curve.points[k] = {levels[k], effective_resistance(p, g, levels[k])};
    });
    std::sort(curve.points.begin(), curve.points.end());
    for (std::size_t k = 1; k < curve.points.size(); ++k)
        if (curve.points[k].second < curve.points[k - 1].second *
                                         (1.0 - 1e-9))
            curve.monotone = false;
    return curve;
}

// One shorted level cut: every edge between V_{l-1} and V_l in parallel.
struct LevelCut {
    std::int64_t level;
    double log_conductance;        // log sum of the parallel conductances
    double log_resistance;         // -log_conductance
};

// Short-circuiting every level set V_l turns the network into a series chain
// of cuts; the cut resistances sum to a lower bound for R_eff (the cut-sum
// criterion).  Everything stays in the log domain.
inline std::vector<LevelCut> level_short_circuit_curve(const Params& p, const Graph& g,
                                                       std::int64_t level_cap) {
    check_params(p);
    if (level_cap < 1) throw input_error("level cap must be >= 1");
    const int n = g.vertex_count();
    if (states_up_to_level(n, level_cap, kMaxNetworkStates + 1) > kMaxNetworkStates)
        throw capability_error("truncated network exceeds 1e7 states");
    const bool hard_core = p.beta.is_hard_core();

    std::vector<LogSumAccumulator> cut(static_cast<std::size_t>(level_cap) + 1);
    for_each_state_up_to_level(n, level_cap, [&](const State& s) {
        const std::int64_t lvl = level(s);
        if (lvl == 0) return;
        if (hard_core && !in_omega(g, s)) return;
        for (int i = 0; i < n; ++i) {
            if (s[static_cast<std::size_t>(i)] == 0) continue;
            const double log_c = log_conductance(p, g, shifted(s, i, -1), i);
            if (log_c != kNegInf) cut[static_cast<std::size_t>(lvl)].add(log_c);
        }
    });

    std::vector<LevelCut> out;
    out.reserve(static_cast<std::size_t>(level_cap));
    for (std::int64_t l = 1; l <= level_cap; ++l) {
        const double log_c = cut[static_cast<std::size_t>(l)].log_value();
        out.push_back({l, log_c, -log_c});
    }
    return out;
}

// Linear partial sum of the cut resistances; may saturate to +inf, which is
// exactly the recurrence evidence it is meant to provide.
inline double cut_resistance_sum(const std::vector<LevelCut>& cuts) {
    LogSumAccumulator acc;
    for (const auto& c : cuts) acc.add(c.log_resistance);
    return acc.value();
}

// Lattice path hugging the ray t * v1: each step increments the coordinate
// whose rounded target is crossed next, so S(y_k) = k and consecutive states
// differ in one coordinate.  Simultaneous crossings resolve by vertex index.
inline std::vector<State> v1_lattice_path(const Graph& g, std::int64_t length) {
    const SpectralInfo sp = spectral_info(g);
    if (g.edge_count() == 0 || !(sp.lambda1 > 0.0))
        throw input_error("the v1 escape path needs a graph with at least one edge");
    const int n = g.vertex_count();
    std::vector<State> path;
    path.reserve(static_cast<std::size_t>(length) + 1);
    State y = origin(n);
    path.push_back(y);
    for (std::int64_t k = 0; k < length; ++k) {
        int pick = -1;
        double best_t = kPosInf;
        for (int i = 0; i < n; ++i) {
            if (sp.v1[static_cast<std::size_t>(i)] <= 0.0) continue;
            const double t =
                static_cast<double>(y[static_cast<std::size_t>(i)] + 1) /
                sp.v1[static_cast<std::size_t>(i)];
            if (t < best_t) {
                best_t = t;
                pick = i;
            }
        }
        y = shifted(y, pick, 1);
        path.push_back(y);
    }
    return path;
}

// Partial sum of e^{-W(y_k)} along the v1 path: the series resistance of the
// escape path, an upper bound for R_eff of any truncation the path spans.
inline double v1_path_upper_bound(const Params& p, const Graph& g, std::int64_t length) {
    check_params(p);
    if (length == 0) return 0.0;
    const auto path = v1_lattice_path(g, length);
    LogSumAccumulator acc;
    for (std::size_t k = 1; k < path.size(); ++k) acc.add(-potential(p, g, path[k]));
    return acc.value();
}

// Same bound along the first coordinate axis: sum of e^{-W(k e_1)}.
inline double axis_path_upper_bound(const Params& p, const Graph& g, std::int64_t length) {
    check_params(p);
    LogSumAccumulator acc;
    const int n = g.vertex_count();
    for (std::int64_t k = 1; k <= length; ++k) {
        State s = origin(n);
        s[0] = k;
        acc.add(-potential(p, g, s));
    }
    return acc.value();
}

} // namespace lattice_walks
