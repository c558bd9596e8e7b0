#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "lattice_walks/parallel.hpp"
#include "lattice_walks/rng.hpp"
#include "lattice_walks/simulate.hpp"

namespace lattice_walks {

// ---------------------------------------------------------------------------
// Hitting-probability experiment: symmetric simple random walk on Z_+^2 from
// (x, 1), absorbed on the diagonal {X = Y} or the axis {Y = 0}.
// ---------------------------------------------------------------------------

struct HittingEstimate {
    std::int64_t start_x = 0;
    std::uint64_t trials = 0;
    std::uint64_t hit_diagonal_first = 0;
    double p_hat = 0.0;
    double ci95_halfwidth = 0.0;
};

inline HittingEstimate lemma_p1_estimate(std::int64_t x, std::uint64_t trials,
                                         std::uint64_t seed) {
    if (x < 1) throw input_error("start coordinate must be >= 1");
    if (trials < 1000) throw input_error("at least 1e3 trials required");

    std::vector<std::uint8_t> hit(trials, 0);
    parallel_for_index(trials, [&](std::size_t t) {
        CounterRng rng = CounterRng::substream(seed, t);
        std::int64_t cx = x, cy = 1;
        // start already absorbed when x = 1 (tau = 0 reading)
        while (cy != 0 && cx != cy) {
            const std::uint64_t move = rng.next_u64() & 3u;
            switch (move) {
            case 0: ++cx; break;
            case 1: --cx; break;
            case 2: ++cy; break;
            default: --cy; break;
            }
        }
        hit[t] = cx == cy ? 1 : 0;
    });

    HittingEstimate est;
    est.start_x = x;
    est.trials = trials;
    for (auto h : hit) est.hit_diagonal_first += h;
    est.p_hat = static_cast<double>(est.hit_diagonal_first) / static_cast<double>(trials);
    // normal approximation with a continuity guard for the extreme counts
    est.ci95_halfwidth =
        1.96 * std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(trials)) +
        0.5 / static_cast<double>(trials);
    return est;
}

namespace detail {

// Absorption probability on the triangle {0 <= y <= x <= cap} with the far
// boundary x = cap reflecting (lazy self-loop), solved as one sparse linear
// system.
inline double p1_harmonic_solve(std::int64_t x0, std::int64_t cap) {
    if (x0 == 1) return 1.0;
    std::map<std::pair<std::int64_t, std::int64_t>, int> ids;
    int m = 0;
    for (std::int64_t xx = 2; xx <= cap; ++xx)
        for (std::int64_t yy = 1; yy < xx; ++yy) ids[{xx, yy}] = m++;

    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(m);
    for (const auto& [xy, id] : ids) {
        const auto [xx, yy] = xy;
        double diag = 4.0;
        auto neighbor = [&](std::int64_t nx, std::int64_t ny) {
            if (ny == 0) return;                      // absorbed with value 0
            if (nx == ny) { b[id] += 1.0; return; }   // absorbed with value 1
            if (nx > cap) { diag -= 1.0; return; }    // reflecting wall: stay put
            trip.emplace_back(id, ids.at({nx, ny}), -1.0);
        };
        neighbor(xx + 1, yy);
        neighbor(xx - 1, yy);
        neighbor(xx, yy + 1);
        neighbor(xx, yy - 1);
        trip.emplace_back(id, id, diag);
    }
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> solver(a);
    if (solver.info() != Eigen::Success)
        throw precision_error("harmonic system factorization failed");
    const Eigen::VectorXd h = solver.solve(b);
    return h[ids.at({x0, 1})];
}

} // namespace detail

// Exact oracle for the hitting probability: solves the harmonic system at
// grid_cap and 2*grid_cap and removes the leading truncation error by
// Richardson extrapolation (2 v_{2c} - v_c).
inline double lemma_p1_exact(std::int64_t x, std::int64_t grid_cap) {
    if (x < 1) throw input_error("start coordinate must be >= 1");
    if (grid_cap < 4 * x) throw input_error("grid cap must be at least 4x");
    if (x == 1) return 1.0;
    const double coarse = detail::p1_harmonic_solve(x, grid_cap);
    const double fine = detail::p1_harmonic_solve(x, 2 * grid_cap);
    return 2.0 * fine - coarse;
}

// ---------------------------------------------------------------------------
// Hard-core walk on the 6-cycle: does the trajectory settle into one of the
// two triple-axis regions?
// ---------------------------------------------------------------------------

struct ConfinementReport {
    std::uint64_t horizon_events = 0;
    std::uint64_t trials = 0;
    double fraction_confined = 0.0;   // last half of the events inside one region
    double ci95_halfwidth = 0.0;
    std::array<double, 6> mean_line_visits{};            // per axis line
    std::vector<std::array<std::uint32_t, 6>> per_trial_line_visits;
    std::uint64_t omega_violations = 0;   // states with adjacent occupied vertices; must stay 0
};

namespace detail {

// support masks of the C6 regions: triples {0,2,4} / {1,3,5}, pairs {j, j+3}
inline bool support_subset(std::uint32_t support, std::uint32_t allowed) {
    return (support & ~allowed) == 0;
}

inline bool in_region(std::uint32_t support, int which) {
    static constexpr std::uint32_t triple[2] = {0b010101u, 0b101010u};
    static constexpr std::uint32_t pair[3] = {0b001001u, 0b010010u, 0b100100u};
    if (support_subset(support, triple[which])) return true;
    for (auto pr : pair)
        if (support_subset(support, pr)) return true;
    return false;
}

} // namespace detail

// Simulates the hard-core simple walk on C6 and records (a) visits to each
// single-axis line and (b) whether the last half of the trajectory stayed in
// one of the two hat regions (a triple plus its three escape planes).
inline ConfinementReport c6_confinement(const SimConfig& cfg, std::uint64_t trials) {
    const Graph c6 = named_graph(GraphFamily::Cycle, 6);
    const Params p{0.0, Beta::hard_core()};

    ConfinementReport rep;
    rep.horizon_events = cfg.max_events;
    rep.trials = trials;
    rep.per_trial_line_visits.assign(trials, {});
    std::vector<std::uint8_t> confined(trials, 0);
    std::vector<std::uint32_t> violations(trials, 0);

    parallel_for_index(trials, [&](std::size_t t) {
        CounterRng rng = CounterRng::substream(cfg.seed, t);
        State s = origin(6);
        bool stay[2] = {true, true};
        const std::uint64_t half = cfg.max_events / 2;
        for (std::uint64_t ev = 0; ev < cfg.max_events; ++ev) {
            s = detail::sample_step(p, c6, s, rng, nullptr).next;
            std::uint32_t support = 0;
            int positives = 0, axis = -1;
            for (int i = 0; i < 6; ++i)
                if (s[static_cast<std::size_t>(i)] > 0) {
                    support |= 1u << i;
                    ++positives;
                    axis = i;
                }
            if (!in_omega(c6, s)) violations[t] += 1;
            if (positives == 1)
                rep.per_trial_line_visits[t][static_cast<std::size_t>(axis)] += 1;
            if (ev >= half) {
                stay[0] = stay[0] && detail::in_region(support, 0);
                stay[1] = stay[1] && detail::in_region(support, 1);
            }
        }
        confined[t] = (cfg.max_events == 0 || stay[0] || stay[1]) ? 1 : 0;
    });
    for (auto v : violations) rep.omega_violations += v;

    std::uint64_t confined_count = 0;
    for (auto c : confined) confined_count += c;
    rep.fraction_confined =
        trials == 0 ? 1.0 : static_cast<double>(confined_count) / static_cast<double>(trials);
    rep.ci95_halfwidth =
        trials == 0 ? 0.0
                    : 1.96 * std::sqrt(rep.fraction_confined * (1.0 - rep.fraction_confined) /
                                       static_cast<double>(trials)) +
                          0.5 / static_cast<double>(trials);
    for (int line = 0; line < 6; ++line) {
        double sum = 0.0;
        for (const auto& counts : rep.per_trial_line_visits)
            sum += counts[static_cast<std::size_t>(line)];
        rep.mean_line_visits[static_cast<std::size_t>(line)] =
            trials == 0 ? 0.0 : sum / static_cast<double>(trials);
    }
    return rep;
}

} // namespace lattice_walks
