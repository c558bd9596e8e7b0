#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "lattice_walks/chain.hpp"
#include "lattice_walks/measure.hpp"
#include "lattice_walks/parallel.hpp"
#include "lattice_walks/rng.hpp"

namespace lattice_walks {

struct SimConfig {
    std::uint64_t seed = 0;
    std::uint64_t max_events = 10'000'000;
    double max_time = kPosInf;
    std::int64_t norm_cap = 10'000;           // trajectory "escaped" once S(xi) exceeds this
    double explosion_threshold = 1e-6;
    bool stop_on_return = true;               // false: probe mode, run through the origin
};

// Length of the monotone-rate window the explosion detector requires before
// it trusts an extrapolation.
inline constexpr int kExplosionWindow = 1000;

enum class TrajectoryVerdict {
    ReturnedToOrigin,
    Escaped,
    ExplosionSuspected,
    EventBudgetExhausted,
};

inline std::string verdict_name(TrajectoryVerdict v) {
    switch (v) {
    case TrajectoryVerdict::ReturnedToOrigin: return "ReturnedToOrigin";
    case TrajectoryVerdict::Escaped: return "Escaped";
    case TrajectoryVerdict::ExplosionSuspected: return "ExplosionSuspected";
    default: return "EventBudgetExhausted";
    }
}

struct TrajectoryOutcome {
    TrajectoryVerdict verdict = TrajectoryVerdict::EventBudgetExhausted;
    double elapsed_time = 0.0;
    std::uint64_t events = 0;
    double inverse_rate_sum = 0.0;   // sum of 1/q over visited embedded states
    State final_state;
};

struct CtmcStep {
    State next;
    double holding_time;
};

namespace detail {

// One jump of the chain.  Consumes exactly two uniforms: holding time first,
// then the move, selected by cumulative probability over the fixed move order
// (up moves by vertex, then down moves), matching dtmc_transition_probs.
inline CtmcStep sample_step(const Params& p, const Graph& g, const State& s, CounterRng& rng,
                            double* log_total_rate_out) {
    const int n = g.vertex_count();
    thread_local std::vector<double> log_rates;
    log_rates.assign(static_cast<std::size_t>(2 * n), kNegInf);
    LogSumAccumulator acc;
    for (int i = 0; i < n; ++i) {
        log_rates[static_cast<std::size_t>(i)] = log_rate_up(p, g, s, i);
        acc.add(log_rates[static_cast<std::size_t>(i)]);
    }
    for (int i = 0; i < n; ++i) {
        log_rates[static_cast<std::size_t>(n + i)] = log_rate_down(p, g, s, i);
        acc.add(log_rates[static_cast<std::size_t>(n + i)]);
    }
    const double log_q = acc.log_value();
    if (log_q == kNegInf) throw model_error("zero total rate during simulation");
    if (log_total_rate_out) *log_total_rate_out = log_q;

    const double holding = rng.exponential_log_rate(log_q);
    const double target = rng.uniform();
    double cumulative = 0.0;
    int chosen = 2 * n - 1;
    for (int k = 0; k < 2 * n; ++k) {
        cumulative += std::exp(log_rates[static_cast<std::size_t>(k)] - log_q);
        if (cumulative >= target) {
            chosen = k;
            break;
        }
    }
    // cumulative rounding can leave the last picked move at rate zero; walk
    // back to the nearest feasible one
    while (log_rates[static_cast<std::size_t>(chosen)] == kNegInf) --chosen;
    const int vertex = chosen % n;
    return {shifted(s, vertex, chosen < n ? 1 : -1), holding};
}

// Geometric tail bound on the remaining expected time, maintained over a
// monotone run of embedded total rates.  With per-event log-rate growth
// delta estimated from the run, the future holding times are dominated by
// (1/q) * sum_j e^{-j delta} = (1/q) / (1 - e^{-delta}).
class ExplosionDetector {
public:
    void observe(double log_q) {
        if (run_length_ == 0 || log_q < prev_log_q_ - 1e-12) {
            run_length_ = 1;
            run_start_log_q_ = log_q;
        } else {
            ++run_length_;
        }
        prev_log_q_ = log_q;
    }

    bool suspicious(double threshold) const {
        if (run_length_ < kExplosionWindow) return false;
        const double delta = (prev_log_q_ - run_start_log_q_) / (run_length_ - 1);
        if (delta <= 0.0) return false;
        const double bound = std::exp(-prev_log_q_) / (-std::expm1(-delta));
        return bound < threshold;
    }

private:
    double prev_log_q_ = 0.0;
    double run_start_log_q_ = 0.0;
    std::int64_t run_length_ = 0;
};

} // namespace detail

inline CtmcStep step_ctmc(const Params& p, const Graph& g, const State& s, CounterRng& rng) {
    check_params(p);
    return detail::sample_step(p, g, s, rng, nullptr);
}

// Runs one trajectory.  Outcomes, in checking order after each jump:
// escape above the norm cap, return to the origin (after having left it),
// suspected explosion, exhausted budget.  Explosion is numerically
// undecidable in finite time, so that verdict is only ever "suspected".
inline TrajectoryOutcome run_trajectory(const Params& p, const Graph& g, const State& start,
                                        const SimConfig& cfg, CounterRng& rng) {
    check_params(p);
    if (cfg.max_events < 1) throw input_error("max_events must be >= 1");
    if (cfg.norm_cap < 1) throw input_error("norm_cap must be >= 1");

    TrajectoryOutcome out;
    out.final_state = start;
    State s = start;
    bool left_origin = !is_origin(s);
    detail::ExplosionDetector detector;

    while (out.events < cfg.max_events && out.elapsed_time < cfg.max_time) {
        double log_q = 0.0;
        const CtmcStep step = detail::sample_step(p, g, s, rng, &log_q);
        detector.observe(log_q);
        out.inverse_rate_sum += std::exp(-log_q);
        out.elapsed_time += step.holding_time;
        s = step.next;
        ++out.events;

        if (level(s) > cfg.norm_cap) {
            out.verdict = TrajectoryVerdict::Escaped;
            out.final_state = s;
            return out;
        }
        if (is_origin(s)) {
            if (left_origin && cfg.stop_on_return) {
                out.verdict = TrajectoryVerdict::ReturnedToOrigin;
                out.final_state = s;
                return out;
            }
        } else {
            left_origin = true;
        }
        if (detector.suspicious(cfg.explosion_threshold)) {
            out.verdict = TrajectoryVerdict::ExplosionSuspected;
            out.final_state = s;
            return out;
        }
    }
    out.verdict = TrajectoryVerdict::EventBudgetExhausted;
    out.final_state = s;
    return out;
}

struct ReturnTimeStats {
    std::uint64_t trials = 0;
    std::uint64_t returned = 0;
    double mean = std::numeric_limits<double>::quiet_NaN();
    double median = std::numeric_limits<double>::quiet_NaN();
    double censored_fraction = 0.0;   // trials that escaped / ran out of budget
};

// Empirical return-time distribution from the origin; trajectories that never
// return within their budget are reported as censored, not folded into the
// mean.
inline ReturnTimeStats return_time_stats(const Params& p, const Graph& g, const SimConfig& cfg,
                                         std::uint64_t trials) {
    check_params(p);
    std::vector<TrajectoryOutcome> outcomes(trials);
    parallel_for_index(trials, [&](std::size_t t) {
        CounterRng rng = CounterRng::substream(cfg.seed, t);
        outcomes[t] = run_trajectory(p, g, origin(g.vertex_count()), cfg, rng);
    });

    ReturnTimeStats stats;
    stats.trials = trials;
    std::vector<double> times;
    for (const auto& o : outcomes)
        if (o.verdict == TrajectoryVerdict::ReturnedToOrigin) times.push_back(o.elapsed_time);
    stats.returned = times.size();
    stats.censored_fraction =
        trials == 0 ? 0.0 : static_cast<double>(trials - stats.returned) / trials;
    if (!times.empty()) {
        double sum = 0.0;
        for (double t : times) sum += t;
        stats.mean = sum / static_cast<double>(times.size());
        std::sort(times.begin(), times.end());
        const std::size_t mid = times.size() / 2;
        stats.median = times.size() % 2 == 1 ? times[mid]
                                             : 0.5 * (times[mid - 1] + times[mid]);
    }
    return stats;
}

struct OccupationHistogram {
    std::unordered_map<State, double, StateHash> holding;
    double total_time = 0.0;
};

// Time-in-state accumulation along one trajectory from `start`; runs to the
// budget, through the origin, stopping only at the norm cap.
inline OccupationHistogram run_occupation(const Params& p, const Graph& g, const State& start,
                                          const SimConfig& cfg, CounterRng& rng) {
    check_params(p);
    OccupationHistogram h;
    State s = start;
    for (std::uint64_t ev = 0; ev < cfg.max_events && h.total_time < cfg.max_time; ++ev) {
        const CtmcStep step = detail::sample_step(p, g, s, rng, nullptr);
        h.holding[s] += step.holding_time;
        h.total_time += step.holding_time;
        s = step.next;
        if (level(s) > cfg.norm_cap) break;
    }
    return h;
}

// Total-variation distance between the time-averaged occupation on
// {S(xi) <= L} and the invariant weight e^W normalised on the same window.
// A run that accumulated no time there degenerates to the point mass at the
// start state.
inline double occupation_vs_invariant(const Params& p, const Graph& g, const SimConfig& cfg,
                                      std::int64_t level_window) {
    check_params(p);
    CounterRng rng = CounterRng::substream(cfg.seed, 0);
    const State start = origin(g.vertex_count());
    const OccupationHistogram h = run_occupation(p, g, start, cfg, rng);

    double time_in_window = 0.0;
    for (const auto& [s, t] : h.holding)
        if (level(s) <= level_window) time_in_window += t;

    // log-normaliser of e^W over the window
    LogSumAccumulator z;
    for_each_state_up_to_level(g.vertex_count(), level_window, [&](const State& s) {
        z.add(potential(p, g, s));
    });
    const double log_z = z.log_value();

    double tv = 0.0;
    for_each_state_up_to_level(g.vertex_count(), level_window, [&](const State& s) {
        const double w = potential(p, g, s);
        const double pi = w == kNegInf ? 0.0 : std::exp(w - log_z);
        double occ;
        if (time_in_window > 0.0) {
            const auto it = h.holding.find(s);
            occ = it == h.holding.end() ? 0.0 : it->second / time_in_window;
        } else {
            occ = s == start ? 1.0 : 0.0;
        }
        tv += std::abs(occ - pi);
    });
    return 0.5 * tv;
}

} // namespace lattice_walks
