#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lattice_walks/chain.hpp"
#include "lattice_walks/spectral.hpp"

namespace lattice_walks {

// A candidate Lyapunov function: nullopt where undefined (outside its
// validity domain); the generator refuses to difference across such states.
using StateFunction = std::function<std::optional<double>(const State&)>;

struct NamedCandidate {
    std::string name;
    std::string description;
    StateFunction fn;
};

// L f(xi) = sum_i q_up_i (f(xi+e_i) - f(xi)) + q_down_i (f(xi-e_i) - f(xi)),
// with this chain's rates.  Only positive-rate neighbours are evaluated.
inline double apply_generator(const Params& p, const Graph& g, const StateFunction& f,
                              const State& s) {
    check_params(p);
    const std::optional<double> fs = f(s);
    if (!fs) throw input_error("candidate function undefined at the scanned state");
    const int n = g.vertex_count();
    double drift = 0.0;
    for (int i = 0; i < n; ++i) {
        const double log_up = log_rate_up(p, g, s, i);
        if (log_up != kNegInf) {
            const std::optional<double> fu = f(shifted(s, i, 1));
            if (!fu) throw input_error("candidate function undefined at a neighbour state");
            drift += std::exp(log_up) * (*fu - *fs);
        }
        const double log_down = log_rate_down(p, g, s, i);
        if (log_down != kNegInf) {
            const std::optional<double> fd = f(shifted(s, i, -1));
            if (!fd) throw input_error("candidate function undefined at a neighbour state");
            drift += std::exp(log_down) * (*fd - *fs);
        }
    }
    return drift;
}

enum class ScanDomain { FullLattice, Omega };

struct DriftScan {
    double r1 = 0.0;
    double r2 = 0.0;
    double worst_drift = kNegInf;
    State worst_state;
    std::vector<std::pair<State, double>> violations;   // drift > tolerance
    std::uint64_t states_checked = 0;
};

inline constexpr std::uint64_t kMaxScanStates = 10'000'000;

namespace detail {

// Enumerates {xi : r1 < |xi| <= r2} (norm-pruned box recursion), optionally
// restricted to Omega, in the fixed coordinate order.
template <typename Fn>
void for_each_state_in_shell(const Graph& g, double r1, double r2, ScanDomain domain, Fn&& fn) {
    const int n = g.vertex_count();
    const auto r2sq = r2 * r2;
    const auto r1sq = r1 * r1;
    const std::int64_t coord_cap = static_cast<std::int64_t>(std::floor(r2));
    State s = origin(n);
    auto rec = [&](auto&& self, int pos, std::int64_t norm2_so_far) -> void {
        if (pos == n) {
            if (static_cast<double>(norm2_so_far) > r1sq) fn(const_cast<const State&>(s));
            return;
        }
        for (std::int64_t v = 0; v <= coord_cap; ++v) {
            const std::int64_t norm2 = norm2_so_far + v * v;
            if (static_cast<double>(norm2) > r2sq) break;
            if (domain == ScanDomain::Omega && v > 0) {
                bool blocked = false;
                for (int w : g.neighbors(pos))
                    if (w < pos && s[static_cast<std::size_t>(w)] > 0) blocked = true;
                if (blocked) break;   // larger v stays blocked too
            }
            s[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, norm2);
        }
        s[static_cast<std::size_t>(pos)] = 0;
    };
    rec(rec, 0, 0);
}

} // namespace detail

// Exhaustive drift evaluation over the shell r1 < |xi| <= r2.  A state only
// counts as a violation when the drift clears the floating-point noise floor
// 1e-12 * (1 + |f(xi)|).
inline DriftScan drift_scan(const Params& p, const Graph& g, const StateFunction& f, double r1,
                            double r2, ScanDomain domain = ScanDomain::FullLattice) {
    check_params(p);
    if (!(r2 >= r1) || r1 < 0.0) throw input_error("drift scan needs 0 <= r1 <= r2");
    DriftScan scan;
    scan.r1 = r1;
    scan.r2 = r2;
    detail::for_each_state_in_shell(g, r1, r2, domain, [&](const State& s) {
        if (++scan.states_checked > kMaxScanStates)
            throw capability_error("drift scan window exceeds 1e7 states");
        const double drift = apply_generator(p, g, f, s);
        if (drift > scan.worst_drift) {
            scan.worst_drift = drift;
            scan.worst_state = s;
        }
        const std::optional<double> fs = f(s);
        if (drift > 1e-12 * (1.0 + std::abs(*fs))) scan.violations.emplace_back(s, drift);
    });
    return scan;
}

// Quadratic part of the potential: Q(xi) = (1/2) <(alpha E + beta A) xi, xi>,
// its eigen-shifts omega_k = alpha + beta lambda_k and gradient
// U(xi) = (alpha E + beta A) xi.
struct QuadraticForm {
    double alpha;
    double beta;
    const Graph* graph;
    std::vector<double> omega;

    double value(const State& s) const {
        return 0.5 * alpha * static_cast<double>(norm2_int(s)) +
               beta * static_cast<double>(edge_occupancy_product_sum(*graph, s));
    }

    std::vector<double> gradient(const State& s) const {
        const int n = graph->vertex_count();
        std::vector<double> u(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            u[static_cast<std::size_t>(i)] =
                alpha * static_cast<double>(s[static_cast<std::size_t>(i)]) +
                beta * static_cast<double>(neighbor_load(*graph, s, i));
        return u;
    }
};

inline QuadraticForm quadratic_form(const Params& p, const Graph& g) {
    check_params(p);
    if (p.beta.is_hard_core())
        throw input_error("the quadratic form needs a finite beta");
    QuadraticForm q{p.alpha, p.beta.value(), &g, {}};
    const SpectralInfo sp = spectral_info(g);
    q.omega.reserve(sp.all_eigenvalues.size());
    for (double lam : sp.all_eigenvalues) q.omega.push_back(p.alpha + p.beta.value() * lam);
    return q;
}

// phi(u) = e^u + 1 and psi(u) = u(e^u - 1); their coordinate sums control the
// jump-chain drift of Q from below.
inline double phi_scalar(double u) { return std::exp(u) + 1.0; }
inline double psi_scalar(double u) { return u * std::expm1(u); }

inline double phi_sum(const std::vector<double>& u) {
    double s = 0.0;
    for (double x : u) s += phi_scalar(x);
    return s;
}

inline double psi_sum(const std::vector<double>& u) {
    double s = 0.0;
    for (double x : u) s += psi_scalar(x);
    return s;
}

// Ratio Psi(u)/Phi(u) computed with the largest exponent factored out, so it
// survives |u| far beyond exp() range.
inline double psi_phi_ratio(const std::vector<double>& u) {
    double m = 0.0;
    for (double x : u) m = std::max(m, x);
    double num = 0.0, den = 0.0;
    for (double x : u) {
        const double e_scaled = std::exp(x - m);        // e^{u_i - m}
        const double unit_scaled = std::exp(-m);        // e^{-m}
        num += x * (e_scaled - unit_scaled);
        den += e_scaled + unit_scaled;
    }
    return num / den;
}

struct QDriftResult {
    double drift;          // expected one-step change of Q along the jump chain
    double lower_bound;    // Psi(U)/Phi(U) + alpha/2
};

// E(Delta Q | state) = q^{-1} sum_i (e^{U_i} U_i - 1_{xi_i>0} U_i) - a_hat
// with a_hat = -alpha/2, evaluated with the largest U_i factored out.
inline QDriftResult q_drift(const Params& p, const Graph& g, const State& s) {
    check_params(p);
    if (p.variant != Variant::Standard || p.beta.is_hard_core())
        throw input_error("q_drift is defined for the standard chain with finite beta");
    const QuadraticForm q{p.alpha, p.beta.value(), &g, {}};
    const std::vector<double> u = q.gradient(s);
    double m = 0.0;
    for (double x : u) m = std::max(m, x);
    double num = 0.0, den = 0.0;
    const double unit_scaled = std::exp(-m);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double e_scaled = std::exp(u[i] - m);
        num += e_scaled * u[i];
        den += e_scaled;
        if (s[i] > 0) {
            num -= unit_scaled * u[i];
            den += unit_scaled;
        }
    }
    const double a_hat = -0.5 * p.alpha;
    return {num / den - a_hat, psi_phi_ratio(u) - a_hat};
}

// The named Lyapunov candidates.  All integer-exact inside the logs.
inline std::vector<NamedCandidate> builtin_candidates(const Params& p, const Graph& g) {
    std::vector<NamedCandidate> out;

    // |xi - e|^2 - n + 3/2 = |xi|^2 - 2 S(xi) + 3/2; the vertex count cancels.
    out.push_back({"eqf", "log(|xi - e|^2 - n + 3/2)", [](const State& s) -> std::optional<double> {
                       const double arg = static_cast<double>(norm2_int(s)) -
                                          2.0 * static_cast<double>(level(s)) + 1.5;
                       if (arg <= 0.0) return std::nullopt;
                       return std::log(arg);
                   }});
    out.push_back({"lognorm", "log |xi|", [](const State& s) -> std::optional<double> {
                       const std::int64_t q = norm2_int(s);
                       if (q == 0) return std::nullopt;
                       return 0.5 * std::log(static_cast<double>(q));
                   }});
    out.push_back({"lognorm2m1", "log(|xi|^2 - 1)", [](const State& s) -> std::optional<double> {
                       const std::int64_t q = norm2_int(s);
                       if (q <= 1) return std::nullopt;
                       return std::log(static_cast<double>(q) - 1.0);
                   }});
    out.push_back({"logsum", "log(S(xi) + 1)", [](const State& s) -> std::optional<double> {
                       return std::log(static_cast<double>(level(s)) + 1.0);
                   }});
    if (!p.beta.is_hard_core()) {
        const double alpha = p.alpha, beta = p.beta.value();
        const Graph* graph = &g;
        out.push_back({"qtilde", "-Q(xi)", [alpha, beta, graph](const State& s) -> std::optional<double> {
                           return -(0.5 * alpha * static_cast<double>(norm2_int(s)) +
                                    beta * static_cast<double>(
                                               edge_occupancy_product_sum(*graph, s)));
                       }});
    }
    return out;
}

// The radius constant of the "eqf" candidate: beyond this radius the log
// argument exceeds 1 everywhere in the domain.  Computed by scanning, not
// assumed.
inline double eqf_radius_constant(const Graph& g, ScanDomain domain, double scan_radius = 40.0) {
    double c1 = 0.0;
    detail::for_each_state_in_shell(g, 0.0, scan_radius, domain, [&](const State& s) {
        const double arg = static_cast<double>(norm2_int(s)) -
                           2.0 * static_cast<double>(level(s)) + 1.5;
        if (arg <= 1.0) c1 = std::max(c1, norm(s));
    });
    return c1;
}

} // namespace lattice_walks
