#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "lattice_walks/chain.hpp"
#include "lattice_walks/criticality.hpp"
#include "lattice_walks/numerics.hpp"

namespace lattice_walks {

enum class MassFiniteness { Finite, Infinite, Undetermined };

inline std::string finiteness_name(MassFiniteness f) {
    switch (f) {
    case MassFiniteness::Finite: return "Finite";
    case MassFiniteness::Infinite: return "Infinite";
    default: return "Undetermined";
    }
}

// Truncated invariant-measure masses.  partial_mass is sum of e^{W(xi)} over
// S(xi) <= L; dtmc_partial_mass is the jump-chain counterpart
// 2 * sum |{i : xi_i > 0}| e^{W(xi)} over the same set.  Linear values may
// saturate to +inf; the log fields never do.
struct MeasureReport {
    double partial_mass = 0.0;
    double log_partial_mass = kNegInf;
    double dtmc_partial_mass = 0.0;
    double log_dtmc_partial_mass = kNegInf;
    std::int64_t level_cap = 0;
    MassFiniteness finite_flag = MassFiniteness::Undetermined;
    std::optional<std::string> boundary_note;
};

inline constexpr std::uint64_t kMaxTruncationStates = 10'000'000;

// Total-mass finiteness from the exact spectral condition: finite iff
// alpha < 0 and alpha + beta*lambda1 < 0.  The boundary resolves to
// Infinite (the >= 0 direction); an undecidable enclosure reports
// Undetermined rather than raising, since no verdict hangs on it here.
inline MassFiniteness mass_finiteness(const Params& p, const Graph& g, const SpectralInfo& sp,
                                      std::optional<std::string>* note = nullptr) {
    check_params(p);
    if (p.alpha >= 0.0) return MassFiniteness::Infinite;
    try {
        const CriticalDecision d = critical_sign(p, g, sp);
        if (note && d.boundary_note) *note = d.boundary_note;
        return d.sign == CriticalSign::Negative ? MassFiniteness::Finite
                                                : MassFiniteness::Infinite;
    } catch (const precision_error&) {
        if (note) *note = "lambda1 enclosure straddles the tolerance";
        return MassFiniteness::Undetermined;
    }
}

inline MeasureReport measure_report(const Params& p, const Graph& g, std::int64_t level_cap) {
    check_params(p);
    if (level_cap < 0) throw input_error("level cap must be >= 0");
    const int n = g.vertex_count();
    if (states_up_to_level(n, level_cap, kMaxTruncationStates + 1) > kMaxTruncationStates)
        throw capability_error("state-space truncation exceeds 1e7 states");

    LogSumAccumulator z, z_hat;
    for_each_state_up_to_level(n, level_cap, [&](const State& s) {
        const double w = potential(p, g, s);
        if (w == kNegInf) return;
        z.add(w);
        int positives = 0;
        for (auto x : s) positives += x > 0 ? 1 : 0;
        if (positives > 0)
            z_hat.add(w + std::log(2.0 * static_cast<double>(positives)));
    });

    MeasureReport r;
    r.level_cap = level_cap;
    r.log_partial_mass = z.log_value();
    r.partial_mass = z.value();
    r.log_dtmc_partial_mass = z_hat.log_value();
    r.dtmc_partial_mass = z_hat.value();
    r.finite_flag = mass_finiteness(p, g, spectral_info(g), &r.boundary_note);
    return r;
}

} // namespace lattice_walks
