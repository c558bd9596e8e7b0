#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "lattice_walks/errors.hpp"
#include "lattice_walks/numerics.hpp"
#include "lattice_walks/params.hpp"
#include "lattice_walks/spectral.hpp"

namespace lattice_walks {

// Sign of the critical combination alpha + beta * lambda1, decided against
// the certified lambda1 enclosure.  The verdicts of the classification flip
// across this sign, so an enclosure too wide to decide raises precision_error
// instead of guessing.
enum class CriticalSign { Negative, Zero, Positive };

struct CriticalDecision {
    CriticalSign sign;
    double value;                       // alpha + beta*lambda1; -inf for hard-core
    std::optional<std::string> boundary_note;
};

inline CriticalDecision critical_sign(const Params& p, const Graph& g, const SpectralInfo& sp) {
    // Hard-core: beta*lambda1 is -inf when lambda1 > 0 (any edge implies
    // lambda1 >= 1), and 0 when the graph is edgeless (0 * inf = 0).
    if (p.beta.is_hard_core() && g.edge_count() > 0)
        return {CriticalSign::Negative, kNegInf, std::nullopt};

    const double beta = (p.beta.is_hard_core() || g.edge_count() == 0) ? 0.0 : p.beta.value();
    const double s = p.alpha + beta * sp.lambda1;
    const double uncertainty = std::abs(beta) * sp.lambda1_error_bound;
    const double tol = 1e-9 * std::max(1.0, std::abs(p.alpha));

    if (s + uncertainty < -tol) return {CriticalSign::Negative, s, std::nullopt};
    if (s - uncertainty > tol) return {CriticalSign::Positive, s, std::nullopt};
    if (std::abs(s) + uncertainty <= tol)
        return {CriticalSign::Zero, s,
                "alpha + beta*lambda1 lies within the certified tolerance of 0; "
                "treated as the boundary case"};
    throw precision_error(
        "the certified lambda1 enclosure straddles the classification boundary; "
        "alpha + beta*lambda1 = " + std::to_string(s) + " +/- " +
        std::to_string(uncertainty) + " cannot be signed at tolerance " +
        std::to_string(tol));
}

} // namespace lattice_walks
