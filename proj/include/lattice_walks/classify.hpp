#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lattice_walks/criticality.hpp"
#include "lattice_walks/graph.hpp"
#include "lattice_walks/measure.hpp"
#include "lattice_walks/params.hpp"
#include "lattice_walks/spectral.hpp"

namespace lattice_walks {

enum class Recurrence { PositiveRecurrent, NullRecurrent, Transient };
enum class ExplosionBehaviour { NonExplosive, ExplosiveAS, OpenConjecturedExplosive };
enum class ChainKind { Ctmc, Dtmc };

inline std::string recurrence_name(Recurrence r) {
    switch (r) {
    case Recurrence::PositiveRecurrent: return "PositiveRecurrent";
    case Recurrence::NullRecurrent: return "NullRecurrent";
    default: return "Transient";
    }
}

inline std::string explosion_name(ExplosionBehaviour e) {
    switch (e) {
    case ExplosionBehaviour::NonExplosive: return "NonExplosive";
    case ExplosionBehaviour::ExplosiveAS: return "ExplosiveAS";
    default: return "OpenConjecturedExplosive";
    }
}

struct RecurrenceResult {
    Recurrence cls;
    std::string rule;                          // decision-table clause id, e.g. "Tmain.iii.e"
    std::optional<std::string> boundary_note;  // set when the certified boundary decided it
};

struct ExplosionResult {
    ExplosionBehaviour cls;
    std::string rule;
};

// Everything the verdict depended on, echoed for audit.
struct ClassifierInputsEcho {
    double alpha;
    Beta beta;
    Variant variant;
    int n;
    int edge_count;
    int min_degree;
    double lambda1;
    double lambda1_error_bound;
    int kappa;
};

struct ClassificationReport {
    ClassifierInputsEcho inputs;
    ChainKind chain;
    RecurrenceResult recurrence;
    std::optional<ExplosionResult> explosion;   // CTMC + standard variant only
    std::vector<std::string> notes;
};

// Recurrence / transience / positive recurrence, decided exactly from the
// decision table.  The same table serves the CTMC and its jump chain, and the
// modified chain differs in a single clause: e(G) = 1, alpha < 0 and
// alpha + beta*lambda1 = 0 is null recurrent instead of transient.
inline RecurrenceResult classify_recurrence(const Params& p, const Graph& g,
                                            const SpectralInfo& sp) {
    check_params(p);
    if (p.alpha < 0.0) {
        const CriticalDecision d = critical_sign(p, g, sp);
        if (d.sign == CriticalSign::Negative)
            return {Recurrence::PositiveRecurrent, "Tmain.i", d.boundary_note};
        if (p.variant == Variant::Modified && d.sign == CriticalSign::Zero &&
            g.edge_count() == 1)
            return {Recurrence::NullRecurrent, "Ttxi.exception", d.boundary_note};
        return {Recurrence::Transient, "Tmain.iii.f", d.boundary_note};
    }
    if (p.alpha == 0.0) {
        if (p.beta.negative()) {
            const int kappa = independence_number(g);
            if (kappa <= 2) return {Recurrence::NullRecurrent, "Tmain.ii.a", std::nullopt};
            return {Recurrence::Transient, "Tmain.iii.e", std::nullopt};
        }
        if (p.beta.zero()) {
            if (g.vertex_count() <= 2)
                return {Recurrence::NullRecurrent, "Tmain.ii.b", std::nullopt};
            return {Recurrence::Transient, "Tmain.iii.d", std::nullopt};
        }
        // beta > 0
        if (g.edge_count() == 0) {
            if (g.vertex_count() <= 2)
                return {Recurrence::NullRecurrent, "Tmain.ii.c", std::nullopt};
            return {Recurrence::Transient, "Tmain.iii.c", std::nullopt};
        }
        return {Recurrence::Transient, "Tmain.iii.b", std::nullopt};
    }
    return {Recurrence::Transient, "Tmain.iii.a", std::nullopt};
}

inline RecurrenceResult classify_recurrence(const Params& p, const Graph& g) {
    return classify_recurrence(p, g, spectral_info(g));
}

// Explosion classification for the standard chain.  The region
// alpha < 0, alpha + beta*min_deg <= 0 < alpha + beta*lambda1 is open in the
// source classification (conjectured explosive); it is reported as such,
// never resolved.  For regular graphs min_deg = lambda1, so the open region
// is empty.
inline ExplosionResult classify_explosion(const Params& p, const Graph& g,
                                          const SpectralInfo& sp) {
    check_params(p);
    if (p.variant == Variant::Modified)
        throw capability_error(
            "explosion classification is not available for the modified variant");

    if (p.alpha > 0.0) return {ExplosionBehaviour::ExplosiveAS, "Texpl.ii.a"};
    if (p.alpha == 0.0) {
        if (!p.beta.positive()) return {ExplosionBehaviour::NonExplosive, "Texpl.i.b"};
        if (g.edge_count() == 0) return {ExplosionBehaviour::NonExplosive, "Texpl.i.c"};
        return {ExplosionBehaviour::ExplosiveAS, "Texpl.ii.b"};
    }
    // alpha < 0
    const CriticalDecision d = critical_sign(p, g, sp);
    if (d.sign != CriticalSign::Positive)
        return {ExplosionBehaviour::NonExplosive, "Texpl.i.a"};
    // alpha + beta*min_i nu_i: exact inputs, no spectral uncertainty.  A
    // hard-core beta cannot reach here (it forces the Negative branch above
    // when edges exist, and lambda1 = 0 when none do).
    const double min_deg_comb = p.alpha + p.beta.value() * static_cast<double>(g.min_degree());
    if (min_deg_comb > 0.0) return {ExplosionBehaviour::ExplosiveAS, "Texpl.ii.c"};
    return {ExplosionBehaviour::OpenConjecturedExplosive, "Rexpl.open"};
}

inline ExplosionResult classify_explosion(const Params& p, const Graph& g) {
    return classify_explosion(p, g, spectral_info(g));
}

inline ClassificationReport classify_report(const Params& p, const Graph& g, ChainKind chain) {
    check_params(p);
    const SpectralInfo sp = spectral_info(g);

    ClassificationReport rep{
        ClassifierInputsEcho{p.alpha, p.beta, p.variant, g.vertex_count(), g.edge_count(),
                             g.min_degree(), sp.lambda1, sp.lambda1_error_bound,
                             independence_number(g)},
        chain,
        classify_recurrence(p, g, sp),
        std::nullopt,
        {}};

    if (chain == ChainKind::Ctmc) {
        if (p.variant == Variant::Standard) {
            rep.explosion = classify_explosion(p, g, sp);
        } else {
            rep.notes.push_back(
                "explosion classification is not available for the modified variant");
        }
    }

    // For a disconnected graph the chain factors over components.  The
    // whole-graph decision table above already covers disconnected graphs and
    // is the verdict; the per-component view is attached as an annotation.
    // Its naive combination rule (all positive -> positive; any transient ->
    // transient; else null) is only a derived heuristic: with three or more
    // null components it can disagree with the whole-graph table (three
    // independent null-recurrent walks are jointly transient), so a mismatch
    // is reported, not adopted.
    const auto comps = connected_components(g);
    if (comps.size() > 1) {
        bool any_transient = false, all_positive = true;
        std::string detail = "per-component rules:";
        for (const auto& c : comps) {
            const RecurrenceResult rc = classify_recurrence(p, c.graph);
            detail += " " + rc.rule;
            any_transient |= rc.cls == Recurrence::Transient;
            all_positive &= rc.cls == Recurrence::PositiveRecurrent;
        }
        rep.notes.push_back(detail);
        const Recurrence combined = any_transient ? Recurrence::Transient
                                  : all_positive  ? Recurrence::PositiveRecurrent
                                                  : Recurrence::NullRecurrent;
        rep.notes.push_back("derived combination: " + recurrence_name(combined));
        if (combined != rep.recurrence.cls)
            rep.notes.push_back(
                "derived combination disagrees; the whole-graph verdict stands");
    }
    return rep;
}

} // namespace lattice_walks
