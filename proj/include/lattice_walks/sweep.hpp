#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lattice_walks/classify.hpp"
#include "lattice_walks/io.hpp"

namespace lattice_walks {

// Phase-diagram sweep over an (alpha, beta) grid.  The hard-core row is a
// distinguished regime, not a limit: it is swept as its own beta value when
// requested, placed before the finite rows.
struct SweepSpec {
    double alpha_min = 0.0;
    double alpha_max = 0.0;
    double alpha_step = 0.25;
    double beta_min = 0.0;
    double beta_max = 0.0;
    double beta_step = 0.25;
    bool include_hard_core_row = false;
    Variant variant = Variant::Standard;
    ChainKind chain = ChainKind::Ctmc;
    std::string graph_spec;
    std::string out_path;   // empty or "-": standard output
};

inline constexpr std::uint64_t kMaxSweepCells = 1'000'000;

namespace detail {

inline std::vector<double> grid_values(double lo, double hi, double step) {
    if (!(step > 0.0)) throw input_error("sweep step must be > 0");
    if (!std::isfinite(lo) || !std::isfinite(hi) || hi < lo)
        throw input_error("sweep range must be finite with max >= min");
    std::vector<double> out;
    const auto count = static_cast<std::int64_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k) out.push_back(lo + static_cast<double>(k) * step);
    return out;
}

} // namespace detail

// Emits the header and one row per cell, row-major with alpha outermost,
// deterministic regardless of how the cells were computed.  Returns the cell
// count.
inline std::uint64_t run_sweep(const SweepSpec& spec, const Graph& g, std::ostream& out) {
    const auto alphas = detail::grid_values(spec.alpha_min, spec.alpha_max, spec.alpha_step);
    const auto betas = detail::grid_values(spec.beta_min, spec.beta_max, spec.beta_step);
    const std::uint64_t cells =
        static_cast<std::uint64_t>(alphas.size()) *
        (static_cast<std::uint64_t>(betas.size()) + (spec.include_hard_core_row ? 1 : 0));
    if (cells > kMaxSweepCells) throw input_error("sweep grid exceeds 1e6 cells");

    const SpectralInfo sp = spectral_info(g);

    out << kSweepCsvHeader << '\n';
    auto emit_cell = [&](double alpha, const Beta& beta) {
        const Params p{alpha, beta, spec.variant};
        const RecurrenceResult rec = classify_recurrence(p, g, sp);
        std::optional<ExplosionResult> ex;
        if (spec.chain == ChainKind::Ctmc && spec.variant == Variant::Standard)
            ex = classify_explosion(p, g, sp);
        out << fmt_double(alpha) << ','
            << (beta.is_hard_core() ? "-inf" : fmt_double(beta.value())) << ','
            << recurrence_name(rec.cls) << ',' << (ex ? explosion_name(ex->cls) : "n/a") << ','
            << rec.rule << '\n';
    };
    for (double alpha : alphas) {
        if (spec.include_hard_core_row) emit_cell(alpha, Beta::hard_core());
        for (double beta : betas) emit_cell(alpha, Beta(beta));
    }
    return cells;
}

} // namespace lattice_walks
