// Command-line front end: classification, simulation, resistance curves,
// Lyapunov drift scans, the two appendix experiments, and phase-diagram
// sweeps.  Exit codes: 0 success, 1 computational/capability failure,
// 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lattice_walks/lattice_walks.hpp"

namespace lw = lattice_walks;

namespace {

struct OutputTarget {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit OutputTarget(const std::string& path) {
        if (path.empty() || path == "-") return;
        file.open(path);
        if (!file) throw lw::input_error("cannot open output file '" + path + "'");
        stream = &file;
    }
};

struct CommonModelArgs {
    std::string graph_spec;
    double alpha = 0.0;
    std::string beta_text = "0";
    std::string variant_text = "standard";

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", graph_spec,
                        "graph: star:M, cycle:N, complete:N, path:N, edgeless:N, or a file")
            ->required();
        cmd->add_option("--alpha", alpha, "growth exponent alpha")->required();
        cmd->add_option("--beta", beta_text, "interaction exponent beta, or '-inf'")->required();
        cmd->add_option("--variant", variant_text, "chain variant: standard | modified")
            ->check(CLI::IsMember({"standard", "modified"}));
    }

    lw::Graph graph() const { return lw::parse_graph_spec(graph_spec); }
    lw::Params params() const {
        lw::Params p{alpha, lw::parse_beta(beta_text), lw::parse_variant(variant_text)};
        lw::check_params(p);
        return p;
    }
};

std::vector<std::int64_t> parse_levels(const std::string& text) {
    std::vector<std::int64_t> levels;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        levels.push_back(std::stoll(item));
    }
    if (levels.empty()) throw lw::input_error("--levels needs at least one level");
    return levels;
}

std::string state_to_string(const lw::State& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(s[i]);
    }
    return out;
}

int run_classify(const CommonModelArgs& model, bool dtmc, const std::string& format,
                 const std::string& out_path) {
    if (format != "json" && format != "csv")
        throw lw::input_error("--format must be 'json' or 'csv'");
    const lw::Graph g = model.graph();
    const lw::ClassificationReport rep = lw::classify_report(
        model.params(), g, dtmc ? lw::ChainKind::Dtmc : lw::ChainKind::Ctmc);
    OutputTarget out(out_path);
    if (format == "json") {
        *out.stream << lw::classification_to_json(rep).dump(2) << '\n';
    } else {
        *out.stream << lw::kSweepCsvHeader << '\n'
                    << lw::classification_csv_row(rep) << '\n';
    }
    return 0;
}

int run_simulate(const CommonModelArgs& model, std::uint64_t trials, lw::SimConfig cfg,
                 bool probe_explosion, const std::string& occupancy_path,
                 const std::string& out_path) {
    const lw::Graph g = model.graph();
    const lw::Params p = model.params();
    cfg.stop_on_return = !probe_explosion;

    std::vector<lw::TrajectoryOutcome> outcomes(trials);
    lw::parallel_for_index(trials, [&](std::size_t t) {
        lw::CounterRng rng = lw::CounterRng::substream(cfg.seed, t);
        outcomes[t] = lw::run_trajectory(p, g, lw::origin(g.vertex_count()), cfg, rng);
    });

    std::uint64_t counts[4] = {0, 0, 0, 0};
    for (const auto& o : outcomes) counts[static_cast<int>(o.verdict)] += 1;
    std::vector<double> return_times;
    for (const auto& o : outcomes)
        if (o.verdict == lw::TrajectoryVerdict::ReturnedToOrigin)
            return_times.push_back(o.elapsed_time);
    std::sort(return_times.begin(), return_times.end());

    lw::Json doc;
    doc["version"] = lw::kVersion;
    doc["command"] = "simulate";
    const lw::SpectralInfo sp = lw::spectral_info(g);
    doc["graph"] = lw::graph_summary_json(g, sp, lw::independence_number(g));
    doc["params"] = lw::params_to_json(p);
    doc["trials"] = trials;
    doc["seed"] = cfg.seed;
    doc["config"] = lw::Json{{"max_events", cfg.max_events},
                             {"max_time", cfg.max_time},
                             {"norm_cap", cfg.norm_cap},
                             {"explosion_threshold", cfg.explosion_threshold},
                             {"stop_on_return", cfg.stop_on_return}};
    doc["verdicts"] =
        lw::Json{{"ReturnedToOrigin", counts[0]},
                 {"Escaped", counts[1]},
                 {"ExplosionSuspected", counts[2]},
                 {"EventBudgetExhausted", counts[3]}};
    doc["explosion_suspected_fraction"] =
        trials == 0 ? 0.0 : static_cast<double>(counts[2]) / static_cast<double>(trials);
    lw::Json rt;
    rt["returned"] = return_times.size();
    rt["censored_fraction"] =
        trials == 0 ? 0.0
                    : static_cast<double>(trials - return_times.size()) /
                          static_cast<double>(trials);
    if (!return_times.empty()) {
        double sum = 0.0;
        for (double t : return_times) sum += t;
        rt["mean"] = sum / static_cast<double>(return_times.size());
        const std::size_t mid = return_times.size() / 2;
        rt["median"] = return_times.size() % 2 == 1
                           ? return_times[mid]
                           : 0.5 * (return_times[mid - 1] + return_times[mid]);
    } else {
        rt["mean"] = nullptr;
        rt["median"] = nullptr;
    }
    doc["return_time"] = rt;

    if (!occupancy_path.empty()) {
        lw::CounterRng rng = lw::CounterRng::substream(cfg.seed, 0);
        const lw::OccupationHistogram h =
            lw::run_occupation(p, g, lw::origin(g.vertex_count()), cfg, rng);
        std::ofstream occ(occupancy_path);
        if (!occ) throw lw::input_error("cannot open occupancy file '" + occupancy_path + "'");
        occ << "state,holding_time\n";
        // deterministic order: by level, then colexicographic
        std::vector<std::pair<lw::State, double>> rows(h.holding.begin(), h.holding.end());
        std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
            const auto la = lw::level(a.first), lb = lw::level(b.first);
            if (la != lb) return la < lb;
            for (std::size_t i = a.first.size(); i-- > 0;)
                if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
            return false;
        });
        for (const auto& [s, t] : rows)
            occ << state_to_string(s) << ',' << lw::fmt_double(t) << '\n';
        doc["occupancy_file"] = occupancy_path;
        doc["occupancy_total_time"] = h.total_time;
    }

    OutputTarget out(out_path);
    *out.stream << doc.dump(2) << '\n';
    return 0;
}

int run_resistance(const CommonModelArgs& model, const std::string& levels_text,
                   const std::string& method, const std::string& out_path) {
    const lw::Graph g = model.graph();
    const lw::Params p = model.params();
    const auto levels = parse_levels(levels_text);
    const bool want_dirichlet = method == "all" || method == "dirichlet";
    const bool want_cut = method == "all" || method == "shortcut";
    const bool want_v1 = method == "all" || method == "v1path";
    const bool want_axis = method == "all" || method == "axis";
    if (!(want_dirichlet || want_cut || want_v1 || want_axis))
        throw lw::input_error("--method must be all|dirichlet|shortcut|v1path|axis");

    OutputTarget out(out_path);
    std::string header = "L";
    if (want_dirichlet) header += ",R_eff";
    if (want_cut) header += ",cut_lower_bound";
    if (want_v1) header += ",v1_path_upper_bound";
    if (want_axis) header += ",axis_path_upper_bound";
    *out.stream << header << '\n';

    for (const auto level : levels) {
        *out.stream << level;
        if (want_dirichlet)
            *out.stream << ',' << lw::fmt_double(lw::effective_resistance(p, g, level));
        if (want_cut)
            *out.stream << ','
                        << lw::fmt_double(lw::cut_resistance_sum(
                               lw::level_short_circuit_curve(p, g, level)));
        if (want_v1) {
            double v1 = std::numeric_limits<double>::quiet_NaN();
            if (g.edge_count() > 0) v1 = lw::v1_path_upper_bound(p, g, level);
            *out.stream << ',' << lw::fmt_double(v1);
        }
        if (want_axis)
            *out.stream << ',' << lw::fmt_double(lw::axis_path_upper_bound(p, g, level));
        *out.stream << '\n';
    }
    return 0;
}

int run_lyapunov(const CommonModelArgs& model, const std::string& candidate_name, double r1,
                 double r2, const std::string& domain_text, const std::string& drifts_path,
                 const std::string& out_path) {
    const lw::Graph g = model.graph();
    const lw::Params p = model.params();

    lw::ScanDomain domain;
    if (domain_text == "auto")
        domain = p.beta.is_hard_core() ? lw::ScanDomain::Omega : lw::ScanDomain::FullLattice;
    else if (domain_text == "full")
        domain = lw::ScanDomain::FullLattice;
    else if (domain_text == "omega")
        domain = lw::ScanDomain::Omega;
    else
        throw lw::input_error("--domain must be auto|full|omega");

    lw::StateFunction fn;
    for (auto& c : lw::builtin_candidates(p, g))
        if (c.name == candidate_name) fn = c.fn;
    if (!fn)
        throw lw::input_error("--candidate must be one of eqf|lognorm|lognorm2m1|logsum|qtilde");

    const lw::DriftScan scan = lw::drift_scan(p, g, fn, r1, r2, domain);

    lw::Json doc;
    doc["version"] = lw::kVersion;
    doc["command"] = "lyapunov";
    const lw::SpectralInfo sp = lw::spectral_info(g);
    doc["graph"] = lw::graph_summary_json(g, sp, lw::independence_number(g));
    doc["params"] = lw::params_to_json(p);
    doc["candidate"] = candidate_name;
    doc["domain"] = domain == lw::ScanDomain::Omega ? "omega" : "full";
    doc["r1"] = r1;
    doc["r2"] = r2;
    doc["states_checked"] = scan.states_checked;
    doc["worst_drift"] = scan.worst_drift;
    doc["worst_state"] = scan.worst_state;
    doc["violation_count"] = scan.violations.size();
    lw::Json vio = lw::Json::array();
    for (std::size_t k = 0; k < scan.violations.size() && k < 100; ++k)
        vio.push_back(lw::Json{{"state", scan.violations[k].first},
                               {"drift", scan.violations[k].second}});
    doc["violations"] = vio;

    if (!drifts_path.empty()) {
        std::ofstream csv(drifts_path);
        if (!csv) throw lw::input_error("cannot open drift file '" + drifts_path + "'");
        csv << "state,drift\n";
        lw::detail::for_each_state_in_shell(g, r1, r2, domain, [&](const lw::State& s) {
            csv << state_to_string(s) << ','
                << lw::fmt_double(lw::apply_generator(p, g, fn, s)) << '\n';
        });
        doc["drifts_file"] = drifts_path;
    }

    OutputTarget out(out_path);
    *out.stream << doc.dump(2) << '\n';
    return 0;
}

int run_appendix_p1(std::int64_t x, std::uint64_t trials, std::uint64_t seed,
                    std::int64_t grid_cap, const std::string& out_path) {
    if (grid_cap == 0) grid_cap = std::max<std::int64_t>(80, 8 * x);
    const lw::HittingEstimate est = lw::lemma_p1_estimate(x, trials, seed);
    const double exact = lw::lemma_p1_exact(x, grid_cap);

    lw::Json doc;
    doc["version"] = lw::kVersion;
    doc["command"] = "appendix-p1";
    doc["x"] = x;
    doc["trials"] = trials;
    doc["seed"] = seed;
    doc["grid_cap"] = grid_cap;
    doc["p_hat"] = est.p_hat;
    doc["ci95_halfwidth"] = est.ci95_halfwidth;
    doc["hit_diagonal_first"] = est.hit_diagonal_first;
    doc["exact_oracle"] = exact;
    doc["lower_bound"] = 1.0 / static_cast<double>(x);
    doc["upper_bound"] = 2.0 / (1.0 + static_cast<double>(x));

    OutputTarget out(out_path);
    *out.stream << doc.dump(2) << '\n';
    return 0;
}

int run_appendix_c6(std::uint64_t horizon, std::uint64_t trials, std::uint64_t seed,
                    const std::string& out_path) {
    lw::SimConfig cfg;
    cfg.seed = seed;
    cfg.max_events = horizon;
    cfg.norm_cap = std::numeric_limits<std::int64_t>::max() / 2;
    const lw::ConfinementReport rep = lw::c6_confinement(cfg, trials);

    lw::Json doc;
    doc["version"] = lw::kVersion;
    doc["command"] = "appendix-c6";
    doc["horizon_events"] = rep.horizon_events;
    doc["trials"] = rep.trials;
    doc["seed"] = seed;
    doc["fraction_confined"] = rep.fraction_confined;
    doc["ci95_halfwidth"] = rep.ci95_halfwidth;
    doc["mean_line_visits"] = rep.mean_line_visits;
    doc["omega_violations"] = rep.omega_violations;
    lw::Json per_trial = lw::Json::array();
    for (const auto& counts : rep.per_trial_line_visits) per_trial.push_back(counts);
    doc["per_trial_line_visits"] = per_trial;

    OutputTarget out(out_path);
    *out.stream << doc.dump(2) << '\n';
    return 0;
}

int run_sweep_cmd(lw::SweepSpec spec, bool dtmc, const std::string& variant_text) {
    spec.variant = lw::parse_variant(variant_text);
    spec.chain = dtmc ? lw::ChainKind::Dtmc : lw::ChainKind::Ctmc;
    const lw::Graph g = lw::parse_graph_spec(spec.graph_spec);
    OutputTarget out(spec.out_path);
    lw::run_sweep(spec, g, *out.stream);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interacting random walks on Z_+^n indexed by a finite graph: "
                 "exact long-term classification with simulation, electric-network and "
                 "Lyapunov-drift corroboration"};
    app.set_version_flag("--version", lw::kVersion);
    app.require_subcommand(1);

    // classify
    auto* classify = app.add_subcommand("classify", "classify recurrence and explosion");
    CommonModelArgs classify_model;
    classify_model.attach(classify);
    bool classify_dtmc = false;
    std::string classify_format = "json", classify_out;
    classify->add_flag("--dtmc", classify_dtmc, "classify the embedded jump chain");
    classify->add_option("--format", classify_format, "output format: json | csv");
    classify->add_option("--out", classify_out, "output path (default: stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "seeded trajectory simulation");
    CommonModelArgs sim_model;
    sim_model.attach(simulate);
    std::uint64_t sim_trials = 100;
    lw::SimConfig sim_cfg;
    bool sim_probe = false;
    std::string sim_occupancy, sim_out;
    simulate->add_option("--trials", sim_trials, "number of independent trajectories");
    simulate->add_option("--seed", sim_cfg.seed, "master seed");
    simulate->add_option("--max-events", sim_cfg.max_events, "event budget per trajectory");
    simulate->add_option("--max-time", sim_cfg.max_time, "time budget per trajectory");
    simulate->add_option("--norm-cap", sim_cfg.norm_cap, "escape level");
    simulate->add_option("--explosion-threshold", sim_cfg.explosion_threshold,
                         "remaining-time bound that triggers ExplosionSuspected");
    simulate->add_flag("--probe-explosion", sim_probe,
                       "run through the origin instead of stopping on return");
    simulate->add_option("--emit-occupancy", sim_occupancy,
                         "write a per-state holding-time CSV from one long run");
    simulate->add_option("--out", sim_out, "output path (default: stdout)");

    // resistance
    auto* resistance = app.add_subcommand("resistance", "truncated-network resistance curves");
    CommonModelArgs res_model;
    res_model.attach(resistance);
    std::string res_levels = "10,20,40,80", res_method = "all", res_out;
    resistance->add_option("--levels", res_levels, "comma-separated truncation levels");
    resistance->add_option("--method", res_method, "all|dirichlet|shortcut|v1path|axis");
    resistance->add_option("--out", res_out, "output path (default: stdout)");

    // lyapunov
    auto* lyapunov = app.add_subcommand("lyapunov", "drift scan of a Lyapunov candidate");
    CommonModelArgs lyap_model;
    lyap_model.attach(lyapunov);
    std::string lyap_candidate = "lognorm", lyap_domain = "auto", lyap_drifts, lyap_out;
    double lyap_r1 = 0.0, lyap_r2 = 20.0;
    lyapunov->add_option("--candidate", lyap_candidate, "eqf|lognorm|lognorm2m1|logsum|qtilde");
    lyapunov->add_option("--r1", lyap_r1, "inner radius (exclusive)");
    lyapunov->add_option("--r2", lyap_r2, "outer radius (inclusive)");
    lyapunov->add_option("--domain", lyap_domain, "auto|full|omega");
    lyapunov->add_option("--emit-drifts", lyap_drifts, "write per-state drifts CSV");
    lyapunov->add_option("--out", lyap_out, "output path (default: stdout)");

    // appendix
    auto* appendix = app.add_subcommand("appendix", "appendix experiments");
    appendix->require_subcommand(1);
    auto* p1 = appendix->add_subcommand("p1", "diagonal-vs-axis hitting probability");
    std::int64_t p1_x = 5, p1_cap = 0;
    std::uint64_t p1_trials = 100'000, p1_seed = 7;
    std::string p1_out;
    p1->add_option("--x", p1_x, "start coordinate (walk starts at (x, 1))");
    p1->add_option("--trials", p1_trials, "Monte Carlo trials");
    p1->add_option("--seed", p1_seed, "master seed");
    p1->add_option("--grid-cap", p1_cap, "oracle grid cap (default max(80, 8x))");
    p1->add_option("--out", p1_out, "output path (default: stdout)");

    auto* c6 = appendix->add_subcommand("c6", "hard-core confinement on the 6-cycle");
    std::uint64_t c6_horizon = 100'000, c6_trials = 200, c6_seed = 7;
    std::string c6_out;
    c6->add_option("--horizon", c6_horizon, "events per trial");
    c6->add_option("--trials", c6_trials, "independent trials");
    c6->add_option("--seed", c6_seed, "master seed");
    c6->add_option("--out", c6_out, "output path (default: stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep to CSV");
    lw::SweepSpec sweep_spec;
    bool sweep_dtmc = false;
    std::string sweep_variant = "standard";
    sweep->add_option("--graph", sweep_spec.graph_spec, "graph spec")->required();
    sweep->add_option("--alpha-min", sweep_spec.alpha_min)->required();
    sweep->add_option("--alpha-max", sweep_spec.alpha_max)->required();
    sweep->add_option("--alpha-step", sweep_spec.alpha_step);
    sweep->add_option("--beta-min", sweep_spec.beta_min)->required();
    sweep->add_option("--beta-max", sweep_spec.beta_max)->required();
    sweep->add_option("--beta-step", sweep_spec.beta_step);
    sweep->add_flag("--include-beta-inf", sweep_spec.include_hard_core_row,
                    "add the hard-core row beta = -inf");
    sweep->add_option("--variant", sweep_variant, "standard | modified")
        ->check(CLI::IsMember({"standard", "modified"}));
    sweep->add_flag("--dtmc", sweep_dtmc, "classify the embedded jump chain");
    sweep->add_option("--out", sweep_spec.out_path, "output path (default: stdout)");

    try {
        app.parse(argc, argv);
        if (*classify)
            return run_classify(classify_model, classify_dtmc, classify_format, classify_out);
        if (*simulate)
            return run_simulate(sim_model, sim_trials, sim_cfg, sim_probe, sim_occupancy,
                                sim_out);
        if (*resistance) return run_resistance(res_model, res_levels, res_method, res_out);
        if (*lyapunov)
            return run_lyapunov(lyap_model, lyap_candidate, lyap_r1, lyap_r2, lyap_domain,
                                lyap_drifts, lyap_out);
        if (*p1) return run_appendix_p1(p1_x, p1_trials, p1_seed, p1_cap, p1_out);
        if (*c6) return run_appendix_c6(c6_horizon, c6_trials, c6_seed, c6_out);
        if (*sweep) return run_sweep_cmd(sweep_spec, sweep_dtmc, sweep_variant);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const lw::input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const lw::capability_error& e) {
        std::cerr << "capability error: " << e.what() << '\n';
        return 1;
    } catch (const lw::precision_error& e) {
        std::cerr << "precision error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
