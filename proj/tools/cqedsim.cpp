// Command-line front end: Bell-state preparation, target-state preparation,
// full teleportation runs, parameter sweeps, and the analytic feasibility
// report.  Results go to stdout (or --out) as a config echo block followed by
// the payload; diagnostics go to stderr.
//
// Exit codes: 0 success, 2 configuration error, 3 impossible forced outcome,
// 4 round cap exceeded.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cqed/config.hpp"
#include "cqed/experiments.hpp"
#include "cqed/protocol.hpp"

namespace {

using namespace cqed;

struct CommonOpts {
    std::string config_path;
    std::string out_path;
    std::string format = "table";
    long trials = 1;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_trials = true) {
    cmd->add_option("--config", opts->config_path, "configuration file (key = value)");
    cmd->add_option("--out", opts->out_path, "write the result document to this path");
    cmd->add_option("--format", opts->format, "output format: table | nested")
        ->check(CLI::IsMember({"table", "nested"}));
    if (with_trials) {
        cmd->add_option("--trials", opts->trials, "number of independent trials")
            ->check(CLI::PositiveNumber);
    }
    cmd->add_option("--seed", opts->seed, "override the config seed");
}

ProtocolConfig resolve_config(const CommonOpts& opts) {
    ProtocolConfig config = load_config_file(opts.config_path);
    if (opts.seed) config.seed = *opts.seed;
    return config;
}

using Row = std::vector<std::string>;

std::string render_table(const std::string& title, const Row& header,
                         const std::vector<Row>& rows, const std::string& format) {
    std::ostringstream out;
    if (format == "nested") {
        out << title << ":\n";
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows.size() > 1) out << "  entry " << r << ":\n";
            const std::string pad = rows.size() > 1 ? "    " : "  ";
            for (size_t c = 0; c < header.size(); ++c) {
                out << pad << header[c] << " = " << rows[r][c] << "\n";
            }
        }
        return out.str();
    }
    for (size_t c = 0; c < header.size(); ++c) {
        out << header[c] << (c + 1 < header.size() ? "," : "\n");
    }
    for (const Row& row : rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            out << row[c] << (c + 1 < row.size() ? "," : "\n");
        }
    }
    return out.str();
}

Row trajectory_header() {
    return {"round", "stage", "atom", "outcome", "probability", "click"};
}

std::vector<Row> trajectory_rows(const TrajectoryRecord& record) {
    std::vector<Row> rows;
    int index = 1;
    for (const RoundEntry& e : record.rounds) {
        rows.push_back({std::to_string(index++), to_string(e.stage),
                        std::string(1, e.atom_kind), to_string(e.outcome),
                        format_double(e.probability), e.click ? "1" : "0"});
    }
    return rows;
}

Row stats_header(bool with_param) {
    Row h;
    if (with_param) {
        h.push_back("param");
        h.push_back("value");
    }
    for (const char* c : {"trials", "censored", "mean_atoms", "mean_time",
                          "rate_within_coherence", "se_rate", "mean_fidelity",
                          "se_fidelity", "feasible", "tau_coeh"}) {
        h.push_back(c);
    }
    return h;
}

Row stats_row(const TrialStats& s, const std::string& param_name) {
    Row r;
    if (!param_name.empty()) {
        r.push_back(param_name);
        r.push_back(format_double(s.param_value));
    }
    r.push_back(std::to_string(s.trials));
    r.push_back(std::to_string(s.censored));
    r.push_back(format_double(s.mean_atoms));
    r.push_back(format_double(s.mean_time));
    r.push_back(format_double(s.rate_within_coherence));
    r.push_back(format_double(s.se_rate));
    r.push_back(format_double(s.mean_fidelity));
    r.push_back(format_double(s.se_fidelity));
    r.push_back(s.feasible_analytic ? "1" : "0");
    r.push_back(format_double(s.tau_coeh));
    return r;
}

void emit(const std::string& document, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << document;
    } else {
        std::ofstream out(out_path);
        if (!out) throw ConfigError("cannot write to '" + out_path + "'");
        out << document;
    }
}

std::vector<Outcome> parse_forced(const std::string& list) {
    std::vector<Outcome> plan;
    std::istringstream in(list);
    std::string token;
    while (std::getline(in, token, ',')) {
        if (token == "click" || token == "e") plan.push_back(Outcome::click_e);
        else if (token == "noclick" || token == "x") plan.push_back(Outcome::no_click);
        else throw ConfigError("unknown forced outcome '" + token +
                               "' (use click or noclick)");
    }
    return plan;
}

int cmd_bell_prep(const CommonOpts& opts, const std::string& forced_list) {
    ProtocolConfig config = resolve_config(opts);
    std::ostringstream doc;
    doc << echo_config(config) << "\n";
    const std::vector<Outcome> forced = parse_forced(forced_list);
    if (opts.trials == 1) {
        Protocol protocol(config, 0);
        TrajectoryRecord record;
        Ensemble state = protocol.bell_prep_until_success(record, forced);
        doc << render_table("rounds", trajectory_header(), trajectory_rows(record),
                            opts.format)
            << "\n";
        std::vector<Row> fid_rows;
        for (const char* which : {"phi+", "psi+", "phi-", "psi-"}) {
            fid_rows.push_back(
                {which, format_double(fidelity(state, protocol.bell_target(which)))});
        }
        doc << render_table("bell_fidelities", {"state", "fidelity"}, fid_rows,
                            opts.format)
            << "\n";
        doc << render_table("summary", {"atoms_used", "elapsed_time"},
                            {{std::to_string(record.atoms_used),
                              format_double(record.atoms_used / config.flux)}},
                            opts.format);
    } else {
        if (!forced.empty()) {
            throw ConfigError("--force-outcomes requires --trials 1");
        }
        RunResult run = run_trials(config, static_cast<int>(opts.trials),
                                   TrialKind::bell_only);
        doc << render_table("bell_stats", stats_header(false),
                            {stats_row(run.stats, "")}, opts.format);
    }
    emit(doc.str(), opts.out_path);
    return 0;
}

int cmd_prepare_target(const CommonOpts& opts, const std::string& outcome_str) {
    ProtocolConfig config = resolve_config(opts);
    std::optional<Outcome> forced;
    if (outcome_str == "e") forced = Outcome::click_e;
    else if (outcome_str == "g") forced = Outcome::click_g;
    else if (!outcome_str.empty()) {
        throw ConfigError("unknown outcome '" + outcome_str + "' (use e or g)");
    }
    Protocol protocol(config, 0);
    TargetPrepResult result = protocol.target_state_prep(forced);

    // Self-check: the returned field against Y1|E3> + Y2|O3> renormalized.
    const FockCutoff cut = config.cutoff();
    Vector ideal = result.coeffs.y1 * even_cat(config.alpha, cut).amplitudes +
                   result.coeffs.y2 * odd_cat(config.alpha, cut).amplitudes;
    ideal /= ideal.norm();
    const double self_fidelity = std::norm(ideal.dot(result.c3_state.amplitudes));

    std::ostringstream doc;
    doc << echo_config(config) << "\n";
    doc << render_table("target_prep",
                        {"outcome", "probability", "y1", "y2", "fidelity_to_cat_form"},
                        {{to_string(result.outcome), format_double(result.probability),
                          format_complex(result.coeffs.y1),
                          format_complex(result.coeffs.y2),
                          format_double(self_fidelity)}},
                        opts.format);
    emit(doc.str(), opts.out_path);
    return 0;
}

int cmd_teleport(const CommonOpts& opts, const std::string& decoherence) {
    ProtocolConfig config = resolve_config(opts);
    if (decoherence == "on") config.decoherence = true;
    else if (decoherence == "off") config.decoherence = false;
    else if (!decoherence.empty()) {
        throw ConfigError("--decoherence expects on or off");
    }
    std::ostringstream doc;
    doc << echo_config(config) << "\n";
    if (opts.trials == 1) {
        Protocol protocol(config, 0);
        TeleportResult result = protocol.teleport_full();
        const TrajectoryRecord& r = result.record;
        doc << render_table("rounds", trajectory_header(), trajectory_rows(r),
                            opts.format)
            << "\n";
        doc << render_table(
            "summary",
            {"atoms_used", "elapsed_time", "final_fidelity", "succeeded",
             "succeeded_within_coherence", "censored", "tau_coeh"},
            {{std::to_string(r.atoms_used), format_double(r.elapsed_time),
              format_double(r.final_fidelity), r.succeeded ? "1" : "0",
              r.succeeded_within_coherence ? "1" : "0", r.censored ? "1" : "0",
              format_double(config.tau_coeh())}},
            opts.format);
    } else {
        RunResult run = run_trials(config, static_cast<int>(opts.trials),
                                   TrialKind::full);
        doc << render_table("teleport_stats", stats_header(false),
                            {stats_row(run.stats, "")}, opts.format);
    }
    emit(doc.str(), opts.out_path);
    return 0;
}

int cmd_sweep(const CommonOpts& opts, const std::string& param,
              const std::string& grid_str) {
    ProtocolConfig config = resolve_config(opts);
    SweepSpec spec;
    spec.parameter = param;
    spec.base = config;
    spec.trials_per_point = static_cast<int>(opts.trials);
    std::istringstream in(grid_str);
    std::string token;
    while (std::getline(in, token, ',')) {
        try {
            size_t pos = 0;
            spec.grid.push_back(std::stod(token, &pos));
            if (pos != token.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("invalid grid value '" + token + "'");
        }
    }
    StatsTable table = sweep(spec);
    std::vector<Row> rows;
    for (const TrialStats& s : table) rows.push_back(stats_row(s, spec.parameter));
    std::ostringstream doc;
    doc << echo_config(config) << "\n";
    doc << render_table("sweep", stats_header(true), rows, opts.format);
    emit(doc.str(), opts.out_path);
    return 0;
}

int cmd_feasibility(const CommonOpts& opts) {
    ProtocolConfig config = resolve_config(opts);
    const TimingReport report = timing_budget(config);
    std::ostringstream doc;
    doc << echo_config(config) << "\n";
    doc << render_table(
        "feasibility",
        {"tau_coeh", "window_atoms", "p_bell", "p_target", "p_entangle", "p_b",
         "expected_atoms_bell", "expected_atoms_target", "expected_atoms_entangle",
         "expected_atoms_b", "expected_atoms", "expected_time", "feasible",
         "required_tau_cav"},
        {{format_double(report.tau_coeh), format_double(report.window_atoms),
          format_double(report.p_bell), format_double(report.p_target),
          format_double(report.p_entangle), format_double(report.p_b),
          format_double(report.expected_atoms_bell),
          format_double(report.expected_atoms_target),
          format_double(report.expected_atoms_entangle),
          format_double(report.expected_atoms_b),
          format_double(report.expected_atoms), format_double(report.expected_time),
          report.feasible ? "1" : "0",
          format_double(report.required_tau_cav_for())}},
        opts.format);
    emit(doc.str(), opts.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-cavity field-state teleportation simulator"};
    app.require_subcommand(1);

    CommonOpts bell_opts, target_opts, teleport_opts, sweep_opts, feas_opts;
    std::string forced_list, target_outcome, decoherence, sweep_param, sweep_grid;

    CLI::App* bell = app.add_subcommand("bell-prep", "run the Bell preparation stage");
    add_common(bell, &bell_opts);
    bell->add_option("--force-outcomes", forced_list,
                     "comma list of click/noclick forced per round");

    CLI::App* target = app.add_subcommand("prepare-target",
                                          "prepare the state to teleport in C3");
    add_common(target, &target_opts, false);
    target->add_option("--outcome", target_outcome, "force the readout: e | g");

    CLI::App* teleport = app.add_subcommand("teleport", "run the full protocol");
    add_common(teleport, &teleport_opts);
    teleport->add_option("--decoherence", decoherence,
                         "override cavity damping: on | off");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep one parameter");
    add_common(sweep_cmd, &sweep_opts);
    sweep_cmd->add_option("--param", sweep_param, "parameter name")->required();
    sweep_cmd->add_option("--grid", sweep_grid, "comma list of values")->required();

    CLI::App* feas = app.add_subcommand("feasibility", "analytic timing budget");
    add_common(feas, &feas_opts, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (bell->parsed()) return cmd_bell_prep(bell_opts, forced_list);
        if (target->parsed()) return cmd_prepare_target(target_opts, target_outcome);
        if (teleport->parsed()) return cmd_teleport(teleport_opts, decoherence);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_opts, sweep_param, sweep_grid);
        if (feas->parsed()) return cmd_feasibility(feas_opts);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ImpossibleOutcomeError& e) {
        std::cerr << "impossible outcome: " << e.what() << "\n";
        return 3;
    } catch (const RoundCapError& e) {
        std::cerr << "round cap exceeded: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
