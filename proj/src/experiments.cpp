#include "cqed/experiments.hpp"

#include <cmath>

namespace cqed {

namespace {

// Sample mean and standard error (std / sqrt(n)).
std::pair<double, double> mean_se(const std::vector<double>& xs) {
    if (xs.empty()) return {0.0, 0.0};
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    if (xs.size() < 2) return {mean, 0.0};
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size() - 1);
    return {mean, std::sqrt(var / static_cast<double>(xs.size()))};
}

TrajectoryRecord run_bell_only(const ProtocolConfig& config, std::uint64_t trial) {
    Protocol protocol(config, trial);
    TrajectoryRecord record;
    try {
        Ensemble state = protocol.bell_prep_until_success(record);
        record.succeeded = true;
        record.final_fidelity = fidelity(state, protocol.bell_target("phi+"));
    } catch (const RoundCapError&) {
        record.censored = true;
    }
    record.elapsed_time = record.atoms_used / config.flux;
    record.succeeded_within_coherence =
        record.succeeded && record.elapsed_time < config.tau_coeh();
    return record;
}

}  // namespace

TrialStats aggregate(const ProtocolConfig& config,
                     const std::vector<TrajectoryRecord>& records) {
    TrialStats stats;
    stats.trials = static_cast<int>(records.size());
    std::vector<double> atoms, times, within, fidelities;
    for (const TrajectoryRecord& r : records) {
        if (r.censored) {
            ++stats.censored;
        } else if (r.final_fidelity >= 0.0) {
            fidelities.push_back(r.final_fidelity);
        }
        atoms.push_back(static_cast<double>(r.atoms_used));
        times.push_back(r.elapsed_time);
        within.push_back(r.succeeded_within_coherence ? 1.0 : 0.0);
    }
    stats.mean_atoms = mean_se(atoms).first;
    stats.mean_time = mean_se(times).first;
    const auto [rate, se_rate] = mean_se(within);
    stats.rate_within_coherence = rate;
    stats.se_rate = se_rate;
    const auto [fid, se_fid] = mean_se(fidelities);
    stats.mean_fidelity = fid;
    stats.se_fidelity = se_fid;
    const TimingReport report = timing_budget(config);
    stats.feasible_analytic = report.feasible;
    stats.tau_coeh = report.tau_coeh;
    return stats;
}

RunResult run_trials(const ProtocolConfig& config, int n_trials, TrialKind kind) {
    if (n_trials < 1) throw ConfigError("run_trials: need at least one trial");
    config.validate();
    RunResult result;
    result.records.reserve(n_trials);
    for (int t = 0; t < n_trials; ++t) {
        if (kind == TrialKind::bell_only) {
            result.records.push_back(run_bell_only(config, t));
        } else {
            Protocol protocol(config, t);
            result.records.push_back(protocol.teleport_full().record);
        }
    }
    result.stats = aggregate(config, result.records);
    return result;
}

ProtocolConfig with_parameter(ProtocolConfig base, const std::string& name,
                              double value) {
    if (name == "alpha") base.alpha = Complex(value, 0.0);
    else if (name == "eta_a") base.eta_a = value;
    else if (name == "eta_b") base.eta_b = value;
    else if (name == "flux") base.flux = value;
    else if (name == "tau_cav") base.tau_cav = value;
    else if (name == "gt") base.gt = value;
    else if (name == "theta") base.theta = value;
    else throw ConfigError("parameter '" + name + "' is not sweepable");
    return base;
}

StatsTable sweep(const SweepSpec& spec) {
    if (spec.grid.empty()) throw ConfigError("sweep: empty grid");
    if (spec.trials_per_point < 1) throw ConfigError("sweep: trials must be >= 1");
    StatsTable table;
    table.reserve(spec.grid.size());
    for (double value : spec.grid) {
        const ProtocolConfig config = with_parameter(spec.base, spec.parameter, value);
        RunResult run = run_trials(config, spec.trials_per_point, spec.kind);
        run.stats.param_value = value;
        table.push_back(run.stats);
    }
    return table;
}

}  // namespace cqed
