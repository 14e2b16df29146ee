#ifndef CQED_EXPERIMENTS_HPP
#define CQED_EXPERIMENTS_HPP

#include <string>
#include <vector>

#include "cqed/protocol.hpp"

namespace cqed {

enum class TrialKind {
    bell_only,  // Bell preparation stage alone
    full,       // complete teleportation run
};

// One statistics row over a batch of independent seeded trials.
struct TrialStats {
    double param_value = 0.0;  // sweep grid value (unused for plain runs)
    int trials = 0;
    int censored = 0;  // hit the round cap; excluded from fidelity means
    double mean_atoms = 0.0;
    double mean_time = 0.0;
    double rate_within_coherence = 0.0;
    double se_rate = 0.0;
    double mean_fidelity = 0.0;
    double se_fidelity = 0.0;
    bool feasible_analytic = false;  // from timing_budget at these parameters
    double tau_coeh = 0.0;
};

using StatsTable = std::vector<TrialStats>;

struct RunResult {
    TrialStats stats;
    std::vector<TrajectoryRecord> records;
};

// n_trials independent trajectories seeded from (config.seed, trial_index).
RunResult run_trials(const ProtocolConfig& config, int n_trials,
                     TrialKind kind = TrialKind::full);

struct SweepSpec {
    std::string parameter;  // alpha | eta_a | eta_b | flux | tau_cav | gt | theta
    std::vector<double> grid;
    int trials_per_point = 1;
    ProtocolConfig base;
    TrialKind kind = TrialKind::full;
};

// Copy of `base` with one named parameter replaced; throws ConfigError for a
// name that is not sweepable.
ProtocolConfig with_parameter(ProtocolConfig base, const std::string& name,
                              double value);

// One run_trials row per grid point, in grid order.
StatsTable sweep(const SweepSpec& spec);

// Aggregate a batch of records into a stats row (order-independent).
TrialStats aggregate(const ProtocolConfig& config,
                     const std::vector<TrajectoryRecord>& records);

}  // namespace cqed

#endif  // CQED_EXPERIMENTS_HPP
