#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cqed/experiments.hpp"

using namespace cqed;

namespace {

ProtocolConfig base_config(double alpha, double eta_a, double eta_b) {
    ProtocolConfig config;
    config.alpha = alpha;
    config.eta_a = eta_a;
    config.eta_b = eta_b;
    return config;
}

}  // namespace

TEST_CASE("run_trials: identical seeds give identical rows") {
    const ProtocolConfig config = base_config(1.5, 0.4, 1.0);
    const RunResult a = run_trials(config, 24, TrialKind::bell_only);
    const RunResult b = run_trials(config, 24, TrialKind::bell_only);
    CHECK(a.stats.mean_atoms == b.stats.mean_atoms);
    CHECK(a.stats.mean_fidelity == b.stats.mean_fidelity);
    CHECK(a.stats.rate_within_coherence == b.stats.rate_within_coherence);
    REQUIRE(a.records.size() == b.records.size());
    for (size_t t = 0; t < a.records.size(); ++t) {
        CHECK(a.records[t].atoms_used == b.records[t].atoms_used);
    }
}

TEST_CASE("run_trials: geometric mean atom count for the Bell stage") {
    const ProtocolConfig config = base_config(2.0, 0.1, 0.5);
    const RunResult result = run_trials(config, 1000, TrialKind::bell_only);
    CHECK(result.stats.mean_atoms == doctest::Approx(20.0).epsilon(0.10));
    CHECK(result.stats.censored == 0);
}

TEST_CASE("run_trials: generous window puts every success inside coherence") {
    ProtocolConfig config = base_config(1.5, 1.0, 1.0);
    config.tau_cav = 50.0;  // window far beyond the needed atom count
    const RunResult result = run_trials(config, 12, TrialKind::full);
    CHECK(result.stats.rate_within_coherence == doctest::Approx(1.0));
    CHECK(result.stats.mean_fidelity >= 1.0 - 10.0 * std::exp(-2.0 * 1.5 * 1.5));
}

TEST_CASE("run_trials: empirical click rate tracks the recorded probabilities") {
    const ProtocolConfig config = base_config(1.5, 0.3, 0.5);
    const RunResult result = run_trials(config, 1500, TrialKind::bell_only);
    double clicks = 0.0, prob_sum = 0.0, rounds = 0.0;
    for (const TrajectoryRecord& record : result.records) {
        for (const RoundEntry& entry : record.rounds) {
            rounds += 1.0;
            clicks += entry.click ? 1.0 : 0.0;
            prob_sum += entry.click ? entry.probability : 1.0 - entry.probability;
        }
    }
    const double freq = clicks / rounds;
    const double expect = prob_sum / rounds;
    const double se = std::sqrt(expect * (1.0 - expect) / rounds);
    CHECK(std::abs(freq - expect) < 5.0 * se);
}

TEST_CASE("aggregate: order independent and censor-aware") {
    const ProtocolConfig config = base_config(1.5, 0.5, 0.5);
    RunResult result = run_trials(config, 64, TrialKind::bell_only);
    std::vector<TrajectoryRecord> shuffled = result.records;
    std::reverse(shuffled.begin(), shuffled.end());
    const TrialStats again = aggregate(config, shuffled);
    CHECK(std::abs(again.mean_atoms - result.stats.mean_atoms) < 1e-12);
    CHECK(std::abs(again.mean_fidelity - result.stats.mean_fidelity) < 1e-12);
    CHECK(std::abs(again.se_rate - result.stats.se_rate) < 1e-12);

    ProtocolConfig blind = config;
    blind.eta_a = 0.0;
    blind.round_cap = 20;
    const RunResult censored = run_trials(blind, 5, TrialKind::bell_only);
    CHECK(censored.stats.censored == 5);
    CHECK(censored.stats.rate_within_coherence == 0.0);
}

TEST_CASE("sweep: single-point grid equals run_trials") {
    SweepSpec spec;
    spec.parameter = "eta_a";
    spec.grid = {0.5};
    spec.trials_per_point = 16;
    spec.base = base_config(1.5, 0.9, 1.0);
    spec.kind = TrialKind::bell_only;
    const StatsTable table = sweep(spec);
    REQUIRE(table.size() == 1);
    const RunResult direct =
        run_trials(with_parameter(spec.base, "eta_a", 0.5), 16, TrialKind::bell_only);
    CHECK(table[0].mean_atoms == direct.stats.mean_atoms);
    CHECK(table[0].param_value == 0.5);
}

TEST_CASE("sweep: cat-overlap fidelity deficit shrinks with alpha") {
    SweepSpec spec;
    spec.parameter = "alpha";
    spec.grid = {1.0, 1.5, 2.0};
    spec.trials_per_point = 6;
    spec.base = base_config(1.0, 1.0, 1.0);
    spec.kind = TrialKind::bell_only;
    const StatsTable table = sweep(spec);
    REQUIRE(table.size() == 3);
    const double d0 = 1.0 - table[0].mean_fidelity;
    const double d1 = 1.0 - table[1].mean_fidelity;
    const double d2 = 1.0 - table[2].mean_fidelity;
    CHECK(d0 > d1);
    CHECK(d1 > d2);
}

TEST_CASE("sweep: cavity-lifetime grid flips the feasibility flag") {
    SweepSpec spec;
    spec.parameter = "tau_cav";
    spec.grid = {2e-6, 220e-6, 1e-3, 1e-1, 1.0};
    spec.trials_per_point = 1;
    spec.base = base_config(2.0, 1.0, 1.0);
    const StatsTable table = sweep(spec);
    REQUIRE(table.size() == 5);
    CHECK_FALSE(table.front().feasible_analytic);
    CHECK(table.back().feasible_analytic);
    bool flipped = false;
    for (size_t k = 1; k < table.size(); ++k) {
        flipped |= (table[k].feasible_analytic && !table[k - 1].feasible_analytic);
    }
    CHECK(flipped);
}

TEST_CASE("decoherence mode: longer runs lose fidelity") {
    ProtocolConfig config = base_config(1.5, 0.35, 0.6);
    config.decoherence = true;
    config.tau_cav = 0.05;
    const RunResult result = run_trials(config, 120, TrialKind::full);
    // Rank correlation between atoms used and final fidelity must be negative.
    std::vector<std::pair<double, double>> points;
    for (const TrajectoryRecord& r : result.records) {
        if (!r.censored && r.final_fidelity >= 0.0) {
            points.push_back({double(r.atoms_used), r.final_fidelity});
        }
    }
    REQUIRE(points.size() > 30);
    const auto rank_of = [&](auto key) {
        std::vector<double> ranks(points.size());
        std::vector<size_t> order(points.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](size_t a, size_t b) { return key(points[a]) < key(points[b]); });
        for (size_t i = 0; i < order.size(); ++i) ranks[order[i]] = double(i);
        return ranks;
    };
    const std::vector<double> ra = rank_of([](const auto& p) { return p.first; });
    const std::vector<double> rb = rank_of([](const auto& p) { return p.second; });
    const double n = double(points.size());
    double ma = 0.0, mb = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        ma += ra[i];
        mb += rb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        cov += (ra[i] - ma) * (rb[i] - mb);
        va += (ra[i] - ma) * (ra[i] - ma);
        vb += (rb[i] - mb) * (rb[i] - mb);
    }
    const double spearman = cov / std::sqrt(va * vb);
    CHECK(spearman < 0.0);
}
