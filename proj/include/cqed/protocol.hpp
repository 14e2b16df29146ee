#ifndef CQED_PROTOCOL_HPP
#define CQED_PROTOCOL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "cqed/gates.hpp"
#include "cqed/mixture.hpp"
#include "cqed/types.hpp"

namespace cqed {

// Register labels used throughout the protocol.
inline const std::string kC1 = "C1";
inline const std::string kC2 = "C2";
inline const std::string kC3 = "C3";
inline const std::string kAtomA = "A";
inline const std::string kAtomB2 = "B2";
inline const std::string kAtomB3 = "B3";

enum class Stage { bell_prep, target_prep, entangle, b_round };

enum class Outcome {
    click_e,   // A-type detector fired on |e>
    click_g,   // ideal |g> projection; reachable only by forcing
    no_click,  // A-type failure: atom traced out
    both_a,    // both B detectors fired on |a>
    fail,      // B-round failure: both atoms traced out
};

const char* to_string(Stage stage);
const char* to_string(Outcome outcome);

struct RoundEntry {
    Stage stage;
    char atom_kind;      // 'A' or 'B' ('B' rows stand for the simultaneous pair)
    int atoms;           // atoms consumed by the round
    Outcome outcome;
    double probability;  // Born x detector-efficiency probability of `outcome`
    bool click;
};

struct TrajectoryRecord {
    std::vector<RoundEntry> rounds;
    long atoms_used = 0;
    double elapsed_time = 0.0;  // atoms_used / flux
    double final_fidelity = -1.0;
    bool succeeded = false;
    bool succeeded_within_coherence = false;
    bool censored = false;  // a stage hit the round cap
};

// Amplitudes of the state riding on the even/odd cat basis.
struct TargetCoeffs {
    Complex y1;
    Complex y2;
};

struct ProtocolConfig {
    Complex alpha{2.0, 0.0};
    int n_max = 0;  // 0: cutoff rule for |alpha|
    DispersiveParams dispersive{};
    double gt = 0.0;     // 0: pi / (2 sqrt(ceil(|2 alpha|^2) + 1))
    double theta = 0.0;  // R3 phase
    Complex c_e{1.0, 0.0};
    Complex c_g{0.0, 0.0};
    double eta_a = 0.5;
    double eta_b = 0.5;
    double flux = 2500.0;   // atoms / s
    double tau_cav = 0.1;   // s
    bool decoherence = false;
    std::uint64_t seed = 42;
    long round_cap = 100000;
    double eps_prob = kDefaultEpsProb;

    double tau_coeh() const;  // tau_cav / (2 |alpha|^2)
    FockCutoff cutoff() const;
    FockCutoff injected_cutoff() const;  // covers |2 alpha| after injection
    double resolved_gt() const;
    void validate() const;  // throws ConfigError
};

// Deterministic per-trajectory random stream.
class TrialRng {
  public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);
    double uniform();  // [0, 1), identical across platforms for a given seed

  private:
    std::mt19937_64 eng_;
};

struct RoundResult {
    Ensemble state;
    Outcome outcome;
    double probability;
};

struct TargetPrepResult {
    FieldState c3_state;
    TargetCoeffs coeffs;
    Outcome outcome;
    double probability;
};

// Forced outcomes per stage; empty vectors mean "sample everything".
struct ForcedPlan {
    std::vector<Outcome> bell;
    std::optional<Outcome> target;
    std::vector<Outcome> entangle;
    std::vector<Outcome> b;
};

struct TeleportResult {
    TrajectoryRecord record;
    Ensemble final_state;  // C1 C2 C3 register at termination
    TargetCoeffs coeffs{};
    PureState target;  // Y1|E1> + Y2|O1> over C1
};

// One protocol trajectory: owns the derived gates and the random stream.
// All stage methods are deterministic given outcomes; sampling happens only
// where an outcome is not forced.
class Protocol {
  public:
    explicit Protocol(const ProtocolConfig& config, std::uint64_t trial_index = 0);

    const ProtocolConfig& config() const { return config_; }

    // |-alpha>_1 (x) |c2_sign * alpha>_2.
    Ensemble initial_bell_state(int c2_sign = -1) const;

    // Bell-basis targets over C1 C2: "phi+", "phi-", "psi+", "psi-".
    PureState bell_target(const std::string& which) const;

    // Y1|E1> + Y2|O1> over C1 at the pre-injection cutoff.
    PureState phi1_target(const TargetCoeffs& coeffs) const;

    RoundResult bell_prep_round(const Ensemble& rho,
                                std::optional<Outcome> forced = std::nullopt);
    Ensemble bell_prep_until_success(TrajectoryRecord& record,
                                     std::span<const Outcome> forced = {});

    TargetPrepResult target_state_prep(std::optional<Outcome> forced = std::nullopt);

    RoundResult entangle_round(const Ensemble& rho,
                               std::optional<Outcome> forced = std::nullopt);
    Ensemble entangle_until_success(Ensemble state, TrajectoryRecord& record,
                                    std::span<const Outcome> forced = {});

    // Displace C2 and C3 by alpha (the antenna injection), padding their
    // cutoffs to cover |2 alpha| first.
    Ensemble inject_fields(const Ensemble& rho) const;

    RoundResult b_round(const Ensemble& rho,
                        std::optional<Outcome> forced = std::nullopt);
    Ensemble b_rounds_until_success(Ensemble state, TrajectoryRecord& record,
                                    std::span<const Outcome> forced = {});

    TeleportResult teleport_full(const ForcedPlan& plan = {});

    // Dense wrappers matching the density-matrix contracts; usable while the
    // register is small enough for dense storage.
    std::tuple<DensityMatrix, Outcome, double> bell_prep_round(
        const DensityMatrix& rho, std::optional<Outcome> forced = std::nullopt);
    std::tuple<DensityMatrix, Outcome, double> entangle_round(
        const DensityMatrix& rho, std::optional<Outcome> forced = std::nullopt);
    DensityMatrix inject_fields(const DensityMatrix& rho) const;
    std::tuple<DensityMatrix, Outcome, double> b_round(
        const DensityMatrix& rho, std::optional<Outcome> forced = std::nullopt);

    TrialRng& rng() { return rng_; }

  private:
    enum class ARoundKind { bell, entangle };
    struct ARoundBranches {
        double p_e;
        Ensemble success;  // conditioned on |e>
        Ensemble fail;     // atom traced out
    };
    ARoundBranches a_round_branches(const Ensemble& rho, ARoundKind kind);
    RoundResult a_round(const Ensemble& rho, ARoundKind kind,
                        std::optional<Outcome> forced);
    Ensemble until_click(Ensemble state, Stage stage, ARoundKind kind,
                         TrajectoryRecord& record, std::span<const Outcome> forced);
    void apply_decay_slot(Ensemble& state, int atoms);
    const Matrix& disp_for_dim(int dim);
    const Matrix& jc_for_dim(int dim);
    const std::vector<Matrix>& damping_for_dim(int dim);
    void record_round(TrajectoryRecord& record, Stage stage, char kind, int atoms,
                      Outcome outcome, double probability);

    ProtocolConfig config_;
    TrialRng rng_;
    Matrix r1_;
    Matrix proj_e_;
    Matrix proj_g_;
    Matrix proj_aa_;
    std::map<int, Matrix> disp_cache_;
    std::map<int, Matrix> jc_cache_;
    std::map<int, std::vector<Matrix>> damping_cache_;
};

struct TimingReport {
    double alpha_sq;
    double tau_coeh;
    double window_atoms;  // atom slots inside the coherence window
    double p_bell;        // per-round success probabilities, efficiency included
    double p_target;
    double p_entangle;
    double p_b;
    double expected_atoms_bell;
    double expected_atoms_target;
    double expected_atoms_entangle;
    double expected_atoms_b;
    double expected_atoms;
    double expected_time;
    bool feasible;  // expected_time < tau_coeh

    double required_tau_cav_for(double headroom = 1.0) const;
};

// Analytic expectation of the atom/time budget; no Monte Carlo.
TimingReport timing_budget(const ProtocolConfig& config);

// P(|a> click) weight of a resonant probe on |amp_mag * e^{i...}>:
// sum_n |C_{n+1}|^2 sin^2(gt sqrt(n+1)) with C_n the coherent Poisson weights.
double jc_click_weight(double amp_mag, double gt);

}  // namespace cqed

#endif  // CQED_PROTOCOL_HPP
