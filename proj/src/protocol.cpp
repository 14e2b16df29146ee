#include "cqed/protocol.hpp"

#include <algorithm>
#include <cmath>

#include "cqed/hilbert.hpp"

namespace cqed {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Protocol registers can exceed the default dense-storage bound; branches are
// stored as vectors, so only the vector length has to fit.
constexpr long kProtocolDimBound = 1L << 24;

// A failed round that reproduces its input state within this trace distance
// is treated as the stage's fixed point and not recomputed.
constexpr double kFixedPointTol = 1e-12;

// Branch bookkeeping for the protocol's mixtures: eigen-directions below
// kBranchTol of the trace are dropped after every round, and long failure
// streaks are capped at kMaxBranches directions (heaviest kept).  The weight
// spectrum after k failed probe rounds decays geometrically; the mass beyond
// rank 64 measures ~1e-8, several orders below every tolerance asserted on
// protocol states, and forced test paths stay well under the cap.
constexpr double kBranchTol = 1e-12;
constexpr int kMaxBranches = 64;

Ensemble tidy(Ensemble mix) {
    const double trace_in = mix.trace();
    Ensemble out = compress(mix, kBranchTol, kMaxBranches);
    // Renormalize away the dropped tail so downstream Born probabilities stay
    // normalized.
    const double trace_out = out.trace();
    if (trace_out > 0.0 && trace_in > 0.0) {
        const double fix = trace_in / trace_out;
        for (double& w : out.weights) w *= fix;
    }
    return out;
}

}  // namespace

const char* to_string(Stage stage) {
    switch (stage) {
        case Stage::bell_prep: return "bell";
        case Stage::target_prep: return "target";
        case Stage::entangle: return "entangle";
        case Stage::b_round: return "b_round";
    }
    return "?";
}

const char* to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::click_e: return "click_e";
        case Outcome::click_g: return "click_g";
        case Outcome::no_click: return "no_click";
        case Outcome::both_a: return "both_a";
        case Outcome::fail: return "fail";
    }
    return "?";
}

double ProtocolConfig::tau_coeh() const {
    return tau_cav / (2.0 * std::norm(alpha));
}

FockCutoff ProtocolConfig::cutoff() const {
    if (n_max == 0) return FockCutoff::for_amplitude(std::abs(alpha));
    return FockCutoff(n_max);
}

FockCutoff ProtocolConfig::injected_cutoff() const {
    const int rule = FockCutoff::for_amplitude(2.0 * std::abs(alpha)).n_max;
    return FockCutoff(std::max(rule, cutoff().n_max));
}

double ProtocolConfig::resolved_gt() const {
    if (gt > 0.0) return gt;
    const double mean = std::ceil(std::norm(2.0 * alpha));
    return kPi / (2.0 * std::sqrt(mean + 1.0));
}

void ProtocolConfig::validate() const {
    if (!(std::abs(alpha) > 0.0)) throw ConfigError("alpha must be nonzero");
    if (n_max != 0 && !FockCutoff(n_max).admits(std::abs(alpha))) {
        throw ConfigError("n_max too small for alpha (needs >= " +
                          std::to_string(FockCutoff::for_amplitude(std::abs(alpha)).n_max) +
                          ")");
    }
    if (eta_a < 0.0 || eta_a > 1.0) throw ConfigError("eta_a must lie in [0, 1]");
    if (eta_b < 0.0 || eta_b > 1.0) throw ConfigError("eta_b must lie in [0, 1]");
    if (!(flux > 0.0)) throw ConfigError("flux must be positive");
    if (!(tau_cav > 0.0)) throw ConfigError("tau_cav must be positive");
    if (gt < 0.0) throw ConfigError("gt must be >= 0");
    const double norm = std::norm(c_e) + std::norm(c_g);
    if (std::abs(norm - 1.0) > 1e-9) {
        throw ConfigError("target coefficients need |c_e|^2 + |c_g|^2 = 1");
    }
    if (round_cap < 1) throw ConfigError("round_cap must be >= 1");
    if (!(eps_prob > 0.0)) throw ConfigError("eps_prob must be positive");
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial & 0xffffffffu),
                      static_cast<std::uint32_t>(trial >> 32)};
    eng_.seed(seq);
}

double TrialRng::uniform() {
    // 53-bit mantissa draw; identical on every platform for a given stream.
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

Protocol::Protocol(const ProtocolConfig& config, std::uint64_t trial_index)
    : config_(config), rng_(config.seed, trial_index) {
    config_.validate();
    r1_ = ramsey_r1();
    proj_e_ = proj_upper();
    proj_g_ = proj_lower();
    proj_aa_ = Matrix::Zero(4, 4);
    proj_aa_(0, 0) = 1.0;  // |a a><a a| in the (a,b) x (a,b) basis
}

const Matrix& Protocol::disp_for_dim(int dim) {
    auto it = disp_cache_.find(dim);
    if (it == disp_cache_.end()) {
        it = disp_cache_.emplace(dim, dispersive_gate(config_.dispersive, FockCutoff(dim))).first;
    }
    return it->second;
}

const Matrix& Protocol::jc_for_dim(int dim) {
    auto it = jc_cache_.find(dim);
    if (it == jc_cache_.end()) {
        JCParams params{1.0, config_.resolved_gt()};
        it = jc_cache_.emplace(dim, jc_gate(params, FockCutoff(dim))).first;
    }
    return it->second;
}

const std::vector<Matrix>& Protocol::damping_for_dim(int dim) {
    auto it = damping_cache_.find(dim);
    if (it == damping_cache_.end()) {
        const double kappa = 1.0 / config_.tau_cav;
        it = damping_cache_.emplace(dim, damping_channel(kappa, 1.0 / config_.flux,
                                                         FockCutoff(dim))).first;
    }
    return it->second;
}

Ensemble Protocol::initial_bell_state(int c2_sign) const {
    const FockCutoff cut = config_.cutoff();
    const Complex a = config_.alpha;
    const PureState psi = tensor(
        {single_state(kC1, coherent_state(-a, cut), kProtocolDimBound),
         single_state(kC2, coherent_state(static_cast<double>(c2_sign) * a, cut),
                      kProtocolDimBound)},
        kProtocolDimBound);
    return Ensemble::pure(psi);
}

PureState Protocol::bell_target(const std::string& which) const {
    const FockCutoff cut = config_.cutoff();
    const Complex a = config_.alpha;
    const Vector e1 = even_cat(a, cut).amplitudes;
    const Vector o1 = odd_cat(a, cut).amplitudes;
    Vector combo;
    const auto kron2 = [](const Vector& x, const Vector& y) {
        Vector out(x.size() * y.size());
        for (long i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
        return out;
    };
    if (which == "phi+") combo = kron2(e1, e1) + kron2(o1, o1);
    else if (which == "phi-") combo = kron2(e1, e1) - kron2(o1, o1);
    else if (which == "psi+") combo = kron2(e1, o1) + kron2(o1, e1);
    else if (which == "psi-") combo = kron2(e1, o1) - kron2(o1, e1);
    else throw std::invalid_argument("bell_target: unknown state '" + which + "'");
    combo /= combo.norm();
    SubsystemLayout layout({Subsystem{kC1, cut.n_max}, Subsystem{kC2, cut.n_max}},
                           kProtocolDimBound);
    return PureState{std::move(combo), std::move(layout)};
}

PureState Protocol::phi1_target(const TargetCoeffs& coeffs) const {
    const FockCutoff cut = config_.cutoff();
    Vector v = coeffs.y1 * even_cat(config_.alpha, cut).amplitudes +
               coeffs.y2 * odd_cat(config_.alpha, cut).amplitudes;
    v /= v.norm();
    return single_state(kC1, std::move(v), kProtocolDimBound);
}

Protocol::ARoundBranches Protocol::a_round_branches(const Ensemble& rho,
                                                    ARoundKind kind) {
    const std::vector<std::string> cavities =
        (kind == ARoundKind::bell) ? std::vector<std::string>{kC1, kC2}
                                   : std::vector<std::string>{kC2, kC3};
    Ensemble s = attach_subsystem(rho, Subsystem{kAtomA, 2}, atom_plus());
    for (const auto& cavity : cavities) {
        const std::vector<std::string> targets{kAtomA, cavity};
        s = apply_unitary(s, disp_for_dim(s.layout.dim_of(cavity)), targets);
    }
    const std::vector<std::string> atom{kAtomA};
    s = apply_unitary(s, r1_, atom);

    ARoundBranches out;
    out.p_e = outcome_probability(s, proj_e_, atom);
    if (out.p_e > config_.eps_prob) {
        out.success = tidy(trace_out(project(s, proj_e_, atom, config_.eps_prob).state, atom));
    }
    out.fail = tidy(trace_out(s, atom));
    return out;
}

RoundResult Protocol::a_round(const Ensemble& rho, ARoundKind kind,
                              std::optional<Outcome> forced) {
    Ensemble s = attach_subsystem(rho, Subsystem{kAtomA, 2}, atom_plus());
    const std::vector<std::string> cavities =
        (kind == ARoundKind::bell) ? std::vector<std::string>{kC1, kC2}
                                   : std::vector<std::string>{kC2, kC3};
    for (const auto& cavity : cavities) {
        const std::vector<std::string> targets{kAtomA, cavity};
        s = apply_unitary(s, disp_for_dim(s.layout.dim_of(cavity)), targets);
    }
    const std::vector<std::string> atom{kAtomA};
    s = apply_unitary(s, r1_, atom);

    const double p_e = outcome_probability(s, proj_e_, atom);
    const double p_click = config_.eta_a * p_e;
    Outcome outcome;
    if (forced) {
        outcome = *forced;
    } else {
        outcome = (rng_.uniform() < p_click) ? Outcome::click_e : Outcome::no_click;
    }

    double prob = 0.0;
    Ensemble state;
    switch (outcome) {
        case Outcome::click_e:
            prob = p_click;
            if (prob <= config_.eps_prob) {
                throw ImpossibleOutcomeError("a_round: click_e has probability " +
                                             std::to_string(prob));
            }
            state = tidy(trace_out(project(s, proj_e_, atom, config_.eps_prob).state, atom));
            break;
        case Outcome::click_g:
            // Hypothetical ideal |g> projection; recorded with its Born weight.
            prob = 1.0 - p_e;
            if (prob <= config_.eps_prob) {
                throw ImpossibleOutcomeError("a_round: click_g has probability " +
                                             std::to_string(prob));
            }
            state = tidy(trace_out(project(s, proj_g_, atom, config_.eps_prob).state, atom));
            break;
        case Outcome::no_click:
            prob = 1.0 - p_click;
            if (prob <= config_.eps_prob) {
                throw ImpossibleOutcomeError("a_round: no_click has probability " +
                                             std::to_string(prob));
            }
            state = tidy(trace_out(s, atom));
            break;
        default:
            throw std::invalid_argument("a_round: outcome not valid for an A round");
    }
    return RoundResult{std::move(state), outcome, prob};
}

RoundResult Protocol::bell_prep_round(const Ensemble& rho,
                                      std::optional<Outcome> forced) {
    return a_round(rho, ARoundKind::bell, forced);
}

RoundResult Protocol::entangle_round(const Ensemble& rho,
                                     std::optional<Outcome> forced) {
    return a_round(rho, ARoundKind::entangle, forced);
}

void Protocol::record_round(TrajectoryRecord& record, Stage stage, char kind,
                            int atoms, Outcome outcome, double probability) {
    const bool click = (outcome == Outcome::click_e || outcome == Outcome::click_g ||
                        outcome == Outcome::both_a);
    record.rounds.push_back(RoundEntry{stage, kind, atoms, outcome, probability, click});
    record.atoms_used += atoms;
}

void Protocol::apply_decay_slot(Ensemble& state, int atoms) {
    // Exact amplitude-damping channel on every cavity, one application per
    // atom slot.  K_k^dag K_k is diagonal in the Fock basis, so the branch
    // weights follow from the photon-number marginal; only jump numbers with
    // non-negligible weight are materialized, and compress() keeps the rank
    // minimal afterwards.
    constexpr double kDecayBranchFloor = 1e-13;
    for (int rep = 0; rep < atoms; ++rep) {
        for (const auto& part : state.layout.parts()) {
            if (part.label[0] != 'C') continue;
            const std::vector<Matrix>& kraus = damping_for_dim(part.dim);
            const std::vector<std::string> target{part.label};
            const auto axes = state.layout.axes_of(target);
            const long stride = state.layout.strides()[axes[0]];
            Ensemble damped{state.layout, {}, {}};
            for (int i = 0; i < state.rank(); ++i) {
                const Vector& branch = state.branches[i];
                Eigen::VectorXd marginal = Eigen::VectorXd::Zero(part.dim);
                for (long idx = 0; idx < branch.size(); ++idx) {
                    marginal(static_cast<int>((idx / stride) % part.dim)) +=
                        std::norm(branch(idx));
                }
                for (size_t k = 0; k < kraus.size(); ++k) {
                    double p = 0.0;
                    for (int n = static_cast<int>(k); n < part.dim; ++n) {
                        p += marginal(n) * std::norm(kraus[k](n - static_cast<int>(k), n));
                    }
                    if (p <= kDecayBranchFloor) continue;
                    Vector v = apply_local(branch, kraus[k], axes, state.layout);
                    damped.weights.push_back(state.weights[i] * p);
                    damped.branches.push_back(v / std::sqrt(p));
                }
            }
            state = compress(damped);
        }
    }
}

Ensemble Protocol::until_click(Ensemble state, Stage stage, ARoundKind kind,
                               TrajectoryRecord& record,
                               std::span<const Outcome> forced) {
    bool stable = false;
    ARoundBranches branches;
    for (long round = 1; round <= config_.round_cap; ++round) {
        if (config_.decoherence) {
            apply_decay_slot(state, 1);
            stable = false;
        }
        if (!stable) {
            branches = a_round_branches(state, kind);
            if (!config_.decoherence) {
                // Failed rounds reproduce the pre-round state; once that fixed
                // point is reached the branches need not be recomputed.
                stable = trace_distance(branches.fail, state) < kFixedPointTol;
            }
        }
        const double p_click = config_.eta_a * branches.p_e;
        Outcome outcome;
        if (static_cast<size_t>(round - 1) < forced.size()) {
            outcome = forced[round - 1];
            if (outcome != Outcome::click_e && outcome != Outcome::no_click) {
                throw std::invalid_argument("until_click: forced outcome must be "
                                            "click_e or no_click");
            }
        } else {
            outcome = (rng_.uniform() < p_click) ? Outcome::click_e : Outcome::no_click;
        }
        if (outcome == Outcome::click_e) {
            if (p_click <= config_.eps_prob) {
                throw ImpossibleOutcomeError("until_click: click_e has probability " +
                                             std::to_string(p_click));
            }
            record_round(record, stage, 'A', 1, outcome, p_click);
            return branches.success;
        }
        record_round(record, stage, 'A', 1, outcome, 1.0 - p_click);
        state = branches.fail;
    }
    throw RoundCapError(std::string("until_click: no ") + to_string(stage) +
                        " success within " + std::to_string(config_.round_cap) +
                        " rounds");
}

Ensemble Protocol::bell_prep_until_success(TrajectoryRecord& record,
                                           std::span<const Outcome> forced) {
    return until_click(initial_bell_state(), Stage::bell_prep, ARoundKind::bell,
                       record, forced);
}

Ensemble Protocol::entangle_until_success(Ensemble state, TrajectoryRecord& record,
                                          std::span<const Outcome> forced) {
    return until_click(std::move(state), Stage::entangle, ARoundKind::entangle,
                       record, forced);
}

TargetPrepResult Protocol::target_state_prep(std::optional<Outcome> forced) {
    const FockCutoff cut = config_.cutoff();
    Vector atom(2);
    atom << config_.c_e, config_.c_g;
    PureState psi = tensor({single_state(kAtomA, atom, kProtocolDimBound),
                            single_state(kC3, coherent_state(-config_.alpha, cut),
                                         kProtocolDimBound)},
                           kProtocolDimBound);
    const std::vector<std::string> pair{kAtomA, kC3};
    const std::vector<std::string> atom_only{kAtomA};
    psi = apply_unitary(psi, disp_for_dim(cut.n_max), pair);
    psi = apply_unitary(psi, ramsey_r3(RamseyParams{config_.theta}), atom_only);

    const double p_e = outcome_probability(psi, proj_e_, atom_only);
    Outcome outcome;
    if (forced) {
        if (*forced != Outcome::click_e && *forced != Outcome::click_g) {
            throw std::invalid_argument("target_state_prep: outcome must be "
                                        "click_e or click_g");
        }
        outcome = *forced;
    } else {
        // The preparation arm reads out both levels; either result leaves a
        // known state in C3.
        outcome = (rng_.uniform() < p_e) ? Outcome::click_e : Outcome::click_g;
    }
    const double prob = (outcome == Outcome::click_e) ? p_e : 1.0 - p_e;
    if (prob <= config_.eps_prob) {
        throw ImpossibleOutcomeError("target_state_prep: outcome probability " +
                                     std::to_string(prob));
    }
    const Matrix& proj = (outcome == Outcome::click_e) ? proj_e_ : proj_g_;
    const PureState post = project(psi, proj, atom_only, config_.eps_prob).state;

    // Post-measurement state is |e or g> (x) field: read the field slice off
    // the measured atom row.
    const int row = (outcome == Outcome::click_e) ? 0 : 1;
    Vector field = post.amplitudes.segment(static_cast<long>(row) * cut.n_max,
                                           cut.n_max);
    field /= field.norm();

    const Complex i = kI;
    const Complex phase = std::exp(i * config_.theta);
    TargetCoeffs coeffs;
    const double s = std::sqrt(2.0);
    if (outcome == Outcome::click_e) {
        coeffs.y1 = (config_.c_e - i * phase * config_.c_g) / s;
        coeffs.y2 = (config_.c_e + i * phase * config_.c_g) / s;
    } else {
        const Complex conj_phase = std::exp(-i * config_.theta);
        coeffs.y1 = (-i * conj_phase * config_.c_e + config_.c_g) / s;
        coeffs.y2 = (-i * conj_phase * config_.c_e - config_.c_g) / s;
    }
    return TargetPrepResult{FieldState{std::move(field), cut}, coeffs, outcome, prob};
}

Ensemble Protocol::inject_fields(const Ensemble& rho) const {
    const int injected = config_.injected_cutoff().n_max;
    Ensemble state = rho;
    for (const auto& label : {kC2, kC3}) {
        if (state.layout.dim_of(label) < injected) {
            state = resize_subsystem(state, label, injected);
        }
        const Matrix d = displacement_matrix(config_.alpha,
                                             FockCutoff(state.layout.dim_of(label)));
        const std::vector<std::string> target{label};
        state = apply_unitary(state, d, target);
    }
    return state;
}

RoundResult Protocol::b_round(const Ensemble& rho, std::optional<Outcome> forced) {
    Ensemble s = attach_subsystem(rho, Subsystem{kAtomB2, 2}, atom_b());
    s = attach_subsystem(s, Subsystem{kAtomB3, 2}, atom_b());
    {
        const std::vector<std::string> t2{kAtomB2, kC2};
        s = apply_unitary(s, jc_for_dim(s.layout.dim_of(kC2)), t2);
        const std::vector<std::string> t3{kAtomB3, kC3};
        s = apply_unitary(s, jc_for_dim(s.layout.dim_of(kC3)), t3);
    }
    const std::vector<std::string> pair{kAtomB2, kAtomB3};
    const double p_aa = outcome_probability(s, proj_aa_, pair);
    const double p_click = config_.eta_b * config_.eta_b * p_aa;

    Outcome outcome;
    if (forced) {
        if (*forced != Outcome::both_a && *forced != Outcome::fail) {
            throw std::invalid_argument("b_round: outcome must be both_a or fail");
        }
        outcome = *forced;
    } else {
        outcome = (rng_.uniform() < p_click) ? Outcome::both_a : Outcome::fail;
    }

    double prob;
    Ensemble state;
    if (outcome == Outcome::both_a) {
        prob = p_click;
        if (prob <= config_.eps_prob) {
            throw ImpossibleOutcomeError("b_round: both_a has probability " +
                                         std::to_string(prob));
        }
        state = tidy(trace_out(project(s, proj_aa_, pair, config_.eps_prob).state, pair));
    } else {
        prob = 1.0 - p_click;
        if (prob <= config_.eps_prob) {
            throw ImpossibleOutcomeError("b_round: fail has probability " +
                                         std::to_string(prob));
        }
        state = tidy(trace_out(s, pair));
    }
    return RoundResult{std::move(state), outcome, prob};
}

Ensemble Protocol::b_rounds_until_success(Ensemble state, TrajectoryRecord& record,
                                          std::span<const Outcome> forced) {
    for (long round = 1; round <= config_.round_cap; ++round) {
        if (config_.decoherence) apply_decay_slot(state, 2);
        std::optional<Outcome> forced_now;
        if (static_cast<size_t>(round - 1) < forced.size()) {
            forced_now = forced[round - 1];
        }
        RoundResult result = b_round(state, forced_now);
        record_round(record, Stage::b_round, 'B', 2, result.outcome, result.probability);
        state = std::move(result.state);
        if (result.outcome == Outcome::both_a) return state;
    }
    throw RoundCapError("b_rounds_until_success: no joint click within " +
                        std::to_string(config_.round_cap) + " rounds");
}

TeleportResult Protocol::teleport_full(const ForcedPlan& plan) {
    TeleportResult result;
    TrajectoryRecord& record = result.record;
    try {
        Ensemble bell = bell_prep_until_success(record, plan.bell);

        TargetPrepResult prep = target_state_prep(plan.target);
        result.coeffs = prep.coeffs;
        record_round(record, Stage::target_prep, 'A', 1, prep.outcome, prep.probability);

        Ensemble state = attach_subsystem(
            bell, Subsystem{kC3, prep.c3_state.dim()}, prep.c3_state.amplitudes);
        state = entangle_until_success(std::move(state), record, plan.entangle);
        state = inject_fields(state);
        state = b_rounds_until_success(std::move(state), record, plan.b);

        record.succeeded = true;
        result.final_state = std::move(state);
    } catch (const RoundCapError&) {
        record.censored = true;
    }
    record.elapsed_time = record.atoms_used / config_.flux;
    record.succeeded_within_coherence =
        record.succeeded && record.elapsed_time < config_.tau_coeh();
    if (record.succeeded) {
        result.target = phi1_target(result.coeffs);
        const std::vector<std::string> keep{kC1};
        record.final_fidelity =
            fidelity(partial_trace_dense(result.final_state, keep), result.target);
    }
    return result;
}

std::tuple<DensityMatrix, Outcome, double> Protocol::bell_prep_round(
    const DensityMatrix& rho, std::optional<Outcome> forced) {
    RoundResult r = bell_prep_round(from_density(rho), forced);
    return {to_density(r.state, rho.layout.total_dim()), r.outcome, r.probability};
}

std::tuple<DensityMatrix, Outcome, double> Protocol::entangle_round(
    const DensityMatrix& rho, std::optional<Outcome> forced) {
    RoundResult r = entangle_round(from_density(rho), forced);
    return {to_density(r.state, rho.layout.total_dim()), r.outcome, r.probability};
}

DensityMatrix Protocol::inject_fields(const DensityMatrix& rho) const {
    Ensemble injected = inject_fields(from_density(rho));
    return to_density(injected, injected.layout.total_dim());
}

std::tuple<DensityMatrix, Outcome, double> Protocol::b_round(
    const DensityMatrix& rho, std::optional<Outcome> forced) {
    RoundResult r = b_round(from_density(rho), forced);
    return {to_density(r.state, rho.layout.total_dim()), r.outcome, r.probability};
}

double jc_click_weight(double amp_mag, double gt) {
    const double lambda = amp_mag * amp_mag;
    if (lambda == 0.0) return 0.0;
    double weight = std::exp(-lambda);  // Poisson(0)
    double sum = 0.0;
    const int n_stop = static_cast<int>(lambda + 20.0 * std::sqrt(lambda) + 60.0);
    for (int n = 1; n <= n_stop; ++n) {
        weight *= lambda / n;
        const double s = std::sin(gt * std::sqrt(static_cast<double>(n)));
        sum += weight * s * s;
    }
    return sum;
}

double TimingReport::required_tau_cav_for(double headroom) const {
    return 2.0 * alpha_sq * expected_time * headroom;
}

TimingReport timing_budget(const ProtocolConfig& config) {
    config.validate();
    TimingReport report;
    report.alpha_sq = std::norm(config.alpha);
    report.tau_coeh = config.tau_coeh();
    report.window_atoms = report.tau_coeh * config.flux;

    // Per-round success probabilities from the protocol algebra: the Ramsey
    // branches are equal-weight for both A stages, and the joint B click
    // carries the |a>-series weight of each injected cavity.
    report.p_bell = config.eta_a * 0.5;
    report.p_target = 1.0;
    report.p_entangle = config.eta_a * 0.5;
    const double s = jc_click_weight(2.0 * std::abs(config.alpha), config.resolved_gt());
    report.p_b = config.eta_b * config.eta_b * s * s / 4.0;

    report.expected_atoms_bell = 1.0 / report.p_bell;
    report.expected_atoms_target = 1.0;
    report.expected_atoms_entangle = 1.0 / report.p_entangle;
    report.expected_atoms_b = 2.0 / report.p_b;
    report.expected_atoms = report.expected_atoms_bell + report.expected_atoms_target +
                            report.expected_atoms_entangle + report.expected_atoms_b;
    report.expected_time = report.expected_atoms / config.flux;
    report.feasible = report.expected_time < report.tau_coeh;
    return report;
}

}  // namespace cqed
