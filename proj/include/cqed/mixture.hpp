#ifndef CQED_MIXTURE_HPP
#define CQED_MIXTURE_HPP

#include <span>
#include <string>
#include <vector>

#include "cqed/hilbert.hpp"
#include "cqed/types.hpp"

namespace cqed {

// Classical mixture of pure branches sharing one layout:
//   rho = sum_i weight_i |branch_i><branch_i|,  branches unit-norm.
//
// The protocol's mixed states after failed detections have rank bounded by a
// few dozen, so this factored form carries registers whose dense density
// matrix would not fit in memory.  All operations below are exact up to the
// stated compression tolerance.
struct Ensemble {
    SubsystemLayout layout;
    std::vector<double> weights;
    std::vector<Vector> branches;

    int rank() const { return static_cast<int>(branches.size()); }
    double trace() const;

    static Ensemble pure(const PureState& psi);
};

// Eigenvalue floor (relative to the trace) below which compress() drops a
// branch direction.
inline constexpr double kCompressTol = 1e-14;

Ensemble apply_unitary(const Ensemble& mix, const Matrix& u,
                       std::span<const std::string> targets);

// Tensor a fresh subsystem onto every branch (appended last in the layout).
Ensemble attach_subsystem(const Ensemble& mix, const Subsystem& sub,
                          const Vector& state);

// Discard subsystems: each branch splits over the computational basis of the
// traced labels, which reproduces the partial trace exactly.
Ensemble trace_out(const Ensemble& mix, std::span<const std::string> labels);

// Zero-pad one subsystem to a larger dimension.
Ensemble resize_subsystem(const Ensemble& mix, std::string_view label, int new_dim);

// Re-extract an orthogonal branch decomposition of minimal rank.  A nonzero
// max_rank keeps only the heaviest directions.
Ensemble compress(const Ensemble& mix, double rel_tol = kCompressTol,
                  int max_rank = 0);

double outcome_probability(const Ensemble& mix, const Matrix& projector,
                           std::span<const std::string> targets);

struct EnsembleProjectionResult {
    Ensemble state;
    double probability;
};

EnsembleProjectionResult project(const Ensemble& mix, const Matrix& projector,
                                 std::span<const std::string> targets,
                                 double eps_prob = kDefaultEpsProb);

// Reduced density matrix over `keep` (dense; keep must be small).
DensityMatrix partial_trace_dense(const Ensemble& mix,
                                  std::span<const std::string> keep);

double fidelity(const Ensemble& mix, const PureState& target);
double purity(const Ensemble& mix);

// Exact trace distance computed in the joint span of both branch sets.
double trace_distance(const Ensemble& a, const Ensemble& b);

// Dense conversions (small total dimension only).
DensityMatrix to_density(const Ensemble& mix, long max_dense_dim = 4096);
Ensemble from_density(const DensityMatrix& rho, double rel_tol = kCompressTol);

}  // namespace cqed

#endif  // CQED_MIXTURE_HPP
