#ifndef CQED_HILBERT_HPP
#define CQED_HILBERT_HPP

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cqed/fock.hpp"
#include "cqed/types.hpp"

namespace cqed {

struct Subsystem {
    std::string label;
    int dim;
};

// Ordered list of labeled registers.  The joint index follows Kronecker
// convention: the first subsystem is the most significant digit.
class SubsystemLayout {
  public:
    static constexpr long kDefaultMaxDim = 1L << 14;

    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<Subsystem> parts,
                             long max_total_dim = kDefaultMaxDim);

    int size() const { return static_cast<int>(parts_.size()); }
    long total_dim() const { return total_dim_; }
    const Subsystem& part(int axis) const { return parts_[axis]; }
    const std::vector<Subsystem>& parts() const { return parts_; }

    int axis_of(std::string_view label) const;  // throws LayoutError if absent
    bool has(std::string_view label) const;
    int dim_of(std::string_view label) const;

    // Axes for the given labels, in the order the labels are listed.
    std::vector<int> axes_of(std::span<const std::string> labels) const;

    // Derived layout keeping only the given axes (in layout order).
    SubsystemLayout keeping(const std::vector<int>& axes) const;

    // Derived layout with one subsystem's dimension changed.
    SubsystemLayout resized(std::string_view label, int new_dim) const;

    // Derived layout with a subsystem appended at the end.
    SubsystemLayout appended(Subsystem extra) const;

    // Index stride of each axis (last axis has stride 1).
    const std::vector<long>& strides() const { return strides_; }

    bool operator==(const SubsystemLayout& other) const;

  private:
    std::vector<Subsystem> parts_;
    std::vector<long> strides_;
    long total_dim_ = 0;
    long max_total_dim_ = kDefaultMaxDim;
};

struct PureState {
    Vector amplitudes;
    SubsystemLayout layout;

    double norm_sq() const { return amplitudes.squaredNorm(); }
};

// Dense density operator.  Physical instances are Hermitian to 1e-10, have
// unit trace to 1e-8 and smallest eigenvalue >= -1e-8.
struct DensityMatrix {
    Matrix data;
    SubsystemLayout layout;

    double trace() const { return data.trace().real(); }
};

// Offsets of every joint index combination of `axes` (first axis slowest),
// relative to zero on the remaining axes.
std::vector<long> axis_offsets(const SubsystemLayout& layout,
                               const std::vector<int>& axes);

// Single-subsystem pure state.
PureState single_state(std::string_view label, Vector amplitudes,
                       long max_total_dim = SubsystemLayout::kDefaultMaxDim);
PureState single_state(std::string_view label, const FieldState& field,
                       long max_total_dim = SubsystemLayout::kDefaultMaxDim);

// Kronecker product in listing order.
PureState tensor(std::span<const PureState> factors,
                 long max_total_dim = SubsystemLayout::kDefaultMaxDim);
PureState tensor(std::initializer_list<PureState> factors,
                 long max_total_dim = SubsystemLayout::kDefaultMaxDim);

DensityMatrix density(const PureState& psi);

// Apply a local operator to `targets` of a joint vector, identity elsewhere.
// `op` acts on the Kronecker product of the target subsystems in the order
// the targets are listed; targets need not be adjacent in the layout.
Vector apply_local(const Vector& in, const Matrix& op,
                   const std::vector<int>& target_axes,
                   const SubsystemLayout& layout);

PureState apply_unitary(const PureState& psi, const Matrix& u,
                        std::span<const std::string> targets);
DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u,
                            std::span<const std::string> targets);

// Kraus channel sum_k K rho K^dag on the target subsystems.
DensityMatrix apply_channel(const DensityMatrix& rho,
                            std::span<const Matrix> kraus,
                            std::span<const std::string> targets);

// Reduced density matrix over `keep` (result in layout order).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep);

inline constexpr double kDefaultEpsProb = 1e-12;

struct ProjectionResult {
    DensityMatrix state;  // renormalized post-measurement state
    double probability;
};

// Born probability of the local projector without forming the state.
double outcome_probability(const DensityMatrix& rho, const Matrix& projector,
                           std::span<const std::string> targets);

// Projective measurement update.  Throws ImpossibleOutcomeError when the
// outcome probability is <= eps_prob.
ProjectionResult project(const DensityMatrix& rho, const Matrix& projector,
                         std::span<const std::string> targets,
                         double eps_prob = kDefaultEpsProb);

// Pure-state measurement update; same contract as project().
struct PureProjectionResult {
    PureState state;
    double probability;
};
double outcome_probability(const PureState& psi, const Matrix& projector,
                           std::span<const std::string> targets);
PureProjectionResult project(const PureState& psi, const Matrix& projector,
                             std::span<const std::string> targets,
                             double eps_prob = kDefaultEpsProb);

// <target| rho |target>.
double fidelity(const DensityMatrix& rho, const PureState& target);
// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

// (1/2) ||rho - sigma||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tr(rho^2).
double purity(const DensityMatrix& rho);

// Largest deviation from Hermiticity, max |rho - rho^dag|.
double hermiticity_defect(const DensityMatrix& rho);

// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const DensityMatrix& rho);

}  // namespace cqed

#endif  // CQED_HILBERT_HPP
