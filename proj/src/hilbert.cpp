#include "cqed/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cqed {

namespace {

constexpr double kProjectorTol = 1e-10;

std::vector<int> complement_axes(const SubsystemLayout& layout,
                                 const std::vector<int>& axes) {
    std::vector<bool> used(layout.size(), false);
    for (int a : axes) used[a] = true;
    std::vector<int> rest;
    for (int a = 0; a < layout.size(); ++a) {
        if (!used[a]) rest.push_back(a);
    }
    return rest;
}

long product_dim(const SubsystemLayout& layout, const std::vector<int>& axes) {
    long d = 1;
    for (int a : axes) d *= layout.part(a).dim;
    return d;
}

void check_targets(const SubsystemLayout& layout, const std::vector<int>& axes,
                   const Matrix& op, const char* what) {
    if (axes.empty()) throw LayoutError(std::string(what) + ": no targets");
    std::set<int> unique(axes.begin(), axes.end());
    if (unique.size() != axes.size()) {
        throw LayoutError(std::string(what) + ": repeated target label");
    }
    const long m = product_dim(layout, axes);
    if (op.rows() != m || op.cols() != m) {
        throw LayoutError(std::string(what) + ": operator is " +
                          std::to_string(op.rows()) + "x" +
                          std::to_string(op.cols()) + " but targets span dim " +
                          std::to_string(m));
    }
}

void check_projector(const Matrix& p, const char* what) {
    const double herm = (p - p.adjoint()).cwiseAbs().maxCoeff();
    const double idem = (p * p - p).cwiseAbs().maxCoeff();
    if (herm > kProjectorTol || idem > kProjectorTol) {
        throw std::invalid_argument(std::string(what) +
                                    ": matrix is not a projector");
    }
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<Subsystem> parts, long max_total_dim)
    : parts_(std::move(parts)), max_total_dim_(max_total_dim) {
    if (parts_.empty()) throw LayoutError("SubsystemLayout: empty");
    std::set<std::string> seen;
    total_dim_ = 1;
    for (const auto& p : parts_) {
        if (p.dim < 2) {
            throw LayoutError("SubsystemLayout: dim of '" + p.label + "' must be >= 2");
        }
        if (!seen.insert(p.label).second) {
            throw LayoutError("SubsystemLayout: duplicate label '" + p.label + "'");
        }
        if (total_dim_ > max_total_dim_ / p.dim) {
            throw LayoutError("SubsystemLayout: total dimension exceeds bound " +
                              std::to_string(max_total_dim_));
        }
        total_dim_ *= p.dim;
    }
    strides_.assign(parts_.size(), 1);
    for (int a = static_cast<int>(parts_.size()) - 2; a >= 0; --a) {
        strides_[a] = strides_[a + 1] * parts_[a + 1].dim;
    }
}

int SubsystemLayout::axis_of(std::string_view label) const {
    for (int a = 0; a < size(); ++a) {
        if (parts_[a].label == label) return a;
    }
    throw LayoutError("SubsystemLayout: unknown label '" + std::string(label) + "'");
}

bool SubsystemLayout::has(std::string_view label) const {
    return std::any_of(parts_.begin(), parts_.end(),
                       [&](const Subsystem& p) { return p.label == label; });
}

int SubsystemLayout::dim_of(std::string_view label) const {
    return parts_[axis_of(label)].dim;
}

std::vector<int> SubsystemLayout::axes_of(std::span<const std::string> labels) const {
    std::vector<int> axes;
    axes.reserve(labels.size());
    for (const auto& l : labels) axes.push_back(axis_of(l));
    return axes;
}

SubsystemLayout SubsystemLayout::keeping(const std::vector<int>& axes) const {
    std::vector<Subsystem> kept;
    for (int a : axes) kept.push_back(parts_[a]);
    return SubsystemLayout(std::move(kept), max_total_dim_);
}

SubsystemLayout SubsystemLayout::resized(std::string_view label, int new_dim) const {
    std::vector<Subsystem> parts = parts_;
    parts[axis_of(label)].dim = new_dim;
    return SubsystemLayout(std::move(parts), max_total_dim_);
}

SubsystemLayout SubsystemLayout::appended(Subsystem extra) const {
    std::vector<Subsystem> parts = parts_;
    parts.push_back(std::move(extra));
    return SubsystemLayout(std::move(parts), max_total_dim_);
}

bool SubsystemLayout::operator==(const SubsystemLayout& other) const {
    if (size() != other.size()) return false;
    for (int a = 0; a < size(); ++a) {
        if (parts_[a].label != other.parts_[a].label ||
            parts_[a].dim != other.parts_[a].dim) {
            return false;
        }
    }
    return true;
}

std::vector<long> axis_offsets(const SubsystemLayout& layout,
                               const std::vector<int>& axes) {
    std::vector<long> offsets{0};
    for (int axis : axes) {
        const int dim = layout.part(axis).dim;
        const long stride = layout.strides()[axis];
        std::vector<long> next;
        next.reserve(offsets.size() * dim);
        for (long base : offsets) {
            for (int i = 0; i < dim; ++i) next.push_back(base + i * stride);
        }
        offsets = std::move(next);
    }
    return offsets;
}

PureState single_state(std::string_view label, Vector amplitudes, long max_total_dim) {
    SubsystemLayout layout(
        {Subsystem{std::string(label), static_cast<int>(amplitudes.size())}},
        max_total_dim);
    return PureState{std::move(amplitudes), std::move(layout)};
}

PureState single_state(std::string_view label, const FieldState& field,
                       long max_total_dim) {
    return single_state(label, field.amplitudes, max_total_dim);
}

PureState tensor(std::span<const PureState> factors, long max_total_dim) {
    if (factors.empty()) throw LayoutError("tensor: no factors");
    std::vector<Subsystem> parts;
    Vector amps = factors[0].amplitudes;
    parts = factors[0].layout.parts();
    for (size_t f = 1; f < factors.size(); ++f) {
        const Vector& b = factors[f].amplitudes;
        Vector out(amps.size() * b.size());
        for (long i = 0; i < amps.size(); ++i) {
            out.segment(i * b.size(), b.size()) = amps(i) * b;
        }
        amps = std::move(out);
        for (const auto& p : factors[f].layout.parts()) parts.push_back(p);
    }
    SubsystemLayout layout(std::move(parts), max_total_dim);
    return PureState{std::move(amps), std::move(layout)};
}

PureState tensor(std::initializer_list<PureState> factors, long max_total_dim) {
    return tensor(std::span<const PureState>(factors.begin(), factors.size()),
                  max_total_dim);
}

DensityMatrix density(const PureState& psi) {
    return DensityMatrix{psi.amplitudes * psi.amplitudes.adjoint(), psi.layout};
}

Vector apply_local(const Vector& in, const Matrix& op,
                   const std::vector<int>& target_axes,
                   const SubsystemLayout& layout) {
    const std::vector<long> toff = axis_offsets(layout, target_axes);
    const std::vector<long> ooff =
        axis_offsets(layout, complement_axes(layout, target_axes));
    const long m = static_cast<long>(toff.size());
    Vector out(in.size());

    // The transit gates are diagonal or band-sparse; skipping their exact
    // zeros beats the dense mat-vec by the fill factor.
    struct Entry {
        long row, col;
        Complex value;
    };
    std::vector<Entry> entries;
    entries.reserve(4 * m);
    for (long r = 0; r < m; ++r) {
        for (long col = 0; col < m; ++col) {
            if (op(r, col) != 0.0) entries.push_back({r, col, op(r, col)});
        }
    }
    if (entries.size() * 4 < static_cast<size_t>(m) * m) {
        for (long base : ooff) {
            for (long k = 0; k < m; ++k) out(base + toff[k]) = 0.0;
            for (const Entry& e : entries) {
                out(base + toff[e.row]) += e.value * in(base + toff[e.col]);
            }
        }
        return out;
    }

    Vector x(m), y(m);
    for (long base : ooff) {
        for (long k = 0; k < m; ++k) x(k) = in(base + toff[k]);
        y.noalias() = op * x;
        for (long k = 0; k < m; ++k) out(base + toff[k]) = y(k);
    }
    return out;
}

PureState apply_unitary(const PureState& psi, const Matrix& u,
                        std::span<const std::string> targets) {
    const auto axes = psi.layout.axes_of(targets);
    check_targets(psi.layout, axes, u, "apply_unitary");
    return PureState{apply_local(psi.amplitudes, u, axes, psi.layout), psi.layout};
}

namespace {

// op_embedded * rho, column by column.
Matrix apply_left(const Matrix& rho, const Matrix& op,
                  const std::vector<int>& axes, const SubsystemLayout& layout) {
    Matrix out(rho.rows(), rho.cols());
    for (long j = 0; j < rho.cols(); ++j) {
        out.col(j) = apply_local(rho.col(j), op, axes, layout);
    }
    return out;
}

// op_embedded * rho * op_embedded^dag.
Matrix conjugate_by(const Matrix& rho, const Matrix& op,
                    const std::vector<int>& axes, const SubsystemLayout& layout) {
    const Matrix half = apply_left(rho, op, axes, layout);
    return apply_left(half.adjoint(), op, axes, layout).adjoint();
}

}  // namespace

DensityMatrix apply_unitary(const DensityMatrix& rho, const Matrix& u,
                            std::span<const std::string> targets) {
    const auto axes = rho.layout.axes_of(targets);
    check_targets(rho.layout, axes, u, "apply_unitary");
    return DensityMatrix{conjugate_by(rho.data, u, axes, rho.layout), rho.layout};
}

DensityMatrix apply_channel(const DensityMatrix& rho,
                            std::span<const Matrix> kraus,
                            std::span<const std::string> targets) {
    const auto axes = rho.layout.axes_of(targets);
    if (kraus.empty()) throw std::invalid_argument("apply_channel: empty Kraus set");
    Matrix out = Matrix::Zero(rho.data.rows(), rho.data.cols());
    for (const Matrix& k : kraus) {
        check_targets(rho.layout, axes, k, "apply_channel");
        out += conjugate_by(rho.data, k, axes, rho.layout);
    }
    return DensityMatrix{std::move(out), rho.layout};
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const std::string> keep) {
    if (keep.empty()) throw LayoutError("partial_trace: empty keep set");
    // Keep axes in layout order so labels stay stable across the protocol.
    std::vector<int> keep_axes = rho.layout.axes_of(keep);
    std::sort(keep_axes.begin(), keep_axes.end());
    const std::vector<int> traced = complement_axes(rho.layout, keep_axes);
    if (traced.empty()) return rho;

    const std::vector<long> koff = axis_offsets(rho.layout, keep_axes);
    const std::vector<long> toff = axis_offsets(rho.layout, traced);
    const long dk = static_cast<long>(koff.size());
    Matrix out = Matrix::Zero(dk, dk);
    for (long i = 0; i < dk; ++i) {
        for (long j = 0; j < dk; ++j) {
            Complex sum = 0.0;
            for (long t : toff) sum += rho.data(koff[i] + t, koff[j] + t);
            out(i, j) = sum;
        }
    }
    return DensityMatrix{std::move(out), rho.layout.keeping(keep_axes)};
}

double outcome_probability(const DensityMatrix& rho, const Matrix& projector,
                           std::span<const std::string> targets) {
    const auto axes = rho.layout.axes_of(targets);
    check_targets(rho.layout, axes, projector, "project");
    const std::vector<long> toff = axis_offsets(rho.layout, axes);
    const std::vector<long> ooff =
        axis_offsets(rho.layout, complement_axes(rho.layout, axes));
    const long m = static_cast<long>(toff.size());
    // Tr(P rho) with P embedded as identity off the targets.
    Complex tr = 0.0;
    for (long base : ooff) {
        for (long k = 0; k < m; ++k) {
            for (long l = 0; l < m; ++l) {
                if (projector(k, l) != 0.0) {
                    tr += projector(k, l) * rho.data(base + toff[l], base + toff[k]);
                }
            }
        }
    }
    return tr.real();
}

ProjectionResult project(const DensityMatrix& rho, const Matrix& projector,
                         std::span<const std::string> targets, double eps_prob) {
    check_projector(projector, "project");
    const double prob = outcome_probability(rho, projector, targets);
    if (prob <= eps_prob) {
        throw ImpossibleOutcomeError("project: outcome probability " +
                                     std::to_string(prob) + " below eps_prob");
    }
    const auto axes = rho.layout.axes_of(targets);
    Matrix post = conjugate_by(rho.data, projector, axes, rho.layout);
    post /= prob;
    return ProjectionResult{DensityMatrix{std::move(post), rho.layout}, prob};
}

double outcome_probability(const PureState& psi, const Matrix& projector,
                           std::span<const std::string> targets) {
    const auto axes = psi.layout.axes_of(targets);
    check_targets(psi.layout, axes, projector, "project");
    return apply_local(psi.amplitudes, projector, axes, psi.layout).squaredNorm();
}

PureProjectionResult project(const PureState& psi, const Matrix& projector,
                             std::span<const std::string> targets,
                             double eps_prob) {
    check_projector(projector, "project");
    const auto axes = psi.layout.axes_of(targets);
    check_targets(psi.layout, axes, projector, "project");
    Vector post = apply_local(psi.amplitudes, projector, axes, psi.layout);
    const double prob = post.squaredNorm();
    if (prob <= eps_prob) {
        throw ImpossibleOutcomeError("project: outcome probability " +
                                     std::to_string(prob) + " below eps_prob");
    }
    post /= std::sqrt(prob);
    return PureProjectionResult{PureState{std::move(post), psi.layout}, prob};
}

double fidelity(const DensityMatrix& rho, const PureState& target) {
    if (!(rho.layout == target.layout)) {
        throw LayoutError("fidelity: layout mismatch");
    }
    const double f = (target.amplitudes.adjoint() * rho.data * target.amplitudes)(0).real();
    return std::clamp(f, 0.0, 1.0);
}

double fidelity(const PureState& a, const PureState& b) {
    if (!(a.layout == b.layout)) throw LayoutError("fidelity: layout mismatch");
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (!(rho.layout == sigma.layout)) {
        throw LayoutError("trace_distance: layout mismatch");
    }
    const Matrix delta = rho.data - sigma.data;
    Eigen::SelfAdjointEigenSolver<Matrix> es(delta, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) { return rho.data.squaredNorm(); }

double hermiticity_defect(const DensityMatrix& rho) {
    return (rho.data - rho.data.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.data, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

}  // namespace cqed
