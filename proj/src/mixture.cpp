#include "cqed/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cqed {

namespace {

// Weight below which a split branch is dropped outright (well under every
// tolerance in play; compress() handles the rest).
constexpr double kBranchFloor = 1e-28;

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

// Branch matrix with columns sqrt(w_i) |branch_i>.
Matrix branch_matrix(const Ensemble& mix) {
    Matrix m(mix.layout.total_dim(), mix.rank());
    for (int i = 0; i < mix.rank(); ++i) {
        m.col(i) = std::sqrt(mix.weights[i]) * mix.branches[i];
    }
    return m;
}

}  // namespace

double Ensemble::trace() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
}

Ensemble Ensemble::pure(const PureState& psi) {
    return Ensemble{psi.layout, {psi.norm_sq()}, {psi.amplitudes / std::sqrt(psi.norm_sq())}};
}

Ensemble apply_unitary(const Ensemble& mix, const Matrix& u,
                       std::span<const std::string> targets) {
    const auto axes = mix.layout.axes_of(targets);
    Ensemble out{mix.layout, mix.weights, {}};
    out.branches.reserve(mix.rank());
    for (const Vector& b : mix.branches) {
        out.branches.push_back(apply_local(b, u, axes, mix.layout));
    }
    return out;
}

Ensemble attach_subsystem(const Ensemble& mix, const Subsystem& sub,
                          const Vector& state) {
    if (state.size() != sub.dim) {
        throw LayoutError("attach_subsystem: state dim mismatch for '" + sub.label + "'");
    }
    Ensemble out{mix.layout.appended(sub), mix.weights, {}};
    out.branches.reserve(mix.rank());
    for (const Vector& b : mix.branches) {
        Vector v(b.size() * state.size());
        for (long i = 0; i < b.size(); ++i) {
            v.segment(i * state.size(), state.size()) = b(i) * state;
        }
        out.branches.push_back(std::move(v));
    }
    return out;
}

Ensemble trace_out(const Ensemble& mix, std::span<const std::string> labels) {
    std::vector<int> traced = mix.layout.axes_of(labels);
    std::sort(traced.begin(), traced.end());
    std::vector<int> keep = complement_axes(mix.layout, traced);
    if (keep.empty()) throw LayoutError("trace_out: nothing left to keep");

    const std::vector<long> toff = axis_offsets(mix.layout, traced);
    const std::vector<long> koff = axis_offsets(mix.layout, keep);
    const long dk = static_cast<long>(koff.size());

    Ensemble out{mix.layout.keeping(keep), {}, {}};
    for (int i = 0; i < mix.rank(); ++i) {
        const Vector& b = mix.branches[i];
        for (long t : toff) {
            Vector v(dk);
            for (long k = 0; k < dk; ++k) v(k) = b(koff[k] + t);
            const double w = v.squaredNorm();
            if (w * mix.weights[i] > kBranchFloor) {
                out.weights.push_back(mix.weights[i] * w);
                out.branches.push_back(v / std::sqrt(w));
            }
        }
    }
    return out;
}

Ensemble resize_subsystem(const Ensemble& mix, std::string_view label, int new_dim) {
    const int axis = mix.layout.axis_of(label);
    const int old_dim = mix.layout.part(axis).dim;
    if (new_dim < old_dim) {
        throw LayoutError("resize_subsystem: shrinking would discard amplitudes");
    }
    if (new_dim == old_dim) return mix;
    SubsystemLayout new_layout = mix.layout.resized(label, new_dim);
    const std::vector<int> others = complement_axes(mix.layout, {axis});
    const std::vector<long> ooff_old = axis_offsets(mix.layout, others);
    const std::vector<long> ooff_new = axis_offsets(new_layout, others);
    const long stride_old = mix.layout.strides()[axis];
    const long stride_new = new_layout.strides()[axis];

    Ensemble out{new_layout, mix.weights, {}};
    out.branches.reserve(mix.rank());
    for (const Vector& b : mix.branches) {
        Vector v = Vector::Zero(new_layout.total_dim());
        for (size_t o = 0; o < ooff_old.size(); ++o) {
            for (int n = 0; n < old_dim; ++n) {
                v(ooff_new[o] + n * stride_new) = b(ooff_old[o] + n * stride_old);
            }
        }
        out.branches.push_back(std::move(v));
    }
    return out;
}

Ensemble compress(const Ensemble& mix, double rel_tol, int max_rank) {
    if (mix.rank() <= 1) return mix;
    const Matrix m = branch_matrix(mix);
    // rho = M M^dag shares nonzero eigenpairs with the Gram matrix M^dag M:
    // for G v = lambda v, the branch M v / sqrt(lambda) has weight lambda.
    const Matrix gram = m.adjoint() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
    const double total = mix.trace();
    Ensemble out{mix.layout, {}, {}};
    // eigenvalues come out ascending; walk from the heavy end
    const int count = static_cast<int>(es.eigenvalues().size());
    for (int k = count - 1; k >= 0; --k) {
        if (max_rank > 0 && out.rank() >= max_rank) break;
        const double lambda = es.eigenvalues()(k);
        if (lambda <= rel_tol * total) break;
        out.weights.push_back(lambda);
        out.branches.push_back((m * es.eigenvectors().col(k)) / std::sqrt(lambda));
    }
    return out;
}

double outcome_probability(const Ensemble& mix, const Matrix& projector,
                           std::span<const std::string> targets) {
    const auto axes = mix.layout.axes_of(targets);
    double prob = 0.0;
    for (int i = 0; i < mix.rank(); ++i) {
        prob += mix.weights[i] *
                apply_local(mix.branches[i], projector, axes, mix.layout).squaredNorm();
    }
    return prob;
}

EnsembleProjectionResult project(const Ensemble& mix, const Matrix& projector,
                                 std::span<const std::string> targets,
                                 double eps_prob) {
    const auto axes = mix.layout.axes_of(targets);
    Ensemble post{mix.layout, {}, {}};
    double prob = 0.0;
    for (int i = 0; i < mix.rank(); ++i) {
        Vector v = apply_local(mix.branches[i], projector, axes, mix.layout);
        const double p = v.squaredNorm();
        prob += mix.weights[i] * p;
        if (mix.weights[i] * p > kBranchFloor) {
            post.weights.push_back(mix.weights[i] * p);
            post.branches.push_back(v / std::sqrt(p));
        }
    }
    if (prob <= eps_prob) {
        throw ImpossibleOutcomeError("project: outcome probability " +
                                     std::to_string(prob) + " below eps_prob");
    }
    for (double& w : post.weights) w /= prob;
    return EnsembleProjectionResult{std::move(post), prob};
}

DensityMatrix partial_trace_dense(const Ensemble& mix,
                                  std::span<const std::string> keep) {
    if (keep.empty()) throw LayoutError("partial_trace_dense: empty keep set");
    std::vector<int> keep_axes = mix.layout.axes_of(keep);
    std::sort(keep_axes.begin(), keep_axes.end());
    const std::vector<int> traced = complement_axes(mix.layout, keep_axes);
    const std::vector<long> koff = axis_offsets(mix.layout, keep_axes);
    const std::vector<long> toff = axis_offsets(mix.layout, traced);
    const long dk = static_cast<long>(koff.size());

    Matrix out = Matrix::Zero(dk, dk);
    Vector slice(dk);
    for (int i = 0; i < mix.rank(); ++i) {
        const Vector& b = mix.branches[i];
        for (long t : toff) {
            for (long k = 0; k < dk; ++k) slice(k) = b(koff[k] + t);
            out.noalias() += mix.weights[i] * (slice * slice.adjoint());
        }
    }
    return DensityMatrix{std::move(out), mix.layout.keeping(keep_axes)};
}

double fidelity(const Ensemble& mix, const PureState& target) {
    if (!(mix.layout == target.layout)) throw LayoutError("fidelity: layout mismatch");
    double f = 0.0;
    for (int i = 0; i < mix.rank(); ++i) {
        f += mix.weights[i] * std::norm(target.amplitudes.dot(mix.branches[i]));
    }
    return std::clamp(f, 0.0, 1.0);
}

double purity(const Ensemble& mix) {
    const Matrix m = branch_matrix(mix);
    return (m.adjoint() * m).squaredNorm();
}

double trace_distance(const Ensemble& a, const Ensemble& b) {
    if (!(a.layout == b.layout)) throw LayoutError("trace_distance: layout mismatch");
    const long d = a.layout.total_dim();
    const int ra = a.rank(), rb = b.rank();
    Matrix joint(d, ra + rb);
    joint.leftCols(ra) = branch_matrix(a);
    joint.rightCols(rb) = branch_matrix(b);
    // Orthonormal basis of the joint branch span; the difference operator is
    // supported there, so its spectrum is exact in that basis.
    Eigen::HouseholderQR<Matrix> qr(joint);
    const Matrix q = qr.householderQ() * Matrix::Identity(d, ra + rb);
    const Matrix qa = q.adjoint() * joint.leftCols(ra);
    const Matrix qb = q.adjoint() * joint.rightCols(rb);
    const Matrix delta = qa * qa.adjoint() - qb * qb.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(delta, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix to_density(const Ensemble& mix, long max_dense_dim) {
    const long d = mix.layout.total_dim();
    if (d > max_dense_dim) {
        throw LayoutError("to_density: dimension " + std::to_string(d) +
                          " exceeds dense limit " + std::to_string(max_dense_dim));
    }
    Matrix out = Matrix::Zero(d, d);
    for (int i = 0; i < mix.rank(); ++i) {
        out.noalias() += mix.weights[i] * (mix.branches[i] * mix.branches[i].adjoint());
    }
    return DensityMatrix{std::move(out), mix.layout};
}

Ensemble from_density(const DensityMatrix& rho, double rel_tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.data);
    const double total = rho.trace();
    Ensemble out{rho.layout, {}, {}};
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const double lambda = es.eigenvalues()(k);
        if (lambda > rel_tol * total) {
            out.weights.push_back(lambda);
            out.branches.push_back(es.eigenvectors().col(k));
        }
    }
    return out;
}

}  // namespace cqed
