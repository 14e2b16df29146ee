#include "cqed/gates.hpp"

#include <cmath>

namespace cqed {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

}  // namespace

double DispersiveParams::phi1() const {
    if (delta_eh == 0.0) {
        throw std::invalid_argument("DispersiveParams: delta_eh must be nonzero");
    }
    return wrap_phase(kappa_eh * kappa_eh * tau / delta_eh);
}

double DispersiveParams::phi2() const {
    if (kappa_eg == 0.0) return 0.0;
    if (delta_eg == 0.0) {
        throw std::invalid_argument("DispersiveParams: delta_eg must be nonzero");
    }
    return wrap_phase(kappa_eg * kappa_eg * tau / delta_eg);
}

Vector atom_e() {
    Vector v(2);
    v << 1.0, 0.0;
    return v;
}

Vector atom_g() {
    Vector v(2);
    v << 0.0, 1.0;
    return v;
}

Vector atom_plus() {
    Vector v(2);
    const double s = 1.0 / std::sqrt(2.0);
    v << s, s;
    return v;
}

Vector atom_minus() {
    Vector v(2);
    const double s = 1.0 / std::sqrt(2.0);
    v << s, -s;
    return v;
}

Vector atom_a() { return atom_e(); }
Vector atom_b() { return atom_g(); }

Matrix proj_upper() {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1.0;
    return p;
}

Matrix proj_lower() {
    Matrix p = Matrix::Zero(2, 2);
    p(1, 1) = 1.0;
    return p;
}

Matrix dispersive_gate(const DispersiveParams& params, FockCutoff cutoff) {
    const int n = cutoff.n_max;
    const double phi1 = params.phi1();
    const double phi2 = params.phi2();
    Matrix u = Matrix::Zero(2 * n, 2 * n);
    for (int k = 0; k < n; ++k) {
        u(k, k) = std::exp(kI * (phi1 * k));          // |e,k>
        u(n + k, n + k) = std::exp(kI * (phi2 * k));  // |g,k>
    }
    return u;
}

Matrix ramsey_r1() {
    Matrix u(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    u << s, s, s, -s;
    return u;
}

Matrix ramsey_r3(const RamseyParams& params) {
    Matrix u(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    u(0, 0) = s;
    u(0, 1) = -kI * std::exp(kI * params.theta) * s;
    u(1, 0) = -kI * std::exp(-kI * params.theta) * s;
    u(1, 1) = s;
    return u;
}

Matrix jc_gate(const JCParams& params, FockCutoff cutoff) {
    const int n_max = cutoff.n_max;
    const double gt = params.gt();
    if (gt < 0.0) throw std::invalid_argument("jc_gate: gt must be >= 0");
    Matrix u = Matrix::Zero(2 * n_max, 2 * n_max);
    const auto a_idx = [&](int n) { return n; };          // |a,n>
    const auto b_idx = [&](int n) { return n_max + n; };  // |b,n>
    u(b_idx(0), b_idx(0)) = 1.0;
    u(a_idx(n_max - 1), a_idx(n_max - 1)) = 1.0;
    for (int n = 0; n + 1 < n_max; ++n) {
        const double angle = gt * std::sqrt(static_cast<double>(n + 1));
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        u(a_idx(n), a_idx(n)) = c;
        u(b_idx(n + 1), b_idx(n + 1)) = c;
        u(b_idx(n + 1), a_idx(n)) = -kI * s;
        u(a_idx(n), b_idx(n + 1)) = -kI * s;
    }
    return u;
}

std::vector<Matrix> damping_channel(double kappa, double dt, FockCutoff cutoff) {
    if (kappa * dt < 0.0) {
        throw std::invalid_argument("damping_channel: kappa*dt must be >= 0");
    }
    const int n_max = cutoff.n_max;
    const double gamma = -std::expm1(-kappa * dt);
    if (gamma == 0.0) {
        return {Matrix::Identity(n_max, n_max)};
    }
    // K_k removes k photons: <n-k|K_k|n> = sqrt(C(n,k) (1-gamma)^(n-k) gamma^k).
    std::vector<Matrix> kraus;
    kraus.reserve(n_max);
    for (int k = 0; k < n_max; ++k) {
        Matrix op = Matrix::Zero(n_max, n_max);
        for (int n = k; n < n_max; ++n) {
            const double log_binom =
                std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
            double log_term = log_binom + k * std::log(gamma);
            if (gamma < 1.0) log_term += (n - k) * std::log1p(-gamma);
            else if (n != k) continue;  // (1-gamma)^(n-k) = 0
            op(n - k, n) = std::exp(0.5 * log_term);
        }
        kraus.push_back(std::move(op));
    }
    return kraus;
}

}  // namespace cqed
