#include "cqed/fock.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace cqed {

namespace {

constexpr double kNormTol = 1e-9;

void check_norm(const FieldState& state, const char* what) {
    const double n2 = state.norm_sq();
    if (n2 < 1.0 - kNormTol || n2 > 1.0 + kNormTol) {
        throw TruncationError(std::string(what) +
                              ": cutoff too small, truncation leakage " +
                              std::to_string(1.0 - n2));
    }
}

}  // namespace

FockCutoff FockCutoff::for_amplitude(double beta_mag) {
    const double b = std::abs(beta_mag);
    return FockCutoff(static_cast<int>(std::ceil(b * b + 6.0 * b + 10.0)));
}

bool FockCutoff::admits(double beta_mag) const {
    const double b = std::abs(beta_mag);
    return n_max >= b * b + 6.0 * b + 10.0;
}

FieldState coherent_state(Complex alpha, FockCutoff cutoff) {
    if (!cutoff.admits(std::abs(alpha))) {
        throw TruncationError("coherent_state: cutoff " +
                              std::to_string(cutoff.n_max) +
                              " too small for |alpha| = " +
                              std::to_string(std::abs(alpha)));
    }
    Vector amps(cutoff.n_max);
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < cutoff.n_max; ++n) {
        amps(n) = amps(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    }
    FieldState state{std::move(amps), cutoff};
    check_norm(state, "coherent_state");
    return state;
}

FieldState vacuum_state(FockCutoff cutoff) {
    Vector amps = Vector::Zero(cutoff.n_max);
    amps(0) = 1.0;
    return FieldState{std::move(amps), cutoff};
}

double cat_norm_even(Complex alpha) {
    return 2.0 * (1.0 + std::exp(-2.0 * std::norm(alpha)));
}

double cat_norm_odd(Complex alpha) {
    // -2 expm1(-2|a|^2) = 2(1 - exp(-2|a|^2)) without cancellation at small alpha.
    return -2.0 * std::expm1(-2.0 * std::norm(alpha));
}

FieldState even_cat(Complex alpha, FockCutoff cutoff) {
    const FieldState plus = coherent_state(alpha, cutoff);
    const FieldState minus = coherent_state(-alpha, cutoff);
    // The odd entries of plus and minus are exact negations, so the sum
    // vanishes on odd n exactly.
    Vector amps = (plus.amplitudes + minus.amplitudes) / std::sqrt(cat_norm_even(alpha));
    FieldState state{std::move(amps), cutoff};
    check_norm(state, "even_cat");
    return state;
}

FieldState odd_cat(Complex alpha, FockCutoff cutoff) {
    const double n_minus = cat_norm_odd(alpha);
    if (n_minus <= 0.0) {
        throw std::invalid_argument("odd_cat: alpha = 0 gives the zero vector");
    }
    const FieldState plus = coherent_state(alpha, cutoff);
    const FieldState minus = coherent_state(-alpha, cutoff);
    Vector amps = (plus.amplitudes - minus.amplitudes) / std::sqrt(n_minus);
    FieldState state{std::move(amps), cutoff};
    check_norm(state, "odd_cat");
    return state;
}

Matrix annihilation_matrix(FockCutoff cutoff) {
    Matrix a = Matrix::Zero(cutoff.n_max, cutoff.n_max);
    for (int n = 1; n < cutoff.n_max; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Matrix displacement_matrix(Complex beta, FockCutoff cutoff) {
    if (!cutoff.admits(std::abs(beta))) {
        throw TruncationError("displacement_matrix: cutoff too small for |beta| = " +
                              std::to_string(std::abs(beta)));
    }
    const Matrix a = annihilation_matrix(cutoff);
    const Matrix generator = beta * a.adjoint() - std::conj(beta) * a;
    return generator.exp();
}

Matrix number_phase_matrix(double phi, FockCutoff cutoff) {
    Matrix u = Matrix::Zero(cutoff.n_max, cutoff.n_max);
    for (int n = 0; n < cutoff.n_max; ++n) {
        u(n, n) = std::exp(kI * (phi * n));
    }
    return u;
}

double mean_photon_number(const FieldState& state) {
    double mean = 0.0;
    for (int n = 0; n < state.dim(); ++n) {
        mean += n * std::norm(state.amplitudes(n));
    }
    return mean;
}

Complex field_overlap(const FieldState& a, const FieldState& b) {
    if (a.cutoff.n_max != b.cutoff.n_max) {
        throw LayoutError("field_overlap: mismatched cutoffs");
    }
    return a.amplitudes.dot(b.amplitudes);
}

}  // namespace cqed
