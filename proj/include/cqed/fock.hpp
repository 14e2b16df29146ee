#ifndef CQED_FOCK_HPP
#define CQED_FOCK_HPP

#include <cstdlib>

#include "cqed/types.hpp"

namespace cqed {

// Truncated single-mode Fock basis {|0>, ..., |n_max - 1>}.
//
// The cutoff rule n_max >= |beta|^2 + 6|beta| + 10 keeps the Poisson tail of
// every coherent amplitude |beta| handled below 1e-9 in squared norm.
struct FockCutoff {
    int n_max;

    explicit FockCutoff(int n) : n_max(n) {
        if (n_max < 2) throw TruncationError("FockCutoff: n_max must be >= 2");
    }

    // Smallest cutoff satisfying the tail rule for amplitude magnitude |beta|.
    static FockCutoff for_amplitude(double beta_mag);

    // True if this cutoff satisfies the tail rule for |beta|.
    bool admits(double beta_mag) const;

    bool operator==(const FockCutoff&) const = default;
};

// Single-mode field state over a truncated Fock basis.  Constructors keep the
// squared norm within [1 - 1e-9, 1]; the deficit is truncation leakage.
struct FieldState {
    Vector amplitudes;
    FockCutoff cutoff;

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm_sq() const { return amplitudes.squaredNorm(); }
};

// |alpha>: amplitudes[n] = exp(-|alpha|^2/2) alpha^n / sqrt(n!).
FieldState coherent_state(Complex alpha, FockCutoff cutoff);

// |0> = coherent_state(0).
FieldState vacuum_state(FockCutoff cutoff);

// (|alpha> + |-alpha>) / sqrt(N+), N+- = 2(1 +- exp(-2|alpha|^2)).
// Supported on even photon numbers only.
FieldState even_cat(Complex alpha, FockCutoff cutoff);

// (|alpha> - |-alpha>) / sqrt(N-).  Odd support; rejects alpha = 0 (N- = 0).
FieldState odd_cat(Complex alpha, FockCutoff cutoff);

// Normalization constants N+- = 2(1 +- exp(-2|alpha|^2)).
double cat_norm_even(Complex alpha);
double cat_norm_odd(Complex alpha);

// <m| a |n> = sqrt(n) delta_{m,n-1}.
Matrix annihilation_matrix(FockCutoff cutoff);

// exp(beta a^dag - beta^* a).  Unitary to ~1e-8 on rows n <= n_max - 6|beta|.
Matrix displacement_matrix(Complex beta, FockCutoff cutoff);

// diag(exp(i phi n)): the photon-number phase accumulated in a dispersive
// atom-field transit.
Matrix number_phase_matrix(double phi, FockCutoff cutoff);

double mean_photon_number(const FieldState& state);

// <a|b> on a shared cutoff.
Complex field_overlap(const FieldState& a, const FieldState& b);

}  // namespace cqed

#endif  // CQED_FOCK_HPP
