#ifndef CQED_TYPES_HPP
#define CQED_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Fock cutoff too small for the coherent amplitudes in play.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad subsystem label, mismatched dimensions, or dimension bound exceeded.
struct LayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A forced measurement outcome whose Born probability is below eps_prob.
struct ImpossibleOutcomeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A retry loop hit its round cap before succeeding.
struct RoundCapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid configuration value or unknown configuration key.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cqed

#endif  // CQED_TYPES_HPP
