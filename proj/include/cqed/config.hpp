#ifndef CQED_CONFIG_HPP
#define CQED_CONFIG_HPP

#include <string>

#include "cqed/protocol.hpp"

namespace cqed {

// Complex literals in config files and documents: "2", "-0.5", "1+2i",
// "0.5-0.5i", "3i", "i".
Complex parse_complex(const std::string& text);
std::string format_complex(Complex z);

// Round-trip-exact decimal form (17 significant digits).
std::string format_double(double x);

// Flat key = value configuration.  Keys mirror the protocol parameters:
//   alpha, n_max, kappa_eh, delta_eh, tau_int, kappa_eg, delta_eg, gt, theta,
//   c_e, c_g, eta_a, eta_b, flux, tau_cav, decoherence (on|off), seed,
//   round_cap, eps_prob
// '#' starts a comment; unspecified keys take the defaults baked into
// ProtocolConfig; unknown keys are rejected by name.
ProtocolConfig parse_config_text(const std::string& text);
ProtocolConfig load_config_file(const std::string& path);

// Canonical echo of every key at full precision; parsing it back reproduces
// the configuration bit for bit.
std::string echo_config(const ProtocolConfig& config);

// The leading key = value block of a result document (up to the first blank
// line): the configuration echo that every command emits.
std::string extract_echoed_config(const std::string& document);

}  // namespace cqed

#endif  // CQED_CONFIG_HPP
