#include "cqed/config.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cqed {

namespace {

std::string trim(const std::string& s) {
    size_t begin = 0, end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const double x = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const long x = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t pos = 0;
        const unsigned long long x = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return static_cast<std::uint64_t>(x);
    } catch (const std::exception&) {
        throw ConfigError("invalid value '" + value + "' for key '" + key + "'");
    }
}

bool parse_on_off(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1") return true;
    if (value == "off" || value == "false" || value == "0") return false;
    throw ConfigError("invalid value '" + value + "' for key '" + key +
                      "' (expected on or off)");
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') {
        size_t pos = 0;
        const double re = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters in '" + s + "'");
        return Complex(re, 0.0);
    }
    const std::string body = s.substr(0, s.size() - 1);
    // Split "a+b" / "a-b" at the last sign that is not part of an exponent.
    size_t split = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') &&
            body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto parse_part = [&](const std::string& part, double fallback) {
        if (part.empty() || part == "+") return fallback;
        if (part == "-") return -fallback;
        size_t pos = 0;
        const double x = std::stod(part, &pos);
        if (pos != part.size()) {
            throw std::invalid_argument("trailing characters in '" + part + "'");
        }
        return x;
    };
    if (split == std::string::npos) {
        return Complex(0.0, parse_part(body, 1.0));
    }
    const double re = parse_part(body.substr(0, split), 0.0);
    const double im = parse_part(body.substr(split), 1.0);
    return Complex(re, im);
}

std::string format_double(double x) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", x);
    return buffer;
}

std::string format_complex(Complex z) {
    if (z.imag() == 0.0) return format_double(z.real());
    char buffer[96];
    std::snprintf(buffer, sizeof(buffer), "%.17g%+.17gi", z.real(), z.imag());
    return buffer;
}

ProtocolConfig parse_config_text(const std::string& text) {
    ProtocolConfig config;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("line " + std::to_string(line_no) +
                              ": expected key = value");
        }

        if (key == "alpha") {
            try {
                config.alpha = parse_complex(value);
            } catch (const std::exception&) {
                throw ConfigError("invalid value '" + value + "' for key 'alpha'");
            }
        } else if (key == "n_max") {
            config.n_max = static_cast<int>(parse_long(key, value));
        } else if (key == "kappa_eh") {
            config.dispersive.kappa_eh = parse_double(key, value);
        } else if (key == "delta_eh") {
            config.dispersive.delta_eh = parse_double(key, value);
        } else if (key == "tau_int") {
            config.dispersive.tau = parse_double(key, value);
        } else if (key == "kappa_eg") {
            config.dispersive.kappa_eg = parse_double(key, value);
        } else if (key == "delta_eg") {
            config.dispersive.delta_eg = parse_double(key, value);
        } else if (key == "gt") {
            config.gt = parse_double(key, value);
        } else if (key == "theta") {
            config.theta = parse_double(key, value);
        } else if (key == "c_e") {
            try {
                config.c_e = parse_complex(value);
            } catch (const std::exception&) {
                throw ConfigError("invalid value '" + value + "' for key 'c_e'");
            }
        } else if (key == "c_g") {
            try {
                config.c_g = parse_complex(value);
            } catch (const std::exception&) {
                throw ConfigError("invalid value '" + value + "' for key 'c_g'");
            }
        } else if (key == "eta_a") {
            config.eta_a = parse_double(key, value);
        } else if (key == "eta_b") {
            config.eta_b = parse_double(key, value);
        } else if (key == "flux") {
            config.flux = parse_double(key, value);
        } else if (key == "tau_cav") {
            config.tau_cav = parse_double(key, value);
        } else if (key == "decoherence") {
            config.decoherence = parse_on_off(key, value);
        } else if (key == "seed") {
            config.seed = parse_u64(key, value);
        } else if (key == "round_cap") {
            config.round_cap = parse_long(key, value);
        } else if (key == "eps_prob") {
            config.eps_prob = parse_double(key, value);
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

ProtocolConfig load_config_file(const std::string& path) {
    if (path.empty()) {
        ProtocolConfig config;
        config.validate();
        return config;
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config_text(text.str());
}

std::string echo_config(const ProtocolConfig& config) {
    std::ostringstream out;
    out << "alpha = " << format_complex(config.alpha) << "\n";
    out << "n_max = " << config.n_max << "\n";
    out << "kappa_eh = " << format_double(config.dispersive.kappa_eh) << "\n";
    out << "delta_eh = " << format_double(config.dispersive.delta_eh) << "\n";
    out << "tau_int = " << format_double(config.dispersive.tau) << "\n";
    out << "kappa_eg = " << format_double(config.dispersive.kappa_eg) << "\n";
    out << "delta_eg = " << format_double(config.dispersive.delta_eg) << "\n";
    out << "gt = " << format_double(config.gt) << "\n";
    out << "theta = " << format_double(config.theta) << "\n";
    out << "c_e = " << format_complex(config.c_e) << "\n";
    out << "c_g = " << format_complex(config.c_g) << "\n";
    out << "eta_a = " << format_double(config.eta_a) << "\n";
    out << "eta_b = " << format_double(config.eta_b) << "\n";
    out << "flux = " << format_double(config.flux) << "\n";
    out << "tau_cav = " << format_double(config.tau_cav) << "\n";
    out << "decoherence = " << (config.decoherence ? "on" : "off") << "\n";
    out << "seed = " << config.seed << "\n";
    out << "round_cap = " << config.round_cap << "\n";
    out << "eps_prob = " << format_double(config.eps_prob) << "\n";
    return out.str();
}

std::string extract_echoed_config(const std::string& document) {
    std::istringstream in(document);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (trim(line).empty()) break;
        out << line << "\n";
    }
    return out.str();
}

}  // namespace cqed
