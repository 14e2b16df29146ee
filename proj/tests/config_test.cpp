#include <doctest.h>

#include <cmath>

#include "cqed/config.hpp"

using namespace cqed;

TEST_CASE("config: empty text yields the documented defaults") {
    const ProtocolConfig config = parse_config_text("");
    CHECK(config.alpha == Complex(2.0, 0.0));
    CHECK(config.eta_a == 0.5);
    CHECK(config.eta_b == 0.5);
    CHECK(config.flux == 2500.0);
    CHECK(config.tau_cav == 0.1);
    CHECK(config.theta == 0.0);
    CHECK(config.c_e == Complex(1.0, 0.0));
    CHECK(config.c_g == Complex(0.0, 0.0));
    CHECK(config.seed == 42);
    CHECK_FALSE(config.decoherence);
    CHECK(config.n_max == 0);
    CHECK(config.cutoff().n_max == 26);  // rule for |alpha| = 2
    CHECK(config.injected_cutoff().n_max == 50);
}

TEST_CASE("config: keys parse and comments are ignored") {
    const ProtocolConfig config = parse_config_text(
        "# comment line\n"
        "alpha = 1.5   # inline comment\n"
        "eta_a = 0.25\n"
        "decoherence = on\n"
        "seed = 7\n"
        "c_e = 0.6\n"
        "c_g = 0.8i\n");
    CHECK(config.alpha == Complex(1.5, 0.0));
    CHECK(config.eta_a == 0.25);
    CHECK(config.decoherence);
    CHECK(config.seed == 7);
    CHECK(config.c_g == Complex(0.0, 0.8));
}

TEST_CASE("config: unknown keys and bad values are named in the error") {
    CHECK_THROWS_WITH_AS(parse_config_text("bogus_key = 1\n"),
                         doctest::Contains("bogus_key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("eta_a = fast\n"),
                         doctest::Contains("eta_a"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("eta_a = 1.5\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("alpha = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("c_e = 0.9\n"), ConfigError);  // norm != 1
}

TEST_CASE("complex literals: parse and round trip") {
    CHECK(parse_complex("2") == Complex(2.0, 0.0));
    CHECK(parse_complex("-1.5") == Complex(-1.5, 0.0));
    CHECK(parse_complex("1+2i") == Complex(1.0, 2.0));
    CHECK(parse_complex("0.5-0.5i") == Complex(0.5, -0.5));
    CHECK(parse_complex("3i") == Complex(0.0, 3.0));
    CHECK(parse_complex("i") == Complex(0.0, 1.0));
    CHECK(parse_complex("-i") == Complex(0.0, -1.0));
    CHECK(parse_complex("1e-3+2.5e-4i") == Complex(1e-3, 2.5e-4));
    CHECK_THROWS(parse_complex("1+2j"));

    for (const Complex z : {Complex(0.3333333333333333, 0.0),
                            Complex(-1.0 / 7.0, 2.0 / 3.0), Complex(0.0, -0.1)}) {
        CHECK(parse_complex(format_complex(z)) == z);
    }
    CHECK(parse_complex(format_double(1.0 / 3.0)) == Complex(1.0 / 3.0, 0.0));
}

TEST_CASE("config echo: bit-exact round trip") {
    ProtocolConfig config;
    config.alpha = Complex(1.75, 0.0);
    config.eta_a = 1.0 / 3.0;
    config.tau_cav = 0.07;
    config.theta = 2.0 / 7.0;
    config.seed = 123456789;
    const std::string echoed = echo_config(config);
    const ProtocolConfig parsed = parse_config_text(echoed);
    CHECK(parsed.alpha == config.alpha);
    CHECK(parsed.eta_a == config.eta_a);
    CHECK(parsed.tau_cav == config.tau_cav);
    CHECK(parsed.theta == config.theta);
    CHECK(parsed.seed == config.seed);
    CHECK(echo_config(parsed) == echoed);
}

TEST_CASE("config echo: extractable from a result document") {
    ProtocolConfig config;
    const std::string echoed = echo_config(config);
    const std::string document = echoed + "\nheader,a,b\n1,2,3\n";
    CHECK(extract_echoed_config(document) == echoed);
}
