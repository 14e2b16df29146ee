#include <doctest.h>

#include <cmath>

#include "cqed/gates.hpp"
#include "cqed/hilbert.hpp"

using namespace cqed;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("dispersive params: default transit gives phi1 = pi, phi2 = 0") {
    const DispersiveParams params;
    CHECK(params.phi1() == kPi);
    CHECK(params.phi2() == 0.0);
    DispersiveParams bad;
    bad.delta_eh = 0.0;
    CHECK_THROWS_AS(bad.phi1(), std::invalid_argument);
}

TEST_CASE("dispersive gate: pi phase flips the field on the |e> branch") {
    const FockCutoff cut = FockCutoff::for_amplitude(2.0);
    const Matrix u = dispersive_gate(DispersiveParams{}, cut);

    Vector in(2 * cut.n_max);
    in.head(cut.n_max) = coherent_state(-2.0, cut).amplitudes;  // |e>|-alpha>
    in.tail(cut.n_max).setZero();
    const Vector out = u * in;
    Vector expect(2 * cut.n_max);
    expect.head(cut.n_max) = coherent_state(2.0, cut).amplitudes;
    expect.tail(cut.n_max).setZero();
    CHECK(std::norm(expect.dot(out)) >= 1.0 - 1e-9);
}

TEST_CASE("dispersive gate: zero phases give the identity") {
    DispersiveParams params;
    params.kappa_eh = 0.0;
    const FockCutoff cut(10);
    const Matrix u = dispersive_gate(params, cut);
    CHECK((u - Matrix::Identity(20, 20)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dispersive gate: two pi transits cancel on the |e> block") {
    const FockCutoff cut(30);
    const Matrix u = dispersive_gate(DispersiveParams{}, cut);
    const Matrix twice = u * u;
    CHECK((twice.topLeftCorner(30, 30) - Matrix::Identity(30, 30))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
}

TEST_CASE("dispersive gate: commutes with the photon number operator") {
    const FockCutoff cut(18);
    const Matrix u = dispersive_gate(DispersiveParams{}, cut);
    Matrix number = Matrix::Zero(2 * cut.n_max, 2 * cut.n_max);
    for (int k = 0; k < cut.n_max; ++k) {
        number(k, k) = k;
        number(cut.n_max + k, cut.n_max + k) = k;
    }
    CHECK((u * number - number * u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ramsey R1: maps the superposition states onto the readout basis") {
    const Matrix r1 = ramsey_r1();
    CHECK((r1 * atom_plus() - atom_e()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r1 * atom_minus() - atom_g()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((r1 * r1 - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ramsey R3: quoted matrix, unitarity, and rotations") {
    const double theta = 0.7;
    const Matrix r3 = ramsey_r3(RamseyParams{theta});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(r3(0, 0) - Complex(s, 0.0)) < 1e-15);
    CHECK(std::abs(r3(0, 1) - (-kI * std::exp(kI * theta) * s)) < 1e-15);
    CHECK(std::abs(r3(1, 0) - (-kI * std::exp(-kI * theta) * s)) < 1e-15);
    CHECK((r3 * r3.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    // |e> -> (|e> - i e^{-i theta} |g>)/sqrt(2)
    const Vector rotated = r3 * atom_e();
    CHECK(std::abs(rotated(0) - Complex(s, 0.0)) < 1e-15);
    CHECK(std::abs(rotated(1) - (-kI * std::exp(-kI * theta) * s)) < 1e-15);

    // theta = pi/2 sends |g> to (|e> + |g>)/sqrt(2)
    const Vector plus = ramsey_r3(RamseyParams{kPi / 2.0}) * atom_g();
    CHECK(std::abs(plus(0) - Complex(s, 0.0)) < 1e-14);
    CHECK(std::abs(plus(1) - Complex(s, 0.0)) < 1e-14);
}

TEST_CASE("jc gate: lower state with an empty cavity is exactly invariant") {
    const FockCutoff cut(16);
    const Matrix u = jc_gate(JCParams{1.0, 0.9}, cut);
    Vector in = Vector::Zero(2 * cut.n_max);
    in(cut.n_max) = 1.0;  // |b, 0>
    const Vector out = u * in;
    CHECK((out - in).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jc gate: exchange series matches the closed form") {
    // |b>|2 alpha> -> |a>|chi_a> + |b>|chi_b> with
    // chi_a = -i sum C_{n+1} sin(gt sqrt(n+1)) |n>,
    // chi_b =    sum C_n     cos(gt sqrt(n))   |n>.
    const double amp = 4.0;  // 2 alpha at alpha = 2
    const double gt = 0.3809740689239762;
    const FockCutoff cut = FockCutoff::for_amplitude(amp);
    const Matrix u = jc_gate(JCParams{1.0, gt}, cut);

    Vector in = Vector::Zero(2 * cut.n_max);
    in.tail(cut.n_max) = coherent_state(amp, cut).amplitudes;
    const Vector out = u * in;

    const Vector c = coherent_state(amp, cut).amplitudes;
    Vector chi_a = Vector::Zero(cut.n_max);
    Vector chi_b = Vector::Zero(cut.n_max);
    for (int n = 0; n < cut.n_max; ++n) {
        if (n + 1 < cut.n_max) {
            chi_a(n) = -kI * c(n + 1) * std::sin(gt * std::sqrt(n + 1.0));
        }
        chi_b(n) = c(n) * std::cos(gt * std::sqrt(static_cast<double>(n)));
    }
    CHECK((out.head(cut.n_max) - chi_a).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((out.tail(cut.n_max) - chi_b).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(chi_a.squaredNorm() + chi_b.squaredNorm() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("jc gate: no coupling outside the exchange pairs") {
    const int n_max = 12;
    const Matrix u = jc_gate(JCParams{1.0, 1.3}, FockCutoff(n_max));
    for (int n = 0; n < n_max; ++n) {
        for (int m = 0; m < n_max; ++m) {
            if (m != n) CHECK(u(n, m) == Complex(0.0, 0.0));            // a-a
            if (m != n + 1) CHECK(u(n_max + m, n) == Complex(0.0, 0.0));  // a->b
        }
    }
}

TEST_CASE("gates are unitary") {
    const FockCutoff cut(20);
    for (const Matrix& u : {dispersive_gate(DispersiveParams{}, cut),
                            jc_gate(JCParams{1.0, 0.8}, cut)}) {
        CHECK((u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
    }
    const Matrix r3 = ramsey_r3(RamseyParams{1.1});
    CHECK((r3 * r3.adjoint() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("damping channel: trivial step and completeness") {
    const FockCutoff cut(14);
    const auto none = damping_channel(0.5, 0.0, cut);
    REQUIRE(none.size() == 1);
    CHECK((none[0] - Matrix::Identity(14, 14)).cwiseAbs().maxCoeff() == 0.0);

    const auto kraus = damping_channel(2.0, 0.07, cut);
    Matrix sum = Matrix::Zero(14, 14);
    for (const Matrix& k : kraus) sum += k.adjoint() * k;
    CHECK((sum - Matrix::Identity(14, 14)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("damping channel: coherent states stay coherent") {
    const double a = 1.5, kappa = 1.0, dt = 0.2;
    const FockCutoff cut = FockCutoff::for_amplitude(a);
    const auto kraus = damping_channel(kappa, dt, cut);
    const DensityMatrix rho =
        density(single_state("C", coherent_state(a, cut)));
    const std::vector<std::string> t{"C"};
    const DensityMatrix damped = apply_channel(rho, kraus, t);
    const PureState target =
        single_state("C", coherent_state(a * std::exp(-kappa * dt / 2.0), cut));
    CHECK(fidelity(damped, target) >= 1.0 - 1e-8);
    CHECK(std::abs(damped.trace() - 1.0) < 1e-9);
    CHECK(hermiticity_defect(damped) < 1e-9);
}

TEST_CASE("damping channel: cat interference decays at the enhanced rate") {
    // <-alpha| rho' |alpha> = <-alpha| rho |alpha> * exp(-2 |alpha|^2 gamma)
    const double a = 1.5;
    const FockCutoff cut = FockCutoff::for_amplitude(a);
    const std::vector<std::string> t{"C"};
    for (double kdt : {0.01, 0.05}) {
        const auto kraus = damping_channel(1.0, kdt, cut);
        const DensityMatrix rho = density(single_state("C", even_cat(a, cut)));
        const DensityMatrix damped = apply_channel(rho, kraus, t);
        const Vector plus = coherent_state(a, cut).amplitudes;
        const Vector minus = coherent_state(-a, cut).amplitudes;
        const Complex before = minus.dot(rho.data * plus);
        const Complex after = minus.dot(damped.data * plus);
        const double gamma = 1.0 - std::exp(-kdt);
        const double expected = std::abs(before) * std::exp(-2.0 * a * a * gamma);
        CHECK(std::abs(after) == doctest::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("damping channel: photon population never flows away from vacuum") {
    const double a = 1.2;
    const FockCutoff cut = FockCutoff::for_amplitude(a);
    const auto kraus = damping_channel(1.0, 0.3, cut);
    const DensityMatrix rho = density(single_state("C", coherent_state(a, cut)));
    const std::vector<std::string> t{"C"};
    const DensityMatrix damped = apply_channel(rho, kraus, t);
    // Population of the occupied complement must not grow.
    const double before = 1.0 - rho.data(0, 0).real();
    const double after = 1.0 - damped.data(0, 0).real();
    CHECK(after <= before + 1e-12);
}
