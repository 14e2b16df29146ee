#ifndef CQED_GATES_HPP
#define CQED_GATES_HPP

#include <vector>

#include "cqed/fock.hpp"
#include "cqed/types.hpp"

namespace cqed {

// Dispersive atom-field transit.  The accumulated photon-number phases are
// phi1 = kappa_eh^2 tau / delta_eh on the |e> block and
// phi2 = kappa_eg^2 tau / delta_eg on the |g> block.
// Defaults give phi1 = pi and phi2 = 0 exactly.
struct DispersiveParams {
    double kappa_eh = 1.0;   // rad/s, |e><->|h| coupling
    double delta_eh = 1.0;   // rad/s, detuning (must be nonzero)
    double tau = 3.14159265358979323846;  // s, transit time
    double kappa_eg = 0.0;   // rad/s, |e><->|g| coupling
    double delta_eg = 1.0;   // rad/s

    double phi1() const;  // reported in [0, 2 pi)
    double phi2() const;
};

// Resonant atom-field exchange pulse: dimensionless area gt.
struct JCParams {
    double g = 1.0;  // rad/s, vacuum Rabi coupling
    double t = 0.0;  // s

    double gt() const { return g * t; }
};

struct RamseyParams {
    double theta = 0.0;  // radians, phase of the R3 zone
};

// Two-level basis vectors.  Index 0 is the upper working level:
// |e> for the dispersive (A-type) atoms, |a> for the resonant (B-type) atoms.
Vector atom_e();
Vector atom_g();
Vector atom_plus();   // (|e> + |g>)/sqrt(2)
Vector atom_minus();  // (|e> - |g>)/sqrt(2)
Vector atom_a();
Vector atom_b();
Matrix proj_upper();  // |0><0|
Matrix proj_lower();  // |1><1|

// Unitary on atom (x) field:
// exp(i phi1 n)|e><e| + exp(i phi2 n)|g><g|, diagonal in the product basis.
Matrix dispersive_gate(const DispersiveParams& params, FockCutoff cutoff);

// Ramsey zone mapping |A+> -> |e> and |A-> -> |g| (real Hadamard).
Matrix ramsey_r1();

// R3 = (1/sqrt2) [[1, -i e^{i theta}], [-i e^{-i theta}, 1]] in (|e>,|g>).
Matrix ramsey_r3(const RamseyParams& params);

// Resonant exchange on atom (x) field.  Each pair {|a,n>, |b,n+1>} rotates by
// gt sqrt(n+1) with the -i phase convention; |b,0> is invariant.  The edge
// state |a, n_max-1> has no partner inside the truncation and is left fixed
// so the matrix stays unitary.
Matrix jc_gate(const JCParams& params, FockCutoff cutoff);

// Single-mode amplitude damping over a time step dt at rate kappa:
// loss parameter gamma = 1 - exp(-kappa dt).  Satisfies sum K^dag K = 1.
std::vector<Matrix> damping_channel(double kappa, double dt, FockCutoff cutoff);

}  // namespace cqed

#endif  // CQED_GATES_HPP
