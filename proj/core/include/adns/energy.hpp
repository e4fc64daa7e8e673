#pragma once

#include "adns/ledger.hpp"

namespace adns {

// Pathwise energy functionals. E0 compares the L^2 balance against the
// K-compensated drift; E1 is the gradient analogue:
//   E0(t) = |z(t)|^2 - |z0|^2 + 2 int |d1 z|^2 + (2 lambda - 1) int |z|^2 - K t
// with the H^1 Hilbert-Schmidt constant K in both functionals.
double compute_E0(const EnergyLedger& ledger, double t);
double compute_E1(const EnergyLedger& ledger, double t);

// Signed defect of the L^2 Ito balance; zero in the continuum:
//   |z(t)|^2 + 2 int |d1 z|^2 + 2 lambda int |z|^2 - |z0|^2 - 2 M0(t) - K_l2 t.
double ito_l2_residual(const EnergyLedger& ledger, double t);

// Signed defect (LHS - RHS) of the H^1 balance. The continuum statement is an
// inequality with slack (K - K_l2) t >= 0, so the residual converges to
// -K_l2 t <= 0; it is reported signed rather than thresholded.
double ito_h1_residual(const EnergyLedger& ledger, double t);

// Advection pairing against the anisotropic interpolation unit:
//   lhs      = |(delta . grad u, delta)|
//   rhs_unit = sqrt(|delta| |d1 delta|) (|d1 u|^(1/2) + |d2 u|^(1/2))
//              |d1 d2 u|^(1/2) |delta|        (all L^2 norms)
// The implied inequality constant is lhs / rhs_unit.
struct GnPairing {
    double lhs = 0;
    double rhs_unit = 0;
    double ratio() const { return lhs == 0.0 ? 0.0 : lhs / rhs_unit; }
};
GnPairing gn_pairing_check(const SpectralVelocity& u, const SpectralVelocity& delta);

}  // namespace adns
