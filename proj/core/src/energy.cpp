#include "adns/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace adns {

double compute_E0(const EnergyLedger& ledger, double t) {
    const LedgerRow& r = ledger.rows()[ledger.row_index(t)];
    return r.norms.l2_sq - ledger.initial_l2_sq() + 2.0 * r.I_d1 +
           (2.0 * ledger.lambda() - 1.0) * r.I_l2 - ledger.K() * r.t;
}

double compute_E1(const EnergyLedger& ledger, double t) {
    const LedgerRow& r = ledger.rows()[ledger.row_index(t)];
    return r.norms.grad_sq - ledger.initial_grad_sq() + 2.0 * r.I_d1grad +
           (2.0 * ledger.lambda() - 1.0) * r.I_grad - ledger.K() * r.t;
}

double ito_l2_residual(const EnergyLedger& ledger, double t) {
    const LedgerRow& r = ledger.rows()[ledger.row_index(t)];
    return r.norms.l2_sq + 2.0 * r.I_d1 + 2.0 * ledger.lambda() * r.I_l2 - ledger.initial_l2_sq() -
           2.0 * r.M0 - ledger.K_l2() * r.t;
}

double ito_h1_residual(const EnergyLedger& ledger, double t) {
    const LedgerRow& r = ledger.rows()[ledger.row_index(t)];
    const double lhs = r.norms.grad_sq + 2.0 * r.I_d1grad + 2.0 * ledger.lambda() * r.I_grad;
    const double rhs = ledger.initial_grad_sq() + 2.0 * r.M1 + ledger.K() * r.t;
    return lhs - rhs;
}

GnPairing gn_pairing_check(const SpectralVelocity& u, const SpectralVelocity& delta) {
    GnPairing out;
    out.lhs = std::abs(l2_inner(nonlinear_term(u, delta), delta));

    const NormSnapshot nu = norm_snapshot(u);
    const NormSnapshot nd = norm_snapshot(delta);
    const double delta_l2 = std::sqrt(nd.l2_sq);
    const double delta_d1 = std::sqrt(nd.d1_sq);
    // sqrt of the product keeps the ratio bitwise invariant under delta -> 2 delta.
    out.rhs_unit = std::sqrt(delta_l2 * delta_d1) *
                   (std::pow(nu.d1_sq, 0.25) + std::pow(nu.d2_sq, 0.25)) *
                   std::pow(nu.d1d2_sq, 0.25) * delta_l2;

    if (out.rhs_unit == 0.0 && out.lhs != 0.0)
        throw std::logic_error("gn_pairing_check: nonzero pairing with vanishing interpolation unit");
    return out;
}

}  // namespace adns
