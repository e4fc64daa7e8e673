#include "adns/ledger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adns {

LedgerAccum::LedgerAccum(double lambda, double K, double K_l2, double dt, const NormSnapshot& initial)
    : lambda_(lambda), K_(K), K_l2_(K_l2), dt_(dt), l2_sq0_(initial.l2_sq), grad_sq0_(initial.grad_sq) {
    row_.norms = initial;
    row_.sup_d2_sq = initial.d2_sq;
    row_.sup_E0 = 0.0;  // E0(0) = E1(0) = 0 by definition
    row_.sup_E1 = 0.0;
}

double LedgerAccum::gn_integrand(const NormSnapshot& n) {
    return (std::cbrt(n.d1_sq) + std::cbrt(n.d2_sq)) * std::cbrt(n.d1d2_sq);
}

void LedgerAccum::add_step(double m0_inc, double qv0_inc, double m1_inc, double qv1_inc,
                           const NormSnapshot& next) {
    const NormSnapshot& prev = row_.norms;
    row_.I_l2 += 0.5 * dt_ * (prev.l2_sq + next.l2_sq);
    row_.I_d1 += 0.5 * dt_ * (prev.d1_sq + next.d1_sq);
    row_.I_grad += 0.5 * dt_ * (prev.grad_sq + next.grad_sq);
    row_.I_d1grad += 0.5 * dt_ * (prev.d1grad_sq + next.d1grad_sq);
    row_.I_d1d2 += 0.5 * dt_ * (prev.d1d2_sq + next.d1d2_sq);
    row_.gn_integral += 0.5 * dt_ * (gn_integrand(prev) + gn_integrand(next));
    row_.M0 += m0_inc;
    row_.QV0 += qv0_inc;
    row_.M1 += m1_inc;
    row_.QV1 += qv1_inc;
    row_.norms = next;
    row_.sup_d2_sq = std::max(row_.sup_d2_sq, next.d2_sq);
    ++step_;
    row_.t = static_cast<double>(step_) * dt_;
    row_.sup_E0 = std::max(row_.sup_E0, E0());
    row_.sup_E1 = std::max(row_.sup_E1, E1());
}

double LedgerAccum::E0() const {
    return row_.norms.l2_sq - l2_sq0_ + 2.0 * row_.I_d1 + (2.0 * lambda_ - 1.0) * row_.I_l2 -
           K_ * row_.t;
}

double LedgerAccum::E1() const {
    return row_.norms.grad_sq - grad_sq0_ + 2.0 * row_.I_d1grad +
           (2.0 * lambda_ - 1.0) * row_.I_grad - K_ * row_.t;
}

EnergyLedger::EnergyLedger(double lambda, double K, double K_l2, double dt, const NormSnapshot& initial)
    : lambda_(lambda), K_(K), K_l2_(K_l2), dt_(dt), l2_sq0_(initial.l2_sq), grad_sq0_(initial.grad_sq) {}

double EnergyLedger::sup_E0() const {
    return rows_.empty() ? 0.0 : rows_.back().sup_E0;
}

double EnergyLedger::sup_E1() const {
    return rows_.empty() ? 0.0 : rows_.back().sup_E1;
}

std::size_t EnergyLedger::row_index(double t) const {
    const double tol = 1e-9 * std::max(1.0, std::abs(t));
    auto it = std::lower_bound(rows_.begin(), rows_.end(), t - tol,
                               [](const LedgerRow& r, double v) { return r.t < v; });
    if (it == rows_.end() || std::abs(it->t - t) > tol)
        throw std::out_of_range("no ledger sample at the requested time");
    return static_cast<std::size_t>(it - rows_.begin());
}

}  // namespace adns
