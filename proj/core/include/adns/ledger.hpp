#pragma once

#include <vector>

#include "adns/spectral_ops.hpp"

namespace adns {

// One recorded sample of the running balances. Time integrals are trapezoid
// sums at step resolution; martingale and quadratic-variation sums use the
// left endpoint (the non-anticipating convention).
struct LedgerRow {
    double t = 0;
    NormSnapshot norms;
    double I_l2 = 0;        // int |z|^2
    double I_d1 = 0;        // int |d1 z|^2
    double I_grad = 0;      // int |grad z|^2
    double I_d1grad = 0;    // int |d1 grad z|^2
    double I_d1d2 = 0;      // int |d1 d2 z|^2
    double sup_d2_sq = 0;   // running sup |d2 z|^2
    double gn_integral = 0; // int (|d1 z|^(2/3) + |d2 z|^(2/3)) |d1 d2 z|^(2/3)
    double M0 = 0, QV0 = 0; // L^2 martingale and its bracket
    double M1 = 0, QV1 = 0; // H^1 martingale and its bracket
    double sup_E0 = 0, sup_E1 = 0;  // running suprema of the energy functionals
};

// Per-step accumulator owned by the step engine; rows are copied out at
// sample times to form the EnergyLedger.
class LedgerAccum {
  public:
    LedgerAccum() = default;
    LedgerAccum(double lambda, double K, double K_l2, double dt, const NormSnapshot& initial);

    void add_step(double m0_inc, double qv0_inc, double m1_inc, double qv1_inc,
                  const NormSnapshot& next);

    const LedgerRow& row() const { return row_; }
    double E0() const;
    double E1() const;
    double time() const { return row_.t; }

  private:
    double lambda_ = 0, K_ = 0, K_l2_ = 0, dt_ = 0;
    double l2_sq0_ = 0, grad_sq0_ = 0;
    long step_ = 0;
    LedgerRow row_;

    static double gn_integrand(const NormSnapshot& n);
};

// Sampled time series of all balances for one trajectory.
class EnergyLedger {
  public:
    EnergyLedger() = default;
    EnergyLedger(double lambda, double K, double K_l2, double dt, const NormSnapshot& initial);

    void push(const LedgerRow& row) { rows_.push_back(row); }

    const std::vector<LedgerRow>& rows() const { return rows_; }
    double lambda() const { return lambda_; }
    double K() const { return K_; }
    double K_l2() const { return K_l2_; }
    double dt() const { return dt_; }
    double initial_l2_sq() const { return l2_sq0_; }
    double initial_grad_sq() const { return grad_sq0_; }
    double sup_E0() const;
    double sup_E1() const;

    // Index of the sample at time t; throws std::out_of_range if t is not a
    // recorded sample time.
    std::size_t row_index(double t) const;

  private:
    double lambda_ = 0, K_ = 0, K_l2_ = 0, dt_ = 0;
    double l2_sq0_ = 0, grad_sq0_ = 0;
    std::vector<LedgerRow> rows_;
};

}  // namespace adns
