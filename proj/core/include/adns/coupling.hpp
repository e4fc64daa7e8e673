#pragma once

#include <string>
#include <vector>

#include "adns/stepper.hpp"

namespace adns {

// One tail-estimate cell: empirical exceedance frequency versus the
// one-sided theoretical bound. All checks are "frequency - CI <= bound";
// the bounds are upper bounds only and tightness is never asserted.
struct TailRow {
    std::string kind;  // "M" (martingale), "E0", "E1"
    double gamma = 0;  // 0 for E-rows
    double R = 0;
    long replicas = 0;
    long exceedances = 0;
    long excluded = 0;  // blown-up replicas
    double frequency = 0;
    double ci_halfwidth = 0;
    double bound = 0;
    double horizon = 0;
    bool satisfied() const { return frequency - ci_halfwidth <= bound; }
};

struct TailReport {
    std::vector<TailRow> rows;
    bool all_satisfied() const {
        for (const auto& r : rows)
            if (!r.satisfied()) return false;
        return true;
    }
};

struct TailPlan {
    struct MartingaleCell {
        double gamma = 1.0;
        double R = 1.0;
    };
    std::vector<MartingaleCell> martingale_cells;
    std::vector<double> e0_thresholds;  // R values; exceedance is sup E0 >= 2R
    std::vector<double> e1_thresholds;
    long replicas = 1000;
    double horizon = 5.0;
};

// Shared-replica evaluation of every cell in the plan; the per-replica
// suprema are tracked at step resolution. Exceedance events nest in R on the
// same replica set, so frequencies are monotone by construction.
TailReport run_tail_plan(const SolverConfig& cfg, const TailPlan& plan, int threads);

TailRow exp_martingale_tail(const SolverConfig& cfg, double gamma, double R, long replicas,
                            double horizon, int threads);

enum class EnergyFunctional { E0, E1 };
TailRow tail_probability_E(const SolverConfig& cfg, EnergyFunctional functional, double R,
                           long replicas, double horizon, int threads);

// sup E0 <= 2R and sup E1 <= 2R over the ledger's step range.
bool event_ER(const EnergyLedger& ledger, double R);

// Pathwise Gronwall bound |delta_0|^2 exp(-2 lambda t + C0 G(t)) evaluated at
// the ledger's sample times; G is the ledger's anisotropic coupling integral.
std::vector<double> delta_bound_curve(double delta0_l2_sq, double c0, const EnergyLedger& u_ledger);

// What calibration needs to retain from one coupled run.
struct CoupledRunSummary {
    int run_id = 0;
    double lambda = 0, K = 0, R = 0, u0_h1_sq = 0, delta0_l2_sq = 0;
    std::vector<double> times;
    std::vector<double> delta_l2_sq;
    std::vector<double> gn_integral;
};
CoupledRunSummary summarize_coupled_run(int run_id, const CoupledResult& run, double R);

// Smallest constants making the pathwise bound (c0) and the aggregated
// event-form bound (c2) hold across the whole ensemble, with the ids of the
// runs attaining the maxima.
struct CalibratedConstants {
    double c0 = 0;
    double c2 = 0;
    int c0_run_id = -1;
    int c2_run_id = -1;
};
CalibratedConstants calibrate_constants(const std::vector<CoupledRunSummary>& ensemble);

// Fill both bound columns of a coupling record from the u-ledger.
void fill_bound_curves(CouplingRecord& record, const EnergyLedger& u_ledger, double c0_hat,
                       double c2_hat, double R);

struct ContractionVerdict {
    enum class Status { pass, fail, no_claim };
    Status status = Status::no_claim;
    double first_violation_t = -1.0;
    std::string detail;
};

// Checks |delta(t_n)|^2 against the aggregated bound at every sample time and
// the terminal value against floor_rel * |delta_0|. Outside the theorem's
// regime (E_R fails or lambda <= (1 + c2 K) / 2) no claim is made.
ContractionVerdict contraction_check(const CouplingRecord& record, double c2_hat, double R,
                                     double floor_rel);

}  // namespace adns
