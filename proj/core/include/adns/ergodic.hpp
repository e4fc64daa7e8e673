#pragma once

#include <functional>
#include <string>
#include <vector>

#include "adns/coupling.hpp"
#include "adns/stepper.hpp"

namespace adns {

// Bounded-Lipschitz observable on velocity fields: |phi| <= sup_bound <= 1 and
// |phi(u) - phi(v)| <= lip_bound |u - v|_{L2} with lip_bound <= 1.
struct Observable {
    std::string id;
    std::function<double(const SpectralVelocity&)> eval;
    double lip_bound = 1.0;
    double sup_bound = 1.0;
};

// The fixed five-member family used as evidence probes. Witness fields are
// deterministic in the grid (fixed internal seeds), so the family is the same
// across runs.
std::vector<Observable> canonical_observables(const Grid& grid);

// Mean of phi over stored samples with t >= burn_in, thinned to `stride`
// (which must be a multiple of the trajectory's sampling stride).
double time_average(const Trajectory& trajectory, const Observable& phi, double burn_in,
                    double stride);

struct ErgodicRow {
    std::string id;
    double avg_u = 0, avg_v = 0, gap = 0;
    double se_u = 0, se_v = 0;
    bool pass = false;
};

struct ErgodicReport {
    std::vector<ErgodicRow> rows;
    double horizon = 0, burn_in = 0, stride = 0;
    double gap_threshold = 0;
    long samples_per_run = 0;
    bool all_pass() const {
        for (const auto& r : rows)
            if (!r.pass) return false;
        return true;
    }
};

// Long-run Cesaro averages from two initial conditions under independent
// noise. Pass per observable: gap <= gap_threshold and gap <= 3 combined
// batch-means standard errors. Requires lambda > (1 + c2_hat K) / 2.
ErgodicReport uniqueness_gap(const SolverConfig& cfg, const InitSpec& u0, const InitSpec& v0,
                             const std::vector<Observable>& observables, double horizon,
                             double burn_in, double stride, double gap_threshold, double c2_hat,
                             int threads, std::uint64_t replica_u = 0, std::uint64_t replica_v = 1);

// Same-noise pair: |delta(t_n)| and the running Cesaro differences
// (1/n) sum_k (phi(u(t_k)) - phi(v(t_k))), one series per observable.
struct CesaroSeries {
    std::vector<double> times;               // t_1 .. t_n
    std::vector<double> delta_l2;            // |delta(t_k)|
    std::vector<double> cesaro_delta;        // (1/n) sum |delta(t_k)|
    std::vector<std::string> ids;
    std::vector<std::vector<double>> cesaro;  // per observable, running averages
};
CesaroSeries coupling_limit_series(const CoupledResult& run,
                                   const std::vector<Observable>& observables);

}  // namespace adns
