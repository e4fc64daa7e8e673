#pragma once

#include <vector>

namespace adns {

// Paired-trajectory record for two solutions driven by the same noise.
// delta = u - v is sampled at the observation times; the bound columns are
// filled in by the coupling analysis (Gronwall curve and aggregated event
// curve respectively).
struct CouplingRecord {
    std::vector<double> times;
    std::vector<double> delta_l2_sq;
    std::vector<double> bound_c0;
    std::vector<double> bound_c2;
    bool er_flag = false;
    double lambda = 0;
    double K = 0;
    double R = 0;
    double u0_h1_sq = 0;
    double delta0_l2_sq = 0;
    double c0_hat = 0;
    double c2_hat = 0;
};

}  // namespace adns
