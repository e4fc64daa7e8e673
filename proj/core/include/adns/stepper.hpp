#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adns/ledger.hpp"
#include "adns/noise.hpp"
#include "adns/records.hpp"

namespace adns {

struct InitSpec {
    enum class Kind { zero, random_divfree, file };
    Kind kind = Kind::zero;
    double spectrum_exponent = 2.0;
    double amplitude = 1.0;
    double normalize_h1 = 0.0;  // if > 0, rescale to this H^1 norm
    std::uint64_t seed_salt = 0;
    std::string path;
};

SpectralVelocity make_initial(const Grid& grid, const InitSpec& spec, std::uint64_t master_seed);

enum class FieldStorage { none, final_only, samples };

struct SolverConfig {
    double lambda = 1.0;
    double dt = 1e-3;
    double t_final = 1.0;
    int output_every = 1;
    Grid grid;
    NoiseOperator sigma;
    std::uint64_t seed = 0;
    InitSpec init;
    FieldStorage storage = FieldStorage::final_only;
    double blowup_factor = 1e6;

    long n_steps() const;
    void validate() const;  // throws ConfigError
};

// e^{-(k1^2 + lambda) dt} per mode: the anisotropic symbol has no k2^2 part.
struct LinearPropagator {
    std::vector<double> mult;
    static LinearPropagator make(const Grid& grid, double lambda, double dt);
};

// One trajectory's recurrence: exponential Euler-Maruyama
//   u+ = E [ u + dt P(-(u.grad)u) + sigma xi ].
// Keeps the running ledger accumulator in sync with the state.
class StepEngine {
  public:
    StepEngine(const SolverConfig& cfg, std::uint64_t replica);
    StepEngine(const SolverConfig& cfg, std::uint64_t replica, SpectralVelocity initial);

    WienerIncrement sample_next_increment();
    void advance(const WienerIncrement& xi);
    void advance() { advance(sample_next_increment()); }

    const SpectralVelocity& state() const { return u_; }
    const LedgerAccum& accum() const { return accum_; }
    long step_index() const { return step_; }
    double time() const { return static_cast<double>(step_) * cfg_.dt; }
    const SolverConfig& config() const { return cfg_; }

  private:
    SolverConfig cfg_;
    std::uint64_t replica_;
    LinearPropagator prop_;
    SpectralVelocity u_;
    LedgerAccum accum_;
    long step_ = 0;
    double guard_sq_ = 0.0;

    void init_accum();
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralVelocity> fields;  // populated per FieldStorage
    SpectralVelocity final_state;
};

struct SimulationResult {
    Trajectory trajectory;
    EnergyLedger ledger;
};

using SampleObserver = std::function<void(long step, double t, const SpectralVelocity& u)>;
using CoupledSampleObserver =
    std::function<void(long step, double t, const SpectralVelocity& u, const SpectralVelocity& v)>;

SimulationResult simulate(const SolverConfig& cfg, const SampleObserver& on_sample = {},
                          std::uint64_t replica = 0);

struct CoupledResult {
    Trajectory u_trajectory;
    Trajectory v_trajectory;
    EnergyLedger u_ledger;
    EnergyLedger v_ledger;
    CouplingRecord record;
};

// Both solutions consume the identical increment sequence.
CoupledResult simulate_coupled(const SolverConfig& cfg, SpectralVelocity u0, SpectralVelocity v0,
                               const CoupledSampleObserver& on_sample = {}, std::uint64_t replica = 0);

}  // namespace adns
