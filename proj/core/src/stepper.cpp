#include "adns/stepper.hpp"

#include <cmath>
#include <sstream>

#include "adns/errors.hpp"
#include "adns/io.hpp"

namespace adns {

SpectralVelocity make_initial(const Grid& grid, const InitSpec& spec, std::uint64_t master_seed) {
    SpectralVelocity u(grid);
    switch (spec.kind) {
        case InitSpec::Kind::zero:
            break;
        case InitSpec::Kind::random_divfree:
            u = random_divfree_field(grid, derive_seed(master_seed, spec.seed_salt),
                                     spec.spectrum_exponent, spec.amplitude);
            break;
        case InitSpec::Kind::file: {
            u = load_velocity(spec.path, grid.dealias_fraction);
            if (u.grid().n_h != grid.n_h || u.grid().n_v != grid.n_v ||
                u.grid().box_length != grid.box_length)
                throw ConfigError("init.path: stored field does not match the configured grid");
            apply_dealias_mask(u);
            u = leray_project(u);
            break;
        }
    }
    if (spec.normalize_h1 > 0.0) {
        const double h1 = std::sqrt(h1_norm_sq(u));
        if (h1 == 0.0) throw ConfigError("init.normalize_h1: cannot rescale the zero field");
        u *= spec.normalize_h1 / h1;
    }
    return u;
}

long SolverConfig::n_steps() const { return std::llround(t_final / dt); }

void SolverConfig::validate() const {
    if (!(lambda > 0.0)) throw ConfigError("lambda: must be strictly positive");
    if (!(dt > 0.0)) throw ConfigError("dt: must be strictly positive");
    if (!(t_final >= dt)) throw ConfigError("t_final: must be at least dt");
    if (output_every < 1) throw ConfigError("output_every: must be >= 1");
    if (!sigma.empty() && !(sigma.grid() == grid))
        throw ConfigError("noise: operator grid does not match the run grid");
    if (n_steps() < 1) throw ConfigError("t_final: horizon shorter than one step");
}

LinearPropagator LinearPropagator::make(const Grid& grid, double lambda, double dt) {
    LinearPropagator p;
    p.mult.resize(grid.size());
    for (int j1 = 0; j1 < grid.n_h; ++j1) {
        const double k1 = grid.k1(j1);
        for (int j2 = 0; j2 < grid.n_v; ++j2)
            p.mult[grid.index(j1, j2)] = std::exp(-(k1 * k1 + lambda) * dt);
    }
    return p;
}

StepEngine::StepEngine(const SolverConfig& cfg, std::uint64_t replica)
    : StepEngine(cfg, replica, make_initial(cfg.grid, cfg.init, cfg.seed)) {}

StepEngine::StepEngine(const SolverConfig& cfg, std::uint64_t replica, SpectralVelocity initial)
    : cfg_(cfg), replica_(replica), prop_(LinearPropagator::make(cfg.grid, cfg.lambda, cfg.dt)),
      u_(std::move(initial)) {
    cfg_.validate();
    u_.check_grid(cfg_.grid);
    init_accum();
}

void StepEngine::init_accum() {
    const NormSnapshot n0 = norm_snapshot(u_);
    accum_ = LedgerAccum(cfg_.lambda, cfg_.sigma.k_h1(), cfg_.sigma.k_l2(), cfg_.dt, n0);
    const double scale = std::max(1.0, std::sqrt(n0.l2_sq));
    guard_sq_ = (cfg_.blowup_factor * scale) * (cfg_.blowup_factor * scale);
}

WienerIncrement StepEngine::sample_next_increment() {
    if (cfg_.sigma.empty()) return WienerIncrement{};
    RngStream rng = make_stream(cfg_.seed, replica_, StreamPurpose::noise,
                                static_cast<std::uint64_t>(step_));
    return cfg_.sigma.sample_increment(rng, cfg_.dt);
}

void StepEngine::advance(const WienerIncrement& xi) {
    double m0 = 0, qv0 = 0, m1 = 0, qv1 = 0;
    if (!cfg_.sigma.empty()) {
        const std::vector<double> p = cfg_.sigma.pairings(u_);
        for (int j = 0; j < cfg_.sigma.image_count(); ++j) {
            const double amp = cfg_.sigma.image_amplitude(j);
            const double ksq = cfg_.sigma.image_k_sq(j);
            m0 += amp * xi.xi[j] * p[j];
            qv0 += amp * amp * p[j] * p[j] * cfg_.dt;
            m1 += amp * xi.xi[j] * ksq * p[j];
            qv1 += amp * amp * ksq * ksq * p[j] * p[j] * cfg_.dt;
        }
    }

    SpectralVelocity adv = leray_project(nonlinear_term(u_, u_));
    SpectralVelocity next(cfg_.grid);
    const int n = cfg_.grid.size();
    Complex* n1 = next.comp1().data();
    Complex* n2 = next.comp2().data();
    const Complex* u1 = u_.comp1().data();
    const Complex* u2 = u_.comp2().data();
    const Complex* a1 = adv.comp1().data();
    const Complex* a2 = adv.comp2().data();
    for (int i = 0; i < n; ++i) {
        n1[i] = u1[i] - cfg_.dt * a1[i];
        n2[i] = u2[i] - cfg_.dt * a2[i];
    }
    if (!cfg_.sigma.empty()) cfg_.sigma.add_scaled(next, xi);
    for (int i = 0; i < n; ++i) {
        n1[i] *= prop_.mult[i];
        n2[i] *= prop_.mult[i];
    }

    const NormSnapshot ns = norm_snapshot(next);
    if (!std::isfinite(ns.l2_sq) || ns.l2_sq > guard_sq_) {
        std::ostringstream msg;
        msg << "blow-up at step " << (step_ + 1) << " (t = " << (step_ + 1) * cfg_.dt
            << "): |u|^2_{L2} = " << ns.l2_sq << "; reduce dt or increase lambda";
        throw BlowupError(step_ + 1, (step_ + 1) * cfg_.dt, msg.str());
    }

    accum_.add_step(m0, qv0, m1, qv1, ns);
    u_ = std::move(next);
    ++step_;
}

namespace {

bool is_sample_step(long step, long n_steps, int every) {
    return step % every == 0 || step == n_steps;
}

}  // namespace

SimulationResult simulate(const SolverConfig& cfg, const SampleObserver& on_sample,
                          std::uint64_t replica) {
    cfg.validate();
    StepEngine engine(cfg, replica);
    const long n_steps = cfg.n_steps();

    SimulationResult result;
    result.ledger = EnergyLedger(cfg.lambda, cfg.sigma.k_h1(), cfg.sigma.k_l2(), cfg.dt,
                                 engine.accum().row().norms);
    auto record_sample = [&](long step) {
        result.ledger.push(engine.accum().row());
        result.trajectory.times.push_back(engine.time());
        if (cfg.storage == FieldStorage::samples) result.trajectory.fields.push_back(engine.state());
        if (on_sample) on_sample(step, engine.time(), engine.state());
    };

    record_sample(0);
    for (long s = 1; s <= n_steps; ++s) {
        engine.advance();
        if (is_sample_step(s, n_steps, cfg.output_every)) record_sample(s);
    }
    if (cfg.storage != FieldStorage::none) result.trajectory.final_state = engine.state();
    return result;
}

CoupledResult simulate_coupled(const SolverConfig& cfg, SpectralVelocity u0, SpectralVelocity v0,
                               const CoupledSampleObserver& on_sample, std::uint64_t replica) {
    cfg.validate();
    StepEngine u_eng(cfg, replica, std::move(u0));
    StepEngine v_eng(cfg, replica, std::move(v0));
    const long n_steps = cfg.n_steps();

    CoupledResult result;
    result.u_ledger = EnergyLedger(cfg.lambda, cfg.sigma.k_h1(), cfg.sigma.k_l2(), cfg.dt,
                                   u_eng.accum().row().norms);
    result.v_ledger = EnergyLedger(cfg.lambda, cfg.sigma.k_h1(), cfg.sigma.k_l2(), cfg.dt,
                                   v_eng.accum().row().norms);
    result.record.lambda = cfg.lambda;
    result.record.K = cfg.sigma.k_h1();
    result.record.u0_h1_sq = h1_norm_sq(u_eng.state());
    result.record.delta0_l2_sq = l2_norm_sq(u_eng.state() - v_eng.state());

    auto record_sample = [&](long step) {
        result.u_ledger.push(u_eng.accum().row());
        result.v_ledger.push(v_eng.accum().row());
        result.u_trajectory.times.push_back(u_eng.time());
        result.v_trajectory.times.push_back(v_eng.time());
        if (cfg.storage == FieldStorage::samples) {
            result.u_trajectory.fields.push_back(u_eng.state());
            result.v_trajectory.fields.push_back(v_eng.state());
        }
        result.record.times.push_back(u_eng.time());
        result.record.delta_l2_sq.push_back(l2_norm_sq(u_eng.state() - v_eng.state()));
        if (on_sample) on_sample(step, u_eng.time(), u_eng.state(), v_eng.state());
    };

    record_sample(0);
    for (long s = 1; s <= n_steps; ++s) {
        const WienerIncrement xi = u_eng.sample_next_increment();
        u_eng.advance(xi);
        v_eng.advance(xi);
        if (is_sample_step(s, n_steps, cfg.output_every)) record_sample(s);
    }
    if (cfg.storage != FieldStorage::none) {
        result.u_trajectory.final_state = u_eng.state();
        result.v_trajectory.final_state = v_eng.state();
    }
    return result;
}

}  // namespace adns
