#include "adns/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "adns/errors.hpp"
#include "adns/parallel.hpp"
#include "adns/stats.hpp"

namespace adns {

namespace {

// max_x d/dx tanh(x^2), the Lipschitz constant of r -> tanh(r^2) on r >= 0.
constexpr double kTanhSquareSlope = 1.1141;
constexpr double kSquashMargin = 1.12;

constexpr std::uint64_t kWitnessSeed = 0x57544e4553533031ull;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

// Real even low-pass bump centered at the origin, as spectral coefficients.
ScalarField spectral_bump(const Grid& grid, double width_modes) {
    ScalarField b(grid);
    for (int j1 = 0; j1 < grid.n_h; ++j1) {
        const double m1 = grid.mode1(j1);
        for (int j2 = 0; j2 < grid.n_v; ++j2) {
            const double m2 = grid.mode2(j2);
            if (!grid.in_dealias_mask(j1, j2)) continue;
            const double w = std::exp(-(m1 * m1 + m2 * m2) / (2.0 * width_modes * width_modes));
            b.at(j1, j2) = Complex(w, 0.0);
        }
    }
    return b;
}

}  // namespace

std::vector<Observable> canonical_observables(const Grid& grid) {
    std::vector<Observable> phis;

    // phi1: squashed total energy.
    phis.push_back(Observable{
        "energy_tanh",
        [](const SpectralVelocity& u) { return std::tanh(l2_norm_sq(u)) / kSquashMargin; },
        kTanhSquareSlope / kSquashMargin,
        1.0 / kSquashMargin,
    });

    // phi2: projection on a fixed unit-L2 divergence-free witness.
    {
        auto w = std::make_shared<SpectralVelocity>(
            random_divfree_field(grid, kWitnessSeed, 3.0, 1.0));
        const double norm = std::sqrt(l2_norm_sq(*w));
        if (norm == 0.0) throw std::logic_error("witness field degenerated to zero");
        *w *= 1.0 / norm;
        phis.push_back(Observable{
            "witness_projection",
            [w](const SpectralVelocity& u) { return clamp_unit(l2_inner(u, *w)); },
            1.0,
            1.0,
        });
    }

    // phi3: squashed horizontal dissipation. The derivative gains up to the
    // largest retained |k1| in L2, so that gain is divided out up front.
    {
        const double k1_gain = std::max(1.0, grid.max_mode1() * grid.wavenumber_unit());
        phis.push_back(Observable{
            "d1_energy_tanh",
            [k1_gain](const SpectralVelocity& u) {
                return std::tanh(norm_snapshot(u).d1_sq) / (kSquashMargin * k1_gain);
            },
            kTanhSquareSlope / kSquashMargin,
            1.0 / (kSquashMargin * k1_gain),
        });
    }

    // phi4: u1 mollified at the origin against a unit-L2 bump.
    {
        auto rho = std::make_shared<ScalarField>(spectral_bump(grid, 2.0));
        const double norm = std::sqrt(l2_norm_sq(*rho));
        *rho *= 1.0 / norm;
        phis.push_back(Observable{
            "u1_at_origin",
            [rho](const SpectralVelocity& u) { return clamp_unit(l2_inner(u.comp1(), *rho)); },
            1.0,
            1.0,
        });
    }

    // phi5: vorticity paired with a bump normalized to unit gradient norm,
    // so the pairing is 1-Lipschitz in u.
    {
        auto b = std::make_shared<ScalarField>(spectral_bump(grid, 2.0));
        double grad_sq = 0.0;
        const double area = grid.box_length * grid.box_length;
        for (int j1 = 0; j1 < grid.n_h; ++j1)
            for (int j2 = 0; j2 < grid.n_v; ++j2) {
                const double k1 = grid.k1(j1), k2 = grid.k2(j2);
                grad_sq += (k1 * k1 + k2 * k2) * std::norm(b->at(j1, j2));
            }
        grad_sq *= area;
        *b *= 1.0 / std::sqrt(grad_sq);
        phis.push_back(Observable{
            "vorticity_bump",
            [b](const SpectralVelocity& u) { return clamp_unit(l2_inner(curl(u), *b)); },
            1.0,
            1.0,
        });
    }

    return phis;
}

double time_average(const Trajectory& trajectory, const Observable& phi, double burn_in,
                    double stride) {
    if (trajectory.times.size() != trajectory.fields.size())
        throw std::invalid_argument("time_average: trajectory was not stored with sample fields");
    if (trajectory.times.size() < 2)
        throw std::invalid_argument("time_average: trajectory too short");
    const double sample_stride = trajectory.times[1] - trajectory.times[0];
    const double ratio = stride / sample_stride;
    const long thin = std::lround(ratio);
    if (thin < 1 || std::abs(ratio - thin) > 1e-9)
        throw std::invalid_argument("time_average: stride is not a multiple of the sampling stride");

    double acc = 0;
    long n = 0;
    for (std::size_t i = 0; i < trajectory.times.size(); i += thin) {
        if (trajectory.times[i] < burn_in - 1e-12) continue;
        acc += phi.eval(trajectory.fields[i]);
        ++n;
    }
    if (n == 0) throw std::invalid_argument("time_average: empty averaging window");
    return acc / static_cast<double>(n);
}

ErgodicReport uniqueness_gap(const SolverConfig& cfg, const InitSpec& u0, const InitSpec& v0,
                             const std::vector<Observable>& observables, double horizon,
                             double burn_in, double stride, double gap_threshold, double c2_hat,
                             int threads, std::uint64_t replica_u, std::uint64_t replica_v) {
    const double K = cfg.sigma.k_h1();
    if (!(cfg.lambda > 0.5 * (1.0 + c2_hat * K)))
        throw ConfigError("lambda: below the uniqueness threshold (1 + C2 K) / 2");
    const long obs_every = std::lround(stride / cfg.dt);
    if (obs_every < 1 || std::abs(stride - obs_every * cfg.dt) > 1e-9 * std::max(1.0, stride))
        throw ConfigError("ergodic.stride: must be a positive multiple of dt");

    SolverConfig run_cfg = cfg;
    run_cfg.t_final = horizon;
    run_cfg.output_every = static_cast<int>(obs_every);
    run_cfg.storage = FieldStorage::none;

    struct RunSamples {
        std::vector<std::vector<double>> values;  // per observable, post burn-in
    };
    RunSamples samples[2];
    const InitSpec* inits[2] = {&u0, &v0};
    const std::uint64_t replicas[2] = {replica_u, replica_v};
    for (auto& s : samples) s.values.resize(observables.size());

    parallel_for(2, std::min(threads, 2), [&](long which) {
        SolverConfig c = run_cfg;
        c.init = *inits[which];
        simulate(
            c,
            [&](long, double t, const SpectralVelocity& u) {
                if (t < burn_in - 1e-12) return;
                for (std::size_t p = 0; p < observables.size(); ++p)
                    samples[which].values[p].push_back(observables[p].eval(u));
            },
            replicas[which]);
    });

    ErgodicReport report;
    report.horizon = horizon;
    report.burn_in = burn_in;
    report.stride = stride;
    report.gap_threshold = gap_threshold;
    report.samples_per_run = static_cast<long>(samples[0].values.empty() ? 0 : samples[0].values[0].size());
    for (std::size_t p = 0; p < observables.size(); ++p) {
        const BatchStats su = batch_means(samples[0].values[p]);
        const BatchStats sv = batch_means(samples[1].values[p]);
        ErgodicRow row;
        row.id = observables[p].id;
        row.avg_u = su.mean;
        row.avg_v = sv.mean;
        row.gap = std::abs(su.mean - sv.mean);
        row.se_u = su.se;
        row.se_v = sv.se;
        const double budget = 3.0 * std::sqrt(su.se * su.se + sv.se * sv.se);
        row.pass = row.gap <= gap_threshold && row.gap <= std::max(budget, 1e-12);
        report.rows.push_back(row);
    }
    return report;
}

CesaroSeries coupling_limit_series(const CoupledResult& run,
                                   const std::vector<Observable>& observables) {
    const Trajectory& tu = run.u_trajectory;
    const Trajectory& tv = run.v_trajectory;
    if (tu.fields.size() != tu.times.size() || tv.fields.size() != tv.times.size())
        throw std::invalid_argument("coupling_limit_series: run was not stored with sample fields");

    CesaroSeries out;
    for (const auto& phi : observables) out.ids.push_back(phi.id);
    out.cesaro.resize(observables.size());

    std::vector<double> diff_sum(observables.size(), 0.0);
    double delta_sum = 0.0;
    long n = 0;
    for (std::size_t i = 1; i < tu.times.size(); ++i) {
        ++n;
        out.times.push_back(tu.times[i]);
        const double dl2 = std::sqrt(run.record.delta_l2_sq[i]);
        out.delta_l2.push_back(dl2);
        delta_sum += dl2;
        out.cesaro_delta.push_back(delta_sum / n);
        for (std::size_t p = 0; p < observables.size(); ++p) {
            diff_sum[p] += observables[p].eval(tu.fields[i]) - observables[p].eval(tv.fields[i]);
            out.cesaro[p].push_back(diff_sum[p] / n);
        }
    }
    return out;
}

}  // namespace adns
