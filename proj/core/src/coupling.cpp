#include "adns/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "adns/errors.hpp"
#include "adns/parallel.hpp"
#include "adns/stats.hpp"

namespace adns {

namespace {

struct ReplicaStats {
    std::vector<double> sup_m;  // per martingale cell: sup (M0 - gamma QV0)
    double sup_E0 = 0;
    double sup_E1 = 0;
    bool blown_up = false;
};

ReplicaStats run_replica(const SolverConfig& cfg, const TailPlan& plan, long replica) {
    ReplicaStats st;
    st.sup_m.assign(plan.martingale_cells.size(), 0.0);  // M0 - gamma QV0 = 0 at t = 0
    try {
        StepEngine engine(cfg, static_cast<std::uint64_t>(replica));
        const long n_steps = cfg.n_steps();
        for (long s = 1; s <= n_steps; ++s) {
            engine.advance();
            const LedgerRow& r = engine.accum().row();
            for (std::size_t c = 0; c < plan.martingale_cells.size(); ++c) {
                const double v = r.M0 - plan.martingale_cells[c].gamma * r.QV0;
                st.sup_m[c] = std::max(st.sup_m[c], v);
            }
        }
        st.sup_E0 = engine.accum().row().sup_E0;
        st.sup_E1 = engine.accum().row().sup_E1;
    } catch (const BlowupError&) {
        st.blown_up = true;
    }
    return st;
}

TailRow make_row(std::string kind, double gamma, double R, double bound, double horizon,
                 long exceed, long effective, long excluded) {
    TailRow row;
    row.kind = std::move(kind);
    row.gamma = gamma;
    row.R = R;
    row.replicas = effective;
    row.exceedances = exceed;
    row.excluded = excluded;
    row.frequency = effective > 0 ? static_cast<double>(exceed) / effective : 0.0;
    row.ci_halfwidth = wilson_halfwidth(exceed, effective);
    row.bound = bound;
    row.horizon = horizon;
    return row;
}

}  // namespace

TailReport run_tail_plan(const SolverConfig& cfg, const TailPlan& plan, int threads) {
    SolverConfig run_cfg = cfg;
    run_cfg.t_final = plan.horizon;
    run_cfg.storage = FieldStorage::none;
    run_cfg.validate();
    const double K = run_cfg.sigma.k_h1();

    std::vector<ReplicaStats> stats(plan.replicas);
    parallel_for(plan.replicas, threads,
                 [&](long r) { stats[r] = run_replica(run_cfg, plan, r); });

    long excluded = 0;
    for (const auto& st : stats)
        if (st.blown_up) ++excluded;
    const long effective = plan.replicas - excluded;

    TailReport report;
    for (std::size_t c = 0; c < plan.martingale_cells.size(); ++c) {
        const auto& cell = plan.martingale_cells[c];
        long exceed = 0;
        for (const auto& st : stats)
            if (!st.blown_up && st.sup_m[c] >= cell.R) ++exceed;
        report.rows.push_back(make_row("M", cell.gamma, cell.R, std::exp(-cell.gamma * cell.R),
                                       plan.horizon, exceed, effective, excluded));
    }
    auto e_bound = [&](double R) { return K > 0.0 ? std::exp(-R / (2.0 * K)) : 0.0; };
    for (double R : plan.e0_thresholds) {
        long exceed = 0;
        for (const auto& st : stats)
            if (!st.blown_up && st.sup_E0 >= 2.0 * R) ++exceed;
        report.rows.push_back(
            make_row("E0", 0.0, R, e_bound(R), plan.horizon, exceed, effective, excluded));
    }
    for (double R : plan.e1_thresholds) {
        long exceed = 0;
        for (const auto& st : stats)
            if (!st.blown_up && st.sup_E1 >= 2.0 * R) ++exceed;
        report.rows.push_back(
            make_row("E1", 0.0, R, e_bound(R), plan.horizon, exceed, effective, excluded));
    }
    return report;
}

TailRow exp_martingale_tail(const SolverConfig& cfg, double gamma, double R, long replicas,
                            double horizon, int threads) {
    if (!(gamma > 0.0) || !(R > 0.0))
        throw std::invalid_argument("exp_martingale_tail: gamma and R must be positive");
    TailPlan plan;
    plan.martingale_cells.push_back({gamma, R});
    plan.replicas = replicas;
    plan.horizon = horizon;
    return run_tail_plan(cfg, plan, threads).rows.front();
}

TailRow tail_probability_E(const SolverConfig& cfg, EnergyFunctional functional, double R,
                           long replicas, double horizon, int threads) {
    if (!(R > 0.0)) throw std::invalid_argument("tail_probability_E: R must be positive");
    TailPlan plan;
    if (functional == EnergyFunctional::E0)
        plan.e0_thresholds.push_back(R);
    else
        plan.e1_thresholds.push_back(R);
    plan.replicas = replicas;
    plan.horizon = horizon;
    return run_tail_plan(cfg, plan, threads).rows.front();
}

bool event_ER(const EnergyLedger& ledger, double R) {
    return ledger.sup_E0() <= 2.0 * R && ledger.sup_E1() <= 2.0 * R;
}

std::vector<double> delta_bound_curve(double delta0_l2_sq, double c0, const EnergyLedger& u_ledger) {
    std::vector<double> bound;
    bound.reserve(u_ledger.rows().size());
    for (const LedgerRow& r : u_ledger.rows())
        bound.push_back(delta0_l2_sq *
                        std::exp(-2.0 * u_ledger.lambda() * r.t + c0 * r.gn_integral));
    return bound;
}

CoupledRunSummary summarize_coupled_run(int run_id, const CoupledResult& run, double R) {
    CoupledRunSummary s;
    s.run_id = run_id;
    s.lambda = run.record.lambda;
    s.K = run.record.K;
    s.R = R;
    s.u0_h1_sq = run.record.u0_h1_sq;
    s.delta0_l2_sq = run.record.delta0_l2_sq;
    s.times = run.record.times;
    s.delta_l2_sq = run.record.delta_l2_sq;
    s.gn_integral.reserve(run.u_ledger.rows().size());
    for (const LedgerRow& r : run.u_ledger.rows()) s.gn_integral.push_back(r.gn_integral);
    return s;
}

CalibratedConstants calibrate_constants(const std::vector<CoupledRunSummary>& ensemble) {
    CalibratedConstants out;
    bool informative = false;
    for (const auto& run : ensemble) {
        if (run.delta0_l2_sq <= 0.0) continue;
        for (std::size_t i = 1; i < run.times.size(); ++i) {
            const double t = run.times[i];
            const double dsq = run.delta_l2_sq[i];
            if (dsq <= 0.0) continue;
            informative = true;
            const double log_ratio = std::log(dsq / run.delta0_l2_sq);
            // Pathwise form: log ratio + 2 lambda t <= C0 G(t).
            const double needed0 = log_ratio + 2.0 * run.lambda * t;
            const double G = run.gn_integral[i];
            if (needed0 > 0.0 && G > 0.0 && needed0 / G > out.c0) {
                out.c0 = needed0 / G;
                out.c0_run_id = run.run_id;
            }
            // Aggregated form: log ratio <= (-2 lambda + 1) t + C2 (K t + R + |u0|_{H1}^2).
            const double needed2 = log_ratio + (2.0 * run.lambda - 1.0) * t;
            const double denom = run.K * t + run.R + run.u0_h1_sq;
            if (needed2 > 0.0 && denom > 0.0 && needed2 / denom > out.c2) {
                out.c2 = needed2 / denom;
                out.c2_run_id = run.run_id;
            }
        }
    }
    if (!informative)
        throw CalibrationUndefinedError("calibration ensemble has no run with delta != 0");
    return out;
}

void fill_bound_curves(CouplingRecord& record, const EnergyLedger& u_ledger, double c0_hat,
                       double c2_hat, double R) {
    record.c0_hat = c0_hat;
    record.c2_hat = c2_hat;
    record.R = R;
    record.bound_c0 = delta_bound_curve(record.delta0_l2_sq, c0_hat, u_ledger);
    record.bound_c2.clear();
    record.bound_c2.reserve(record.times.size());
    const double rate = -2.0 * record.lambda + 1.0 + c2_hat * record.K;
    const double offset = c2_hat * (R + record.u0_h1_sq);
    for (double t : record.times)
        record.bound_c2.push_back(record.delta0_l2_sq * std::exp(rate * t + offset));
    record.er_flag = event_ER(u_ledger, R);
}

ContractionVerdict contraction_check(const CouplingRecord& record, double c2_hat, double R,
                                     double floor_rel) {
    ContractionVerdict v;
    const double threshold = 0.5 * (1.0 + c2_hat * record.K);
    if (!record.er_flag) {
        v.status = ContractionVerdict::Status::no_claim;
        v.detail = "E_R fails on this path; the contraction lemma makes no claim";
        return v;
    }
    if (!(record.lambda > threshold)) {
        std::ostringstream os;
        os << "lambda = " << record.lambda << " below the contraction threshold "
           << threshold << "; no claim";
        v.status = ContractionVerdict::Status::no_claim;
        v.detail = os.str();
        return v;
    }
    const double rate = -2.0 * record.lambda + 1.0 + c2_hat * record.K;
    const double offset = c2_hat * (R + record.u0_h1_sq);
    for (std::size_t i = 0; i < record.times.size(); ++i) {
        const double bound = record.delta0_l2_sq * std::exp(rate * record.times[i] + offset);
        if (record.delta_l2_sq[i] > bound) {
            v.status = ContractionVerdict::Status::fail;
            v.first_violation_t = record.times[i];
            std::ostringstream os;
            os << "bound violated at t = " << record.times[i] << ": |delta|^2 = "
               << record.delta_l2_sq[i] << " > " << bound;
            v.detail = os.str();
            return v;
        }
    }
    const double final_delta = std::sqrt(record.delta_l2_sq.back());
    const double floor = floor_rel * std::sqrt(record.delta0_l2_sq);
    if (record.delta0_l2_sq > 0.0 && final_delta > floor) {
        v.status = ContractionVerdict::Status::fail;
        v.first_violation_t = record.times.back();
        std::ostringstream os;
        os << "terminal |delta| = " << final_delta << " above the floor " << floor;
        v.detail = os.str();
        return v;
    }
    v.status = ContractionVerdict::Status::pass;
    v.detail = "contraction bound holds at every sample time";
    return v;
}

}  // namespace adns
