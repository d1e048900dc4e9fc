#include "qthermo/thermo.hpp"

#include "qthermo/errors.hpp"
#include "qthermo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qthermo {

namespace {

constexpr double kRadiusFloor = 1e-12;
constexpr double kMaxStep = 0.05;
const double kInf = std::numeric_limits<double>::infinity();
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double dot(const Field3& h, const BlochState& r) {
    return h.hx * r.x + h.hy * r.y + h.hz * r.z;
}

double atanh_capped(double r) {
    return std::atanh(std::min(r, 1.0 - 1e-12));
}

struct StepIncrements {
    double dq_stand = 0.0, dw_stand = 0.0;
    double dq_entro = 0.0, dw_entro = 0.0, dw_star = 0.0;
    double dq_ergo = 0.0, dw_ergo = 0.0;
    double dq_op = 0.0;
    double ds_flux = 0.0;
    bool radius_guard = false;
};

StepIncrements ledger_step(const BlochState& s1, const Field3& h1, const BlochState& s2,
                           const Field3& h2, const Field3& h0) {
    const double dx = s2.x - s1.x, dy = s2.y - s1.y, dz = s2.z - s1.z;
    if (std::sqrt(dx * dx + dy * dy + dz * dz) >= kMaxStep) {
        throw ValidationError("trajectory grid too coarse: |dr| >= 0.05 in one step");
    }
    StepIncrements inc;

    const double mx = 0.5 * (s1.x + s2.x), my = 0.5 * (s1.y + s2.y),
                 mz = 0.5 * (s1.z + s2.z);
    const double mhx = 0.5 * (h1.hx + h2.hx), mhy = 0.5 * (h1.hy + h2.hy),
                 mhz = 0.5 * (h1.hz + h2.hz);
    const double dhx = h2.hx - h1.hx, dhy = h2.hy - h1.hy, dhz = h2.hz - h1.hz;

    inc.dq_stand = -(mhx * dx + mhy * dy + mhz * dz);
    inc.dw_stand = -(mx * dhx + my * dhy + mz * dhz);

    const double r1 = s1.norm(), r2 = s2.norm();
    const double u1 = -dot(h1, s1), u2 = -dot(h2, s2);
    const double dr = r2 - r1;
    if (r1 < kRadiusFloor || r2 < kRadiusFloor) {
        inc.radius_guard = true;
    } else {
        inc.dq_entro = 0.5 * (u1 / r1 + u2 / r2) * dr;
    }
    inc.dw_star = inc.dq_stand - inc.dq_entro;
    inc.dw_entro = inc.dw_stand + inc.dw_star;

    const double hm1 = h1.magnitude(), hm2 = h2.magnitude();
    inc.dq_ergo = -0.5 * (hm1 + hm2) * dr;
    const double e1 = u1 + hm1 * r1, e2 = u2 + hm2 * r2;
    inc.dw_ergo = (e2 - e1) - 0.5 * (r1 + r2) * (hm2 - hm1);

    inc.dq_op = -(h0.hx * dx + h0.hy * dy + h0.hz * dz);
    inc.ds_flux = -0.5 * (atanh_capped(r1) + atanh_capped(r2)) * dr;
    return inc;
}

} // namespace

double internal_energy(const BlochState& state, const Field3& field) {
    return -dot(field, state);
}

ErgotropyParts ergotropy_parts(const BlochState& state, const Field3& field) {
    const double u = internal_energy(state, field);
    const double h = field.magnitude();
    ErgotropyParts parts;
    parts.total = u + h * state.norm();
    parts.incoherent = 2.0 * std::max(0.0, u);
    parts.coherent = parts.total - parts.incoherent;
    return parts;
}

double ergotropy_qubit(double coherence, double internal) {
    if (!std::isfinite(coherence) || !std::isfinite(internal)) {
        throw ValidationError("coherence and internal energy must be finite");
    }
    if (coherence < 0.0) throw ValidationError("coherence must be >= 0");
    return internal + std::sqrt(coherence * coherence + internal * internal);
}

Temperatures temperatures(const BlochState& state, const Field3& field) {
    const double r = state.norm();
    const double h = field.magnitude();
    if (r < kRadiusFloor) return {kInf, kInf, kInf};
    if (h == 0.0) return {kNaN, kNaN, kNaN};
    if (r >= 1.0) return {0.0, 0.0, 0.0};
    const double ath = std::atanh(r);
    const double d = dot(field, state);
    Temperatures out;
    out.t_ergo = h / ath;
    out.t_entro = d / (r * ath);
    out.t_stand = (d == 0.0) ? kInf : h * h * r / (d * ath);
    return out;
}

EntropyProduction entropy_production_step(const BlochState& prev, const BlochState& next,
                                          const BlochState& fixed, const Field3& field) {
    if (fixed.norm() >= 1.0 - 1e-12) {
        throw ValidationError("entropy production needs a mixed stationary state");
    }
    EntropyProduction out;
    out.sigma = relative_entropy_qubit(prev, fixed) - relative_entropy_qubit(next, fixed);
    const BlochState prev_pi = passive_companion(prev, field);
    const BlochState next_pi = passive_companion(next, field);
    out.sigma_passive =
        relative_entropy_qubit(prev_pi, fixed) - relative_entropy_qubit(next_pi, fixed);
    out.sigma_nonpassive = out.sigma - out.sigma_passive;
    return out;
}

double ThermoLedger::closure_defect_stand() const {
    double worst = 0.0;
    for (const auto& row : rows) {
        worst = std::max(worst,
                         std::abs((row.U - rows.front().U) - (row.Q_stand + row.W_stand)));
    }
    return worst;
}

double ThermoLedger::closure_defect_entro() const {
    double worst = 0.0;
    for (const auto& row : rows) {
        worst = std::max(worst,
                         std::abs((row.U - rows.front().U) - (row.Q_entro + row.W_entro)));
    }
    return worst;
}

double ThermoLedger::closure_defect_ergo() const {
    double worst = 0.0;
    for (const auto& row : rows) {
        worst = std::max(worst,
                         std::abs((row.U - rows.front().U) - (row.Q_ergo + row.W_ergo)));
    }
    return worst;
}

ThermoLedger accumulate_ledger(const Trajectory& traj) {
    const std::size_t n = traj.times.size();
    if (n < 2 || traj.states.size() != n || traj.fields.size() != n) {
        throw ValidationError("trajectory must hold >= 2 aligned samples");
    }
    ThermoLedger ledger;
    ledger.rows.reserve(n);
    ledger.s_flux.reserve(n);

    const Field3 h0 = traj.fields.front();
    double q_stand = 0.0, w_stand = 0.0, q_entro = 0.0, w_entro = 0.0, w_star = 0.0;
    double q_ergo = 0.0, w_ergo = 0.0, q_op = 0.0, s_flux = 0.0;

    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const auto inc = ledger_step(traj.states[i - 1], traj.fields[i - 1],
                                         traj.states[i], traj.fields[i], h0);
            q_stand += inc.dq_stand;
            w_stand += inc.dw_stand;
            q_entro += inc.dq_entro;
            w_entro += inc.dw_entro;
            w_star += inc.dw_star;
            q_ergo += inc.dq_ergo;
            w_ergo += inc.dw_ergo;
            q_op += inc.dq_op;
            s_flux += inc.ds_flux;
            ledger.radius_underflow = ledger.radius_underflow || inc.radius_guard;
        }
        const BlochState& st = traj.states[i];
        const Field3& h = traj.fields[i];
        LedgerRow row;
        row.t = traj.times[i];
        row.x = st.x;
        row.y = st.y;
        row.z = st.z;
        row.r = st.norm();
        row.U = internal_energy(st, h);
        row.S = von_neumann_entropy(st);
        row.C = h.magnitude() > 0.0 ? coherence_l1(st, h) : std::hypot(st.x, st.y);
        const auto parts = ergotropy_parts(st, h);
        row.E = parts.total;
        row.E_I = parts.incoherent;
        row.E_C = parts.coherent;
        row.Q_stand = q_stand;
        row.W_stand = w_stand;
        row.Q_entro = q_entro;
        row.W_entro = w_entro;
        row.W_star = w_star;
        row.Q_ergo = q_ergo;
        row.W_ergo = w_ergo;
        row.Q_op = q_op;
        const auto temps = temperatures(st, h);
        row.T_stand = temps.t_stand;
        row.T_entro = temps.t_entro;
        row.T_ergo = temps.t_ergo;
        ledger.rows.push_back(row);
        ledger.s_flux.push_back(s_flux);
    }
    return ledger;
}

ThermoLedger accumulate_with_refinement(const ChannelModel& m, const BlochState& r0,
                                        double horizon, std::size_t n0, double tol,
                                        int max_rounds) {
    if (n0 < 2) throw ValidationError("n0 must be >= 2");
    std::size_t n = n0;
    ThermoLedger coarse = accumulate_ledger(sample_trajectory(m, r0, horizon, n));
    for (int round = 0; round < max_rounds; ++round) {
        n = 2 * n - 1;
        ThermoLedger fine = accumulate_ledger(sample_trajectory(m, r0, horizon, n));
        const LedgerRow& a = coarse.rows.back();
        const LedgerRow& b = fine.rows.back();
        double diff = 0.0;
        diff = std::max(diff, std::abs(a.Q_stand - b.Q_stand));
        diff = std::max(diff, std::abs(a.W_stand - b.W_stand));
        diff = std::max(diff, std::abs(a.Q_entro - b.Q_entro));
        diff = std::max(diff, std::abs(a.W_entro - b.W_entro));
        diff = std::max(diff, std::abs(a.Q_ergo - b.Q_ergo));
        diff = std::max(diff, std::abs(a.W_ergo - b.W_ergo));
        diff = std::max(diff, std::abs(coarse.s_flux.back() - fine.s_flux.back()));
        if (diff <= tol) return fine;
        coarse = std::move(fine);
    }
    throw NumericalError("ledger refinement failed to reach the requested tolerance");
}

AdiabaticResult adiabatic_time_tc(const Trajectory& traj, double xtol) {
    const ThermoLedger ledger = accumulate_ledger(traj);
    AdiabaticResult res;

    // cumulative entropy-based heat up to an off-grid time t in (t_k, t_k+1]
    auto q_entro_at = [&](std::size_t k, double t) {
        const BlochState st = traj.at(t);
        const Field3 h = traj.field(t);
        const double r1 = traj.states[k].norm(), r2 = st.norm();
        if (r1 < kRadiusFloor || r2 < kRadiusFloor) return ledger.rows[k].Q_entro;
        const double u1 = internal_energy(traj.states[k], traj.fields[k]);
        const double u2 = internal_energy(st, h);
        return ledger.rows[k].Q_entro + 0.5 * (u1 / r1 + u2 / r2) * (r2 - r1);
    };

    for (std::size_t i = 2; i < ledger.rows.size(); ++i) {
        const double qa = ledger.rows[i - 1].Q_entro;
        const double qb = ledger.rows[i].Q_entro;
        if (qa * qb < 0.0) {
            const std::size_t k = i - 1;
            auto f = [&](double t) { return q_entro_at(k, t); };
            res.roots.push_back(bisect_root(f, ledger.rows[k].t, ledger.rows[i].t, xtol));
        }
    }
    if (!res.roots.empty()) res.t_c = res.roots.front();
    return res;
}

EnvWorkSplit env_work_split(const ThermoLedger& ledger, std::size_t i) {
    if (i >= ledger.rows.size()) throw ValidationError("row index out of range");
    const LedgerRow& a = ledger.rows.front();
    const LedgerRow& b = ledger.rows[i];
    EnvWorkSplit out;
    out.w_star = b.W_star;
    // passive energies are -h r with h recovered from E = U + h r
    const double ha_r = a.E - a.U;
    const double hb_r = b.E - b.U;
    out.delta_u_pi = -hb_r + ha_r;
    out.delta_e = b.E - a.E;
    out.defect = out.w_star - out.delta_u_pi - out.delta_e;
    return out;
}

} // namespace qthermo
