#include "qthermo/nonmarkov.hpp"

#include "qthermo/errors.hpp"
#include "qthermo/numerics.hpp"
#include "qthermo/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qthermo {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

struct Run {
    std::size_t first_step = 0; // index of first strictly anti step
    std::size_t last_step = 0;  // index of last strictly anti step
};

std::vector<Run> classify_runs(const std::vector<double>& fs, int orientation) {
    double scale = 0.0;
    for (double v : fs) scale = std::max(scale, std::abs(v));
    const double tiny = 1e-13 * std::max(scale, 1e-300);
    std::vector<Run> runs;
    bool open = false;
    Run cur;
    for (std::size_t i = 0; i + 1 < fs.size(); ++i) {
        const double df = fs[i + 1] - fs[i];
        const int s = (std::abs(df) <= tiny) ? 0 : sgn(df);
        if (s == -orientation) {
            if (!open) {
                open = true;
                cur.first_step = i;
            }
            cur.last_step = i;
        } else if (s == orientation && open) {
            runs.push_back(cur);
            open = false;
        }
        // neutral steps leave the current run open
    }
    if (open) runs.push_back(cur);
    return runs;
}

/// Bisect a sign change of g over [a, b] if one brackets; NaN otherwise.
double refine_boundary(const std::function<double(double)>& g, double a, double b) {
    const double ga = g(a), gb = g(b);
    if (ga == 0.0) return a;
    if (gb == 0.0) return b;
    if (ga * gb > 0.0) return kNaN;
    return bisect_root(g, a, b, 1e-9);
}

/// Negative stretches of the channel decay rate on [0, horizon], endpoint
/// roots localized to 1e-9.  For the factorizing families these are exactly
/// the windows on which every monitored signal runs backwards.
std::vector<MonotoneInterval> negative_rate_windows(const ChannelModel& m, double horizon,
                                                    std::size_t base_n) {
    auto rate = [&m](double t) { return m.decay_rate(t); };
    std::vector<double> nodes{0.0};
    for (const auto& [a, b] : find_brackets(rate, 0.0, horizon, std::max<std::size_t>(base_n, 512))) {
        nodes.push_back(a == b ? a : bisect_root(rate, a, b, 1e-9));
    }
    nodes.push_back(horizon);
    std::sort(nodes.begin(), nodes.end());

    std::vector<MonotoneInterval> windows;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        const double u = nodes[i], v = nodes[i + 1];
        if (v - u <= 1e-12) continue;
        if (rate(0.5 * (u + v)) < 0.0) {
            if (!windows.empty() && windows.back().t_end >= u - 1e-12) {
                windows.back().t_end = v;
            } else {
                windows.push_back({u, v});
            }
        }
    }
    return windows;
}

double sum_against(const std::function<double(double)>& F, int orientation,
                   const std::vector<MonotoneInterval>& windows) {
    double total = 0.0;
    for (const auto& w : windows) {
        total += std::max(0.0, orientation * (F(w.t_begin) - F(w.t_end)));
    }
    return total;
}

void require_horizon(double horizon) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) {
        throw ValidationError("horizon must be positive and finite");
    }
}

} // namespace

std::vector<MonotoneInterval> sign_intervals(
    const std::function<double(double)>& F, double t0, double t1, int orientation,
    std::size_t base_n, const std::function<double(double)>* rate_sign) {
    if (orientation != 1 && orientation != -1) {
        throw ValidationError("orientation must be +1 or -1");
    }
    if (!(t1 > t0)) throw ValidationError("t1 must exceed t0");
    if (base_n < 16) throw ValidationError("base_n must be >= 16");

    std::size_t n = base_n;
    std::vector<double> ts, fs;
    auto sample = [&](std::size_t steps) {
        ts.assign(steps + 1, 0.0);
        fs.assign(steps + 1, 0.0);
        for (std::size_t i = 0; i <= steps; ++i) {
            ts[i] = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(steps);
            fs[i] = F(ts[i]);
        }
    };

    sample(n);
    std::vector<Run> runs = classify_runs(fs, orientation);
    bool stable = false;
    for (int round = 0; round < 12; ++round) {
        const std::size_t n2 = 2 * n;
        sample(n2);
        std::vector<Run> runs2 = classify_runs(fs, orientation);
        if (runs2.size() == runs.size()) {
            runs = runs2;
            n = n2;
            stable = true;
            break;
        }
        runs = runs2;
        n = n2;
    }
    if (!stable && !runs.empty()) {
        throw NumericalError("monotonicity structure did not stabilize under refinement");
    }

    const double dt = (t1 - t0) / static_cast<double>(n);
    const double delta = std::max(1e-10, 1e-6 * dt);
    auto slope = [&](double t) {
        const double lo = std::max(t0, t - delta);
        const double hi = std::min(t1, t + delta);
        return F(hi) - F(lo);
    };

    std::vector<MonotoneInterval> out;
    for (const auto& run : runs) {
        MonotoneInterval iv;
        // left endpoint: extremum between the preceding node and the first
        // strictly anti step's right node
        if (run.first_step == 0) {
            iv.t_begin = t0;
        } else {
            const double a = ts[run.first_step - 1];
            const double b = ts[run.first_step + 1];
            double t = kNaN;
            if (rate_sign) {
                t = refine_boundary(*rate_sign, a, b);
            }
            if (std::isnan(t)) t = refine_boundary(slope, a, b);
            iv.t_begin = std::isnan(t) ? ts[run.first_step] : t;
        }
        if (run.last_step + 1 >= n) {
            iv.t_end = t1; // still running against the flow at the horizon
        } else {
            const double a = ts[run.last_step];
            const double b = ts[run.last_step + 2];
            double t = kNaN;
            if (rate_sign) {
                t = refine_boundary(*rate_sign, a, b);
            }
            if (std::isnan(t)) t = refine_boundary(slope, a, b);
            iv.t_end = std::isnan(t) ? ts[run.last_step + 1] : t;
        }
        out.push_back(iv);
    }
    return out;
}

MeasureOutcome measure_NF(const std::function<double(double)>& F, double t0, double t1,
                          int orientation, std::size_t base_n,
                          const std::function<double(double)>* rate_sign) {
    MeasureOutcome out;
    out.z_opt = kNaN;
    out.intervals = sign_intervals(F, t0, t1, orientation, base_n, rate_sign);
    out.value = sum_against(F, orientation, out.intervals);
    return out;
}

MeasureOutcome measure_ND_blp(const ChannelModel& m, double horizon, std::size_t base_n) {
    m.validate();
    require_horizon(horizon);
    const BlochState plus(1.0, 0.0, 0.0);
    const BlochState minus(-1.0, 0.0, 0.0);
    auto F = [&](double t) {
        return trace_distance(m.bloch_at(plus, t), m.bloch_at(minus, t));
    };
    MeasureOutcome out;
    out.z_opt = kNaN;
    out.intervals = negative_rate_windows(m, horizon, base_n);
    out.value = sum_against(F, -1, out.intervals);
    return out;
}

MeasureOutcome measure_NC(const ChannelModel& m, double horizon, std::size_t base_n) {
    m.validate();
    require_horizon(horizon);
    const BlochState probe(1.0, 0.0, 0.0);
    auto F = [&](double t) {
        const BlochState st = m.bloch_at(probe, t);
        const Field3 h = m.field_at(t);
        return h.magnitude() > 0.0 ? coherence_l1(st, h) : std::hypot(st.x, st.y);
    };
    MeasureOutcome out;
    out.z_opt = kNaN;
    out.intervals = negative_rate_windows(m, horizon, base_n);
    out.value = sum_against(F, -1, out.intervals);
    return out;
}

MeasureOutcome measure_NQ_ergo(const ChannelModel& m, double horizon, std::size_t base_n) {
    m.validate();
    require_horizon(horizon);
    const BlochState probe(1.0, 0.0, 0.0);
    const double h0 = m.field_at(0.0).magnitude();
    const double hH = m.field_at(horizon).magnitude();
    if (std::abs(h0 - hH) > 1e-12 * std::max(1.0, h0)) {
        throw WitnessInapplicable("field magnitude is not constant");
    }
    auto F = [&](double t) { return h0 * (1.0 - m.bloch_at(probe, t).norm()); };
    MeasureOutcome out;
    out.z_opt = kNaN;
    out.intervals = negative_rate_windows(m, horizon, base_n);
    out.value = sum_against(F, +1, out.intervals);
    return out;
}

MeasureOutcome measure_NQ_entro(const ChannelModel& m, double horizon, std::size_t base_n) {
    m.validate();
    require_horizon(horizon);
    if (!m.is_unital()) throw WitnessInapplicable("channel not unital");

    // the witness needs U(t) to keep one sign along the evolution
    {
        const BlochState probe(0.6, 0.0, 0.8);
        double lo = 0.0, hi = 0.0;
        for (int i = 0; i <= 64; ++i) {
            const double t = horizon * i / 64.0;
            const double u = internal_energy(m.bloch_at(probe, t), m.field_at(t));
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
        if (lo * hi < -1e-12 * std::max(1.0, hi - lo)) {
            throw WitnessInapplicable("internal energy changes sign");
        }
    }

    MeasureOutcome out;
    out.z_opt = kNaN;
    out.intervals = negative_rate_windows(m, horizon, base_n);
    if (out.intervals.empty()) return out;

    // z-constant unital families: Q_entro(t) = U0 ln r(t) for pure probes,
    // so the measure reduces to endpoint radii on the backflow windows
    const bool z_const = m.family == Family::PD || m.family == Family::NMPD ||
                         m.family == Family::OhmicPD;
    if (!z_const) {
        throw WitnessInapplicable("no closed entropy-heat signal for this family");
    }

    const double h = m.field_at(0.0).magnitude();
    const BlochState eq(1.0, 0.0, 0.0);
    std::vector<double> c2a, c2b; // squared coherence at window endpoints
    for (const auto& w : out.intervals) {
        const BlochState sa = m.bloch_at(eq, w.t_begin);
        const BlochState sb = m.bloch_at(eq, w.t_end);
        c2a.push_back(sa.x * sa.x + sa.y * sa.y);
        c2b.push_back(sb.x * sb.x + sb.y * sb.y);
    }
    auto value_at = [&](double z0) {
        const double z2 = z0 * z0;
        double sum = 0.0;
        for (std::size_t i = 0; i < c2a.size(); ++i) {
            const double ra2 = z2 + (1.0 - z2) * c2a[i];
            const double rb2 = z2 + (1.0 - z2) * c2b[i];
            sum += 0.5 * std::log(rb2 / ra2);
        }
        return h * z0 * sum;
    };

    double best_z = 1e-3, best_v = value_at(1e-3);
    std::size_t best_k = 1;
    for (std::size_t k = 2; k <= 999; ++k) {
        const double z = 1e-3 * static_cast<double>(k);
        const double v = value_at(z);
        if (v > best_v) {
            best_v = v;
            best_z = z;
            best_k = k;
        }
    }
    const double lo = (best_k == 1) ? 0.0 : 1e-3 * static_cast<double>(best_k - 1);
    const double hi = (best_k == 999) ? 1.0 : 1e-3 * static_cast<double>(best_k + 1);
    const auto [z_ref, v_ref] = golden_max(value_at, lo, hi, 1e-12);
    if (v_ref > best_v) {
        best_v = v_ref;
        best_z = z_ref;
    }
    out.value = best_v;
    out.z_opt = best_z;
    return out;
}

TemperatureWitness witness_temperature(const Trajectory& traj, std::size_t base_n) {
    if (traj.times.size() < 2) {
        throw ValidationError("temperature witness needs at least two trajectory points");
    }
    for (const auto& s : traj.states) {
        const double r = s.norm();
        if (r <= 0.0 || r >= 1.0) {
            throw ValidationError("temperature witness requires 0 < r < 1 along the trajectory");
        }
    }
    const double t0 = traj.times.front();
    const double t1 = traj.times.back();
    auto F = [&](double t) {
        return temperatures(traj.at(t), traj.field(t)).t_ergo;
    };
    const auto falling = sign_intervals(F, t0, t1, +1, base_n);
    const auto rising = sign_intervals(F, t0, t1, -1, base_n);
    auto variation = [&](const std::vector<MonotoneInterval>& runs) {
        double sum = 0.0;
        for (const auto& w : runs) sum += std::abs(F(w.t_end) - F(w.t_begin));
        return sum;
    };
    TemperatureWitness out;
    out.detected = !falling.empty() && !rising.empty();
    if (out.detected) {
        const double drop = variation(falling);
        const double rise = variation(rising);
        out.intervals = (drop <= rise) ? falling : rising;
        out.backflow_total = std::min(drop, rise);
    }
    return out;
}

double default_measure_horizon(const ChannelModel& m) {
    m.validate();
    switch (m.family) {
    case Family::OhmicPD:
        return 50.0 / m.omega_c;
    case Family::NMPD:
    case Family::NMAD:
        return 20.0 / m.gamma + 5.0 / m.big_gamma;
    default:
        return 20.0 / m.gamma;
    }
}

} // namespace qthermo
