#include "commands.hpp"

#include "svgplot.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/nonmarkov.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>

namespace qthermo::cli {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

/// Short human-readable number for verdict lines (CSV keeps full precision).
std::string verdict_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    std::string s = buf;
    if (s.find_first_of(".ein") == std::string::npos) s += ".0";
    return s;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

} // namespace

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

double effective_horizon(const ScenarioConfig& cfg) {
    if (cfg.horizon) {
        if (!(*cfg.horizon > 0.0)) throw ConfigError("time.horizon must be positive");
        return *cfg.horizon;
    }
    return default_measure_horizon(cfg.model);
}

std::size_t effective_grid(const ScenarioConfig& cfg) {
    const long n = cfg.grid.value_or(2001);
    if (n < 2) throw ConfigError("time.grid must be at least 2");
    return static_cast<std::size_t>(n);
}

CsvTable ledger_table(const ThermoLedger& ledger) {
    CsvTable t;
    t.header = {"t",       "x",       "y",      "z",       "r",      "U",      "S",
                "C",       "E",       "E_I",    "E_C",     "Q_stand", "W_stand",
                "Q_entro", "W_entro", "W_star", "Q_ergo",  "W_ergo",  "Q_op",
                "T_stand", "T_entro", "T_ergo"};
    t.rows.reserve(ledger.rows.size());
    for (const auto& r : ledger.rows) {
        t.rows.push_back({r.t, r.x, r.y, r.z, r.r, r.U, r.S, r.C, r.E, r.E_I, r.E_C, r.Q_stand,
                          r.W_stand, r.Q_entro, r.W_entro, r.W_star, r.Q_ergo, r.W_ergo, r.Q_op,
                          r.T_stand, r.T_entro, r.T_ergo});
    }
    return t;
}

void run_simulate(const ScenarioConfig& cfg, const std::string& out_dir) {
    cfg.model.validate();
    const BlochState s0 = initial_state(cfg);
    const auto traj =
        sample_trajectory(cfg.model, s0, effective_horizon(cfg), effective_grid(cfg));
    const auto ledger = accumulate_ledger(traj);

    ensure_out_dir(out_dir);
    const std::string path = join_path(out_dir, cfg.name.value_or("simulate") + ".csv");
    write_csv(path, ledger_table(ledger));
    std::cout << "wrote " << path << " (" << ledger.rows.size() << " rows)\n";
}

namespace {

// ---- measure helpers --------------------------------------------------

void set_sweep_value(ChannelModel& m, const std::string& key, double v) {
    if (key == "channel.gamma") {
        m.gamma = v;
    } else if (key == "channel.Gamma") {
        m.big_gamma = v;
    } else if (key == "channel.omega0") {
        m.omega0 = v;
    } else if (key == "channel.omega") {
        m.omega = v;
    } else if (key == "channel.omega_c") {
        m.omega_c = v;
    } else if (key == "channel.s") {
        m.s = v;
    } else if (key == "channel.Te") {
        m.T_e = v;
    } else if (key == "channel.p") {
        m.p = v;
    } else {
        throw ConfigError("sweep.key must name a channel parameter, got '" + key + "'");
    }
}

double primary_parameter(const ChannelModel& m) {
    switch (m.family) {
    case Family::OhmicPD:
        return m.s;
    case Family::NMPD:
    case Family::NMAD:
        return m.big_gamma;
    case Family::PdTimedep:
        return m.omega;
    case Family::GadMaster:
        return m.T_e;
    default:
        return m.gamma;
    }
}

bool field_is_constant(const ChannelModel& m) { return m.family != Family::PdTimedep; }

/// Pointwise-evaluable monitored signals for the custom measure.  The
/// cumulative heats are only available where they reduce to closed form.
std::function<double(double)> custom_signal(const ChannelModel& m, const BlochState& s0,
                                            const std::string& signal) {
    const Field3 h0 = m.field_at(0.0);
    const double u0 = internal_energy(s0, h0);
    const double r0 = s0.norm();
    if (signal == "C") {
        return [m, s0](double t) {
            const BlochState st = m.bloch_at(s0, t);
            const Field3 h = m.field_at(t);
            return h.magnitude() > 1e-15 ? coherence_l1(st, h) : std::hypot(st.x, st.y);
        };
    }
    if (signal == "S") {
        return [m, s0](double t) { return von_neumann_entropy(m.bloch_at(s0, t)); };
    }
    if (signal == "U") {
        return [m, s0](double t) { return internal_energy(m.bloch_at(s0, t), m.field_at(t)); };
    }
    if (signal == "r") {
        return [m, s0](double t) { return m.bloch_at(s0, t).norm(); };
    }
    if (signal == "T_ergo") {
        return [m, s0](double t) {
            return temperatures(m.bloch_at(s0, t), m.field_at(t)).t_ergo;
        };
    }
    if (signal == "Q_stand" || signal == "Q_ergo" || signal == "Q_entro") {
        if (!field_is_constant(m)) {
            throw WitnessInapplicable("signal " + signal + " needs a constant control field");
        }
        if (signal == "Q_stand") {
            // h constant: Q_stand(t) = -h . (r(t) - r(0)) = U(t) - U(0)
            return [m, s0, u0](double t) {
                return internal_energy(m.bloch_at(s0, t), m.field_at(0.0)) - u0;
            };
        }
        if (signal == "Q_ergo") {
            const double h = h0.magnitude();
            return [m, s0, h, r0](double t) { return h * (r0 - m.bloch_at(s0, t).norm()); };
        }
        // Q_entro closes only when U is conserved, i.e. the z-preserving
        // dephasing families: Q_entro(t) = U0 ln(r(t)/r0)
        const bool z_const = m.family == Family::PD || m.family == Family::NMPD ||
                             m.family == Family::OhmicPD;
        if (!z_const) {
            throw WitnessInapplicable(
                "signal Q_entro closes only for constant-field dephasing families");
        }
        if (r0 < 1e-12) throw WitnessInapplicable("signal Q_entro is undefined at r0 = 0");
        return [m, s0, u0, r0](double t) {
            return u0 * std::log(m.bloch_at(s0, t).norm() / r0);
        };
    }
    throw ConfigError("unknown measure.signal '" + signal +
                      "' (expected C, S, U, r, T_ergo, Q_stand, Q_ergo, Q_entro)");
}

/// Markovian direction of dF/dt for the custom signals.
int default_orientation(const std::string& signal, double u0) {
    if (signal == "Q_ergo" || signal == "S" || signal == "T_ergo") return +1;
    if (signal == "C" || signal == "r") return -1;
    if (signal == "Q_stand" || signal == "Q_entro") {
        if (sgn(u0) == 0) {
            throw WitnessInapplicable("initial state with U0 = 0 carries no heat orientation");
        }
        return -sgn(u0);
    }
    throw ConfigError("unknown measure.signal '" + signal + "'");
}

struct MeasurePoint {
    double parameter = 0.0;
    double value = 0.0;
    double ox = kNaN, oy = kNaN, oz = kNaN; // optimizer coordinates
    std::vector<MonotoneInterval> intervals;
};

MeasurePoint eval_measure(const ScenarioConfig& cfg, const ChannelModel& m, double parameter) {
    const double horizon = cfg.horizon ? *cfg.horizon : default_measure_horizon(m);
    const std::string kind = *cfg.measure_kind;
    MeasurePoint row;
    row.parameter = parameter;
    if (kind == "ND") {
        const auto out = measure_ND_blp(m, horizon);
        row.value = out.value;
        row.ox = 1.0, row.oy = 0.0, row.oz = 0.0;
        row.intervals = out.intervals;
    } else if (kind == "NC") {
        const auto out = measure_NC(m, horizon);
        row.value = out.value;
        row.ox = 1.0, row.oy = 0.0, row.oz = 0.0;
        row.intervals = out.intervals;
    } else if (kind == "NQ_entro") {
        const auto out = measure_NQ_entro(m, horizon);
        row.value = out.value;
        if (std::isfinite(out.z_opt)) {
            row.ox = std::sqrt(std::max(0.0, 1.0 - out.z_opt * out.z_opt));
            row.oy = 0.0;
            row.oz = out.z_opt;
        }
        row.intervals = out.intervals;
    } else if (kind == "NQ_ergo") {
        const auto out = measure_NQ_ergo(m, horizon);
        row.value = out.value;
        row.ox = 1.0, row.oy = 0.0, row.oz = 0.0;
        row.intervals = out.intervals;
    } else if (kind == "NF-custom") {
        if (!cfg.measure_signal) throw ConfigError("NF-custom needs measure.signal");
        const BlochState s0 = initial_state(cfg);
        const auto F = custom_signal(m, s0, *cfg.measure_signal);
        const double u0 = internal_energy(s0, m.field_at(0.0));
        const int orientation = cfg.measure_orientation
                                    ? *cfg.measure_orientation
                                    : default_orientation(*cfg.measure_signal, u0);
        const auto out = measure_NF(F, 0.0, horizon, orientation);
        row.value = out.value;
        row.ox = s0.x, row.oy = s0.y, row.oz = s0.z;
        row.intervals = out.intervals;
    } else {
        throw ConfigError("measure.kind must be ND, NC, NQ_entro, NQ_ergo, or NF-custom, got '" +
                          kind + "'");
    }
    return row;
}

} // namespace

void run_measure(const ScenarioConfig& cfg, const std::string& out_dir) {
    cfg.model.validate();
    if (!cfg.measure_kind) throw ConfigError("measure command needs measure.kind");

    std::vector<MeasurePoint> points;
    if (cfg.sweep_key) {
        if (!cfg.sweep_from || !cfg.sweep_to || !cfg.sweep_step) {
            throw ConfigError("sweep needs sweep.from, sweep.to, and sweep.step");
        }
        if (!(*cfg.sweep_step > 0.0)) throw ConfigError("sweep.step must be positive");
        const double step = *cfg.sweep_step;
        for (double v = *cfg.sweep_from; v <= *cfg.sweep_to + 0.5 * step; v += step) {
            ChannelModel m = cfg.model;
            set_sweep_value(m, *cfg.sweep_key, v);
            m.validate();
            points.push_back(eval_measure(cfg, m, v));
        }
    } else {
        points.push_back(eval_measure(cfg, cfg.model, primary_parameter(cfg.model)));
    }

    CsvTable t;
    t.header = {"parameter", "value", "opt_x", "opt_y", "opt_z", "windows", "t_begin", "t_end"};
    for (const auto& p : points) {
        const double wb = p.intervals.empty() ? kNaN : p.intervals.front().t_begin;
        const double we = p.intervals.empty() ? kNaN : p.intervals.front().t_end;
        t.rows.push_back({p.parameter, p.value, p.ox, p.oy, p.oz,
                          static_cast<double>(p.intervals.size()), wb, we});
    }

    ensure_out_dir(out_dir);
    const std::string path = join_path(out_dir, cfg.name.value_or("measure") + ".csv");
    write_csv(path, t);
    std::cout << "wrote " << path << " (" << t.rows.size() << " rows)\n";
    if (points.size() == 1) {
        std::cout << *cfg.measure_kind << " = " << format_double(points[0].value) << "\n";
    }
}

namespace {

void events_sudden_death(const ScenarioConfig& cfg, const std::string& out_dir) {
    const BlochState s0 = initial_state(cfg);
    const double U0 = internal_energy(s0, cfg.model.field_at(0.0));
    const double horizon = cfg.horizon ? *cfg.horizon : 1000.0 / cfg.model.gamma;
    const auto res = sudden_death_times(cfg.model, U0, horizon);

    CsvTable t;
    t.header = {"index", "t"};
    if (!res.applicable) {
        std::cout << "no sudden death\n";
    } else {
        for (std::size_t i = 0; i < res.roots.size(); ++i) {
            t.rows.push_back({static_cast<double>(i + 1), res.roots[i]});
            std::cout << "t_" << (i + 1) << " = " << format_double(res.roots[i]) << "\n";
        }
        if (res.t_sd) {
            const std::size_t pairs = (res.roots.size() - 1) / 2;
            std::cout << "eternal death at t_sd = " << format_double(*res.t_sd) << " ("
                      << pairs << " death-birth pair" << (pairs == 1 ? "" : "s")
                      << ", horizon " << verdict_num(res.horizon) << ")\n";
        } else {
            std::cout << "no eternal death within horizon " << verdict_num(res.horizon) << "\n";
        }
    }
    ensure_out_dir(out_dir);
    const std::string path = join_path(out_dir, cfg.name.value_or("events") + ".csv");
    write_csv(path, t);
    std::cout << "wrote " << path << "\n";
}

void events_tc(const ScenarioConfig& cfg, const std::string& out_dir) {
    const BlochState s0 = initial_state(cfg);
    const auto traj =
        sample_trajectory(cfg.model, s0, effective_horizon(cfg), effective_grid(cfg));
    const auto res = adiabatic_time_tc(traj);

    CsvTable t;
    t.header = {"index", "t"};
    for (std::size_t i = 0; i < res.roots.size(); ++i) {
        t.rows.push_back({static_cast<double>(i + 1), res.roots[i]});
    }
    if (!res.t_c) {
        std::cout << "no adiabatic crossing within horizon "
                  << verdict_num(effective_horizon(cfg)) << "\n";
    } else {
        std::cout << "t_c = " << format_double(*res.t_c) << "\n";
        if (res.roots.size() > 1) {
            std::cout << "crossings: " << res.roots.size()
                      << ", largest t_nc = " << format_double(res.roots.back()) << "\n";
        }
    }
    ensure_out_dir(out_dir);
    const std::string path = join_path(out_dir, cfg.name.value_or("events") + ".csv");
    write_csv(path, t);
    std::cout << "wrote " << path << "\n";
}

void events_freezing(const ScenarioConfig& cfg, const std::string& out_dir) {
    const BlochState s0 = initial_state(cfg);
    const auto traj =
        sample_trajectory(cfg.model, s0, effective_horizon(cfg), effective_grid(cfg));
    const auto ledger = accumulate_ledger(traj);

    double dev_e = 0.0, dev_ei = 0.0;
    bool ec_monotone = true;
    for (std::size_t i = 0; i < ledger.rows.size(); ++i) {
        dev_e = std::max(dev_e, std::abs(ledger.rows[i].E - ledger.rows[0].E));
        dev_ei = std::max(dev_ei, std::abs(ledger.rows[i].E_I - ledger.rows[0].E_I));
        if (i && ledger.rows[i].E_C > ledger.rows[i - 1].E_C + 1e-12) ec_monotone = false;
    }

    if (dev_e < 1e-12) {
        std::cout << "frozen at E = " << verdict_num(ledger.rows[0].E)
                  << ", max deviation < 1e-12\n";
    } else if (dev_ei < 1e-12) {
        std::cout << "E_I frozen at " << verdict_num(ledger.rows[0].E_I)
                  << ", max deviation < 1e-12; E_C "
                  << (ec_monotone ? "decays monotonically" : "is not monotone") << "\n";
    } else {
        std::cout << "not frozen: max ergotropy deviation = " << format_double(dev_e) << "\n";
    }

    CsvTable t;
    t.header = {"t", "E", "E_I", "E_C"};
    for (const auto& r : ledger.rows) t.rows.push_back({r.t, r.E, r.E_I, r.E_C});
    ensure_out_dir(out_dir);
    const std::string path = join_path(out_dir, cfg.name.value_or("events") + ".csv");
    write_csv(path, t);
    std::cout << "wrote " << path << "\n";
}

} // namespace

void run_events(const ScenarioConfig& cfg, const std::string& out_dir) {
    cfg.model.validate();
    if (!cfg.events_kind) throw ConfigError("events command needs events.kind");
    const std::string kind = *cfg.events_kind;
    if (kind == "sudden-death") {
        events_sudden_death(cfg, out_dir);
    } else if (kind == "tc") {
        events_tc(cfg, out_dir);
    } else if (kind == "freezing") {
        events_freezing(cfg, out_dir);
    } else {
        throw ConfigError("events.kind must be sudden-death, tc, or freezing, got '" + kind +
                          "'");
    }
}

void run_plot(const std::string& csv_path, const std::vector<std::string>& columns,
              const std::string& out_dir) {
    const CsvTable table = read_csv(csv_path);
    if (table.rows.empty()) throw ConfigError("empty CSV (header only): " + csv_path);
    if (table.header.size() < 2) throw ConfigError("CSV has no data columns: " + csv_path);

    std::vector<std::string> wanted = columns;
    if (wanted.empty()) {
        wanted.assign(table.header.begin() + 1, table.header.end());
    }

    std::vector<Series> series;
    for (const auto& name : wanted) {
        const std::size_t c = table.column(name);
        Series s;
        s.name = name;
        for (const auto& row : table.rows) {
            s.xs.push_back(row[0]);
            s.ys.push_back(row[c]);
        }
        series.push_back(std::move(s));
    }

    const std::string stem = std::filesystem::path(csv_path).stem().string();
    ensure_out_dir(out_dir);
    const std::string path = join_path(out_dir, stem + ".svg");
    write_svg_lines(path, stem, table.header[0],
                    wanted.size() == 1 ? wanted[0] : std::string("value"), series);
    std::cout << "wrote " << path << "\n";
}

} // namespace qthermo::cli
