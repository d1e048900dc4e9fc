#include "qthermo/channels.hpp"

#include "qthermo/errors.hpp"
#include "qthermo/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace qthermo {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kImagTol = 1e-10;

double require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw ValidationError(std::string(what) + " must be finite");
    }
    return v;
}

void require_positive(double v, const char* what) {
    require_finite(v, what);
    if (v <= 0.0) {
        throw ValidationError(std::string(what) + " must be positive");
    }
}

double real_checked(std::complex<double> v, const char* what) {
    if (std::abs(v.imag()) > kImagTol * std::max(1.0, std::abs(v.real()))) {
        throw NumericalError(std::string(what) + ": imaginary residue " +
                             std::to_string(v.imag()));
    }
    return v.real();
}

double clamp01(double v, const char* what) {
    if (v < -1e-10 || v > 1.0 + 1e-10) {
        throw NumericalError(std::string(what) + " outside [0, 1]: " + std::to_string(v));
    }
    return std::clamp(v, 0.0, 1.0);
}

BlochState rotate_xy(double x, double y, double z, double phase) {
    const double c = std::cos(phase);
    const double sn = std::sin(phase);
    return BlochState(x * c - y * sn, y * c + x * sn, z);
}

// Thermal occupation of the GAD-MASTER reservoir mode.
double gad_occupation(double omega0, double T_e) {
    return 1.0 / std::expm1(omega0 / T_e);
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::AD: return "AD";
    case Family::GAD: return "GAD";
    case Family::PD: return "PD";
    case Family::NMPD: return "NM-PD";
    case Family::NMAD: return "NM-AD";
    case Family::BitflipDiss: return "BITFLIP-DISS";
    case Family::SpontEmission: return "SPONT-EMISSION";
    case Family::OhmicPD: return "OHMIC-PD";
    case Family::GadMaster: return "GAD-MASTER";
    case Family::PdTimedep: return "PD-TIMEDEP";
    }
    throw ValidationError("unknown channel family");
}

Family family_from_string(const std::string& name) {
    static const std::pair<const char*, Family> table[] = {
        {"AD", Family::AD},
        {"GAD", Family::GAD},
        {"PD", Family::PD},
        {"NM-PD", Family::NMPD},
        {"NM-AD", Family::NMAD},
        {"BITFLIP-DISS", Family::BitflipDiss},
        {"SPONT-EMISSION", Family::SpontEmission},
        {"OHMIC-PD", Family::OhmicPD},
        {"GAD-MASTER", Family::GadMaster},
        {"PD-TIMEDEP", Family::PdTimedep},
    };
    for (const auto& [key, fam] : table) {
        if (name == key) return fam;
    }
    throw ValidationError("unknown channel family '" + name + "'");
}

void ChannelModel::validate() const {
    switch (family) {
    case Family::AD:
    case Family::PD:
    case Family::SpontEmission:
        require_positive(gamma, "gamma");
        break;
    case Family::GAD:
        require_positive(gamma, "gamma");
        require_finite(p, "p");
        if (p < 0.0 || p > 1.0) throw ValidationError("p must lie in [0, 1]");
        break;
    case Family::NMPD:
    case Family::NMAD:
        require_positive(gamma, "gamma");
        require_positive(big_gamma, "big_gamma");
        break;
    case Family::BitflipDiss:
        require_positive(gamma, "gamma");
        require_positive(omega0, "omega0");
        break;
    case Family::OhmicPD:
        require_positive(omega0, "omega0");
        require_positive(omega_c, "omega_c");
        require_positive(s, "s");
        break;
    case Family::GadMaster:
        require_positive(gamma, "gamma");
        require_positive(omega0, "omega0");
        require_positive(T_e, "T_e");
        break;
    case Family::PdTimedep:
        require_positive(gamma, "gamma");
        require_positive(omega0, "omega0");
        require_positive(omega, "omega");
        break;
    }
}

Field3 ChannelModel::field_at(double t) const {
    switch (family) {
    case Family::AD:
    case Family::GAD:
    case Family::PD:
    case Family::NMPD:
    case Family::NMAD:
    case Family::SpontEmission:
        return Field3{0.0, 0.0, 1.0};
    case Family::BitflipDiss:
    case Family::OhmicPD:
        return Field3{0.0, 0.0, -omega0};
    case Family::GadMaster:
        return Field3{0.0, 0.0, -omega0 / 2.0};
    case Family::PdTimedep:
        return Field3{0.0, 0.0, -(omega0 / 2.0) * (1.0 - std::cos(omega * t))};
    }
    throw ValidationError("unknown channel family");
}

bool ChannelModel::is_unital() const {
    switch (family) {
    case Family::PD:
    case Family::NMPD:
    case Family::OhmicPD:
    case Family::PdTimedep:
    case Family::BitflipDiss:
        return true;
    case Family::GAD:
        return p == 0.5;
    default:
        return false;
    }
}

std::optional<BlochState> ChannelModel::fixed_point() const {
    switch (family) {
    case Family::AD:
    case Family::NMAD:
    case Family::SpontEmission:
        return BlochState(0.0, 0.0, 1.0);
    case Family::GAD:
        return BlochState(0.0, 0.0, 2.0 * p - 1.0);
    case Family::GadMaster:
        return BlochState(0.0, 0.0, -std::tanh(omega0 / (2.0 * T_e)));
    case Family::BitflipDiss:
        return BlochState(0.0, 0.0, 0.0);
    default:
        // pure dephasing families fix a whole plane, not a point
        return std::nullopt;
    }
}

double ChannelModel::decay_rate(double t) const {
    switch (family) {
    case Family::OhmicPD:
        return ohmic_rate(t, s, omega_c);
    case Family::NMPD:
        // d/dt of the exponent q(t); non-negative for all t
        return 0.5 * gamma * (1.0 - std::exp(-big_gamma * t));
    case Family::NMAD: {
        // sign of -q'(t): negative exactly on the revival intervals
        const std::complex<double> d =
            std::sqrt(std::complex<double>(2.0 * gamma * big_gamma - big_gamma * big_gamma, 0.0));
        if (std::abs(d) < 1e-12 * std::max(1.0, gamma)) {
            return gamma; // degenerate case decays monotonically
        }
        const std::complex<double> half = 0.5 * d * t;
        const std::complex<double> bracket =
            std::cos(half) + (big_gamma / d) * std::sin(half);
        const std::complex<double> v = bracket * std::sin(half) * (2.0 * gamma * big_gamma / d);
        return real_checked(v, "NM-AD rate");
    }
    default:
        return gamma;
    }
}

KrausSet kraus_ad(double p, double t) {
    require_finite(p, "p");
    if (p < 0.0 || p > 1.0) throw ValidationError("p must lie in [0, 1]");
    Mat2 k0 = Mat2::zero();
    k0(0, 0) = 1.0;
    k0(1, 1) = std::sqrt(1.0 - p);
    Mat2 k1 = Mat2::zero();
    k1(0, 1) = std::sqrt(p);
    return KrausSet{{k0, k1}, t};
}

KrausSet kraus_gad(double p, double a, double t) {
    require_finite(p, "p");
    require_finite(a, "a");
    if (p < 0.0 || p > 1.0) throw ValidationError("p must lie in [0, 1]");
    if (a < 0.0 || a > 1.0) throw ValidationError("a must lie in [0, 1]");
    const double sp = std::sqrt(p);
    const double sq = std::sqrt(1.0 - p);
    Mat2 k0 = Mat2::zero();
    k0(0, 0) = sp;
    k0(1, 1) = sp * std::sqrt(1.0 - a);
    Mat2 k1 = Mat2::zero();
    k1(0, 1) = sp * std::sqrt(a);
    Mat2 k2 = Mat2::zero();
    k2(0, 0) = sq * std::sqrt(1.0 - a);
    k2(1, 1) = sq;
    Mat2 k3 = Mat2::zero();
    k3(1, 0) = sq * std::sqrt(a);
    return KrausSet{{k0, k1, k2, k3}, t};
}

KrausSet kraus_pd(double p, double t) {
    require_finite(p, "p");
    if (p < 0.0 || p > 1.0) throw ValidationError("p must lie in [0, 1]");
    Mat2 k0 = Mat2::identity();
    k0 = std::sqrt(1.0 - p) * k0;
    Mat2 k1 = Mat2::zero();
    k1(0, 0) = std::sqrt(p);
    k1(1, 1) = -std::sqrt(p);
    return KrausSet{{k0, k1}, t};
}

KrausSet build_kraus(const ChannelModel& m, double t) {
    m.validate();
    if (t < 0.0 || !std::isfinite(t)) throw ValidationError("t must be finite and >= 0");
    switch (m.family) {
    case Family::AD:
        return kraus_ad(-std::expm1(-m.gamma * t), t);
    case Family::GAD:
        return kraus_gad(m.p, -std::expm1(-m.gamma * t), t);
    case Family::PD:
        return kraus_pd(0.5 * (1.0 - std::exp(-0.5 * m.gamma * t)), t);
    case Family::NMPD:
        return kraus_pd(0.5 * (1.0 - std::exp(-nm_pd_q(m.gamma, m.big_gamma, t))), t);
    case Family::NMAD:
        return kraus_ad(1.0 - nm_ad_q(m.gamma, m.big_gamma, t), t);
    default:
        throw ValidationError("family " + family_name(m.family) +
                              " has no Kraus snapshot form");
    }
}

double nm_pd_q(double gamma, double big_gamma, double t) {
    require_positive(gamma, "gamma");
    require_positive(big_gamma, "big_gamma");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    return 0.5 * gamma * (t + std::expm1(-big_gamma * t) / big_gamma);
}

double nm_ad_q(double gamma, double big_gamma, double t) {
    require_positive(gamma, "gamma");
    require_positive(big_gamma, "big_gamma");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    const double disc = 2.0 * gamma * big_gamma - big_gamma * big_gamma;
    const std::complex<double> d = std::sqrt(std::complex<double>(disc, 0.0));
    double bracket;
    if (std::abs(d) * t < 1e-8) {
        // cos(dt/2) + (G/d) sin(dt/2) -> 1 + G t/2 as d -> 0
        bracket = 1.0 + 0.5 * big_gamma * t;
    } else {
        const std::complex<double> half = 0.5 * d * t;
        bracket = real_checked(std::cos(half) + (big_gamma / d) * std::sin(half),
                               "NM-AD bracket");
    }
    return clamp01(std::exp(-big_gamma * t) * bracket * bracket, "NM-AD q");
}

double ohmic_rate(double t, double s, double omega_c) {
    if (s == 0.0) return 0.0;
    require_positive(s, "s");
    require_positive(omega_c, "omega_c");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    const double u = omega_c * t;
    return std::pow(1.0 + u * u, -0.5 * s) * std::tgamma(s) * std::sin(s * std::atan(u));
}

double ohmic_rate_integral(double t, double s, double omega_c) {
    if (s == 0.0) return 0.0;
    require_positive(s, "s");
    require_positive(omega_c, "omega_c");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    if (t == 0.0) return 0.0;
    return adaptive_simpson([s, omega_c](double u) { return ohmic_rate(u, s, omega_c); },
                            0.0, t, 1e-10, 40);
}

double dephasing_attenuation(double t, double s, double omega_c) {
    return std::exp(-ohmic_rate_integral(t, s, omega_c));
}

std::vector<std::pair<double, double>> critical_times(double s, double omega_c) {
    require_positive(s, "s");
    require_positive(omega_c, "omega_c");
    std::vector<std::pair<double, double>> intervals;
    if (s <= 2.0) return intervals; // rate stays non-negative
    // sin(s arctan(w_c t)) vanishes at arctan(w_c t) = m pi / s; the rate is
    // negative between consecutive odd/even zeros and beyond the last one
    // when the count is odd.
    std::vector<double> zeros;
    for (int m = 1; m * kPi / s < kPi / 2.0; ++m) {
        zeros.push_back(std::tan(m * kPi / s) / omega_c);
    }
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < zeros.size(); i += 2) {
        const double lo = zeros[i];
        const double hi = (i + 1 < zeros.size()) ? zeros[i + 1] : inf;
        intervals.emplace_back(lo, hi);
    }
    return intervals;
}

BlochState bloch_solution_bitflip(const BlochState& r0, double gamma, double omega0,
                                  double t) {
    require_positive(gamma, "gamma");
    require_positive(omega0, "omega0");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    const double damp = std::exp(-gamma * t);
    const double z = r0.z * std::exp(-2.0 * gamma * t);
    const std::complex<double> w =
        std::sqrt(std::complex<double>(gamma * gamma - 4.0 * omega0 * omega0, 0.0));
    double x, y;
    if (std::abs(w) < 1e-9 * std::max(1.0, gamma + 2.0 * omega0)) {
        // degenerate point gamma = 2 omega0
        x = damp * (r0.x + t * (gamma * r0.x - 2.0 * omega0 * r0.y));
        y = damp * (r0.y + t * (2.0 * omega0 * r0.x - gamma * r0.y));
    } else {
        const std::complex<double> ep = std::exp(w * t);
        const std::complex<double> em = std::exp(-w * t);
        const std::complex<double> ax = (w + gamma) * r0.x - 2.0 * omega0 * r0.y;
        const std::complex<double> bx = (w - gamma) * r0.x + 2.0 * omega0 * r0.y;
        const std::complex<double> ay = (w - gamma) * r0.y + 2.0 * omega0 * r0.x;
        const std::complex<double> by = (w + gamma) * r0.y - 2.0 * omega0 * r0.x;
        x = damp * real_checked((ax * ep + bx * em) / (2.0 * w), "bitflip x");
        y = damp * real_checked((ay * ep + by * em) / (2.0 * w), "bitflip y");
    }
    return BlochState(x, y, z);
}

BlochState bloch_solution_spont_emission(const BlochState& r0, double gamma, double t) {
    require_positive(gamma, "gamma");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    const double damp = std::exp(-0.5 * gamma * t);
    const double z = 1.0 + (r0.z - 1.0) * std::exp(-gamma * t);
    // H = -sigma_z precesses (x + i y) with phase -2t
    const BlochState rot = rotate_xy(damp * r0.x, damp * r0.y, z, -2.0 * t);
    return rot;
}

BlochState bloch_solution_pd_timedep(const BlochState& r0, double omega0, double omega,
                                     double gamma, double t) {
    // gamma = 0 is allowed here: the map degenerates to the bare drive
    require_finite(gamma, "gamma");
    if (gamma < 0.0) throw ValidationError("gamma must be >= 0");
    require_positive(omega0, "omega0");
    require_positive(omega, "omega");
    if (t < 0.0) throw ValidationError("t must be >= 0");
    const double damp = std::exp(-2.0 * gamma * t);
    const double alpha = (omega0 / omega) * (omega * t - std::sin(omega * t));
    return rotate_xy(damp * r0.x, damp * r0.y, r0.z, alpha);
}

BlochState ChannelModel::bloch_at(const BlochState& r0, double t) const {
    validate();
    if (t < 0.0 || !std::isfinite(t)) throw ValidationError("t must be finite and >= 0");
    switch (family) {
    case Family::AD: {
        const double q = std::exp(-gamma * t);
        const double sq = std::sqrt(q);
        return BlochState(sq * r0.x, sq * r0.y, 1.0 - q * (1.0 - r0.z));
    }
    case Family::GAD: {
        const double a = -std::expm1(-gamma * t);
        const double sq = std::sqrt(1.0 - a);
        return BlochState(sq * r0.x, sq * r0.y, (1.0 - a) * r0.z + a * (2.0 * p - 1.0));
    }
    case Family::PD: {
        const double f = std::exp(-0.5 * gamma * t);
        return BlochState(f * r0.x, f * r0.y, r0.z);
    }
    case Family::NMPD: {
        const double f = std::exp(-nm_pd_q(gamma, big_gamma, t));
        return BlochState(f * r0.x, f * r0.y, r0.z);
    }
    case Family::NMAD: {
        const double q = nm_ad_q(gamma, big_gamma, t);
        const double sq = std::sqrt(q);
        return BlochState(sq * r0.x, sq * r0.y, 1.0 - q * (1.0 - r0.z));
    }
    case Family::BitflipDiss:
        return bloch_solution_bitflip(r0, gamma, omega0, t);
    case Family::SpontEmission:
        return bloch_solution_spont_emission(r0, gamma, t);
    case Family::OhmicPD: {
        const double att = dephasing_attenuation(t, s, omega_c);
        const double f = att * att; // master equation damps coherences twice
        return rotate_xy(f * r0.x, f * r0.y, r0.z, 2.0 * omega0 * t);
    }
    case Family::GadMaster: {
        const double n = gad_occupation(omega0, T_e);
        const double rz = gamma * (2.0 * n + 1.0);
        const double zs = -1.0 / (2.0 * n + 1.0);
        const double f = std::exp(-0.5 * rz * t);
        const double z = zs + (r0.z - zs) * std::exp(-rz * t);
        return rotate_xy(f * r0.x, f * r0.y, z, omega0 * t);
    }
    case Family::PdTimedep:
        return bloch_solution_pd_timedep(r0, omega0, omega, gamma, t);
    }
    throw ValidationError("unknown channel family");
}

Trajectory sample_trajectory(const ChannelModel& m, const BlochState& r0, double horizon,
                             std::size_t n_points) {
    m.validate();
    require_positive(horizon, "horizon");
    if (n_points < 2) throw ValidationError("n_points must be >= 2");
    Trajectory tr;
    tr.model = m;
    tr.r0 = r0;
    tr.times.reserve(n_points);
    tr.states.reserve(n_points);
    tr.fields.reserve(n_points);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double t = horizon * static_cast<double>(i) / static_cast<double>(n_points - 1);
        tr.times.push_back(t);
        tr.states.push_back(m.bloch_at(r0, t));
        tr.fields.push_back(m.field_at(t));
    }
    return tr;
}

Trajectory integrate_gad_master(const BlochState& r0, double omega0, double gamma0,
                                double T_e, const std::vector<double>& t_grid) {
    require_positive(omega0, "omega0");
    require_positive(gamma0, "gamma0");
    require_positive(T_e, "T_e");
    if (t_grid.size() < 2 || t_grid.front() != 0.0) {
        throw ValidationError("t_grid must start at 0 and hold >= 2 points");
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
        if (!(t_grid[i] > t_grid[i - 1])) {
            throw ValidationError("t_grid must increase strictly");
        }
    }
    const double n = gad_occupation(omega0, T_e);
    const double rz = gamma0 * (2.0 * n + 1.0);
    const double rt = 0.5 * rz;
    const double zs = -1.0 / (2.0 * n + 1.0);
    auto deriv = [omega0, rz, rt, zs](double, const std::array<double, 3>& r) {
        return std::array<double, 3>{-omega0 * r[1] - rt * r[0],
                                     omega0 * r[0] - rt * r[1],
                                     -rz * (r[2] - zs)};
    };
    const auto rows = rk45_integrate<3>(deriv, {r0.x, r0.y, r0.z}, t_grid, 1e-10, 1e-9);

    ChannelModel m;
    m.family = Family::GadMaster;
    m.gamma = gamma0;
    m.omega0 = omega0;
    m.T_e = T_e;

    Trajectory tr;
    tr.model = m;
    tr.r0 = r0;
    tr.times = t_grid;
    tr.states.reserve(rows.size());
    tr.fields.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        tr.states.emplace_back(rows[i][0], rows[i][1], rows[i][2]);
        tr.fields.push_back(m.field_at(t_grid[i]));
    }
    return tr;
}

SuddenDeathResult sudden_death_times(const ChannelModel& m, double U0, double horizon) {
    m.validate();
    require_positive(horizon, "horizon");
    require_finite(U0, "U0");
    if (m.family != Family::AD && m.family != Family::NMAD) {
        throw ValidationError("sudden death applies to the AD and NM-AD families only");
    }
    SuddenDeathResult res;
    res.horizon = horizon;
    if (U0 <= 0.0) return res; // never above zero, nothing to lose
    res.applicable = true;

    const double threshold = 1.0 / (1.0 + U0);
    auto qfun = [&m](double t) {
        return m.family == Family::AD ? std::exp(-m.gamma * t)
                                      : nm_ad_q(m.gamma, m.big_gamma, t);
    };
    auto f = [&](double t) { return qfun(t) - threshold; };

    const auto brackets = find_brackets(f, 0.0, horizon, 10000);
    for (const auto& [a, b] : brackets) {
        res.roots.push_back(a == b ? a : bisect_root(f, a, b, 1e-9));
    }
    std::sort(res.roots.begin(), res.roots.end());

    if (!res.roots.empty()) {
        // the death is final only if q stays under threshold afterwards
        const double last = res.roots.back();
        bool stays_below = true;
        for (int i = 1; i <= 256; ++i) {
            const double t = last + (horizon - last) * i / 256.0;
            if (qfun(t) > threshold) {
                stays_below = false;
                break;
            }
        }
        if (stays_below) res.t_sd = last;
    }
    return res;
}

} // namespace qthermo
