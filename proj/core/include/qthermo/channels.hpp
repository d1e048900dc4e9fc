#pragma once

#include "qthermo/bloch.hpp"
#include "qthermo/kraus.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qthermo {

enum class Family {
    AD,             // amplitude damping, p(t) = 1 - e^{-gamma t}
    GAD,            // generalized amplitude damping, a(t) = 1 - e^{-gamma t}
    PD,             // phase damping, coherence attenuation e^{-gamma t / 2}
    NMPD,           // phase damping with exponential memory kernel
    NMAD,           // amplitude damping with Lorentzian reservoir
    BitflipDiss,    // sigma_x dissipator with H = omega0 sigma_z
    SpontEmission,  // decay to the north pole with H = -sigma_z
    OhmicPD,        // dephasing with Ohmic spectral density, H = omega0 sigma_z
    GadMaster,      // thermal master equation, H = (omega0/2) sigma_z
    PdTimedep,      // dephasing with H(t) = (omega0/2)(1 - cos omega t) sigma_z
};

std::string family_name(Family f);
Family family_from_string(const std::string& name);

/// Parameter bundle for one dissipative qubit channel.  Only the fields
/// relevant to the selected family are read; validate() checks those.
struct ChannelModel {
    Family family = Family::PD;
    double gamma = 1.0;     // dissipation rate
    double big_gamma = 1.0; // memory bandwidth (NM-PD, NM-AD)
    double omega0 = 1.0;    // level splitting scale
    double omega = 1.0;     // drive frequency (PD-TIMEDEP)
    double omega_c = 1.0;   // bath cutoff (OHMIC-PD)
    double s = 1.0;         // Ohmicity exponent (OHMIC-PD)
    double T_e = 1.0;       // environment temperature (GAD-MASTER)
    double p = 0.5;         // GAD asymptotic ground population weight

    bool operator==(const ChannelModel&) const = default;

    void validate() const;

    /// Control field at time t (H = -h . sigma).
    Field3 field_at(double t) const;

    /// Closed-form Bloch trajectory point.  Available for every family.
    BlochState bloch_at(const BlochState& r0, double t) const;

    /// Whether the map preserves the maximally mixed state.
    bool is_unital() const;

    /// Unique stationary state when one exists.
    std::optional<BlochState> fixed_point() const;

    /// Instantaneous decay-rate proxy whose sign marks information
    /// backflow: negative values <=> purity/coherence revival.
    double decay_rate(double t) const;
};

/// Elementary Kraus constructors (basis: ground state at the north pole).
KrausSet kraus_ad(double p, double t = 0.0);
KrausSet kraus_gad(double p, double a, double t = 0.0);
KrausSet kraus_pd(double p, double t = 0.0);

/// Snapshot Kraus set of a Kraus-form family (AD, GAD, PD, NM-PD, NM-AD)
/// at time t.  Other families are rejected.
KrausSet build_kraus(const ChannelModel& m, double t);

/// Memory-kernel exponents for the non-Markovian Kraus families.
double nm_pd_q(double gamma, double big_gamma, double t);
double nm_ad_q(double gamma, double big_gamma, double t);

/// Ohmic dephasing rate gamma(t, s) = [1 + (w_c t)^2]^{-s/2}
///                                    Gamma_Euler[s] sin[s arctan(w_c t)].
/// s = 0 returns 0 by convention.
double ohmic_rate(double t, double s, double omega_c);

/// Integral of the Ohmic rate from 0 to t (adaptive Simpson, abs tol 1e-10).
double ohmic_rate_integral(double t, double s, double omega_c);

/// Attenuation exponent Gamma(t) = exp(-integral_0^t gamma).  Note the
/// dephasing master equation gamma(t)(sigma_z rho sigma_z - rho) damps the
/// transverse Bloch components by the square of this quantity.
double dephasing_attenuation(double t, double s, double omega_c);

/// Maximal intervals on which the Ohmic rate is negative, in ascending
/// order.  The final interval may extend to +infinity (second == +inf).
/// Empty for s <= 2.
std::vector<std::pair<double, double>> critical_times(double s, double omega_c);

/// Closed-form Bloch solutions (cross-checked against master-equation
/// integration in the test suite).
BlochState bloch_solution_bitflip(const BlochState& r0, double gamma, double omega0,
                                  double t);
BlochState bloch_solution_spont_emission(const BlochState& r0, double gamma, double t);
BlochState bloch_solution_pd_timedep(const BlochState& r0, double omega0, double omega,
                                     double gamma, double t);

/// A sampled dissipative evolution with its driving field.
struct Trajectory {
    ChannelModel model;
    BlochState r0;
    std::vector<double> times;
    std::vector<BlochState> states;
    std::vector<Field3> fields;

    /// Closed-form resample at an arbitrary time.
    BlochState at(double t) const { return model.bloch_at(r0, t); }
    Field3 field(double t) const { return model.field_at(t); }
};

/// Sample the closed-form trajectory on a uniform grid of n_points over
/// [0, horizon] (n_points >= 2, including both endpoints).
Trajectory sample_trajectory(const ChannelModel& m, const BlochState& r0, double horizon,
                             std::size_t n_points);

/// Integrate the thermal (GAD) master equation with embedded RK45
/// (abs tol 1e-10, rel tol 1e-9), landing on the supplied grid.
Trajectory integrate_gad_master(const BlochState& r0, double omega0, double gamma0,
                                double T_e, const std::vector<double>& t_grid);

/// Ergotropy sudden-death scan: roots of q(t) = 1/(1 + U0) for the AD-type
/// families (AD, NM-AD).  `applicable` is false when U0 <= 0.
struct SuddenDeathResult {
    bool applicable = false;
    double horizon = 0.0; // search window actually used
    std::vector<double> roots; // ascending, localized to 1e-9
    std::optional<double> t_sd;
};

SuddenDeathResult sudden_death_times(const ChannelModel& m, double U0, double horizon);

} // namespace qthermo
