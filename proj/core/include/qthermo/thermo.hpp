#pragma once

#include "qthermo/bloch.hpp"
#include "qthermo/channels.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qthermo {

/// Internal energy U = -h . r for H = -h . sigma.
double internal_energy(const BlochState& state, const Field3& field);

/// Ergotropy split into incoherent and coherent parts.
struct ErgotropyParts {
    double total = 0.0;
    double incoherent = 0.0;
    double coherent = 0.0;
};

ErgotropyParts ergotropy_parts(const BlochState& state, const Field3& field);

/// Unit-field shortcut: E = U + sqrt(C^2 + U^2) for |h| = 1.
double ergotropy_qubit(double coherence, double internal);

/// The three nonequilibrium temperatures.  Sentinels: all +inf for the
/// maximally mixed state, all 0 for pure states, T_stand = +inf when the
/// state is orthogonal to the field, all NaN when the field vanishes.
struct Temperatures {
    double t_stand = 0.0;
    double t_entro = 0.0;
    double t_ergo = 0.0;
};

Temperatures temperatures(const BlochState& state, const Field3& field);

/// Entropy production of one map step with stationary state `fixed`
/// (must be mixed): sigma = D(prev||fixed) - D(next||fixed), its passive
/// part computed from the passive companions, and the difference.
struct EntropyProduction {
    double sigma = 0.0;
    double sigma_passive = 0.0;
    double sigma_nonpassive = 0.0;
};

EntropyProduction entropy_production_step(const BlochState& prev, const BlochState& next,
                                          const BlochState& fixed, const Field3& field);

/// One output record: state functions plus cumulative ledgers (from t = 0)
/// of the three heat/work formulations and the operational heat.
struct LedgerRow {
    double t = 0.0;
    double x = 0.0, y = 0.0, z = 0.0, r = 0.0;
    double U = 0.0, S = 0.0, C = 0.0;
    double E = 0.0, E_I = 0.0, E_C = 0.0;
    double Q_stand = 0.0, W_stand = 0.0;
    double Q_entro = 0.0, W_entro = 0.0, W_star = 0.0;
    double Q_ergo = 0.0, W_ergo = 0.0;
    double Q_op = 0.0;
    double T_stand = 0.0, T_entro = 0.0, T_ergo = 0.0;
};

struct ThermoLedger {
    std::vector<LedgerRow> rows;
    /// Cumulative midpoint quadrature of dQ_ergo / T_ergo (entropy flux).
    std::vector<double> s_flux;
    /// Set when a radius fell under 1e-12 and the entropy-based heat
    /// increment had to be dropped.
    bool radius_underflow = false;

    /// max_i |(U_i - U_0) - (Q_i + W_i)| for each formulation.
    double closure_defect_stand() const;
    double closure_defect_entro() const;
    double closure_defect_ergo() const;
};

/// Midpoint-rule ledger over the trajectory grid.  Every step must move the
/// Bloch vector by less than 0.05; a coarser grid is rejected.
ThermoLedger accumulate_ledger(const Trajectory& traj);

/// Ledger on a uniform grid refined (n -> 2n - 1) until the final cumulative
/// columns and the entropy flux agree across rounds within tol.
ThermoLedger accumulate_with_refinement(const ChannelModel& m, const BlochState& r0,
                                        double horizon, std::size_t n0, double tol = 1e-8,
                                        int max_rounds = 12);

/// Zeros of the cumulative entropy-based heat for t > 0.  t_c is the first
/// one; roots are localized to xtol with the closed-form resampler.
struct AdiabaticResult {
    std::vector<double> roots;
    std::optional<double> t_c;
};

AdiabaticResult adiabatic_time_tc(const Trajectory& traj, double xtol = 1e-9);

/// Environment-work decomposition at row i: W*(t_i) against the passive
/// energy change and the ergotropy change; defect = W* - dU_pi - dE.
struct EnvWorkSplit {
    double w_star = 0.0;
    double delta_u_pi = 0.0;
    double delta_e = 0.0;
    double defect = 0.0;
};

EnvWorkSplit env_work_split(const ThermoLedger& ledger, std::size_t i);

} // namespace qthermo
