#pragma once

#include "qthermo/bloch.hpp"
#include "qthermo/channels.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace qthermo {

/// Maximal interval on which a monitored signal runs against its Markovian
/// direction.  t_end == horizon marks a window still open at the horizon.
struct MonotoneInterval {
    double t_begin = 0.0;
    double t_end = 0.0;
};

/// Hunt the maximal intervals of [t0, t1] where F moves against
/// `orientation` (+1: F rises under Markovian dynamics, -1: it falls).
/// The signal is sampled on base_n steps, the grid doubled until the run
/// structure stabilizes (at most 12 rounds), and each interior endpoint is
/// localized to 1e-9, through the sign of `rate_sign` when supplied and a
/// central-difference slope otherwise.  Steps with |dF| below 1e-13 of the
/// signal scale are neutral: they neither open nor close a run.
std::vector<MonotoneInterval> sign_intervals(
    const std::function<double(double)>& F, double t0, double t1, int orientation,
    std::size_t base_n = 1024,
    const std::function<double(double)>* rate_sign = nullptr);

struct MeasureOutcome {
    double value = 0.0;
    std::vector<MonotoneInterval> intervals;
    /// Optimizing initial z for the entropy-heat measure; NaN elsewhere.
    double z_opt = 0.0;
};

/// Total variation of F accumulated against its Markovian direction.
MeasureOutcome measure_NF(const std::function<double(double)>& F, double t0, double t1,
                          int orientation, std::size_t base_n = 1024,
                          const std::function<double(double)>* rate_sign = nullptr);

/// Trace-distance (BLP) measure over the antipodal equatorial pair
/// (+x, -x), the maximally distinguishable pair for these channels.
MeasureOutcome measure_ND_blp(const ChannelModel& m, double horizon,
                              std::size_t base_n = 1024);

/// Coherence measure over the maximally coherent probe (1, 0, 0).
MeasureOutcome measure_NC(const ChannelModel& m, double horizon,
                          std::size_t base_n = 1024);

/// Entropy-based-heat measure, maximized over pure probes (C0, 0, z0) with
/// z0 in (0, 1).  Requires a unital channel that preserves the sign of the
/// internal energy along the evolution.
MeasureOutcome measure_NQ_entro(const ChannelModel& m, double horizon,
                                std::size_t base_n = 1024);

/// Ergotropy-based-heat measure over the equatorial pure probe.
MeasureOutcome measure_NQ_ergo(const ChannelModel& m, double horizon,
                               std::size_t base_n = 1024);

/// Temperature witness: detects non-monotone T_ergo(t) along a trajectory.
/// `intervals` are the runs moving against the dominant direction and
/// `backflow_total` is the variation they accumulate.
struct TemperatureWitness {
    bool detected = false;
    double backflow_total = 0.0;
    std::vector<MonotoneInterval> intervals;
};

/// Requires 0 < r < 1 at every stored trajectory point.
TemperatureWitness witness_temperature(const Trajectory& traj,
                                       std::size_t base_n = 1024);

/// Family-adapted default horizon for the measures above.
double default_measure_horizon(const ChannelModel& m);

} // namespace qthermo
