#pragma once

#include "qthermo/bloch.hpp"
#include "qthermo/channels.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace qthermo::cli {

/// Malformed config file or unusable command input.  Messages carry the
/// offending line number when one exists.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// One scenario: channel parameters, initial state, time grid, and the
/// per-command sections (measure.*, sweep.*, events.*).  Optional fields
/// stay empty unless the file sets them.
struct ScenarioConfig {
    ChannelModel model;

    // init.r0 / init.theta0 / init.phi0 (spherical), or init.x/y/z
    std::optional<double> r0, theta0, phi0;
    std::optional<double> x0, y0, z0;

    std::optional<double> horizon; // time.horizon
    std::optional<long> grid;      // time.grid

    std::optional<std::string> name; // output.name, base name of emitted files

    std::optional<std::string> measure_kind;   // ND | NC | NQ_entro | NQ_ergo | NF-custom
    std::optional<std::string> measure_signal; // NF-custom: C,S,U,r,T_ergo,Q_stand,Q_ergo,Q_entro
    std::optional<int> measure_orientation;    // sign of dF/dt under memoryless dynamics

    std::optional<std::string> sweep_key; // channel.* key swept by cmd measure
    std::optional<double> sweep_from, sweep_to, sweep_step;

    std::optional<std::string> events_kind; // sudden-death | tc | freezing

    bool operator==(const ScenarioConfig&) const = default;
};

/// Parse the flat key = value format ('#' comments, dotted keys).
/// Unknown keys, duplicates, and malformed values raise ConfigError with
/// the 1-based line number.
ScenarioConfig parse_config(const std::string& text);

ScenarioConfig load_config(const std::string& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& cfg);

/// Resolve the initial Bloch state.  Cartesian and spherical forms are
/// mutually exclusive; nothing set means the maximally mixed state.
BlochState initial_state(const ScenarioConfig& cfg);

} // namespace qthermo::cli
