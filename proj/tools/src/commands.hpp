#pragma once

#include "config.hpp"
#include "csvio.hpp"
#include "qthermo/thermo.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qthermo::cli {

/// Each command throws on failure; the main driver maps exception types
/// to process exit codes.

void run_simulate(const ScenarioConfig& cfg, const std::string& out_dir);
void run_measure(const ScenarioConfig& cfg, const std::string& out_dir);
void run_events(const ScenarioConfig& cfg, const std::string& out_dir);
void run_plot(const std::string& csv_path, const std::vector<std::string>& columns,
              const std::string& out_dir);
void run_preset(const std::string& id, const std::string& out_dir);

std::vector<std::string> preset_ids();

// shared plumbing
void ensure_out_dir(const std::string& dir);
CsvTable ledger_table(const ThermoLedger& ledger);
double effective_horizon(const ScenarioConfig& cfg);
std::size_t effective_grid(const ScenarioConfig& cfg);

} // namespace qthermo::cli
