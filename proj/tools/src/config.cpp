#include "config.hpp"

#include "csvio.hpp"
#include "qthermo/errors.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace qthermo::cli {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_number(const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const double x = std::strtod(begin, &end);
    if (end == begin || *end != '\0') fail(line, "not a number: '" + v + "'");
    return x;
}

long parse_integer(const std::string& v, int line) {
    const char* begin = v.c_str();
    char* end = nullptr;
    const long x = std::strtol(begin, &end, 10);
    if (end == begin || *end != '\0') fail(line, "not an integer: '" + v + "'");
    return x;
}

int parse_orientation(const std::string& v, int line) {
    if (v == "+1" || v == "1") return 1;
    if (v == "-1") return -1;
    fail(line, "measure.orientation must be +1 or -1, got '" + v + "'");
}

} // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string stripped = trim(raw);
        if (stripped.empty()) continue;

        const auto eq = stripped.find('=');
        if (eq == std::string::npos) fail(line, "expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(line, "empty key");
        if (value.empty()) fail(line, "empty value for key '" + key + "'");
        if (!seen.insert(key).second) fail(line, "duplicate key '" + key + "'");

        if (key == "channel.family") {
            try {
                cfg.model.family = family_from_string(value);
            } catch (const ValidationError& e) {
                fail(line, e.what());
            }
        } else if (key == "channel.gamma") {
            cfg.model.gamma = parse_number(value, line);
        } else if (key == "channel.Gamma") {
            cfg.model.big_gamma = parse_number(value, line);
        } else if (key == "channel.omega0") {
            cfg.model.omega0 = parse_number(value, line);
        } else if (key == "channel.omega") {
            cfg.model.omega = parse_number(value, line);
        } else if (key == "channel.omega_c") {
            cfg.model.omega_c = parse_number(value, line);
        } else if (key == "channel.s") {
            cfg.model.s = parse_number(value, line);
        } else if (key == "channel.Te") {
            cfg.model.T_e = parse_number(value, line);
        } else if (key == "channel.p") {
            cfg.model.p = parse_number(value, line);
        } else if (key == "init.r0") {
            cfg.r0 = parse_number(value, line);
        } else if (key == "init.theta0") {
            cfg.theta0 = parse_number(value, line);
        } else if (key == "init.phi0") {
            cfg.phi0 = parse_number(value, line);
        } else if (key == "init.x") {
            cfg.x0 = parse_number(value, line);
        } else if (key == "init.y") {
            cfg.y0 = parse_number(value, line);
        } else if (key == "init.z") {
            cfg.z0 = parse_number(value, line);
        } else if (key == "time.horizon") {
            cfg.horizon = parse_number(value, line);
        } else if (key == "time.grid") {
            cfg.grid = parse_integer(value, line);
        } else if (key == "output.name") {
            cfg.name = value;
        } else if (key == "measure.kind") {
            cfg.measure_kind = value;
        } else if (key == "measure.signal") {
            cfg.measure_signal = value;
        } else if (key == "measure.orientation") {
            cfg.measure_orientation = parse_orientation(value, line);
        } else if (key == "sweep.key") {
            cfg.sweep_key = value;
        } else if (key == "sweep.from") {
            cfg.sweep_from = parse_number(value, line);
        } else if (key == "sweep.to") {
            cfg.sweep_to = parse_number(value, line);
        } else if (key == "sweep.step") {
            cfg.sweep_step = parse_number(value, line);
        } else if (key == "events.kind") {
            cfg.events_kind = value;
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    std::ostringstream out;
    auto num = [&](const char* key, double v) { out << key << " = " << format_double(v) << "\n"; };
    out << "channel.family = " << family_name(cfg.model.family) << "\n";
    num("channel.gamma", cfg.model.gamma);
    num("channel.Gamma", cfg.model.big_gamma);
    num("channel.omega0", cfg.model.omega0);
    num("channel.omega", cfg.model.omega);
    num("channel.omega_c", cfg.model.omega_c);
    num("channel.s", cfg.model.s);
    num("channel.Te", cfg.model.T_e);
    num("channel.p", cfg.model.p);
    if (cfg.r0) num("init.r0", *cfg.r0);
    if (cfg.theta0) num("init.theta0", *cfg.theta0);
    if (cfg.phi0) num("init.phi0", *cfg.phi0);
    if (cfg.x0) num("init.x", *cfg.x0);
    if (cfg.y0) num("init.y", *cfg.y0);
    if (cfg.z0) num("init.z", *cfg.z0);
    if (cfg.horizon) num("time.horizon", *cfg.horizon);
    if (cfg.grid) out << "time.grid = " << *cfg.grid << "\n";
    if (cfg.name) out << "output.name = " << *cfg.name << "\n";
    if (cfg.measure_kind) out << "measure.kind = " << *cfg.measure_kind << "\n";
    if (cfg.measure_signal) out << "measure.signal = " << *cfg.measure_signal << "\n";
    if (cfg.measure_orientation) {
        out << "measure.orientation = " << (*cfg.measure_orientation > 0 ? "+1" : "-1") << "\n";
    }
    if (cfg.sweep_key) out << "sweep.key = " << *cfg.sweep_key << "\n";
    if (cfg.sweep_from) num("sweep.from", *cfg.sweep_from);
    if (cfg.sweep_to) num("sweep.to", *cfg.sweep_to);
    if (cfg.sweep_step) num("sweep.step", *cfg.sweep_step);
    if (cfg.events_kind) out << "events.kind = " << *cfg.events_kind << "\n";
    return out.str();
}

BlochState initial_state(const ScenarioConfig& cfg) {
    const bool cart = cfg.x0 || cfg.y0 || cfg.z0;
    const bool sph = cfg.r0 || cfg.theta0 || cfg.phi0;
    if (cart && sph) {
        throw ConfigError("initial state set in both cartesian (init.x/y/z) and "
                          "spherical (init.r0/theta0/phi0) form");
    }
    if (cart) {
        return BlochState(cfg.x0.value_or(0.0), cfg.y0.value_or(0.0), cfg.z0.value_or(0.0));
    }
    if (sph) {
        if (!cfg.r0) throw ConfigError("spherical initial state needs init.r0");
        return BlochState::spherical(*cfg.r0, cfg.theta0.value_or(0.0), cfg.phi0.value_or(0.0));
    }
    return BlochState();
}

} // namespace qthermo::cli
