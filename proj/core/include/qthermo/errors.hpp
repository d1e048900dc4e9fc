#pragma once

#include <stdexcept>
#include <string>

namespace qthermo {

/// Bad user-facing input: malformed config, out-of-range parameter,
/// state outside the Bloch ball beyond tolerance.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical routine failed to converge or produced an inconsistent
/// intermediate (quadrature depth exhausted, step underflow, q(t) outside
/// [0,1] beyond tolerance, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// A non-Markovianity witness was requested for a channel/signal pair that
/// does not satisfy the witness preconditions. The message names the
/// violated condition.
class WitnessInapplicable : public std::runtime_error {
public:
    explicit WitnessInapplicable(const std::string& condition)
        : std::runtime_error("witness inapplicable: " + condition) {}
};

} // namespace qthermo
