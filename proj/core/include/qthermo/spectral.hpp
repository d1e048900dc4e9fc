#pragma once

#include "qthermo/bloch.hpp"

#include <cstddef>
#include <vector>

namespace qthermo {

/// Eigenvalue ladder of a d-level state/Hamiltonian pair in the canonical
/// passive order: probabilities descending, energies ascending.
///
/// make() sorts both inputs into that order (stable, so degenerate entries
/// keep their relative positions) after validating that the probabilities
/// form a distribution and everything is finite.
struct SpectralPair {
    std::vector<double> probs;    // descending
    std::vector<double> energies; // ascending

    static SpectralPair make(std::vector<double> probs, std::vector<double> energies);

    /// Spectral data of a qubit state under H = -h . sigma:
    /// probabilities {(1+r)/2, (1-r)/2}, energies {-|h|, +|h|}.
    static SpectralPair from_qubit(const BlochState& s, const Field3& h);

    std::size_t dim() const { return probs.size(); }
};

/// Energy of the passive state: sum_k p_k eps_k in the canonical order.
/// This is the minimum of tr[U rho U^dagger H] over unitaries U.
double passive_energy(const SpectralPair& sp);

/// Ergotropy = actual_energy - passive_energy(sp).  Negative results beyond
/// -1e-12 indicate an inconsistent input and are rejected; the tolerance
/// band is clamped to zero.
double ergotropy_general(const SpectralPair& sp, double actual_energy);

} // namespace qthermo
