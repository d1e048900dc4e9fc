#include "qthermo/spectral.hpp"
#include "qthermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qthermo {

SpectralPair SpectralPair::make(std::vector<double> probs, std::vector<double> energies) {
    if (probs.size() < 2 || probs.size() != energies.size())
        throw ValidationError("SpectralPair: need matching prob/energy lists with d >= 2");
    double sum = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < -1e-12)
            throw ValidationError("SpectralPair: probabilities must be >= 0");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("SpectralPair: probabilities must sum to 1");
    for (double e : energies)
        if (!std::isfinite(e))
            throw ValidationError("SpectralPair: energies must be finite");

    std::stable_sort(probs.begin(), probs.end(), std::greater<double>());
    std::stable_sort(energies.begin(), energies.end());
    SpectralPair sp;
    sp.probs = std::move(probs);
    sp.energies = std::move(energies);
    return sp;
}

SpectralPair SpectralPair::from_qubit(const BlochState& s, const Field3& h) {
    const double r = purity_radius(s);
    const double hm = h.magnitude();
    return make({0.5 * (1.0 + r), 0.5 * (1.0 - r)}, {-hm, hm});
}

double passive_energy(const SpectralPair& sp) {
    return std::inner_product(sp.probs.begin(), sp.probs.end(), sp.energies.begin(), 0.0);
}

double ergotropy_general(const SpectralPair& sp, double actual_energy) {
    const double e = actual_energy - passive_energy(sp);
    if (e < -1e-12)
        throw NumericalError("ergotropy_general: actual energy below passive energy");
    return std::max(0.0, e);
}

} // namespace qthermo
