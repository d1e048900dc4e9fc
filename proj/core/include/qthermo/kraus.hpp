#pragma once

#include "qthermo/bloch.hpp"
#include "qthermo/mat2.hpp"

#include <vector>

namespace qthermo {

/// A snapshot Kraus decomposition {K_i} of a qubit channel at one instant.
struct KrausSet {
    std::vector<Mat2> ops;
    double t = 0.0;

    /// Max-abs entry of sum_i K_i^dagger K_i - I.
    double completeness_defect() const;
};

/// Apply sum_i K_i rho K_i^dagger to a Bloch state.
/// Rejects sets whose completeness defect exceeds 1e-8; the output trace is
/// renormalized before conversion back to a Bloch vector.
BlochState apply_kraus(const KrausSet& ks, const BlochState& s);

} // namespace qthermo
