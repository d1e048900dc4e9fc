#include "qthermo/kraus.hpp"
#include "qthermo/errors.hpp"

#include <cmath>

namespace qthermo {

double KrausSet::completeness_defect() const {
    Mat2 acc = Mat2::zero();
    for (const auto& k : ops)
        acc = acc + k.adjoint() * k;
    return (acc - Mat2::identity()).max_abs();
}

BlochState apply_kraus(const KrausSet& ks, const BlochState& s) {
    if (ks.ops.empty())
        throw ValidationError("apply_kraus: empty Kraus set");
    const double defect = ks.completeness_defect();
    if (defect > 1e-8)
        throw NumericalError("apply_kraus: completeness defect " + std::to_string(defect));
    const Mat2 rho = bloch_to_density(s);
    Mat2 out = Mat2::zero();
    for (const auto& k : ks.ops)
        out = out + k * rho * k.adjoint();
    const double tr = out.trace().real();
    if (!(tr > 0.0))
        throw NumericalError("apply_kraus: non-positive output trace");
    out = cplx(1.0 / tr) * out;
    return density_to_bloch(out);
}

} // namespace qthermo
