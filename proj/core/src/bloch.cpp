#include "qthermo/bloch.hpp"
#include "qthermo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace qthermo {

namespace {

constexpr double kRadiusTol = 1e-12;

double xlnx(double v) {
    return v > 0.0 ? v * std::log(v) : 0.0;
}

} // namespace

BlochState::BlochState(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
    if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
        throw ValidationError("Bloch vector has non-finite component");
    const double r = norm();
    if (r > 1.0 + kRadiusTol)
        throw ValidationError("Bloch vector outside unit ball: |r| = " + std::to_string(r));
    if (r > 1.0) {
        x /= r;
        y /= r;
        z /= r;
    }
}

BlochState BlochState::spherical(double r, double theta, double phi) {
    return BlochState(r * std::sin(theta) * std::cos(phi),
                      r * std::sin(theta) * std::sin(phi),
                      r * std::cos(theta));
}

double purity_radius(const BlochState& s) {
    return std::clamp(s.norm(), 0.0, 1.0);
}

double von_neumann_entropy(const BlochState& s) {
    const double r = purity_radius(s);
    const double lp = 0.5 * (1.0 + r);
    const double lm = 0.5 * (1.0 - r);
    return -xlnx(lp) - xlnx(lm);
}

double coherence_l1(const BlochState& s, const Field3& h) {
    const double hm = h.magnitude();
    if (hm <= 0.0)
        throw ValidationError("coherence_l1 requires a nonzero field");
    const double proj = (s.x * h.hx + s.y * h.hy + s.z * h.hz) / hm;
    const double r2 = s.x * s.x + s.y * s.y + s.z * s.z;
    return std::sqrt(std::max(0.0, r2 - proj * proj));
}

double trace_distance(const BlochState& a, const BlochState& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return 0.5 * std::sqrt(dx * dx + dy * dy + dz * dz);
}

double relative_entropy_qubit(const BlochState& a, const BlochState& b) {
    const double ra = purity_radius(a);
    const double rb = purity_radius(b);
    if (rb >= 1.0) {
        // b pure: S(a||b) finite only when a coincides with b.
        if (ra >= 1.0 && trace_distance(a, b) <= 1e-15)
            return 0.0;
        return std::numeric_limits<double>::infinity();
    }
    // ln rho_b = c0 I + c1 (b_hat . sigma), from its eigenvalues (1 +- rb)/2.
    const double lbp = 0.5 * (1.0 + rb);
    const double lbm = 0.5 * (1.0 - rb);
    const double c0 = 0.5 * std::log(lbp * lbm);
    const double c1 = std::atanh(rb); // = ln(lbp/lbm) / 2
    double dot = 0.0;
    if (rb > 0.0)
        dot = (a.x * b.x + a.y * b.y + a.z * b.z) / rb;
    return -von_neumann_entropy(a) - c0 - c1 * dot;
}

BlochState thermal_state(const Field3& h, double beta) {
    const double hm = h.magnitude();
    if (std::isinf(beta)) {
        if (hm <= 0.0)
            throw ValidationError("thermal_state: beta = +inf with |h| = 0 is degenerate");
        if (beta < 0.0)
            throw ValidationError("thermal_state: beta must be >= 0 or +inf");
        return BlochState(h.hx / hm, h.hy / hm, h.hz / hm);
    }
    if (!(beta >= 0.0))
        throw ValidationError("thermal_state: beta must be >= 0 or +inf");
    if (hm <= 0.0)
        return BlochState(0.0, 0.0, 0.0);
    const double t = std::tanh(beta * hm);
    return BlochState(t * h.hx / hm, t * h.hy / hm, t * h.hz / hm);
}

BlochState passive_companion(const BlochState& s, const Field3& h) {
    const double hm = h.magnitude();
    if (hm <= 0.0)
        throw ValidationError("passive_companion requires a nonzero field");
    const double r = purity_radius(s);
    return BlochState(r * h.hx / hm, r * h.hy / hm, r * h.hz / hm);
}

} // namespace qthermo
