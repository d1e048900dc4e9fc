#pragma once

#include <cmath>

namespace qthermo {

/// Cartesian control field h.  The qubit Hamiltonian is H = -h . sigma,
/// so the ground state points along +h and has energy -|h| (hbar = kB = 1).
struct Field3 {
    double hx = 0.0;
    double hy = 0.0;
    double hz = 0.0;

    double magnitude() const { return std::sqrt(hx * hx + hy * hy + hz * hz); }
};

/// A qubit state as a Bloch vector, rho = (I + r . sigma) / 2.
///
/// Construction validates |r| <= 1 + 1e-12; vectors inside the tolerance
/// band are renormalized onto the sphere, anything beyond is rejected.
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    BlochState() = default;
    BlochState(double x_, double y_, double z_);

    /// Build from spherical coordinates (radius, polar angle from +z, azimuth).
    static BlochState spherical(double r, double theta, double phi = 0.0);

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

/// |r| clamped to [0, 1].
double purity_radius(const BlochState& s);

/// Von Neumann entropy in nats, from eigenvalues (1 +- r)/2 with 0 ln 0 := 0.
double von_neumann_entropy(const BlochState& s);

/// l1 coherence relative to the field eigenbasis: the Bloch component
/// transverse to h.  Requires |h| > 0.
double coherence_l1(const BlochState& s, const Field3& h);

/// Trace distance |r_a - r_b| / 2.
double trace_distance(const BlochState& a, const BlochState& b);

/// Quantum relative entropy S(a||b) in nats, computed from the 2x2 spectral
/// forms.  Returns +infinity when b is pure and a != b (support violation).
double relative_entropy_qubit(const BlochState& a, const BlochState& b);

/// Gibbs state of H = -h . sigma at inverse temperature beta:
/// r = tanh(beta |h|) h_hat.  beta may be +infinity (pure ground state)
/// unless |h| = 0, which is rejected as degenerate in that case.
BlochState thermal_state(const Field3& h, double beta);

/// The passive companion of s for field h: same spectrum, Bloch vector
/// aligned with +h_hat (largest population on the ground state).
BlochState passive_companion(const BlochState& s, const Field3& h);

} // namespace qthermo
