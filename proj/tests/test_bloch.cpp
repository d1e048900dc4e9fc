#include "doctest.h"

#include "oracles.hpp"
#include "qthermo/bloch.hpp"
#include "qthermo/errors.hpp"

#include <cmath>

using namespace qthermo;

TEST_SUITE_BEGIN("bloch");

TEST_CASE("construction validates the Bloch ball") {
    CHECK_THROWS_AS(BlochState(0.8, 0.8, 0.8), ValidationError);
    CHECK_THROWS_AS(BlochState(1.0 + 1e-9, 0.0, 0.0), ValidationError);

    // inside the tolerance band: renormalized onto the sphere
    const BlochState s(1.0 + 5e-13, 0.0, 0.0);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(BlochState(std::nan(""), 0.0, 0.0), ValidationError);
}

TEST_CASE("spherical construction") {
    const BlochState s = BlochState::spherical(0.5, 3.14159265358979323846 / 2.0);
    CHECK(s.x == doctest::Approx(0.5));
    CHECK(s.y == doctest::Approx(0.0));
    CHECK(std::abs(s.z) < 1e-15);

    const BlochState p = BlochState::spherical(1.0, 0.6, 1.1);
    CHECK(p.norm() == doctest::Approx(1.0));
    CHECK(p.z == doctest::Approx(std::cos(0.6)));
}

TEST_CASE("entropy endpoints and monotonicity in r") {
    CHECK(von_neumann_entropy(BlochState(0.0, 0.0, 1.0)) == doctest::Approx(0.0));
    CHECK(von_neumann_entropy(BlochState()) == doctest::Approx(std::log(2.0)));

    const double s_half = von_neumann_entropy(BlochState(0.5, 0.0, 0.0));
    const double lam = 0.75;
    const double expect = -lam * std::log(lam) - (1 - lam) * std::log(1 - lam);
    CHECK(s_half == doctest::Approx(expect).epsilon(1e-12));
    CHECK(s_half < std::log(2.0));
    CHECK(s_half > von_neumann_entropy(BlochState(0.9, 0.0, 0.0)));
}

TEST_CASE("coherence is the transverse component") {
    const Field3 h{0.0, 0.0, 1.0};
    CHECK(coherence_l1(BlochState(0.3, 0.4, 0.5), h) == doctest::Approx(0.5));
    // basis follows the field, not the lab frame
    const Field3 hx{2.0, 0.0, 0.0};
    CHECK(coherence_l1(BlochState(0.3, 0.4, 0.5), hx) ==
          doctest::Approx(std::sqrt(0.16 + 0.25)));
    CHECK_THROWS_AS(coherence_l1(BlochState(), Field3{0.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("trace distance") {
    CHECK(trace_distance(BlochState(1, 0, 0), BlochState(-1, 0, 0)) == doctest::Approx(1.0));
    CHECK(trace_distance(BlochState(0.3, 0, 0), BlochState(0.3, 0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("relative entropy: support, zero, positivity") {
    const BlochState pure(0.0, 0.0, 1.0);
    CHECK(std::isinf(relative_entropy_qubit(BlochState(0.5, 0, 0), pure)));
    CHECK(relative_entropy_qubit(pure, pure) == doctest::Approx(0.0));

    // commuting pair: classical KL of the populations
    const BlochState a(0, 0, 0.6), b(0, 0, -0.2);
    const double pa = 0.8, pb = 0.4;
    const double kl = pa * std::log(pa / pb) + (1 - pa) * std::log((1 - pa) / (1 - pb));
    CHECK(relative_entropy_qubit(a, b) == doctest::Approx(kl).epsilon(1e-12));

    for (int i = 0; i < 200; ++i) {
        const BlochState x = oracle::random_state(), y = oracle::random_state();
        CHECK(relative_entropy_qubit(x, y) >= -1e-12);
    }
}

TEST_CASE("thermal state") {
    const Field3 h{0.0, 0.0, 2.0};
    const BlochState g = thermal_state(h, 0.7);
    CHECK(g.x == doctest::Approx(0.0));
    CHECK(g.z == doctest::Approx(std::tanh(0.7 * 2.0)));

    const BlochState ground = thermal_state(h, std::numeric_limits<double>::infinity());
    CHECK(ground.z == doctest::Approx(1.0));

    const BlochState center = thermal_state(Field3{0, 0, 0}, 1.3);
    CHECK(center.norm() == doctest::Approx(0.0));
    CHECK_THROWS_AS(thermal_state(Field3{0, 0, 0}, std::numeric_limits<double>::infinity()),
                    ValidationError);
}

TEST_CASE("passive companion aligns with the field") {
    const Field3 h{1.0, 2.0, -2.0};
    const BlochState s(0.1, -0.5, 0.6);
    const BlochState pi = passive_companion(s, h);
    CHECK(pi.norm() == doctest::Approx(s.norm()).epsilon(1e-12));
    const double hm = h.magnitude();
    CHECK(pi.x == doctest::Approx(s.norm() * h.hx / hm));
    CHECK(pi.y == doctest::Approx(s.norm() * h.hy / hm));
    CHECK(pi.z == doctest::Approx(s.norm() * h.hz / hm));
}

TEST_SUITE_END();
