#include "doctest.h"

#include "oracles.hpp"
#include "qthermo/channels.hpp"
#include "qthermo/errors.hpp"

#include <cmath>
#include <limits>
#include <vector>

using namespace qthermo;

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_close(const BlochState& a, const BlochState& b, double tol) {
    CHECK(std::abs(a.x - b.x) <= tol);
    CHECK(std::abs(a.y - b.y) <= tol);
    CHECK(std::abs(a.z - b.z) <= tol);
}

ChannelModel make(Family f) {
    ChannelModel m;
    m.family = f;
    return m;
}

} // namespace

TEST_SUITE_BEGIN("channels");

TEST_CASE("family names round-trip") {
    for (Family f : {Family::AD, Family::GAD, Family::PD, Family::NMPD, Family::NMAD,
                     Family::BitflipDiss, Family::SpontEmission, Family::OhmicPD,
                     Family::GadMaster, Family::PdTimedep}) {
        CHECK(family_from_string(family_name(f)) == f);
    }
    CHECK(family_name(Family::NMPD) == "NM-PD");
    CHECK(family_name(Family::BitflipDiss) == "BITFLIP-DISS");
    CHECK_THROWS_AS(family_from_string("AD2"), ValidationError);
}

TEST_CASE("parameter validation") {
    ChannelModel m = make(Family::AD);
    m.gamma = 0.0;
    CHECK_THROWS_AS(m.validate(), ValidationError);

    m = make(Family::GAD);
    m.p = 1.2;
    CHECK_THROWS_AS(m.validate(), ValidationError);

    m = make(Family::OhmicPD);
    m.s = -0.5;
    CHECK_THROWS_AS(m.validate(), ValidationError);

    m = make(Family::PdTimedep);
    m.omega = 0.0;
    CHECK_THROWS_AS(m.validate(), ValidationError);

    CHECK_THROWS_AS(make(Family::PD).bloch_at(BlochState(), -0.1), ValidationError);
}

TEST_CASE("elementary Kraus sets are complete") {
    for (int i = 0; i < 25; ++i) {
        const double p = oracle::uniform(0.0, 1.0);
        const double a = oracle::uniform(0.0, 1.0);
        CHECK(kraus_ad(p).completeness_defect() <= 1e-10);
        CHECK(kraus_pd(0.5 * p).completeness_defect() <= 1e-10);
        CHECK(kraus_gad(p, a).completeness_defect() <= 1e-10);
    }
}

TEST_CASE("closed forms agree with the Kraus path") {
    for (Family f : {Family::AD, Family::GAD, Family::PD, Family::NMPD, Family::NMAD}) {
        ChannelModel m = make(f);
        m.gamma = 0.8;
        m.big_gamma = 0.3;
        m.p = 0.7;
        for (int i = 0; i < 20; ++i) {
            const BlochState s0 = oracle::random_state();
            const double t = oracle::uniform(0.0, 6.0);
            check_close(m.bloch_at(s0, t), apply_kraus(build_kraus(m, t), s0), 1e-12);
        }
    }
    CHECK_THROWS_AS(build_kraus(make(Family::OhmicPD), 1.0), ValidationError);
}

TEST_CASE("damping endpoint maps") {
    // full amplitude damping sends the south pole to the ground state
    const BlochState south(0.0, 0.0, -1.0);
    check_close(apply_kraus(kraus_ad(1.0), south), BlochState(0.0, 0.0, 1.0), 1e-15);
    check_close(apply_kraus(kraus_gad(1.0, 1.0), oracle::random_state()),
                BlochState(0.0, 0.0, 1.0), 1e-15);

    // phase damping only attenuates the transverse plane
    ChannelModel pd = make(Family::PD);
    pd.gamma = 1.3;
    const BlochState s0(0.4, -0.2, 0.5);
    const double f = std::exp(-0.5 * 1.3 * 2.0);
    check_close(pd.bloch_at(s0, 2.0), BlochState(f * 0.4, -f * 0.2, 0.5), 1e-14);
}

TEST_CASE("Markov limits against constant-rate master equations") {
    ChannelModel ad = make(Family::AD);
    ad.gamma = 0.9;
    ChannelModel gad = make(Family::GAD);
    gad.gamma = 0.7;
    gad.p = 0.25;
    ChannelModel pd = make(Family::PD);
    pd.gamma = 1.1;
    const BlochState s0(0.5, -0.3, 0.4);
    for (double t : {0.3, 1.0, 2.7}) {
        check_close(ad.bloch_at(s0, t), oracle::evolve(oracle::rhs_ad(0.9), s0, t), 1e-8);
        check_close(gad.bloch_at(s0, t), oracle::evolve(oracle::rhs_gad(0.7, 0.25), s0, t),
                    1e-8);
        check_close(pd.bloch_at(s0, t), oracle::evolve(oracle::rhs_pd(1.1), s0, t), 1e-8);
    }
}

TEST_CASE("memory-kernel exponents solve the kernel amplitude equation") {
    for (double ratio : {1e-3, 1e-1, 1.0, 10.0}) {
        const double gamma = 1.0;
        const double big_gamma = ratio * gamma;
        for (double t : {0.4, 2.0, 9.0, 30.0}) {
            const double u = oracle::kernel_amplitude(gamma, big_gamma, t);
            CHECK(nm_ad_q(gamma, big_gamma, t) == doctest::Approx(u * u).epsilon(1e-8));
            const double q = nm_ad_q(gamma, big_gamma, t);
            CHECK(q >= 0.0);
            CHECK(q <= 1.0);
        }
    }
}

TEST_CASE("NM-PD exponent integrates its own rate") {
    const double gamma = 1.0, big_gamma = 0.35;
    for (double t : {0.5, 2.0, 11.0}) {
        // midpoint rule on the kernel-smoothed rate (gamma/2)(1 - e^{-G tau})
        const int n = 200000;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            const double tau = t * (i + 0.5) / n;
            acc += 0.5 * gamma * (1.0 - std::exp(-big_gamma * tau)) * (t / n);
        }
        CHECK(nm_pd_q(gamma, big_gamma, t) == doctest::Approx(acc).epsilon(1e-9));
    }

    // stiff-reservoir limit collapses onto the Markov attenuation
    for (double t : {0.1, 1.0, 5.0}) {
        CHECK(std::exp(-nm_pd_q(1.0, 1e6, t)) ==
              doctest::Approx(std::exp(-0.5 * t)).epsilon(1e-4));
    }
}

TEST_CASE("NM-AD snapshot at t = 0 is the identity pair") {
    ChannelModel m = make(Family::NMAD);
    m.gamma = 1.0;
    m.big_gamma = 0.5;
    const KrausSet ks = build_kraus(m, 0.0);
    REQUIRE(ks.ops.size() == 2);
    CHECK((ks.ops[0] - Mat2::identity()).max_abs() <= 1e-12);
    CHECK(ks.ops[1].max_abs() <= 1e-12);
}

TEST_CASE("bit-flip dissipative channel against the master equation") {
    ChannelModel m = make(Family::BitflipDiss);
    m.gamma = 0.1;
    m.omega0 = 1.0;
    const auto rhs = oracle::rhs_bitflip(0.1, 1.0);

    const BlochState s0(0.5, 0.0, 0.5);
    for (double t : {0.5, 2.0, 5.0, 12.0}) {
        const BlochState got = m.bloch_at(s0, t);
        check_close(got, oracle::evolve(rhs, s0, t), 1e-8);
        CHECK(got.z == doctest::Approx(0.5 * std::exp(-2.0 * 0.1 * t)).epsilon(1e-12));
    }
    for (int i = 0; i < 5; ++i) {
        const BlochState r = oracle::random_state();
        check_close(m.bloch_at(r, 3.0), oracle::evolve(rhs, r, 3.0), 1e-8);
    }
}

TEST_CASE("spontaneous emission solution") {
    ChannelModel m = make(Family::SpontEmission);
    m.gamma = 1.0;
    const BlochState s0(1.0, 0.0, 0.0);
    const BlochState s1 = m.bloch_at(s0, 1.0);
    CHECK(s1.z == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(std::hypot(s1.x, s1.y) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

    const auto rhs = oracle::rhs_spont(1.0);
    for (int i = 0; i < 5; ++i) {
        const BlochState r = oracle::random_state();
        check_close(m.bloch_at(r, 1.7), oracle::evolve(rhs, r, 1.7), 1e-8);
    }
}

TEST_CASE("Ohmic rate, integral, attenuation") {
    CHECK(ohmic_rate(1.0, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(ohmic_rate(3.7, 0.0, 1.0) == 0.0);

    // s = 1 closes in elementary functions
    for (double t : {0.3, 1.0, 4.0}) {
        CHECK(ohmic_rate_integral(t, 1.0, 1.0) ==
              doctest::Approx(0.5 * std::log(1.0 + t * t)).epsilon(1e-10));
        CHECK(dephasing_attenuation(t, 1.0, 1.0) ==
              doctest::Approx(1.0 / std::sqrt(1.0 + t * t)).epsilon(1e-9));
    }

    // generic s against a blunt midpoint quadrature
    const double s = 3.2, t_end = 2.0;
    const int n = 400000;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += ohmic_rate(t_end * (i + 0.5) / n, s, 1.0) * (t_end / n);
    CHECK(ohmic_rate_integral(t_end, s, 1.0) == doctest::Approx(acc).epsilon(1e-9));
}

TEST_CASE("negative-rate windows of the Ohmic family") {
    CHECK(critical_times(1.5, 1.0).empty());
    CHECK(critical_times(2.0, 1.0).empty());

    const auto w32 = critical_times(3.2, 1.0);
    REQUIRE(w32.size() == 1);
    CHECK(w32[0].first == doctest::Approx(std::tan(kPi / 3.2)).epsilon(1e-12));
    CHECK(std::isinf(w32[0].second));

    const auto w4 = critical_times(4.0, 1.0);
    REQUIRE(w4.size() == 1);
    CHECK(w4[0].first == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(w4[0].second));

    const auto w5 = critical_times(5.0, 2.0);
    REQUIRE(w5.size() == 1);
    CHECK(w5[0].first == doctest::Approx(std::tan(kPi / 5.0) / 2.0).epsilon(1e-12));
    CHECK(w5[0].second == doctest::Approx(std::tan(2.0 * kPi / 5.0) / 2.0).epsilon(1e-12));

    // the rate is negative strictly inside a window and non-negative outside
    for (double tt : {0.5 * w5[0].first, 0.5 * (w5[0].first + w5[0].second),
                      2.0 * w5[0].second}) {
        const double rate = ohmic_rate(tt, 5.0, 2.0);
        const bool inside = tt > w5[0].first && tt < w5[0].second;
        CHECK((inside ? rate < 0.0 : rate >= 0.0));
    }
}

TEST_CASE("Ohmic dephasing channel against the master equation") {
    ChannelModel m = make(Family::OhmicPD);
    m.s = 3.2;
    m.omega0 = 1.0;
    m.omega_c = 1.0;
    const auto rhs = oracle::rhs_ohmic(3.2, 1.0, 1.0);
    for (const BlochState& s0 : {BlochState(0.8, 0.0, 0.0), BlochState(0.3, -0.4, 0.6)}) {
        for (double t : {0.7, 1.4966, 3.0}) {
            check_close(m.bloch_at(s0, t), oracle::evolve(rhs, s0, t), 1e-8);
        }
    }
}

TEST_CASE("thermal master equation: closed form, RK45, and oracle agree") {
    ChannelModel m = make(Family::GadMaster);
    m.gamma = 1.0;
    m.omega0 = 1.0;
    m.T_e = 10.0;
    std::vector<double> grid;
    for (int i = 0; i <= 24; ++i) grid.push_back(0.6 * i / 24.0);
    const BlochState s0(0.45, 0.0, 0.8);
    const Trajectory ode = integrate_gad_master(s0, 1.0, 1.0, 10.0, grid);
    const auto rhs = oracle::rhs_gad_master(1.0, 1.0, 10.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        check_close(m.bloch_at(s0, grid[i]), ode.states[i], 1e-8);
        check_close(ode.states[i], oracle::evolve(rhs, s0, grid[i], 20000), 1e-8);
    }
    const auto fp = m.fixed_point();
    REQUIRE(fp.has_value());
    CHECK(fp->z == doctest::Approx(-std::tanh(0.05)).epsilon(1e-14));
}

TEST_CASE("driven dephasing solution") {
    // zero damping leaves a bare precession
    const BlochState s0(0.5, 0.7, 0.0);
    const BlochState rot = bloch_solution_pd_timedep(s0, 1.0, 1.0, 0.0, 2.0);
    CHECK(rot.norm() == doctest::Approx(s0.norm()).epsilon(1e-14));
    CHECK(rot.z == doctest::Approx(0.0));

    ChannelModel m = make(Family::PdTimedep);
    m.omega0 = 1.0;
    m.omega = 1.0;
    m.gamma = 1.0;
    for (double t : {0.5, 1.5, 3.0}) {
        const BlochState st = m.bloch_at(s0, t);
        CHECK(std::hypot(st.x, st.y) ==
              doctest::Approx(std::sqrt(0.74) * std::exp(-2.0 * t)).epsilon(1e-12));
        check_close(st, oracle::evolve(oracle::rhs_pd_timedep(1.0, 1.0, 1.0), s0, t), 1e-8);
    }
}

TEST_CASE("unitality and fixed points") {
    CHECK(make(Family::PD).is_unital());
    CHECK(make(Family::NMPD).is_unital());
    CHECK(make(Family::OhmicPD).is_unital());
    CHECK(make(Family::PdTimedep).is_unital());
    CHECK(make(Family::BitflipDiss).is_unital());
    CHECK_FALSE(make(Family::AD).is_unital());
    CHECK_FALSE(make(Family::NMAD).is_unital());
    CHECK_FALSE(make(Family::SpontEmission).is_unital());
    CHECK_FALSE(make(Family::GadMaster).is_unital());

    ChannelModel gad = make(Family::GAD);
    gad.p = 0.5;
    CHECK(gad.is_unital());
    gad.p = 0.8;
    CHECK_FALSE(gad.is_unital());
    CHECK(gad.fixed_point()->z == doctest::Approx(0.6));

    CHECK(make(Family::AD).fixed_point()->z == doctest::Approx(1.0));
    CHECK(make(Family::BitflipDiss).fixed_point()->norm() == doctest::Approx(0.0));
    CHECK_FALSE(make(Family::PD).fixed_point().has_value());
    CHECK_FALSE(make(Family::PdTimedep).fixed_point().has_value());
}

TEST_CASE("trajectory sampling") {
    ChannelModel m = make(Family::AD);
    m.gamma = 1.0;
    const BlochState s0(0.3, 0.1, -0.5);
    const Trajectory tr = sample_trajectory(m, s0, 4.0, 81);
    REQUIRE(tr.times.size() == 81);
    REQUIRE(tr.states.size() == 81);
    REQUIRE(tr.fields.size() == 81);
    CHECK(tr.times.front() == 0.0);
    CHECK(tr.times.back() == doctest::Approx(4.0));
    check_close(tr.states.front(), s0, 1e-15);
    check_close(tr.states[40], m.bloch_at(s0, tr.times[40]), 1e-15);
    CHECK(tr.fields[3].hz == doctest::Approx(1.0));
    CHECK_THROWS_AS(sample_trajectory(m, s0, 4.0, 1), ValidationError);
}

TEST_CASE("ergotropy sudden death times") {
    ChannelModel ad = make(Family::AD);
    ad.gamma = 1.0;
    const auto res = sudden_death_times(ad, 0.5, 10.0);
    REQUIRE(res.applicable);
    CHECK(res.horizon == doctest::Approx(10.0));
    REQUIRE(res.roots.size() == 1);
    CHECK(res.roots[0] == doctest::Approx(std::log(1.5)).epsilon(1e-9));
    REQUIRE(res.t_sd.has_value());
    CHECK(*res.t_sd == doctest::Approx(std::log(1.5)).epsilon(1e-9));

    CHECK_FALSE(sudden_death_times(ad, -0.2, 10.0).applicable);
    CHECK_FALSE(sudden_death_times(ad, 0.0, 10.0).applicable);

    ChannelModel nm = make(Family::NMAD);
    nm.gamma = 1.0;
    nm.big_gamma = 0.001;
    const auto rn = sudden_death_times(nm, 0.5, 350.0);
    REQUIRE(rn.applicable);
    REQUIRE(rn.roots.size() == 5);
    CHECK(rn.roots[0] == doctest::Approx(27.6553).epsilon(1e-4));
    CHECK(rn.roots[4] == doctest::Approx(296.7145).epsilon(1e-4));
    REQUIRE(rn.t_sd.has_value());
    CHECK(*rn.t_sd == doctest::Approx(296.7145).epsilon(1e-4));
    // q dips below the death threshold on two interior intervals first
    CHECK((rn.roots.size() - 1) / 2 == 2);
}

TEST_CASE("decay-rate proxy signs") {
    ChannelModel m = make(Family::OhmicPD);
    m.s = 3.2;
    for (double t : {0.5, 2.0, 10.0}) {
        const double a = m.decay_rate(t), b = ohmic_rate(t, 3.2, 1.0);
        CHECK(a == doctest::Approx(b).epsilon(1e-14));
    }
    ChannelModel nmpd = make(Family::NMPD);
    nmpd.gamma = 1.0;
    nmpd.big_gamma = 0.01;
    for (double t : {0.1, 1.0, 40.0}) CHECK(nmpd.decay_rate(t) >= 0.0);

    ChannelModel nmad = make(Family::NMAD);
    nmad.gamma = 1.0;
    nmad.big_gamma = 0.001;
    // the rate proxy must be negative exactly where q(t) rises
    for (double t : {50.0, 140.0, 280.0}) {
        const double dq = nm_ad_q(1.0, 0.001, t + 1e-5) - nm_ad_q(1.0, 0.001, t - 1e-5);
        CHECK((nmad.decay_rate(t) < 0.0) == (dq > 0.0));
    }
}

TEST_SUITE_END();
