#include <doctest.h>

#include <cmath>
#include <random>

#include "arbc/errors.hpp"
#include "arbc/optics.hpp"

using namespace arbc;
using namespace arbc::optics;

TEST_CASE("supplied electrical power is the current-voltage product") {
    CHECK(supplied_electrical_power(0.0, 5.0) == 0.0);
    CHECK(supplied_electrical_power(1.0, 4.2) == doctest::Approx(4.2));
    CHECK(supplied_electrical_power(2.5, 12.0) == doctest::Approx(30.0));
    CHECK_THROWS_AS(supplied_electrical_power(-0.1, 5.0), DomainError);
    CHECK_THROWS_AS(supplied_electrical_power(1.0, -5.0), DomainError);
}

TEST_CASE("physical beam power clamps at the current threshold") {
    PhysicalBeamParams params{1.0, 3.7037e14, 0.5};
    CHECK(physical_beam_power(0.5, params) == 0.0);
    CHECK(physical_beam_power(0.2, params) == 0.0);

    // gamma = 1, nu = 3.7037e14 Hz, zero threshold, 1 A: h*nu/q by hand.
    PhysicalBeamParams unit{1.0, 3.7037e14, 0.0};
    CHECK(physical_beam_power(1.0, unit) == doctest::Approx(1.5317240).epsilon(1e-6));

    CHECK_THROWS_AS(physical_beam_power(-1.0, unit), DomainError);
}

TEST_CASE("physical beam power is linear above threshold") {
    PhysicalBeamParams params{2.3, 3.7037e14, 0.4};
    const double slope = physical_beam_power(1.4, params) - physical_beam_power(0.4, params);
    for (double i : {0.6, 1.0, 2.5, 7.0}) {
        const double expected = slope * (i - params.i_threshold_a);
        CHECK(physical_beam_power(i, params) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("beam power fit matches the tabulated coefficients") {
    CHECK(beam_power_from_supply(0.0, beam_spec_810()) == 0.0);
    CHECK(beam_power_from_supply(10.0, beam_spec_810()) == doctest::Approx(3.70).epsilon(1e-12));
    CHECK(beam_power_from_supply(10.0, beam_spec_1550()) == doctest::Approx(2.30).epsilon(1e-12));
    CHECK_THROWS_AS(beam_power_from_supply(-1.0, beam_spec_810()), DomainError);
    CHECK_THROWS_AS(beam_spec_for(1000.0), ConfigError);
}

TEST_CASE("beam power fit is non-decreasing and affine above the clamp") {
    const BeamWavelengthSpec spec = beam_spec_810();
    std::mt19937 rng(20240901);
    std::uniform_real_distribution<double> supply(0.0, 50.0);
    double prev_p = 0.0, prev_out = beam_power_from_supply(0.0, spec);
    for (int i = 0; i < 200; ++i) {
        const double p = supply(rng);
        const double out = beam_power_from_supply(p, spec);
        if (p >= prev_p) CHECK(out >= prev_out);

        const double clamp_point = -spec.b1 / spec.a1;
        if (p > clamp_point)
            CHECK(out == doctest::Approx(spec.a1 * p + spec.b1).epsilon(1e-12));
        prev_p = p;
        prev_out = out;
    }
}

TEST_CASE("attenuation coefficient spot values") {
    // Wavelength ratio term is 1 at 550 nm, so the result is exactly 3.91/tau.
    CHECK(attenuation_coefficient(550.0, AirCondition::clear_air(10.0)) == 0.391);
    // theta = 0 in fog kills the wavelength term.
    CHECK(attenuation_coefficient(810.0, AirCondition::fog(0.4)) == 9.775);
    // Hand evaluation of 0.391 * (810/550)^-1.3.
    CHECK(attenuation_coefficient(810.0, AirCondition::clear_air(10.0)) ==
          doctest::Approx(0.2363838).epsilon(1e-6));
}

TEST_CASE("attenuation enforces the per-kind visibility ranges") {
    CHECK_THROWS_AS(attenuation_coefficient(810.0, AirCondition::clear_air(5.0)), ConfigError);
    CHECK_THROWS_AS(attenuation_coefficient(810.0, AirCondition::clear_air(51.0)), ConfigError);
    CHECK_THROWS_AS(attenuation_coefficient(810.0, AirCondition::haze(0.9)), ConfigError);
    CHECK_THROWS_AS(attenuation_coefficient(810.0, AirCondition::haze(7.0)), ConfigError);
    CHECK_THROWS_AS(attenuation_coefficient(810.0, AirCondition::fog(0.6)), ConfigError);
    CHECK_THROWS_AS(attenuation_coefficient(810.0, AirCondition::fog(0.0)), ConfigError);
    CHECK_THROWS_AS(attenuation_coefficient(-810.0, AirCondition::fog(0.4)), DomainError);
}

TEST_CASE("shorter wavelengths attenuate faster except in fog") {
    for (auto air : {AirCondition::clear_air(10.0), AirCondition::haze(3.0)}) {
        CHECK(attenuation_coefficient(810.0, air) > attenuation_coefficient(1550.0, air));
    }
    CHECK(attenuation_coefficient(810.0, AirCondition::fog(0.4)) ==
          attenuation_coefficient(1550.0, AirCondition::fog(0.4)));
}

TEST_CASE("attenuation is continuous in visibility within each branch") {
    for (double tau : {6.5, 20.0, 49.0}) {
        const double lo = attenuation_coefficient(810.0, AirCondition::clear_air(tau));
        const double hi = attenuation_coefficient(810.0, AirCondition::clear_air(tau + 1e-9));
        CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
    }
    for (double tau : {1.5, 3.0, 5.5}) {
        const double lo = attenuation_coefficient(810.0, AirCondition::haze(tau));
        const double hi = attenuation_coefficient(810.0, AirCondition::haze(tau + 1e-9));
        CHECK(lo == doctest::Approx(hi).epsilon(1e-6));
    }
}

TEST_CASE("transmission efficiency spot values") {
    CHECK(transmission_efficiency(0.391, 0.0) == 1.0);
    CHECK(transmission_efficiency(9.775, 0.0) == 1.0);
    CHECK(transmission_efficiency(0.391, 1.0) == doctest::Approx(0.6763802).epsilon(1e-6));
    CHECK(transmission_efficiency(9.775, 1.0) == doctest::Approx(5.685536e-5).epsilon(1e-6));
    CHECK_THROWS_AS(transmission_efficiency(0.391, -0.1), DomainError);
    CHECK_THROWS_AS(transmission_efficiency(-0.1, 1.0), DomainError);
}

TEST_CASE("transmission efficiency composes exponentially") {
    std::mt19937 rng(77);
    std::uniform_real_distribution<double> sigma(0.0, 10.0);
    std::uniform_real_distribution<double> radius(0.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        const double s = sigma(rng);
        const double r1 = radius(rng);
        const double r2 = radius(rng);
        const double whole = transmission_efficiency(s, r1 + r2);
        const double split = transmission_efficiency(s, r1) * transmission_efficiency(s, r2);
        CHECK(whole == doctest::Approx(split).epsilon(1e-12));
    }
}

TEST_CASE("transmission efficiency strictly decreases with radius") {
    double prev = transmission_efficiency(0.95, 0.0);
    for (double r = 0.1; r <= 2.0; r += 0.1) {
        const double eta = transmission_efficiency(0.95, r);
        CHECK(eta < prev);
        prev = eta;
    }
}
