#include <doctest.h>

#include <cmath>
#include <vector>

#include "arbc/battery.hpp"
#include "arbc/errors.hpp"

using namespace arbc;
using namespace arbc::battery;

namespace {

// Full default session at dt; returns every visited state including the
// terminal one.
std::vector<ChargeState> run_profile(const ProfileParams& params, double dt_s = 1.0) {
    const double dt_h = dt_s / 3600.0;
    std::vector<ChargeState> states{profile_init(params)};
    while (!charge_terminated(states.back(), params))
        states.push_back(profile_step(states.back(), dt_h, params));
    return states;
}

}  // namespace

TEST_CASE("profile starts in trickle charge below the TC-CC threshold") {
    const ProfileParams params;
    const ChargeState state = profile_init(params);
    CHECK(state.stage == Stage::TC);
    CHECK(state.v_pref_v < 3.0);
    CHECK(state.i_pref_ma == 0.0);
    CHECK(state.p_pref_w == state.i_pref_ma / 1000.0 * state.v_pref_v);
    CHECK(state.charge_delivered_mah == 0.0);
    CHECK_FALSE(charge_terminated(state, params));
}

TEST_CASE("profile parameter validation") {
    ProfileParams params;
    params.i_cc_ma = 1200.0;  // above the 1C rate
    CHECK_THROWS_AS(profile_init(params), ConfigError);

    params = ProfileParams();
    params.i_min_ma = 250.0;  // above the TC target
    CHECK_THROWS_AS(profile_init(params), ConfigError);

    params = ProfileParams();
    params.v_tc_start_v = 3.5;  // above the TC-CC threshold
    CHECK_THROWS_AS(profile_init(params), ConfigError);
}

TEST_CASE("default session walks TC -> CC -> CV and terminates at the cutoff") {
    const ProfileParams params;
    const auto states = run_profile(params);

    int last_rank = 0;
    bool saw_cc = false, saw_cv = false;
    for (const auto& s : states) {
        const int rank = static_cast<int>(s.stage);
        CHECK(rank >= last_rank);  // stages never regress
        last_rank = rank;
        saw_cc |= s.stage == Stage::CC;
        saw_cv |= s.stage == Stage::CV;
    }
    CHECK(saw_cc);
    CHECK(saw_cv);
    CHECK(states.back().stage == Stage::Terminated);
    CHECK(states.back().termination_reason == TerminationReason::SessionCutoff);
    CHECK(states.back().elapsed_h == doctest::Approx(3.619167).epsilon(1e-4));
}

TEST_CASE("voltage never drops before CV and current never rises within CV") {
    const auto states = run_profile(ProfileParams());
    double prev_v = 0.0;
    double prev_cv_i = 1e9;
    for (const auto& s : states) {
        if (s.stage == Stage::TC || s.stage == Stage::CC) {
            CHECK(s.v_pref_v >= prev_v - 1e-12);
            prev_v = s.v_pref_v;
        }
        if (s.stage == Stage::CV) {
            CHECK(s.i_pref_ma <= prev_cv_i + 1e-12);
            prev_cv_i = s.i_pref_ma;
            CHECK(s.v_pref_v == doctest::Approx(4.2));
        }
    }
}

TEST_CASE("preferred power is bounded by the CC current at the CV voltage") {
    const ProfileParams params;
    for (const auto& s : run_profile(params))
        CHECK(s.p_pref_w <= params.i_cc_ma / 1000.0 * params.v_cv_v + 1e-9);
}

TEST_CASE("default session delivers the calibrated preferred energy") {
    // One tick of slack: the CC-CV handover lands on a tick boundary.
    CHECK(preferred_energy_wh(ProfileParams()) == doctest::Approx(5.96).epsilon(5e-4));
    CHECK(session_duration_h(ProfileParams()) == doctest::Approx(3.619167).epsilon(1e-4));
}

TEST_CASE("energy integral is insensitive to halving the step") {
    const double e1 = preferred_energy_wh(ProfileParams(), 1.0);
    const double e05 = preferred_energy_wh(ProfileParams(), 0.5);
    CHECK(std::abs(e05 - e1) / e1 < 1e-3);
}

TEST_CASE("identical parameters give bit-identical trajectories") {
    const auto a = run_profile(ProfileParams());
    const auto b = run_profile(ProfileParams());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); i += 997) {
        CHECK(a[i].i_pref_ma == b[i].i_pref_ma);
        CHECK(a[i].v_pref_v == b[i].v_pref_v);
        CHECK(a[i].p_pref_w == b[i].p_pref_w);
        CHECK(a[i].charge_delivered_mah == b[i].charge_delivered_mah);
    }
}

TEST_CASE("stepping a terminated state is an error") {
    const ProfileParams params;
    auto states = run_profile(params);
    CHECK_THROWS_AS(profile_step(states.back(), 1.0 / 3600.0, params), StateError);
    CHECK_THROWS_AS(profile_step(states.front(), 0.0, params), DomainError);
    CHECK_THROWS_AS(profile_step(states.front(), -1.0, params), DomainError);
}

TEST_CASE("CV current below the minimum terminates the charge") {
    const ProfileParams params;
    ChargeState state;
    state.stage = Stage::CV;
    state.i_pref_ma = 19.0;  // below the 20 mA threshold
    state.v_pref_v = params.v_cv_v;
    state.elapsed_h = 3.0;
    state.cv_elapsed_h = 2.0;

    const ChargeState next = profile_step(state, 1.0 / 3600.0, params);
    CHECK(next.stage == Stage::Terminated);
    CHECK(next.termination_reason == TerminationReason::CurrentBelowMin);
    CHECK(charge_terminated(next, params));
}

TEST_CASE("session cutoff terminates regardless of stage") {
    ProfileParams params;
    params.session_cutoff_h = 3.6;  // the control-loop guard value
    ChargeState state;
    state.stage = Stage::CV;
    state.i_pref_ma = 120.0;
    state.v_pref_v = params.v_cv_v;
    state.elapsed_h = 3.5999;
    state.cv_elapsed_h = 2.8;

    const ChargeState next = profile_step(state, 1.0 / 3600.0, params);
    CHECK(next.elapsed_h >= 3.6);
    CHECK(next.stage == Stage::Terminated);
    CHECK(next.termination_reason == TerminationReason::SessionCutoff);
}

TEST_CASE("CV timer is a separate optional guard") {
    ProfileParams params;
    params.cv_timer_h = 0.5;
    ChargeState state;
    state.stage = Stage::CV;
    state.i_pref_ma = 500.0;
    state.v_pref_v = params.v_cv_v;
    state.elapsed_h = 1.0;
    state.cv_elapsed_h = 0.4999;

    const ChargeState next = profile_step(state, 1.0 / 3600.0, params);
    CHECK(next.stage == Stage::Terminated);
    CHECK(next.termination_reason == TerminationReason::CvTimer);
}

TEST_CASE("CC stage hands over between half and seventy percent of capacity") {
    const double fraction = cc_handover_fraction(ProfileParams(), 700.0);
    CHECK(fraction >= 0.50);
    CHECK(fraction <= 0.70);
}

TEST_CASE("cv decay calibration reproduces the frozen default") {
    const ProfileParams calibrated = calibrate_cv_decay(ProfileParams(), 5.96);
    CHECK(calibrated.cv_decay_tau_h ==
          doctest::Approx(ProfileParams().cv_decay_tau_h).epsilon(1e-3));
    CHECK(preferred_energy_wh(calibrated) == doctest::Approx(5.96).epsilon(1e-6));
}
