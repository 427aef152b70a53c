#include "arbc/battery.hpp"

#include <algorithm>
#include <cmath>

#include "arbc/errors.hpp"

namespace arbc::battery {

void ProfileParams::validate() const {
    if (!(capacity_mah > 0.0)) throw ConfigError("profile: capacity must be positive");
    if (!(v_tc_start_v > 0.0)) throw ConfigError("profile: initial voltage must be positive");
    if (!(v_tc_start_v < v_tc_cc_v))
        throw ConfigError("profile: initial voltage must be below the TC-CC threshold");
    if (!(v_tc_cc_v < v_cv_v))
        throw ConfigError("profile: TC-CC threshold must be below the CV voltage");
    if (!(i_min_ma > 0.0)) throw ConfigError("profile: termination current must be positive");
    if (!(i_min_ma < i_tc_max_ma))
        throw ConfigError("profile: termination current must be below the TC target current");
    if (!(i_tc_max_ma <= i_cc_ma))
        throw ConfigError("profile: TC target current must not exceed the CC current");
    if (!(i_cc_ma <= capacity_mah))
        throw ConfigError("profile: CC current must not exceed the 1C rate");
    if (!(tc_duration_h > 0.0)) throw ConfigError("profile: TC duration must be positive");
    if (!(cc_voltage_slope_v_per_mah > 0.0))
        throw ConfigError("profile: CC voltage slope must be positive");
    if (!(cv_decay_tau_h > 0.0)) throw ConfigError("profile: CV decay time constant must be positive");
    if (cv_timer_h < 0.0) throw ConfigError("profile: CV timer must be >= 0");
    if (!(session_cutoff_h > 0.0)) throw ConfigError("profile: session cutoff must be positive");
}

const char* stage_name(Stage stage) {
    switch (stage) {
        case Stage::TC: return "tc";
        case Stage::CC: return "cc";
        case Stage::CV: return "cv";
        case Stage::Terminated: return "terminated";
    }
    return "?";
}

const char* termination_reason_name(TerminationReason reason) {
    switch (reason) {
        case TerminationReason::None: return "none";
        case TerminationReason::CurrentBelowMin: return "current_below_min";
        case TerminationReason::CvTimer: return "cv_timer";
        case TerminationReason::SessionCutoff: return "session_cutoff";
    }
    return "?";
}

// Default cv_decay_tau_h frozen from calibrate-profile (target 5.96 Wh at
// dt = 1 s); see ProfileParams in the header.
ChargeState profile_init(const ProfileParams& params) {
    params.validate();
    ChargeState state;
    state.stage = Stage::TC;
    state.i_pref_ma = 0.0;
    state.v_pref_v = params.v_tc_start_v;
    state.p_pref_w = 0.0;
    return state;
}

ChargeState profile_step(const ChargeState& state, double dt_h, const ProfileParams& params) {
    params.validate();
    if (state.stage == Stage::Terminated)
        throw StateError("profile: cannot step a terminated state");
    if (!(dt_h > 0.0)) throw DomainError("profile: time step must be positive");

    ChargeState next = state;
    next.elapsed_h = state.elapsed_h + dt_h;

    switch (state.stage) {
        case Stage::TC: {
            const double f = std::min(1.0, next.elapsed_h / params.tc_duration_h);
            next.i_pref_ma = params.i_tc_max_ma * f;
            next.v_pref_v = params.v_tc_start_v + (params.v_tc_cc_v - params.v_tc_start_v) * f;
            next.charge_delivered_mah =
                state.charge_delivered_mah + 0.5 * (state.i_pref_ma + next.i_pref_ma) * dt_h;
            if (next.v_pref_v >= params.v_tc_cc_v) {
                next.stage = Stage::CC;
                next.v_pref_v = params.v_tc_cc_v;
                next.i_pref_ma = params.i_cc_ma;
                next.cc_entry_charge_mah = next.charge_delivered_mah;
            }
            break;
        }
        case Stage::CC: {
            next.i_pref_ma = params.i_cc_ma;
            next.charge_delivered_mah =
                state.charge_delivered_mah + 0.5 * (state.i_pref_ma + next.i_pref_ma) * dt_h;
            next.v_pref_v =
                params.v_tc_cc_v + params.cc_voltage_slope_v_per_mah *
                                       (next.charge_delivered_mah - state.cc_entry_charge_mah);
            if (next.v_pref_v >= params.v_cv_v) {
                next.stage = Stage::CV;
                next.v_pref_v = params.v_cv_v;
                next.cv_elapsed_h = 0.0;
            }
            break;
        }
        case Stage::CV: {
            next.cv_elapsed_h = state.cv_elapsed_h + dt_h;
            // Memoryless decay toward i_min; exact for the exponential law
            // and respects externally constructed states.
            next.i_pref_ma = params.i_min_ma + (state.i_pref_ma - params.i_min_ma) *
                                                   std::exp(-dt_h / params.cv_decay_tau_h);
            next.v_pref_v = params.v_cv_v;
            next.charge_delivered_mah =
                state.charge_delivered_mah + 0.5 * (state.i_pref_ma + next.i_pref_ma) * dt_h;
            if (next.i_pref_ma < params.i_min_ma) {
                next.stage = Stage::Terminated;
                next.termination_reason = TerminationReason::CurrentBelowMin;
            } else if (params.cv_timer_h > 0.0 && next.cv_elapsed_h >= params.cv_timer_h) {
                next.stage = Stage::Terminated;
                next.termination_reason = TerminationReason::CvTimer;
            }
            break;
        }
        case Stage::Terminated:
            break;  // unreachable
    }

    if (next.stage != Stage::Terminated && next.elapsed_h >= params.session_cutoff_h) {
        next.stage = Stage::Terminated;
        next.termination_reason = TerminationReason::SessionCutoff;
    }

    next.p_pref_w = next.i_pref_ma / 1000.0 * next.v_pref_v;
    return next;
}

bool charge_terminated(const ChargeState& state, const ProfileParams&) {
    return state.stage == Stage::Terminated;
}

double preferred_energy_wh(const ProfileParams& params, double dt_s) {
    const double dt_h = dt_s / 3600.0;
    ChargeState state = profile_init(params);
    double energy = 0.0;
    while (!charge_terminated(state, params)) {
        const ChargeState next = profile_step(state, dt_h, params);
        energy += 0.5 * (state.p_pref_w + next.p_pref_w) * dt_h;
        state = next;
    }
    return energy;
}

double session_duration_h(const ProfileParams& params, double dt_s) {
    const double dt_h = dt_s / 3600.0;
    ChargeState state = profile_init(params);
    while (!charge_terminated(state, params)) state = profile_step(state, dt_h, params);
    return state.elapsed_h;
}

double cc_handover_fraction(ProfileParams params, double i_cc_ma, double dt_s) {
    params.i_cc_ma = i_cc_ma;
    params.validate();
    const double dt_h = dt_s / 3600.0;
    ChargeState state = profile_init(params);
    while (!charge_terminated(state, params)) {
        state = profile_step(state, dt_h, params);
        if (state.stage == Stage::CV) return state.charge_delivered_mah / params.capacity_mah;
    }
    throw StateError("profile never reached the CV stage at this constant current");
}

ProfileParams calibrate_cv_decay(ProfileParams params, double target_wh, double dt_s,
                                 double tol_wh) {
    if (!(target_wh > 0.0)) throw DomainError("calibration: target energy must be positive");

    const auto energy_at = [&](double tau) {
        params.cv_decay_tau_h = tau;
        return preferred_energy_wh(params, dt_s);
    };

    // Session energy is monotone increasing in the decay time constant.
    double lo = 1e-3;
    double hi = 16.0;
    if (energy_at(lo) > target_wh)
        throw DomainError("calibration: target energy below the profile floor");
    if (energy_at(hi) < target_wh)
        throw DomainError("calibration: target energy above the profile ceiling");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double energy = energy_at(mid);
        if (std::abs(energy - target_wh) <= tol_wh) {
            params.cv_decay_tau_h = mid;
            return params;
        }
        (energy < target_wh ? lo : hi) = mid;
    }
    params.cv_decay_tau_h = 0.5 * (lo + hi);
    return params;
}

}  // namespace arbc::battery
