#pragma once

namespace arbc::battery {

// Li-ion preferred-charging profile parameters.
//
// The trajectory has three live stages followed by termination:
//   TC  trickle: current ramps 0 -> i_tc_max over tc_duration_h while the
//       voltage ramps v_tc_start -> v_tc_cc;
//   CC  constant current i_cc; voltage rises linearly with delivered charge
//       (slope cc_voltage_slope_v_per_mah) until it reaches v_cv;
//   CV  constant voltage v_cv; current decays exponentially toward i_min
//       with time constant cv_decay_tau_h.
// A session terminates when the current drops below i_min during CV, when
// the CV timer expires, or when the session cutoff elapses.
//
// The default tc_duration, cc slope, i_cc and cv decay are frozen from the
// calibrate-profile tool so a default session delivers 5.96 Wh of preferred
// power over the 3.619048 h horizon and the constant-current stage hands
// over between 50% and 70% of capacity when run at 700 mA.
struct ProfileParams {
    double capacity_mah = 1000.0;
    double v_tc_start_v = 2.5;
    double v_tc_cc_v = 3.0;
    double v_cv_v = 4.2;
    double i_tc_max_ma = 200.0;
    double i_cc_ma = 1000.0;
    double i_min_ma = 20.0;
    double tc_duration_h = 0.2;
    double cc_voltage_slope_v_per_mah = 1.2 / 580.0;
    double cv_decay_tau_h = 0.9088884095;  // frozen by calibrate-profile
    double cv_timer_h = 0.0;               // 0 = disabled
    double session_cutoff_h = 3.619048;

    static ProfileParams defaults() { return {}; }

    void validate() const;
};

enum class Stage { TC, CC, CV, Terminated };

enum class TerminationReason { None, CurrentBelowMin, CvTimer, SessionCutoff };

const char* stage_name(Stage stage);
const char* termination_reason_name(TerminationReason reason);

// Snapshot of the profile state machine. Values are what the battery asks
// for at this instant; p_pref_w = i_pref * v_pref.
struct ChargeState {
    Stage stage = Stage::TC;
    double i_pref_ma = 0.0;
    double v_pref_v = 0.0;
    double p_pref_w = 0.0;
    double charge_delivered_mah = 0.0;
    double elapsed_h = 0.0;
    double cv_elapsed_h = 0.0;
    double cc_entry_charge_mah = 0.0;  // anchor for the CC voltage ramp
    TerminationReason termination_reason = TerminationReason::None;
};

ChargeState profile_init(const ProfileParams& params);

// Advance the profile by dt_h. Pure function of (state, dt, params);
// throws StateError when applied to a terminated state.
ChargeState profile_step(const ChargeState& state, double dt_h, const ProfileParams& params);

bool charge_terminated(const ChargeState& state, const ProfileParams& params);

// Trapezoidal integral of the preferred power over a full session (the
// terminal tick included), stepping at dt_s.
double preferred_energy_wh(const ProfileParams& params, double dt_s = 1.0);

// Session length until termination, stepping at dt_s.
double session_duration_h(const ProfileParams& params, double dt_s = 1.0);

// Fraction of capacity delivered when the CC stage hands over to CV, for a
// profile run at the given constant current.
double cc_handover_fraction(ProfileParams params, double i_cc_ma, double dt_s = 1.0);

// Bisect the CV decay time constant until a default session delivers
// target_wh of preferred energy. Backs the calibrate-profile tool.
ProfileParams calibrate_cv_decay(ProfileParams params, double target_wh, double dt_s = 1.0,
                                 double tol_wh = 1e-6);

}  // namespace arbc::battery
