#pragma once

#include <utility>

#include "arbc/battery.hpp"
#include "arbc/converter.hpp"
#include "arbc/pv.hpp"

namespace arbc::control {

// Affine constants of the end-to-end chain for one scenario:
//   p_bt = a1 * p_s + b1          (electricity to beam)
//   p_br = eta_bt * p_bt          (transmission)
//   p_b  = a2 * p_br + b2         (beam to battery-usable power)
// which compose to p_b = a1*a2*eta_bt * p_s + (a2*b1*eta_bt + b2).
struct LinkCoefficients {
    double a1 = 0.0;
    double b1 = 0.0;
    double a2 = 0.0;
    double b2 = 0.0;
    double eta_bt = 1.0;

    void validate() const;
};

// One tick of the power chain.
struct StepRecord {
    double t_h = 0.0;
    double p_s_w = 0.0;
    double p_bt_w = 0.0;
    double p_br_w = 0.0;
    double p_pv_w = 0.0;
    double p_b_w = 0.0;
    double i_b_a = 0.0;
    double v_b_v = 0.0;
    double duty = 0.0;
};

// Forward map: battery power delivered for a given supply power (clamped
// below at zero).
double end_to_end_battery_power(double p_s_w, const LinkCoefficients& c);

// Exact inverse of the forward map on its affine branch. Throws DomainError
// for non-positive targets and SupplyLimitError above max_supply_w.
double required_supply_power(double p_b_target_w, const LinkCoefficients& c,
                             double max_supply_w = 1e7);

// Everything a control step needs besides the battery state.
struct ControlContext {
    LinkCoefficients link;
    pv::PvPanelSpec panel;
    double temp_c = 25.0;
    converter::ConverterParams conv;
    double max_supply_w = 1e7;
};

// Evaluate the full chain for one battery-power target: supply setting,
// forward propagation, converter matching to (i_pref, v_pref) and the duty
// cycle. target_p_b_w = 0 maps to the supply level at which the chain
// output crosses zero (beam on, no battery power yet).
StepRecord chain_record(const ControlContext& ctx, double target_p_b_w, double i_pref_a,
                        double v_pref_v, double t_h);

// One ARBC tick: sets the supply from the battery's preferred power,
// propagates the chain forward, matches the converter output to the
// preferred operating point and advances the profile.
std::pair<StepRecord, battery::ChargeState> arbc_step(const battery::ChargeState& state,
                                                      const ControlContext& ctx, double dt_h,
                                                      const battery::ProfileParams& params);

// ARBC tick with an explicit battery-power target (feedback-delay hook).
std::pair<StepRecord, battery::ChargeState> arbc_step_with_target(
    const battery::ChargeState& state, double target_p_b_w, const ControlContext& ctx,
    double dt_h, const battery::ProfileParams& params);

// One fixed-power baseline tick: the same chain with a constant battery
// power, charged at v_fixed (current = p/v).
StepRecord rbc_step(const ControlContext& ctx, double fixed_p_b_w, double v_fixed_v, double dt_h,
                    double t_h);

}  // namespace arbc::control
