#include "arbc/control.hpp"

#include <cmath>
#include <sstream>

#include "arbc/errors.hpp"

namespace arbc::control {

namespace {

// Inverse of the unclamped affine map; valid for p_b >= 0 (at p_b = 0 it
// returns the supply power at which the chain output crosses zero).
double inverse_supply(double p_b_w, const LinkCoefficients& c) {
    return (p_b_w - (c.a2 * c.b1 * c.eta_bt + c.b2)) / (c.a1 * c.a2 * c.eta_bt);
}

void check_supply_limit(double p_s_w, double max_supply_w) {
    if (p_s_w > max_supply_w) {
        std::ostringstream msg;
        msg << "required supply power " << p_s_w << " W exceeds the configured maximum "
            << max_supply_w << " W";
        throw SupplyLimitError(msg.str());
    }
}

// Session loops ask for the MPP of the same operating point on every tick
// of a fixed-power run; memoize the last result per thread.
pv::MppResult cached_mpp(const pv::PvPanelSpec& spec, double p_br_w, double temp_c) {
    thread_local double last_p_br = -1.0;
    thread_local double last_temp = 0.0;
    thread_local double last_aperture = 0.0;
    thread_local double last_i_sc = 0.0;
    thread_local pv::MppResult last_result{};

    if (p_br_w == last_p_br && temp_c == last_temp && spec.aperture_cm2 == last_aperture &&
        spec.i_sc_ref_a == last_i_sc) {
        return last_result;
    }
    last_result = pv::find_mpp(spec, p_br_w, temp_c);
    last_p_br = p_br_w;
    last_temp = temp_c;
    last_aperture = spec.aperture_cm2;
    last_i_sc = spec.i_sc_ref_a;
    return last_result;
}

}  // namespace

void LinkCoefficients::validate() const {
    if (!(a1 * a2 * eta_bt > 0.0))
        throw ConfigError("link coefficients: a1 * a2 * eta_bt must be positive");
    if (!(eta_bt > 0.0 && eta_bt <= 1.0))
        throw ConfigError("link coefficients: eta_bt must be in (0, 1]");
}

double end_to_end_battery_power(double p_s_w, const LinkCoefficients& c) {
    c.validate();
    if (p_s_w < 0.0) throw DomainError("end-to-end power: supply must be >= 0");
    return std::max(0.0, c.a1 * c.a2 * c.eta_bt * p_s_w + (c.a2 * c.b1 * c.eta_bt + c.b2));
}

double required_supply_power(double p_b_target_w, const LinkCoefficients& c,
                             double max_supply_w) {
    c.validate();
    if (!(p_b_target_w > 0.0))
        throw DomainError("required supply power: target battery power must be positive");
    const double p_s = inverse_supply(p_b_target_w, c);
    check_supply_limit(p_s, max_supply_w);
    return p_s;
}

std::pair<StepRecord, battery::ChargeState> arbc_step(const battery::ChargeState& state,
                                                      const ControlContext& ctx, double dt_h,
                                                      const battery::ProfileParams& params) {
    return arbc_step_with_target(state, state.p_pref_w, ctx, dt_h, params);
}

StepRecord chain_record(const ControlContext& ctx, double target_p_b_w, double i_pref_a,
                        double v_pref_v, double t_h) {
    ctx.link.validate();
    if (target_p_b_w < 0.0) throw DomainError("chain: target power must be >= 0");

    const LinkCoefficients& c = ctx.link;
    const double eff = ctx.conv.efficiency;

    // The supply is set so the PV side produces target / efficiency; with a
    // lossless converter that is the target itself.
    const double p_s = inverse_supply(target_p_b_w / eff, c);
    check_supply_limit(p_s, ctx.max_supply_w);

    StepRecord rec;
    rec.t_h = t_h;
    rec.p_s_w = p_s;
    rec.p_bt_w = std::max(0.0, c.a1 * p_s + c.b1);
    rec.p_br_w = c.eta_bt * rec.p_bt_w;
    rec.p_pv_w = std::max(0.0, c.a2 * rec.p_br_w + c.b2);
    rec.p_b_w = eff * rec.p_pv_w;

    const double recovered_err = std::abs(rec.p_b_w - target_p_b_w);
    if (recovered_err > 1e-6 * target_p_b_w + 1e-12) {
        std::ostringstream msg;
        msg << "chain: recovered " << rec.p_b_w << " W for target " << target_p_b_w << " W";
        throw Error(msg.str());
    }

    rec.i_b_a = i_pref_a;
    rec.v_b_v = v_pref_v;
    if (rec.p_pv_w > 0.0 && rec.p_br_w > 0.0) {
        const pv::MppResult mpp = cached_mpp(ctx.panel, rec.p_br_w, ctx.temp_c);
        const double i_pv = rec.p_pv_w / mpp.v_mpp_v;
        // With a feedback delay the delivered power can lag the preferred
        // point; cap the current at what the link actually provides.
        const double i_deliverable = v_pref_v > 0.0 ? rec.p_b_w / v_pref_v : 0.0;
        rec.i_b_a = std::min(rec.i_b_a, i_deliverable);
        if (rec.i_b_a > 0.0) {
            const converter::Output out =
                converter::convert(i_pv, mpp.v_mpp_v, rec.i_b_a, rec.v_b_v, eff);
            rec.i_b_a = out.i_out_a;
            rec.v_b_v = out.v_out_v;
        }
        rec.duty = converter::solve_duty(mpp.v_mpp_v, rec.v_b_v, i_pv, ctx.conv);
    }
    return rec;
}

std::pair<StepRecord, battery::ChargeState> arbc_step_with_target(
    const battery::ChargeState& state, double target_p_b_w, const ControlContext& ctx,
    double dt_h, const battery::ProfileParams& params) {
    if (battery::charge_terminated(state, params))
        throw StateError("arbc step: charge state is terminated");
    StepRecord rec = chain_record(ctx, target_p_b_w, state.i_pref_ma / 1000.0, state.v_pref_v,
                                  state.elapsed_h);
    battery::ChargeState next = battery::profile_step(state, dt_h, params);
    return {rec, next};
}

StepRecord rbc_step(const ControlContext& ctx, double fixed_p_b_w, double v_fixed_v, double dt_h,
                    double t_h) {
    if (!(fixed_p_b_w > 0.0)) throw DomainError("rbc step: fixed battery power must be positive");
    if (!(v_fixed_v > 0.0)) throw DomainError("rbc step: fixed voltage must be positive");
    if (!(dt_h > 0.0)) throw DomainError("rbc step: time step must be positive");
    return chain_record(ctx, fixed_p_b_w, fixed_p_b_w / v_fixed_v, v_fixed_v, t_h);
}

}  // namespace arbc::control
