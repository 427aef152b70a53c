#include "arbc/converter.hpp"

#include <cmath>

#include "arbc/errors.hpp"

namespace arbc::converter {

const char* mode_name(Mode mode) {
    return mode == Mode::Continuous ? "continuous" : "discontinuous";
}

Mode mode_from_name(const std::string& name) {
    if (name == "continuous") return Mode::Continuous;
    if (name == "discontinuous") return Mode::Discontinuous;
    throw ConfigError("unknown converter mode '" + name + "' (expected continuous|discontinuous)");
}

void ConverterParams::validate() const {
    if (!(inductance_h > 0.0)) throw ConfigError("converter: inductance must be positive");
    if (!(switch_period_s > 0.0)) throw ConfigError("converter: switch period must be positive");
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw ConfigError("converter: efficiency must be in (0, 1]");
}

double continuous_voltage_ratio(double duty) {
    if (!(duty > 0.0 && duty < 1.0)) throw DomainError("converter: duty must be in (0, 1)");
    return duty / (1.0 - duty);
}

double discontinuous_voltage_ratio(double duty, double v_in_v, double i_in_a,
                                   const ConverterParams& params) {
    params.validate();
    if (!(duty > 0.0 && duty < 1.0)) throw DomainError("converter: duty must be in (0, 1)");
    if (!(v_in_v > 0.0)) throw DomainError("converter: input voltage must be positive");
    if (!(i_in_a > 0.0)) throw DomainError("converter: input current must be positive");
    return v_in_v * duty * duty * params.switch_period_s / (2.0 * params.inductance_h * i_in_a);
}

double solve_duty(double v_in_v, double v_out_target_v, double i_in_a,
                  const ConverterParams& params) {
    params.validate();
    if (!(v_in_v > 0.0)) throw DomainError("converter: input voltage must be positive");
    if (!(v_out_target_v > 0.0)) throw DomainError("converter: target voltage must be positive");

    if (params.mode == Mode::Continuous) {
        const double r = v_out_target_v / v_in_v;
        return r / (1.0 + r);
    }

    if (!(i_in_a > 0.0)) throw DomainError("converter: input current must be positive");
    const double duty =
        std::sqrt(2.0 * params.inductance_h * i_in_a * v_out_target_v /
                  (v_in_v * v_in_v * params.switch_period_s));
    if (!(duty > 0.0 && duty < 1.0))
        throw UnreachableConversionError(
            "converter: requested discontinuous-mode conversion needs duty outside (0, 1)");
    return duty;
}

Output convert(double i_in_a, double v_in_v, double i_target_a, double v_target_v,
               double efficiency) {
    if (!(i_in_a * v_in_v > 0.0))
        throw DomainError("converter: input power must be positive");
    const double requested = i_target_a * v_target_v;
    const double available = i_in_a * v_in_v * efficiency;
    if (requested > available * 1.001)
        throw InsufficientPowerError("converter: requested output power exceeds input power");
    return {i_target_a, v_target_v};
}

}  // namespace arbc::converter
