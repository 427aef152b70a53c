#pragma once

#include <string>

namespace arbc::converter {

enum class Mode { Continuous, Discontinuous };

const char* mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

// The buck-boost topology inverts the output polarity relative to the
// input; all ratios in this module are magnitudes and the inversion is a
// fixed property of the wiring.
inline constexpr bool kOutputPolarityInverted = true;

// Ideal buck-boost converter. The efficiency factor exists for sensitivity
// studies and defaults to lossless.
struct ConverterParams {
    double inductance_h = 1e-4;
    double switch_period_s = 1e-4;
    Mode mode = Mode::Continuous;
    double efficiency = 1.0;

    void validate() const;
};

// |v_out / v_in| = d / (1 - d), continuous conduction.
double continuous_voltage_ratio(double duty);

// |v_out / v_in| = v_in * d^2 * t / (2 * L * i_in), discontinuous conduction.
double discontinuous_voltage_ratio(double duty, double v_in_v, double i_in_a,
                                   const ConverterParams& params);

// Duty cycle realizing v_out_target from v_in in the configured mode.
// Throws UnreachableConversionError when no duty in (0,1) works.
double solve_duty(double v_in_v, double v_out_target_v, double i_in_a,
                  const ConverterParams& params);

struct Output {
    double i_out_a = 0.0;
    double v_out_v = 0.0;
};

// Lossless current/voltage matching: returns the requested operating point
// as long as it does not ask for more power than the input provides
// (0.1% tolerance). Throws InsufficientPowerError otherwise.
Output convert(double i_in_a, double v_in_v, double i_target_a, double v_target_v,
               double efficiency = 1.0);

}  // namespace arbc::converter
