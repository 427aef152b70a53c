#pragma once

#include <string>

namespace arbc::optics {

// Linear fit mapping supplied electrical power to transmitter beam power
// for one beam wavelength: p_bt = a1 * p_s + b1 (clamped below at zero).
struct BeamWavelengthSpec {
    double wavelength_nm = 0.0;
    double a1 = 0.0;  // W/W slope
    double b1 = 0.0;  // W offset, negative below lasing threshold

    void validate() const;
};

// Canonical fits for the two supported wavelengths.
BeamWavelengthSpec beam_spec_810();
BeamWavelengthSpec beam_spec_1550();

// Lookup by wavelength; throws ConfigError for unsupported wavelengths.
BeamWavelengthSpec beam_spec_for(double wavelength_nm);

// Physical electricity-to-beam conversion parameters. Kept as an
// alternative cross-check path; the simulation chain uses the linear fit.
struct PhysicalBeamParams {
    double gamma = 1.0;       // modified coefficient, dimensionless
    double nu_hz = 0.0;       // beam frequency
    double i_threshold_a = 0.0;

    void validate() const;
};

enum class AirKind { ClearAir, Haze, Fog };

// Atmospheric condition selecting the scattering regime. Each kind has a
// valid visibility range: clear air 6..50 km, haze 1..6 km, fog <= 0.5 km.
struct AirCondition {
    AirKind kind = AirKind::ClearAir;
    double visibility_km = 10.0;

    static AirCondition clear_air(double visibility_km = 10.0);
    static AirCondition haze(double visibility_km = 3.0);
    static AirCondition fog(double visibility_km = 0.4);

    void validate() const;
};

const char* air_kind_name(AirKind kind);
AirKind air_kind_from_name(const std::string& name);
double default_visibility_km(AirKind kind);

// p_s = i_t * v_t
double supplied_electrical_power(double i_t_a, double v_t_v);

// p_bt = gamma * (h*nu/q) * (i_t - i_th), clamped below at zero.
double physical_beam_power(double i_t_a, const PhysicalBeamParams& params);

// p_bt = max(0, a1 * p_s + b1)
double beam_power_from_supply(double p_s_w, const BeamWavelengthSpec& spec);

// sigma = (3.91 / tau) * (lambda / 550 nm)^(-theta)  [1/km], theta by air kind.
double attenuation_coefficient(double wavelength_nm, const AirCondition& air);

// eta = exp(-sigma * radius)
double transmission_efficiency(double sigma_per_km, double radius_km);

}  // namespace arbc::optics
