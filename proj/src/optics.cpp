#include "arbc/optics.hpp"

#include <cmath>
#include <sstream>

#include "arbc/constants.hpp"
#include "arbc/errors.hpp"

namespace arbc::optics {

void BeamWavelengthSpec::validate() const {
    if (!(wavelength_nm > 0.0)) throw ConfigError("beam spec: wavelength must be positive");
    if (!(a1 > 0.0)) throw ConfigError("beam spec: a1 must be positive");
}

BeamWavelengthSpec beam_spec_810() { return {810.0, 0.445, -0.75}; }

BeamWavelengthSpec beam_spec_1550() { return {1550.0, 0.34, -1.1}; }

BeamWavelengthSpec beam_spec_for(double wavelength_nm) {
    if (wavelength_nm == 810.0) return beam_spec_810();
    if (wavelength_nm == 1550.0) return beam_spec_1550();
    std::ostringstream msg;
    msg << "no transmitter fit for wavelength " << wavelength_nm << " nm (supported: 810, 1550)";
    throw ConfigError(msg.str());
}

void PhysicalBeamParams::validate() const {
    if (!(gamma > 0.0)) throw ConfigError("physical beam params: gamma must be positive");
    if (!(nu_hz > 0.0)) throw ConfigError("physical beam params: frequency must be positive");
    if (i_threshold_a < 0.0) throw ConfigError("physical beam params: threshold current must be >= 0");
}

AirCondition AirCondition::clear_air(double visibility_km) {
    return {AirKind::ClearAir, visibility_km};
}

AirCondition AirCondition::haze(double visibility_km) { return {AirKind::Haze, visibility_km}; }

AirCondition AirCondition::fog(double visibility_km) { return {AirKind::Fog, visibility_km}; }

void AirCondition::validate() const {
    const double tau = visibility_km;
    if (!(tau > 0.0)) throw ConfigError("air condition: visibility must be positive");
    switch (kind) {
        case AirKind::ClearAir:
            if (tau < 6.0 || tau > 50.0)
                throw ConfigError("air condition: clear air requires visibility in [6, 50] km");
            break;
        case AirKind::Haze:
            if (tau < 1.0 || tau > 6.0)
                throw ConfigError("air condition: haze requires visibility in [1, 6] km");
            break;
        case AirKind::Fog:
            if (tau > 0.5) throw ConfigError("air condition: fog requires visibility <= 0.5 km");
            break;
    }
}

const char* air_kind_name(AirKind kind) {
    switch (kind) {
        case AirKind::ClearAir: return "clear";
        case AirKind::Haze: return "haze";
        case AirKind::Fog: return "fog";
    }
    return "?";
}

AirKind air_kind_from_name(const std::string& name) {
    if (name == "clear" || name == "clear_air") return AirKind::ClearAir;
    if (name == "haze") return AirKind::Haze;
    if (name == "fog") return AirKind::Fog;
    throw ConfigError("unknown air condition '" + name + "' (expected clear|haze|fog)");
}

double default_visibility_km(AirKind kind) {
    switch (kind) {
        case AirKind::ClearAir: return 10.0;
        case AirKind::Haze: return 3.0;
        case AirKind::Fog: return 0.4;
    }
    return 10.0;
}

double supplied_electrical_power(double i_t_a, double v_t_v) {
    if (i_t_a < 0.0) throw DomainError("supplied power: current must be >= 0");
    if (v_t_v < 0.0) throw DomainError("supplied power: voltage must be >= 0");
    return i_t_a * v_t_v;
}

double physical_beam_power(double i_t_a, const PhysicalBeamParams& params) {
    params.validate();
    if (i_t_a < 0.0) throw DomainError("physical beam power: current must be >= 0");
    const double photon_ev = constants::planck_h_j_s * params.nu_hz / constants::electron_charge_c;
    return std::max(0.0, params.gamma * photon_ev * (i_t_a - params.i_threshold_a));
}

double beam_power_from_supply(double p_s_w, const BeamWavelengthSpec& spec) {
    spec.validate();
    if (p_s_w < 0.0) throw DomainError("beam power: supplied power must be >= 0");
    return std::max(0.0, spec.a1 * p_s_w + spec.b1);
}

double attenuation_coefficient(double wavelength_nm, const AirCondition& air) {
    if (!(wavelength_nm > 0.0)) throw DomainError("attenuation: wavelength must be positive");
    air.validate();
    double theta = 0.0;
    switch (air.kind) {
        case AirKind::ClearAir: theta = 1.3; break;
        case AirKind::Haze: theta = 0.16 * air.visibility_km + 0.34; break;
        case AirKind::Fog: theta = 0.0; break;
    }
    return 3.91 / air.visibility_km * std::pow(wavelength_nm / 550.0, -theta);
}

double transmission_efficiency(double sigma_per_km, double radius_km) {
    if (sigma_per_km < 0.0) throw DomainError("transmission: attenuation must be >= 0");
    if (radius_km < 0.0) throw DomainError("transmission: radius must be >= 0");
    return std::exp(-sigma_per_km * radius_km);
}

}  // namespace arbc::optics
