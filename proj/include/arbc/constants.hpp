#pragma once

namespace arbc::constants {

// CODATA values, truncated to 6 significant digits.
inline constexpr double planck_h_j_s = 6.62607e-34;
inline constexpr double electron_charge_c = 1.60218e-19;
inline constexpr double boltzmann_j_per_k = 1.38065e-23;

// Boltzmann constant expressed in eV/K, derived from the values above.
inline constexpr double boltzmann_ev_per_k = boltzmann_j_per_k / electron_charge_c;

inline constexpr double zero_celsius_k = 273.15;

inline constexpr double celsius_to_kelvin(double temp_c) { return temp_c + zero_celsius_k; }

}  // namespace arbc::constants
