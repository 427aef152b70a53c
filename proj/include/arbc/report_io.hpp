#pragma once

#include <string>

#include "arbc/simkit.hpp"

namespace arbc::io {

// Floats are serialized with 6 significant digits in every emitted format;
// emission is fully deterministic (same report, same bytes).
std::string format_g6(double value);

// CSV. Sweep rows keep grid order; a failed cell leaves its numeric fields
// empty and carries the error text. An empty sweep yields the header only.
std::string sweep_csv(const simkit::SweepTable& table);
std::string session_summary_csv(const simkit::SessionReport& report);
std::string session_series_csv(const simkit::SessionReport& report);
std::string savings_csv(const simkit::SavingsReport& savings);

// JSON (schema_version 1). Sweep cells are nested by axes in canonical
// order: wavelength, temperature, air (clear < haze < fog), radius, mode
// (rbc < arbc).
std::string sweep_json(const simkit::SweepTable& table);
std::string session_json(const simkit::SessionReport& report);
std::string savings_json(const simkit::SavingsReport& savings);

// Reload emitted JSON; rows come back in the canonical nesting order.
simkit::SweepTable load_sweep_json(const std::string& text);
simkit::SessionReport load_session_json(const std::string& text);

void write_file(const std::string& path, const std::string& content);

}  // namespace arbc::io
