#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "arbc/simkit.hpp"

namespace arbc::config {

// A parsed configuration file: always a scenario; additionally a sweep grid
// when the file carries a [sweep] section (the scenario then acts as the
// grid's shared base).
struct LoadedConfig {
    simkit::Scenario scenario;
    std::optional<simkit::SweepGrid> sweep;
};

// Plain key-value format with [profile], [converter] and [sweep] sections.
// Unknown keys are rejected; every error names the offending key and
// constraint. See the bundled configs/ directory for annotated examples.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(std::istream& in, const std::string& origin);

// Profile parameters rendered as a [profile] config section (output of the
// calibrate-profile tool).
std::string profile_section_text(const battery::ProfileParams& params);

}  // namespace arbc::config
