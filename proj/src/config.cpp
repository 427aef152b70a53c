#include "arbc/config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "arbc/errors.hpp"

namespace arbc::config {

namespace {

struct Entry {
    std::string value;
    int line = 0;
    bool used = false;
};

// (section, key) -> entry; section "" is the top level.
using EntryMap = std::map<std::pair<std::string, std::string>, Entry>;

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::string key_path(const std::string& section, const std::string& key) {
    return section.empty() ? key : section + "." + key;
}

class Reader {
public:
    Reader(EntryMap entries, std::string origin)
        : entries_(std::move(entries)), origin_(std::move(origin)) {}

    bool has_section(const std::string& section) const {
        return std::any_of(entries_.begin(), entries_.end(),
                           [&](const auto& kv) { return kv.first.first == section; });
    }

    std::optional<std::string> raw(const std::string& section, const std::string& key) {
        auto it = entries_.find({section, key});
        if (it == entries_.end()) return std::nullopt;
        it->second.used = true;
        return it->second.value;
    }

    std::optional<double> number(const std::string& section, const std::string& key) {
        auto value = raw(section, key);
        if (!value) return std::nullopt;
        return parse_double(section, key, *value);
    }

    std::optional<int> integer(const std::string& section, const std::string& key) {
        auto value = raw(section, key);
        if (!value) return std::nullopt;
        const double d = parse_double(section, key, *value);
        const int i = static_cast<int>(d);
        if (static_cast<double>(i) != d)
            fail(section, key, "expected an integer, got '" + *value + "'");
        return i;
    }

    std::vector<std::string> list(const std::string& section, const std::string& key) {
        auto value = raw(section, key);
        if (!value) return {};
        std::vector<std::string> items;
        std::istringstream stream(*value);
        std::string item;
        while (std::getline(stream, item, ',')) {
            item = trim(item);
            if (item.empty()) fail(section, key, "empty list item");
            items.push_back(item);
        }
        if (items.empty()) fail(section, key, "expected a non-empty list");
        return items;
    }

    std::vector<double> number_list(const std::string& section, const std::string& key) {
        std::vector<double> numbers;
        for (const std::string& item : list(section, key))
            numbers.push_back(parse_double(section, key, item));
        return numbers;
    }

    double parse_double(const std::string& section, const std::string& key,
                        const std::string& text) {
        try {
            std::size_t consumed = 0;
            const double value = std::stod(text, &consumed);
            if (consumed != text.size())
                fail(section, key, "trailing characters in number '" + text + "'");
            return value;
        } catch (const std::logic_error&) {
            fail(section, key, "expected a number, got '" + text + "'");
        }
        return 0.0;  // unreachable
    }

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& what) const {
        auto it = entries_.find({section, key});
        std::ostringstream msg;
        msg << origin_;
        if (it != entries_.end()) msg << ":" << it->second.line;
        msg << ": " << key_path(section, key) << ": " << what;
        throw ConfigError(msg.str());
    }

    void reject_unused() const {
        for (const auto& [where, entry] : entries_) {
            if (!entry.used) {
                std::ostringstream msg;
                msg << origin_ << ":" << entry.line << ": unknown key '"
                    << key_path(where.first, where.second) << "'";
                throw ConfigError(msg.str());
            }
        }
    }

private:
    EntryMap entries_;
    std::string origin_;
};

EntryMap read_entries(std::istream& in, const std::string& origin) {
    EntryMap entries;
    std::string section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto comment = line.find_first_of("#;");
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "profile" && section != "converter" && section != "sweep")
                throw ConfigError(origin + ":" + std::to_string(line_no) +
                                  ": unknown section '[" + section + "]'");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected 'key = value', got '" +
                              line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
        if (value.empty())
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty value for '" +
                              key_path(section, key) + "'");
        if (!entries.emplace(std::make_pair(section, key), Entry{value, line_no, false}).second)
            throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key '" +
                              key_path(section, key) + "'");
    }
    return entries;
}

void apply_profile(Reader& reader, battery::ProfileParams& p) {
    const std::string s = "profile";
    if (auto v = reader.number(s, "capacity_mah")) p.capacity_mah = *v;
    if (auto v = reader.number(s, "v_tc_start")) p.v_tc_start_v = *v;
    if (auto v = reader.number(s, "v_tc_cc")) p.v_tc_cc_v = *v;
    if (auto v = reader.number(s, "v_cv")) p.v_cv_v = *v;
    if (auto v = reader.number(s, "i_tc_max_ma")) p.i_tc_max_ma = *v;
    if (auto v = reader.number(s, "i_cc_ma")) p.i_cc_ma = *v;
    if (auto v = reader.number(s, "i_min_ma")) p.i_min_ma = *v;
    if (auto v = reader.number(s, "tc_duration_h")) p.tc_duration_h = *v;
    if (auto v = reader.number(s, "cc_voltage_slope_v_per_mah")) p.cc_voltage_slope_v_per_mah = *v;
    if (auto v = reader.number(s, "cv_decay_tau_h")) p.cv_decay_tau_h = *v;
    if (auto v = reader.number(s, "cv_timer_h")) p.cv_timer_h = *v;
    if (auto v = reader.number(s, "session_cutoff_h")) p.session_cutoff_h = *v;
}

void apply_converter(Reader& reader, converter::ConverterParams& c) {
    const std::string s = "converter";
    if (auto v = reader.number(s, "inductance_h")) c.inductance_h = *v;
    if (auto v = reader.number(s, "switch_period_s")) c.switch_period_s = *v;
    if (auto v = reader.raw(s, "mode")) c.mode = converter::mode_from_name(*v);
    if (auto v = reader.number(s, "efficiency")) c.efficiency = *v;
}

void apply_scenario(Reader& reader, simkit::Scenario& scenario, bool require_wavelength) {
    const std::string s;  // top level

    auto wavelength = reader.number(s, "wavelength_nm");
    if (wavelength) scenario.wavelength_nm = *wavelength;
    else if (require_wavelength)
        throw ConfigError("wavelength_nm is required (810 or 1550)");

    if (auto v = reader.raw(s, "air")) {
        scenario.air.kind = optics::air_kind_from_name(*v);
        scenario.air.visibility_km = optics::default_visibility_km(scenario.air.kind);
    }
    if (auto v = reader.number(s, "visibility_km")) scenario.air.visibility_km = *v;

    if (auto v = reader.number(s, "temp_c")) scenario.temp_c = *v;
    if (auto v = reader.number(s, "radius_km")) scenario.radius_km = *v;
    if (auto v = reader.raw(s, "mode")) scenario.mode = simkit::mode_from_name(*v);
    if (auto v = reader.number(s, "dt_s")) scenario.dt_s = *v;
    if (auto v = reader.number(s, "rbc_fixed_power_w")) scenario.rbc_fixed_power_w = *v;
    if (auto v = reader.number(s, "rbc_duration_h")) scenario.rbc_duration_h = *v;
    if (auto v = reader.number(s, "beam_ref_wavelength_nm")) scenario.beam_ref_wavelength_nm = *v;
    if (auto v = reader.number(s, "max_supply_w")) scenario.max_supply_w = *v;
    if (auto v = reader.integer(s, "feedback_delay_ticks")) scenario.feedback_delay_ticks = *v;
    if (auto v = reader.raw(s, "pv_fit_csv"))
        scenario.fit_table = pv::PvFitTable::from_csv_file(*v);
}

simkit::SweepGrid read_sweep(Reader& reader, const simkit::Scenario& base) {
    const std::string s = "sweep";
    simkit::SweepGrid grid;
    grid.base = base;

    for (const char* key : {"wavelengths_nm", "temps_c", "airs", "radii_km", "modes"}) {
        if (!reader.raw(s, key)) reader.fail(s, key, "is required for a sweep");
    }
    grid.wavelengths_nm = reader.number_list(s, "wavelengths_nm");
    grid.temps_c = reader.number_list(s, "temps_c");
    for (const std::string& name : reader.list(s, "airs")) {
        const optics::AirKind kind = optics::air_kind_from_name(name);
        grid.airs.push_back({kind, optics::default_visibility_km(kind)});
    }
    grid.radii_km = reader.number_list(s, "radii_km");
    for (const std::string& name : reader.list(s, "modes"))
        grid.modes.push_back(simkit::mode_from_name(name));

    grid.validate();
    return grid;
}

}  // namespace

LoadedConfig parse_config(std::istream& in, const std::string& origin) {
    Reader reader(read_entries(in, origin), origin);

    LoadedConfig loaded;
    const bool has_sweep = reader.has_section("sweep");

    apply_scenario(reader, loaded.scenario, /*require_wavelength=*/!has_sweep);
    apply_profile(reader, loaded.scenario.profile);
    apply_converter(reader, loaded.scenario.converter);

    if (has_sweep) {
        loaded.sweep = read_sweep(reader, loaded.scenario);
        reader.reject_unused();
        // Per-cell validation happens inside the sweep; validate the shared
        // pieces that every cell inherits.
        loaded.scenario.profile.validate();
        loaded.scenario.converter.validate();
        for (const auto& air : loaded.sweep->airs) air.validate();
    } else {
        reader.reject_unused();
        loaded.scenario.validate();
    }
    return loaded;
}

LoadedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    return parse_config(in, path);
}

std::string profile_section_text(const battery::ProfileParams& p) {
    std::ostringstream out;
    out.precision(17);  // round-trip exact: stage boundaries are tick-sensitive
    out << "[profile]\n";
    out << "capacity_mah = " << p.capacity_mah << "\n";
    out << "v_tc_start = " << p.v_tc_start_v << "\n";
    out << "v_tc_cc = " << p.v_tc_cc_v << "\n";
    out << "v_cv = " << p.v_cv_v << "\n";
    out << "i_tc_max_ma = " << p.i_tc_max_ma << "\n";
    out << "i_cc_ma = " << p.i_cc_ma << "\n";
    out << "i_min_ma = " << p.i_min_ma << "\n";
    out << "tc_duration_h = " << p.tc_duration_h << "\n";
    out << "cc_voltage_slope_v_per_mah = " << p.cc_voltage_slope_v_per_mah << "\n";
    out << "cv_decay_tau_h = " << p.cv_decay_tau_h << "\n";
    out << "cv_timer_h = " << p.cv_timer_h << "\n";
    out << "session_cutoff_h = " << p.session_cutoff_h << "\n";
    return out.str();
}

}  // namespace arbc::config
