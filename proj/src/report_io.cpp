#include "arbc/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "arbc/errors.hpp"

namespace arbc::io {

namespace {

int air_rank(optics::AirKind kind) {
    switch (kind) {
        case optics::AirKind::ClearAir: return 0;
        case optics::AirKind::Haze: return 1;
        case optics::AirKind::Fog: return 2;
    }
    return 3;
}

int mode_rank(simkit::Mode mode) { return mode == simkit::Mode::RBC ? 0 : 1; }

std::string csv_field(double value) { return std::isnan(value) ? "" : format_g6(value); }

std::string json_number(double value) {
    return std::isnan(value) ? "null" : format_g6(value);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += "\"";
    return out;
}

void emit_row_object(std::ostringstream& out, const simkit::SweepRow& row) {
    out << "{\"visibility_km\":" << json_number(row.air.visibility_km)
        << ",\"battery_energy_wh\":" << json_number(row.battery_energy_wh)
        << ",\"supplied_energy_wh\":" << json_number(row.supplied_energy_wh)
        << ",\"duration_h\":" << json_number(row.duration_h) << ",\"saved_pct\":"
        << (row.saved_pct ? json_number(*row.saved_pct) : std::string("null"))
        << ",\"error\":" << (row.error.empty() ? std::string("null") : json_string(row.error))
        << "}";
}

void emit_scenario_object(std::ostringstream& out, const simkit::Scenario& s) {
    out << "{\"wavelength_nm\":" << json_number(s.wavelength_nm)
        << ",\"temp_c\":" << json_number(s.temp_c)
        << ",\"air\":" << json_string(optics::air_kind_name(s.air.kind))
        << ",\"visibility_km\":" << json_number(s.air.visibility_km)
        << ",\"radius_km\":" << json_number(s.radius_km)
        << ",\"mode\":" << json_string(simkit::mode_name(s.mode))
        << ",\"dt_s\":" << json_number(s.dt_s)
        << ",\"beam_ref_wavelength_nm\":" << json_number(s.beam_ref()) << "}";
}

}  // namespace

std::string format_g6(double value) {
    if (std::isnan(value)) return "nan";
    if (value == 0.0) value = 0.0;  // collapse negative zero
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

std::string sweep_csv(const simkit::SweepTable& table) {
    std::ostringstream out;
    out << "wavelength_nm,temp_c,air,visibility_km,radius_km,mode,battery_energy_wh,"
           "supplied_energy_wh,duration_h,saved_pct,error\n";
    for (const auto& row : table.rows) {
        out << format_g6(row.wavelength_nm) << ',' << format_g6(row.temp_c) << ','
            << optics::air_kind_name(row.air.kind) << ',' << format_g6(row.air.visibility_km)
            << ',' << format_g6(row.radius_km) << ',' << simkit::mode_name(row.mode) << ','
            << csv_field(row.battery_energy_wh) << ',' << csv_field(row.supplied_energy_wh)
            << ',' << csv_field(row.duration_h) << ','
            << (row.saved_pct ? format_g6(*row.saved_pct) : "") << ',' << row.error << '\n';
    }
    return out.str();
}

std::string session_summary_csv(const simkit::SessionReport& report) {
    const simkit::Scenario& s = report.scenario;
    std::ostringstream out;
    out << "wavelength_nm,temp_c,air,visibility_km,radius_km,mode,battery_energy_wh,"
           "supplied_energy_wh,duration_h,termination_reason\n";
    out << format_g6(s.wavelength_nm) << ',' << format_g6(s.temp_c) << ','
        << optics::air_kind_name(s.air.kind) << ',' << format_g6(s.air.visibility_km) << ','
        << format_g6(s.radius_km) << ',' << simkit::mode_name(s.mode) << ','
        << format_g6(report.battery_energy_wh) << ',' << format_g6(report.supplied_energy_wh)
        << ',' << format_g6(report.duration_h) << ',' << report.termination_reason << '\n';
    return out.str();
}

std::string session_series_csv(const simkit::SessionReport& report) {
    std::ostringstream out;
    out << "t_h,p_s_w,p_bt_w,p_br_w,p_pv_w,p_b_w,i_b_a,v_b_v,duty\n";
    for (const auto& rec : report.records) {
        out << format_g6(rec.t_h) << ',' << format_g6(rec.p_s_w) << ',' << format_g6(rec.p_bt_w)
            << ',' << format_g6(rec.p_br_w) << ',' << format_g6(rec.p_pv_w) << ','
            << format_g6(rec.p_b_w) << ',' << format_g6(rec.i_b_a) << ',' << format_g6(rec.v_b_v)
            << ',' << format_g6(rec.duty) << '\n';
    }
    return out.str();
}

std::string savings_csv(const simkit::SavingsReport& savings) {
    std::ostringstream out;
    out << "battery_energy_saved_pct,supplied_energy_saved_pct,absolute_saved_wh\n";
    out << format_g6(savings.battery_energy_saved_pct) << ','
        << format_g6(savings.supplied_energy_saved_pct) << ','
        << format_g6(savings.absolute_saved_wh) << '\n';
    return out.str();
}

std::string sweep_json(const simkit::SweepTable& table) {
    // Canonical nesting order, independent of row order in the table.
    std::vector<const simkit::SweepRow*> rows;
    rows.reserve(table.rows.size());
    for (const auto& row : table.rows) rows.push_back(&row);
    std::sort(rows.begin(), rows.end(), [](const simkit::SweepRow* a, const simkit::SweepRow* b) {
        if (a->wavelength_nm != b->wavelength_nm) return a->wavelength_nm < b->wavelength_nm;
        if (a->temp_c != b->temp_c) return a->temp_c < b->temp_c;
        if (air_rank(a->air.kind) != air_rank(b->air.kind))
            return air_rank(a->air.kind) < air_rank(b->air.kind);
        if (a->radius_km != b->radius_km) return a->radius_km < b->radius_km;
        return mode_rank(a->mode) < mode_rank(b->mode);
    });

    std::ostringstream out;
    out << "{\"schema_version\":1,\"kind\":\"sweep\",\"cells\":{";
    double last_wl = 0, last_temp = 0, last_radius = 0;
    int last_air = -1;
    bool open_wl = false, open_temp = false, open_air = false, open_radius = false;
    bool first_wl = true, first_temp = true, first_air = true, first_radius = true,
         first_mode = true;

    for (const simkit::SweepRow* row : rows) {
        const bool new_wl = !open_wl || row->wavelength_nm != last_wl;
        const bool new_temp = new_wl || row->temp_c != last_temp;
        const bool new_air = new_temp || air_rank(row->air.kind) != last_air;
        const bool new_radius = new_air || row->radius_km != last_radius;

        if (new_radius && open_radius) out << "}";
        if (new_air && open_air) out << "}";
        if (new_temp && open_temp) out << "}";
        if (new_wl && open_wl) out << "}";

        if (new_wl) {
            if (!first_wl) out << ",";
            out << json_string(format_g6(row->wavelength_nm)) << ":{";
            first_wl = false;
            first_temp = true;
            open_wl = true;
            last_wl = row->wavelength_nm;
        }
        if (new_temp) {
            if (!first_temp) out << ",";
            out << json_string(format_g6(row->temp_c)) << ":{";
            first_temp = false;
            first_air = true;
            open_temp = true;
            last_temp = row->temp_c;
        }
        if (new_air) {
            if (!first_air) out << ",";
            out << json_string(optics::air_kind_name(row->air.kind)) << ":{";
            first_air = false;
            first_radius = true;
            open_air = true;
            last_air = air_rank(row->air.kind);
        }
        if (new_radius) {
            if (!first_radius) out << ",";
            out << json_string(format_g6(row->radius_km)) << ":{";
            first_radius = false;
            first_mode = true;
            open_radius = true;
            last_radius = row->radius_km;
        }
        if (!first_mode) out << ",";
        out << json_string(simkit::mode_name(row->mode)) << ":";
        emit_row_object(out, *row);
        first_mode = false;
    }
    if (open_radius) out << "}";
    if (open_air) out << "}";
    if (open_temp) out << "}";
    if (open_wl) out << "}";
    out << "}}";
    return out.str();
}

std::string session_json(const simkit::SessionReport& report) {
    std::ostringstream out;
    out << "{\"schema_version\":1,\"kind\":\"session\",\"scenario\":";
    emit_scenario_object(out, report.scenario);
    out << ",\"battery_energy_wh\":" << json_number(report.battery_energy_wh)
        << ",\"supplied_energy_wh\":" << json_number(report.supplied_energy_wh)
        << ",\"duration_h\":" << json_number(report.duration_h)
        << ",\"termination_reason\":" << json_string(report.termination_reason)
        << ",\"ticks\":" << report.records.size() << "}";
    return out.str();
}

std::string savings_json(const simkit::SavingsReport& savings) {
    std::ostringstream out;
    out << "{\"schema_version\":1,\"kind\":\"savings\",\"battery_energy_saved_pct\":"
        << json_number(savings.battery_energy_saved_pct)
        << ",\"supplied_energy_saved_pct\":" << json_number(savings.supplied_energy_saved_pct)
        << ",\"absolute_saved_wh\":" << json_number(savings.absolute_saved_wh) << "}";
    return out.str();
}

simkit::SweepTable load_sweep_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("sweep json: ") + e.what());
    }
    if (doc.value("schema_version", 0) != 1 || doc.value("kind", "") != "sweep")
        throw IoError("sweep json: unexpected schema");

    // Collect rows, then restore the canonical order (object keys parse
    // alphabetically, not numerically).
    simkit::SweepTable table;
    for (const auto& [wl_key, by_temp] : doc.at("cells").items()) {
        for (const auto& [temp_key, by_air] : by_temp.items()) {
            for (const auto& [air_key, by_radius] : by_air.items()) {
                for (const auto& [radius_key, by_mode] : by_radius.items()) {
                    for (const auto& [mode_key, cell] : by_mode.items()) {
                        simkit::SweepRow row;
                        row.wavelength_nm = std::stod(wl_key);
                        row.temp_c = std::stod(temp_key);
                        row.air.kind = optics::air_kind_from_name(air_key);
                        row.air.visibility_km = cell.at("visibility_km").get<double>();
                        row.radius_km = std::stod(radius_key);
                        row.mode = simkit::mode_from_name(mode_key);
                        const auto number_or_nan = [&](const char* key) {
                            return cell.at(key).is_null() ? std::nan("")
                                                          : cell.at(key).get<double>();
                        };
                        row.battery_energy_wh = number_or_nan("battery_energy_wh");
                        row.supplied_energy_wh = number_or_nan("supplied_energy_wh");
                        row.duration_h = number_or_nan("duration_h");
                        if (!cell.at("saved_pct").is_null())
                            row.saved_pct = cell.at("saved_pct").get<double>();
                        if (!cell.at("error").is_null())
                            row.error = cell.at("error").get<std::string>();
                        table.rows.push_back(row);
                    }
                }
            }
        }
    }
    std::sort(table.rows.begin(), table.rows.end(),
              [](const simkit::SweepRow& a, const simkit::SweepRow& b) {
                  if (a.wavelength_nm != b.wavelength_nm) return a.wavelength_nm < b.wavelength_nm;
                  if (a.temp_c != b.temp_c) return a.temp_c < b.temp_c;
                  if (air_rank(a.air.kind) != air_rank(b.air.kind))
                      return air_rank(a.air.kind) < air_rank(b.air.kind);
                  if (a.radius_km != b.radius_km) return a.radius_km < b.radius_km;
                  return mode_rank(a.mode) < mode_rank(b.mode);
              });
    return table;
}

simkit::SessionReport load_session_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("session json: ") + e.what());
    }
    if (doc.value("schema_version", 0) != 1 || doc.value("kind", "") != "session")
        throw IoError("session json: unexpected schema");

    simkit::SessionReport report;
    const auto& s = doc.at("scenario");
    report.scenario.wavelength_nm = s.at("wavelength_nm").get<double>();
    report.scenario.temp_c = s.at("temp_c").get<double>();
    report.scenario.air.kind = optics::air_kind_from_name(s.at("air").get<std::string>());
    report.scenario.air.visibility_km = s.at("visibility_km").get<double>();
    report.scenario.radius_km = s.at("radius_km").get<double>();
    report.scenario.mode = simkit::mode_from_name(s.at("mode").get<std::string>());
    report.scenario.dt_s = s.at("dt_s").get<double>();
    report.scenario.beam_ref_wavelength_nm = s.at("beam_ref_wavelength_nm").get<double>();
    report.battery_energy_wh = doc.at("battery_energy_wh").get<double>();
    report.supplied_energy_wh = doc.at("supplied_energy_wh").get<double>();
    report.duration_h = doc.at("duration_h").get<double>();
    report.termination_reason = doc.at("termination_reason").get<std::string>();
    return report;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace arbc::io
