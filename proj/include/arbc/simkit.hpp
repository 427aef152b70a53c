#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbc/battery.hpp"
#include "arbc/control.hpp"
#include "arbc/converter.hpp"
#include "arbc/optics.hpp"
#include "arbc/pv.hpp"

namespace arbc::simkit {

enum class Mode { RBC, ARBC };

const char* mode_name(Mode mode);
Mode mode_from_name(const std::string& name);

// One simulation configuration. beam_ref_wavelength_nm selects the
// transmitter fit and the attenuation model; it defaults to wavelength_nm
// and can be pinned (the bundled reference grid pins it at 810 nm so the
// wavelength axis isolates the receiver-side conversion).
struct Scenario {
    double wavelength_nm = 810.0;
    double temp_c = 25.0;
    optics::AirCondition air = optics::AirCondition::clear_air();
    double radius_km = 0.1;
    Mode mode = Mode::ARBC;
    double dt_s = 1.0;
    double rbc_fixed_power_w = 4.2;
    double rbc_duration_h = 15.2 / 4.2;
    double beam_ref_wavelength_nm = 0.0;  // 0 = follow wavelength_nm
    double max_supply_w = 1e7;
    int feedback_delay_ticks = 0;
    battery::ProfileParams profile = battery::ProfileParams::defaults();
    converter::ConverterParams converter;
    pv::PvFitTable fit_table;  // empty = use the embedded table

    double beam_ref() const {
        return beam_ref_wavelength_nm > 0.0 ? beam_ref_wavelength_nm : wavelength_nm;
    }

    void validate() const;
};

// Chain constants implied by a scenario.
control::LinkCoefficients link_for(const Scenario& scenario);

struct SessionReport {
    Scenario scenario;
    std::vector<control::StepRecord> records;
    double battery_energy_wh = 0.0;
    double supplied_energy_wh = 0.0;
    double duration_h = 0.0;
    std::string termination_reason;
};

// Step the control loop from profile_init (ARBC) or over the fixed horizon
// (RBC); energies are trapezoidal integrals of the tick series. Chain
// failures are rethrown as SessionError carrying the offending tick index.
SessionReport run_session(const Scenario& scenario);

struct SavingsReport {
    double battery_energy_saved_pct = 0.0;
    double supplied_energy_saved_pct = 0.0;
    double absolute_saved_wh = 0.0;  // battery-side energy saved
};

// Savings of an ARBC session relative to its RBC baseline. Throws
// ComparisonError unless the reports share every axis except the mode.
SavingsReport compare_sessions(const SessionReport& rbc, const SessionReport& arbc);

struct SweepGrid {
    std::vector<double> wavelengths_nm;
    std::vector<double> temps_c;
    std::vector<optics::AirCondition> airs;
    std::vector<double> radii_km;
    std::vector<Mode> modes;
    Scenario base;  // shared settings (dt, profile, beam reference, ...)

    void validate() const;
};

struct SweepRow {
    double wavelength_nm = 0.0;
    double temp_c = 0.0;
    optics::AirCondition air;
    double radius_km = 0.0;
    Mode mode = Mode::ARBC;
    double battery_energy_wh = 0.0;
    double supplied_energy_wh = 0.0;
    double duration_h = 0.0;
    std::optional<double> saved_pct;  // ARBC rows, when the RBC twin ran
    std::string error;                // non-empty when the cell failed
};

struct SweepTable {
    std::vector<SweepRow> rows;
};

// One summary row per grid cell, in wavelength > temperature > air >
// radius > mode order. Per-cell failures are recorded in the row and the
// sweep continues. Optionally keeps each cell's full tick series (in grid
// order) for curve emission.
SweepTable sweep(const SweepGrid& grid, std::vector<SessionReport>* sessions = nullptr);

// The bundled 36-scenario reference grid: 810/1550 nm, 0/25/50 C,
// clear/haze/fog at default visibilities, 0.1/0.5/1 km, both modes, with
// the transmitter fit and attenuation pinned at the 810 nm reference.
SweepGrid reference_sweep_grid();

}  // namespace arbc::simkit
