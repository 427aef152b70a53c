#include "arbc/simkit.hpp"

#include <cmath>
#include <sstream>

#include "arbc/errors.hpp"

namespace arbc::simkit {

namespace {

const pv::PvFitTable& fit_table_of(const Scenario& s) {
    return s.fit_table.rows.empty() ? pv::PvFitTable::embedded() : s.fit_table;
}

control::ControlContext context_for(const Scenario& s) {
    control::ControlContext ctx;
    ctx.link = link_for(s);
    ctx.panel = pv::panel_spec_for(s.wavelength_nm);
    ctx.temp_c = s.temp_c;
    ctx.conv = s.converter;
    ctx.max_supply_w = s.max_supply_w;
    return ctx;
}

double trapezoid_wh(const std::vector<control::StepRecord>& records,
                    double control::StepRecord::*field) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < records.size(); ++i) {
        const double dt = records[i + 1].t_h - records[i].t_h;
        total += 0.5 * (records[i].*field + records[i + 1].*field) * dt;
    }
    return total;
}

[[noreturn]] void rethrow_at_tick(std::size_t tick, const Error& e) {
    std::ostringstream msg;
    msg << "tick " << tick << ": " << e.what();
    throw SessionError(msg.str());
}

}  // namespace

const char* mode_name(Mode mode) { return mode == Mode::RBC ? "rbc" : "arbc"; }

Mode mode_from_name(const std::string& name) {
    if (name == "rbc") return Mode::RBC;
    if (name == "arbc") return Mode::ARBC;
    throw ConfigError("unknown mode '" + name + "' (expected rbc|arbc)");
}

void Scenario::validate() const {
    optics::beam_spec_for(beam_ref());   // throws for unsupported wavelengths
    pv::panel_spec_for(wavelength_nm);
    air.validate();
    if (radius_km < 0.0) throw ConfigError("scenario: radius must be >= 0");
    if (!(dt_s > 0.0)) throw ConfigError("scenario: time step must be positive");
    if (!(rbc_fixed_power_w > 0.0)) throw ConfigError("scenario: rbc power must be positive");
    if (!(rbc_duration_h > 0.0)) throw ConfigError("scenario: rbc duration must be positive");
    if (feedback_delay_ticks < 0) throw ConfigError("scenario: feedback delay must be >= 0");
    if (!(max_supply_w > 0.0)) throw ConfigError("scenario: max supply must be positive");
    profile.validate();
    converter.validate();
    fit_table_of(*this).coefficients(wavelength_nm, temp_c);  // range-checks temp_c
}

control::LinkCoefficients link_for(const Scenario& s) {
    const optics::BeamWavelengthSpec beam = optics::beam_spec_for(s.beam_ref());
    const double sigma = optics::attenuation_coefficient(s.beam_ref(), s.air);
    const auto [a2, b2] = fit_table_of(s).coefficients(s.wavelength_nm, s.temp_c);

    control::LinkCoefficients link;
    link.a1 = beam.a1;
    link.b1 = beam.b1;
    link.a2 = a2;
    link.b2 = b2;
    link.eta_bt = optics::transmission_efficiency(sigma, s.radius_km);
    link.validate();
    return link;
}

SessionReport run_session(const Scenario& scenario) {
    scenario.validate();
    const control::ControlContext ctx = context_for(scenario);
    const double dt_h = scenario.dt_s / 3600.0;

    SessionReport report;
    report.scenario = scenario;

    if (scenario.mode == Mode::RBC) {
        const auto n_ticks =
            static_cast<std::size_t>(std::ceil(scenario.rbc_duration_h / dt_h - 1e-9));
        report.records.reserve(n_ticks + 1);
        for (std::size_t k = 0; k <= n_ticks; ++k) {
            try {
                report.records.push_back(control::rbc_step(ctx, scenario.rbc_fixed_power_w,
                                                           scenario.profile.v_cv_v, dt_h,
                                                           k * dt_h));
            } catch (const Error& e) {
                rethrow_at_tick(k, e);
            }
        }
        report.termination_reason = "fixed_horizon";
    } else {
        battery::ChargeState state = battery::profile_init(scenario.profile);
        std::vector<double> pref_history;
        const auto delay = static_cast<std::size_t>(scenario.feedback_delay_ticks);
        std::size_t k = 0;
        while (!battery::charge_terminated(state, scenario.profile)) {
            pref_history.push_back(state.p_pref_w);
            const double target =
                delay == 0 ? state.p_pref_w
                           : pref_history[k >= delay ? k - delay : 0];
            try {
                auto [rec, next] =
                    control::arbc_step_with_target(state, target, ctx, dt_h, scenario.profile);
                report.records.push_back(rec);
                state = next;
            } catch (const Error& e) {
                rethrow_at_tick(k, e);
            }
            ++k;
        }
        // Close the series with the terminal state so both modes integrate
        // over the same horizon.
        try {
            report.records.push_back(control::chain_record(
                ctx, state.p_pref_w, state.i_pref_ma / 1000.0, state.v_pref_v, state.elapsed_h));
        } catch (const Error& e) {
            rethrow_at_tick(k, e);
        }
        report.termination_reason = battery::termination_reason_name(state.termination_reason);
    }

    report.battery_energy_wh = trapezoid_wh(report.records, &control::StepRecord::p_b_w);
    report.supplied_energy_wh = trapezoid_wh(report.records, &control::StepRecord::p_s_w);
    report.duration_h = report.records.empty()
                            ? 0.0
                            : report.records.back().t_h - report.records.front().t_h;
    return report;
}

SavingsReport compare_sessions(const SessionReport& rbc, const SessionReport& arbc) {
    const Scenario& a = rbc.scenario;
    const Scenario& b = arbc.scenario;
    if (a.mode != Mode::RBC || b.mode != Mode::ARBC)
        throw ComparisonError("compare: expected an RBC report and an ARBC report");
    if (a.wavelength_nm != b.wavelength_nm || a.temp_c != b.temp_c ||
        a.air.kind != b.air.kind || a.air.visibility_km != b.air.visibility_km ||
        a.radius_km != b.radius_km || a.dt_s != b.dt_s || a.beam_ref() != b.beam_ref())
        throw ComparisonError("compare: scenarios differ in more than the mode");
    const double dt_h = a.dt_s / 3600.0;
    if (std::abs(rbc.duration_h - arbc.duration_h) > 2.0 * dt_h)
        throw ComparisonError("compare: session durations differ by more than two ticks");
    if (!(rbc.battery_energy_wh > 0.0) || !(rbc.supplied_energy_wh > 0.0))
        throw ComparisonError("compare: baseline energies must be positive");

    SavingsReport savings;
    savings.absolute_saved_wh = rbc.battery_energy_wh - arbc.battery_energy_wh;
    savings.battery_energy_saved_pct = 100.0 * savings.absolute_saved_wh / rbc.battery_energy_wh;
    savings.supplied_energy_saved_pct =
        100.0 * (rbc.supplied_energy_wh - arbc.supplied_energy_wh) / rbc.supplied_energy_wh;
    return savings;
}

void SweepGrid::validate() const {
    if (wavelengths_nm.empty() || temps_c.empty() || airs.empty() || radii_km.empty() ||
        modes.empty())
        throw ConfigError("sweep grid: every axis needs at least one value");
}

SweepTable sweep(const SweepGrid& grid, std::vector<SessionReport>* sessions) {
    grid.validate();

    SweepTable table;
    if (sessions) sessions->clear();

    for (double wavelength : grid.wavelengths_nm) {
        for (double temp : grid.temps_c) {
            for (const optics::AirCondition& air : grid.airs) {
                for (double radius : grid.radii_km) {
                    // Run the cell once per mode, then attach supplied-energy
                    // savings to the ARBC row when its baseline succeeded.
                    std::vector<SweepRow> cell_rows;
                    const SessionReport* cell_rbc = nullptr;
                    std::vector<SessionReport> cell_sessions;
                    cell_sessions.reserve(grid.modes.size());

                    for (Mode mode : grid.modes) {
                        Scenario s = grid.base;
                        s.wavelength_nm = wavelength;
                        s.temp_c = temp;
                        s.air = air;
                        s.radius_km = radius;
                        s.mode = mode;

                        SweepRow row;
                        row.wavelength_nm = wavelength;
                        row.temp_c = temp;
                        row.air = air;
                        row.radius_km = radius;
                        row.mode = mode;
                        try {
                            SessionReport report = run_session(s);
                            row.battery_energy_wh = report.battery_energy_wh;
                            row.supplied_energy_wh = report.supplied_energy_wh;
                            row.duration_h = report.duration_h;
                            cell_sessions.push_back(std::move(report));
                        } catch (const Error& e) {
                            row.error = e.what();
                            row.battery_energy_wh = std::nan("");
                            row.supplied_energy_wh = std::nan("");
                            row.duration_h = std::nan("");
                            cell_sessions.emplace_back();
                            cell_sessions.back().scenario = s;
                            cell_sessions.back().termination_reason = "error";
                        }
                        cell_rows.push_back(row);
                        if (mode == Mode::RBC && row.error.empty())
                            cell_rbc = &cell_sessions.back();
                    }

                    for (std::size_t i = 0; i < cell_rows.size(); ++i) {
                        SweepRow& row = cell_rows[i];
                        if (row.mode == Mode::ARBC && row.error.empty() && cell_rbc) {
                            const SavingsReport savings =
                                compare_sessions(*cell_rbc, cell_sessions[i]);
                            row.saved_pct = savings.supplied_energy_saved_pct;
                        }
                    }
                    for (std::size_t i = 0; i < cell_rows.size(); ++i) {
                        table.rows.push_back(cell_rows[i]);
                        if (sessions) sessions->push_back(std::move(cell_sessions[i]));
                    }
                }
            }
        }
    }
    return table;
}

SweepGrid reference_sweep_grid() {
    SweepGrid grid;
    grid.wavelengths_nm = {810.0, 1550.0};
    grid.temps_c = {0.0, 25.0, 50.0};
    grid.airs = {optics::AirCondition::clear_air(), optics::AirCondition::haze(),
                 optics::AirCondition::fog()};
    grid.radii_km = {0.1, 0.5, 1.0};
    grid.modes = {Mode::RBC, Mode::ARBC};
    grid.base.beam_ref_wavelength_nm = 810.0;
    return grid;
}

}  // namespace arbc::simkit
