// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "arbc/control.hpp"
#include "arbc/optics.hpp"
#include "arbc/pv.hpp"
#include "arbc/report_io.hpp"
#include "arbc/simkit.hpp"

using namespace arbc;

namespace {

struct Criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

std::vector<Criterion> g_results;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void record(int id, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
    g_results.push_back({id, name, pass, detail, seconds});
}

std::string fmt(const char* format, ...) {
    char buffer[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buffer, sizeof(buffer), format, args);
    va_end(args);
    return buffer;
}

double rel_err(double got, double expected) { return std::abs(got - expected) / expected; }

// Expected supplied energies (Wh) for the published 108-cell evaluation
// grid; radii columns are 0.1, 0.5 and 1 km.
struct ExpectedRow {
    double wavelength_nm;
    simkit::Mode mode;
    optics::AirKind air;
    double temp_c;
    double wh[3];
};

const ExpectedRow kExpectedSuppliedWh[] = {
    {810, simkit::Mode::RBC, optics::AirKind::ClearAir, 0, {64.20, 69.91, 77.86}},
    {810, simkit::Mode::RBC, optics::AirKind::ClearAir, 25, {64.15, 69.85, 77.79}},
    {810, simkit::Mode::RBC, optics::AirKind::ClearAir, 50, {64.15, 69.86, 77.80}},
    {810, simkit::Mode::RBC, optics::AirKind::Haze, 0, {68.46, 97.02, 152.01}},
    {810, simkit::Mode::RBC, optics::AirKind::Haze, 25, {68.39, 96.93, 151.86}},
    {810, simkit::Mode::RBC, optics::AirKind::Haze, 50, {68.40, 96.94, 151.88}},
    {810, simkit::Mode::RBC, optics::AirKind::Fog, 0, {156.23, 7.59e3, 1.0115e6}},
    {810, simkit::Mode::RBC, optics::AirKind::Fog, 25, {156.08, 7.579e3, 1.0105e6}},
    {810, simkit::Mode::RBC, optics::AirKind::Fog, 50, {156.09, 7.58e3, 1.0106e6}},
    {810, simkit::Mode::ARBC, optics::AirKind::ClearAir, 0, {29.97, 32.28, 35.49}},
    {810, simkit::Mode::ARBC, optics::AirKind::ClearAir, 25, {29.99, 32.31, 35.52}},
    {810, simkit::Mode::ARBC, optics::AirKind::ClearAir, 50, {30.05, 32.36, 35.58}},
    {810, simkit::Mode::ARBC, optics::AirKind::Haze, 0, {31.69, 43.23, 65.45}},
    {810, simkit::Mode::ARBC, optics::AirKind::Haze, 25, {31.72, 43.27, 65.51}},
    {810, simkit::Mode::ARBC, optics::AirKind::Haze, 50, {31.77, 43.35, 65.63}},
    {810, simkit::Mode::ARBC, optics::AirKind::Fog, 0, {67.15, 3.069e3, 4.087e5}},
    {810, simkit::Mode::ARBC, optics::AirKind::Fog, 25, {67.22, 3.073e3, 4.091e5}},
    {810, simkit::Mode::ARBC, optics::AirKind::Fog, 50, {67.34, 3.079e3, 4.099e5}},
    {1550, simkit::Mode::RBC, optics::AirKind::ClearAir, 0, {65.15, 70.96, 79.03}},
    {1550, simkit::Mode::RBC, optics::AirKind::ClearAir, 25, {69.40, 75.63, 84.30}},
    {1550, simkit::Mode::RBC, optics::AirKind::ClearAir, 50, {74.24, 80.94, 90.28}},
    {1550, simkit::Mode::RBC, optics::AirKind::Haze, 0, {69.47, 98.51, 154.40}},
    {1550, simkit::Mode::RBC, optics::AirKind::Haze, 25, {74.04, 105.19, 165.15}},
    {1550, simkit::Mode::RBC, optics::AirKind::Haze, 50, {79.23, 112.78, 177.37}},
    {1550, simkit::Mode::RBC, optics::AirKind::Fog, 0, {158.69, 7.71e3, 1.03e6}},
    {1550, simkit::Mode::RBC, optics::AirKind::Fog, 25, {169.75, 8.27e3, 1.10e6}},
    {1550, simkit::Mode::RBC, optics::AirKind::Fog, 50, {182.33, 8.91e3, 1.19e6}},
    {1550, simkit::Mode::ARBC, optics::AirKind::ClearAir, 0, {30.71, 33.09, 36.41}},
    {1550, simkit::Mode::ARBC, optics::AirKind::ClearAir, 25, {32.55, 35.11, 38.68}},
    {1550, simkit::Mode::ARBC, optics::AirKind::ClearAir, 50, {34.63, 37.40, 41.26}},
    {1550, simkit::Mode::ARBC, optics::AirKind::Haze, 0, {32.48, 44.39, 67.31}},
    {1550, simkit::Mode::ARBC, optics::AirKind::Haze, 25, {34.46, 47.28, 71.96}},
    {1550, simkit::Mode::ARBC, optics::AirKind::Haze, 50, {36.69, 50.55, 77.22}},
    {1550, simkit::Mode::ARBC, optics::AirKind::Fog, 0, {69.07, 3.17e3, 4.22e5}},
    {1550, simkit::Mode::ARBC, optics::AirKind::Fog, 25, {73.85, 3.41e3, 4.54e5}},
    {1550, simkit::Mode::ARBC, optics::AirKind::Fog, 50, {79.27, 3.68e3, 4.91e5}},
};

int radius_index(double radius_km) {
    if (radius_km == 0.1) return 0;
    if (radius_km == 0.5) return 1;
    return 2;
}

double expected_supplied_wh(const simkit::SweepRow& row) {
    for (const auto& entry : kExpectedSuppliedWh) {
        if (entry.wavelength_nm == row.wavelength_nm && entry.mode == row.mode &&
            entry.air == row.air.kind && entry.temp_c == row.temp_c)
            return entry.wh[radius_index(row.radius_km)];
    }
    return -1.0;
}

// --- criteria ---------------------------------------------------------------

void criterion_1_inverse_round_trip() {
    Timer timer;
    std::mt19937 rng(20250809);
    std::uniform_real_distribution<double> a1(0.3, 0.5);
    std::uniform_real_distribution<double> b1(-1.2, -0.5);
    std::uniform_real_distribution<double> a2(0.5, 0.62);
    std::uniform_real_distribution<double> b2(-0.15, -0.08);
    std::uniform_real_distribution<double> eta(1e-5, 1.0);
    std::uniform_real_distribution<double> p_b(0.1, 10.0);

    double max_err = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const control::LinkCoefficients c{a1(rng), b1(rng), a2(rng), b2(rng), eta(rng)};
        const double target = p_b(rng);
        const double recovered =
            control::end_to_end_battery_power(control::required_supply_power(target, c, 1e12), c);
        max_err = std::max(max_err, rel_err(recovered, target));
    }
    const double seconds = timer.seconds();
    record(1, "inverse round-trip", max_err <= 1e-9 && seconds < 1.0,
           fmt("max rel err %.2e over %d tuples (limit 1e-9)", max_err, n), seconds);
}

void criterion_2_battery_energy_savings() {
    Timer timer;
    simkit::Scenario base;  // 810 nm, 25 C, clear air, 0.1 km defaults
    base.mode = simkit::Mode::ARBC;
    const simkit::SessionReport arbc = simkit::run_session(base);
    base.mode = simkit::Mode::RBC;
    const simkit::SessionReport rbc = simkit::run_session(base);
    const simkit::SavingsReport savings = simkit::compare_sessions(rbc, arbc);

    const bool arbc_ok = rel_err(arbc.battery_energy_wh, 5.96) <= 0.05;
    const bool rbc_ok = rel_err(rbc.battery_energy_wh, 15.20) <= 0.005;
    const bool savings_ok = std::abs(savings.battery_energy_saved_pct - 61.0) <= 3.0;
    const double seconds = timer.seconds();
    record(2, "battery energy savings",
           arbc_ok && rbc_ok && savings_ok && seconds < 5.0,
           fmt("arbc %.3f Wh (5.96 +-5%%), rbc %.3f Wh (15.20 +-0.5%%), saved %.1f%% (61 +-3pp)",
               arbc.battery_energy_wh, rbc.battery_energy_wh, savings.battery_energy_saved_pct),
           seconds);
}

void criteria_3_to_5_8_to_10_reference_grid() {
    Timer sweep_timer;
    const simkit::SweepTable table = simkit::sweep(simkit::reference_sweep_grid());
    const double sweep_seconds = sweep_timer.seconds();

    // 3: fixed-power cells within 2%.
    {
        Timer timer;
        double worst = 0.0;
        std::string worst_cell = "-";
        int checked = 0;
        bool clean = true;
        for (const auto& row : table.rows) {
            if (row.mode != simkit::Mode::RBC) continue;
            if (!row.error.empty()) clean = false;
            const double expected = expected_supplied_wh(row);
            const double err = rel_err(row.supplied_energy_wh, expected);
            ++checked;
            if (err > worst) {
                worst = err;
                worst_cell = fmt("%gnm/%gC/%s/%gkm", row.wavelength_nm, row.temp_c,
                                 optics::air_kind_name(row.air.kind), row.radius_km);
            }
        }
        const double seconds = sweep_seconds + timer.seconds();
        record(3, "fixed-power grid energies",
               clean && checked == 54 && worst <= 0.02 && seconds < 10.0,
               fmt("%d cells, worst %.2f%% at %s (limit 2%%)", checked, 100.0 * worst,
                   worst_cell.c_str()),
               seconds);
    }

    // 4: adaptive cells within 3%.
    {
        Timer timer;
        double worst = 0.0;
        std::string worst_cell = "-";
        int checked = 0;
        bool clean = true;
        for (const auto& row : table.rows) {
            if (row.mode != simkit::Mode::ARBC) continue;
            if (!row.error.empty()) clean = false;
            const double expected = expected_supplied_wh(row);
            const double err = rel_err(row.supplied_energy_wh, expected);
            ++checked;
            if (err > worst) {
                worst = err;
                worst_cell = fmt("%gnm/%gC/%s/%gkm", row.wavelength_nm, row.temp_c,
                                 optics::air_kind_name(row.air.kind), row.radius_km);
            }
        }
        const double seconds = sweep_seconds + timer.seconds();
        record(4, "adaptive grid energies",
               clean && checked == 54 && worst <= 0.03 && seconds < 30.0,
               fmt("%d cells, worst %.2f%% at %s (limit 3%%)", checked, 100.0 * worst,
                   worst_cell.c_str()),
               seconds);
    }

    // 5: supplied-energy savings inside [53, 60] with 1pp slack.
    {
        Timer timer;
        double lo = 1e9, hi = -1e9;
        int counted = 0;
        for (const auto& row : table.rows) {
            if (!row.saved_pct) continue;
            lo = std::min(lo, *row.saved_pct);
            hi = std::max(hi, *row.saved_pct);
            ++counted;
        }
        record(5, "supplied-energy savings band", counted == 54 && lo >= 52.0 && hi <= 61.0,
               fmt("savings %.2f%%..%.2f%% over %d cells (band [52, 61])", lo, hi, counted),
               timer.seconds());
    }

    // 8: attenuation spot value and the foggy-kilometre energy scale.
    {
        Timer timer;
        const double sigma =
            optics::attenuation_coefficient(550.0, optics::AirCondition::clear_air(10.0));
        bool fog_ok = false;
        double fog_wh = 0.0;
        for (const auto& row : table.rows) {
            if (row.mode == simkit::Mode::RBC && row.wavelength_nm == 810.0 &&
                row.air.kind == optics::AirKind::Fog && row.radius_km == 1.0 &&
                row.temp_c == 0.0) {
                fog_wh = row.supplied_energy_wh;
                fog_ok = rel_err(fog_wh, 1.0115e6) <= 0.05;
            }
        }
        record(8, "attenuation spot values", sigma == 0.391 && fog_ok,
               fmt("sigma(550nm, 10km) = %g exactly; fog 1 km supplied %.4g Wh vs 1.0115e6 "
                   "(+-5%%)",
                   sigma, fog_wh),
               timer.seconds());
    }

    // 9: monotonic trends across the grid.
    {
        Timer timer;
        bool radius_ok = true, air_ok = true, temp_ok = true;

        std::map<std::string, std::map<double, double>> by_radius;  // cell -> radius -> Wh
        std::map<std::string, std::map<int, double>> by_air;        // cell -> air rank -> Wh
        std::map<std::string, std::map<double, double>> by_temp;    // 1550 cells -> T -> Wh
        for (const auto& row : table.rows) {
            const char* mode = simkit::mode_name(row.mode);
            const char* air = optics::air_kind_name(row.air.kind);
            by_radius[fmt("%g/%g/%s/%s", row.wavelength_nm, row.temp_c, air, mode)]
                     [row.radius_km] = row.supplied_energy_wh;
            by_air[fmt("%g/%g/%g/%s", row.wavelength_nm, row.temp_c, row.radius_km, mode)]
                  [static_cast<int>(row.air.kind)] = row.supplied_energy_wh;
            if (row.wavelength_nm == 1550.0)
                by_temp[fmt("%s/%g/%s", air, row.radius_km, mode)][row.temp_c] =
                    row.supplied_energy_wh;
        }
        for (const auto& [cell, series] : by_radius) {
            double prev = -1e18;
            for (const auto& [radius, wh] : series) {
                if (wh <= prev) radius_ok = false;
                prev = wh;
            }
        }
        for (const auto& [cell, series] : by_air) {
            double prev = -1e18;
            for (const auto& [rank, wh] : series) {
                if (wh <= prev) air_ok = false;
                prev = wh;
            }
        }
        for (const auto& [cell, series] : by_temp) {
            double prev = -1e18;
            for (const auto& [temp, wh] : series) {
                if (wh <= prev) temp_ok = false;
                prev = wh;
            }
        }
        record(9, "monotonicity suite", radius_ok && air_ok && temp_ok,
               fmt("supply rises with radius: %s; with worse air: %s; with 1550 nm "
                   "temperature: %s",
                   radius_ok ? "yes" : "no", air_ok ? "yes" : "no", temp_ok ? "yes" : "no"),
               timer.seconds());
    }

    // 10: byte-identical CSV from two fresh sweep runs.
    {
        Timer timer;
        const std::string a = io::sweep_csv(simkit::sweep(simkit::reference_sweep_grid()));
        const std::string b = io::sweep_csv(simkit::sweep(simkit::reference_sweep_grid()));
        record(10, "sweep determinism", !a.empty() && a == b,
               fmt("two runs, %zu bytes each, byte-identical: %s", a.size(),
                   a == b ? "yes" : "no"),
               timer.seconds());
    }
}

void criterion_6_pv_fit_regeneration() {
    Timer timer;
    const pv::RegenReport r810 = pv::regenerate_fit(pv::panel_spec_810(), 810.0);
    const pv::RegenReport r1550 = pv::regenerate_fit(pv::panel_spec_1550(), 1550.0);

    const bool within = r810.max_a2_rel_err <= 0.05 && r1550.max_a2_rel_err <= 0.05;
    const bool trend = r1550.a2_monotone_decreasing;
    record(6, "pv fit regeneration", within && trend,
           fmt("a2 deviation 810: %.2f%%, 1550: %.2f%% (limit 5%%); 1550 trend decreasing: %s",
               100.0 * r810.max_a2_rel_err, 100.0 * r1550.max_a2_rel_err, trend ? "yes" : "no"),
           timer.seconds());
}

void criterion_7_mpp_oracle() {
    Timer timer;
    std::mt19937 rng(7321);
    std::uniform_real_distribution<double> power(0.5, 12.0);
    std::uniform_real_distribution<double> temp(0.0, 50.0);

    double worst = 0.0;
    const int samples = 50;
    for (int i = 0; i < samples; ++i) {
        const pv::PvPanelSpec spec =
            (i % 2 == 0) ? pv::panel_spec_810() : pv::panel_spec_1550();
        const double p_br = power(rng);
        const double t = temp(rng);

        const double golden = pv::find_mpp(spec, p_br, t).p_mpp_w;

        const double v_oc = pv::open_circuit_voltage(spec, p_br, spec.aperture_cm2, t);
        double brute = 0.0;
        const int n = 100000;
        for (int k = 0; k <= n; ++k) {
            const double v = v_oc * k / n;
            brute = std::max(brute, v * pv::pv_current(v, spec, p_br, spec.aperture_cm2, t));
        }
        worst = std::max(worst, std::abs(golden - brute) / brute);
    }
    record(7, "mpp oracle equivalence", worst <= 1e-4,
           fmt("worst rel power gap %.2e over %d samples vs 1e5-point grid (limit 1e-4)", worst,
               samples),
           timer.seconds());
}

}  // namespace

int main() {
    criterion_1_inverse_round_trip();
    criterion_2_battery_energy_savings();
    criteria_3_to_5_8_to_10_reference_grid();
    criterion_6_pv_fit_regeneration();
    criterion_7_mpp_oracle();

    std::sort(g_results.begin(), g_results.end(),
              [](const Criterion& a, const Criterion& b) { return a.id < b.id; });

    int failures = 0;
    for (const auto& result : g_results) {
        std::printf("[%s] %2d. %-32s %s (%.2f s)\n", result.pass ? "PASS" : "FAIL", result.id,
                    result.name.c_str(), result.detail.c_str(), result.seconds);
        if (!result.pass) ++failures;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(g_results.size()) - failures,
                g_results.size());
    return failures == 0 ? 0 : 1;
}
