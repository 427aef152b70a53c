#include "arbc/cli.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "arbc/config.hpp"
#include "arbc/errors.hpp"
#include "arbc/report_io.hpp"
#include "arbc/simkit.hpp"

namespace arbc::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct CommonOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    double dt_override = 0.0;
    std::string mode_override;
    int verbosity = 0;
};

void apply_overrides(simkit::Scenario& scenario, const CommonOptions& opts) {
    if (opts.dt_override > 0.0) scenario.dt_s = opts.dt_override;
    if (!opts.mode_override.empty()) scenario.mode = simkit::mode_from_name(opts.mode_override);
}

void emit_or_print(const std::string& csv_text, const std::string& json_text,
                   const CommonOptions& opts) {
    const std::string& text = opts.format == "json" ? json_text : csv_text;
    if (opts.out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        io::write_file(opts.out_path, text);
        std::cout << "wrote " << opts.out_path << "\n";
    }
}

std::string series_file_name(const simkit::Scenario& s) {
    std::ostringstream name;
    name << "series_" << io::format_g6(s.wavelength_nm) << "nm_" << io::format_g6(s.temp_c)
         << "C_" << optics::air_kind_name(s.air.kind) << "_" << io::format_g6(s.radius_km)
         << "km_" << simkit::mode_name(s.mode) << ".csv";
    return name.str();
}

void print_session_summary(const simkit::SessionReport& report, int verbosity) {
    const simkit::Scenario& s = report.scenario;
    std::printf("scenario: %s nm, %s C, %s (visibility %s km), %s km, %s, dt %s s\n",
                io::format_g6(s.wavelength_nm).c_str(), io::format_g6(s.temp_c).c_str(),
                optics::air_kind_name(s.air.kind), io::format_g6(s.air.visibility_km).c_str(),
                io::format_g6(s.radius_km).c_str(), simkit::mode_name(s.mode),
                io::format_g6(s.dt_s).c_str());
    if (verbosity > 0) {
        const control::LinkCoefficients link = simkit::link_for(s);
        std::printf("link: a1=%s b1=%s a2=%s b2=%s eta_bt=%s\n", io::format_g6(link.a1).c_str(),
                    io::format_g6(link.b1).c_str(), io::format_g6(link.a2).c_str(),
                    io::format_g6(link.b2).c_str(), io::format_g6(link.eta_bt).c_str());
    }
    std::printf("battery energy:  %s Wh\n", io::format_g6(report.battery_energy_wh).c_str());
    std::printf("supplied energy: %s Wh\n", io::format_g6(report.supplied_energy_wh).c_str());
    std::printf("duration: %s h (%s)\n", io::format_g6(report.duration_h).c_str(),
                report.termination_reason.c_str());
}

int cmd_run(const CommonOptions& opts, const std::string& series_path) {
    config::LoadedConfig loaded = config::load_config(opts.config_path);
    if (loaded.sweep)
        throw ConfigError("'run' expects a scenario config; this file has a [sweep] section");
    apply_overrides(loaded.scenario, opts);
    loaded.scenario.validate();

    const simkit::SessionReport report = simkit::run_session(loaded.scenario);
    print_session_summary(report, opts.verbosity);
    if (!opts.out_path.empty())
        emit_or_print(io::session_summary_csv(report), io::session_json(report), opts);
    if (!series_path.empty()) {
        io::write_file(series_path, io::session_series_csv(report));
        std::cout << "wrote " << series_path << "\n";
    }
    return kExitOk;
}

int cmd_sweep(const CommonOptions& opts, const std::string& series_dir) {
    config::LoadedConfig loaded = config::load_config(opts.config_path);
    if (!loaded.sweep) throw ConfigError("'sweep' expects a config with a [sweep] section");
    simkit::SweepGrid grid = *loaded.sweep;
    apply_overrides(grid.base, opts);

    std::vector<simkit::SessionReport> sessions;
    const simkit::SweepTable table =
        simkit::sweep(grid, series_dir.empty() ? nullptr : &sessions);
    emit_or_print(io::sweep_csv(table), io::sweep_json(table), opts);

    if (!series_dir.empty()) {
        for (const auto& session : sessions) {
            if (session.records.empty()) continue;  // failed cell
            const std::string path = series_dir + "/" + series_file_name(session.scenario);
            io::write_file(path, io::session_series_csv(session));
        }
        std::cout << "wrote " << sessions.size() << " series files to " << series_dir << "\n";
    }
    return kExitOk;
}

int cmd_compare(const CommonOptions& opts) {
    config::LoadedConfig loaded = config::load_config(opts.config_path);
    if (loaded.sweep)
        throw ConfigError("'compare' expects a scenario config; this file has a [sweep] section");
    apply_overrides(loaded.scenario, opts);

    simkit::Scenario rbc = loaded.scenario;
    rbc.mode = simkit::Mode::RBC;
    simkit::Scenario arbc = loaded.scenario;
    arbc.mode = simkit::Mode::ARBC;

    const simkit::SessionReport rbc_report = simkit::run_session(rbc);
    const simkit::SessionReport arbc_report = simkit::run_session(arbc);
    const simkit::SavingsReport savings = simkit::compare_sessions(rbc_report, arbc_report);

    std::printf("rbc:  battery %s Wh, supplied %s Wh\n",
                io::format_g6(rbc_report.battery_energy_wh).c_str(),
                io::format_g6(rbc_report.supplied_energy_wh).c_str());
    std::printf("arbc: battery %s Wh, supplied %s Wh\n",
                io::format_g6(arbc_report.battery_energy_wh).c_str(),
                io::format_g6(arbc_report.supplied_energy_wh).c_str());
    std::printf("saved: %s Wh battery (%s%%), %s%% supplied\n",
                io::format_g6(savings.absolute_saved_wh).c_str(),
                io::format_g6(savings.battery_energy_saved_pct).c_str(),
                io::format_g6(savings.supplied_energy_saved_pct).c_str());
    if (!opts.out_path.empty())
        emit_or_print(io::savings_csv(savings), io::savings_json(savings), opts);
    return kExitOk;
}

int cmd_calibrate_profile(const CommonOptions& opts, double target_wh) {
    battery::ProfileParams params = battery::ProfileParams::defaults();
    double dt_s = 1.0;
    if (!opts.config_path.empty()) {
        config::LoadedConfig loaded = config::load_config(opts.config_path);
        params = loaded.scenario.profile;
        dt_s = loaded.scenario.dt_s;
    }
    if (opts.dt_override > 0.0) dt_s = opts.dt_override;

    const battery::ProfileParams calibrated =
        battery::calibrate_cv_decay(params, target_wh, dt_s);
    const double energy = battery::preferred_energy_wh(calibrated, dt_s);
    const double duration = battery::session_duration_h(calibrated, dt_s);
    const double handover = battery::cc_handover_fraction(calibrated, 700.0, dt_s);

    std::printf("cv_decay_tau_h = %.6f\n", calibrated.cv_decay_tau_h);
    std::printf("session energy = %.6f Wh (target %.6f)\n", energy, target_wh);
    std::printf("session duration = %.6f h\n", duration);
    std::printf("cc handover at 700 mA = %.1f%% of capacity\n", 100.0 * handover);

    const std::string text = config::profile_section_text(calibrated);
    if (!opts.out_path.empty()) {
        io::write_file(opts.out_path, text);
        std::cout << "wrote " << opts.out_path << "\n";
    } else {
        std::cout << "\n" << text;
    }
    return kExitOk;
}

int cmd_regen_pv_fit(const CommonOptions& opts, const std::string& wavelength_arg,
                     bool calibrate) {
    std::vector<double> wavelengths;
    if (wavelength_arg == "both") {
        wavelengths = {810.0, 1550.0};
    } else {
        wavelengths = {std::stod(wavelength_arg)};
    }

    std::ostringstream csv;
    csv << "wavelength_nm,temp_c,a2_model,b2_model,a2_table,b2_table,a2_rel_err\n";

    for (double wavelength : wavelengths) {
        pv::PvPanelSpec spec = pv::panel_spec_for(wavelength);
        if (calibrate) {
            const pv::PanelCalibration fit =
                pv::calibrate_panel(spec, wavelength, /*fit_band_gap=*/true);
            std::printf(
                "%s nm: calibrated aperture = %.6f cm^2, band gap = %.6f eV "
                "(frozen: %.6f cm^2, %.6f eV)\n",
                io::format_g6(wavelength).c_str(), fit.aperture_cm2, fit.band_gap_ev,
                spec.aperture_cm2, spec.band_gap_ev);
            spec.aperture_cm2 = fit.aperture_cm2;
            spec.band_gap_ev = fit.band_gap_ev;
        }
        const pv::RegenReport report = pv::regenerate_fit(spec, wavelength);
        std::printf("%s nm: max a2 deviation %.3f%%, a2 %s in temperature\n",
                    io::format_g6(wavelength).c_str(), 100.0 * report.max_a2_rel_err,
                    report.a2_monotone_decreasing ? "monotone decreasing" : "not monotone");
        for (const auto& row : report.rows) {
            if (opts.verbosity > 0)
                std::printf("  %5.1f C: a2 %.4f vs %.4f (%+.2f%%), b2 %+.5f vs %+.5f\n",
                            row.temp_c, row.a2_model, row.a2_table,
                            100.0 * (row.a2_model - row.a2_table) / row.a2_table, row.b2_model,
                            row.b2_table);
            csv << io::format_g6(wavelength) << ',' << io::format_g6(row.temp_c) << ','
                << io::format_g6(row.a2_model) << ',' << io::format_g6(row.b2_model) << ','
                << io::format_g6(row.a2_table) << ',' << io::format_g6(row.b2_table) << ','
                << io::format_g6(row.a2_rel_err) << '\n';
        }
    }
    if (!opts.out_path.empty()) {
        io::write_file(opts.out_path, csv.str());
        std::cout << "wrote " << opts.out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"resonant beam charging simulator (fixed-power and adaptive modes)"};
    app.require_subcommand(1);

    CommonOptions opts;
    bool seedless = false;
    app.add_flag("--seedless", seedless,
                 "document determinism: the simulator uses no randomness");
    app.add_flag_function("-v,--verbose", [&](std::int64_t n) { opts.verbosity = static_cast<int>(n); },
                          "more detail on stdout");

    std::string series_path;
    std::string series_dir;
    double target_wh = 5.96;
    std::string wavelength_arg = "both";
    bool calibrate_apertures = false;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* config_opt = sub->add_option("--config", opts.config_path, "config file path");
        if (config_required) config_opt->required();
        sub->add_option("--out", opts.out_path, "output file path");
        sub->add_option("--format", opts.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--dt", opts.dt_override, "time step override (seconds)");
    };

    CLI::App* run_cmd = app.add_subcommand("run", "run one charging session");
    add_common(run_cmd, true);
    run_cmd->add_option("--mode", opts.mode_override, "mode override")
        ->check(CLI::IsMember({"rbc", "arbc"}));
    run_cmd->add_option("--series", series_path, "write the per-tick power chain CSV here");

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a scenario grid");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--series-dir", series_dir,
                          "write per-cell tick series CSVs into this directory");

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "run both modes of one scenario and report savings");
    add_common(compare_cmd, true);

    CLI::App* calibrate_cmd = app.add_subcommand(
        "calibrate-profile", "fit the CV decay so a default session hits a target energy");
    add_common(calibrate_cmd, false);
    calibrate_cmd->add_option("--target-battery-wh", target_wh, "session energy target (Wh)");

    CLI::App* regen_cmd = app.add_subcommand(
        "regen-pv-fit", "rebuild the beam-to-battery fit from the diode model");
    add_common(regen_cmd, false);
    regen_cmd->add_option("--wavelength", wavelength_arg, "810, 1550 or both")
        ->check(CLI::IsMember({"810", "1550", "both"}));
    regen_cmd->add_flag("--calibrate", calibrate_apertures,
                        "search the aperture that best matches the embedded table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run_cmd->parsed()) return cmd_run(opts, series_path);
        if (sweep_cmd->parsed()) return cmd_sweep(opts, series_dir);
        if (compare_cmd->parsed()) return cmd_compare(opts);
        if (calibrate_cmd->parsed()) return cmd_calibrate_profile(opts, target_wh);
        if (regen_cmd->parsed()) return cmd_regen_pv_fit(opts, wavelength_arg, calibrate_apertures);
        std::cerr << "no subcommand given\n";
        return kExitConfig;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace arbc::cli
