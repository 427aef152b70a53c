#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace arbc::pv {

// Single-diode panel description. Short-circuit current and open-circuit
// voltage are quoted at irradiance_ref and temp_ref; v_oc_ref is per cell.
// The saturation current is back-solved from (i_sc_ref, v_oc_ref) at the
// reference temperature and rescaled to other temperatures through the
// band gap. aperture_cm2 is the area the incident beam power spreads over.
struct PvPanelSpec {
    double i_sc_ref_a = 0.0;
    double v_oc_ref_v = 0.0;  // per series cell
    double irradiance_ref_w_cm2 = 0.0;
    double ideality_n = 1.0;
    int series_cells = 1;
    double temp_ref_c = 25.0;
    double band_gap_ev = 1.0;
    double aperture_cm2 = 1.0;

    void validate() const;
};

// Panels for the two supported wavelengths, with calibrated apertures.
PvPanelSpec panel_spec_810();
PvPanelSpec panel_spec_1550();
PvPanelSpec panel_spec_for(double wavelength_nm);

// v_m = n * k * T / q, T in kelvin.
double thermal_voltage(double ideality_n, double temp_c);

// Diode saturation current at temp_c (back-solved at the reference point,
// scaled with T^3 * exp(Eg/k * (1/Tref - 1/T))).
double saturation_current(const PvPanelSpec& spec, double temp_c);

// Effective short-circuit current under beam power p_br spread over
// panel_area_cm2: scales linearly with irradiance.
double short_circuit_current(const PvPanelSpec& spec, double p_br_w, double panel_area_cm2);

// Panel terminal current at panel voltage v:
//   i = i_sc_eff - i_s * (exp(v_cell / v_m) - 1),  v_cell = v / series_cells.
double pv_current(double v_panel_v, const PvPanelSpec& spec, double p_br_w,
                  double panel_area_cm2, double temp_c);

// Panel open-circuit voltage (zero-current root of the diode equation)
// at the given beam power and temperature.
double open_circuit_voltage(const PvPanelSpec& spec, double p_br_w, double panel_area_cm2,
                            double temp_c);

struct MppResult {
    double v_mpp_v = 0.0;
    double i_mpp_a = 0.0;
    double p_mpp_w = 0.0;
};

// Unique maximizer of v * pv_current(v) over [0, v_oc], located by
// golden-section search to 1e-6 V. Throws DegenerateInputError for
// p_br <= 0.
MppResult find_mpp(const PvPanelSpec& spec, double p_br_w, double temp_c);

// Temperature-indexed linear conversion coefficients (p_b = a2 * p_br + b2)
// per wavelength. Rows cover 0..50 C in 5 C steps for 810 and 1550 nm.
struct PvFitTable {
    struct Row {
        double wavelength_nm;
        double temp_c;
        double a2;
        double b2;
    };

    std::vector<Row> rows;

    void validate() const;

    // Exact row when temp_c lands on a tabulated temperature, linear
    // interpolation between neighbours otherwise. Throws OutOfRangeError
    // outside the tabulated temperature span (no extrapolation).
    std::pair<double, double> coefficients(double wavelength_nm, double temp_c) const;

    static const PvFitTable& embedded();
    static PvFitTable from_csv(std::istream& in, const std::string& origin = "<stream>");
    static PvFitTable from_csv_file(const std::string& path);
};

// Coefficients from the embedded table.
std::pair<double, double> pv_fit_coefficients(double wavelength_nm, double temp_c);
std::pair<double, double> pv_fit_coefficients(double wavelength_nm, double temp_c,
                                              const PvFitTable& table);

// p_b = max(0, a2 * p_br + b2)
double battery_power_from_beam(double p_br_w, double a2, double b2);

// ---------------------------------------------------------------------------
// Fit regeneration: rebuild (a2, b2) rows from the diode model by running
// the MPP search over a beam-power grid and least-squares fitting a line,
// then compare against the embedded table.

struct RegenOptions {
    double p_br_min_w = 1.0;
    double p_br_max_w = 10.0;
    int p_br_samples = 19;
};

struct RegenRow {
    double temp_c = 0.0;
    double a2_model = 0.0;
    double b2_model = 0.0;
    double a2_table = 0.0;
    double b2_table = 0.0;
    double a2_rel_err = 0.0;
};

struct RegenReport {
    double wavelength_nm = 0.0;
    std::vector<RegenRow> rows;
    double max_a2_rel_err = 0.0;
    bool a2_monotone_decreasing = false;
};

RegenReport regenerate_fit(const PvPanelSpec& spec, double wavelength_nm,
                           const RegenOptions& options = {});

// Least-squares (slope, intercept) of p_mpp vs p_br at one temperature.
std::pair<double, double> fit_line_at_temperature(const PvPanelSpec& spec, double temp_c,
                                                  const RegenOptions& options = {});

// Find the aperture that minimizes the summed squared a2 error against the
// embedded table rows for the given wavelength. Used to freeze the default
// panel apertures.
double calibrate_aperture(PvPanelSpec spec, double wavelength_nm,
                          const RegenOptions& options = {});

struct PanelCalibration {
    double aperture_cm2 = 0.0;
    double band_gap_ev = 0.0;
    double max_a2_rel_err = 0.0;
};

// Joint aperture / band-gap calibration by coordinate descent. The band gap
// here acts as the effective temperature-response energy of the saturation
// current; fitting it absorbs temperature effects the single-diode model
// does not carry explicitly.
PanelCalibration calibrate_panel(PvPanelSpec spec, double wavelength_nm, bool fit_band_gap,
                                 const RegenOptions& options = {});

}  // namespace arbc::pv
