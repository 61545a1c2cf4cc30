#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfwm/analysis.hpp"

namespace sfwm {

struct GridConfig {
  std::optional<std::array<double, 2>> signal_nm;
  std::optional<std::array<double, 2>> idler_nm;
  int n_signal = 256;
  int n_idler = 256;
  double span_sigmas = 6.0;
};

struct FilterConfig {
  std::optional<double> center_nm;  // defaults to the marginal peak
  double fwhm_nm = 1.0;
  double transmittance = 0.9;
};

struct ContourConfig {
  double start_nm = 690.0;
  double stop_nm = 730.0;
  double step_nm = 0.1;
};

struct FilterSweepConfig {
  std::vector<double> signal_fwhm_nm{0.5, 0.7, 1.0, 1.4};
  std::vector<double> idler_fwhm_nm{1.0, 1.4, 2.0, 2.8};
  double transmittance = 0.9;
};

struct GalleryConfig {
  std::vector<double> fwhm_nm{0.25, 1.0, 1.5};      // columns
  std::vector<double> length_cm{21.3, 5.7, 3.8};    // rows
};

/// Everything a CLI run needs, parsed once from JSON in laboratory units
/// (nm, cm, W/km, W) and held in SI.
struct RunConfig {
  PhaseMatchConfig phasematch;
  PumpSpec pump;
  GridConfig grid;
  std::optional<FilterConfig> signal_filter;
  std::optional<FilterConfig> idler_filter;
  JsaOptions jsa;
  bool complex_schmidt = false;
  ContourConfig contours;
  FilterSweepConfig filter_sweep;
  GalleryConfig gallery;
  std::optional<std::string> out_dir;
};

/// Throws ConfigError naming the offending field; unknown keys are rejected.
RunConfig parse_run_config(const nlohmann::json& doc);
RunConfig load_run_config(const std::string& path);

/// Explicit grid when both ranges are configured, otherwise the default grid.
FrequencyGrid resolve_grid(const RunConfig& cfg);

/// Filter with its center resolved against the spectrum's marginal peaks.
FilterSpec resolve_filter(const FilterConfig& f, double peak_wavelength_m);

}  // namespace sfwm
