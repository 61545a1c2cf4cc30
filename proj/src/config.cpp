#include "sfwm/config.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include "sfwm/errors.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& out) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + ": wrong type");
  }
}

double read_number(const json& obj, const char* key, const std::string& where, double fallback) {
  double v = fallback;
  read(obj, key, where, v);
  return v;
}

std::array<double, 2> read_pair(const json& obj, const char* key, const std::string& where) {
  std::vector<double> v;
  read(obj, key, where, v);
  if (v.size() != 2) throw ConfigError(where + "." + key + ": expected [min, max]");
  return {v[0], v[1]};
}

SellmeierModel parse_sellmeier(const json& j) {
  const std::string where = "fiber.sellmeier";
  reject_unknown(j, where, {"name", "B", "C", "window_nm"});
  SellmeierModel m;
  m.name = "custom";
  read(j, "name", where, m.name);
  std::vector<double> b, c;
  read(j, "B", where, b);
  read(j, "C", where, c);
  if (b.size() != 3 || c.size() != 3) throw ConfigError(where + ": B and C need exactly 3 entries");
  std::copy(b.begin(), b.end(), m.b.begin());
  std::copy(c.begin(), c.end(), m.c_um2.begin());
  const auto window = read_pair(j, "window_nm", where);
  m.min_wavelength_m = nm(window[0]);
  m.max_wavelength_m = nm(window[1]);
  m.validate();
  return m;
}

Axis parse_axis(const std::string& s, const std::string& where) {
  if (s == "slow") return Axis::slow;
  if (s == "fast") return Axis::fast;
  throw ConfigError(where + ": expected 'slow' or 'fast', got '" + s + "'");
}

void parse_fiber(const json& j, PhaseMatchConfig& pm) {
  const std::string where = "fiber";
  reject_unknown(j, where,
                 {"length_cm", "birefringence", "gamma_per_W_km", "pump_axis", "sellmeier", "derivative",
                  "derivative_step_rel"});
  auto& f = pm.fiber;
  f.length_m = read_number(j, "length_cm", where, f.length_m * 1e2) * 1e-2;
  read(j, "birefringence", where, f.birefringence);
  f.gamma_per_W_m = read_number(j, "gamma_per_W_km", where, f.gamma_per_W_m * 1e3) * 1e-3;
  std::string axis = "slow";
  read(j, "pump_axis", where, axis);
  f.pump_axis = parse_axis(axis, where + ".pump_axis");
  if (j.contains("sellmeier")) f.dispersion = parse_sellmeier(j.at("sellmeier"));
  std::string method = "central_difference";
  read(j, "derivative", where, method);
  if (method == "central_difference") {
    f.derivative = DerivativeMethod::central_difference;
  } else if (method == "analytic") {
    f.derivative = DerivativeMethod::analytic;
  } else {
    throw ConfigError(where + ".derivative: expected 'central_difference' or 'analytic'");
  }
  read(j, "derivative_step_rel", where, f.derivative_step_rel);
}

void parse_pump(const json& j, PumpSpec& p) {
  const std::string where = "pump";
  reject_unknown(j, where, {"center_nm", "fwhm_nm", "shape", "peak_power_W"});
  p.center_wavelength_m = nm(read_number(j, "center_nm", where, to_nm(p.center_wavelength_m)));
  p.fwhm_m = nm(read_number(j, "fwhm_nm", where, to_nm(p.fwhm_m)));
  std::string shape = "gaussian";
  read(j, "shape", where, shape);
  if (shape == "gaussian") {
    p.shape = PumpShape::gaussian;
  } else if (shape == "rect") {
    p.shape = PumpShape::rect;
  } else {
    throw ConfigError(where + ".shape: expected 'gaussian' or 'rect', got '" + shape + "'");
  }
  read(j, "peak_power_W", where, p.peak_power_W);
}

void parse_grid(const json& j, GridConfig& g) {
  const std::string where = "grid";
  reject_unknown(j, where, {"signal_nm", "idler_nm", "points", "span_sigmas"});
  if (j.contains("signal_nm")) g.signal_nm = read_pair(j, "signal_nm", where);
  if (j.contains("idler_nm")) g.idler_nm = read_pair(j, "idler_nm", where);
  if (g.signal_nm.has_value() != g.idler_nm.has_value()) {
    throw ConfigError(where + ": signal_nm and idler_nm must be given together");
  }
  if (j.contains("points")) {
    std::vector<int> pts;
    read(j, "points", where, pts);
    if (pts.size() != 2) throw ConfigError(where + ".points: expected [n_signal, n_idler]");
    g.n_signal = pts[0];
    g.n_idler = pts[1];
  }
  read(j, "span_sigmas", where, g.span_sigmas);
  if (g.n_signal < 2 || g.n_idler < 2 || g.n_signal > 4096 || g.n_idler > 4096) {
    throw ConfigError(where + ".points: each count must lie in [2, 4096]");
  }
  if (!(g.span_sigmas > 0.0)) throw ConfigError(where + ".span_sigmas: must be > 0");
}

FilterConfig parse_filter(const json& j, const std::string& where) {
  reject_unknown(j, where, {"center_nm", "fwhm_nm", "transmittance"});
  FilterConfig f;
  if (j.contains("center_nm")) f.center_nm = read_number(j, "center_nm", where, 0.0);
  if (!j.contains("fwhm_nm")) throw ConfigError(where + ".fwhm_nm: required");
  read(j, "fwhm_nm", where, f.fwhm_nm);
  read(j, "transmittance", where, f.transmittance);
  if (!(f.fwhm_nm > 0.0)) throw ConfigError(where + ".fwhm_nm: must be > 0");
  if (!(f.transmittance >= 0.0 && f.transmittance <= 1.0)) {
    throw ConfigError(where + ".transmittance: must lie in [0, 1]");
  }
  return f;
}

}  // namespace

RunConfig parse_run_config(const json& doc) {
  reject_unknown(doc, "config", {"fiber", "pump", "grid", "filters", "options", "contours", "filter_sweep", "gallery"});
  RunConfig cfg;
  if (doc.contains("fiber")) parse_fiber(doc.at("fiber"), cfg.phasematch);
  if (doc.contains("pump")) parse_pump(doc.at("pump"), cfg.pump);
  cfg.phasematch.peak_power_W = cfg.pump.peak_power_W;
  if (doc.contains("grid")) parse_grid(doc.at("grid"), cfg.grid);
  if (doc.contains("filters")) {
    const auto& f = doc.at("filters");
    reject_unknown(f, "filters", {"signal", "idler"});
    if (f.contains("signal")) cfg.signal_filter = parse_filter(f.at("signal"), "filters.signal");
    if (f.contains("idler")) cfg.idler_filter = parse_filter(f.at("idler"), "filters.idler");
  }
  if (doc.contains("options")) {
    const auto& o = doc.at("options");
    reject_unknown(o, "options",
                   {"gaussian_pm_approx", "include_nonlinear_shift", "complex_schmidt", "polarization_factor",
                    "out_dir"});
    read(o, "gaussian_pm_approx", "options", cfg.jsa.gaussian_pm_approx);
    read(o, "include_nonlinear_shift", "options", cfg.phasematch.include_nonlinear_shift);
    read(o, "complex_schmidt", "options", cfg.complex_schmidt);
    read(o, "polarization_factor", "options", cfg.phasematch.polarization_factor);
    if (o.contains("out_dir")) {
      std::string dir;
      read(o, "out_dir", "options", dir);
      cfg.out_dir = dir;
    }
  }
  if (doc.contains("contours")) {
    const auto& c = doc.at("contours");
    reject_unknown(c, "contours", {"start_nm", "stop_nm", "step_nm"});
    read(c, "start_nm", "contours", cfg.contours.start_nm);
    read(c, "stop_nm", "contours", cfg.contours.stop_nm);
    read(c, "step_nm", "contours", cfg.contours.step_nm);
    if (!(cfg.contours.step_nm > 0.0) || !(cfg.contours.stop_nm >= cfg.contours.start_nm)) {
      throw ConfigError("contours: need step_nm > 0 and stop_nm >= start_nm");
    }
  }
  if (doc.contains("filter_sweep")) {
    const auto& s = doc.at("filter_sweep");
    reject_unknown(s, "filter_sweep", {"signal_fwhm_nm", "idler_fwhm_nm", "transmittance"});
    read(s, "signal_fwhm_nm", "filter_sweep", cfg.filter_sweep.signal_fwhm_nm);
    read(s, "idler_fwhm_nm", "filter_sweep", cfg.filter_sweep.idler_fwhm_nm);
    read(s, "transmittance", "filter_sweep", cfg.filter_sweep.transmittance);
  }
  if (doc.contains("gallery")) {
    const auto& g = doc.at("gallery");
    reject_unknown(g, "gallery", {"fwhm_nm", "length_cm"});
    read(g, "fwhm_nm", "gallery", cfg.gallery.fwhm_nm);
    read(g, "length_cm", "gallery", cfg.gallery.length_cm);
  }
  try {
    cfg.phasematch.validate();
    cfg.pump.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  return parse_run_config(doc);
}

FrequencyGrid resolve_grid(const RunConfig& cfg) {
  const auto& g = cfg.grid;
  if (g.signal_nm && g.idler_nm) {
    return FrequencyGrid::from_wavelengths(nm((*g.signal_nm)[0]), nm((*g.signal_nm)[1]), nm((*g.idler_nm)[0]),
                                           nm((*g.idler_nm)[1]), g.n_signal, g.n_idler);
  }
  return default_grid(cfg.phasematch, cfg.pump, g.n_signal, g.n_idler, g.span_sigmas);
}

FilterSpec resolve_filter(const FilterConfig& f, double peak_wavelength_m) {
  return {f.center_nm ? nm(*f.center_nm) : peak_wavelength_m, nm(f.fwhm_nm), f.transmittance};
}

}  // namespace sfwm
