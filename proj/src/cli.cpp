#include "sfwm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sfwm/counting.hpp"
#include "sfwm/errors.hpp"
#include "sfwm/estimation.hpp"
#include "sfwm/output.hpp"
#include "sfwm/raman.hpp"
#include "sfwm/units.hpp"

namespace sfwm {

namespace {

using nlohmann::json;

double r9(double v) { return round_sig9(v); }

json measurement_json(const Measurement& m) {
  return {{"value", r9(m.value)}, {"uncertainty", r9(m.uncertainty)}, {"one_sided", m.one_sided}};
}

json schmidt_json(const SchmidtResult& s) {
  json top = json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(8, s.coefficients.size()); ++i) top.push_back(r9(s.coefficients[i]));
  return {{"purity", r9(s.purity)},
          {"schmidt_number", r9(s.schmidt_number)},
          {"top_8_coefficients", top},
          {"retained_modes", s.retained_modes}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("'" + path + "': " + e.what());
  }
}

void check_keys(const json& doc, const std::string& where, std::initializer_list<const char*> allowed,
                std::initializer_list<const char*> required) {
  if (!doc.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  }
  for (const char* r : required) {
    if (!doc.contains(r)) throw ConfigError(where + ": missing key '" + r + "'");
  }
}

std::uint64_t count_field(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(std::string("counts.") + key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::string output_dir(const std::string& flag, const RunConfig& cfg) {
  std::string dir = !flag.empty() ? flag : cfg.out_dir.value_or(".");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
  return dir;
}

std::string join(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

// --- subcommands -----------------------------------------------------------

void cmd_contours(const RunConfig& cfg, std::ostream& out) {
  std::vector<double> pumps;
  const auto& c = cfg.contours;
  const auto steps = static_cast<long>(std::floor((c.stop_nm - c.start_nm) / c.step_nm + 1e-9));
  for (long s = 0; s <= steps; ++s) pumps.push_back(nm(c.start_nm + s * c.step_nm));
  const auto sols = phase_matching_contours(cfg.phasematch, pumps);
  out << "lambda_p_nm,lambda_s_nm,lambda_i_nm,tau_s_ps,tau_i_ps,theta_si_deg\n";
  for (const auto& s : sols) {
    out << csv_row({to_nm(s.pump_wavelength_m), to_nm(s.signal_wavelength_m), to_nm(s.idler_wavelength_m),
                    s.tau_s * 1e12, s.tau_i * 1e12, s.theta_si * 180.0 / std::numbers::pi});
  }
}

json spectrum_sidecar(const JointSpectrum& js) {
  const auto& g = js.grid;
  Eigen::Index pj = 0, pk = 0;
  const Eigen::MatrixXd p = js.probability();
  p.maxCoeff(&pj, &pk);
  return {{"grid",
           {{"signal_nm", {r9(to_nm(wavelength_from_omega(g.signal_max))), r9(to_nm(wavelength_from_omega(g.signal_min)))}},
            {"idler_nm", {r9(to_nm(wavelength_from_omega(g.idler_max))), r9(to_nm(wavelength_from_omega(g.idler_min)))}},
            {"signal_omega_rad_per_s", {r9(g.signal_min), r9(g.signal_max)}},
            {"idler_omega_rad_per_s", {r9(g.idler_min), r9(g.idler_max)}},
            {"points", {g.n_signal, g.n_idler}},
            {"spacing", "uniform in angular frequency"}}},
          {"normalization", r9(js.normalization)},
          {"intensity_units", "probability per grid cell"},
          {"peak",
           {{"lambda_s_nm", r9(to_nm(wavelength_from_omega(g.signal_omega(static_cast<int>(pj)))))},
            {"lambda_i_nm", r9(to_nm(wavelength_from_omega(g.idler_omega(static_cast<int>(pk)))))},
            {"intensity", r9(p(pj, pk) * g.cell_area())}}},
          {"pump",
           {{"center_nm", r9(to_nm(js.pump.center_wavelength_m))},
            {"fwhm_nm", r9(to_nm(js.pump.fwhm_m))},
            {"shape", js.pump.shape == PumpShape::gaussian ? "gaussian" : "rect"}}},
          {"fiber",
           {{"length_cm", r9(js.config.fiber.length_m * 1e2)},
            {"birefringence", r9(js.config.fiber.birefringence)},
            {"sellmeier", js.config.fiber.dispersion.name}}}};
}

void cmd_jsa(const RunConfig& cfg, const std::string& dir, std::ostream& out) {
  const auto js = build_joint_spectrum(cfg.phasematch, cfg.pump, resolve_grid(cfg), cfg.jsa);
  write_text_file(join(dir, "jsa.csv"), joint_spectrum_csv(js));
  const json sidecar = spectrum_sidecar(js);
  write_text_file(join(dir, "jsa.json"), sidecar.dump(2) + "\n");
  out << sidecar.dump(2) << "\n";
}

void cmd_marginals(const RunConfig& cfg, const std::string& dir, std::ostream& out) {
  const auto js = build_joint_spectrum(cfg.phasematch, cfg.pump, resolve_grid(cfg), cfg.jsa);
  const auto m = marginals(js);
  std::string s = "lambda_s_nm,probability\n";
  for (std::size_t j = 0; j < m.signal_omega.size(); ++j) {
    s += csv_row({to_nm(wavelength_from_omega(m.signal_omega[j])), m.signal_density[j] * js.grid.signal_step()});
  }
  std::string i = "lambda_i_nm,probability\n";
  for (std::size_t k = 0; k < m.idler_omega.size(); ++k) {
    i += csv_row({to_nm(wavelength_from_omega(m.idler_omega[k])), m.idler_density[k] * js.grid.idler_step()});
  }
  write_text_file(join(dir, "signal_marginal.csv"), s);
  write_text_file(join(dir, "idler_marginal.csv"), i);
  const auto peaks = marginal_peak_wavelengths(js);
  out << json{{"signal_peak_nm", r9(to_nm(peaks.signal_m))},
              {"idler_peak_nm", r9(to_nm(peaks.idler_m))},
              {"files", {"signal_marginal.csv", "idler_marginal.csv"}}}
             .dump(2)
      << "\n";
}

void cmd_schmidt(const RunConfig& cfg, std::ostream& out) {
  const auto js = build_joint_spectrum(cfg.phasematch, cfg.pump, resolve_grid(cfg), cfg.jsa);
  json doc = schmidt_json(schmidt_decompose(js, SchmidtInput::magnitude));
  if (cfg.complex_schmidt) doc["complex_amplitude"] = schmidt_json(schmidt_decompose(js, SchmidtInput::complex_amplitude));
  out << doc.dump(2) << "\n";
}

void cmd_filter_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto js = build_joint_spectrum(cfg.phasematch, cfg.pump, resolve_grid(cfg), cfg.jsa);
  const auto peaks = marginal_peak_wavelengths(js);
  const auto& sw = cfg.filter_sweep;
  out << "signal_bw_nm,idler_bw_nm,purity,rate_retention,heralding_s,heralding_i\n";
  for (double bs : sw.signal_fwhm_nm) {
    for (double bi : sw.idler_fwhm_nm) {
      FilterConfig fs{cfg.signal_filter ? cfg.signal_filter->center_nm : std::nullopt, bs, sw.transmittance};
      FilterConfig fi{cfg.idler_filter ? cfg.idler_filter->center_nm : std::nullopt, bi, sw.transmittance};
      const auto r = apply_filters(js, resolve_filter(fs, peaks.signal_m), resolve_filter(fi, peaks.idler_m));
      out << csv_row({bs, bi, schmidt_decompose(r.spectrum).purity, r.rate_retention, r.heralding_retention_signal,
                      r.heralding_retention_idler});
    }
  }
}

void cmd_design_pump(const RunConfig& cfg, std::ostream& out) {
  const auto sol = solve_phase_matching(cfg.phasematch, cfg.pump.center_wavelength_m);
  const auto bw = factorable_pump_bandwidth(sol);
  json doc{{"lambda_p_nm", r9(to_nm(sol.pump_wavelength_m))},
           {"lambda_s_nm", r9(to_nm(sol.signal_wavelength_m))},
           {"lambda_i_nm", r9(to_nm(sol.idler_wavelength_m))},
           {"tau_s_ps", r9(sol.tau_s * 1e12)},
           {"tau_i_ps", r9(sol.tau_i * 1e12)},
           {"theta_si_deg", r9(sol.theta_si * 180.0 / std::numbers::pi)},
           {"amplitude_halfwidth_rad_per_s", r9(bw.amplitude_halfwidth_omega)},
           {"fwhm_rad_per_s", r9(bw.intensity_fwhm_omega)},
           {"fwhm_nm", r9(to_nm(bw.intensity_fwhm_m))}};
  out << doc.dump(2) << "\n";
}

ProbabilityGrid grid_from_csv(const CsvTable& t) {
  // rows are signal-major with the idler varying fastest
  const auto n = t.rows.size();
  std::size_t n_idler = 0;
  while (n_idler < n && t.rows[n_idler][0] == t.rows[0][0]) ++n_idler;
  if (n_idler < 2 || n % n_idler != 0 || n / n_idler < 2) {
    throw ConfigError("joint spectrum CSV must be a full grid in signal-major order");
  }
  const std::size_t n_signal = n / n_idler;
  FrequencyGrid g = FrequencyGrid::from_wavelengths(nm(t.rows.front()[0]), nm(t.rows.back()[0]),
                                                    nm(t.rows.front()[1]), nm(t.rows.back()[1]),
                                                    static_cast<int>(n_signal), static_cast<int>(n_idler));
  Eigen::MatrixXd d(n_signal, n_idler);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    if (t.rows[r][0] != t.rows[(r / n_idler) * n_idler][0] || t.rows[r][1] != t.rows[r % n_idler][1]) {
      throw ConfigError("joint spectrum CSV row " + std::to_string(r + 2) + " breaks the grid layout");
    }
    if (t.rows[r][2] < 0.0) throw ConfigError("joint spectrum CSV row " + std::to_string(r + 2) + ": negative intensity");
    total += t.rows[r][2];
  }
  if (!(total > 0.0)) throw DomainError("joint spectrum CSV carries no intensity");
  // increasing wavelength in the file maps to decreasing frequency on the grid
  const bool s_desc = t.rows.front()[0] > t.rows.back()[0];
  const bool i_desc = t.rows.front()[1] > t.rows.back()[1];
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t j = r / n_idler, k = r % n_idler;
    const std::size_t gj = s_desc ? j : n_signal - 1 - j;
    const std::size_t gk = i_desc ? k : n_idler - 1 - k;
    d(gj, gk) = t.rows[r][2] / (total * g.cell_area());
  }
  return {g, d};
}

void cmd_fidelity(const std::string& a, const std::string& b, std::ostream& out) {
  const std::vector<std::string> header{"lambda_s_nm", "lambda_i_nm", "intensity"};
  const auto ta = read_csv(a, header);
  const auto tb = read_csv(b, header);
  if (ta.rows.size() != tb.rows.size()) throw DomainError("fidelity needs both spectra on the same grid");
  for (std::size_t r = 0; r < ta.rows.size(); ++r) {
    if (ta.rows[r][0] != tb.rows[r][0] || ta.rows[r][1] != tb.rows[r][1]) {
      throw DomainError("fidelity needs both spectra on the same grid (row " + std::to_string(r + 2) + " differs)");
    }
  }
  out << json{{"fidelity", r9(fidelity(grid_from_csv(ta), grid_from_csv(tb)))}}.dump(2) << "\n";
}

json channel_json(const ChannelFit& f) {
  return {{"prefactor", r9(f.prefactor)},
          {"exponent", r9(f.exponent)},
          {"exponent_stderr", r9(f.exponent_stderr)},
          {"log_prefactor_stderr", r9(f.log_prefactor_stderr)},
          {"residual_rms_log", r9(f.residual_rms)},
          {"fixed_exponent", r9(f.fixed_exponent)},
          {"fixed_prefactor", r9(f.fixed_prefactor)}};
}

void cmd_raman_fit(const std::string& path, std::ostream& out) {
  const auto t = read_csv(path, {"pump_power", "signal", "idler", "raman"});
  PowerSweepData data;
  for (const auto& r : t.rows) data.push_back({r[0], r[1], r[2], r[3]});
  const auto fit = fit_power_sweep(data);
  out << json{{"points", data.size()},
              {"signal", channel_json(fit.signal)},
              {"idler", channel_json(fit.idler)},
              {"raman", channel_json(fit.raman)}}
             .dump(2)
      << "\n";
}

struct RamanPredictArgs {
  double raman_coeff = 0.0, idler_coeff = 0.0, signal_coeff = 0.0;
  double power_W = 0.0, length_m = 0.0;
  double pump_nm = 0.0, shift_THz = kSilicaRamanShiftHz * 1e-12;
};

void cmd_raman_predict(const RamanPredictArgs& a, std::ostream& out) {
  const auto p = predict_counts({a.raman_coeff, a.idler_coeff, a.signal_coeff}, a.power_W, a.length_m);
  json doc{{"signal", r9(p.signal)},
           {"idler", r9(p.idler)},
           {"raman", r9(p.raman)},
           {"snr", p.snr_infinite ? json(nullptr) : json(r9(p.snr))},
           {"snr_infinite", p.snr_infinite}};
  if (a.pump_nm > 0.0) {
    const auto lines = stokes_antistokes(nm(a.pump_nm), kTwoPi * a.shift_THz * 1e12);
    doc["stokes_nm"] = r9(to_nm(lines.stokes_wavelength_m));
    doc["antistokes_nm"] = r9(to_nm(lines.antistokes_wavelength_m));
  }
  out << doc.dump(2) << "\n";
}

void cmd_g2(const std::string& path, std::ostream& out) {
  const json doc = load_json_file(path);
  check_keys(doc, "counts", {"duration_s", "NA", "NB", "NC", "NAB", "NAC", "NBC", "NABC"},
             {"duration_s", "NA", "NAB", "NAC", "NABC"});
  CountRecord rec;
  rec.duration_s = doc.at("duration_s").get<double>();
  rec.na = count_field(doc, "NA");
  rec.nab = count_field(doc, "NAB");
  rec.nac = count_field(doc, "NAC");
  rec.nabc = count_field(doc, "NABC");
  // optional fields default to the smallest values consistent with the rest
  rec.nb = doc.contains("NB") ? count_field(doc, "NB") : rec.nab;
  rec.nc = doc.contains("NC") ? count_field(doc, "NC") : rec.nac;
  rec.nbc = doc.contains("NBC") ? count_field(doc, "NBC") : rec.nabc;
  const auto g2 = g2_conditional(rec);
  out << json{{"g2", measurement_json(g2)},
              {"counts",
               {{"duration_s", r9(rec.duration_s)},
                {"NA", rec.na},
                {"NB", rec.nb},
                {"NC", rec.nc},
                {"NAB", rec.nab},
                {"NAC", rec.nac},
                {"NBC", rec.nbc},
                {"NABC", rec.nabc}}}}
             .dump(2)
      << "\n";
}

void cmd_herald(const std::string& path, std::ostream& out) {
  const json doc = load_json_file(path);
  check_keys(doc, "rates", {"Rs", "Ri", "Rcc", "pump_mW", "duration_s"}, {"Rs", "Ri", "Rcc", "pump_mW"});
  RateRecord r;
  r.signal_rate = doc.at("Rs").get<double>();
  r.idler_rate = doc.at("Ri").get<double>();
  r.coincidence_rate = doc.at("Rcc").get<double>();
  r.pump_power_W = doc.at("pump_mW").get<double>() * 1e-3;
  if (doc.contains("duration_s")) r.duration_s = doc.at("duration_s").get<double>();
  const auto eta = heralding_efficiencies(r);
  out << json{{"eta_s", measurement_json(eta.signal)},
              {"eta_i", measurement_json(eta.idler)},
              {"brightness_pairs_per_s_per_mW", r9(brightness(r))}}
             .dump(2)
      << "\n";
}

void cmd_birefringence(const std::string& path, double length_m, double center_nm, const std::string& method,
                       double length_unc, std::ostream& out) {
  const auto t = read_csv(path, {"wavelength_nm", "intensity"});
  FringeSpectrum spec;
  for (const auto& r : t.rows) {
    spec.wavelength_m.push_back(nm(r[0]));
    spec.intensity.push_back(r[1]);
  }
  spec.fiber_length_m = length_m;
  spec.center_wavelength_m = nm(center_nm);
  FringeMethod m = FringeMethod::sinusoid_fit;
  if (method == "peak-spacing") m = FringeMethod::peak_spacing;
  const auto e = birefringence_from_fringes(spec, m, length_unc);
  out << json{{"delta_n", r9(e.delta_n)},
              {"delta_n_sigma", r9(e.sigma)},
              {"fringe_spacing_nm", r9(to_nm(e.spacing.spacing_m))},
              {"fringe_spacing_sigma_nm", r9(to_nm(e.spacing.stderr_m))},
              {"contrast", r9(e.spacing.contrast)},
              {"method", e.spacing.method == FringeMethod::sinusoid_fit ? "sinusoid-fit" : "peak-spacing"}}
             .dump(2)
      << "\n";
}

void print_error(std::ostream& err, const std::string& msg) { err << json{{"error", msg}}.dump() << "\n"; }

}  // namespace

std::string joint_spectrum_csv(const JointSpectrum& js) {
  const auto& g = js.grid;
  const double cell = g.cell_area();
  std::string s = "lambda_s_nm,lambda_i_nm,intensity\n";
  s.reserve(s.size() + static_cast<std::size_t>(g.n_signal) * g.n_idler * 48);
  for (int j = 0; j < g.n_signal; ++j) {
    const double ls = to_nm(wavelength_from_omega(g.signal_omega(j)));
    for (int k = 0; k < g.n_idler; ++k) {
      s += csv_row({ls, to_nm(wavelength_from_omega(g.idler_omega(k))), std::norm(js.amplitude(j, k)) * cell});
    }
  }
  return s;
}

json emit_gallery(const RunConfig& cfg, const std::string& out_dir) {
  json cells = json::array();
  for (std::size_t r = 0; r < cfg.gallery.length_cm.size(); ++r) {
    for (std::size_t c = 0; c < cfg.gallery.fwhm_nm.size(); ++c) {
      PhaseMatchConfig pm = cfg.phasematch;
      pm.fiber.length_m = cfg.gallery.length_cm[r] * 1e-2;
      PumpSpec pump = cfg.pump;
      pump.fwhm_m = nm(cfg.gallery.fwhm_nm[c]);
      const auto grid = default_grid(pm, pump, cfg.grid.n_signal, cfg.grid.n_idler, cfg.grid.span_sigmas);
      const auto js = build_joint_spectrum(pm, pump, grid, cfg.jsa);
      const auto schmidt = schmidt_decompose(js);
      const std::string file = "gallery_r" + std::to_string(r) + "_c" + std::to_string(c) + ".csv";
      write_text_file(join(out_dir, file), joint_spectrum_csv(js));
      cells.push_back({{"row", r},
                       {"col", c},
                       {"length_cm", r9(cfg.gallery.length_cm[r])},
                       {"fwhm_nm", r9(cfg.gallery.fwhm_nm[c])},
                       {"purity", r9(schmidt.purity)},
                       {"schmidt_number", r9(schmidt.schmidt_number)},
                       {"file", file}});
    }
  }
  json index{{"rows", "fiber length_cm"}, {"columns", "pump fwhm_nm"}, {"cells", cells}};
  write_text_file(join(out_dir, "index.json"), index.dump(2) + "\n");
  return index;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon-pair generation by SFWM in birefringent fibers", "sfwm"};
  app.require_subcommand(1);

  std::string config_path, out_flag, input_path, method = "sinusoid-fit";
  std::uint64_t seed = 0;
  double length_m = 0.0, center_nm = 0.0, length_unc = 0.01;
  std::vector<std::string> fidelity_files;
  RamanPredictArgs rp;

  auto with_config = [&](CLI::App* sub, bool outputs) {
    sub->add_option("--config", config_path, "run configuration (JSON)")->required();
    sub->add_option("--seed", seed, "random seed (no current subcommand samples)");
    if (outputs) sub->add_option("--out", out_flag, "output directory");
  };
  auto* contours = app.add_subcommand("contours", "phase-matching contours versus pump wavelength (CSV)");
  with_config(contours, false);
  auto* jsa = app.add_subcommand("jsa", "joint spectrum grid (CSV + JSON sidecar)");
  with_config(jsa, true);
  auto* marg = app.add_subcommand("marginals", "signal and idler marginal spectra (CSV)");
  with_config(marg, true);
  auto* schmidt = app.add_subcommand("schmidt", "Schmidt decomposition and heralded purity (JSON)");
  with_config(schmidt, false);
  auto* sweep = app.add_subcommand("filter-sweep", "purity and retention versus filter widths (CSV)");
  with_config(sweep, false);
  auto* design = app.add_subcommand("design-pump", "factorable pump bandwidth (JSON)");
  with_config(design, false);
  auto* gallery = app.add_subcommand("gallery", "bandwidth x length array of joint spectra");
  with_config(gallery, true);

  auto* fid = app.add_subcommand("fidelity", "overlap of two joint-spectrum CSV grids");
  fid->add_option("files", fidelity_files, "two CSV files")->required()->expected(2);

  auto* rfit = app.add_subcommand("raman-fit", "log-log power-law fits to a power sweep");
  rfit->add_option("--input", input_path, "CSV pump_power,signal,idler,raman")->required();
  auto* rpred = app.add_subcommand("raman-predict", "predicted counts and SNR");
  rpred->add_option("--raman-coeff", rp.raman_coeff, "a_R [1/(W m)]")->required();
  rpred->add_option("--idler-coeff", rp.idler_coeff, "a_i [1/(W^2 m)]")->required();
  rpred->add_option("--signal-coeff", rp.signal_coeff, "a_s [1/(W^2 m)]")->required();
  rpred->add_option("--power-W", rp.power_W, "pump power")->required();
  rpred->add_option("--length-m", rp.length_m, "fiber length")->required();
  rpred->add_option("--pump-nm", rp.pump_nm, "pump wavelength for Stokes/anti-Stokes lines");
  rpred->add_option("--shift-THz", rp.shift_THz, "Raman phonon frequency");

  auto* g2 = app.add_subcommand("g2", "conditional g2(0) from three-detector counts");
  g2->add_option("--input", input_path, "JSON {duration_s, NA, NB, NC, NAB, NAC, NBC, NABC}")->required();
  auto* herald = app.add_subcommand("herald", "heralding efficiencies and brightness");
  herald->add_option("--input", input_path, "JSON {Rs, Ri, Rcc, pump_mW}")->required();

  auto* biref = app.add_subcommand("birefringence", "birefringence from a fringe spectrum");
  biref->add_option("--input", input_path, "CSV wavelength_nm,intensity")->required();
  biref->add_option("--length-m", length_m, "fiber length")->required();
  biref->add_option("--center-nm", center_nm, "laser center wavelength")->required();
  biref->add_option("--method", method, "sinusoid-fit | peak-spacing")
      ->check(CLI::IsMember({"sinusoid-fit", "peak-spacing"}));
  biref->add_option("--length-uncertainty", length_unc, "fractional length uncertainty");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    out << app.help();
    print_error(err, e.what());
    return kExitUsage;
  }

  try {
    auto cfg = [&] { return load_run_config(config_path); };
    if (contours->parsed()) {
      cmd_contours(cfg(), out);
    } else if (jsa->parsed()) {
      const auto c = cfg();
      cmd_jsa(c, output_dir(out_flag, c), out);
    } else if (marg->parsed()) {
      const auto c = cfg();
      cmd_marginals(c, output_dir(out_flag, c), out);
    } else if (schmidt->parsed()) {
      cmd_schmidt(cfg(), out);
    } else if (sweep->parsed()) {
      cmd_filter_sweep(cfg(), out);
    } else if (design->parsed()) {
      cmd_design_pump(cfg(), out);
    } else if (gallery->parsed()) {
      const auto c = cfg();
      out << emit_gallery(c, output_dir(out_flag, c)).dump(2) << "\n";
    } else if (fid->parsed()) {
      cmd_fidelity(fidelity_files[0], fidelity_files[1], out);
    } else if (rfit->parsed()) {
      cmd_raman_fit(input_path, out);
    } else if (rpred->parsed()) {
      cmd_raman_predict(rp, out);
    } else if (g2->parsed()) {
      cmd_g2(input_path, out);
    } else if (herald->parsed()) {
      cmd_herald(input_path, out);
    } else if (biref->parsed()) {
      cmd_birefringence(input_path, length_m, center_nm, method, length_unc, out);
    }
  } catch (const ConfigError& e) {
    print_error(err, e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    print_error(err, e.what());
    return kExitDomain;
  } catch (const json::exception& e) {
    print_error(err, e.what());
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace sfwm
