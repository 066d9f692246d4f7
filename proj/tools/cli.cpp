#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ptw/analysis.hpp"
#include "ptw/coherent.hpp"
#include "ptw/error.hpp"
#include "ptw/moments.hpp"
#include "ptw/revival.hpp"
#include "ptw/sensitivity.hpp"
#include "ptw/spectrum.hpp"
#include "ptw/wigner.hpp"
#include "ptw/wigner_io.hpp"

namespace ptw::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Raised while resolving the configuration; maps to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  double rho = 50.0;
  double kappa = 50.0;
  double alpha = 2.0;
  std::optional<double> beta;
  double theta = std::numbers::pi / 4;
  std::string frac = "1/8";
  std::string grid = "512x512";
  std::string out = ".";
  bool direct = false;
  int levels = 50;
  int eigen_samples = 0;
  std::vector<double> betas;
  double lambda_max = 0.5;
  int samples = 501;
  double asym_kappa = 46.0;
  double asym_beta = 0.6;
};

struct RunConfig {
  std::string command;
  PTParams params;
  double beta;
  double theta;
  FractionalTime frac;
  int nx;
  int np;
  fs::path out;
  Flags flags;

  json to_json() const {
    json j;
    j["command"] = command;
    j["rho"] = params.rho();
    j["kappa"] = params.kappa();
    j["alpha"] = params.alpha();
    j["beta"] = beta;
    j["theta"] = theta;
    j["frac"] = std::to_string(frac.r()) + "/" + std::to_string(frac.s());
    j["grid"] = std::to_string(nx) + "x" + std::to_string(np);
    j["out"] = out.generic_string();
    if (command == "wigner") j["direct"] = flags.direct;
    if (command == "spectrum") {
      j["levels"] = flags.levels;
      j["eigen_samples"] = flags.eigen_samples;
    }
    if (command == "scaling") j["betas"] = flags.betas;
    if (command == "sensitivity") {
      j["lambda_max"] = flags.lambda_max;
      j["samples"] = flags.samples;
      j["asym_kappa"] = flags.asym_kappa;
      j["asym_beta"] = flags.asym_beta;
    }
    return j;
  }
};

std::vector<double> default_betas() {
  std::vector<double> b;
  for (int i = 0; i <= 10; ++i) b.push_back(0.30 + 0.05 * i);
  return b;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("grid must look like NXxNP, got '" + text + "'");
  try {
    std::size_t a = 0, b = 0;
    const std::string l = text.substr(0, x), r = text.substr(x + 1);
    const int nx = std::stoi(l, &a);
    const int np = std::stoi(r, &b);
    if (a != l.size() || b != r.size()) throw ConfigError("");
    if (nx < 16 || np < 16) throw ConfigError("grid needs at least 16 samples per axis");
    return {nx, np};
  } catch (const ConfigError& e) {
    if (std::string(e.what()).empty()) throw ConfigError("grid must look like NXxNP, got '" + text + "'");
    throw;
  } catch (const std::exception&) {
    throw ConfigError("grid must look like NXxNP, got '" + text + "'");
  }
}

RunConfig resolve(const std::string& command, Flags flags) {
  try {
    PTParams params(flags.rho, flags.kappa, flags.alpha);
    const double beta = flags.beta.value_or(command == "sensitivity" ? 0.4 : 0.6);
    if (!(std::abs(beta) < 1.0)) throw ConfigError("beta must satisfy |beta| < 1");
    if (!std::isfinite(flags.theta)) throw ConfigError("theta must be finite");
    const FractionalTime frac = parse_fractional_time(flags.frac);
    const auto [nx, np] = parse_grid(flags.grid);
    if (flags.levels < 0 || flags.levels > kDefaultHardCap) {
      throw ConfigError("levels must lie in [0, " + std::to_string(kDefaultHardCap) + "]");
    }
    if (flags.eigen_samples < 0) throw ConfigError("eigen-samples must be non-negative");
    if (flags.betas.empty()) flags.betas = default_betas();
    for (double b : flags.betas) {
      if (!(b > 0.0 && b < 1.0)) throw ConfigError("every sweep beta must lie in (0, 1)");
    }
    if (command == "scaling" && flags.betas.size() < 3) {
      throw ConfigError("scaling needs at least 3 beta values");
    }
    if (!(flags.lambda_max > 0.0)) throw ConfigError("lambda-max must be positive");
    if (flags.samples < 50) throw ConfigError("samples must be at least 50");
    if (command == "sensitivity") {
      PTParams asym(flags.rho, flags.asym_kappa, flags.alpha);
      (void)asym;
      if (!(flags.asym_beta > 0.0 && flags.asym_beta < 1.0)) throw ConfigError("asym-beta must lie in (0, 1)");
    }
    return RunConfig{command, params, beta, flags.theta, frac, nx, np, fs::path(flags.out), flags};
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

// Writes files into the output directory, each with a `.meta.json` sidecar.
class Emitter {
 public:
  Emitter(const RunConfig& cfg, std::ostream& log) : cfg_(cfg), log_(log) {
    std::error_code ec;
    fs::create_directories(cfg.out, ec);
    if (ec) throw Error("cannot create output directory " + cfg.out.string() + ": " + ec.message());
  }

  std::ofstream open(const std::string& name, bool binary = false) {
    const fs::path path = cfg_.out / name;
    std::ofstream f(path, binary ? std::ios::binary : std::ios::out);
    if (!f) throw Error("cannot open " + path.string() + " for writing");
    if (!binary) f << std::setprecision(17);
    sidecar(name);
    log_ << "wrote " << path.generic_string() << '\n';
    return f;
  }

  void write_json(const std::string& name, json body) {
    json doc;
    doc["config"] = cfg_.to_json();
    for (auto& [k, v] : body.items()) doc[k] = v;
    auto f = open(name);
    f << doc.dump(2) << '\n';
  }

 private:
  void sidecar(const std::string& name) {
    json meta;
    meta["file"] = name;
    meta["tool"] = "ptwigner";
    meta["config"] = cfg_.to_json();
    std::ofstream f(cfg_.out / (name + ".meta.json"));
    if (!f) throw Error("cannot write sidecar for " + name);
    f << meta.dump(2) << '\n';
  }

  const RunConfig& cfg_;
  std::ostream& log_;
};

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json cplx_json(cplx c) { return json::array({c.real(), c.imag()}); }

void cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
  Emitter em(cfg, log);
  {
    auto f = em.open("spectrum.csv");
    f << "n,E_n\n";
    for (int n = 0; n <= cfg.flags.levels; ++n) f << n << ',' << energy(cfg.params, n) << '\n';
  }
  if (cfg.flags.eigen_samples > 0) {
    const int count = cfg.flags.eigen_samples;
    const double width = cfg.params.well_width();
    std::vector<double> xs(count);
    for (int i = 0; i < count; ++i) xs[i] = count == 1 ? 0.5 * width : width * i / (count - 1);
    const EigenBasis basis(cfg.params, cfg.flags.levels);
    const auto table = basis.table(xs);
    auto f = em.open("eigenfunctions.csv");
    f << "x";
    for (int n = 0; n <= cfg.flags.levels; ++n) f << ",psi_" << n;
    f << '\n';
    for (int i = 0; i < count; ++i) {
      f << xs[i];
      for (int n = 0; n <= cfg.flags.levels; ++n) f << ',' << table(n, i);
      f << '\n';
    }
  }
}

void cmd_wigner(const RunConfig& cfg, std::ostream& log) {
  const auto state = evolve(coherent_coefficients(cfg.params, cfg.beta), cfg.frac);
  const auto grid = PhaseSpaceGrid::for_state(state, cfg.nx, cfg.np);
  const auto field = cfg.flags.direct ? wigner_direct(state, grid) : wigner_fast(state, grid);
  Emitter em(cfg, log);
  {
    auto f = em.open("wigner.bin", true);
    write_wigner_binary(field, f);
  }
  {
    auto f = em.open("wigner.csv");
    write_wigner_csv(field, f);
  }
  const auto m = moments(field);
  json body;
  body["path"] = cfg.flags.direct ? "direct" : "fast";
  body["n_max"] = state.n_max();
  body["integral"] = field.integral();
  body["min"] = field.min_value();
  body["imag_residue"] = field.imag_residue();
  body["moments"] = {{"mean_x", m.mean_x}, {"mean_p", m.mean_p}, {"var_x", m.var_x}, {"var_p", m.var_p}};
  em.write_json("wigner.json", body);
}

void cmd_scaling(const RunConfig& cfg, std::ostream& log) {
  const auto fit = scaling_sweep(cfg.params, cfg.flags.betas, cfg.frac);
  Emitter em(cfg, log);
  {
    auto f = em.open("scaling.csv");
    f << "beta,A,a,product\n";
    for (const auto& p : fit.points) f << p.beta << ',' << p.action << ',' << p.area << ',' << p.action * p.area << '\n';
  }
  json body;
  body["points"] = fit.points.size();
  body["slope"] = fit.slope;
  body["intercept"] = fit.intercept;
  body["r_squared"] = fit.r_squared;
  em.write_json("fit.json", body);
}

void cmd_revival(const RunConfig& cfg, std::ostream& log) {
  const auto state0 = coherent_coefficients(cfg.params, cfg.beta);
  json body;
  const auto& p = cfg.params;
  const bool even_sym = p.is_symmetric() && std::nearbyint(p.rho()) == p.rho() &&
                        static_cast<long long>(p.rho()) % 2 == 0;
  body["cat_residual"] = even_sym ? json(cat_identity_residual(state0)) : json(nullptr);
  if (p.eta_is_integer() && p.eta_integer() % 2 == 0) {
    const auto eo = even_odd_split(state0);
    body["even_odd"] = {{"branch", eo.branch == EvenOddBranch::EtaMultipleOf4 ? "chi_e - i chi_o" : "-i chi_e + chi_o"},
                        {"residual", eo.residual}};
  } else {
    body["even_odd"] = nullptr;
  }
  if (p.eta_is_integer()) {
    body["compass_residual"] = compass_identity_residual(state0);
    json clones = json::array();
    for (int s : {4, 8, 12}) {
      const FractionalTime frac(1, s);
      const auto d = clone_decomposition(state0, frac);
      json amps = json::array();
      for (const auto& a : d.amplitudes) amps.push_back(cplx_json(a));
      json weights = json::array();
      for (const auto& a : d.amplitudes) weights.push_back(std::norm(a));
      clones.push_back({{"frac", "1/" + std::to_string(s)},
                        {"clones", frac.clone_count()},
                        {"amplitudes", amps},
                        {"weights", weights},
                        {"fit_residual", d.residual},
                        {"density_lobes", density_lobe_count(evolve(state0, frac))}});
    }
    body["clones"] = clones;
  } else {
    body["compass_residual"] = nullptr;
    body["clones"] = nullptr;
  }
  Emitter em(cfg, log);
  em.write_json("revival.json", body);
}

void cmd_sensitivity(const RunConfig& cfg, std::ostream& log, std::ostream& err) {
  const double t = cfg.frac.time(cfg.params);
  const auto curve = overlap_sweep(cfg.params, cfg.beta, cfg.theta, cfg.flags.lambda_max, cfg.flags.samples, t);
  const auto compass = evolve(coherent_coefficients(cfg.params, cfg.beta), cfg.frac);
  const auto tile = measure_state_tile(compass);
  if (!curve.period) err << "warning: fewer than two overlap minima in range; period is null\n";

  Emitter em(cfg, log);
  double worst_analytic = 0.0;
  {
    auto f = em.open("overlap.csv");
    f << "lambda,overlap_oracle,overlap_analytic\n";
    for (std::size_t i = 0; i < curve.lambda_samples.size(); ++i) {
      const auto d = DisplacementParam::from_real_part(curve.lambda_samples[i], cfg.theta);
      const double a = std::abs(overlap_analytic(cfg.params, cfg.beta, d, t));
      worst_analytic = std::max(worst_analytic, std::abs(a - curve.overlaps[i]));
      f << curve.lambda_samples[i] << ',' << curve.overlaps[i] << ',' << a << '\n';
    }
  }

  // Printed closed form against the oracle on Re λ ∈ [0, 0.3].
  json discrepancy = json::array();
  double worst_printed = 0.0;
  if (cfg.params.is_symmetric()) {
    const auto state = coherent_coefficients(cfg.params, cfg.beta);
    for (int i = 0; i <= 30; ++i) {
      const double re = 0.01 * i;
      const auto d = DisplacementParam::from_real_part(re, cfg.theta);
      const double o = std::abs(overlap_oracle(state, d, t));
      const double pr = std::abs(overlap_printed(cfg.params, cfg.beta, d, t));
      worst_printed = std::max(worst_printed, std::abs(pr - o));
      discrepancy.push_back({{"lambda", re}, {"oracle", o}, {"printed", pr}});
    }
  }

  const auto rep = asymmetry_experiment(cfg.params, PTParams(cfg.params.rho(), cfg.flags.asym_kappa, cfg.params.alpha()),
                                        cfg.flags.asym_beta, cfg.flags.asym_beta);
  json body;
  body["period"] = optional_number(curve.period);
  body["tile_dx_span"] = tile.dx_span;
  body["ratio"] = curve.period ? json(std::abs(*curve.period - tile.dx_span) / *curve.period) : json(nullptr);
  body["minima"] = curve.minima;
  body["maxima"] = curve.maxima;
  body["maxima_values"] = curve.maxima_values;
  body["envelope_decays"] = curve.envelope_decays;
  body["basis_size"] = curve.basis_size;
  body["max_leakage"] = curve.max_leakage;
  body["analytic_check"] = {{"route", "disentangled normal form"},
                            {"max_abs_difference", worst_analytic},
                            {"within_tolerance", worst_analytic < 5e-3}};
  body["printed_formula_check"] = {{"max_abs_difference", cfg.params.is_symmetric() ? json(worst_printed) : json(nullptr)},
                                   {"within_tolerance", cfg.params.is_symmetric() && worst_printed < 5e-3},
                                   {"samples", discrepancy}};
  body["asymmetry"] = {{"sym", {{"rho", rep.sym.rho()}, {"kappa", rep.sym.kappa()}, {"beta", rep.beta_sym}}},
                       {"asym", {{"rho", rep.asym.rho()}, {"kappa", rep.asym.kappa()}, {"beta", rep.beta_asym}}},
                       {"overlap_wigner", rep.overlap_wigner},
                       {"overlap_magnitude", rep.overlap_magnitude},
                       {"overlap_magnitude_squared", rep.overlap_magnitude * rep.overlap_magnitude},
                       {"shift", rep.shift},
                       {"extremum_shift", optional_number(rep.extremum_shift)},
                       {"tile_dx_span", rep.tile_dx_span},
                       {"section_x", rep.section_x},
                       {"section_sym", rep.section_sym},
                       {"section_asym", rep.section_asym}};
  em.write_json("sensitivity.json", body);
}

void add_common(CLI::App& app, Flags& f) {
  app.add_option("--rho", f.rho, "PT parameter rho (> 1)");
  app.add_option("--kappa", f.kappa, "PT parameter kappa (> 1)");
  app.add_option("--alpha", f.alpha, "PT parameter alpha (> 0)");
  app.add_option("--beta", f.beta, "coherent-state parameter (default 0.6; 0.4 for sensitivity)");
  app.add_option("--theta", f.theta, "displacement phase in radians");
  app.add_option("--frac", f.frac, "fractional revival time r/s");
  app.add_option("--grid", f.grid, "phase-space grid NXxNP");
  app.add_option("--out", f.out, "output directory");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pöschl-Teller coherent-state phase-space toolkit", "ptwigner"};
  app.set_config("--config", "", "flat key=value configuration file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  add_common(app, flags);
  // All options live on the root so a flat config file can set any of them.
  app.add_option("--levels", flags.levels, "highest level n")->group("spectrum");
  app.add_option("--eigen-samples", flags.eigen_samples, "eigenfunction samples across the well (0 = none)")
      ->group("spectrum");
  app.add_flag("--direct", flags.direct, "use the direct quadrature path")->group("wigner");
  app.add_option("--betas", flags.betas, "comma-separated beta list")->delimiter(',')->group("scaling");
  app.add_option("--lambda-max", flags.lambda_max, "largest Re(lambda)")->group("sensitivity");
  app.add_option("--samples", flags.samples, "number of Re(lambda) samples")->group("sensitivity");
  app.add_option("--asym-kappa", flags.asym_kappa, "kappa of the perturbed potential")->group("sensitivity");
  app.add_option("--asym-beta", flags.asym_beta, "beta of both states in the asymmetry experiment")
      ->group("sensitivity");
  app.add_subcommand("spectrum", "energies and optional eigenfunction samples");
  app.add_subcommand("wigner", "Wigner field at frac*T_rev");
  app.add_subcommand("scaling", "tile area against classical action");
  app.add_subcommand("revival-check", "fractional-revival identity residuals");
  app.add_subcommand("sensitivity", "displacement and asymmetry sensitivity");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  std::optional<RunConfig> resolved;
  try {
    resolved.emplace(resolve(command, flags));
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  const RunConfig& cfg = *resolved;

  try {
    if (command == "spectrum") {
      cmd_spectrum(cfg, out);
    } else if (command == "wigner") {
      cmd_wigner(cfg, out);
    } else if (command == "scaling") {
      cmd_scaling(cfg, out);
    } else if (command == "revival-check") {
      cmd_revival(cfg, out);
    } else {
      cmd_sensitivity(cfg, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace ptw::cli
