#include "layermie/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "layermie/fields.hpp"
#include "layermie/mie.hpp"
#include "layermie/quadrature.hpp"

namespace layermie::cli {

namespace {

using nlohmann::json;

const json& require(const json& obj, const std::string& key, const std::string& path) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(path + " is required");
  return *it;
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path + " must be finite");
  return v;
}

double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (v <= 0.0) throw ConfigError(path + " must be positive");
  return v;
}

cplx complex_value(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw ConfigError(path + " must be an [re, im] pair");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

Eigen::Vector3d vector3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw ConfigError(path + " must be a list of 3 numbers");
  return {number(j[0], path + "[0]"), number(j[1], path + "[1]"), number(j[2], path + "[2]")};
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + " must be an integer");
  return j.get<std::int64_t>();
}

void check_keys(const json& obj, std::initializer_list<const char*> allowed, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(path + ": unknown key '" + key + "'");
    }
  }
}

Material material(const json& j, const std::string& path) {
  return {complex_value(require(j, "mu", path + ".mu"), path + ".mu"),
          complex_value(require(j, "eps", path + ".eps"), path + ".eps")};
}

void read_tolerances(const json& j, verify::Tolerances& tol) {
  check_keys(j,
             {"energy", "weak_form", "farfield_cross", "radius_independence", "farfield_relations", "lossless_flux",
              "calderon", "min_slope", "interior_ratio", "outside_ratio", "min_delta_ratio"},
             "tolerances");
  auto set = [&](const char* key, double& field) {
    if (j.contains(key)) field = number(j[key], std::string("tolerances.") + key);
  };
  set("energy", tol.energy);
  set("weak_form", tol.weak_form);
  set("farfield_cross", tol.farfield_cross);
  set("radius_independence", tol.radius_independence);
  set("farfield_relations", tol.farfield_relations);
  set("lossless_flux", tol.lossless_flux);
  set("calderon", tol.calderon);
  set("min_slope", tol.min_slope);
  set("interior_ratio", tol.interior_ratio);
  set("outside_ratio", tol.outside_ratio);
  set("min_delta_ratio", tol.min_delta_ratio);
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  os << content;
  if (!os) throw ConfigError("--out: cannot write " + path.string());
}

std::string format_check(const verify::CheckResult& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-36s %14.6e  limit %10.3e  %s", c.name.c_str(), c.value, c.limit,
                c.pass ? "PASS" : "FAIL");
  return buf;
}

bool report_checks(const std::vector<verify::CheckResult>& checks, std::ostream& out) {
  bool all = true;
  for (const auto& c : checks) {
    out << format_check(c) << '\n';
    all = all && c.pass;
  }
  return all;
}

int truncation(const RunConfig& config, const LayeredScene& scene) {
  return config.nmax > 0 ? config.nmax : default_truncation(scene);
}

}  // namespace

LayeredScene RunConfig::scene() const { return LayeredScene(core_radius, core, shells, k, R); }

IncidentWave RunConfig::incidence() const { return IncidentWave(d, p, k); }

void validate_tolerances(const verify::Tolerances& tol) {
  const verify::Tolerances defaults;
  auto residual = [](double v, const char* name) {
    if (!(v > 0.0) || v > 1e-2) {
      throw ConfigError(std::string("tolerances.") + name + " must lie in (0, 1e-2]");
    }
  };
  residual(tol.energy, "energy");
  residual(tol.weak_form, "weak_form");
  residual(tol.farfield_cross, "farfield_cross");
  residual(tol.radius_independence, "radius_independence");
  residual(tol.farfield_relations, "farfield_relations");
  residual(tol.lossless_flux, "lossless_flux");
  residual(tol.calderon, "calderon");
  if (!(tol.min_slope >= defaults.min_slope)) throw ConfigError("tolerances.min_slope may not drop below 0.45");
  if (!(tol.interior_ratio >= 1.0 && tol.interior_ratio <= defaults.interior_ratio)) {
    throw ConfigError("tolerances.interior_ratio must lie in [1, 10]");
  }
  if (!(tol.outside_ratio >= 1.0 && tol.outside_ratio <= defaults.outside_ratio)) {
    throw ConfigError("tolerances.outside_ratio must lie in [1, 2]");
  }
  if (!(tol.min_delta_ratio >= defaults.min_delta_ratio)) {
    throw ConfigError("tolerances.min_delta_ratio may not drop below 3");
  }
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  check_keys(j,
             {"core_radius", "core_kind", "core_material", "shells", "k", "R", "incidence", "delta_ladder", "eta0",
              "tau0", "seed", "nmax", "quad_order", "tolerances"},
             "config");
  RunConfig c;
  c.core_radius = positive(require(j, "core_radius", "core_radius"), "core_radius");

  const json& kind = require(j, "core_kind", "core_kind");
  const std::string kind_name = kind.is_string() ? kind.get<std::string>() : "";
  if (kind_name == "pec") {
    c.core = Pec{};
  } else if (kind_name == "pmc") {
    c.core = Pmc{};
  } else if (kind_name == "material") {
    const json& m = require(j, "core_material", "core_material");
    check_keys(m, {"mu", "eps"}, "core_material");
    c.core = material(m, "core_material");
  } else {
    throw ConfigError("core_kind must be \"pec\", \"pmc\" or \"material\"");
  }
  if (kind_name != "material" && j.contains("core_material")) {
    throw ConfigError("core_material is only allowed with core_kind \"material\"");
  }

  if (j.contains("shells")) {
    const json& shells = j["shells"];
    if (!shells.is_array()) throw ConfigError("shells must be a list");
    for (std::size_t i = 0; i < shells.size(); ++i) {
      const std::string path = "shells[" + std::to_string(i) + "]";
      check_keys(shells[i], {"radius", "mu", "eps"}, path);
      const double radius = positive(require(shells[i], "radius", path + ".radius"), path + ".radius");
      c.shells.push_back(Shell{radius, material(shells[i], path)});
    }
  }
  c.k = positive(require(j, "k", "k"), "k");
  c.R = positive(require(j, "R", "R"), "R");

  const json& inc = require(j, "incidence", "incidence");
  check_keys(inc, {"d", "p"}, "incidence");
  c.d = vector3(require(inc, "d", "incidence.d"), "incidence.d");
  c.p = vector3(require(inc, "p", "incidence.p"), "incidence.p");

  if (j.contains("delta_ladder")) {
    const json& ladder = j["delta_ladder"];
    if (!ladder.is_array() || ladder.empty()) throw ConfigError("delta_ladder must be a non-empty list");
    c.delta_ladder.clear();
    for (std::size_t i = 0; i < ladder.size(); ++i) {
      const std::string path = "delta_ladder[" + std::to_string(i) + "]";
      const double v = positive(ladder[i], path);
      if (v < kMinDelta) throw ConfigError(path + " is below the minimum 1e-8");
      if (!c.delta_ladder.empty() && !(v < c.delta_ladder.back())) {
        throw ConfigError("delta_ladder must be strictly decreasing");
      }
      c.delta_ladder.push_back(v);
    }
  }
  if (j.contains("eta0")) c.eta0 = positive(j["eta0"], "eta0");
  if (j.contains("tau0")) c.tau0 = positive(j["tau0"], "tau0");
  if (j.contains("seed")) {
    const std::int64_t s = integer(j["seed"], "seed");
    if (s < 0) throw ConfigError("seed must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("nmax")) {
    const std::int64_t n = integer(j["nmax"], "nmax");
    if (n < 1 || n > 512) throw ConfigError("nmax must lie in [1, 512]");
    c.nmax = static_cast<int>(n);
  }
  if (j.contains("quad_order")) {
    const std::int64_t q = integer(j["quad_order"], "quad_order");
    if (q < 1 || q > 2048) throw ConfigError("quad_order must lie in [1, 2048]");
    c.quad_order = static_cast<int>(q);
  }
  if (j.contains("tolerances")) read_tolerances(j["tolerances"], c.tolerances);
  validate_tolerances(c.tolerances);

  try {
    (void)c.scene();
    (void)c.incidence();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("--config: cannot read " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

int cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out) {
  const LayeredScene scene = config.scene();
  const ModalSolution sol = solve_modes(scene, config.incidence(), truncation(config, scene));
  const double energy = verify::energy_identity_residual(sol).residual;

  json coeffs;
  coeffs["n_max"] = sol.n_max();
  coeffs["k"] = config.k;
  coeffs["R"] = config.R;
  coeffs["max_condition"] = sol.max_condition();
  coeffs["energy_residual"] = energy;
  json modes = json::array();
  for (int n = 1; n <= sol.n_max(); ++n) {
    const cplx te = sol.s(n, Parity::te);
    const cplx tm = sol.s(n, Parity::tm);
    modes.push_back({{"n", n}, {"s_te", {te.real(), te.imag()}}, {"s_tm", {tm.real(), tm.imag()}}});
  }
  coeffs["modes"] = modes;

  const int order = config.quad_order > 0 ? config.quad_order : default_sphere_order(sol.n_max());
  std::ostringstream csv;
  write_csv(csv, farfield_series(sol, SphereQuadrature(order)));

  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "coefficients.json", coeffs.dump(2) + "\n");
  write_file(out_dir / "farfield.csv", csv.str());

  char buf[96];
  std::snprintf(buf, sizeof buf, "n_max %d\nenergy_residual %.6e\n", sol.n_max(), energy);
  out << buf;
  return kSuccess;
}

int cmd_ladder(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out) {
  verify::LadderOptions options;
  options.n_max = config.nmax;
  options.quad_order = config.quad_order;
  options.seed = config.seed;
  const auto report = verify::delta_ladder_study(config.scene(), config.incidence(), config.delta_ladder, config.eta0,
                                                 config.tau0, options);

  std::ostringstream csv;
  verify::write_csv(csv, report);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir / "ladder.json", verify::to_json(report) + "\n");
  write_file(out_dir / "ladder.csv", csv.str());

  char buf[96];
  std::snprintf(buf, sizeof buf, "kind %s\nn_max %d\n", verify::to_string(report.kind).c_str(), report.n_max);
  out << buf;
  return report_checks(verify::ladder_checks(report, config.tolerances), out) ? kSuccess : kNumericalFailure;
}

int cmd_check(const RunConfig& config, std::ostream& out) {
  const LayeredScene scene = config.scene();
  const ModalSolution sol = solve_modes(scene, config.incidence(), truncation(config, scene));
  verify::SceneCheckOptions options;
  options.quad_order = config.quad_order;
  options.seed = config.seed;
  out << "n_max " << sol.n_max() << '\n';
  return report_checks(verify::scene_checks(sol, config.tolerances, options), out) ? kSuccess : kNumericalFailure;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Layered-sphere Maxwell scattering and effective-medium verification"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::int64_t> seed, nmax, quad_order;
  auto add_common = [&](CLI::App* sub, bool with_out) {
    sub->add_option("--config", config_path, "Scene config (JSON)")->required();
    if (with_out) sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Seed for the weak-form test fields");
    sub->add_option("--nmax", nmax, "Multipole truncation override");
    sub->add_option("--quad-order", quad_order, "Sphere quadrature order override");
  };
  CLI::App* solve = app.add_subcommand("solve", "Solve one scene; write coefficients.json and farfield.csv");
  CLI::App* ladder = app.add_subcommand("ladder", "delta-ladder study; write ladder.json and ladder.csv");
  CLI::App* check = app.add_subcommand("check", "Energy, weak-form, Calderon and far-field checks");
  add_common(solve, true);
  add_common(ladder, true);
  add_common(check, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationError;
  }

  try {
    RunConfig config = load_config(config_path);
    if (seed) {
      if (*seed < 0) throw ConfigError("--seed must be non-negative");
      config.seed = static_cast<std::uint64_t>(*seed);
    }
    if (nmax) {
      if (*nmax < 1 || *nmax > 512) throw ConfigError("--nmax must lie in [1, 512]");
      config.nmax = static_cast<int>(*nmax);
    }
    if (quad_order) {
      if (*quad_order < 1 || *quad_order > 2048) throw ConfigError("--quad-order must lie in [1, 2048]");
      config.quad_order = static_cast<int>(*quad_order);
    }
    if (solve->parsed()) return cmd_solve(config, out_dir, out);
    if (ladder->parsed()) return cmd_ladder(config, out_dir, out);
    return cmd_check(config, out);
  } catch (const NumericalResonance& e) {
    err << "numerical resonance: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace layermie::cli
