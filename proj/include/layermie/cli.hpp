#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "layermie/errors.hpp"
#include "layermie/scene.hpp"
#include "layermie/verify.hpp"

namespace layermie::cli {

/// Validation failure in a config file or flag; the message names the offending field.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Parsed scene description plus run parameters.
///
/// JSON keys: core_radius, core_kind ("pec" | "pmc" | "material"), core_material {mu, eps}
/// (only with "material"), shells [{radius, mu, eps}], k, R, incidence {d, p}, delta_ladder,
/// eta0, tau0, and optionally seed, nmax, quad_order, tolerances. Complex values are [re, im].
struct RunConfig {
  double core_radius = 0.0;
  CoreKind core = Pec{};
  std::vector<Shell> shells;
  double k = 0.0;
  double R = 0.0;
  Eigen::Vector3d d = Eigen::Vector3d::UnitZ();
  Eigen::Vector3d p = Eigen::Vector3d::UnitX();
  std::vector<double> delta_ladder{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  double eta0 = 1.0;
  double tau0 = 1.0;
  std::uint64_t seed = 0;
  int nmax = 0;        // 0: default_truncation
  int quad_order = 0;  // 0: default_sphere_order(n_max)
  verify::Tolerances tolerances;

  LayeredScene scene() const;
  IncidentWave incidence() const;
};

/// Parses and validates a JSON config; throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Residual tolerances may be set in (0, 1e-2]; rate and ratio limits may only be tightened.
void validate_tolerances(const verify::Tolerances& tol);

enum ExitCode : int { kSuccess = 0, kValidationError = 1, kNumericalFailure = 2 };

int cmd_solve(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_ladder(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_check(const RunConfig& config, std::ostream& out);

/// Entry point: `layermie solve|ladder|check --config PATH [--out DIR] [--seed N] [--nmax N]
/// [--quad-order N]`. Errors go to `err`; returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace layermie::cli
