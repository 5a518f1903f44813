#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "layermie/mie.hpp"
#include "layermie/quadrature.hpp"
#include "layermie/scene.hpp"

namespace layermie::verify {

/// Power balance over B_R for the total field. The flux comes from the spectral Calderon
/// pairing on |x| = R; the absorption from radial quadrature of the region-wise L^2 norms.
struct EnergyIdentity {
  double flux;        // Re int_{|x|=R} (x^ x conj E) . H ds
  double absorption;  // -k sum_j [Im eps_j ||E||^2 + Im mu_j ||H||^2]
  double residual;    // |flux - absorption| / max(|flux|, |absorption|, pi R^2)
};

EnergyIdentity energy_identity_residual(const ModalSolution& sol);

/// Weak-form residual of the truncated problem on B_R (minus an obstacle core),
///   a(U, Phi) = sum_j int mu_j^{-1} curl U . conj(curl Phi) - k^2 eps_j U . conj(Phi)
///               + ik int_{|x|=R} G_e(x^ x U) . conj(Phi),
///   F(Phi) = ik int_{|x|=R} [G_e(x^ x E^i) - x^ x H^i] . conj(Phi)  (+ ik int_{dD} (nu x H) . conj(Phi)),
/// tested against seeded combinations of regular modes n <= 4. Returns the largest
/// |a(U, Phi) - F(Phi)| / (||U|| ||Phi||), both norms in H(curl) of the same domain.
double weak_form_residual(const ModalSolution& sol, int n_tests, std::uint64_t seed);

struct RateFit {
  double slope;
  double intercept;
};

/// Least-squares line through (log x, log y).
RateFit fit_rate(const std::vector<double>& xs, const std::vector<double>& ys);

/// (1 + k) sqrt(|B_R|): the L^2 plus curl norm proxy of a unit plane wave on B_R.
double incident_scale(double k, double R);

enum class LadderKind { pec, pmc, none };

std::string to_string(LadderKind kind);

struct ConvergenceReport {
  LadderKind kind = LadderKind::none;
  double k = 0.0;
  double R = 0.0;
  int n_max = 0;
  int quad_order = 0;
  double incident_scale = 0.0;
  std::vector<double> deltas;
  std::vector<double> far_errs;
  std::vector<double> core_hcurl;
  std::vector<double> outside_hcurl;  // total field in the shells, scattered field in the annulus
  std::vector<double> energy_residuals;
  std::vector<std::optional<double>> weak_form_residuals;
  double reference_energy_residual = 0.0;
  /// Unset when some far-field error vanishes.
  std::optional<double> fitted_slope;
  /// log of the smallest C with far_errs[i] <= C sqrt(deltas[i]) incident_scale on the ladder.
  std::optional<double> fitted_logC;
};

struct LadderOptions {
  int n_max = 0;       // 0: default_truncation of the obstacle scene
  int quad_order = 0;  // 0: default_sphere_order(n_max)
  int weak_form_tests = 10;
  std::uint64_t seed = 0;
  bool weak_form = true;  // evaluated at the coarsest and finest delta
};

/// Far-field comparison of the realized scenes realize(delta) against a reference scene.
ConvergenceReport compare_study(const LayeredScene& reference, const IncidentWave& incidence,
                                const std::vector<double>& deltas, const std::function<LayeredScene(double)>& realize,
                                LadderKind kind, const LadderOptions& options = {});

/// delta-ladder study of an obstacle scene against its effective realizations.
ConvergenceReport delta_ladder_study(const LayeredScene& scene_obstacle, const IncidentWave& incidence,
                                     const std::vector<double>& deltas, double eta0, double tau0,
                                     const LadderOptions& options = {});

struct InteriorCheck {
  bool pass;
  double core_ratio;     // max/min of sqrt(delta) core_hcurl (PMC) or core_hcurl / sqrt(delta) (PEC)
  double outside_ratio;  // max/min of outside_hcurl
  bool core_decreasing;  // core_hcurl strictly decreasing along the ladder
};

InteriorCheck interior_estimate_check(const ConvergenceReport& report, ObstacleKind kind);

struct Tolerances {
  double energy = 1e-7;
  double weak_form = 1e-5;
  double farfield_cross = 1e-6;
  double radius_independence = 1e-7;
  double farfield_relations = 1e-9;
  double lossless_flux = 1e-9;
  double calderon = 1e-9;
  double min_slope = 0.45;
  double interior_ratio = 10.0;
  double outside_ratio = 2.0;
  double min_delta_ratio = 3.0;
};

struct CheckResult {
  std::string name;
  double value;
  double limit;
  bool pass;
};

/// The ladder invariants: monotone far-field errors, rate and bound, energy and weak-form
/// residuals, interior estimates.
std::vector<CheckResult> ladder_checks(const ConvergenceReport& report, const Tolerances& tol = {});

struct SceneCheckOptions {
  int quad_order = 0;  // 0: default_sphere_order(n_max)
  int weak_form_tests = 10;
  std::uint64_t seed = 0;
};

/// Single-scene checks: energy identity and flux sign, weak form, Calderon trace map, far-field
/// cross-route, surface-radius independence and far-field relations. Far-field quantities are
/// relative to max(||E_inf||, 1e-8 sqrt(4 pi)).
std::vector<CheckResult> scene_checks(const ModalSolution& sol, const Tolerances& tol = {},
                                      const SceneCheckOptions& options = {});

/// Full JSON report; absent optional values are null.
std::string to_json(const ConvergenceReport& report);

/// Rows delta, far_err, core_hcurl, outside_hcurl with %.17g.
void write_csv(std::ostream& os, const ConvergenceReport& report);

}  // namespace layermie::verify
