#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "layermie/calderon.hpp"
#include "layermie/fields.hpp"
#include "layermie/mie.hpp"
#include "layermie/vector_ops.hpp"
#include "layermie/verify.hpp"
#include "oracle_values.hpp"
#include "test_support.hpp"

using namespace layermie;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

ModalSolution solve(const LayeredScene& scene, const IncidentWave& w) {
  return solve_modes(scene, w, default_truncation(scene));
}

/// max over nodes of |x^ . E_inf| and |H_inf - x^ x E_inf|, relative to max |E_inf|.
double farfield_relations(const ModalSolution& sol) {
  const SphereQuadrature q(default_sphere_order(sol.n_max()));
  const auto e = farfield_series(sol, q);
  const auto h = farfield_series_magnetic(sol, q);
  double peak = 0.0, err = 0.0;
  for (std::size_t i = 0; i < e.values.size(); ++i) {
    const Eigen::Vector3cd xh = e.directions[i].cast<cplx>();
    peak = std::max(peak, e.values[i].norm());
    err = std::max({err, std::abs(xh.dot(e.values[i])), (h.values[i] - cross(xh, e.values[i])).norm()});
  }
  return err / peak;
}

std::vector<LayeredScene> random_layered_scenes(std::uint64_t seed, int count, bool lossy) {
  std::mt19937_64 rng(seed);
  std::vector<LayeredScene> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_scene(rng, i % 3, lossy));
  return out;
}

bool absorbs(const LayeredScene& scene) {
  auto lossy = [](const Material& m) { return m.mu_r.imag() > 0.0 || m.eps_r.imag() > 0.0; };
  if (const auto* m = std::get_if<Material>(&scene.core()); m && lossy(*m)) return true;
  return std::any_of(scene.shells().begin(), scene.shells().end(), [&](const Shell& s) { return lossy(s.material); });
}

LayeredScene reference_pmc_realized() {
  return realize_scene(testing::reference_scene(Pmc{}), DeltaParams(1e-2, 1.0, 1.0));
}

const std::vector<double> kLadder{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};

verify::ConvergenceReport reference_ladder(CoreKind core) {
  return verify::delta_ladder_study(testing::reference_scene(core), testing::z_wave(2.0), kLadder, 1.0, 1.0);
}

const verify::CheckResult& named(const std::vector<verify::CheckResult>& checks, const std::string& name) {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  std::fprintf(stderr, "missing check %s\n", name.c_str());
  std::abort();
}

// Far-field errors strictly decrease, fitted slope >= 0.45, and the sqrt(delta) envelope holds
// with a finite fitted_logC.
Outcome ladder_assertions(const verify::ConvergenceReport& r, std::vector<verify::CheckResult>& checks) {
  const verify::Tolerances tol;
  checks = verify::ladder_checks(r, tol);
  const auto& dec = named(checks, "far_errs_strictly_decreasing");
  const double slope = r.fitted_slope.value_or(-kInf);
  const bool finite_c = r.fitted_logC && std::isfinite(*r.fitted_logC);
  double bound = kInf;
  if (finite_c) {
    bound = 0.0;
    for (std::size_t i = 0; i < r.deltas.size(); ++i) {
      bound = std::max(bound, r.far_errs[i] / (std::exp(*r.fitted_logC) * std::sqrt(r.deltas[i]) * r.incident_scale));
    }
  }
  const bool pass = dec.pass && slope >= 0.45 && finite_c && bound <= 1.0 + 1e-12;
  return {pass, fmt("decreasing=%d (worst step %.3f) slope=%.4f logC=%.4f envelope=%.6f", dec.pass ? 1 : 0, dec.value,
                    slope, finite_c ? *r.fitted_logC : kInf, bound)};
}

Outcome c01() {
  const auto sol = solve(testing::vacuum_scene(2.0), testing::z_wave(2.0));
  const double norm = l2_s2_norm(farfield_series(sol, SphereQuadrature(default_sphere_order(sol.n_max()))));
  return {norm <= 1e-10, fmt("||E_inf|| = %.3e (limit 1e-10)", norm)};
}

Outcome c02() {
  auto compare = [](const ModalSolution& sol, const auto& table) {
    double worst = 0.0;
    for (const auto& row : table) {
      for (Parity p : {Parity::te, Parity::tm}) {
        const cplx expected = p == Parity::te ? row.s_te : row.s_tm;
        worst = std::max(worst, std::abs(sol.s(row.n, p) - expected) / std::abs(expected));
      }
    }
    return worst;
  };
  double pec = 0.0, diel = 0.0;
  auto run = [&](double ka, const auto& pec_table, const auto& diel_table) {
    const IncidentWave w = testing::z_wave(ka);
    const int n_pec = int(pec_table.size());
    const int n_diel = int(diel_table.size());
    pec = std::max(pec, compare(solve_modes(LayeredScene(1.0, Pec{}, {}, ka, 1.5), w, n_pec), pec_table));
    diel = std::max(
        diel,
        compare(solve_modes(LayeredScene(1.0, Material{{1.0, 0.0}, {2.25, 0.0}}, {}, ka, 1.5), w, n_diel), diel_table));
  };
  run(oracle::kPecKa05, oracle::kPecSphereKa05, oracle::kDielectricSphereKa05);
  run(oracle::kPecKa1, oracle::kPecSphereKa1, oracle::kDielectricSphereKa1);
  run(oracle::kPecKa5, oracle::kPecSphereKa5, oracle::kDielectricSphereKa5);
  return {pec <= 1e-10 && diel <= 1e-10,
          fmt("max relative coefficient error: PEC %.3e, dielectric %.3e (limit 1e-10)", pec, diel)};
}

Outcome c03() {
  std::mt19937_64 rng(303);
  double cross_route = 0.0, radius = 0.0;
  for (const auto& scene : random_layered_scenes(301, 5, true)) {
    const auto sol = solve(scene, testing::random_wave(rng, scene.background_k()));
    const SphereQuadrature dirs(default_sphere_order(sol.n_max()));
    const auto series = farfield_series(sol, dirs);
    const double norm = l2_s2_norm(series);
    auto sc = [&](double r) {
      return farfield_stratton_chu(
          sol, r, SphereQuadrature(default_sphere_order(truncation_order(scene.background_k(), r)) + 8), dirs);
    };
    const double r0 = scene.calderon_radius();
    const auto a = sc(r0);
    const auto b = sc(2.0 * r0);
    cross_route = std::max({cross_route, l2_s2_distance(a, series) / norm, l2_s2_distance(b, series) / norm});
    radius = std::max(radius, l2_s2_distance(a, b) / norm);
  }
  return {cross_route <= 1e-6 && radius <= 1e-7,
          fmt("series vs Stratton-Chu %.3e (limit 1e-6), radius independence %.3e (limit 1e-7)", cross_route, radius)};
}

Outcome c04() {
  std::mt19937_64 rng(404);
  std::vector<LayeredScene> scenes = random_layered_scenes(401, 6, true);
  for (const auto& s : random_layered_scenes(402, 6, false)) scenes.push_back(s);
  scenes.push_back(testing::reference_scene(Pec{}));
  scenes.push_back(testing::reference_scene(Pmc{}));
  scenes.push_back(reference_pmc_realized());
  scenes.push_back(realize_scene(testing::reference_scene(Pec{}), DeltaParams(1e-3, 1.0, 1.0)));
  for (double ka : {0.5, 1.0, 5.0}) {
    scenes.emplace_back(1.0, Pec{}, std::vector<Shell>{}, ka, 1.5);
    scenes.emplace_back(1.0, Material{{1.0, 0.0}, {2.25, 0.0}}, std::vector<Shell>{}, ka, 1.5);
  }
  double worst = 0.0;
  for (const auto& scene : scenes) {
    worst = std::max(worst, farfield_relations(solve(scene, testing::random_wave(rng, scene.background_k()))));
  }
  return {worst <= 1e-9, fmt("%zu scenes, max relation residual %.3e (limit 1e-9)", scenes.size(), worst)};
}

Outcome c05() {
  std::mt19937_64 rng(505);
  std::vector<LayeredScene> scenes = random_layered_scenes(501, 6, true);
  for (const auto& s : random_layered_scenes(502, 6, false)) scenes.push_back(s);
  scenes.push_back(testing::reference_scene(Pec{}));
  scenes.push_back(testing::reference_scene(Pmc{}));
  scenes.push_back(reference_pmc_realized());
  scenes.emplace_back(1.0, Pec{}, std::vector<Shell>{}, 1.0, 1.5);
  std::vector<LayeredScene> lossy, lossless;
  for (const auto& s : scenes) (absorbs(s) ? lossy : lossless).push_back(s);
  double residual = 0.0, max_flux = -kInf, lossless_flux = 0.0;
  for (const auto& scene : lossy) {
    const auto e = verify::energy_identity_residual(solve(scene, testing::random_wave(rng, scene.background_k())));
    residual = std::max(residual, e.residual);
    max_flux = std::max(max_flux, e.flux);
  }
  for (const auto& scene : lossless) {
    const auto e = verify::energy_identity_residual(solve(scene, testing::random_wave(rng, scene.background_k())));
    residual = std::max(residual, e.residual);
    lossless_flux = std::max(lossless_flux, std::abs(e.flux));
  }
  return {!lossy.empty() && !lossless.empty() && residual <= 1e-7 && max_flux <= 0.0 && lossless_flux <= 1e-9,
          fmt("%zu lossy, %zu lossless: residual %.3e (limit 1e-7), largest lossy flux %.3e (limit 0), "
              "largest lossless |flux| %.3e (limit 1e-9)",
              lossy.size(), lossless.size(), residual, max_flux, lossless_flux)};
}

Outcome c06() {
  const double k = 2.0, R = 1.5;  // kR = 3
  const int n_max = 40;
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;
  double worst_ratio = kInf, largest_re = -kInf;
  for (int trial = 0; trial < 100; ++trial) {
    calderon::TangentialField lam(R, n_max, calderon::TraceKind::electric);
    for (auto& c : lam.data()) c = cplx{g(rng), g(rng)};
    const cplx t = calderon::tilde_pairing(lam);
    largest_re = std::max(largest_re, t.real());
    worst_ratio = std::min(worst_ratio, -t.real() / calderon::proxy_norm_sq(lam));
  }
  const bool sign_definite = largest_re < 0.0 && worst_ratio >= 0.1;

  bool monotone = true;
  double peak = 0.0;
  std::vector<double> te(n_max + 1), tm(n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    const auto m = calderon::compact_part_multipliers(n, k, R);
    te[n] = std::abs(m.te);
    tm[n] = std::abs(m.tm);
    peak = std::max({peak, te[n], tm[n]});
  }
  for (int n = 2; n <= n_max; ++n) {
    if (n - 1 > k * R && (te[n] >= te[n - 1] || tm[n] >= tm[n - 1])) monotone = false;
  }
  const double tail = std::max(te[n_max], tm[n_max]) / peak;
  const bool compact = monotone && tail < 1e-6;
  return {sign_definite && compact,
          fmt("tilde pairing: max Re %.3e (limit < 0), min -Re/proxy %.3f (limit 0.1); compact part: monotone=%d, "
              "|m_40|/peak %.3e (limit 1e-6; |m_TE(40)| = %.2f, |m_TM(40)| = %.3e)",
              largest_re, worst_ratio, monotone ? 1 : 0, tail, te[n_max], tm[n_max])};
}

Outcome c07() {
  const auto sol = solve(reference_pmc_realized(), testing::z_wave(2.0));
  const double r = verify::weak_form_residual(sol, 10, 0);
  return {r <= 1e-5, fmt("weak-form residual %.3e over 10 test fields (limit 1e-5)", r)};
}

Outcome c08() {
  std::vector<verify::CheckResult> checks;
  return ladder_assertions(reference_ladder(Pmc{}), checks);
}

Outcome c09() {
  std::vector<verify::CheckResult> checks;
  const auto report = reference_ladder(Pec{});
  Outcome o = ladder_assertions(report, checks);
  const auto ic = verify::interior_estimate_check(report, ObstacleKind::pec);
  o.pass = o.pass && ic.core_decreasing && ic.core_ratio <= 10.0;
  o.detail += fmt("; core_hcurl decreasing=%d, core_hcurl/sqrt(delta) max/min %.3f (limit 10)",
                  ic.core_decreasing ? 1 : 0, ic.core_ratio);
  return o;
}

Outcome c10() {
  const auto ic = verify::interior_estimate_check(reference_ladder(Pmc{}), ObstacleKind::pmc);
  return {ic.core_ratio <= 10.0 && ic.outside_ratio <= 2.0,
          fmt("sqrt(delta) core_hcurl max/min %.3f (limit 10), outside_hcurl max/min %.3f (limit 2)", ic.core_ratio,
              ic.outside_ratio)};
}

Outcome c11() {
  auto csv = [] {
    std::ostringstream os;
    verify::write_csv(os, reference_ladder(Pmc{}));
    return os.str();
  };
  const std::string a = csv();
  const std::string b = csv();
  return {!a.empty() && a == b, fmt("%zu bytes, identical=%d", a.size(), a == b ? 1 : 0)};
}

struct Criterion {
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria{
    {"null scatterer", 1.0, c01},          {"classic-sphere oracles", 5.0, c02}, {"far-field cross-route", 30.0, c03},
    {"far-field relations", kInf, c04},    {"energy identity", 10.0, c05},       {"Calderon properties", 5.0, c06},
    {"weak-form residual", 60.0, c07},     {"PMC delta ladder", 180.0, c08},     {"PEC delta ladder", 180.0, c09},
    {"PMC interior estimates", kInf, c10}, {"determinism", kInf, c11},
};

bool run_criterion(int id) {
  const Criterion& c = kCriteria[id - 1];
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = c.run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < c.budget_s;
  const bool pass = o.pass && in_time;
  std::string budget = std::isfinite(c.budget_s) ? fmt("%.0f s", c.budget_s) : "none";
  std::printf("criterion %2d %-24s %s  %s  [%.2f s, budget %s]\n", id, c.title, pass ? "PASS" : "FAIL",
              o.detail.c_str(), secs, budget.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) {
    const int id = std::atoi(argv[i]);
    if (id < 1 || id > int(kCriteria.size())) {
      std::fprintf(stderr, "usage: acceptance [criterion 1..%zu]...\n", kCriteria.size());
      return 1;
    }
    ids.push_back(id);
  }
  if (ids.empty()) {
    for (int i = 1; i <= int(kCriteria.size()); ++i) ids.push_back(i);
  }
  bool all = true;
  for (int id : ids) all = run_criterion(id) && all;
  return all ? 0 : 1;
}
