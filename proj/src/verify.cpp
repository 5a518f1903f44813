#include "layermie/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <random>

#include "layermie/calderon.hpp"
#include "layermie/errors.hpp"
#include "layermie/fields.hpp"
#include "layermie/vector_ops.hpp"
#include "synthesis.hpp"

namespace layermie::verify {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr int kTestOrder = 4;
constexpr int kRadialNodes = 16;

using calderon::TraceKind;

// Coefficients of one test field: regular modes n <= 4 on both azimuthal families.
struct TestField {
  std::vector<cplx> te_plus, tm_plus, te_minus, tm_minus;
};

std::vector<TestField> make_tests(int n_tests, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto draw = [&] {
    std::vector<cplx> c(kTestOrder + 1, cplx{0.0, 0.0});
    for (int n = 1; n <= kTestOrder; ++n) c[n] = cplx{g(rng), g(rng)};
    return c;
  };
  std::vector<TestField> out;
  for (int t = 0; t < n_tests; ++t) {
    TestField f;
    f.te_plus = draw();
    f.tm_plus = draw();
    f.te_minus = draw();
    f.tm_minus = draw();
    out.push_back(std::move(f));
  }
  return out;
}

struct TestProfiles {
  detail::RadialProfile plus, minus;
};

std::vector<TestProfiles> test_profiles(const std::vector<TestField>& tests, double k, double r) {
  std::vector<TestProfiles> out;
  out.reserve(tests.size());
  for (const auto& t : tests) {
    out.push_back({detail::regular_profile(cplx{k, 0.0}, r, t.te_plus, t.tm_plus),
                   detail::regular_profile(cplx{k, 0.0}, r, t.te_minus, t.tm_minus)});
  }
  return out;
}

// The m = -1 family is the m = +1 family rotated by 90 degrees about z.
detail::Synth eval_test(const TestProfiles& tp, const detail::AngularData& ad, double phi) {
  detail::Synth a = detail::synthesize(tp.plus, ad, phi);
  const detail::Synth b = detail::synthesize(tp.minus, ad, phi - 0.5 * std::numbers::pi);
  a.E += Eigen::Vector3cd(-b.E.y(), b.E.x(), b.E.z());
  a.curl += Eigen::Vector3cd(-b.curl.y(), b.curl.x(), b.curl.z());
  return a;
}

// sum_i conj(b_i) a_i
cplx dot_conj(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) { return b.dot(a); }

double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }
double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

}  // namespace

EnergyIdentity energy_identity_residual(const ModalSolution& sol) {
  const LayeredScene& scene = sol.scene();
  const double k = scene.background_k();
  const double R = scene.calderon_radius();
  const auto lambda_tot = modal_trace(sol, R, FieldPart::total, TraceKind::electric);
  const auto lambda_sca = modal_trace(sol, R, FieldPart::scattered, TraceKind::electric);
  auto mu_inc = modal_trace(sol, R, FieldPart::total, TraceKind::magnetic);
  mu_inc += cplx{-1.0, 0.0} * modal_trace(sol, R, FieldPart::scattered, TraceKind::magnetic);
  const auto mu_tot = mu_inc + calderon::apply_Ge(lambda_sca, k);
  const double flux = calderon::flux(lambda_tot, mu_tot).real();

  double absorption = 0.0;
  const auto& regions = sol.regions();
  for (std::size_t j = 0; j + 1 < regions.size(); ++j) {
    const Region& reg = regions[j];
    if (reg.field_free) continue;
    const double im_eps = reg.material.eps_r.imag();
    const double im_mu = reg.material.mu_r.imag();
    if (im_eps == 0.0 && im_mu == 0.0) continue;
    const RegionIntegrals ri = region_integrals(sol, j, FieldPart::total, reg.r_in, reg.r_out);
    absorption -= k * (im_eps * ri.field_sq + im_mu * ri.curl_sq / std::norm(k * reg.material.mu_r));
  }
  const double scale = std::max({std::abs(flux), std::abs(absorption), std::numbers::pi * R * R});
  return {flux, absorption, std::abs(flux - absorption) / scale};
}

double weak_form_residual(const ModalSolution& sol, int n_tests, std::uint64_t seed) {
  if (n_tests < 1) throw InvalidArgument("weak_form_residual needs n_tests >= 1");
  const LayeredScene& scene = sol.scene();
  const double k = scene.background_k();
  const double R = scene.calderon_radius();
  const auto& regions = sol.regions();
  const std::size_t ext = sol.exterior_index();
  const int nmax = sol.n_max();
  const int n_ang = std::max(nmax, kTestOrder);
  const SphereQuadrature sphere(nmax + 4);
  const auto tests = make_tests(n_tests, seed);

  std::vector<cplx> form(n_tests, cplx{0.0, 0.0});
  std::vector<double> test_norm_sq(n_tests, 0.0);
  double u_norm_sq = 0.0;

  // volume terms, region by region
  for (std::size_t j = 0; j < regions.size(); ++j) {
    const Region& reg = regions[j];
    if (reg.field_free) continue;
    const double a = reg.r_in;
    const double b = std::min(reg.r_out, R);
    if (!(b > a)) continue;
    const cplx inv_mu = 1.0 / reg.material.mu_r;
    const cplx k2eps = k * k * reg.material.eps_r;
    const double width = std::numbers::pi / std::max(std::abs(reg.k), k);
    const int panels = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const GaussRule rule = gauss_legendre(kRadialNodes, a + p * h, p + 1 == panels ? b : a + (p + 1) * h);
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        const double r = rule.nodes[q];
        const double wr = rule.weights[q] * r * r;
        const auto rp = detail::solution_profile(sol, j, r, false);
        const auto tp = test_profiles(tests, k, r);
        for (int it = 0; it < sphere.n_theta(); ++it) {
          const auto ad = detail::angular_data(n_ang, sphere.cos_theta()[it]);
          for (int ip = 0; ip < sphere.n_phi(); ++ip) {
            const auto& node = sphere.nodes()[static_cast<std::size_t>(it) * sphere.n_phi() + ip];
            const double w = wr * node.weight;
            const detail::Synth u = detail::synthesize(rp, ad, node.phi);
            u_norm_sq += w * (u.E.squaredNorm() + u.curl.squaredNorm());
            for (int t = 0; t < n_tests; ++t) {
              const detail::Synth phi = eval_test(tp[t], ad, node.phi);
              form[t] += w * (inv_mu * dot_conj(u.curl, phi.curl) - k2eps * dot_conj(u.E, phi.E));
              test_norm_sq[t] += w * (phi.E.squaredNorm() + phi.curl.squaredNorm());
            }
          }
        }
      }
    }
  }

  // artificial boundary: ik int [G_e(x^ x U) - G_e(x^ x E^i) + x^ x H^i] . conj(Phi)
  {
    const auto lambda_tot = modal_trace(sol, R, FieldPart::total, TraceKind::electric);
    auto lambda_inc = lambda_tot;
    lambda_inc += cplx{-1.0, 0.0} * modal_trace(sol, R, FieldPart::scattered, TraceKind::electric);
    const auto g_tot = calderon::apply_Ge(lambda_tot, k);
    const auto g_inc = calderon::apply_Ge(lambda_inc, k);
    const auto rp_tot = detail::solution_profile(sol, ext, R, false);
    const auto rp_sca = detail::solution_profile(sol, ext, R, true);
    const auto tp = test_profiles(tests, k, R);
    for (int it = 0; it < sphere.n_theta(); ++it) {
      const auto ad = detail::angular_data(n_ang, sphere.cos_theta()[it]);
      for (int ip = 0; ip < sphere.n_phi(); ++ip) {
        const auto& node = sphere.nodes()[static_cast<std::size_t>(it) * sphere.n_phi() + ip];
        const Eigen::Vector3cd xh = node.direction.cast<cplx>();
        const Eigen::Vector3cd h_inc =
            (detail::synthesize(rp_tot, ad, node.phi).curl - detail::synthesize(rp_sca, ad, node.phi).curl) / (kI * k);
        const Eigen::Vector3cd trace = calderon::synthesize(g_tot, node.theta, node.phi) -
                                       calderon::synthesize(g_inc, node.theta, node.phi) + cross(xh, h_inc);
        const cplx w = kI * k * R * R * node.weight;
        for (int t = 0; t < n_tests; ++t) form[t] += w * dot_conj(trace, eval_test(tp[t], ad, node.phi).E);
      }
    }
  }

  // obstacle boundary: - ik int_{dD} (nu x H) . conj(Phi)
  if (regions[0].field_free) {
    const double rc = regions[0].r_out;
    const Region& outside = regions[1];
    const auto rp = detail::solution_profile(sol, 1, rc, false);
    const auto tp = test_profiles(tests, k, rc);
    const cplx to_h = 1.0 / (kI * k * outside.material.mu_r);
    for (int it = 0; it < sphere.n_theta(); ++it) {
      const auto ad = detail::angular_data(n_ang, sphere.cos_theta()[it]);
      for (int ip = 0; ip < sphere.n_phi(); ++ip) {
        const auto& node = sphere.nodes()[static_cast<std::size_t>(it) * sphere.n_phi() + ip];
        const Eigen::Vector3cd nu_h =
            cross(node.direction.cast<cplx>(), to_h * detail::synthesize(rp, ad, node.phi).curl);
        const cplx w = kI * k * rc * rc * node.weight;
        for (int t = 0; t < n_tests; ++t) form[t] -= w * dot_conj(nu_h, eval_test(tp[t], ad, node.phi).E);
      }
    }
  }

  double worst = 0.0;
  for (int t = 0; t < n_tests; ++t) {
    const double scale = std::sqrt(u_norm_sq * test_norm_sq[t]);
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(form[t]) / scale);
  }
  return worst;
}

RateFit fit_rate(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) throw InvalidArgument("fit_rate needs equally many x and y values");
  if (xs.size() < 3) throw InvalidArgument("fit_rate needs at least 3 points");
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw InvalidArgument("fit_rate needs positive values");
    sx += std::log(xs[i]);
    sy += std::log(ys[i]);
  }
  const double n = static_cast<double>(xs.size());
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (sxx == 0.0) throw InvalidArgument("fit_rate needs distinct x values");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

double incident_scale(double k, double R) { return (1.0 + k) * std::sqrt(4.0 * std::numbers::pi * R * R * R / 3.0); }

std::string to_string(LadderKind kind) {
  switch (kind) {
    case LadderKind::pec:
      return "pec";
    case LadderKind::pmc:
      return "pmc";
    case LadderKind::none:
      break;
  }
  return "none";
}

namespace {

ModalSolution solve_at(const LayeredScene& scene, const IncidentWave& incidence, int n_max, double delta) {
  const std::string tag = "delta = " + std::to_string(delta) + ": ";
  try {
    return solve_modes(scene, incidence, n_max);
  } catch (const NumericalResonance& e) {
    throw NumericalResonance(tag + e.what(), e.mode_order(), e.parity(), e.condition());
  } catch (const RangeError& e) {
    throw RangeError(tag + e.what());
  }
}

double outside_norm(const ModalSolution& sol) {
  double sq = 0.0;
  const std::size_t shells = sol.exterior_index() - 1;
  for (std::size_t i = 0; i < shells; ++i) sq += std::pow(hcurl_norm(sol, NormRegion::shell_at(i)), 2);
  sq += std::pow(hcurl_norm(sol, NormRegion::annulus()), 2);
  return std::sqrt(sq);
}

}  // namespace

ConvergenceReport compare_study(const LayeredScene& reference, const IncidentWave& incidence,
                                const std::vector<double>& deltas, const std::function<LayeredScene(double)>& realize,
                                LadderKind kind, const LadderOptions& options) {
  if (deltas.empty()) throw InvalidArgument("delta ladder is empty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(deltas[i] >= kMinDelta)) throw InvalidArgument("delta ladder entries must be >= 1e-8");
    if (i > 0 && !(deltas[i] < deltas[i - 1])) throw InvalidArgument("delta ladder must be strictly decreasing");
  }
  const int nmax = options.n_max > 0 ? options.n_max : default_truncation(reference);
  const int order = options.quad_order > 0 ? options.quad_order : default_sphere_order(nmax);
  const SphereQuadrature quad(order);

  ConvergenceReport rep;
  rep.kind = kind;
  rep.k = reference.background_k();
  rep.R = reference.calderon_radius();
  rep.n_max = nmax;
  rep.quad_order = order;
  rep.incident_scale = incident_scale(rep.k, rep.R);
  rep.deltas = deltas;

  const ModalSolution ref = solve_modes(reference, incidence, nmax);
  const FarFieldSamples ref_far = farfield_series(ref, quad);
  rep.reference_energy_residual = energy_identity_residual(ref).residual;

  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const ModalSolution sol = solve_at(realize(deltas[i]), incidence, nmax, deltas[i]);
    rep.far_errs.push_back(l2_s2_distance(farfield_series(sol, quad), ref_far));
    rep.core_hcurl.push_back(hcurl_norm(sol, NormRegion::core()));
    rep.outside_hcurl.push_back(outside_norm(sol));
    rep.energy_residuals.push_back(energy_identity_residual(sol).residual);
    const bool ends = i == 0 || i + 1 == deltas.size();
    if (options.weak_form && ends) {
      rep.weak_form_residuals.emplace_back(weak_form_residual(sol, options.weak_form_tests, options.seed));
    } else {
      rep.weak_form_residuals.emplace_back(std::nullopt);
    }
  }

  const bool positive = std::all_of(rep.far_errs.begin(), rep.far_errs.end(), [](double e) { return e > 0.0; });
  if (positive && deltas.size() >= 3) {
    rep.fitted_slope = fit_rate(deltas, rep.far_errs).slope;
    double logC = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < deltas.size(); ++i) {
      logC = std::max(logC, std::log(rep.far_errs[i] / (std::sqrt(deltas[i]) * rep.incident_scale)));
    }
    rep.fitted_logC = logC;
  }
  return rep;
}

ConvergenceReport delta_ladder_study(const LayeredScene& scene_obstacle, const IncidentWave& incidence,
                                     const std::vector<double>& deltas, double eta0, double tau0,
                                     const LadderOptions& options) {
  if (std::holds_alternative<Material>(scene_obstacle.core())) {
    throw PreconditionError("the delta ladder needs a PEC or PMC core");
  }
  const LadderKind kind = std::holds_alternative<Pec>(scene_obstacle.core()) ? LadderKind::pec : LadderKind::pmc;
  auto realize = [&](double delta) { return realize_scene(scene_obstacle, DeltaParams(delta, eta0, tau0)); };
  return compare_study(scene_obstacle, incidence, deltas, realize, kind, options);
}

InteriorCheck interior_estimate_check(const ConvergenceReport& report, ObstacleKind kind) {
  const std::size_t n = report.deltas.size();
  if (n == 0 || report.core_hcurl.size() != n || report.outside_hcurl.size() != n) {
    throw InvalidArgument("interior_estimate_check needs a complete report");
  }
  std::vector<double> core(n), outside(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double sd = std::sqrt(report.deltas[i]);
    const double c = report.core_hcurl[i] / report.incident_scale;
    core[i] = kind == ObstacleKind::pmc ? sd * c : c / sd;
    outside[i] = report.outside_hcurl[i] / report.incident_scale;
  }
  InteriorCheck out{};
  out.core_ratio = min_of(core) > 0.0 ? max_of(core) / min_of(core) : std::numeric_limits<double>::infinity();
  out.outside_ratio =
      min_of(outside) > 0.0 ? max_of(outside) / min_of(outside) : std::numeric_limits<double>::infinity();
  out.core_decreasing = true;
  for (std::size_t i = 1; i < n; ++i)
    out.core_decreasing = out.core_decreasing && report.core_hcurl[i] < report.core_hcurl[i - 1];
  const Tolerances tol;
  out.pass = out.core_ratio <= tol.interior_ratio && out.outside_ratio <= tol.outside_ratio &&
             (kind == ObstacleKind::pmc || out.core_decreasing);
  return out;
}

std::vector<CheckResult> ladder_checks(const ConvergenceReport& report, const Tolerances& tol) {
  std::vector<CheckResult> out;
  const std::size_t n = report.deltas.size();

  double spacing = std::numeric_limits<double>::infinity();
  double worst_step = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    spacing = std::min(spacing, report.deltas[i - 1] / report.deltas[i]);
    worst_step = std::max(worst_step, report.far_errs[i] / report.far_errs[i - 1]);
  }
  out.push_back({"delta_spacing", spacing, tol.min_delta_ratio, spacing >= tol.min_delta_ratio});
  out.push_back({"far_errs_strictly_decreasing", worst_step, 1.0, n >= 2 && worst_step < 1.0});

  const double slope = report.fitted_slope.value_or(std::numeric_limits<double>::quiet_NaN());
  out.push_back({"fitted_slope", slope, tol.min_slope, slope >= tol.min_slope});
  double bound = std::numeric_limits<double>::infinity();
  if (report.fitted_logC && std::isfinite(*report.fitted_logC)) {
    bound = 0.0;
    const double C = std::exp(*report.fitted_logC);
    for (std::size_t i = 0; i < n; ++i) {
      bound = std::max(bound, report.far_errs[i] / (C * std::sqrt(report.deltas[i]) * report.incident_scale));
    }
  }
  out.push_back({"sqrt_delta_bound", bound, 1.0, bound <= 1.0 + 1e-12});

  double energy = report.reference_energy_residual;
  for (double e : report.energy_residuals) energy = std::max(energy, e);
  out.push_back({"energy_residual", energy, tol.energy, energy <= tol.energy});

  double weak = 0.0;
  bool any_weak = false;
  for (const auto& w : report.weak_form_residuals) {
    if (w) {
      weak = std::max(weak, *w);
      any_weak = true;
    }
  }
  if (any_weak) out.push_back({"weak_form_residual", weak, tol.weak_form, weak <= tol.weak_form});

  if (report.kind != LadderKind::none) {
    const ObstacleKind kind = report.kind == LadderKind::pec ? ObstacleKind::pec : ObstacleKind::pmc;
    const InteriorCheck ic = interior_estimate_check(report, kind);
    out.push_back({kind == ObstacleKind::pmc ? "sqrt_delta_core_hcurl_ratio" : "core_hcurl_over_sqrt_delta_ratio",
                   ic.core_ratio, tol.interior_ratio, ic.core_ratio <= tol.interior_ratio});
    out.push_back({"outside_hcurl_ratio", ic.outside_ratio, tol.outside_ratio, ic.outside_ratio <= tol.outside_ratio});
    if (kind == ObstacleKind::pec) {
      out.push_back({"core_hcurl_decreasing", ic.core_decreasing ? 1.0 : 0.0, 1.0, ic.core_decreasing});
    }
  }
  return out;
}

std::vector<CheckResult> scene_checks(const ModalSolution& sol, const Tolerances& tol,
                                      const SceneCheckOptions& options) {
  std::vector<CheckResult> out;
  const double k = sol.scene().background_k();
  const double R = sol.scene().calderon_radius();

  bool lossy = false;
  for (const auto& region : sol.regions()) {
    if (region.field_free) continue;
    lossy = lossy || region.material.mu_r.imag() > 0.0 || region.material.eps_r.imag() > 0.0;
  }
  const EnergyIdentity ei = energy_identity_residual(sol);
  out.push_back({"energy_identity", ei.residual, tol.energy, ei.residual <= tol.energy});
  if (lossy) {
    out.push_back({"lossy_flux_sign", ei.flux, 0.0, ei.flux <= 0.0});
  } else {
    out.push_back({"lossless_flux", std::abs(ei.flux), tol.lossless_flux, std::abs(ei.flux) <= tol.lossless_flux});
  }

  const double weak = weak_form_residual(sol, options.weak_form_tests, options.seed);
  out.push_back({"weak_form", weak, tol.weak_form, weak <= tol.weak_form});

  using calderon::TraceKind;
  const auto lambda = modal_trace(sol, R, FieldPart::scattered, TraceKind::electric);
  const auto mu = modal_trace(sol, R, FieldPart::scattered, TraceKind::magnetic);
  const auto mu_total = modal_trace(sol, R, FieldPart::total, TraceKind::magnetic);
  const auto diff = calderon::apply_Ge(lambda, k) + cplx{-1.0, 0.0} * mu;
  const double trace_scale = std::sqrt(std::abs(calderon::inner(mu_total, mu_total)));
  const double trace_err =
      std::sqrt(std::abs(calderon::inner(diff, diff))) / std::max(trace_scale, std::numeric_limits<double>::min());
  out.push_back({"calderon_trace", trace_err, tol.calderon, trace_err <= tol.calderon});

  const int order = options.quad_order > 0 ? options.quad_order : default_sphere_order(sol.n_max());
  const SphereQuadrature dirs(order);
  const auto series = farfield_series(sol, dirs);
  const double scale = std::max(l2_s2_norm(series), 1e-8 * std::sqrt(4.0 * std::numbers::pi));
  auto stratton_chu = [&](double r) {
    return farfield_stratton_chu(sol, r, SphereQuadrature(default_sphere_order(truncation_order(k, r)) + 8), dirs);
  };
  const auto sc_inner = stratton_chu(R);
  const auto sc_outer = stratton_chu(2.0 * R);
  const double cross_route = l2_s2_distance(sc_inner, series) / scale;
  out.push_back({"farfield_cross_route", cross_route, tol.farfield_cross, cross_route <= tol.farfield_cross});
  const double radius = l2_s2_distance(sc_inner, sc_outer) / scale;
  out.push_back({"radius_independence", radius, tol.radius_independence, radius <= tol.radius_independence});

  const auto magnetic = farfield_series_magnetic(sol, dirs);
  double peak = 1e-8;
  for (const auto& v : series.values) peak = std::max(peak, v.norm());
  double relations = 0.0;
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    const Eigen::Vector3cd xh = series.directions[i].cast<cplx>();
    relations = std::max(
        {relations, std::abs(xh.dot(series.values[i])), (magnetic.values[i] - cross(xh, series.values[i])).norm()});
  }
  relations /= peak;
  out.push_back({"farfield_relations", relations, tol.farfield_relations, relations <= tol.farfield_relations});
  return out;
}

std::string to_json(const ConvergenceReport& report) {
  auto optional_list = [](const std::vector<std::optional<double>>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x ? nlohmann::json(*x) : nlohmann::json(nullptr));
    return a;
  };
  nlohmann::json j;
  j["kind"] = to_string(report.kind);
  j["k"] = report.k;
  j["R"] = report.R;
  j["n_max"] = report.n_max;
  j["quad_order"] = report.quad_order;
  j["incident_scale"] = report.incident_scale;
  j["deltas"] = report.deltas;
  j["far_errs"] = report.far_errs;
  j["core_hcurl"] = report.core_hcurl;
  j["outside_hcurl"] = report.outside_hcurl;
  j["energy_residuals"] = report.energy_residuals;
  j["weak_form_residuals"] = optional_list(report.weak_form_residuals);
  j["reference_energy_residual"] = report.reference_energy_residual;
  j["fitted_slope"] = report.fitted_slope ? nlohmann::json(*report.fitted_slope) : nlohmann::json(nullptr);
  j["fitted_logC"] = report.fitted_logC ? nlohmann::json(*report.fitted_logC) : nlohmann::json(nullptr);
  return j.dump(2);
}

void write_csv(std::ostream& os, const ConvergenceReport& report) {
  os << "delta,far_err,core_hcurl,outside_hcurl\n";
  char buf[256];
  for (std::size_t i = 0; i < report.deltas.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", report.deltas[i], report.far_errs[i],
                  report.core_hcurl[i], report.outside_hcurl[i]);
    os << buf;
  }
}

}  // namespace layermie::verify
