#include "layermie/fields.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "layermie/errors.hpp"
#include "layermie/specfun.hpp"
#include "layermie/vector_ops.hpp"
#include "synthesis.hpp"

namespace layermie {

namespace {

constexpr cplx kI{0.0, 1.0};

struct Spherical {
  double r;
  double cos_t;
  double phi;
};

Spherical to_spherical(const Eigen::Vector3d& x) {
  const double r = x.norm();
  if (r == 0.0) return {0.0, 1.0, 0.0};
  return {r, std::clamp(x.z() / r, -1.0, 1.0), std::atan2(x.y(), x.x())};
}

double nt(int n) { return calderon::tangential_norm(n); }

}  // namespace

double radial_pattern_norm(int n) { return 2.0 * std::numbers::pi * double(n) * (n + 1) / (2.0 * n + 1.0); }

FieldValue eval_incident(const IncidentWave& w, const Eigen::Vector3d& x) {
  const cplx phase = std::exp(kI * (w.k * w.d.dot(x)));
  return {w.p.cast<cplx>() * phase, w.d.cross(w.p).cast<cplx>() * phase};
}

FieldValue eval_incident_series(const IncidentWave& w, int n_max, const Eigen::Vector3d& x) {
  const Eigen::Matrix3d R = rotation_frame(w.d, w.p);
  const Spherical sp = to_spherical(R * x);
  std::vector<cplx> c_te(n_max + 1), c_tm(n_max + 1);
  for (int n = 1; n <= n_max; ++n) {
    c_te[n] = detail::mode_amplitude(n, Parity::te);
    c_tm[n] = detail::mode_amplitude(n, Parity::tm);
  }
  const auto rp = detail::regular_profile(cplx{w.k, 0.0}, sp.r, c_te, c_tm);
  const auto s = detail::synthesize(rp, detail::angular_data(n_max, sp.cos_t), sp.phi);
  return {R.transpose().cast<cplx>() * s.E, R.transpose().cast<cplx>() * (s.curl / (kI * w.k))};
}

FieldValue eval_fields_in_region(const ModalSolution& sol, const Eigen::Vector3d& x, std::size_t region,
                                 FieldPart part) {
  if (region >= sol.regions().size()) throw InvalidArgument("region index out of range");
  const bool exterior = region == sol.exterior_index();
  if (part == FieldPart::scattered && !exterior) {
    throw InvalidArgument("the scattered field is defined only outside the scatterer");
  }
  const Eigen::Matrix3d& R = sol.rotation();
  const Spherical sp = to_spherical(R * x);
  const auto rp = detail::solution_profile(sol, region, sp.r, exterior);
  const auto s = detail::synthesize(rp, detail::angular_data(sol.n_max(), sp.cos_t), sp.phi);
  const cplx mu = sol.regions()[region].material.mu_r;
  const double k = sol.scene().background_k();
  FieldValue out{R.transpose().cast<cplx>() * s.E, R.transpose().cast<cplx>() * (s.curl / (kI * k * mu))};
  if (exterior && part == FieldPart::total) {
    const FieldValue inc = eval_incident(sol.incidence(), x);
    out.E += inc.E;
    out.H += inc.H;
  }
  return out;
}

FieldValue eval_fields(const ModalSolution& sol, const Eigen::Vector3d& x, FieldPart part) {
  const std::size_t region = sol.region_of(x.norm());
  if (part == FieldPart::scattered && region != sol.exterior_index()) {
    throw InvalidArgument("the scattered field is defined only outside the scatterer");
  }
  return eval_fields_in_region(sol, x, region, part);
}

Eigen::Vector3cd eval_E(const ModalSolution& sol, const Eigen::Vector3d& x, FieldPart part) {
  return eval_fields(sol, x, part).E;
}

Eigen::Vector3cd eval_H(const ModalSolution& sol, const Eigen::Vector3d& x, FieldPart part) {
  return eval_fields(sol, x, part).H;
}

namespace {

// Modal far field in one lab direction; `magnetic` selects H_inf.
Eigen::Vector3cd farfield_modal_at(const ModalSolution& sol, const Eigen::Vector3d& direction, bool magnetic,
                                   std::vector<double>& pi, std::vector<double>& tau) {
  const Eigen::Matrix3d& R = sol.rotation();
  const double k = sol.scene().background_k();
  const int nmax = sol.n_max();
  const Spherical sp = to_spherical(R * direction);
  pi.resize(nmax + 1);
  tau.resize(nmax + 1);
  specfun::mie_angular_table(nmax, sp.cos_t, pi, tau);
  const double c = std::cos(sp.phi), s = std::sin(sp.phi);
  cplx vt{0.0, 0.0}, vp{0.0, 0.0};
  for (int n = 1; n <= nmax; ++n) {
    const double cn = (2.0 * n + 1.0) / (double(n) * (n + 1));
    const cplx te = cn * sol.s(n, Parity::te);
    const cplx tm = cn * sol.s(n, Parity::tm);
    if (!magnetic) {
      // s_TE m_o + s_TM n_e
      vt += te * (c * pi[n]) + tm * (c * tau[n]);
      vp += te * (-s * tau[n]) + tm * (-s * pi[n]);
    } else {
      // s_TE n_o - s_TM m_e
      vt += te * (s * tau[n]) + tm * (s * pi[n]);
      vp += te * (c * pi[n]) + tm * (c * tau[n]);
    }
  }
  const double st = std::sqrt(std::max(0.0, 1.0 - sp.cos_t * sp.cos_t));
  const Eigen::Vector3d th(sp.cos_t * c, sp.cos_t * s, -st), ph(-s, c, 0.0);
  const Eigen::Vector3cd v_rot = (-kI / k) * (th.cast<cplx>() * vt + ph.cast<cplx>() * vp);
  return R.transpose().cast<cplx>() * v_rot;
}

FarFieldSamples farfield_modal(const ModalSolution& sol, const SphereQuadrature& quad, bool magnetic) {
  FarFieldSamples out;
  std::vector<double> pi, tau;
  for (const auto& node : quad.nodes()) {
    out.directions.push_back(node.direction);
    out.theta.push_back(node.theta);
    out.phi.push_back(node.phi);
    out.weights.push_back(node.weight);
    out.values.push_back(farfield_modal_at(sol, node.direction, magnetic, pi, tau));
  }
  return out;
}

}  // namespace

FarFieldSamples farfield_series(const ModalSolution& sol, const SphereQuadrature& quad) {
  return farfield_modal(sol, quad, false);
}

FarFieldSamples farfield_series_magnetic(const ModalSolution& sol, const SphereQuadrature& quad) {
  return farfield_modal(sol, quad, true);
}

Eigen::Vector3cd farfield_direction(const ModalSolution& sol, const Eigen::Vector3d& direction) {
  std::vector<double> pi, tau;
  return farfield_modal_at(sol, direction.normalized(), false, pi, tau);
}

FarFieldSamples farfield_stratton_chu(const ModalSolution& sol, double surface_radius, const SphereQuadrature& surface,
                                      const SphereQuadrature& directions) {
  if (!(surface_radius > sol.scene().outer_radius())) {
    throw InvalidArgument("Stratton-Chu surface must lie strictly outside the scatterer");
  }
  const double k = sol.scene().background_k();
  const double r = surface_radius;
  const std::size_t ext = sol.exterior_index();
  const std::size_t ns = surface.size();
  std::vector<Eigen::Vector3d> y(ns);
  std::vector<Eigen::Vector3cd> a(ns), b(ns);
  for (std::size_t q = 0; q < ns; ++q) {
    const auto& node = surface.nodes()[q];
    y[q] = r * node.direction;
    const FieldValue fv = eval_fields_in_region(sol, y[q], ext, FieldPart::scattered);
    const Eigen::Vector3cd nu = node.direction.cast<cplx>();
    const double w = node.weight * r * r;
    a[q] = w * cross(nu, fv.E);
    b[q] = w * cross(nu, fv.H);
  }
  FarFieldSamples out;
  for (const auto& node : directions.nodes()) {
    const Eigen::Vector3d& xh = node.direction;
    Eigen::Vector3cd A = Eigen::Vector3cd::Zero(), B = Eigen::Vector3cd::Zero();
    for (std::size_t q = 0; q < ns; ++q) {
      const cplx ph = std::exp(-kI * (k * xh.dot(y[q])));
      A += ph * a[q];
      B += ph * b[q];
    }
    const Eigen::Vector3cd xc = xh.cast<cplx>();
    const Eigen::Vector3cd v = (kI * k / (4.0 * std::numbers::pi)) * cross(xc, A + cross(B, xc));
    out.directions.push_back(xh);
    out.theta.push_back(node.theta);
    out.phi.push_back(node.phi);
    out.weights.push_back(node.weight);
    out.values.push_back(v);
  }
  return out;
}

double l2_s2_norm(const FarFieldSamples& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) sum += f.weights[i] * f.values[i].squaredNorm();
  return std::sqrt(sum);
}

double l2_s2_distance(const FarFieldSamples& a, const FarFieldSamples& b) {
  if (a.values.size() != b.values.size()) throw InvalidArgument("far-field samples use different nodes");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) sum += a.weights[i] * (a.values[i] - b.values[i]).squaredNorm();
  return std::sqrt(sum);
}

double parseval_norm(const ModalSolution& sol) {
  const double k = sol.scene().background_k();
  double sum = 0.0;
  for (int n = 1; n <= sol.n_max(); ++n) {
    sum += (2.0 * n + 1.0) * (std::norm(sol.s(n, Parity::te)) + std::norm(sol.s(n, Parity::tm)));
  }
  return std::sqrt(2.0 * std::numbers::pi / (k * k) * sum);
}

void write_csv(std::ostream& os, const FarFieldSamples& f) {
  os << "theta,phi,weight,re_x,im_x,re_y,im_y,re_z,im_z\n";
  char buf[512];
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    const auto& v = f.values[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", f.theta[i], f.phi[i],
                  f.weights[i], v.x().real(), v.x().imag(), v.y().real(), v.y().imag(), v.z().real(), v.z().imag());
    os << buf;
  }
}

double radial_integral(double r_lo, double r_hi, int n_max, double panel, double w_field, double w_curl,
                       const DensityProfile& profile) {
  if (!(r_hi > r_lo)) return 0.0;
  std::vector<ModeDensity> field, curl;
  auto integrand = [&](double r) {
    field.assign(n_max + 1, ModeDensity{});
    curl.assign(n_max + 1, ModeDensity{});
    profile(r, field, curl);
    double sum = 0.0;
    for (int n = 1; n <= n_max; ++n) {
      if (w_field != 0.0) {
        const auto& d = field[n];
        sum += w_field *
               (nt(n) * (std::norm(d.m_type) + std::norm(d.n_type)) + radial_pattern_norm(n) * std::norm(d.radial));
      }
      if (w_curl != 0.0) {
        const auto& d = curl[n];
        sum += w_curl *
               (nt(n) * (std::norm(d.m_type) + std::norm(d.n_type)) + radial_pattern_norm(n) * std::norm(d.radial));
      }
    }
    return r * r * sum;
  };
  const int panels = std::max(1, static_cast<int>(std::ceil((r_hi - r_lo) / panel)));
  const double h = (r_hi - r_lo) / panels;
  double total = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = r_lo + i * h;
    const double b = i + 1 == panels ? r_hi : a + h;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 15, 1e-10);
  }
  return total;
}

RegionIntegrals region_integrals(const ModalSolution& sol, std::size_t region, FieldPart part, double r_lo,
                                 double r_hi) {
  const Region& reg = sol.regions().at(region);
  if (reg.field_free) return {0.0, 0.0};
  const bool exterior = region == sol.exterior_index();
  if (part == FieldPart::scattered && !exterior) {
    throw InvalidArgument("the scattered field is defined only outside the scatterer");
  }
  const bool scattered_only = exterior && part == FieldPart::scattered;
  DensityProfile profile = [&](double r, std::vector<ModeDensity>& field, std::vector<ModeDensity>& curl) {
    detail::densities(detail::solution_profile(sol, region, r, scattered_only), field, curl);
  };
  const double panel = 2.0 * std::numbers::pi / std::abs(reg.k);
  return {radial_integral(r_lo, r_hi, sol.n_max(), panel, 1.0, 0.0, profile),
          radial_integral(r_lo, r_hi, sol.n_max(), panel, 0.0, 1.0, profile)};
}

double hcurl_norm(const ModalSolution& sol, NormRegion target) {
  const auto& regions = sol.regions();
  RegionIntegrals ri{0.0, 0.0};
  switch (target.kind) {
    case NormRegion::Kind::core:
      ri = region_integrals(sol, 0, FieldPart::total, 0.0, regions[0].r_out);
      break;
    case NormRegion::Kind::shell: {
      const std::size_t j = target.shell + 1;
      if (j >= sol.exterior_index()) throw InvalidArgument("shell index out of range");
      ri = region_integrals(sol, j, FieldPart::total, regions[j].r_in, regions[j].r_out);
      break;
    }
    case NormRegion::Kind::annulus: {
      const std::size_t e = sol.exterior_index();
      ri = region_integrals(sol, e, FieldPart::scattered, regions[e].r_in, sol.scene().calderon_radius());
      break;
    }
  }
  return std::sqrt(ri.field_sq + ri.curl_sq);
}

calderon::TangentialField modal_trace(const ModalSolution& sol, double radius, FieldPart part,
                                      calderon::TraceKind kind) {
  const std::size_t region = sol.region_of(radius);
  const bool exterior = region == sol.exterior_index();
  if (part == FieldPart::scattered && !exterior) {
    throw InvalidArgument("the scattered field is defined only outside the scatterer");
  }
  const Region& reg = sol.regions()[region];
  const auto rp = detail::solution_profile(sol, region, radius, exterior && part == FieldPart::scattered);
  const cplx to_h = reg.k / (kI * sol.scene().background_k() * reg.material.mu_r);
  calderon::TangentialField out(radius, sol.n_max(), kind);
  for (int n = 1; n <= sol.n_max(); ++n) {
    if (kind == calderon::TraceKind::electric) {
      out.at(n, Parity::te, 1) = rp.f_te[n];
      out.at(n, Parity::tm, 1) = rp.g_tm[n];
    } else {
      out.at(n, Parity::te, 1) = to_h * rp.g_te[n];
      out.at(n, Parity::tm, 1) = to_h * rp.f_tm[n];
    }
  }
  return out;
}

}  // namespace layermie
