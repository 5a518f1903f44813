#include "synthesis.hpp"

#include <cmath>

#include "layermie/specfun.hpp"

namespace layermie::detail {

namespace {
constexpr cplx kI{0.0, 1.0};
}

cplx mode_amplitude(int n, Parity p) {
  static constexpr cplx kPow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const cplx en = kPow[n % 4] * ((2.0 * n + 1.0) / (double(n) * (n + 1)));
  return p == Parity::te ? en : -kI * en;
}

double safe_radius(double r) { return std::max(r, 1e-12); }

RadialProfile solution_profile(const ModalSolution& sol, std::size_t region, double r, bool scattered_only) {
  const Region& reg = sol.regions()[region];
  const int nmax = sol.n_max();
  r = safe_radius(r);
  RadialProfile rp;
  rp.n_max = nmax;
  rp.k = reg.k;
  rp.rho = reg.k * r;
  rp.f_te.assign(nmax + 1, 0.0);
  rp.g_te.assign(nmax + 1, 0.0);
  rp.f_tm.assign(nmax + 1, 0.0);
  rp.g_tm.assign(nmax + 1, 0.0);
  if (reg.field_free) return rp;
  const bool exterior = region == sol.exterior_index();
  const RadialBasis b = radial_basis(reg, r, nmax, region != 0);
  for (int n = 1; n <= nmax; ++n) {
    for (Parity p : {Parity::te, Parity::tm}) {
      const RadialCoefficients& c = sol.coefficients(n, p, region);
      const cplx a = (exterior && scattered_only) ? cplx{0.0, 0.0} : c.regular;
      cplx val = a * b.P[n];
      cplx der = a * b.dP[n];
      if (region != 0) {
        val += c.outgoing * b.Q[n];
        der += c.outgoing * b.dQ[n];
      }
      const cplx amp = mode_amplitude(n, p) / rp.rho;
      if (p == Parity::te) {
        rp.f_te[n] = amp * val;
        rp.g_te[n] = amp * der;
      } else {
        rp.f_tm[n] = amp * val;
        rp.g_tm[n] = amp * der;
      }
    }
  }
  return rp;
}

RadialProfile regular_profile(cplx k, double r, const std::vector<cplx>& c_te, const std::vector<cplx>& c_tm) {
  const int nmax = static_cast<int>(c_te.size()) - 1;
  r = safe_radius(r);
  RadialProfile rp;
  rp.n_max = nmax;
  rp.k = k;
  rp.rho = k * r;
  const auto psi = specfun::riccati_scaled(specfun::RiccatiKind::psi, nmax, rp.rho);
  const double unscale = std::exp(std::abs(rp.rho.imag()));
  rp.f_te.assign(nmax + 1, 0.0);
  rp.g_te.assign(nmax + 1, 0.0);
  rp.f_tm.assign(nmax + 1, 0.0);
  rp.g_tm.assign(nmax + 1, 0.0);
  for (int n = 1; n <= nmax; ++n) {
    const cplx val = psi.value[n] * unscale / rp.rho;
    const cplx der = psi.derivative[n] * unscale / rp.rho;
    rp.f_te[n] = c_te[n] * val;
    rp.g_te[n] = c_te[n] * der;
    rp.f_tm[n] = c_tm[n] * val;
    rp.g_tm[n] = c_tm[n] * der;
  }
  return rp;
}

AngularData angular_data(int n_max, double cos_t) {
  AngularData ad;
  ad.cos_t = std::clamp(cos_t, -1.0, 1.0);
  ad.sin_t = std::sqrt(std::max(0.0, 1.0 - ad.cos_t * ad.cos_t));
  ad.pi.resize(n_max + 1);
  ad.tau.resize(n_max + 1);
  specfun::mie_angular_table(n_max, ad.cos_t, ad.pi, ad.tau);
  return ad;
}

Synth synthesize(const RadialProfile& rp, const AngularData& ad, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  const double st = ad.sin_t, ct = ad.cos_t;
  cplx er{0.0, 0.0}, et{0.0, 0.0}, ep{0.0, 0.0};
  cplx cr{0.0, 0.0}, ctt{0.0, 0.0}, cp{0.0, 0.0};
  for (int n = 1; n <= rp.n_max; ++n) {
    const double pi = ad.pi[n], tau = ad.tau[n];
    const double nn = double(n) * (n + 1);
    et += rp.f_te[n] * (c * pi) + rp.g_tm[n] * (c * tau);
    ep += rp.f_te[n] * (-s * tau) + rp.g_tm[n] * (-s * pi);
    er += nn * rp.f_tm[n] / rp.rho * (c * st * pi);
    ctt += rp.g_te[n] * (s * tau) + rp.f_tm[n] * (-s * pi);
    cp += rp.g_te[n] * (c * pi) + rp.f_tm[n] * (-c * tau);
    cr += nn * rp.f_te[n] / rp.rho * (s * st * pi);
  }
  const Eigen::Vector3d rh(st * c, st * s, ct), th(ct * c, ct * s, -st), ph(-s, c, 0.0);
  Synth out;
  out.E = rh.cast<cplx>() * er + th.cast<cplx>() * et + ph.cast<cplx>() * ep;
  out.curl = rp.k * (rh.cast<cplx>() * cr + th.cast<cplx>() * ctt + ph.cast<cplx>() * cp);
  return out;
}

void densities(const RadialProfile& rp, std::vector<ModeDensity>& field, std::vector<ModeDensity>& curl) {
  field.assign(rp.n_max + 1, ModeDensity{});
  curl.assign(rp.n_max + 1, ModeDensity{});
  for (int n = 1; n <= rp.n_max; ++n) {
    const double nn = double(n) * (n + 1);
    field[n] = {rp.f_te[n], rp.g_tm[n], nn * rp.f_tm[n] / rp.rho};
    curl[n] = {rp.k * rp.f_tm[n], rp.k * rp.g_te[n], rp.k * nn * rp.f_te[n] / rp.rho};
  }
}

}  // namespace layermie::detail
