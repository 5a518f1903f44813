#pragma once

// Pointwise synthesis of the rotated-frame modal series, shared by fields and verify.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "layermie/fields.hpp"
#include "layermie/mie.hpp"

namespace layermie::detail {

/// Radial data of one region at radius r. With rho = k r and amplitudes c_TE, c_TM the field is
///   E = sum_n [ f_te m_o + g_tm n_e + n(n+1) f_tm / rho cos(phi) sin(theta) pi_n r^ ]
///   curl E = k sum_n [ g_te n_o + n(n+1) f_te / rho sin(phi) sin(theta) pi_n r^ + f_tm m_e ]
/// where f = c (aP + bQ)/rho and g = c (aP' + bQ')/rho.
struct RadialProfile {
  int n_max = 0;
  cplx k;
  cplx rho;
  std::vector<cplx> f_te, g_te, f_tm, g_tm;
};

/// Mode amplitudes of the plane-wave family: c_TE = E_n, c_TM = -i E_n.
cplx mode_amplitude(int n, Parity p);

/// Profile of a ModalSolution in a region; `scattered_only` drops the regular exterior part.
RadialProfile solution_profile(const ModalSolution& sol, std::size_t region, double r, bool scattered_only);

/// Profile of regular waves psi_n(k r) with given TE/TM amplitudes (index n, entry 0 unused).
RadialProfile regular_profile(cplx k, double r, const std::vector<cplx>& c_te, const std::vector<cplx>& c_tm);

struct AngularData {
  double cos_t;
  double sin_t;
  std::vector<double> pi;
  std::vector<double> tau;
};
AngularData angular_data(int n_max, double cos_t);

/// E and curl E in Cartesian rotated-frame components.
struct Synth {
  Eigen::Vector3cd E;
  Eigen::Vector3cd curl;
};
Synth synthesize(const RadialProfile& rp, const AngularData& ad, double phi);

/// Radius clamped away from zero so the series terms stay well defined at the origin.
double safe_radius(double r);

void densities(const RadialProfile& rp, std::vector<ModeDensity>& field, std::vector<ModeDensity>& curl);

}  // namespace layermie::detail
