#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <ostream>
#include <vector>

#include "layermie/calderon.hpp"
#include "layermie/mie.hpp"
#include "layermie/quadrature.hpp"

namespace layermie {

/// total: the physical field (incident plus scattered outside the scatterer).
/// scattered: the exterior scattered field, available only outside the scatterer.
enum class FieldPart { total, scattered };

struct FieldValue {
  Eigen::Vector3cd E;
  Eigen::Vector3cd H;
};

/// Fields at a lab-frame point. Throws AmbiguousRegion on an interface.
FieldValue eval_fields(const ModalSolution& sol, const Eigen::Vector3d& x, FieldPart part);
Eigen::Vector3cd eval_E(const ModalSolution& sol, const Eigen::Vector3d& x, FieldPart part);
Eigen::Vector3cd eval_H(const ModalSolution& sol, const Eigen::Vector3d& x, FieldPart part);

/// Fields from the expansion of one region; valid on its closed radial extent.
FieldValue eval_fields_in_region(const ModalSolution& sol, const Eigen::Vector3d& x, std::size_t region,
                                 FieldPart part);

/// Exact plane wave.
FieldValue eval_incident(const IncidentWave& w, const Eigen::Vector3d& x);

/// Plane wave from its regular multipole series truncated at n_max.
FieldValue eval_incident_series(const IncidentWave& w, int n_max, const Eigen::Vector3d& x);

/// Far-field samples on the nodes of a sphere quadrature, lab frame.
struct FarFieldSamples {
  std::vector<Eigen::Vector3d> directions;
  std::vector<double> theta;
  std::vector<double> phi;
  std::vector<double> weights;
  std::vector<Eigen::Vector3cd> values;
};

/// E_inf(x^) = (-i/k) sum_n (2n+1)/(n(n+1)) [ s_TE m_on + s_TM n_en ].
FarFieldSamples farfield_series(const ModalSolution& sol, const SphereQuadrature& quad);

/// E_inf at a single lab-frame direction.
Eigen::Vector3cd farfield_direction(const ModalSolution& sol, const Eigen::Vector3d& direction);

/// H_inf from the magnetic coefficients: (-i/k) sum_n (2n+1)/(n(n+1)) [ s_TE n_on - s_TM m_en ].
FarFieldSamples farfield_series_magnetic(const ModalSolution& sol, const SphereQuadrature& quad);

/// E_inf(x^) = (ik/4pi) x^ x int_{|y|=r} { nu x E^s + (nu x H^s) x x^ } e^{-ik x^.y} ds(y).
FarFieldSamples farfield_stratton_chu(const ModalSolution& sol, double surface_radius, const SphereQuadrature& surface,
                                      const SphereQuadrature& directions);

double l2_s2_norm(const FarFieldSamples& f);

/// L^2(S^2) norm of a - b; both sampled on the same nodes.
double l2_s2_distance(const FarFieldSamples& a, const FarFieldSamples& b);

/// ||E_inf||_{L^2(S^2)} from the coefficients: sqrt((2pi/k^2) sum (2n+1)(|s_TE|^2 + |s_TM|^2)).
double parseval_norm(const ModalSolution& sol);

/// CSV with columns theta, phi, weight, re_x, im_x, re_y, im_y, re_z, im_z.
void write_csv(std::ostream& os, const FarFieldSamples& f);

/// Region selector for hcurl_norm. The annulus B_R minus the scatterer carries the scattered field.
struct NormRegion {
  enum class Kind { core, shell, annulus };
  Kind kind;
  std::size_t shell = 0;

  static NormRegion core() { return {Kind::core, 0}; }
  static NormRegion shell_at(std::size_t i) { return {Kind::shell, i}; }
  static NormRegion annulus() { return {Kind::annulus, 0}; }
};

/// (||E||^2 + ||curl E||^2)^{1/2} over the region.
double hcurl_norm(const ModalSolution& sol, NormRegion region);

struct RegionIntegrals {
  double field_sq;  // ||E||^2
  double curl_sq;   // ||curl E||^2
};

/// Squared L^2 norms of E and curl E over region index `region` restricted to r in [r_lo, r_hi].
RegionIntegrals region_integrals(const ModalSolution& sol, std::size_t region, FieldPart part, double r_lo,
                                 double r_hi);

/// Per-n coefficients of a field on the mutually orthogonal patterns: tangential m, tangential n,
/// and the radial pattern cos(phi) sin(theta) pi_n r^ (or its sin(phi) twin). Over the unit
/// sphere one entry contributes N_t(n) (|m|^2 + |n|^2) + N_r(n) |radial|^2.
struct ModeDensity {
  cplx m_type{0.0, 0.0};
  cplx n_type{0.0, 0.0};
  cplx radial{0.0, 0.0};
};

/// Fills field[n] and curl[n], n = 1..n_max (entry 0 unused), at radius r.
using DensityProfile = std::function<void(double r, std::vector<ModeDensity>& field, std::vector<ModeDensity>& curl)>;

/// int_{r_lo}^{r_hi} r^2 sum_n [w_field |field_n|^2 + w_curl |curl_n|^2] dr by adaptive
/// Gauss-Kronrod on panels no wider than `panel`.
double radial_integral(double r_lo, double r_hi, int n_max, double panel, double w_field, double w_curl,
                       const DensityProfile& profile);

/// Surface measure of the radial pattern: 2 pi n(n+1)/(2n+1).
double radial_pattern_norm(int n);

/// x^ x E (electric) or x^ x H (magnetic) on |x| = radius in the rotated frame, computed from
/// the modal coefficients.
calderon::TangentialField modal_trace(const ModalSolution& sol, double radius, FieldPart part,
                                      calderon::TraceKind kind);

}  // namespace layermie
