#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "layermie/scene.hpp"

namespace layermie {

/// TE: electric field of M type. TM: electric field of N type.
enum class Parity { te = 0, tm = 1 };

struct Mode {
  int n;
  Parity parity;
};

/// Homogeneous radial region. Region 0 is the core, the last one the vacuum exterior.
struct Region {
  double r_in;
  double r_out;  // +inf for the exterior
  cplx k;        // local wavenumber k sqrt(mu eps), Im >= 0
  Material material;
  bool field_free;  // interior of a PEC/PMC core
};

/// Region-local radial bases, with derivatives taken with respect to the argument k_j r:
///   P_n(r) = psi_n(k_j r) e^{-|Im k_j| r_out},   Q_n(r) = xi_n(k_j r) e^{Im k_j r_in}.
/// Both are O(1) across the region even when |Im k_j| r is large.
struct RadialBasis {
  std::vector<cplx> P, dP, Q, dQ;
};
RadialBasis radial_basis(const Region& region, double r, int n_max, bool with_outgoing = true);

/// Amplitudes of P and Q inside one region.
struct RadialCoefficients {
  cplx regular{0.0, 0.0};
  cplx outgoing{0.0, 0.0};
};

/// Rotated-frame modal representation of the total field.
///
/// In region j, with E_n = i^n (2n+1) / (n(n+1)),
///   E = sum_n E_n [ (a_TE P + b_TE Q) M_o1n / rho  - i (a_TM P + b_TM Q) N_e1n / rho ]   (schematically)
/// where M_o1n, N_e1n are the Bohren-Huffman vector spherical harmonics built on the radial
/// factors. In the exterior a = 1 (the incident wave) and b = s, the scattering coefficient; a
/// lossless scene satisfies |1 + 2 s| = 1. In Bohren-Huffman notation s_TE = -b_n, s_TM = -a_n.
class ModalSolution {
 public:
  ModalSolution(LayeredScene scene, IncidentWave incidence, int n_max, Eigen::Matrix3d rotation,
                std::vector<Region> regions);

  const LayeredScene& scene() const { return scene_; }
  const IncidentWave& incidence() const { return incidence_; }
  int n_max() const { return n_max_; }
  /// Rows p, d x p, d: maps d to z and p to x.
  const Eigen::Matrix3d& rotation() const { return rotation_; }
  const std::vector<Region>& regions() const { return regions_; }
  std::size_t exterior_index() const { return regions_.size() - 1; }

  const RadialCoefficients& coefficients(int n, Parity p, std::size_t region) const;
  void set_coefficients(int n, Parity p, std::size_t region, RadialCoefficients c);

  /// Exterior outgoing amplitude.
  cplx s(int n, Parity p) const { return coefficients(n, p, exterior_index()).outgoing; }

  /// Largest equilibrated condition number over all per-mode systems.
  double max_condition() const { return max_condition_; }
  void set_max_condition(double c) { max_condition_ = c; }

  /// Index of the region containing radius r; throws AmbiguousRegion within 1e-12 of an interface.
  std::size_t region_of(double r) const;

 private:
  std::size_t slot(int n, Parity p, std::size_t region) const;

  LayeredScene scene_;
  IncidentWave incidence_;
  int n_max_;
  Eigen::Matrix3d rotation_;
  std::vector<Region> regions_;
  std::vector<RadialCoefficients> coeffs_;
  double max_condition_ = 1.0;
};

/// Rotation taking d to z and p to x.
Eigen::Matrix3d rotation_frame(const Eigen::Vector3d& d, const Eigen::Vector3d& p);

/// ceil(kr + 4 (kr)^{1/3}) + safety, clamped to the maximum Bessel order.
int truncation_order(double k, double r, int safety = 8);

/// Truncation used when none is given: enough for fields up to the artificial sphere.
int default_truncation(const LayeredScene& scene);

std::vector<Region> build_regions(const LayeredScene& scene);

/// Condition-number threshold above which a per-mode system is reported as resonant.
inline constexpr double kResonanceCondition = 1e12;

ModalSolution solve_modes(const LayeredScene& scene, const IncidentWave& incidence, int n_max);

}  // namespace layermie
