#pragma once

#include <Eigen/Dense>
#include <complex>
#include <variant>
#include <vector>

namespace layermie {

using cplx = std::complex<double>;

/// Relative permeability and permittivity of a homogeneous layer.
struct Material {
  cplx mu_r{1.0, 0.0};
  cplx eps_r{1.0, 0.0};

  static Material vacuum() { return {}; }

  /// Throws InvalidArgument unless Re > 0 and Im >= 0 for both parameters.
  void validate(const char* field = "material") const;

  /// sqrt(mu_r eps_r) on the branch with Im >= 0.
  cplx index() const;

  bool operator==(const Material&) const = default;
};

struct Pec {
  bool operator==(const Pec&) const = default;
};
struct Pmc {
  bool operator==(const Pmc&) const = default;
};

/// Core boundary condition or filling.
using CoreKind = std::variant<Pec, Pmc, Material>;

enum class ObstacleKind { pec, pmc };

inline bool is_penetrable(const CoreKind& c) { return std::holds_alternative<Material>(c); }

struct Shell {
  double outer_radius;
  Material material;

  bool operator==(const Shell&) const = default;
};

/// Lower and upper bounds on the shell parameters: gamma1 <= Re mu_r <= gamma2, Re eps_r >= gamma.
struct ShellBounds {
  double gamma1;
  double gamma2;
  double gamma;
};

/// Concentric core and shells in vacuum, with an artificial sphere of radius R enclosing them.
class LayeredScene {
 public:
  LayeredScene(double core_radius, CoreKind core, std::vector<Shell> shells, double background_k,
               double calderon_radius);

  double core_radius() const { return core_radius_; }
  const CoreKind& core() const { return core_; }
  const std::vector<Shell>& shells() const { return shells_; }
  double background_k() const { return k_; }
  double calderon_radius() const { return R_; }

  /// Radius of the outermost material interface (the scatterer Omega).
  double outer_radius() const;

  /// Bounds recorded from the shell materials; all ones when there are no shells.
  ShellBounds shell_bounds() const;

  LayeredScene with_core(CoreKind core) const;

 private:
  double core_radius_;
  CoreKind core_;
  std::vector<Shell> shells_;
  double k_;
  double R_;
};

/// Plane wave E^i = p e^{ik x.d}, H^i = (d x p) e^{ik x.d}.
struct IncidentWave {
  IncidentWave(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization, double k);

  Eigen::Vector3d d;
  Eigen::Vector3d p;
  double k;
};

struct DeltaParams {
  DeltaParams(double delta, double eta0, double tau0);

  double delta;
  double eta0;
  double tau0;
};

/// Core filling replacing an obstacle: PMC -> (1/delta, eta0 + i tau0), PEC -> (delta, eta0 + i tau0/delta).
Material effective_material(ObstacleKind kind, const DeltaParams& params);

/// Scene with its PEC/PMC core replaced by the effective filling; shells untouched.
LayeredScene realize_scene(const LayeredScene& scene, const DeltaParams& params);

/// Smallest delta accepted by realize_scene.
inline constexpr double kMinDelta = 1e-8;

}  // namespace layermie
