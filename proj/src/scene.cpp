#include "layermie/scene.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "layermie/errors.hpp"

namespace layermie {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_positive(double v, const std::string& field) {
  if (!std::isfinite(v) || v <= 0.0) throw InvalidArgument(field + " must be a positive finite number");
}

}  // namespace

void Material::validate(const char* field) const {
  const std::string f(field);
  if (!finite(mu_r) || !finite(eps_r)) throw InvalidArgument(f + ": mu and eps must be finite");
  if (mu_r.real() <= 0.0 || mu_r.imag() < 0.0) throw InvalidArgument(f + ".mu: need Re > 0 and Im >= 0");
  if (eps_r.real() <= 0.0 || eps_r.imag() < 0.0) throw InvalidArgument(f + ".eps: need Re > 0 and Im >= 0");
}

cplx Material::index() const {
  cplx n = std::sqrt(mu_r * eps_r);
  if (n.imag() < 0.0) n = -n;
  return n;
}

LayeredScene::LayeredScene(double core_radius, CoreKind core, std::vector<Shell> shells, double background_k,
                           double calderon_radius)
    : core_radius_(core_radius),
      core_(std::move(core)),
      shells_(std::move(shells)),
      k_(background_k),
      R_(calderon_radius) {
  require_positive(core_radius_, "core_radius");
  require_positive(k_, "k");
  require_positive(R_, "R");
  if (const auto* m = std::get_if<Material>(&core_)) m->validate("core_material");
  double inner = core_radius_;
  for (std::size_t i = 0; i < shells_.size(); ++i) {
    const std::string field = "shells[" + std::to_string(i) + "]";
    require_positive(shells_[i].outer_radius, field + ".radius");
    if (shells_[i].outer_radius <= inner) {
      throw InvalidArgument(i == 0 ? "core_radius must be smaller than shells[0].radius"
                                   : field + ".radius must exceed the previous shell radius");
    }
    shells_[i].material.validate(field.c_str());
    inner = shells_[i].outer_radius;
  }
  if (!(R_ > inner)) {
    throw InvalidArgument(shells_.empty() ? "R must exceed core_radius" : "R must exceed the outer shell radius");
  }
}

double LayeredScene::outer_radius() const { return shells_.empty() ? core_radius_ : shells_.back().outer_radius; }

ShellBounds LayeredScene::shell_bounds() const {
  if (shells_.empty()) return {1.0, 1.0, 1.0};
  ShellBounds b{shells_[0].material.mu_r.real(), shells_[0].material.mu_r.real(), shells_[0].material.eps_r.real()};
  for (const auto& s : shells_) {
    b.gamma1 = std::min(b.gamma1, s.material.mu_r.real());
    b.gamma2 = std::max(b.gamma2, s.material.mu_r.real());
    b.gamma = std::min(b.gamma, s.material.eps_r.real());
  }
  return b;
}

LayeredScene LayeredScene::with_core(CoreKind core) const {
  return LayeredScene(core_radius_, std::move(core), shells_, k_, R_);
}

IncidentWave::IncidentWave(const Eigen::Vector3d& direction, const Eigen::Vector3d& polarization, double wavenumber)
    : d(direction), p(polarization), k(wavenumber) {
  if (!d.allFinite() || !p.allFinite()) throw InvalidArgument("incidence: d and p must be finite");
  if (std::abs(d.norm() - 1.0) > 1e-12) throw InvalidArgument("incidence.d must be a unit vector");
  if (std::abs(p.norm() - 1.0) > 1e-12) throw InvalidArgument("incidence.p must be a unit vector");
  if (std::abs(d.dot(p)) > 1e-12) throw InvalidArgument("incidence: d and p must be orthogonal");
  require_positive(k, "k");
}

DeltaParams::DeltaParams(double delta_, double eta0_, double tau0_) : delta(delta_), eta0(eta0_), tau0(tau0_) {
  require_positive(delta, "delta");
  require_positive(eta0, "eta0");
  require_positive(tau0, "tau0");
}

Material effective_material(ObstacleKind kind, const DeltaParams& p) {
  if (kind == ObstacleKind::pmc) return {cplx{1.0 / p.delta, 0.0}, cplx{p.eta0, p.tau0}};
  return {cplx{p.delta, 0.0}, cplx{p.eta0, p.tau0 / p.delta}};
}

LayeredScene realize_scene(const LayeredScene& scene, const DeltaParams& params) {
  if (params.delta < kMinDelta) {
    throw RangeError("delta = " + std::to_string(params.delta) + " is below the supported minimum 1e-8");
  }
  if (std::holds_alternative<Pec>(scene.core())) {
    return scene.with_core(effective_material(ObstacleKind::pec, params));
  }
  if (std::holds_alternative<Pmc>(scene.core())) {
    return scene.with_core(effective_material(ObstacleKind::pmc, params));
  }
  throw PreconditionError("realize_scene requires a PEC or PMC core");
}

}  // namespace layermie
