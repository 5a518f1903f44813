#include "layermie/mie.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <string>

#include "layermie/errors.hpp"
#include "layermie/specfun.hpp"

namespace layermie {

namespace {

using specfun::RiccatiKind;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

const char* parity_name(Parity p) { return p == Parity::te ? "TE" : "TM"; }

}  // namespace

ModalSolution::ModalSolution(LayeredScene scene, IncidentWave incidence, int n_max, Eigen::Matrix3d rotation,
                             std::vector<Region> regions)
    : scene_(std::move(scene)),
      incidence_(std::move(incidence)),
      n_max_(n_max),
      rotation_(rotation),
      regions_(std::move(regions)),
      coeffs_(static_cast<std::size_t>(2 * n_max) * regions_.size()) {}

std::size_t ModalSolution::slot(int n, Parity p, std::size_t region) const {
  if (n < 1 || n > n_max_ || region >= regions_.size()) {
    throw InvalidArgument("mode (" + std::to_string(n) + ", region " + std::to_string(region) + ") out of range");
  }
  return (static_cast<std::size_t>(n - 1) * 2 + static_cast<std::size_t>(p)) * regions_.size() + region;
}

const RadialCoefficients& ModalSolution::coefficients(int n, Parity p, std::size_t region) const {
  return coeffs_[slot(n, p, region)];
}

void ModalSolution::set_coefficients(int n, Parity p, std::size_t region, RadialCoefficients c) {
  coeffs_[slot(n, p, region)] = c;
}

std::size_t ModalSolution::region_of(double r) const {
  for (std::size_t j = 0; j < regions_.size(); ++j) {
    const double rout = regions_[j].r_out;
    if (std::isfinite(rout) && std::abs(r - rout) <= 1e-12 * std::max(1.0, rout)) {
      throw AmbiguousRegion("point lies on the interface r = " + std::to_string(rout));
    }
    if (r < rout) return j;
  }
  return regions_.size() - 1;
}

Eigen::Matrix3d rotation_frame(const Eigen::Vector3d& d, const Eigen::Vector3d& p) {
  if (!d.allFinite() || !p.allFinite() || std::abs(d.norm() - 1.0) > 1e-12 || std::abs(p.norm() - 1.0) > 1e-12 ||
      std::abs(d.dot(p)) > 1e-12) {
    throw InvalidArgument("rotation_frame needs orthonormal d and p");
  }
  Eigen::Matrix3d R;
  R.row(0) = p.transpose();
  R.row(1) = d.cross(p).transpose();
  R.row(2) = d.transpose();
  return R;
}

int truncation_order(double k, double r, int safety) {
  if (!(k > 0.0) || !(r > 0.0)) throw InvalidArgument("truncation_order needs k > 0 and r > 0");
  const double x = k * r;
  const double n = std::ceil(x + 4.0 * std::cbrt(x)) + safety;
  return static_cast<int>(std::min<double>(n, specfun::kMaxOrder));
}

int default_truncation(const LayeredScene& scene) {
  return truncation_order(scene.background_k(), scene.calderon_radius());
}

std::vector<Region> build_regions(const LayeredScene& scene) {
  const double k = scene.background_k();
  std::vector<Region> out;
  if (const auto* m = std::get_if<Material>(&scene.core())) {
    out.push_back({0.0, scene.core_radius(), k * m->index(), *m, false});
  } else {
    out.push_back({0.0, scene.core_radius(), cplx{k, 0.0}, Material::vacuum(), true});
  }
  double inner = scene.core_radius();
  for (const auto& s : scene.shells()) {
    out.push_back({inner, s.outer_radius, k * s.material.index(), s.material, false});
    inner = s.outer_radius;
  }
  out.push_back({inner, std::numeric_limits<double>::infinity(), cplx{k, 0.0}, Material::vacuum(), false});
  return out;
}

RadialBasis radial_basis(const Region& region, double r, int n_max, bool with_outgoing) {
  const cplx z = region.k * r;
  const double ik = region.k.imag();
  RadialBasis b;
  const auto psi = specfun::riccati_scaled(RiccatiKind::psi, n_max, z);
  const double preg = ik == 0.0 ? 1.0 : std::exp(std::abs(ik) * (r - region.r_out));
  b.P.resize(n_max + 1);
  b.dP.resize(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    b.P[n] = psi.value[n] * preg;
    b.dP[n] = psi.derivative[n] * preg;
  }
  if (with_outgoing) {
    const auto xi = specfun::riccati_scaled(RiccatiKind::xi, n_max, z);
    const double pout = ik == 0.0 ? 1.0 : std::exp(ik * (region.r_in - r));
    b.Q.resize(n_max + 1);
    b.dQ.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      b.Q[n] = xi.value[n] * pout;
      b.dQ[n] = xi.derivative[n] * pout;
    }
  }
  return b;
}

namespace {

// Quantities continuous across a penetrable interface, as linear forms in (a, b):
//   TE: (aP + bQ)/k,  (aP' + bQ')/mu     TM: (aP' + bQ')/k,  (aP + bQ)/mu
struct TraceRow {
  cplx reg[2];
  cplx out[2];
};

TraceRow traces(Parity p, const Region& reg, const RadialBasis& b, int n) {
  const cplx k = reg.k;
  const cplx mu = reg.material.mu_r;
  TraceRow t{};
  const bool has_q = !b.Q.empty();
  if (p == Parity::te) {
    t.reg[0] = b.P[n] / k;
    t.reg[1] = b.dP[n] / mu;
    if (has_q) {
      t.out[0] = b.Q[n] / k;
      t.out[1] = b.dQ[n] / mu;
    }
  } else {
    t.reg[0] = b.dP[n] / k;
    t.reg[1] = b.P[n] / mu;
    if (has_q) {
      t.out[0] = b.dQ[n] / k;
      t.out[1] = b.Q[n] / mu;
    }
  }
  return t;
}

struct ModeSystem {
  MatrixXcd A;
  VectorXcd rhs;
  std::vector<int> reg_index;  // unknown index of the regular amplitude per region, -1 if none
  std::vector<int> out_index;
};

// Equilibrate rows and columns, solve, and estimate the condition number of the scaled matrix.
VectorXcd solve_equilibrated(MatrixXcd A, VectorXcd rhs, double& condition) {
  const Eigen::Index m = A.rows();
  Eigen::VectorXd col_scale = Eigen::VectorXd::Ones(m);
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const double s = A.row(i).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        A.row(i) /= s;
        rhs(i) /= s;
      }
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      const double s = A.col(j).cwiseAbs().maxCoeff();
      if (s > 0.0) {
        A.col(j) /= s;
        col_scale(j) /= s;
      }
    }
  }
  Eigen::JacobiSVD<MatrixXcd> svd(A);
  const auto& sv = svd.singularValues();
  const double smin = sv(sv.size() - 1);
  condition = smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
  VectorXcd x = A.fullPivLu().solve(rhs);
  return col_scale.cast<cplx>().cwiseProduct(x);
}

}  // namespace

ModalSolution solve_modes(const LayeredScene& scene, const IncidentWave& incidence, int n_max) {
  if (n_max < 1 || n_max > specfun::kMaxOrder) {
    throw InvalidArgument("n_max must lie in [1, " + std::to_string(specfun::kMaxOrder) + "]");
  }
  if (std::abs(incidence.k - scene.background_k()) > 1e-12 * scene.background_k()) {
    throw InvalidArgument("incidence k differs from the scene background k");
  }
  const std::vector<Region> regions = build_regions(scene);
  ModalSolution sol(scene, incidence, n_max, rotation_frame(incidence.d, incidence.p), regions);
  const std::size_t nreg = regions.size();
  const std::size_t ext = nreg - 1;
  const bool obstacle = regions[0].field_free;
  const bool pec = std::holds_alternative<Pec>(scene.core());

  // Unknown layout: core regular (penetrable only), then (regular, outgoing) per shell, then s.
  std::vector<int> reg_index(nreg, -1), out_index(nreg, -1);
  int m = 0;
  if (!obstacle) reg_index[0] = m++;
  for (std::size_t j = 1; j < ext; ++j) {
    reg_index[j] = m++;
    out_index[j] = m++;
  }
  out_index[ext] = m++;

  // Radial bases at every interface, from both sides.
  std::vector<RadialBasis> inner_side(nreg - 1), outer_side(nreg - 1);
  for (std::size_t i = 0; i + 1 < nreg; ++i) {
    const double r = regions[i].r_out;
    if (!regions[i].field_free) inner_side[i] = radial_basis(regions[i], r, n_max, i != 0);
    outer_side[i] = radial_basis(regions[i + 1], r, n_max, true);
  }

  double max_cond = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    for (Parity p : {Parity::te, Parity::tm}) {
      MatrixXcd A = MatrixXcd::Zero(m, m);
      VectorXcd rhs = VectorXcd::Zero(m);
      int row = 0;
      for (std::size_t i = 0; i + 1 < nreg; ++i) {
        const TraceRow outer = traces(p, regions[i + 1], outer_side[i], n);
        const bool ext_side = (i + 1 == ext);
        if (i == 0 && obstacle) {
          // Trace component 0 is tangential E, component 1 tangential H, for both parities.
          const int comp = pec ? 0 : 1;
          if (ext_side) {
            rhs(row) -= outer.reg[comp];
          } else {
            A(row, reg_index[1]) += outer.reg[comp];
          }
          A(row, out_index[i + 1]) += outer.out[comp];
          ++row;
          continue;
        }
        const TraceRow inner = traces(p, regions[i], inner_side[i], n);
        for (int comp = 0; comp < 2; ++comp) {
          A(row, reg_index[i]) += inner.reg[comp];
          if (out_index[i] >= 0) A(row, out_index[i]) += inner.out[comp];
          if (ext_side) {
            rhs(row) += outer.reg[comp];
          } else {
            A(row, reg_index[i + 1]) -= outer.reg[comp];
          }
          A(row, out_index[i + 1]) -= outer.out[comp];
          ++row;
        }
      }

      double cond = 0.0;
      const VectorXcd x = solve_equilibrated(A, rhs, cond);
      if (!(cond <= kResonanceCondition)) {
        throw NumericalResonance("mode n = " + std::to_string(n) + " (" + parity_name(p) +
                                     ") is numerically resonant: condition number " + std::to_string(cond),
                                 n, static_cast<int>(p), cond);
      }
      max_cond = std::max(max_cond, cond);
      for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!finite(x(i))) {
          throw RangeError("non-finite modal coefficient for n = " + std::to_string(n) + " (" + parity_name(p) + ")");
        }
      }
      for (std::size_t j = 0; j < nreg; ++j) {
        RadialCoefficients c;
        if (reg_index[j] >= 0) c.regular = x(reg_index[j]);
        if (out_index[j] >= 0) c.outgoing = x(out_index[j]);
        if (j == ext) c.regular = 1.0;
        sol.set_coefficients(n, p, j, c);
      }
    }
  }
  sol.set_max_condition(max_cond);
  return sol;
}

}  // namespace layermie
