#include "layermie/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "layermie/errors.hpp"

namespace layermie {

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw InvalidArgument("Gauss-Legendre rule needs at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  // Legendre P_n and its derivative at x.
  auto legendre = [n](double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    return std::pair{p1, dp};
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

SphereQuadrature::SphereQuadrature(int order) : order_(order) {
  if (order < 1) throw InvalidArgument("sphere quadrature order must be >= 1");
  const GaussRule gl = gauss_legendre(order);
  const int nphi = 2 * order;
  const double dphi = 2.0 * std::numbers::pi / nphi;
  cos_theta_ = gl.nodes;
  nodes_.reserve(static_cast<std::size_t>(order) * nphi);
  for (int i = 0; i < order; ++i) {
    // Nodes run from cos(theta) = -1 upward; store theta ascending instead.
    const double ct = gl.nodes[order - 1 - i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    const double theta = std::acos(ct);
    for (int j = 0; j < nphi; ++j) {
      const double phi = j * dphi;
      nodes_.push_back(
          {Eigen::Vector3d(st * std::cos(phi), st * std::sin(phi), ct), theta, phi, gl.weights[order - 1 - i] * dphi});
    }
  }
  for (int i = 0; i < order; ++i) cos_theta_[i] = gl.nodes[order - 1 - i];
}

}  // namespace layermie
