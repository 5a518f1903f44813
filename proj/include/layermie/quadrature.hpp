#pragma once

#include <Eigen/Dense>
#include <vector>

namespace layermie {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
GaussRule gauss_legendre(int n, double a = -1.0, double b = 1.0);

/// Gauss-Legendre in cos(theta) times uniform phi: `order` polar nodes, 2*order azimuthal nodes.
/// Integrates spherical harmonics of degree <= 2*order - 1 exactly.
class SphereQuadrature {
 public:
  struct Node {
    Eigen::Vector3d direction;
    double theta;
    double phi;
    double weight;
  };

  explicit SphereQuadrature(int order);

  int order() const { return order_; }
  int n_theta() const { return order_; }
  int n_phi() const { return 2 * order_; }
  int exact_degree() const { return 2 * order_ - 1; }
  std::size_t size() const { return nodes_.size(); }

  /// Nodes ordered theta-major: index = i_theta * n_phi() + i_phi.
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<double>& cos_theta() const { return cos_theta_; }

 private:
  int order_;
  std::vector<double> cos_theta_;
  std::vector<Node> nodes_;
};

/// Quadrature order used for a modal series truncated at n_max.
inline int default_sphere_order(int n_max) { return 2 * n_max + 8; }

}  // namespace layermie
