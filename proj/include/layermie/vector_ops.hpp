#pragma once

#include <Eigen/Dense>
#include <complex>

namespace layermie {

/// Bilinear cross product of complex 3-vectors. Eigen's cross() conjugates complex results.
inline Eigen::Vector3cd cross(const Eigen::Vector3cd& a, const Eigen::Vector3cd& b) {
  return {a.y() * b.z() - a.z() * b.y(), a.z() * b.x() - a.x() * b.z(), a.x() * b.y() - a.y() * b.x()};
}

}  // namespace layermie
