#include <cmath>
#include <random>

#include "doctest.h"
#include "layermie/errors.hpp"
#include "layermie/mie.hpp"
#include "oracle_values.hpp"

using namespace layermie;

namespace {

const IncidentWave kWave(double k) { return IncidentWave(Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(), k); }

template <class Table>
void check_against(const ModalSolution& sol, const Table& table, double tol) {
  double peak = 0.0;
  for (const auto& row : table) peak = std::max({peak, std::abs(row.s_te), std::abs(row.s_tm)});
  for (const auto& row : table) {
    CAPTURE(row.n);
    const cplx te = sol.s(row.n, Parity::te);
    const cplx tm = sol.s(row.n, Parity::tm);
    CHECK(std::abs(te - row.s_te) <= tol * std::max(std::abs(row.s_te), 1e-3 * peak));
    CHECK(std::abs(tm - row.s_tm) <= tol * std::max(std::abs(row.s_tm), 1e-3 * peak));
  }
}

ModalSolution pec_sphere(double ka, int n_max) {
  return solve_modes(LayeredScene(1.0, Pec{}, {}, ka, 1.5), kWave(ka), n_max);
}

ModalSolution dielectric_sphere(double ka, int n_max) {
  return solve_modes(LayeredScene(1.0, Material{{1.0, 0.0}, {2.25, 0.0}}, {}, ka, 1.5), kWave(ka), n_max);
}

}  // namespace

TEST_CASE("rotation frame") {
  CHECK((rotation_frame(Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX()) - Eigen::Matrix3d::Identity()).norm() ==
        0.0);
  const Eigen::Matrix3d R = rotation_frame(Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY());
  CHECK((R * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitZ()).norm() <= 1e-15);
  CHECK((R * Eigen::Vector3d::UnitY() - Eigen::Vector3d::UnitX()).norm() <= 1e-15);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int i = 0; i < 20; ++i) {
    Eigen::Vector3d d(g(rng), g(rng), g(rng));
    d.normalize();
    Eigen::Vector3d p = Eigen::Vector3d(g(rng), g(rng), g(rng)).cross(d).normalized();
    const Eigen::Matrix3d Q = rotation_frame(d, p);
    CHECK((Q * Q.transpose() - Eigen::Matrix3d::Identity()).norm() <= 1e-14);
    CHECK(Q.determinant() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((Q * d - Eigen::Vector3d::UnitZ()).norm() <= 1e-14);
    CHECK((Q * p - Eigen::Vector3d::UnitX()).norm() <= 1e-14);
  }
  CHECK_THROWS_AS(rotation_frame(Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitZ()), InvalidArgument);
}

TEST_CASE("truncation order") {
  CHECK(truncation_order(2.0, 1.0, 8) == 16);
  CHECK(truncation_order(1e-12, 1.0, 8) == 9);
  for (double kr : {0.1, 1.0, 7.0, 40.0}) {
    CHECK(truncation_order(kr, 1.0, 16) >= truncation_order(kr, 1.0, 8));
  }
  CHECK(truncation_order(1e4, 1.0) == 512);
}

TEST_CASE("PEC sphere matches the boundary-matching oracle") {
  check_against(pec_sphere(oracle::kPecKa05, int(oracle::kPecSphereKa05.size())), oracle::kPecSphereKa05, 1e-10);
  check_against(pec_sphere(oracle::kPecKa1, int(oracle::kPecSphereKa1.size())), oracle::kPecSphereKa1, 1e-10);
  check_against(pec_sphere(oracle::kPecKa5, int(oracle::kPecSphereKa5.size())), oracle::kPecSphereKa5, 1e-10);
}

TEST_CASE("dielectric sphere matches the two-medium oracle") {
  check_against(dielectric_sphere(oracle::kPecKa05, int(oracle::kDielectricSphereKa05.size())),
                oracle::kDielectricSphereKa05, 1e-10);
  check_against(dielectric_sphere(oracle::kPecKa1, int(oracle::kDielectricSphereKa1.size())),
                oracle::kDielectricSphereKa1, 1e-10);
  check_against(dielectric_sphere(oracle::kPecKa5, int(oracle::kDielectricSphereKa5.size())),
                oracle::kDielectricSphereKa5, 1e-10);
}
