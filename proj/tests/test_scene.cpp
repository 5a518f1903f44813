#include <cmath>

#include "doctest.h"
#include "layermie/errors.hpp"
#include "layermie/scene.hpp"

using namespace layermie;

namespace {

LayeredScene reference(CoreKind core) {
  return LayeredScene(0.5, core, {Shell{1.0, Material{{1.0, 0.0}, {2.0, 0.5}}}}, 2.0, 1.5);
}

}  // namespace

TEST_CASE("effective materials") {
  const Material pmc = effective_material(ObstacleKind::pmc, DeltaParams(0.01, 1.0, 1.0));
  CHECK(pmc.mu_r == cplx{100.0, 0.0});
  CHECK(pmc.eps_r == cplx{1.0, 1.0});
  const Material pec = effective_material(ObstacleKind::pec, DeltaParams(0.1, 2.0, 3.0));
  CHECK(pec.mu_r == cplx{0.1, 0.0});
  CHECK(std::abs(pec.eps_r - cplx{2.0, 30.0}) <= 1e-13);
  const Material one = effective_material(ObstacleKind::pmc, DeltaParams(1.0, 1.0, 1.0));
  CHECK(one.mu_r == cplx{1.0, 0.0});
  CHECK(one.eps_r == cplx{1.0, 1.0});
}

TEST_CASE("PMC and PEC permeabilities are reciprocal and materials stay admissible") {
  for (double delta : {1.0, 0.3, 1e-2, 1e-5, 1e-8}) {
    const DeltaParams p(delta, 1.5, 0.7);
    const Material a = effective_material(ObstacleKind::pmc, p);
    const Material b = effective_material(ObstacleKind::pec, p);
    CHECK(std::abs(a.mu_r * b.mu_r - 1.0) <= 1e-14);
    CHECK_NOTHROW(a.validate());
    CHECK_NOTHROW(b.validate());
    CHECK(a.index().imag() >= 0.0);
    CHECK(b.index().imag() >= 0.0);
  }
}

TEST_CASE("realize_scene replaces only the core") {
  const LayeredScene s = reference(Pmc{});
  const LayeredScene r = realize_scene(s, DeltaParams(0.01, 1.0, 1.0));
  REQUIRE(is_penetrable(r.core()));
  CHECK(std::get<Material>(r.core()) == Material{{100.0, 0.0}, {1.0, 1.0}});
  CHECK(r.shells() == s.shells());
  CHECK(r.core_radius() == s.core_radius());
  CHECK(r.calderon_radius() == s.calderon_radius());

  const LayeredScene e = realize_scene(reference(Pec{}), DeltaParams(0.5, 1.0, 1.0));
  CHECK(std::get<Material>(e.core()) == Material{{0.5, 0.0}, {1.0, 2.0}});

  const LayeredScene r2 = realize_scene(s, DeltaParams(0.3, 1.0, 1.0));
  CHECK(r2.shells() == r.shells());
}

TEST_CASE("realize_scene error paths") {
  CHECK_THROWS_AS(realize_scene(reference(Material{}), DeltaParams(0.1, 1.0, 1.0)), PreconditionError);
  CHECK_THROWS_AS(realize_scene(reference(Pmc{}), DeltaParams(1e-9, 1.0, 1.0)), RangeError);
  CHECK_THROWS_AS(DeltaParams(0.0, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(DeltaParams(0.1, -1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(DeltaParams(0.1, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("scene validation names the offending field") {
  try {
    LayeredScene(1.2, Pec{}, {Shell{1.0, Material{}}}, 1.0, 2.0);
    FAIL("expected a validation error");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("core_radius") != std::string::npos);
  }
  CHECK_THROWS_AS(LayeredScene(0.5, Pec{}, {Shell{1.0, Material{}}}, 1.0, 0.9), InvalidArgument);
  CHECK_THROWS_AS(LayeredScene(0.5, Pec{}, {}, -1.0, 0.9), InvalidArgument);
  CHECK_THROWS_AS(LayeredScene(0.5, Pec{}, {Shell{1.0, Material{{-1.0, 0.0}, {1.0, 0.0}}}}, 1.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(LayeredScene(0.5, Pec{}, {Shell{1.0, Material{{1.0, 0.0}, {1.0, -0.1}}}}, 1.0, 2.0), InvalidArgument);
  CHECK_THROWS_AS(LayeredScene(0.5, Material{{1.0, 0.0}, {std::nan(""), 0.0}}, {}, 1.0, 2.0), InvalidArgument);
}

TEST_CASE("shell bounds") {
  const LayeredScene s(0.3, Pec{},
                       {Shell{0.6, Material{{0.8, 0.1}, {3.0, 0.0}}}, Shell{1.0, Material{{2.5, 0.0}, {1.2, 0.4}}}},
                       1.0, 1.5);
  const ShellBounds b = s.shell_bounds();
  CHECK(b.gamma1 == 0.8);
  CHECK(b.gamma2 == 2.5);
  CHECK(b.gamma == 1.2);
  CHECK(s.outer_radius() == 1.0);
}

TEST_CASE("incidence validation") {
  CHECK_NOTHROW(IncidentWave(Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(), 1.0));
  CHECK_THROWS_AS(IncidentWave(Eigen::Vector3d(0, 0, 1.1), Eigen::Vector3d::UnitX(), 1.0), InvalidArgument);
  CHECK_THROWS_AS(IncidentWave(Eigen::Vector3d::UnitZ(), Eigen::Vector3d(0.6, 0, 0.8), 1.0), InvalidArgument);
  CHECK_THROWS_AS(IncidentWave(Eigen::Vector3d::UnitZ(), Eigen::Vector3d::UnitX(), 0.0), InvalidArgument);
}
