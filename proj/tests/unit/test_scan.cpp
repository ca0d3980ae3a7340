#include <cmath>

#include "bautin/errors.hpp"
#include "bautin/scan.hpp"
#include "doctest.h"

using namespace bautin;

namespace {
const ModelParams kP(3.0, 0.8, 0.05, 3.0, 1.35);
}

TEST_CASE("linspace endpoints") {
  const auto v = linspace(-1.0, 1.0, 5);
  REQUIRE(v.size() == 5);
  CHECK(v.front() == -1.0);
  CHECK(v.back() == 1.0);
  CHECK(v[2] == doctest::Approx(0.0));
  CHECK(linspace(2.0, 3.0, 1).size() == 1);
}

TEST_CASE("bisection agrees with the closed form") {
  const CouplingSpec k(0.0, 0.2, 2);
  const auto b = det_zero_bisect(Branch::inphase, -0.6, -0.3, kP, k);
  const auto e = exact_det_zero(kP, k, Branch::inphase);
  CHECK(std::abs(b.u - e.u) < 1e-10);
  CHECK(std::abs(b.r - e.r) < 1e-9);
  CHECK_THROWS_AS(det_zero_bisect(Branch::inphase, 0.0, 0.5, kP, k), NumericError);
}

TEST_CASE("plane names round trip") {
  for (Plane pl : {Plane::sigma, Plane::r_m, Plane::kappa1, Plane::kappa2}) {
    CHECK(parse_plane(plane_name(pl)) == pl);
  }
  CHECK_THROWS_AS(parse_plane("omega"), ConfigError);
  CHECK(plane_params(Plane::sigma, kP, 5.0).sigma() == 5.0);
  CHECK(plane_coupling(Plane::kappa2, CouplingSpec(0.1, 0.2, 2), -0.3).kappa2() == -0.3);
}

TEST_CASE("boundary scan labels the bistable band") {
  const std::vector<double> lambdas = {0.2};
  const auto rb = boundary_scan(Plane::kappa2, lambdas, kP, CouplingSpec(0.0, 0.2, 2));
  REQUIRE(rb.points.size() == 1);
  const auto& bp = rb.points[0];
  REQUIRE(bp.u_in.has_value());
  REQUIRE(bp.u_anti.has_value());
  CHECK(std::abs(*bp.u_in - exact_det_zero(kP, CouplingSpec(0.0, 0.2, 2), Branch::inphase).u) < 1e-7);
  bool band = false;
  for (const auto& r : bp.regions) {
    CHECK(r.u_lo < r.u_hi);
    if (r.label == 'b') {
      band = true;
      CHECK(r.u_lo == doctest::Approx(*bp.u_in).epsilon(1e-6));
      CHECK(r.u_hi == doctest::Approx(*bp.u_anti).epsilon(1e-6));
    }
  }
  CHECK(band);
  for (std::size_t i = 1; i < bp.regions.size(); ++i) {
    CHECK(bp.regions[i].u_lo == bp.regions[i - 1].u_hi);
    CHECK(bp.regions[i].label != bp.regions[i - 1].label);
  }
}

TEST_CASE("scan output does not depend on the worker count") {
  const CouplingSpec k(0.001, 0.2, 2);
  const auto lambdas = linspace(2.0, 6.0, 9);
  const auto a = boundary_scan(Plane::sigma, lambdas, kP, k, {}, 1);
  const auto b = boundary_scan(Plane::sigma, lambdas, kP, k, {}, 3);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].lambda == b.points[i].lambda);
    CHECK(a.points[i].u_in == b.points[i].u_in);
    CHECK(a.points[i].regions.size() == b.points[i].regions.size());
  }
  SeedGrid g;
  g.n_rl = 8;
  g.n_rt = 5;
  g.n_phi = 8;
  const auto d1 = branch_diagram(-0.8, 0.2, 6, kP, k, g, 1);
  const auto d2 = branch_diagram(-0.8, 0.2, 6, kP, k, g, 4);
  REQUIRE(d1.points.size() == d2.points.size());
  for (std::size_t i = 0; i < d1.points.size(); ++i) {
    REQUIRE(d1.points[i].size() == d2.points[i].size());
    for (std::size_t j = 0; j < d1.points[i].size(); ++j) {
      CHECK(d1.points[i][j].eq.r_l == d2.points[i][j].eq.r_l);
      CHECK(d1.points[i][j].branch_id == d2.points[i][j].branch_id);
    }
  }
}
