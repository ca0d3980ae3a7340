#include <cmath>
#include <numbers>

#include "bautin/errors.hpp"
#include "bautin/model.hpp"
#include "doctest.h"

using namespace bautin;

TEST_CASE("coefficients follow sigma and r_m") {
  const ModelParams p(0.01, 0.8, 0.05, 3.0, 1.35);
  const auto c = derive_coefficients(p);
  CHECK(c.zeta == doctest::Approx(3.0 * 1.35 * 1.35 / 2.0));
  CHECK(c.gamma == doctest::Approx(-0.75));
  CHECK(c.B == std::complex<double>(2.0, c.zeta));
  CHECK(c.C == std::complex<double>(-1.0, c.gamma));
}

TEST_CASE("spiking frequency turns at r_m") {
  const ModelParams p(0.3, 0.8, 0.05, 4.0, 1.2);
  CHECK(domega_dr(1.2, p) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(domega_dr(1.0, p) > 0.0);
  CHECK(domega_dr(1.4, p) < 0.0);
  const double h = 1e-6;
  CHECK((omega_of_r(0.9 + h, p) - omega_of_r(0.9 - h, p)) / (2 * h) ==
        doctest::Approx(domega_dr(0.9, p)).epsilon(1e-8));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ModelParams(0.0, 0.8, -1.0, 3.0, 1.35), ConfigError);
  CHECK_THROWS_AS(ModelParams(0.0, 0.8, 0.1, 3.0, 0.0), ConfigError);
  CHECK_THROWS_AS(ModelParams(NAN, 0.8, 0.1, 3.0, 1.0), ConfigError);
  CHECK_THROWS_AS(CouplingSpec(0.1, 0.2, 2, {0.0, 1.0, 1.0}), ConfigError);
  CHECK_THROWS_AS(NetworkState(std::vector<double>{1.0, 2.0}), DomainError);
}

TEST_CASE("all-to-all coupling has a zero diagonal") {
  const CouplingSpec k(0.1, 0.2, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t m = 0; m < 3; ++m) CHECK(k.c(j, m) == (j == m ? 0.0 : 1.0));
  }
}

TEST_CASE("uncoupled burster matches the normal form") {
  const ModelParams p(0.5, 0.8, 0.05, 3.0, 1.35);
  const CouplingSpec k(0.0, 0.0, 1);
  NetworkState s(1);
  const std::complex<double> z(0.7, -0.4);
  s.set_z(0, z);
  s.set_u(0, -0.3);
  const auto f = eval_field_cartesian(s, p, k);
  const double r2 = std::norm(z);
  const std::complex<double> want =
      (std::complex<double>(-0.3, 0.5) + p.B() * r2 + p.C() * r2 * r2) * z;
  CHECK(std::abs(f.z(0) - want) < 1e-15);
  CHECK(f.u(0) == doctest::Approx(0.05 * (0.8 - r2)));
}

TEST_CASE("coupling term enters linearly") {
  const ModelParams p(0.5, 0.8, 0.05, 3.0, 1.35);
  NetworkState s(2);
  s.set_z(0, {0.3, 0.2});
  s.set_z(1, {-0.5, 0.9});
  const auto f0 = eval_field_cartesian(s, p, CouplingSpec(0.0, 0.0, 2));
  const auto f1 = eval_field_cartesian(s, p, CouplingSpec(0.1, -0.3, 2));
  const std::complex<double> g(0.1, -0.3);
  CHECK(std::abs(f1.z(0) - f0.z(0) - g * s.z(1)) < 1e-15);
  CHECK(std::abs(f1.z(1) - f0.z(1) - g * s.z(0)) < 1e-15);
}

TEST_CASE("field rejects mismatched sizes") {
  const ModelParams p(0.5, 0.8, 0.05, 3.0, 1.35);
  CHECK_THROWS_AS(eval_field_cartesian(NetworkState(3), p, CouplingSpec(0.1, 0.1, 2)), DomainError);
}

TEST_CASE("wrap_phase lands in (-pi, pi]") {
  constexpr double pi = std::numbers::pi;
  CHECK(wrap_phase(pi) == doctest::Approx(pi));
  CHECK(wrap_phase(-pi) == doctest::Approx(pi));
  CHECK(wrap_phase(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_phase(10.0) == doctest::Approx(10.0 - 4 * pi));
}

TEST_CASE("polar round trip") {
  NetworkState s(2);
  s.set_z(0, {0.3, -1.1});
  s.set_z(1, {-0.8, 0.05});
  s.set_u(0, 0.2);
  s.set_u(1, -0.4);
  const auto back = from_polar_pair(to_polar_pair(s));
  for (std::size_t i = 0; i < 6; ++i) CHECK(back.values()[i] == doctest::Approx(s.values()[i]));
  const auto pol = to_polar(s);
  const auto cart = to_cartesian(pol);
  for (std::size_t i = 0; i < 6; ++i) CHECK(cart.values()[i] == doctest::Approx(s.values()[i]));
  NetworkState zero(1);
  CHECK_THROWS_AS(to_polar(zero), DomainError);
}
