#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "siolab/error.hpp"
#include "siolab/kernels.hpp"
#include "siolab/polynomial.hpp"

using namespace siolab;
using namespace siolab::kernels;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2) == doctest::Approx(2 * kPi));
  CHECK(sphere_area(3) == doctest::Approx(4 * kPi));
  CHECK(sphere_area(4) == doctest::Approx(2 * kPi * kPi));
}

TEST_CASE("Riesz kernel values and gradient") {
  const auto R = PolyKernel::riesz(2, 1);
  const Point x{0.6, 0.8, 0};
  CHECK(R(x) == doctest::Approx(0.6 / (2 * kPi)));
  // d/dx (x / r^2) = (r^2 - 2x^2)/r^4, d/dy = -2xy/r^4
  const auto g = R.gradient(x);
  CHECK(g[0] == doctest::Approx((1 - 2 * 0.36) / (2 * kPi)));
  CHECK(g[1] == doctest::Approx(-2 * 0.48 / (2 * kPi)));
  const auto R3 = PolyKernel::riesz(3, 3);
  CHECK(R3({0, 0, 2}) == doctest::Approx(2.0 / (4 * kPi * 8)));
}

TEST_CASE("spherical means of the standard fields") {
  CHECK(theta(DoubleLayerField::harmonic(2))[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(theta(DoubleLayerField::harmonic(3), 96)[0] == doctest::Approx(1.0).epsilon(1e-12));
  for (int n : {2, 3}) {
    const auto t = theta(DoubleLayerField::cauchy_clifford(n), n == 2 ? 256 : 96);
    CHECK(t[0] == doctest::Approx(-1.0).epsilon(1e-10));
    for (std::size_t b = 1; b < t.size(); ++b) CHECK(std::abs(t[b]) < 1e-10);
  }
  CHECK(theta(DoubleLayerField::planar_cauchy())[0] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("radial profile fields are divergence free with the expected mean") {
  // Q = x^2 - y^2 averages to zero on the circle, so theta = c * mean(1 + Q/|x|^2) = c
  const auto Q = poly::Polynomial::parse("x^2 - y^2", 2) + poly::Polynomial::norm_squared(2);
  const auto f = DoubleLayerField::radial_profile(Q, 1.0);
  CHECK(theta(f)[0] == doctest::Approx(1.0).epsilon(1e-12));
  const auto div = divergence_fd(f, {0.3, -0.7, 0});
  CHECK(std::abs(div[0]) < 1e-6);
  CHECK(std::abs(divergence_fd(DoubleLayerField::harmonic(3), {0.2, 0.4, -0.5})[0]) < 1e-6);
}

TEST_CASE("polynomial parsing and calculus") {
  const auto P = poly::Polynomial::parse("x^3 - 3*x*y^2", 2);
  CHECK(P.degree() == 3);
  CHECK(P.is_homogeneous());
  CHECK(P.laplacian().pruned(1e-14).is_zero());
  const double x[2] = {2, 1};
  CHECK(P(x) == doctest::Approx(8 - 6));
  CHECK(P.gradient(x)[0] == doctest::Approx(3 * 4 - 3));
  CHECK_THROWS_AS(poly::Polynomial::parse("x^^2", 2), SpecError);
  CHECK(poly::homogeneous_basis(3, 2).size() == 6);
}

TEST_CASE("harmonic decomposition of |x|^4 and of a random cubic") {
  const auto r2 = poly::Polynomial::norm_squared(3);
  const auto d = poly::harmonic_decompose(r2 * r2);
  REQUIRE(d.parts.size() == 3);
  CHECK(d.parts[0].pruned(1e-12).is_zero());
  CHECK(d.parts[1].pruned(1e-12).is_zero());
  CHECK((d.parts[2] - poly::Polynomial::constant(3, 1.0)).pruned(1e-12).is_zero());

  std::mt19937_64 rng(3);
  std::normal_distribution<double> N(0, 1);
  poly::Polynomial P(3);
  for (const auto& e : poly::homogeneous_basis(3, 3)) P += poly::Polynomial::monomial(3, e, N(rng));
  const auto h = poly::harmonic_decompose(P);
  poly::Polynomial sum(3), rk = poly::Polynomial::constant(3, 1.0);
  for (const auto& part : h.parts) {
    CHECK(part.laplacian().max_coeff() < 1e-10);
    sum += rk * part;
    rk = rk * r2;
  }
  CHECK((sum - P).max_coeff() < 1e-10);
}
