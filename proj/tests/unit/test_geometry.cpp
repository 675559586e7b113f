#include <doctest.h>

#include <cmath>
#include <numbers>

#include "siolab/error.hpp"
#include "siolab/geometry.hpp"

using namespace siolab;
using namespace siolab::geometry;

namespace {

constexpr double kPi = std::numbers::pi;

double ellipse_perimeter(double a, double b) {
  const int M = 20000;
  double s = 0;
  for (int k = 0; k < M; ++k) {
    const double t = 2 * kPi * k / M;
    s += std::hypot(a * std::sin(t), b * std::cos(t));
  }
  return s * 2 * kPi / M;
}

}  // namespace

TEST_CASE("disk mesh: nodes on the circle, outward normals, exact length") {
  const auto m = build_mesh(DomainSpec::disk_of(1.5), 128);
  REQUIRE(m.size() == 128);
  for (std::size_t i = 0; i < m.size(); ++i) {
    CHECK(length(m.nodes[i]) == doctest::Approx(1.5));
    CHECK(dot(m.normals[i], m.nodes[i]) == doctest::Approx(1.5));
  }
  CHECK(m.total_measure() == doctest::Approx(3 * kPi));
  CHECK(length(m.normal_sum()) < 1e-12);
}

TEST_CASE("ellipse length against an independent trapezoid sum") {
  const auto spec = DomainSpec::ellipse_of(2, 1);
  CHECK(spec.boundary_measure() == doctest::Approx(ellipse_perimeter(2, 1)).epsilon(1e-12));
  CHECK(build_mesh(spec, 512).total_measure() == doctest::Approx(ellipse_perimeter(2, 1)).epsilon(1e-12));
}

TEST_CASE("sphere mesh integrates the area") {
  const auto m = build_mesh(DomainSpec::sphere_of(1.0), 32);
  CHECK(m.dim == 3);
  CHECK(m.total_measure() == doctest::Approx(4 * kPi).epsilon(1e-8));
  CHECK(length(m.normal_sum()) < 1e-10);
}

TEST_CASE("containment and distance to the boundary") {
  const auto disk = build_mesh(DomainSpec::disk_of(1), 256);
  CHECK(distance_to_boundary(disk, {0.3, 0.4, 0}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(distance_to_boundary(disk, {3, 4, 0}) == doctest::Approx(4).epsilon(1e-10));
  const auto ell = build_mesh(DomainSpec::ellipse_of(2, 1), 256);
  CHECK(distance_to_boundary(ell, {1.8, 0, 0}) == doctest::Approx(0.2).epsilon(1e-10));
  CHECK(distance_to_boundary(ell, {0, 0.5, 0}) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(ell.spec.contains({1.9, 0, 0}));
  CHECK_FALSE(ell.spec.contains({0, 1.1, 0}));
}

TEST_CASE("probes respect the distance floor and are reproducible") {
  const auto m = build_mesh(DomainSpec::star_of(1, 0.2, 3), 256);
  const auto P = sample_probes(m, 30, 0.15, 42);
  REQUIRE(P.size() == 30);
  for (const auto& p : P) {
    CHECK(m.spec.contains(p));
    CHECK(distance_to_boundary(m, p) >= 0.15);
  }
  CHECK(sample_probes(m, 30, 0.15, 42) == P);
  for (const auto& p : sample_probes(m, 10, 0.1, 3, true)) CHECK_FALSE(m.spec.contains(p));
}

TEST_CASE("teardrop has corners and a finite diameter") {
  const auto spec = DomainSpec::teardrop_of(kPi / 2);
  CHECK_FALSE(spec.is_smooth());
  CHECK(spec.diameter() > 0);
  CHECK_THROWS_AS(DomainSpec::teardrop_of(0.0).validate(), SpecError);
  CHECK_THROWS_AS(DomainSpec::from_json({{"kind", "triangle"}}), SpecError);
}

TEST_CASE("Ahlfors ratios of a circle approach 2") {
  const auto m = build_mesh(DomainSpec::disk_of(1), 2048);
  const auto rows = ahlfors_profile(m, {0.05}, 16);
  REQUIRE(rows.size() == 1);
  // arc length inside a ball of radius r is 4 asin(r/2)
  const double exact = 4 * std::asin(0.025) / 0.05;
  CHECK(rows[0].lower == doctest::Approx(exact).epsilon(0.02));
  CHECK(rows[0].upper == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("normal approach stays in the cone") {
  const auto m = build_mesh(DomainSpec::disk_of(1), 128);
  const auto c = cone_ladder(m, 5, 1.0, {0.5, 0.25, 0.125});
  for (std::size_t k = 0; k < c.samples.size(); ++k) {
    CHECK(c.inside_cone[k]);
    CHECK(length(c.samples[k]) == doctest::Approx(1 - c.heights[k]));
  }
}

TEST_CASE("pseudo-balls fit on the disk") {
  const auto m = build_mesh(DomainSpec::disk_of(1), 64);
  const auto r = hourglass_check(m, growth::GrowthFunction::power(0.5), 1.0, 0.1);
  CHECK(r.global);
  CHECK(r.failures.empty());
}
