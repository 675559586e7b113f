#include <doctest.h>

#include <cmath>

#include "siolab/field.hpp"
#include "siolab/holder.hpp"

using namespace siolab;
using geometry::Point;
using growth::GrowthFunction;

TEST_CASE("Lipschitz seminorm of a linear function on a line") {
  std::vector<Point> pts;
  BoundaryField f(0, 1);
  for (int k = 0; k < 40; ++k) {
    pts.push_back({0.1 * k, 0.0, 0.0});
    f.data.push_back(3.0 * 0.1 * k - 1.0);
  }
  const auto r = holder::seminorm(pts, f, GrowthFunction::power(1.0));
  CHECK(r.seminorm == doctest::Approx(3.0));
  CHECK(r.sup_norm == doctest::Approx(10.7));
  CHECK(r.norm == doctest::Approx(r.seminorm + r.sup_norm));
  CHECK(r.pairs_examined == 40 * 39 / 2);
}

TEST_CASE("square root on a line: the extremal pair touches the origin") {
  std::vector<Point> pts;
  BoundaryField f(0, 1);
  for (int k = 0; k < 30; ++k) {
    const double x = k / 29.0;
    pts.push_back({x, 0.0, 0.0});
    f.data.push_back(std::sqrt(x));
  }
  // sqrt is subadditive, so |sqrt x - sqrt y| <= sqrt|x - y| with equality at y = 0
  const auto r = holder::seminorm(pts, f, GrowthFunction::power(0.5));
  CHECK(r.seminorm == doctest::Approx(1.0));
}

TEST_CASE("modulus fields of subadditive growth have seminorm at most 1") {
  const auto mesh = geometry::build_mesh(geometry::DomainSpec::ellipse_of(2, 1), 512);
  const auto g = GrowthFunction::power(0.4);
  const auto f = modulus_field(mesh, g, {0.3, 0.2, 0});
  CHECK(holder::seminorm(mesh, f, g).seminorm <= 1.0 + 1e-12);
}

TEST_CASE("sampled pairs are deterministic in the seed") {
  const auto mesh = geometry::build_mesh(geometry::DomainSpec::disk_of(1), 6000);
  const auto f = coordinate_field(mesh, 0);
  holder::PairPolicy p;
  p.all_pairs_max = 1000;
  p.annulus_cap = 2000;
  const auto a = holder::seminorm(mesh, f, GrowthFunction::power(1.0), p);
  const auto b = holder::seminorm(mesh, f, GrowthFunction::power(1.0), p);
  CHECK(a.seminorm == b.seminorm);
  CHECK(a.seminorm <= 1.0 + 1e-12);
  CHECK(a.pair_budget != "exhaustive");
}

TEST_CASE("product estimate") {
  const auto mesh = geometry::build_mesh(geometry::DomainSpec::disk_of(1), 256);
  const auto f = scalar_field(mesh, [](const Point& y) { return std::sin(2 * y[0]); });
  const auto g = scalar_field(mesh, [](const Point& y) { return y[1] * y[1]; });
  const auto c = holder::product_norm_check(mesh, f, g, GrowthFunction::power(0.5));
  CHECK(c.holds);
  CHECK(c.norm_fg <= c.norm_f * c.norm_g);
}

TEST_CASE("dyadic modulus profile of the identity on a line") {
  std::vector<Point> pts;
  BoundaryField f(0, 1);
  for (int k = 0; k < 16; ++k) {
    pts.push_back({double(k), 0.0, 0.0});
    f.data.push_back(k);
  }
  const auto rows = holder::modulus_profile(pts, f);
  REQUIRE(!rows.empty());
  CHECK(rows.front().bin_lo == doctest::Approx(1.0));
  for (const auto& r : rows) {
    CHECK(r.max_delta >= r.bin_lo);
    CHECK(r.max_delta < r.bin_hi);
  }
}
