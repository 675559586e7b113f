#include <doctest.h>

#include <cmath>

#include "siolab/error.hpp"
#include "siolab/growth.hpp"

using namespace siolab;
using growth::GrowthFunction;

TEST_CASE("power functions evaluate and respect their domain") {
  const auto g = GrowthFunction::power(0.5, 4.0);
  CHECK(g(0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(g(0.0), DomainError);
  CHECK_THROWS_AS(g(4.0), DomainError);
  CHECK(g.at_endpoint() == doctest::Approx(2.0));

  const auto e = g.extend();
  CHECK(e.is_extended());
  CHECK(e.cap() == 4.0);
  CHECK(std::isinf(e.D()));
  CHECK(e(100.0) == doctest::Approx(2.0));
  CHECK(e(1.0) == doctest::Approx(1.0));
}

TEST_CASE("extended power_log_D stays flat past the original endpoint") {
  const double a = 0.9, D = 2.0;
  const auto g = GrowthFunction::power_log_D(a, 1.0, D);
  const double B = std::max(1.0, 1.0 / a);
  CHECK(g(1.0) == doctest::Approx(B + std::log(2.0)));
  const auto e = g.extend();
  CHECK(e(7.0) == doctest::Approx(std::pow(D, a) * B));
  CHECK(std::isfinite(e.raw(0.5)));
}

TEST_CASE("Zygmund transform of power(1/2) on (0,1) is 4 sqrt(t) - 2t") {
  const auto g = GrowthFunction::power(0.5, 1.0);
  for (double t : {1e-6, 1e-3, 0.1, 0.5, 0.9}) {
    const double exact = 4 * std::sqrt(t) - 2 * t;
    CHECK(std::abs(growth::zygmund_transform(g, t) - exact) / exact < 1e-10);
  }
}

TEST_CASE("integral transforms of pure powers on (0, inf)") {
  const double a = 0.3;
  const auto g = GrowthFunction::power(a);
  for (double t : {1e-4, 0.2, 3.0}) {
    CHECK(growth::w_omega(g, t) == doctest::Approx(std::pow(t, a - 1) / (1 - a)).epsilon(1e-9));
    CHECK(growth::lower_integral(g, t) == doctest::Approx(std::pow(t, a) / a).epsilon(1e-9));
  }
  CHECK(growth::dini_integral(GrowthFunction::power(0.4)) == doctest::Approx(1 / 0.4 + 1 / 0.6).epsilon(1e-8));
}

TEST_CASE("dilation indices of pure and mixed powers") {
  const auto ip = growth::dilation_indices(GrowthFunction::power(0.4));
  CHECK(ip.i_lower == doctest::Approx(0.4).epsilon(0.02));
  CHECK(ip.i_upper == doctest::Approx(0.4).epsilon(0.02));

  // max{t^a, t^b} with a < b: t^b dominates for large t, t^a for small t.
  const auto im = growth::dilation_indices(GrowthFunction::max_powers(0.3, 0.7));
  CHECK(std::abs(im.i_lower - 0.3) < 0.02);
  CHECK(std::abs(im.i_upper - 0.7) < 0.02);
}

TEST_CASE("doubling constant of a power is 2^alpha") {
  const auto an = growth::analyze(GrowthFunction::power(0.6));
  CHECK(an.doubling_constant == doctest::Approx(std::pow(2.0, 0.6)).epsilon(1e-9));
  CHECK(an.dini_integral == doctest::Approx(1 / 0.6 + 1 / 0.4).epsilon(1e-8));
  // w_Z = t^a (1/a + 1/(1-a)) for pure powers on (0, inf)
  CHECK(an.zygmund_constant == doctest::Approx(1 / 0.6 + 1 / 0.4).epsilon(1e-6));
}

TEST_CASE("tabulated growth is log-log linear between nodes") {
  const auto g = GrowthFunction::tabulated({1e-4, 1e-2, 1.0}, {1e-2, 1e-1, 1.0});
  CHECK(g(1e-3) == doctest::Approx(std::sqrt(1e-3)).epsilon(1e-12));
  CHECK(g(1e-2) == doctest::Approx(0.1));
}

TEST_CASE("invalid specifications are rejected") {
  CHECK_THROWS_AS(GrowthFunction::power(0.0), SpecError);
  CHECK_THROWS_AS(GrowthFunction::from_json({{"kind", "nope"}}), SpecError);
  CHECK_THROWS_AS(GrowthFunction::from_json({{"kind", "power_log_D"}, {"alpha", 0.5}}), SpecError);
  const auto g = GrowthFunction::from_json({{"kind", "power"}, {"alpha", 0.25}, {"D", 2.0}});
  CHECK(g.alpha() == 0.25);
  CHECK(GrowthFunction::from_json(g.to_json()).describe() == g.describe());
}
