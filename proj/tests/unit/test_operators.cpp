#include <doctest.h>

#include <cmath>
#include <numbers>

#include "siolab/error.hpp"
#include "siolab/operators.hpp"

using namespace siolab;
using namespace siolab::ops;
using geometry::DomainSpec;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("fundamental solution") {
  CHECK(fundamental_solution({std::exp(1.0), 0, 0}, 2) == doctest::Approx(1 / (2 * kPi)));
  CHECK(fundamental_solution({0, 2, 0}, 3) == doctest::Approx(-1 / (8 * kPi)));
}

TEST_CASE("harmonic double layer of 1: boundary constants and Gauss integral") {
  const auto mesh = geometry::build_mesh(DomainSpec::star_of(1, 0.2, 3), 512);
  const auto op = OperatorSpec::double_layer(kernels::DoubleLayerField::harmonic(2));
  const auto one = constant_field(mesh, 1.0);
  const auto Ti = pv_boundary(op, mesh, one);
  const auto Te = pv_boundary(op.on_side(Side::exterior), mesh, one);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    CHECK(Ti.data[i] == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(Te.data[i] == doctest::Approx(0.5).epsilon(1e-10));
  }
  const auto P = potential(op, mesh, one, {{0.1, 0.2, 0}, {-0.3, 0.0, 0}});
  for (double v : P.values) CHECK(v == doctest::Approx(-1.0).epsilon(1e-10));
  const auto Q = potential(op.on_side(Side::exterior), mesh, one, {{3, 1, 0}});
  CHECK(std::abs(Q.values[0]) < 1e-10);
  CHECK(pv_at_node(op, mesh, one, 17)[0] == doctest::Approx(Ti.data[17]));
}

TEST_CASE("points on the wrong side are rejected") {
  const auto mesh = geometry::build_mesh(DomainSpec::disk_of(1), 64);
  const auto op = OperatorSpec::double_layer(kernels::DoubleLayerField::harmonic(2));
  CHECK_THROWS_AS(potential(op, mesh, constant_field(mesh, 1.0), {{2, 0, 0}}), DomainError);
  CHECK_THROWS_AS(potential(op, mesh, constant_field(mesh, 1.0), {mesh.nodes[3]}), DomainError);
}

TEST_CASE("single layer of 1 on the unit circle is log max(|x|, 1)") {
  const auto mesh = geometry::build_mesh(DomainSpec::disk_of(1), 256);
  const auto op = OperatorSpec::single_layer(2);
  const auto in = potential(op, mesh, constant_field(mesh, 1.0), {{0.2, -0.4, 0}});
  CHECK(std::abs(in.values[0]) < 1e-12);
  const auto out = potential(op.on_side(Side::exterior), mesh, constant_field(mesh, 1.0), {{0, 3, 0}});
  CHECK(out.values[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(pv_boundary(op, mesh, constant_field(mesh, 1.0)), SpecError);
}

TEST_CASE("Riesz transforms of 1 on the disk") {
  const auto mesh = geometry::build_mesh(DomainSpec::disk_of(1), 256);
  for (int j = 1; j <= 2; ++j) {
    const auto R = pv_boundary(OperatorSpec::riesz(2, j), mesh, constant_field(mesh, 1.0));
    for (std::size_t i = 0; i < mesh.size(); ++i) CHECK(R.data[i] == doctest::Approx(mesh.nodes[i][j - 1] / 2));
  }
  const auto v = riesz_via_clifford(mesh);
  CHECK(v.non_vector_residual < 1e-12);
  for (std::size_t i = 0; i < mesh.size(); ++i) CHECK(v.components[0].data[i] == doctest::Approx(mesh.nodes[i][0] / 2));
}

TEST_CASE("Cauchy integral reproduces 1 and is an involution up to 1/4") {
  const auto mesh = geometry::build_mesh(DomainSpec::ellipse_of(2, 1), 512);
  const auto op = OperatorSpec::cauchy_clifford(2);
  const auto one = constant_field(mesh, 1.0).as_multivector(2);
  const auto P = potential(op, mesh, one, {{0.5, 0.3, 0}, {-1.2, 0.1, 0}});
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(P.value(k)[0] == doctest::Approx(1.0).epsilon(1e-10));
    for (int b = 1; b < 4; ++b) CHECK(std::abs(P.value(k)[b]) < 1e-10);
  }
  const auto C = pv_boundary(op, mesh, one);
  for (std::size_t i = 0; i < mesh.size(); i += 37) CHECK(C.row(i)[0] == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(clifford_involution_check(mesh, coordinate_field(mesh, 1)) < 1e-8);
}

TEST_CASE("gradient of the single layer of 1 equals minus the vector part of C nu") {
  const auto mesh = geometry::build_mesh(DomainSpec::ellipse_of(2, 1), 512);
  const auto probes = geometry::sample_probes(mesh, 10, 0.2, 5);
  const auto r = single_layer_gradient_identity(mesh, probes);
  CHECK(r.residual < 1e-8);
  CHECK(r.fd_residual < 1e-6);
}

TEST_CASE("nontangential limit of the double layer matches the jump relation") {
  TraceOptions opt;
  opt.m_last = 8;
  const auto op = OperatorSpec::double_layer(kernels::DoubleLayerField::harmonic(2));
  const auto sampler = [](const geometry::BoundaryMesh& m, std::size_t i) { return std::vector<double>{m.nodes[i][0]}; };
  const auto r = nontangential_trace(op, DomainSpec::ellipse_of(2, 1), sampler, 1, opt);
  CHECK(r.rows.size() == 7);
  CHECK(r.residual < 1e-4);
  CHECK(r.all_in_cone);
}

TEST_CASE("operator specs round-trip through JSON") {
  const auto op = OperatorSpec::from_json({{"kind", "riesz"}, {"j", 2}, {"side", "exterior"}}, 2);
  CHECK(op.kind == OpKind::riesz);
  CHECK(op.j == 2);
  CHECK(op.side == Side::exterior);
  const auto back = OperatorSpec::from_json(op.to_json(), 2);
  CHECK(back.to_json() == op.to_json());
  CHECK_THROWS_AS(OperatorSpec::from_json({{"kind", "riesz"}, {"j", 3}}, 2), DimensionError);

  const nlohmann::json dl{{"kind", "double_layer"},
                          {"field", {{"kind", "radial_profile"}, {"Q", "2*x^2"}, {"scale", 0.5}}}};
  const auto d = OperatorSpec::from_json(dl, 2);
  const auto d2 = OperatorSpec::from_json(d.to_json(), 2);
  CHECK(d2.field.kind() == kernels::FieldKind::radial_profile);
  CHECK(d2.field.scale() == 0.5);
  CHECK(d2.to_json() == d.to_json());
  const Point x{0.4, -0.9, 0}, nu{0.6, 0.8, 0};
  double a = 0, b = 0;
  d.field.pairing(x, nu, {&a, 1});
  d2.field.pairing(x, nu, {&b, 1});
  CHECK(a == b);
}
