#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "siolab/geometry.hpp"
#include "siolab/polynomial.hpp"

namespace siolab::kernels {

using geometry::Point;

// Surface area of the unit sphere S^{n-1}: 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

// Odd homogeneous kernel P(x)/|x|^{n-1+l} with P homogeneous of odd degree l.
struct PolyKernel {
  poly::Polynomial P{2};
  int n = 2;
  int ell = 1;

  static PolyKernel make(const poly::Polynomial& P);
  // Riesz kernel x_j / (w_{n-1} |x|^n), j 1-based.
  static PolyKernel riesz(int n, int j);

  double operator()(const Point& x) const;
  Point gradient(const Point& x) const;
};

enum class FieldKind { harmonic, cauchy_clifford, planar_cauchy, radial_profile };

std::string to_string(FieldKind k);

// A divergence-free, odd, (1-n)-homogeneous vector field k = (k_1, ..., k_n)
// whose components are scalars or Clifford multivectors.
class DoubleLayerField {
 public:
  static DoubleLayerField harmonic(int n, double c = 1.0);
  static DoubleLayerField cauchy_clifford(int n);
  // -(1/2 pi)(1/z, i/z), with i represented by e1^e2 in Cl_2.
  static DoubleLayerField planar_cauchy();
  // k(x) = c Q(x)/|x|^{deg Q} x/(w_{n-1}|x|^n), Q even and homogeneous.
  static DoubleLayerField radial_profile(const poly::Polynomial& Q, double c = 1.0);
  static DoubleLayerField from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  FieldKind kind() const { return kind_; }
  int dim() const { return n_; }
  // 1 for scalar fields, 2^n for multivector-valued ones.
  int width() const { return width_; }
  double scale() const { return c_; }
  const poly::Polynomial& profile() const { return Q_; }

  // <nu, k(x)> = sum_j nu_j k_j(x); out has width() entries.
  void pairing(const Point& x, const Point& nu, std::span<double> out) const;
  // d/dx_m <nu, k(x)> for m < n; out is n rows of width() entries.
  void pairing_gradient(const Point& x, const Point& nu, std::span<double> out) const;
  // k_j(x), j 0-based.
  void component(int j, const Point& x, std::span<double> out) const;

  DoubleLayerField scaled(double s) const;
  std::string describe() const;

 private:
  FieldKind kind_ = FieldKind::harmonic;
  int n_ = 2;
  int width_ = 1;
  double c_ = 1.0;
  poly::Polynomial Q_{2};
  int qdeg_ = 0;
};

// theta = int_{S^{n-1}} <x, k(x)> dH^{n-1}(x); returns width() entries.
// n = 2: trapezoid with `resolution` nodes; n = 3: Gauss-Legendre x trapezoid
// with `resolution` polar nodes.
std::vector<double> theta(const DoubleLayerField& field, int resolution = 256);

// Finite-difference divergence sum_j d_j k_j at x (width() entries).
std::vector<double> divergence_fd(const DoubleLayerField& field, const Point& x, double h = 1e-5);

// Integral over S^{n-1} of g, n in {2, 3}.
double sphere_integral(int n, const std::function<double(const Point&)>& g, int resolution = 256);

}  // namespace siolab::kernels
