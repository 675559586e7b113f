#pragma once

#include <functional>
#include <span>
#include <vector>

#include "siolab/clifford.hpp"
#include "siolab/geometry.hpp"

namespace siolab {

// Samples of a scalar (width 1) or multivector (width 2^n) function on the
// nodes of a boundary mesh, stored row-major.
struct BoundaryField {
  int width = 1;
  std::vector<double> data;

  BoundaryField() = default;
  BoundaryField(std::size_t nodes, int width) : width(width), data(nodes * width, 0.0) {}

  std::size_t size() const { return width == 0 ? 0 : data.size() / width; }
  std::span<double> row(std::size_t i) { return {data.data() + i * width, static_cast<std::size_t>(width)}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * width, static_cast<std::size_t>(width)}; }
  double scalar(std::size_t i) const { return data[i * width]; }

  // Component `b` as a scalar field.
  BoundaryField component(int b) const;
  // Promotes a scalar field to a multivector field (scalar blade).
  BoundaryField as_multivector(int n) const;
  clifford::Multivector multivector(std::size_t i, int n) const;

  BoundaryField& operator+=(const BoundaryField& o);
  BoundaryField& operator*=(double s);
  friend BoundaryField operator+(BoundaryField a, const BoundaryField& b) { return a += b; }
  friend BoundaryField operator*(BoundaryField a, double s) { return a *= s; }
  friend BoundaryField operator*(double s, BoundaryField a) { return a *= s; }
};

BoundaryField constant_field(const geometry::BoundaryMesh& mesh, double c);
BoundaryField scalar_field(const geometry::BoundaryMesh& mesh, const std::function<double(const geometry::Point&)>& f);
// Coordinate y_j (0-based j).
BoundaryField coordinate_field(const geometry::BoundaryMesh& mesh, int j);
// Unit normal embedded as a Clifford vector (width 2^n).
BoundaryField normal_field(const geometry::BoundaryMesh& mesh);
// f(y) = w(|y - z|).
BoundaryField modulus_field(const geometry::BoundaryMesh& mesh, const growth::GrowthFunction& g,
                            const geometry::Point& z);

// d f / dt along a curve mesh, by spectral (FFT) differentiation of the
// periodic samples; the Nyquist mode is dropped.
BoundaryField parametric_derivative(const geometry::BoundaryMesh& mesh, const BoundaryField& f);

struct DomainField {
  std::vector<geometry::Point> points;
  std::vector<double> rho;  // distance to the boundary
  int width = 1;
  int dim = 2;
  std::vector<double> values;     // points x width
  std::vector<double> gradients;  // points x dim x width, empty unless requested
  bool accuracy_warning = false;  // some rho < 2 panel_h

  std::span<const double> value(std::size_t i) const { return {values.data() + i * width, static_cast<std::size_t>(width)}; }
  std::span<const double> gradient(std::size_t i, int m) const {
    return {gradients.data() + (i * dim + m) * width, static_cast<std::size_t>(width)};
  }
};

}  // namespace siolab
