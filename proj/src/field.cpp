#include "siolab/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "siolab/error.hpp"

namespace siolab {

BoundaryField BoundaryField::component(int b) const {
  if (b < 0 || b >= width) throw DimensionError("field component out of range");
  BoundaryField out(size(), 1);
  for (std::size_t i = 0; i < size(); ++i) out.data[i] = data[i * width + b];
  return out;
}

BoundaryField BoundaryField::as_multivector(int n) const {
  const int W = 1 << n;
  if (width == W) return *this;
  if (width != 1) throw DimensionError("only scalar fields can be promoted to multivectors");
  BoundaryField out(size(), W);
  for (std::size_t i = 0; i < size(); ++i) out.data[i * W] = data[i];
  return out;
}

clifford::Multivector BoundaryField::multivector(std::size_t i, int n) const {
  clifford::Multivector m(n);
  if (width == 1) {
    m[0] = data[i];
  } else {
    if (width != (1 << n)) throw DimensionError("field width does not match the Clifford dimension");
    for (int b = 0; b < width; ++b) m[b] = data[i * width + b];
  }
  return m;
}

BoundaryField& BoundaryField::operator+=(const BoundaryField& o) {
  if (o.width != width || o.data.size() != data.size()) throw DimensionError("field shape mismatch");
  for (std::size_t k = 0; k < data.size(); ++k) data[k] += o.data[k];
  return *this;
}

BoundaryField& BoundaryField::operator*=(double s) {
  for (double& v : data) v *= s;
  return *this;
}

BoundaryField constant_field(const geometry::BoundaryMesh& mesh, double c) {
  BoundaryField f(mesh.size(), 1);
  for (double& v : f.data) v = c;
  return f;
}

BoundaryField scalar_field(const geometry::BoundaryMesh& mesh, const std::function<double(const geometry::Point&)>& fn) {
  BoundaryField f(mesh.size(), 1);
  for (std::size_t i = 0; i < mesh.size(); ++i) f.data[i] = fn(mesh.nodes[i]);
  return f;
}

BoundaryField coordinate_field(const geometry::BoundaryMesh& mesh, int j) {
  return scalar_field(mesh, [j](const geometry::Point& y) { return y[j]; });
}

BoundaryField normal_field(const geometry::BoundaryMesh& mesh) {
  const int W = 1 << mesh.dim;
  BoundaryField f(mesh.size(), W);
  for (std::size_t i = 0; i < mesh.size(); ++i)
    for (int k = 0; k < mesh.dim; ++k) f.data[i * W + (1u << k)] = mesh.normals[i][k];
  return f;
}

BoundaryField modulus_field(const geometry::BoundaryMesh& mesh, const growth::GrowthFunction& g,
                            const geometry::Point& z) {
  const auto ge = g.extend();
  return scalar_field(mesh, [&](const geometry::Point& y) {
    const double d = geometry::distance(y, z);
    return d > 0.0 ? ge.raw(d) : 0.0;
  });
}

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

BoundaryField parametric_derivative(const geometry::BoundaryMesh& mesh, const BoundaryField& f) {
  if (mesh.dim != 2) throw DimensionError("parametric derivative is defined on curve meshes");
  const int N = static_cast<int>(mesh.size());
  if (static_cast<int>(f.size()) != N) throw DimensionError("field does not match the mesh");
  BoundaryField out(N, f.width);
  const int M = N / 2 + 1;
  double* in = fftw_alloc_real(N);
  fftw_complex* spec = fftw_alloc_complex(M);
  fftw_plan fwd, bwd;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(N, in, spec, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(N, spec, in, FFTW_ESTIMATE);
  }
  // Parameter period is 2 pi, so mode k has derivative factor i k.
  for (int b = 0; b < f.width; ++b) {
    for (int i = 0; i < N; ++i) in[i] = f.data[static_cast<std::size_t>(i) * f.width + b];
    fftw_execute(fwd);
    for (int k = 0; k < M; ++k) {
      const bool nyquist = (N % 2 == 0) && k == N / 2;
      const double re = spec[k][0], im = spec[k][1];
      spec[k][0] = nyquist ? 0.0 : -k * im;
      spec[k][1] = nyquist ? 0.0 : k * re;
    }
    fftw_execute(bwd);
    for (int i = 0; i < N; ++i) out.data[static_cast<std::size_t>(i) * f.width + b] = in[i] / N;
  }
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(in);
  fftw_free(spec);
  return out;
}

}  // namespace siolab
