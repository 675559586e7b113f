#include "siolab/kernels.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "siolab/error.hpp"
#include "siolab/quadrature.hpp"

namespace siolab::kernels {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const Point& x, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += x[k] * x[k];
  return s;
}

}  // namespace

double sphere_area(int n) {
  if (n < 1) throw DimensionError("sphere_area needs n >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

PolyKernel PolyKernel::make(const poly::Polynomial& P) {
  if (!P.is_homogeneous() || P.is_zero()) throw SpecError("kernel polynomial must be nonzero and homogeneous");
  const int l = P.degree();
  if (l % 2 == 0) throw SpecError("kernel polynomial must have odd degree");
  PolyKernel K;
  K.P = P;
  K.n = P.dim();
  K.ell = l;
  return K;
}

PolyKernel PolyKernel::riesz(int n, int j) {
  if (n < 2 || n > 3 || j < 1 || j > n) throw DimensionError("riesz kernel needs n in {2,3} and 1 <= j <= n");
  poly::Exponent e{0, 0, 0};
  e[j - 1] = 1;
  return make(poly::Polynomial::monomial(n, e, 1.0 / sphere_area(n)));
}

double PolyKernel::operator()(const Point& x) const {
  const double r2 = norm2(x, n);
  return P(std::span<const double>(x.data(), n)) / std::pow(r2, 0.5 * (n - 1 + ell));
}

Point PolyKernel::gradient(const Point& x) const {
  const double r2 = norm2(x, n);
  const double p = n - 1 + ell;
  const double rp = std::pow(r2, 0.5 * p);
  const auto span = std::span<const double>(x.data(), n);
  const double v = P(span);
  const auto g = P.gradient(span);
  Point out{0, 0, 0};
  for (int m = 0; m < n; ++m) out[m] = g[m] / rp - p * v * x[m] / (rp * r2);
  return out;
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::harmonic: return "harmonic";
    case FieldKind::cauchy_clifford: return "cauchy_clifford";
    case FieldKind::planar_cauchy: return "planar_cauchy";
    case FieldKind::radial_profile: return "radial_profile";
  }
  return "?";
}

DoubleLayerField DoubleLayerField::harmonic(int n, double c) {
  if (n < 2 || n > 3) throw DimensionError("double layer fields support n in {2,3}");
  DoubleLayerField f;
  f.kind_ = FieldKind::harmonic;
  f.n_ = n;
  f.c_ = c;
  f.Q_ = poly::Polynomial(n);
  return f;
}

DoubleLayerField DoubleLayerField::cauchy_clifford(int n) {
  auto f = harmonic(n);
  f.kind_ = FieldKind::cauchy_clifford;
  f.width_ = 1 << n;
  return f;
}

DoubleLayerField DoubleLayerField::planar_cauchy() {
  auto f = harmonic(2);
  f.kind_ = FieldKind::planar_cauchy;
  f.width_ = 4;
  return f;
}

DoubleLayerField DoubleLayerField::radial_profile(const poly::Polynomial& Q, double c) {
  if (Q.is_zero() || !Q.is_homogeneous() || Q.degree() % 2 != 0)
    throw SpecError("radial profile polynomial must be nonzero, homogeneous and of even degree");
  auto f = harmonic(Q.dim(), c);
  f.kind_ = FieldKind::radial_profile;
  f.Q_ = Q;
  f.qdeg_ = Q.degree();
  return f;
}

DoubleLayerField DoubleLayerField::from_json(const nlohmann::json& j) {
  const auto kind = j.value("kind", std::string("harmonic"));
  const int n = j.value("n", 2);
  const double c = j.value("scale", 1.0);
  if (kind == "harmonic") return harmonic(n, c);
  if (kind == "cauchy_clifford") return cauchy_clifford(n).scaled(c);
  if (kind == "planar_cauchy") return planar_cauchy().scaled(c);
  if (kind == "radial_profile") {
    if (!j.contains("Q")) throw SpecError("radial_profile field needs a polynomial 'Q'");
    return radial_profile(poly::Polynomial::parse(j.at("Q").get<std::string>(), n), c);
  }
  throw SpecError("unknown double layer field kind '" + kind + "'");
}

nlohmann::json DoubleLayerField::to_json() const {
  nlohmann::json j{{"kind", to_string(kind_)}, {"n", n_}};
  if (c_ != 1.0) j["scale"] = c_;
  if (kind_ == FieldKind::radial_profile) j["Q"] = Q_.to_string();
  return j;
}

DoubleLayerField DoubleLayerField::scaled(double s) const {
  DoubleLayerField f = *this;
  f.c_ *= s;
  return f;
}

std::string DoubleLayerField::describe() const {
  std::string s = to_string(kind_) + "(n=" + std::to_string(n_);
  if (c_ != 1.0) s += ", scale=" + std::to_string(c_);
  if (kind_ == FieldKind::radial_profile) s += ", Q=" + Q_.to_string();
  return s + ")";
}

void DoubleLayerField::pairing(const Point& x, const Point& nu, std::span<double> out) const {
  const double r2 = norm2(x, n_);
  const double w = sphere_area(n_);
  const double rn = std::pow(r2, 0.5 * n_);
  switch (kind_) {
    case FieldKind::harmonic: {
      double d = 0.0;
      for (int k = 0; k < n_; ++k) d += nu[k] * x[k];
      out[0] = c_ * d / (w * rn);
      return;
    }
    case FieldKind::radial_profile: {
      double d = 0.0;
      for (int k = 0; k < n_; ++k) d += nu[k] * x[k];
      const double phi = Q_(std::span<const double>(x.data(), n_)) / std::pow(r2, 0.5 * qdeg_);
      out[0] = c_ * phi * d / (w * rn);
      return;
    }
    case FieldKind::cauchy_clifford: {
      // (x/(w|x|^n)) (.) nu for two vectors: -v.nu + sum_{i<j} (v_i nu_j - v_j nu_i) e_ij
      for (int b = 0; b < width_; ++b) out[b] = 0.0;
      const double s = c_ / (w * rn);
      double d = 0.0;
      for (int k = 0; k < n_; ++k) d += x[k] * nu[k];
      out[0] = -s * d;
      for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) out[(1u << i) | (1u << j)] = s * (x[i] * nu[j] - x[j] * nu[i]);
      return;
    }
    case FieldKind::planar_cauchy: {
      const std::complex<double> z(x[0], x[1]), v(nu[0], nu[1]);
      const auto q = -c_ / (2.0 * kPi) * v / z;
      out[0] = q.real();
      out[1] = out[2] = 0.0;
      out[3] = q.imag();
      return;
    }
  }
}

void DoubleLayerField::pairing_gradient(const Point& x, const Point& nu, std::span<double> out) const {
  const double r2 = norm2(x, n_);
  const double w = sphere_area(n_);
  const double rn = std::pow(r2, 0.5 * n_);
  const int W = width_;
  for (int k = 0; k < n_ * W; ++k) out[k] = 0.0;
  double d = 0.0;
  for (int k = 0; k < n_; ++k) d += nu[k] * x[k];
  switch (kind_) {
    case FieldKind::harmonic:
      for (int m = 0; m < n_; ++m) out[m] = c_ * (nu[m] / rn - n_ * d * x[m] / (rn * r2)) / w;
      return;
    case FieldKind::radial_profile: {
      const auto span = std::span<const double>(x.data(), n_);
      const double rq = std::pow(r2, 0.5 * qdeg_);
      const double Qv = Q_(span);
      const auto gQ = Q_.gradient(span);
      const double phi = Qv / rq;
      for (int m = 0; m < n_; ++m) {
        const double dphi = gQ[m] / rq - qdeg_ * Qv * x[m] / (rq * r2);
        const double dd = nu[m] / rn - n_ * d * x[m] / (rn * r2);
        out[m] = c_ * (dphi * d / rn + phi * dd) / w;
      }
      return;
    }
    case FieldKind::cauchy_clifford: {
      // d_m v = (e_m - n x_m x/|x|^2) / (w |x|^n)
      for (int m = 0; m < n_; ++m) {
        Point dv{0, 0, 0};
        for (int k = 0; k < n_; ++k) dv[k] = c_ * ((k == m ? 1.0 : 0.0) - n_ * x[m] * x[k] / r2) / (w * rn);
        double s = 0.0;
        for (int k = 0; k < n_; ++k) s += dv[k] * nu[k];
        double* row = out.data() + m * W;
        row[0] = -s;
        for (int i = 0; i < n_; ++i)
          for (int j = i + 1; j < n_; ++j) row[(1u << i) | (1u << j)] = dv[i] * nu[j] - dv[j] * nu[i];
      }
      return;
    }
    case FieldKind::planar_cauchy: {
      const std::complex<double> z(x[0], x[1]), v(nu[0], nu[1]), I(0.0, 1.0);
      const auto g1 = c_ / (2.0 * kPi) * v / (z * z);
      const auto g2 = I * g1;
      out[0] = g1.real();
      out[3] = g1.imag();
      out[W + 0] = g2.real();
      out[W + 3] = g2.imag();
      return;
    }
  }
}

void DoubleLayerField::component(int j, const Point& x, std::span<double> out) const {
  if (j < 0 || j >= n_) throw DimensionError("field component index out of range");
  const double r2 = norm2(x, n_);
  const double w = sphere_area(n_);
  const double rn = std::pow(r2, 0.5 * n_);
  for (int b = 0; b < width_; ++b) out[b] = 0.0;
  switch (kind_) {
    case FieldKind::harmonic: out[0] = c_ * x[j] / (w * rn); return;
    case FieldKind::radial_profile: {
      const double phi = Q_(std::span<const double>(x.data(), n_)) / std::pow(r2, 0.5 * qdeg_);
      out[0] = c_ * phi * x[j] / (w * rn);
      return;
    }
    case FieldKind::cauchy_clifford: {
      // v (.) e_j
      const double s = c_ / (w * rn);
      out[0] = -s * x[j];
      for (int i = 0; i < n_; ++i) {
        if (i == j) continue;
        const unsigned b = (1u << i) | (1u << j);
        out[b] = i < j ? s * x[i] : -s * x[i];
      }
      return;
    }
    case FieldKind::planar_cauchy: {
      const std::complex<double> z(x[0], x[1]);
      std::complex<double> q = -c_ / (2.0 * kPi) / z;
      if (j == 1) q *= std::complex<double>(0.0, 1.0);
      out[0] = q.real();
      out[3] = q.imag();
      return;
    }
  }
}

double sphere_integral(int n, const std::function<double(const Point&)>& g, int resolution) {
  if (n == 2) {
    std::vector<double> vals(resolution);
    for (int i = 0; i < resolution; ++i) {
      const double t = 2.0 * kPi * i / resolution;
      vals[i] = g({std::cos(t), std::sin(t), 0.0});
    }
    return quad::pairwise_sum(vals) * 2.0 * kPi / resolution;
  }
  if (n == 3) {
    const auto& gl = quad::gauss_legendre(resolution);
    const int np = 2 * resolution;
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(resolution) * np);
    for (int i = 0; i < resolution; ++i) {
      const double ct = gl.nodes[i], st = std::sqrt(1.0 - ct * ct);
      for (int k = 0; k < np; ++k) {
        const double ph = 2.0 * kPi * (k + 0.5) / np;
        vals.push_back(gl.weights[i] * g({st * std::cos(ph), st * std::sin(ph), ct}));
      }
    }
    return quad::pairwise_sum(vals) * 2.0 * kPi / np;
  }
  throw DimensionError("sphere quadrature supports n in {2,3}");
}

std::vector<double> theta(const DoubleLayerField& field, int resolution) {
  const int W = field.width();
  std::vector<double> out(W, 0.0);
  std::vector<double> buf(W);
  for (int b = 0; b < W; ++b) {
    out[b] = sphere_integral(
        field.dim(),
        [&](const Point& x) {
          field.pairing(x, x, buf);
          return buf[b];
        },
        resolution);
  }
  return out;
}

std::vector<double> divergence_fd(const DoubleLayerField& field, const Point& x, double h) {
  const int W = field.width();
  std::vector<double> div(W, 0.0), a(W), b(W), c(W), d(W);
  for (int j = 0; j < field.dim(); ++j) {
    Point p = x;
    p[j] = x[j] + 2 * h;
    field.component(j, p, a);
    p[j] = x[j] + h;
    field.component(j, p, b);
    p[j] = x[j] - h;
    field.component(j, p, c);
    p[j] = x[j] - 2 * h;
    field.component(j, p, d);
    for (int k = 0; k < W; ++k) div[k] += (-a[k] + 8 * b[k] - 8 * c[k] + d[k]) / (12 * h);
  }
  return div;
}

}  // namespace siolab::kernels
