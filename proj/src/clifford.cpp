#include "siolab/clifford.hpp"

#include <cmath>
#include <sstream>

#include "siolab/error.hpp"

namespace siolab::clifford {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxDim) throw DimensionError("Clifford dimension must be in [1, 8]");
}

}  // namespace

Multivector::Multivector(int n) : n_(n) {
  check_dim(n);
  c_.assign(std::size_t{1} << n, 0.0);
}

Multivector::Multivector(int n, std::vector<double> coeffs) : n_(n), c_(std::move(coeffs)) {
  check_dim(n);
  if (c_.size() != (std::size_t{1} << n)) throw DimensionError("multivector needs exactly 2^n coefficients");
}

Multivector Multivector::scalar(int n, double s) {
  Multivector m(n);
  m.c_[0] = s;
  return m;
}

Multivector Multivector::blade(int n, unsigned mask, double c) {
  Multivector m(n);
  if (mask >= m.c_.size()) throw DimensionError("blade index out of range");
  m.c_[mask] = c;
  return m;
}

Multivector Multivector::basis(int n, int j) {
  if (j < 1 || j > n) throw DimensionError("basis index out of range");
  return blade(n, 1u << (j - 1));
}

Multivector Multivector::embed(std::span<const double> x) {
  Multivector m(static_cast<int>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) m.c_[1u << j] = x[j];
  return m;
}

std::vector<double> Multivector::vector_part() const {
  std::vector<double> v(n_);
  for (int j = 0; j < n_; ++j) v[j] = c_[1u << j];
  return v;
}

Multivector& Multivector::operator+=(const Multivector& o) {
  if (o.n_ != n_) throw DimensionError("multivector dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Multivector& Multivector::operator-=(const Multivector& o) {
  if (o.n_ != n_) throw DimensionError("multivector dimension mismatch");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Multivector& Multivector::operator*=(double s) {
  for (double& x : c_) x *= s;
  return *this;
}

std::string blade_name(unsigned mask) {
  if (mask == 0) return "1";
  std::string s;
  for (int j = 0; j < kMaxDim; ++j) {
    if (!(mask & (1u << j))) continue;
    if (!s.empty()) s += "^";
    s += "e" + std::to_string(j + 1);
  }
  return s;
}

std::string Multivector::to_string(int precision) const {
  std::ostringstream os;
  os.precision(precision);
  bool first = true;
  for (unsigned b = 0; b < c_.size(); ++b) {
    if (c_[b] == 0.0) continue;
    if (!first) os << (c_[b] < 0 ? " - " : " + ");
    else if (c_[b] < 0) os << "-";
    os << std::abs(c_[b]);
    if (b != 0) os << "*" << blade_name(b);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

void gproduct_accumulate(std::span<const double> u, std::span<const double> v, double s, std::span<double> out) {
  const unsigned m = static_cast<unsigned>(u.size());
  for (unsigned a = 0; a < m; ++a) {
    if (u[a] == 0.0) continue;
    const double ua = s * u[a];
    for (unsigned b = 0; b < m; ++b) {
      if (v[b] == 0.0) continue;
      out[a ^ b] += blade_sign(a, b) * ua * v[b];
    }
  }
}

Multivector gproduct(const Multivector& u, const Multivector& v) {
  if (u.dim() != v.dim()) throw DimensionError("gproduct: dimension mismatch");
  std::vector<double> acc(u.size(), 0.0);
  gproduct_accumulate(u.coeffs(), v.coeffs(), 1.0, acc);
  return Multivector(u.dim(), std::move(acc));
}

Multivector conjugate(const Multivector& u) {
  Multivector out = u;
  for (unsigned b = 0; b < u.size(); ++b) out[b] = conjugate_sign(b) * u[b];
  return out;
}

double norm(const Multivector& u) {
  double s = 0.0;
  for (double c : u.coeffs()) s += c * c;
  return std::sqrt(s);
}

Multivector embed(std::span<const double> x) { return Multivector::embed(x); }

}  // namespace siolab::clifford
