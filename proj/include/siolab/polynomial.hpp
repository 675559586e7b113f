#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace siolab::poly {

using Exponent = std::array<int, 3>;

// Real polynomial in n <= 3 variables as a sparse exponent -> coefficient map.
class Polynomial {
 public:
  explicit Polynomial(int n = 2);

  static Polynomial monomial(int n, Exponent e, double c = 1.0);
  static Polynomial constant(int n, double c);
  // |x|^2 in n variables.
  static Polynomial norm_squared(int n);
  // Parses e.g. "x^3 - 3*x*y^2" or "3/4*x1*(x2^2 + x3^2)"; variables x,y,z or x1,x2,x3.
  static Polynomial parse(const std::string& text, int n);

  int dim() const { return n_; }
  const std::map<Exponent, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;
  bool is_homogeneous() const;

  double operator()(std::span<const double> x) const;
  std::array<double, 3> gradient(std::span<const double> x) const;

  Polynomial derivative(int var) const;
  Polynomial laplacian() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  // Drops coefficients with |c| <= tol.
  Polynomial pruned(double tol = 0.0) const;
  // Largest |coefficient|.
  double max_coeff() const;
  std::string to_string() const;

 private:
  void add_term(const Exponent& e, double c);
  int n_;
  std::map<Exponent, double> terms_;
};

// All exponents of total degree d in n variables (lexicographic).
std::vector<Exponent> homogeneous_basis(int n, int d);

struct Decomposition {
  std::vector<Polynomial> parts;  // P = sum_j |x|^{2j} parts[j]
  double solve_residual = 0.0;    // max residual of the linear solves
};

// Splits a homogeneous polynomial into harmonic pieces.
Decomposition harmonic_decompose(const Polynomial& P);

}  // namespace siolab::poly
