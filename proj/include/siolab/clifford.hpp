#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace siolab::clifford {

inline constexpr int kMaxDim = 8;

// Sign of e_a * e_b for blades given as bitmasks, with e_j * e_j = -1.
constexpr int blade_sign(unsigned a, unsigned b) {
  // Count transpositions needed to move every generator of b past the
  // generators of a with a larger index.
  int swaps = 0;
  unsigned x = a >> 1;
  while (x != 0) {
    swaps += std::popcount(x & b);
    x >>= 1;
  }
  swaps += std::popcount(a & b);  // each shared e_j contracts to -1
  return (swaps & 1) ? -1 : 1;
}

// Conjugation sign of a grade-l blade: (-1)^l times the reversal sign.
constexpr int conjugate_sign(unsigned blade) {
  const int l = std::popcount(blade);
  const int rev = ((l * (l - 1) / 2) & 1) ? -1 : 1;
  return (l & 1) ? -rev : rev;
}

class Multivector {
 public:
  Multivector() = default;
  explicit Multivector(int n);
  Multivector(int n, std::vector<double> coeffs);

  static Multivector scalar(int n, double s);
  static Multivector blade(int n, unsigned mask, double c = 1.0);
  // e_j with 1-based j.
  static Multivector basis(int n, int j);
  static Multivector embed(std::span<const double> x);

  int dim() const { return n_; }
  std::size_t size() const { return c_.size(); }
  double operator[](unsigned b) const { return c_[b]; }
  double& operator[](unsigned b) { return c_[b]; }
  const std::vector<double>& coeffs() const { return c_; }
  double scalar_part() const { return c_.empty() ? 0.0 : c_[0]; }
  // Components on the single-generator blades e_1..e_n.
  std::vector<double> vector_part() const;

  Multivector& operator+=(const Multivector& o);
  Multivector& operator-=(const Multivector& o);
  Multivector& operator*=(double s);

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, double s) { return a *= s; }
  friend Multivector operator*(double s, Multivector a) { return a *= s; }
  Multivector operator-() const { return (*this) * -1.0; }

  std::string to_string(int precision = 6) const;

 private:
  int n_ = 0;
  std::vector<double> c_;
};

Multivector gproduct(const Multivector& u, const Multivector& v);
// Accumulates s * (u (.) v) into out without allocating.
void gproduct_accumulate(std::span<const double> u, std::span<const double> v, double s, std::span<double> out);
Multivector conjugate(const Multivector& u);
double norm(const Multivector& u);
Multivector embed(std::span<const double> x);

// Name of a blade such as "e1^e3"; the scalar blade is "1".
std::string blade_name(unsigned mask);

}  // namespace siolab::clifford
