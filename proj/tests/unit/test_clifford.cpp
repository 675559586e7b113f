#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "siolab/clifford.hpp"

using namespace siolab::clifford;

namespace {

// Sign of e_A e_B by sorting the concatenated generator list and contracting
// equal neighbours (each contraction contributes e_j e_j = -1).
int brute_sign(unsigned a, unsigned b) {
  std::vector<int> g;
  for (int i = 0; i < 8; ++i)
    if (a >> i & 1u) g.push_back(i);
  for (int i = 0; i < 8; ++i)
    if (b >> i & 1u) g.push_back(i);
  int sign = 1;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j + 1 < g.size() - i; ++j)
      if (g[j] > g[j + 1]) std::swap(g[j], g[j + 1]), sign = -sign;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (g[i] == g[i + 1]) sign = -sign, ++i;
  return sign;
}

}  // namespace

TEST_CASE("blade signs agree with a brute-force reordering") {
  for (unsigned a = 0; a < 32; ++a)
    for (unsigned b = 0; b < 32; ++b) REQUIRE(blade_sign(a, b) == brute_sign(a, b));
}

TEST_CASE("generators square to -1 and anticommute") {
  for (int n = 2; n <= 5; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const auto p = gproduct(Multivector::basis(n, i), Multivector::basis(n, j));
        const auto q = gproduct(Multivector::basis(n, j), Multivector::basis(n, i));
        if (i == j) {
          CHECK(p[0] == -1.0);
        } else {
          CHECK((p + q).coeffs() == std::vector<double>(p.size(), 0.0));
        }
      }
}

TEST_CASE("vectors square to minus their squared length") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N(0, 1);
  for (int n = 2; n <= 5; ++n)
    for (int k = 0; k < 200; ++k) {
      std::vector<double> x(n);
      double r2 = 0;
      for (auto& v : x) v = N(rng), r2 += v * v;
      const auto X = embed(x);
      const auto s = gproduct(X, X);
      CHECK(std::abs(s[0] + r2) < 1e-12);
      for (std::size_t b = 1; b < s.size(); ++b) CHECK(std::abs(s[b]) < 1e-12);
    }
}

TEST_CASE("product is associative and conjugation reverses products") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0, 1);
  const int n = 3;
  auto rnd = [&] {
    Multivector m(n);
    for (unsigned b = 0; b < m.size(); ++b) m[b] = N(rng);
    return m;
  };
  for (int k = 0; k < 20; ++k) {
    const auto u = rnd(), v = rnd(), w = rnd();
    const auto d = gproduct(gproduct(u, v), w) - gproduct(u, gproduct(v, w));
    CHECK(norm(d) < 1e-12);
    const auto c = conjugate(gproduct(u, v)) - gproduct(conjugate(v), conjugate(u));
    CHECK(norm(c) < 1e-12);
  }
}

TEST_CASE("blade names") {
  CHECK(blade_name(0) == "1");
  CHECK(blade_name(0b101) == "e1^e3");
}
