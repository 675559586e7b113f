#include "siolab/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "siolab/error.hpp"

namespace siolab::poly {

Polynomial::Polynomial(int n) : n_(n) {
  if (n < 1 || n > 3) throw DimensionError("polynomials support 1 to 3 variables");
}

Polynomial Polynomial::monomial(int n, Exponent e, double c) {
  Polynomial p(n);
  for (int k = n; k < 3; ++k)
    if (e[k] != 0) throw DimensionError("monomial uses a variable beyond the dimension");
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::constant(int n, double c) { return monomial(n, {0, 0, 0}, c); }

Polynomial Polynomial::norm_squared(int n) {
  Polynomial p(n);
  for (int k = 0; k < n; ++k) {
    Exponent e{0, 0, 0};
    e[k] = 2;
    p.add_term(e, 1.0);
  }
  return p;
}

void Polynomial::add_term(const Exponent& e, double c) {
  if (c == 0.0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

bool Polynomial::is_homogeneous() const {
  const int d = degree();
  return std::all_of(terms_.begin(), terms_.end(), [&](const auto& t) { return t.first[0] + t.first[1] + t.first[2] == d; });
}

double Polynomial::operator()(std::span<const double> x) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int k = 0; k < n_; ++k)
      for (int p = 0; p < e[k]; ++p) m *= x[k];
    s += m;
  }
  return s;
}

std::array<double, 3> Polynomial::gradient(std::span<const double> x) const {
  std::array<double, 3> g{0, 0, 0};
  for (int k = 0; k < n_; ++k) g[k] = derivative(k)(x);
  return g;
}

Polynomial Polynomial::derivative(int var) const {
  Polynomial d(n_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    d.add_term(f, c * e[var]);
  }
  return d;
}

Polynomial Polynomial::laplacian() const {
  Polynomial L(n_);
  for (int k = 0; k < n_; ++k) L += derivative(k).derivative(k);
  return L;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.n_ != n_) throw DimensionError("polynomial dimension mismatch");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_ != b.n_) throw DimensionError("polynomial dimension mismatch");
  Polynomial p(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) p.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
  return p;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial p(n_);
  for (const auto& [e, c] : terms_)
    if (std::abs(c) > tol) p.terms_.emplace(e, c);
  return p;
}

double Polynomial::max_coeff() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[3] = {"x", "y", "z"};
  std::ostringstream os;
  os.precision(12);
  bool first = true;
  // highest powers of x first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    const bool constant = e[0] + e[1] + e[2] == 0;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    const double a = std::abs(c);
    bool wrote = false;
    if (a != 1.0 || constant) {
      os << a;
      wrote = true;
    }
    for (int k = 0; k < n_; ++k) {
      if (e[k] == 0) continue;
      if (wrote) os << "*";
      os << names[k];
      if (e[k] > 1) os << "^" << e[k];
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

class Parser {
 public:
  Parser(const std::string& s, int n) : s_(s), n_(n) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw SpecError("polynomial parse error at offset " + std::to_string(pos_) + ": " + why + " in \"" + s_ + "\"");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p(n_);
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Polynomial t = term();
    p += neg ? t * -1.0 : t;
    for (;;) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else break;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = power();
    for (;;) {
      if (eat('*')) {
        p = p * power();
      } else if (eat('/')) {
        const double d = number();
        if (d == 0.0) fail("division by zero");
        p *= 1.0 / d;
      } else {
        // implicit product such as "3x" or "x y"
        skip();
        if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
          p = p * power();
        else
          break;
      }
    }
    return p;
  }

  Polynomial power() {
    Polynomial base = factor();
    if (eat('^')) {
      const double e = number();
      if (e < 0 || e != std::floor(e)) fail("exponent must be a non-negative integer");
      Polynomial r = Polynomial::constant(n_, 1.0);
      for (int k = 0; k < static_cast<int>(e); ++k) r = r * base;
      return r;
    }
    return base;
  }

  Polynomial factor() {
    skip();
    if (eat('(')) {
      Polynomial p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    if (eat('-')) return factor() * -1.0;
    if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      return Polynomial::constant(n_, number());
    if (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) {
      const char c = s_[pos_++];
      int var = -1;
      if (c == 'x' && pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        var = s_[pos_++] - '1';
      } else if (c == 'x') {
        var = 0;
      } else if (c == 'y') {
        var = 1;
      } else if (c == 'z') {
        var = 2;
      }
      if (var < 0 || var >= n_) fail(std::string("unknown variable '") + c + "'");
      Exponent e{0, 0, 0};
      e[var] = 1;
      return Polynomial::monomial(n_, e);
    }
    fail("expected a number, variable or '('");
  }

  double number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                s_[pos_] == 'e' || s_[pos_] == 'E'))
      ++pos_;
    if (start == pos_) fail("expected a number");
    try {
      return std::stod(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      fail("malformed number");
    }
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, int n) { return Parser(text, n).parse(); }

// ---------------------------------------------------------------------------

std::vector<Exponent> homogeneous_basis(int n, int d) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  if (n == 1) return {{d, 0, 0}};
  if (n == 2) {
    for (int a = d; a >= 0; --a) out.push_back({a, d - a, 0});
    return out;
  }
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

Decomposition harmonic_decompose(const Polynomial& P) {
  if (!P.is_homogeneous()) throw SpecError("harmonic_decompose needs a homogeneous polynomial");
  const int n = P.dim();
  Decomposition out;
  if (P.is_zero()) {
    out.parts.push_back(P);
    return out;
  }
  const Polynomial r2 = Polynomial::norm_squared(n);
  Polynomial rest = P;
  int d = P.degree();
  while (true) {
    const Polynomial lap = rest.laplacian();
    if (d < 2 || lap.pruned(1e-14 * std::max(1.0, rest.max_coeff())).is_zero()) {
      out.parts.push_back(rest);
      break;
    }
    // Find Q of degree d-2 with Laplacian(|x|^2 Q) = Laplacian(rest).
    const auto basis = homogeneous_basis(n, d - 2);
    const int m = static_cast<int>(basis.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
    auto index_of = [&](const Exponent& e) {
      const auto it = std::find(basis.begin(), basis.end(), e);
      if (it == basis.end()) throw Error("singular", "harmonic_decompose: unexpected monomial");
      return static_cast<int>(it - basis.begin());
    };
    for (int c = 0; c < m; ++c) {
      const Polynomial img = (r2 * Polynomial::monomial(n, basis[c])).laplacian();
      for (const auto& [e, v] : img.terms()) A(index_of(e), c) += v;
    }
    for (const auto& [e, v] : lap.terms()) rhs(index_of(e)) += v;
    const Eigen::VectorXd q = A.fullPivLu().solve(rhs);
    const double res = (A * q - rhs).cwiseAbs().maxCoeff();
    const double scale_ = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    out.solve_residual = std::max(out.solve_residual, res / scale_);
    if (!(res <= 1e-9 * scale_)) throw Error("singular", "harmonic_decompose: linear solve failed");
    Polynomial Q(n);
    for (int c = 0; c < m; ++c) Q += Polynomial::monomial(n, basis[c], q(c));
    Q = Q.pruned(1e-15 * std::max(1.0, Q.max_coeff()));
    out.parts.push_back((rest - r2 * Q).pruned(1e-15 * std::max(1.0, rest.max_coeff())));
    rest = Q;
    d -= 2;
    if (rest.is_zero()) break;
  }
  return out;
}

}  // namespace siolab::poly
