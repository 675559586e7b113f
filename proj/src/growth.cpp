#include "siolab/growth.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "siolab/error.hpp"

namespace siolab::growth {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kHuge = 1e300;

double read_number(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf" || s == "infinity") return kInf;
  }
  throw SpecError(std::string("growth function: key '") + key + "' must be a number");
}

void check_exponent(double alpha, const char* what) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw SpecError(std::string(what) + ": exponent must be positive");
}

void check_D(double D) {
  if (!(D > 0.0)) throw SpecError("growth function: D must be positive or inf");
}

}  // namespace

std::string to_string(Kind k) {
  switch (k) {
    case Kind::power: return "power";
    case Kind::power_log_plus: return "power_log_plus";
    case Kind::power_log_inv: return "power_log_inv";
    case Kind::power_log_D: return "power_log_D";
    case Kind::max_powers: return "max_powers";
    case Kind::min_powers: return "min_powers";
    case Kind::tabulated: return "tabulated";
  }
  return "?";
}

Kind kind_from_string(const std::string& s) {
  for (Kind k : {Kind::power, Kind::power_log_plus, Kind::power_log_inv, Kind::power_log_D,
                 Kind::max_powers, Kind::min_powers, Kind::tabulated})
    if (to_string(k) == s) return k;
  throw SpecError("unknown growth function kind '" + s + "'");
}

GrowthFunction GrowthFunction::power(double alpha, double D) {
  check_exponent(alpha, "power");
  check_D(D);
  GrowthFunction g;
  g.kind_ = Kind::power;
  g.a_ = alpha;
  g.D_ = D;
  return g;
}

GrowthFunction GrowthFunction::power_log_plus(double alpha, double theta, double D) {
  check_exponent(alpha, "power_log_plus");
  check_D(D);
  GrowthFunction g;
  g.kind_ = Kind::power_log_plus;
  g.a_ = alpha;
  g.theta_ = theta;
  g.shift_ = std::max(1.0, -theta / alpha);
  g.D_ = D;
  return g;
}

GrowthFunction GrowthFunction::power_log_inv(double alpha, double theta, double D) {
  check_exponent(alpha, "power_log_inv");
  check_D(D);
  GrowthFunction g;
  g.kind_ = Kind::power_log_inv;
  g.a_ = alpha;
  g.theta_ = theta;
  g.shift_ = std::max(1.0, theta / alpha);
  g.D_ = D;
  return g;
}

GrowthFunction GrowthFunction::power_log_D(double alpha, double theta, double D) {
  check_exponent(alpha, "power_log_D");
  check_D(D);
  if (!std::isfinite(D)) throw SpecError("power_log_D requires a finite D");
  GrowthFunction g;
  g.kind_ = Kind::power_log_D;
  g.a_ = alpha;
  g.theta_ = theta;
  g.shift_ = std::max(1.0, theta / alpha);
  g.D_ = D;
  return g;
}

GrowthFunction GrowthFunction::max_powers(double alpha, double beta, double D) {
  check_exponent(alpha, "max_powers");
  check_D(D);
  if (!(alpha < beta)) throw SpecError("max_powers requires alpha < beta");
  GrowthFunction g;
  g.kind_ = Kind::max_powers;
  g.a_ = alpha;
  g.b_ = beta;
  g.D_ = D;
  return g;
}

GrowthFunction GrowthFunction::min_powers(double alpha, double beta, double D) {
  auto g = max_powers(alpha, beta, D);
  g.kind_ = Kind::min_powers;
  return g;
}

GrowthFunction GrowthFunction::tabulated(std::vector<double> t, std::vector<double> w, double D) {
  if (t.size() < 2 || t.size() != w.size())
    throw SpecError("tabulated growth function needs >= 2 (t, w) pairs of equal length");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0) || !(w[i] > 0.0) || !std::isfinite(t[i]) || !std::isfinite(w[i]))
      throw SpecError("tabulated growth function: nodes and values must be positive and finite");
    if (i > 0 && !(t[i] > t[i - 1])) throw SpecError("tabulated growth function: t must increase strictly");
    if (i > 0 && w[i] < w[i - 1]) throw SpecError("tabulated growth function: values are not monotone");
  }
  if (D == 0.0) D = t.back();
  if (D < t.back()) throw SpecError("tabulated growth function: D lies inside the table");
  GrowthFunction g;
  g.kind_ = Kind::tabulated;
  g.tt_ = std::move(t);
  g.tw_ = std::move(w);
  g.D_ = D;
  return g;
}

GrowthFunction GrowthFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SpecError("growth function spec needs a 'kind'");
  const Kind k = kind_from_string(j.at("kind").get<std::string>());
  const double D = read_number(j, "D", k == Kind::tabulated ? 0.0 : kInf);
  const double alpha = read_number(j, "alpha", 0.5);
  const double theta = read_number(j, "theta", 1.0);
  GrowthFunction g = [&] {
    switch (k) {
      case Kind::power: return power(alpha, D);
      case Kind::power_log_plus: return power_log_plus(alpha, theta, D);
      case Kind::power_log_inv: return power_log_inv(alpha, theta, D);
      case Kind::power_log_D:
        if (!std::isfinite(D)) throw SpecError("power_log_D requires a finite D");
        return power_log_D(alpha, theta, D);
      case Kind::max_powers: return max_powers(alpha, read_number(j, "beta", 0.7), D);
      case Kind::min_powers: return min_powers(alpha, read_number(j, "beta", 0.7), D);
      case Kind::tabulated:
        if (!j.contains("t") || !j.contains("omega")) throw SpecError("tabulated growth function needs 't' and 'omega'");
        return tabulated(j.at("t").get<std::vector<double>>(), j.at("omega").get<std::vector<double>>(), D);
    }
    throw SpecError("unreachable growth kind");
  }();
  if (j.contains("scale")) g = g.scaled(read_number(j, "scale", 1.0));
  if (j.value("extended", false)) g = g.extend();
  return g;
}

nlohmann::json GrowthFunction::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  const double d = is_extended() ? cap_ : D_;
  if (std::isfinite(d)) j["D"] = d; else j["D"] = "inf";
  switch (kind_) {
    case Kind::power: j["alpha"] = a_; break;
    case Kind::power_log_plus:
    case Kind::power_log_inv:
    case Kind::power_log_D: j["alpha"] = a_; j["theta"] = theta_; break;
    case Kind::max_powers:
    case Kind::min_powers: j["alpha"] = a_; j["beta"] = b_; break;
    case Kind::tabulated: j["t"] = tt_; j["omega"] = tw_; break;
  }
  if (scale_ != 1.0) j["scale"] = scale_;
  if (is_extended()) j["extended"] = true;
  return j;
}

double GrowthFunction::base(double t) const {
  switch (kind_) {
    case Kind::power: return std::pow(t, a_);
    case Kind::power_log_plus: return std::pow(t, a_) * std::pow(shift_ + std::max(0.0, std::log(t)), theta_);
    case Kind::power_log_inv: return std::pow(t, a_) * std::pow(shift_ + std::max(0.0, -std::log(t)), theta_);
    case Kind::power_log_D: return std::pow(t, a_) * std::pow(shift_ + std::log((is_extended() ? cap_ : D_) / t), theta_);
    case Kind::max_powers: return std::max(std::pow(t, a_), std::pow(t, b_));
    case Kind::min_powers: return std::min(std::pow(t, a_), std::pow(t, b_));
    case Kind::tabulated: {
      const auto& T = tt_;
      const auto it = std::upper_bound(T.begin(), T.end(), t);
      std::size_t i = (it == T.begin()) ? 0 : static_cast<std::size_t>(it - T.begin()) - 1;
      i = std::min(i, T.size() - 2);
      const double x0 = std::log(T[i]), x1 = std::log(T[i + 1]);
      const double y0 = std::log(tw_[i]), y1 = std::log(tw_[i + 1]);
      const double lam = (std::log(t) - x0) / (x1 - x0);
      return std::exp(y0 + lam * (y1 - y0));
    }
  }
  return 0.0;
}

double GrowthFunction::raw(double t) const {
  // power_log_D is only meaningful up to D; beyond it the log factor may go negative.
  if (kind_ == Kind::power_log_D) t = std::min(t, is_extended() ? cap_ : D_);
  if (is_extended()) t = std::min(t, cap_);
  return scale_ * base(t);
}

double GrowthFunction::operator()(double t) const {
  if (!(t > 0.0)) throw DomainError("growth function evaluated at t <= 0");
  if (!(t < D_)) throw DomainError("growth function evaluated at t >= D");
  if (kind_ == Kind::tabulated) {
    const double tc = is_extended() ? std::min(t, cap_) : t;
    if (tc < tt_.front() || tc > tt_.back())
      throw ExtrapolationError("tabulated growth function queried outside its table");
  }
  return raw(t);
}

double GrowthFunction::at_endpoint() const {
  if (is_extended()) return scale_ * base(cap_);
  if (!std::isfinite(D_)) return kInf;
  if (kind_ == Kind::tabulated && D_ > tt_.back()) return scale_ * tw_.back();
  return raw(D_);
}

GrowthFunction GrowthFunction::extend() const {
  GrowthFunction g = *this;
  if (is_extended() || !std::isfinite(D_)) {
    g.D_ = kInf;
    return g;
  }
  g.cap_ = D_;
  g.D_ = kInf;
  return g;
}

GrowthFunction GrowthFunction::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw SpecError("growth function scale must be positive");
  GrowthFunction g = *this;
  g.scale_ *= c;
  return g;
}

std::vector<double> GrowthFunction::kinks() const {
  std::vector<double> k;
  switch (kind_) {
    case Kind::power_log_plus:
    case Kind::power_log_inv:
    case Kind::max_powers:
    case Kind::min_powers: k.push_back(1.0); break;
    case Kind::tabulated: k = tt_; break;
    default: break;
  }
  if (is_extended()) k.push_back(cap_);
  std::sort(k.begin(), k.end());
  return k;
}

std::string GrowthFunction::describe() const {
  std::ostringstream os;
  os << to_json().dump();
  return os.str();
}

// ---------------------------------------------------------------------------
// Integrals. All of them run in u = ln s, where the integrands are smooth
// between kinks.

namespace {

std::vector<double> log_breaks(const GrowthFunction& g) {
  std::vector<double> u;
  for (double k : g.kinks()) u.push_back(std::log(k));
  return u;
}

double checked(const quad::AdaptiveResult& r, const char* what) {
  if (!r.converged) throw ToleranceError(std::string(what) + ": adaptive quadrature did not reach tolerance");
  if (!std::isfinite(r.value)) throw DivergenceError(std::string(what) + ": non-finite value");
  return r.value;
}

// Left end of the integration range and the local power law used below it.
double lower_cut(const GrowthFunction& g) {
  return g.kind() == Kind::tabulated ? g.table_t().front() : kTiny;
}

double local_exponent(const GrowthFunction& g, double s) {
  return std::log(g.raw(s * std::exp(1.0)) / g.raw(s));
}

}  // namespace

double lower_integral(const GrowthFunction& g, double t, const QuadratureSpec& q) {
  if (!(t > 0.0)) throw DomainError("lower integral needs t > 0");
  const double s0 = lower_cut(g);
  if (t <= s0) {
    const double a = g.kind() == Kind::tabulated
                         ? std::log(g.table_w()[1] / g.table_w()[0]) / std::log(g.table_t()[1] / g.table_t()[0])
                         : local_exponent(g, t);
    if (!(a > 1e-9)) throw DivergenceError("w(s)/s is not integrable at 0 (not Dini)");
    return g.raw(t) / a;
  }
  // Below s0 the modulus is continued as the local power law s0^-a w(s0) s^a.
  const double a = g.kind() == Kind::tabulated
                       ? std::log(g.table_w()[1] / g.table_w()[0]) / std::log(g.table_t()[1] / g.table_t()[0])
                       : local_exponent(g, s0);
  if (!(a > 1e-9)) throw DivergenceError("w(s)/s is not integrable at 0 (not Dini)");
  const double tail = g.raw(s0) / a;
  const auto br = log_breaks(g);
  const auto r = quad::integrate([&](double u) { return g.raw(std::exp(u)); }, std::log(s0), std::log(t), br, q);
  return tail + checked(r, "lower integral");
}

double w_omega(const GrowthFunction& g, double t, const QuadratureSpec& q) {
  if (!(t > 0.0) || !(t < g.D())) throw DomainError("W_omega needs 0 < t < D");
  const auto br = log_breaks(g);
  auto integrand = [&](double u) { return g.raw(std::exp(u)) * std::exp(-u); };
  if (std::isfinite(g.D())) {
    const auto r = quad::integrate(integrand, std::log(t), std::log(g.D()), br, q);
    return checked(r, "W_omega");
  }
  // D = inf. Integrate out to S = t e^230 (or cap it), then close with the
  // local power law w(s) ~ w(S)(s/S)^a, valid for a < 1.
  const double uS = std::min(std::log(t) + 230.0, std::log(kHuge) - 2.0);
  const double S = std::exp(uS);
  double tail;
  if (g.is_extended() && S >= g.cap()) {
    tail = g.raw(S) / S;
  } else {
    const double a = local_exponent(g, S);
    if (!(a < 1.0 - 1e-9)) throw DivergenceError("W_omega: tail integral diverges (growth exponent >= 1 at infinity)");
    tail = g.raw(S) / (S * (1.0 - a));
  }
  if (uS <= std::log(t)) return g.raw(t) / t;  // t already beyond the cut
  const auto r = quad::integrate(integrand, std::log(t), uS, br, q);
  return checked(r, "W_omega") + tail;
}

double zygmund_transform(const GrowthFunction& g, double t, const QuadratureSpec& q) {
  if (!(t > 0.0) || !(t < g.D())) throw DomainError("zygmund transform needs 0 < t < D");
  return lower_integral(g, t, q) + t * w_omega(g, t, q);
}

double dini_integral(const GrowthFunction& g, const QuadratureSpec& q) {
  const double D = g.D();
  if (D <= 1.0) {
    // int_0^D w(t)/t dt
    if (std::isfinite(D) && g.kind() == Kind::tabulated && D > g.table_t().back()) {
      return lower_integral(g, g.table_t().back(), q) + g.table_w().back() * g.scale() * std::log(D / g.table_t().back());
    }
    return lower_integral(g, D, q);
  }
  return lower_integral(g, 1.0, q) + w_omega(g, 1.0, q);
}

// ---------------------------------------------------------------------------
// Dilation function and indices.

double dilation_function(const GrowthFunction& g, double s, const LogGrid& grid) {
  if (!(s > 0.0)) throw DomainError("dilation function needs s > 0");
  double lo, hi;
  if (g.kind() == Kind::tabulated && !g.is_extended()) {
    lo = std::max(g.table_t().front(), g.table_t().front() / s);
    hi = std::min(g.table_t().back(), g.table_t().back() / s);
  } else {
    lo = std::max(kTiny, kTiny / s);
    hi = std::isfinite(g.D()) ? std::min(g.D(), g.D() / s) * (1.0 - 1e-12) : kHuge / std::max(1.0, s);
    if (g.kind() == Kind::tabulated) lo = std::max(lo, std::max(g.table_t().front(), g.table_t().front() / s));
  }
  if (!(hi > lo) || grid.t_points < 2) throw DomainError("dilation function: empty t-grid");
  std::vector<double> ts;
  ts.reserve(grid.t_points + 8);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < grid.t_points; ++i) ts.push_back(std::exp(l0 + (l1 - l0) * i / (grid.t_points - 1)));
  for (double k : g.kinks()) {
    for (double c : {k, k / s})
      if (c >= lo && c <= hi) ts.push_back(c);
  }
  ts.push_back(hi);
  double best = 0.0;
  for (double t : ts) {
    t = std::clamp(t, lo, hi);
    best = std::max(best, g.raw(t * s) / g.raw(t));
  }
  return best;
}

Indices dilation_indices(const GrowthFunction& g, const LogGrid& grid) {
  std::vector<double> decades = grid.decades;
  if (g.kind() == Kind::tabulated && !g.is_extended()) {
    const double span = std::log10(g.table_t().back() / g.table_t().front());
    decades = {span / 16, span / 8, span / 4, span / 2};
  }
  if (decades.size() < 2) throw SpecError("dilation indices need at least two decades");
  Indices out;
  auto slope_series = [&](int sign, std::vector<std::pair<double, double>>& slopes) {
    double prev_s = std::pow(10.0, sign * decades[0]);
    double prev_h = std::log(dilation_function(g, prev_s, grid));
    for (std::size_t k = 1; k < decades.size(); ++k) {
      const double s = std::pow(10.0, sign * decades[k]);
      const double h = std::log(dilation_function(g, s, grid));
      slopes.emplace_back(s, (h - prev_h) / (std::log(s) - std::log(prev_s)));
      prev_s = s;
      prev_h = h;
    }
  };
  slope_series(-1, out.lower_slopes);
  slope_series(+1, out.upper_slopes);
  out.i_lower = out.lower_slopes.back().second;
  out.i_upper = out.upper_slopes.back().second;
  if (out.lower_slopes.size() >= 2)
    out.lower_converged = std::abs(out.lower_slopes.back().second - out.lower_slopes[out.lower_slopes.size() - 2].second) <= grid.tolerance;
  if (out.upper_slopes.size() >= 2)
    out.upper_converged = std::abs(out.upper_slopes.back().second - out.upper_slopes[out.upper_slopes.size() - 2].second) <= grid.tolerance;
  return out;
}

std::vector<double> sup_grid(const GrowthFunction& g, const LogGrid& grid, double upper_fraction) {
  double lo, hi;
  if (g.kind() == Kind::tabulated && !g.is_extended()) {
    lo = g.table_t().front();
    hi = std::min(g.D(), g.table_t().back()) * upper_fraction;
  } else if (std::isfinite(g.D())) {
    hi = g.D() * upper_fraction * (1.0 - 1e-9);
    lo = g.D() * std::pow(10.0, -grid.sup_span_decades);
  } else {
    const double c = g.is_extended() ? g.cap() : 1.0;
    lo = c * std::pow(10.0, -grid.sup_span_decades);
    hi = c * std::pow(10.0, grid.sup_span_decades) * upper_fraction;
  }
  if (g.kind() == Kind::tabulated) lo = std::max(lo, g.table_t().front());
  std::vector<double> ts;
  const int n = std::max(2, grid.sup_points);
  for (int i = 0; i < n; ++i) ts.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  for (double k : g.kinks())
    if (k > lo && k < hi) ts.push_back(k);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  return ts;
}

nlohmann::json GrowthAnalysis::to_json() const {
  return {{"doubling_constant", doubling_constant}, {"dini_integral", dini_integral},
          {"zygmund_constant", zygmund_constant},   {"i_lower", i_lower},
          {"i_upper", i_upper},                     {"indices_converged", indices_converged},
          {"grid_spec", grid_spec}};
}

GrowthAnalysis analyze(const GrowthFunction& g, const LogGrid& grid, const QuadratureSpec& q) {
  GrowthAnalysis a;
  double dou = 1.0;
  for (double t : sup_grid(g, grid, 0.5)) dou = std::max(dou, g.raw(2.0 * t) / g.raw(t));
  a.doubling_constant = dou;
  a.dini_integral = dini_integral(g, q);
  double zyg = 0.0;
  for (double t : sup_grid(g, grid)) zyg = std::max(zyg, zygmund_transform(g, t, q) / g.raw(t));
  a.zygmund_constant = zyg;
  const auto idx = dilation_indices(g, grid);
  a.i_lower = idx.i_lower;
  a.i_upper = idx.i_upper;
  a.indices_converged = idx.lower_converged && idx.upper_converged;
  a.grid_spec = {{"t_points", grid.t_points},
                 {"decades", grid.decades},
                 {"tolerance", grid.tolerance},
                 {"sup_points", grid.sup_points},
                 {"sup_span_decades", grid.sup_span_decades}};
  return a;
}

double extension_constant(const GrowthFunction& g, double czyg) {
  const double D = g.is_extended() ? g.cap() : g.D();
  if (!std::isfinite(D)) return czyg;
  return czyg + std::max(1.0, czyg) * g.raw(D) / g.raw(D / 2.0);
}

}  // namespace siolab::growth
