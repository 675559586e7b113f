#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "siolab/quadrature.hpp"

namespace siolab::growth {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Kind { power, power_log_plus, power_log_inv, power_log_D, max_powers, min_powers, tabulated };

std::string to_string(Kind k);
Kind kind_from_string(const std::string& s);

using QuadratureSpec = quad::AdaptiveOptions;

// A modulus of continuity on (0, D). Values are immutable after construction.
//
// `extend()` returns the function t -> w(min{t, D}) on (0, inf); it keeps the
// original endpoint as `cap()`.
class GrowthFunction {
 public:
  static GrowthFunction power(double alpha, double D = kInf);
  static GrowthFunction power_log_plus(double alpha, double theta, double D = kInf);
  static GrowthFunction power_log_inv(double alpha, double theta, double D = kInf);
  static GrowthFunction power_log_D(double alpha, double theta, double D);
  static GrowthFunction max_powers(double alpha, double beta, double D = kInf);
  static GrowthFunction min_powers(double alpha, double beta, double D = kInf);
  // Log-log piecewise linear through (t_i, w_i); D defaults to the last node.
  static GrowthFunction tabulated(std::vector<double> t, std::vector<double> w, double D = 0.0);

  static GrowthFunction from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  Kind kind() const { return kind_; }
  double D() const { return D_; }
  // Original endpoint for extended functions, +inf otherwise.
  double cap() const { return cap_; }
  bool is_extended() const { return cap_ < kInf; }
  double alpha() const { return a_; }
  double beta() const { return b_; }
  double theta() const { return theta_; }
  // Additive constant A or B of the logarithmic kinds.
  double log_shift() const { return shift_; }
  double scale() const { return scale_; }
  const std::vector<double>& table_t() const { return tt_; }
  const std::vector<double>& table_w() const { return tw_; }

  // w(t); DomainError for t <= 0 or t >= D, ExtrapolationError outside a table.
  double operator()(double t) const;
  double eval(double t) const { return (*this)(t); }
  // w(D) as a left limit; for D = inf returns inf.
  double at_endpoint() const;

  GrowthFunction extend() const;
  GrowthFunction scaled(double c) const;

  // Points where the closed form is not smooth (t = 1, table nodes, cap).
  std::vector<double> kinks() const;

  // Evaluation without domain checks; tables continue their end segments.
  double raw(double t) const;

  std::string describe() const;

 private:
  GrowthFunction() = default;
  double base(double t) const;

  Kind kind_ = Kind::power;
  double a_ = 0.5, b_ = 0.0, theta_ = 0.0, shift_ = 0.0;
  double D_ = kInf, cap_ = kInf, scale_ = 1.0;
  std::vector<double> tt_, tw_;  // table nodes
};

// Zygmund transform w_Z(t) = int_0^t w(s) ds/s + t int_t^D w(s)/s^2 ds.
double zygmund_transform(const GrowthFunction& g, double t, const QuadratureSpec& q = {});
// W(t) = int_t^D w(s)/s^2 ds.
double w_omega(const GrowthFunction& g, double t, const QuadratureSpec& q = {});
// int_0^t w(s) ds/s.
double lower_integral(const GrowthFunction& g, double t, const QuadratureSpec& q = {});
// int_0^D w(t)/max{t, t^2} dt; DivergenceError when not Dini.
double dini_integral(const GrowthFunction& g, const QuadratureSpec& q = {});

struct LogGrid {
  int t_points = 512;
  // s = 10^{-d} and s = 10^{+d} for each decade d (increasing).
  std::vector<double> decades = {25, 50, 100, 200};
  double tolerance = 0.02;
  // t-grid used for sup_t w_Z/w and w(2t)/w(t).
  int sup_points = 96;
  double sup_span_decades = 12;
};

double dilation_function(const GrowthFunction& g, double s, const LogGrid& grid = {});

struct Indices {
  double i_lower = 0.0;
  double i_upper = 0.0;
  bool lower_converged = true;
  bool upper_converged = true;
  std::vector<std::pair<double, double>> lower_slopes;  // (s, slope ending at s)
  std::vector<std::pair<double, double>> upper_slopes;
};

Indices dilation_indices(const GrowthFunction& g, const LogGrid& grid = {});

struct GrowthAnalysis {
  double doubling_constant = 0.0;
  double dini_integral = 0.0;
  double zygmund_constant = 0.0;
  double i_lower = 0.0;
  double i_upper = 0.0;
  bool indices_converged = true;
  nlohmann::json grid_spec;

  nlohmann::json to_json() const;
};

GrowthAnalysis analyze(const GrowthFunction& g, const LogGrid& grid = {}, const QuadratureSpec& q = {});

// Log-spaced sample points inside (0, D) used by the grid suprema.
std::vector<double> sup_grid(const GrowthFunction& g, const LogGrid& grid, double upper_fraction = 1.0);

// Constant C_2 of the extension bounds: C_Zyg + max{1, C_Zyg} w(D)/w(D/2)
// for D < inf, C_Zyg otherwise.
double extension_constant(const GrowthFunction& g, double zygmund_constant);

}  // namespace siolab::growth
