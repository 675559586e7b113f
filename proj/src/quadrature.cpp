#include "siolab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "siolab/error.hpp"

namespace siolab::quad {

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  if (n < 1) throw DomainError("Gauss-Legendre rule needs at least one node");
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0, p1 = x;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged root
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n == 1) {
    nodes[0] = 0.0;
    weights[0] = 2.0;
  }
}

const GaussLegendre& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

namespace {

double panel(const std::function<double(double)>& f, double a, double b, const GaussLegendre& rule) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < rule.size(); ++i) s += rule.weights[i] * f(c + h * rule.nodes[i]);
  return s * h;
}

void recurse(const std::function<double(double)>& f, double a, double b, double whole,
             const GaussLegendre& rule, const AdaptiveOptions& opt, int depth, double scale,
             AdaptiveResult& out) {
  const double m = 0.5 * (a + b);
  const double left = panel(f, a, m, rule);
  const double right = panel(f, m, b, rule);
  const double fine = left + right;
  const double diff = std::abs(fine - whole);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::max(std::abs(fine), scale));
  if (diff <= tol || depth >= opt.max_depth) {
    if (depth >= opt.max_depth && diff > tol) out.converged = false;
    out.value += fine;
    out.error += diff;
    return;
  }
  recurse(f, a, m, left, rule, opt, depth + 1, scale, out);
  recurse(f, m, b, right, rule, opt, depth + 1, scale, out);
}

}  // namespace

AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                         const AdaptiveOptions& opt) {
  AdaptiveResult out;
  out.value = 0.0;
  if (a == b) return out;
  const auto& rule = gauss_legendre(opt.order);
  const double whole = panel(f, a, b, rule);
  recurse(f, a, b, whole, rule, opt, 0, std::abs(whole) * 1e-3, out);
  return out;
}

AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                         std::span<const double> breakpoints, const AdaptiveOptions& opt) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  AdaptiveResult total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const auto r = integrate(f, cuts[i], cuts[i + 1], opt);
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
  }
  return total;
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = v.size() / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

namespace {

void pairwise_rows(const double* rows, std::size_t count, std::size_t width, double* out) {
  if (count <= 16) {
    for (std::size_t c = 0; c < width; ++c) out[c] = 0.0;
    for (std::size_t r = 0; r < count; ++r)
      for (std::size_t c = 0; c < width; ++c) out[c] += rows[r * width + c];
    return;
  }
  const std::size_t h = count / 2;
  double left[256], right[256];
  pairwise_rows(rows, h, width, left);
  pairwise_rows(rows + h * width, count - h, width, right);
  for (std::size_t c = 0; c < width; ++c) out[c] = left[c] + right[c];
}

}  // namespace

void pairwise_sum_rows(std::span<const double> rows, std::size_t width, std::span<double> out) {
  if (width == 0 || width > 256 || out.size() < width)
    throw DimensionError("pairwise_sum_rows: width must be in [1, 256]");
  pairwise_rows(rows.data(), rows.size() / width, width, out.data());
}

}  // namespace siolab::quad
