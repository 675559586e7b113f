#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace siolab::quad {

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n);
  int size() const { return static_cast<int>(nodes.size()); }
};

// Shared rule instances (computed once, immutable afterwards).
const GaussLegendre& gauss_legendre(int n);

struct AdaptiveOptions {
  double rel_tol = 1e-13;
  double abs_tol = 1e-300;
  int max_depth = 48;
  int order = 10;
};

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;  // accumulated |coarse - fine| over accepted panels
  bool converged = true;
};

// Adaptive composite Gauss-Legendre: a panel is accepted when the estimate on
// the panel agrees with the sum over its two halves.
AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                         const AdaptiveOptions& opt = {});

// Same, with the interval first split at the given interior breakpoints.
AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                         std::span<const double> breakpoints, const AdaptiveOptions& opt = {});

// Pairwise (cascade) summation; deterministic regardless of thread layout.
double pairwise_sum(std::span<const double> values);

// Pairwise summation of `count` rows of `width` entries laid out row-major;
// writes the column sums into `out` (size `width`).
void pairwise_sum_rows(std::span<const double> rows, std::size_t width, std::span<double> out);

}  // namespace siolab::quad
