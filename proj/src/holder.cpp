#include "siolab/holder.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "siolab/error.hpp"
#include "siolab/parallel.hpp"

namespace siolab::holder {

namespace {

double delta(const BoundaryField& f, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (int b = 0; b < f.width; ++b) {
    const double d = f.data[i * f.width + b] - f.data[j * f.width + b];
    s += d * d;
  }
  return std::sqrt(s);
}

double magnitude(const BoundaryField& f, std::size_t i) {
  double s = 0.0;
  for (int b = 0; b < f.width; ++b) s += f.data[i * f.width + b] * f.data[i * f.width + b];
  return std::sqrt(s);
}

struct Best {
  double ratio = 0.0;
  std::size_t i = 0, j = 0;
};

}  // namespace

nlohmann::json HolderReport::to_json() const {
  return {{"seminorm", seminorm},
          {"sup_norm", sup_norm},
          {"norm", norm},
          {"argmax_pair", {argmax_pair.first, argmax_pair.second}},
          {"pairs_examined", pairs_examined},
          {"pair_budget", pair_budget}};
}

HolderReport seminorm(const std::vector<geometry::Point>& pts, const BoundaryField& f, const growth::GrowthFunction& g,
                      const PairPolicy& policy) {
  if (f.size() != pts.size()) throw DimensionError("field does not match the point set");
  const auto ge = g.extend();
  const std::size_t N = pts.size();
  HolderReport rep;
  for (std::size_t i = 0; i < N; ++i) rep.sup_norm = std::max(rep.sup_norm, magnitude(f, i));
  if (N < 2) {
    rep.norm = rep.sup_norm;
    rep.pair_budget = "singleton";
    return rep;
  }
  auto ratio = [&](std::size_t i, std::size_t j) {
    const double d = geometry::distance(pts[i], pts[j]);
    if (!(d > 0.0)) return 0.0;
    return delta(f, i, j) / ge.raw(d);
  };
  Best best;
  if (N <= policy.all_pairs_max) {
    std::vector<Best> rows(N);
    parallel_for(N, [&](std::size_t i) {
      Best b;
      for (std::size_t j = i + 1; j < N; ++j) {
        const double r = ratio(i, j);
        if (r > b.ratio) b = {r, i, j};
      }
      rows[i] = b;
    });
    for (const auto& b : rows)
      if (b.ratio > best.ratio) best = b;
    rep.pairs_examined = N * (N - 1) / 2;
    rep.pair_budget = "all pairs";
  } else {
    // nearest neighbours
    std::vector<Best> rows(N);
    std::vector<double> dmin(N, 1e300);
    parallel_for(N, [&](std::size_t i) {
      std::size_t nn = i;
      for (std::size_t j = 0; j < N; ++j) {
        if (j == i) continue;
        const double d = geometry::distance(pts[i], pts[j]);
        if (d > 0.0 && d < dmin[i]) dmin[i] = d, nn = j;
      }
      const double r = nn == i ? 0.0 : ratio(i, nn);
      rows[i] = {r, std::min(i, nn), std::max(i, nn)};
    });
    for (const auto& b : rows)
      if (b.ratio > best.ratio) best = b;
    std::size_t examined = N;
    // dyadic annuli between the smallest and largest distance
    const double d0 = *std::min_element(dmin.begin(), dmin.end());
    double dmax = 0.0;
    for (std::size_t j = 1; j < N; ++j) dmax = std::max(dmax, geometry::distance(pts[0], pts[j]));
    dmax *= 2.0;
    const int bins = std::max(1, static_cast<int>(std::ceil(std::log2(dmax / d0))) + 1);
    std::vector<std::size_t> filled(bins, 0);
    std::mt19937_64 rng(policy.seed);
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    const std::size_t budget = 50 * policy.annulus_cap * static_cast<std::size_t>(bins);
    std::size_t open = static_cast<std::size_t>(bins);
    for (std::size_t draw = 0; draw < budget && open > 0; ++draw) {
      const std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      const double d = geometry::distance(pts[i], pts[j]);
      if (!(d > 0.0)) continue;
      const int k = std::clamp(static_cast<int>(std::floor(std::log2(d / d0))), 0, bins - 1);
      if (filled[k] >= policy.annulus_cap) continue;
      if (++filled[k] == policy.annulus_cap) --open;
      ++examined;
      const double r = delta(f, i, j) / ge.raw(d);
      if (r > best.ratio) best = {r, std::min(i, j), std::max(i, j)};
    }
    rep.pairs_examined = examined;
    rep.pair_budget = "nearest neighbours + dyadic annuli (cap " + std::to_string(policy.annulus_cap) + ")";
  }
  rep.seminorm = best.ratio;
  rep.argmax_pair = {best.i, best.j};
  rep.norm = rep.sup_norm + rep.seminorm;
  return rep;
}

HolderReport seminorm(const geometry::BoundaryMesh& mesh, const BoundaryField& f, const growth::GrowthFunction& g,
                      const PairPolicy& policy) {
  return seminorm(mesh.nodes, f, g, policy);
}

ProductCheck product_norm_check(const geometry::BoundaryMesh& mesh, const BoundaryField& f, const BoundaryField& g,
                                const growth::GrowthFunction& gf, const PairPolicy& policy) {
  if (f.width != 1 || g.width != 1) throw DimensionError("product_norm_check expects scalar fields");
  if (f.size() != g.size()) throw DimensionError("fields live on different meshes");
  BoundaryField fg(f.size(), 1);
  for (std::size_t i = 0; i < f.size(); ++i) fg.data[i] = f.data[i] * g.data[i];
  ProductCheck c;
  c.norm_fg = seminorm(mesh, fg, gf, policy).norm;
  c.norm_f = seminorm(mesh, f, gf, policy).norm;
  c.norm_g = seminorm(mesh, g, gf, policy).norm;
  c.holds = c.norm_fg <= c.norm_f * c.norm_g * (1.0 + 1e-12);
  return c;
}

std::vector<ModulusRow> modulus_profile(const std::vector<geometry::Point>& pts, const BoundaryField& f, double d0) {
  const std::size_t N = pts.size();
  if (N < 2) throw DomainError("modulus_profile needs at least two points");
  if (f.size() != N) throw DimensionError("field does not match the point set");
  double dmin = 1e300, dmax = 0.0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = geometry::distance(pts[i], pts[j]);
      if (d > 0.0) dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
  if (d0 <= 0.0) d0 = dmin;
  const int bins = std::max(1, static_cast<int>(std::floor(std::log2(dmax / d0))) + 1);
  std::vector<double> best(bins, -1.0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; j < N; ++j) {
      const double d = geometry::distance(pts[i], pts[j]);
      if (d < d0) continue;
      const int k = std::min(bins - 1, static_cast<int>(std::floor(std::log2(d / d0))));
      best[k] = std::max(best[k], delta(f, i, j));
    }
  std::vector<ModulusRow> rows;
  for (int k = 0; k < bins; ++k)
    if (best[k] >= 0.0) rows.push_back({d0 * std::ldexp(1.0, k), d0 * std::ldexp(1.0, k + 1), best[k]});
  return rows;
}

std::string modulus_csv(const std::vector<ModulusRow>& rows) {
  std::ostringstream os;
  os << "bin_lo,bin_hi,max_delta\n";
  char buf[96];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", r.bin_lo, r.bin_hi, r.max_delta);
    os << buf;
  }
  return os.str();
}

}  // namespace siolab::holder
