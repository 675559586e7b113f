#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "siolab/field.hpp"
#include "siolab/geometry.hpp"
#include "siolab/growth.hpp"

namespace siolab::holder {

struct PairPolicy {
  std::size_t all_pairs_max = 4096;  // exhaustive scan up to this many points
  std::size_t annulus_cap = 100000;  // sampled pairs per dyadic annulus above it
  std::uint64_t seed = 1;
};

struct HolderReport {
  double seminorm = 0.0;
  double sup_norm = 0.0;
  double norm = 0.0;
  std::pair<std::size_t, std::size_t> argmax_pair{0, 0};
  std::size_t pairs_examined = 0;
  std::string pair_budget;

  nlohmann::json to_json() const;
};

// sup |f(x) - f(y)| / w~(|x - y|) over sampled pairs, with w~ the extension
// of g. Multivector samples are compared in the Euclidean coefficient norm.
HolderReport seminorm(const std::vector<geometry::Point>& points, const BoundaryField& f,
                      const growth::GrowthFunction& g, const PairPolicy& policy = {});
HolderReport seminorm(const geometry::BoundaryMesh& mesh, const BoundaryField& f, const growth::GrowthFunction& g,
                      const PairPolicy& policy = {});

struct ProductCheck {
  double norm_fg = 0.0;
  double norm_f = 0.0;
  double norm_g = 0.0;
  bool holds = false;
};

// ||fg|| <= ||f|| ||g|| for scalar fields.
ProductCheck product_norm_check(const geometry::BoundaryMesh& mesh, const BoundaryField& f, const BoundaryField& g,
                                const growth::GrowthFunction& gf, const PairPolicy& policy = {});

struct ModulusRow {
  double bin_lo = 0.0;
  double bin_hi = 0.0;
  double max_delta = 0.0;
};

// Dyadic distance bins [d0 2^k, d0 2^{k+1}); d0 <= 0 picks the smallest
// pairwise distance. Empty bins are omitted.
std::vector<ModulusRow> modulus_profile(const std::vector<geometry::Point>& points, const BoundaryField& f,
                                        double d0 = 0.0);
std::string modulus_csv(const std::vector<ModulusRow>& rows);

}  // namespace siolab::holder
