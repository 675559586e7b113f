#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "siolab/growth.hpp"

namespace siolab::geometry {

// Points always carry three coordinates; planar domains leave z = 0.
using Point = std::array<double, 3>;

inline double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Point add(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Point scale(const Point& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double length(const Point& a);
double distance(const Point& a, const Point& b);

enum class DomainKind { disk, ellipse, star, teardrop, sphere3 };

std::string to_string(DomainKind k);

struct CurvePoint {
  Point pos;
  Point d1;  // gamma'(t)
  Point d2;  // gamma''(t)
};

struct DomainSpec {
  DomainKind kind = DomainKind::disk;
  double r = 1.0;                     // disk, sphere3
  double a = 2.0, b = 1.0;            // ellipse semi-axes
  double r0 = 1.0, eps = 0.2;         // star: r(t) = r0 (1 + eps cos k t)
  int k = 3;
  double corner_angle = 1.5707963267948966;  // teardrop interior angle at both corners

  static DomainSpec disk_of(double r);
  static DomainSpec ellipse_of(double a, double b);
  static DomainSpec star_of(double r0, double eps, int k);
  static DomainSpec teardrop_of(double corner_angle);
  static DomainSpec sphere_of(double r);

  static DomainSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;

  int dim() const { return kind == DomainKind::sphere3 ? 3 : 2; }
  bool is_smooth() const { return kind != DomainKind::teardrop; }
  bool contains(const Point& p) const;
  double diameter() const;
  // Bounding box [lo, hi] of the closure.
  std::pair<Point, Point> bounding_box() const;
  // Exact length/area when a closed form exists, otherwise computed by
  // adaptive quadrature of |gamma'|.
  double boundary_measure() const;

  // Parametrization of planar boundaries over t in [0, 2 pi), counterclockwise.
  CurvePoint curve(double t) const;
};

struct BoundaryMesh {
  DomainSpec spec;
  int dim = 2;
  std::vector<Point> nodes;
  std::vector<Point> normals;
  std::vector<double> weights;
  std::vector<double> param;  // t_i (curves) or polar angle (sphere)
  std::vector<Point> d1, d2;  // curves only
  double dt = 0.0;            // parameter step (curves)
  double panel_h = 0.0;       // largest distance between neighbouring nodes

  std::size_t size() const { return nodes.size(); }
  double total_measure() const;
  Point normal_sum() const;
  // Node of a curve mesh nearest to parameter t.
  std::size_t node_at_param(double t) const;
};

BoundaryMesh build_mesh(const DomainSpec& spec, int N);

// dist(z, boundary): nearest node, refined by Newton steps on the
// parametrization for curves; exact for spheres.
double distance_to_boundary(const BoundaryMesh& mesh, const Point& z);

// Random points with rho >= rho_min, inside (or outside, within 3 diameters)
// the domain. Deterministic in `seed`.
std::vector<Point> sample_probes(const BoundaryMesh& mesh, int count, double rho_min, std::uint64_t seed,
                                 bool exterior = false, double rho_max = 1e300);

std::string mesh_csv(const BoundaryMesh& mesh);

// ---------------------------------------------------------------------------
// Ahlfors regularity diagnostics.

struct AhlforsRow {
  double r = 0.0;
  double lower = 0.0;  // min over centers of sigma(B(x,r))/r^{n-1}
  double upper = 0.0;
};

// Centers: every `stride`-th node. sigma is the sum of weights of nodes in
// the closed ball.
std::vector<AhlforsRow> ahlfors_profile(const BoundaryMesh& mesh, const std::vector<double>& radii, int stride = 1);

// sup over rho > 0 of mu(closed B(x, rho))/rho^{n-1}, where mu is the node
// measure with the center node removed; max over the given centers.
double upper_ahlfors_constant(const BoundaryMesh& mesh, const std::vector<std::size_t>& centers);

struct DyadicBound {
  double lhs = 0.0;
  double rhs = 0.0;  // may be +inf
  bool holds() const { return lhs <= rhs; }
};

// Discrete versions of the dyadic integral bounds around node `center`:
// inner = sum over y in closed B(x,r), tail = sum over y outside B(x,r).
DyadicBound dyadic_inner_bound(const BoundaryMesh& mesh, std::size_t center, double r, double d,
                               const growth::GrowthFunction& g, double C);
DyadicBound dyadic_tail_bound(const BoundaryMesh& mesh, std::size_t center, double r, double d,
                              const growth::GrowthFunction& g, double C);

// ---------------------------------------------------------------------------
// Cones and pseudo-balls.

struct ConePoint {
  Point x{};
  double kappa = 1.0;
  std::vector<double> heights;
  std::vector<Point> samples;
  std::vector<bool> inside_cone;  // |z - x| < (1 + kappa) dist(z, boundary)
};

// Samples x -+ h nu(x) (minus: interior, plus: exterior) for each height.
ConePoint cone_ladder(const BoundaryMesh& mesh, std::size_t node, double kappa, const std::vector<double>& heights,
                      bool exterior = false);

bool pseudo_ball_contains(const Point& x, const Point& h, double a, double b, const growth::GrowthFunction& g,
                          const Point& y);

struct HourglassResult {
  std::vector<bool> node_ok;
  std::vector<std::size_t> failures;
  bool global = true;
  std::size_t samples = 0;
};

struct HourglassOptions {
  int radial = 40;
  int angular = 48;
  int azimuthal = 12;  // 3D only
  double rho_min_factor = 1e-6;  // relative to the diameter
  std::size_t max_samples = 50'000'000;
};

HourglassResult hourglass_check(const BoundaryMesh& mesh, const growth::GrowthFunction& g, double a, double b,
                                const HourglassOptions& opt = {});

}  // namespace siolab::geometry
