#include "siolab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "siolab/error.hpp"
#include "siolab/quadrature.hpp"

namespace siolab::geometry {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double read(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw SpecError(std::string("domain: key '") + key + "' must be a number");
  return j.at(key).get<double>();
}

// Teardrop: lens bounded by two circular arcs through (0,0) and (2,0).
struct Lens {
  double phi, R, c;  // half corner angle, radius, |center y|
  explicit Lens(double gamma) : phi(0.5 * gamma), R(1.0 / std::sin(0.5 * gamma)), c(R * std::cos(0.5 * gamma)) {}
};

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0 ? t + kTwoPi : t;
}

}  // namespace

double length(const Point& a) { return std::sqrt(dot(a, a)); }
double distance(const Point& a, const Point& b) { return length(sub(a, b)); }

std::string to_string(DomainKind k) {
  switch (k) {
    case DomainKind::disk: return "disk";
    case DomainKind::ellipse: return "ellipse";
    case DomainKind::star: return "star";
    case DomainKind::teardrop: return "teardrop";
    case DomainKind::sphere3: return "sphere3";
  }
  return "?";
}

DomainSpec DomainSpec::disk_of(double r) {
  DomainSpec s;
  s.kind = DomainKind::disk;
  s.r = r;
  s.validate();
  return s;
}

DomainSpec DomainSpec::ellipse_of(double a, double b) {
  DomainSpec s;
  s.kind = DomainKind::ellipse;
  s.a = a;
  s.b = b;
  s.validate();
  return s;
}

DomainSpec DomainSpec::star_of(double r0, double eps, int k) {
  DomainSpec s;
  s.kind = DomainKind::star;
  s.r0 = r0;
  s.eps = eps;
  s.k = k;
  s.validate();
  return s;
}

DomainSpec DomainSpec::teardrop_of(double corner_angle) {
  DomainSpec s;
  s.kind = DomainKind::teardrop;
  s.corner_angle = corner_angle;
  s.validate();
  return s;
}

DomainSpec DomainSpec::sphere_of(double r) {
  DomainSpec s;
  s.kind = DomainKind::sphere3;
  s.r = r;
  s.validate();
  return s;
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind")) throw SpecError("domain spec needs a 'kind'");
  const auto kind = j.at("kind").get<std::string>();
  DomainSpec s;
  if (kind == "disk") {
    s.kind = DomainKind::disk;
    s.r = read(j, "r", 1.0);
  } else if (kind == "ellipse") {
    s.kind = DomainKind::ellipse;
    s.a = read(j, "a", 2.0);
    s.b = read(j, "b", 1.0);
  } else if (kind == "star") {
    s.kind = DomainKind::star;
    s.r0 = read(j, "r0", 1.0);
    s.eps = read(j, "eps", 0.2);
    s.k = static_cast<int>(read(j, "k", 3));
  } else if (kind == "teardrop") {
    s.kind = DomainKind::teardrop;
    s.corner_angle = read(j, "corner_angle", kPi / 2);
  } else if (kind == "sphere3") {
    s.kind = DomainKind::sphere3;
    s.r = read(j, "r", 1.0);
  } else {
    throw SpecError("unknown domain kind '" + kind + "'");
  }
  s.validate();
  return s;
}

nlohmann::json DomainSpec::to_json() const {
  nlohmann::json j{{"kind", to_string(kind)}};
  switch (kind) {
    case DomainKind::disk:
    case DomainKind::sphere3: j["r"] = r; break;
    case DomainKind::ellipse: j["a"] = a; j["b"] = b; break;
    case DomainKind::star: j["r0"] = r0; j["eps"] = eps; j["k"] = k; break;
    case DomainKind::teardrop: j["corner_angle"] = corner_angle; break;
  }
  return j;
}

void DomainSpec::validate() const {
  switch (kind) {
    case DomainKind::disk:
    case DomainKind::sphere3:
      if (!(r > 0)) throw SpecError("radius must be positive");
      break;
    case DomainKind::ellipse:
      if (!(a > 0 && b > 0)) throw SpecError("ellipse semi-axes must be positive");
      break;
    case DomainKind::star:
      if (!(r0 > 0) || k < 1 || !(eps >= 0) || !(eps * k < 1.0))
        throw SpecError("star domain needs r0 > 0, k >= 1 and 0 <= eps*k < 1");
      break;
    case DomainKind::teardrop:
      if (!(corner_angle > 0 && corner_angle < kPi)) throw SpecError("teardrop corner angle must lie in (0, pi)");
      break;
  }
}

bool DomainSpec::contains(const Point& p) const {
  switch (kind) {
    case DomainKind::disk: return p[0] * p[0] + p[1] * p[1] < r * r;
    case DomainKind::sphere3: return dot(p, p) < r * r;
    case DomainKind::ellipse: return (p[0] * p[0]) / (a * a) + (p[1] * p[1]) / (b * b) < 1.0;
    case DomainKind::star: {
      const double rho = std::hypot(p[0], p[1]);
      const double th = std::atan2(p[1], p[0]);
      return rho < r0 * (1.0 + eps * std::cos(k * th));
    }
    case DomainKind::teardrop: {
      const Lens L(corner_angle);
      const double dx = p[0] - 1.0;
      return dx * dx + (p[1] + L.c) * (p[1] + L.c) < L.R * L.R && dx * dx + (p[1] - L.c) * (p[1] - L.c) < L.R * L.R;
    }
  }
  return false;
}

double DomainSpec::diameter() const {
  switch (kind) {
    case DomainKind::disk:
    case DomainKind::sphere3: return 2.0 * r;
    case DomainKind::ellipse: return 2.0 * std::max(a, b);
    case DomainKind::teardrop: {
      const Lens L(corner_angle);
      return std::max(2.0, 2.0 * (L.R - L.c));
    }
    case DomainKind::star: {
      const int m = 1024;
      std::vector<Point> pts(m);
      for (int i = 0; i < m; ++i) pts[i] = curve(kTwoPi * i / m).pos;
      double d = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) d = std::max(d, distance(pts[i], pts[j]));
      return d;
    }
  }
  return 0.0;
}

std::pair<Point, Point> DomainSpec::bounding_box() const {
  switch (kind) {
    case DomainKind::disk: return {{-r, -r, 0}, {r, r, 0}};
    case DomainKind::sphere3: return {{-r, -r, -r}, {r, r, r}};
    case DomainKind::ellipse: return {{-a, -b, 0}, {a, b, 0}};
    case DomainKind::star: {
      const double m = r0 * (1 + eps);
      return {{-m, -m, 0}, {m, m, 0}};
    }
    case DomainKind::teardrop: {
      const Lens L(corner_angle);
      const double h = L.R - L.c;
      return {{0, -h, 0}, {2, h, 0}};
    }
  }
  return {};
}

double DomainSpec::boundary_measure() const {
  switch (kind) {
    case DomainKind::disk: return kTwoPi * r;
    case DomainKind::sphere3: return 4.0 * kPi * r * r;
    case DomainKind::teardrop: {
      const Lens L(corner_angle);
      return 4.0 * L.phi * L.R;
    }
    default: {
      quad::AdaptiveOptions opt;
      opt.rel_tol = 1e-15;
      std::vector<double> br;
      for (int i = 1; i < 8; ++i) br.push_back(kTwoPi * i / 8);
      return quad::integrate([&](double t) { return length(curve(t).d1); }, 0.0, kTwoPi, br, opt).value;
    }
  }
}

CurvePoint DomainSpec::curve(double t) const {
  const double c = std::cos(t), s = std::sin(t);
  switch (kind) {
    case DomainKind::disk: return {{r * c, r * s, 0}, {-r * s, r * c, 0}, {-r * c, -r * s, 0}};
    case DomainKind::ellipse: return {{a * c, b * s, 0}, {-a * s, b * c, 0}, {-a * c, -b * s, 0}};
    case DomainKind::star: {
      const double rr = r0 * (1.0 + eps * std::cos(k * t));
      const double r1 = -r0 * eps * k * std::sin(k * t);
      const double r2 = -r0 * eps * k * k * std::cos(k * t);
      return {{rr * c, rr * s, 0},
              {r1 * c - rr * s, r1 * s + rr * c, 0},
              {r2 * c - 2 * r1 * s - rr * c, r2 * s + 2 * r1 * c - rr * s, 0}};
    }
    case DomainKind::teardrop: {
      const Lens L(corner_angle);
      t = wrap(t);
      const double rate = 2.0 * L.phi / kPi;
      if (t < kPi) {
        // upper arc, from (2,0) back to (0,0); center (1, -c)
        const double psi = L.phi - rate * t;
        const double sp = std::sin(psi), cp = std::cos(psi);
        return {{1.0 + L.R * sp, -L.c + L.R * cp, 0},
                {-rate * L.R * cp, rate * L.R * sp, 0},
                {-rate * rate * L.R * sp, -rate * rate * L.R * cp, 0}};
      }
      // lower arc, from (0,0) to (2,0); center (1, +c)
      const double psi = -L.phi + rate * (t - kPi);
      const double sp = std::sin(psi), cp = std::cos(psi);
      return {{1.0 + L.R * sp, L.c - L.R * cp, 0},
              {rate * L.R * cp, rate * L.R * sp, 0},
              {-rate * rate * L.R * sp, rate * rate * L.R * cp, 0}};
    }
    case DomainKind::sphere3: break;
  }
  throw SpecError("curve parametrization requested for a surface");
}

double BoundaryMesh::total_measure() const { return quad::pairwise_sum(weights); }

Point BoundaryMesh::normal_sum() const {
  Point s{0, 0, 0};
  for (std::size_t i = 0; i < size(); ++i) s = add(s, scale(normals[i], weights[i]));
  return s;
}

std::size_t BoundaryMesh::node_at_param(double t) const {
  if (dim != 2) throw DimensionError("node_at_param is defined for curves only");
  const auto n = static_cast<long>(size());
  long i = std::lround(wrap(t) / dt) % n;
  return static_cast<std::size_t>(i);
}

BoundaryMesh build_mesh(const DomainSpec& spec, int N) {
  spec.validate();
  if (N < 16) throw SpecError("mesh needs at least 16 nodes");
  BoundaryMesh m;
  m.spec = spec;
  m.dim = spec.dim();
  if (spec.kind == DomainKind::sphere3) {
    const int nt = std::max(4, static_cast<int>(std::lround(std::sqrt(N / 2.0))));
    const int np = 2 * nt;
    const auto& gl = quad::gauss_legendre(nt);
    const double dphi = kTwoPi / np;
    for (int i = 0; i < nt; ++i) {
      const double ct = gl.nodes[i], st = std::sqrt(1.0 - ct * ct);
      for (int k = 0; k < np; ++k) {
        const double ph = (k + 0.5) * dphi;
        const Point nu{st * std::cos(ph), st * std::sin(ph), ct};
        m.nodes.push_back(scale(nu, spec.r));
        m.normals.push_back(nu);
        m.weights.push_back(spec.r * spec.r * gl.weights[i] * dphi);
        m.param.push_back(std::acos(ct));
      }
    }
    double h = 0.0;
    for (int i = 0; i < nt; ++i)
      for (int k = 0; k < np; ++k) {
        const auto& p = m.nodes[i * np + k];
        h = std::max(h, distance(p, m.nodes[i * np + (k + 1) % np]));
        if (i + 1 < nt) h = std::max(h, distance(p, m.nodes[(i + 1) * np + k]));
      }
    // polar caps: distance from the pole to the first ring
    h = std::max(h, spec.r * std::acos(gl.nodes[nt - 1]));
    m.panel_h = h;
    return m;
  }
  m.dt = kTwoPi / N;
  for (int i = 0; i < N; ++i) {
    const double t = m.dt * i;
    const auto cp = spec.curve(t);
    const double sp = length(cp.d1);
    m.nodes.push_back(cp.pos);
    m.d1.push_back(cp.d1);
    m.d2.push_back(cp.d2);
    m.weights.push_back(sp * m.dt);
    m.param.push_back(t);
    m.normals.push_back({cp.d1[1] / sp, -cp.d1[0] / sp, 0.0});
  }
  if (spec.kind == DomainKind::teardrop) {
    // Corners sit at t = 0 and t = pi; use the bisector of the one-sided normals.
    for (double tc : {0.0, kPi}) {
      const double frac = tc / m.dt;
      if (std::abs(frac - std::round(frac)) > 1e-9) continue;
      const auto i = static_cast<std::size_t>(std::lround(frac)) % m.size();
      const auto left = spec.curve(wrap(tc - 1e-9)).d1;
      const auto right = spec.curve(tc).d1;
      const Point nl{left[1], -left[0], 0}, nr{right[1], -right[0], 0};
      const Point s = add(scale(nl, 1.0 / length(nl)), scale(nr, 1.0 / length(nr)));
      m.normals[i] = scale(s, 1.0 / length(s));
    }
  }
  double h = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i) h = std::max(h, distance(m.nodes[i], m.nodes[(i + 1) % m.size()]));
  m.panel_h = h;
  return m;
}

double distance_to_boundary(const BoundaryMesh& mesh, const Point& z) {
  const auto& s = mesh.spec;
  switch (s.kind) {
    case DomainKind::disk: return std::abs(std::hypot(z[0], z[1]) - s.r);
    case DomainKind::sphere3: return std::abs(length(z) - s.r);
    case DomainKind::teardrop: {
      const Lens L(s.corner_angle);
      double best = std::min(std::hypot(z[0], z[1]), std::hypot(z[0] - 2.0, z[1]));
      // upper arc: center (1,-c), angles psi in [-phi, phi] measured from +y
      for (int side : {+1, -1}) {
        const double cy = -side * L.c;
        const double dx = z[0] - 1.0, dy = side * (z[1] - cy);
        const double psi = std::atan2(dx, dy);
        if (std::abs(psi) <= L.phi) best = std::min(best, std::abs(std::hypot(dx, dy) - L.R));
      }
      return best;
    }
    default: break;
  }
  std::size_t best_i = 0;
  double best = 1e300;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double d = distance(mesh.nodes[i], z);
    if (d < best) best = d, best_i = i;
  }
  double t = mesh.param[best_i];
  const double t_lo = t - mesh.dt, t_hi = t + mesh.dt;
  for (int it = 0; it < 12; ++it) {
    const auto cp = s.curve(t);
    const Point r = sub(cp.pos, z);
    const double f = dot(r, cp.d1);
    const double fp = dot(cp.d1, cp.d1) + dot(r, cp.d2);
    if (!(fp > 0)) break;
    const double tn = std::clamp(t - f / fp, t_lo, t_hi);
    if (std::abs(tn - t) < 1e-15) {
      t = tn;
      break;
    }
    t = tn;
  }
  return std::min(best, distance(s.curve(t).pos, z));
}

std::vector<Point> sample_probes(const BoundaryMesh& mesh, int count, double rho_min, std::uint64_t seed,
                                 bool exterior, double rho_max) {
  auto [lo, hi] = mesh.spec.bounding_box();
  if (exterior) {
    const double d = mesh.spec.diameter();
    for (int k = 0; k < mesh.dim; ++k) lo[k] -= d, hi[k] += d;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<Point> out;
  long attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 2'000'000L) throw SpecError("probe sampling: no admissible points (rho_min too large?)");
    Point p{0, 0, 0};
    for (int k = 0; k < mesh.dim; ++k) p[k] = lo[k] + (hi[k] - lo[k]) * U(rng);
    if (mesh.spec.contains(p) == exterior) continue;
    const double rho = distance_to_boundary(mesh, p);
    if (rho < rho_min || rho > rho_max) continue;
    out.push_back(p);
  }
  return out;
}

std::string mesh_csv(const BoundaryMesh& mesh) {
  std::ostringstream os;
  os << (mesh.dim == 3 ? "t,x,y,z,w,nx,ny,nz\n" : "t,x,y,w,nx,ny\n");
  char buf[64];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
    os << buf;
  };
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    put(mesh.param[i], ',');
    for (int k = 0; k < mesh.dim; ++k) put(mesh.nodes[i][k], ',');
    put(mesh.weights[i], ',');
    for (int k = 0; k < mesh.dim; ++k) put(mesh.normals[i][k], k + 1 == mesh.dim ? '\n' : ',');
  }
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<AhlforsRow> ahlfors_profile(const BoundaryMesh& mesh, const std::vector<double>& radii, int stride) {
  const double diam = mesh.spec.diameter();
  std::vector<AhlforsRow> rows;
  stride = std::max(1, stride);
  for (double r : radii) {
    if (!(r > 4.0 * mesh.panel_h) || !(r < 2.0 * diam))
      throw DomainError("ahlfors_profile: radius out of range (4 panel_h, 2 diam)");
    AhlforsRow row{r, 1e300, 0.0};
    const double scale_r = std::pow(r, mesh.dim - 1);
    for (std::size_t c = 0; c < mesh.size(); c += stride) {
      double s = 0.0;
      for (std::size_t i = 0; i < mesh.size(); ++i)
        if (distance(mesh.nodes[i], mesh.nodes[c]) <= r) s += mesh.weights[i];
      row.lower = std::min(row.lower, s / scale_r);
      row.upper = std::max(row.upper, s / scale_r);
    }
    rows.push_back(row);
  }
  return rows;
}

double upper_ahlfors_constant(const BoundaryMesh& mesh, const std::vector<std::size_t>& centers) {
  double C = 0.0;
  std::vector<std::pair<double, double>> dw;
  for (std::size_t c : centers) {
    dw.clear();
    for (std::size_t i = 0; i < mesh.size(); ++i)
      if (i != c) dw.emplace_back(distance(mesh.nodes[i], mesh.nodes[c]), mesh.weights[i]);
    std::sort(dw.begin(), dw.end());
    double cum = 0.0;
    for (std::size_t k = 0; k < dw.size(); ++k) {
      cum += dw[k].second;
      if (k + 1 < dw.size() && dw[k + 1].first == dw[k].first) continue;
      C = std::max(C, cum / std::pow(dw[k].first, mesh.dim - 1));
    }
  }
  return C;
}

namespace {

// int_lo^hi w(s) s^{-d} ds/s for the extended modulus; lo = 0 allowed.
double dyadic_integral(const growth::GrowthFunction& g, double lo, double hi, double d) {
  auto f = [&](double u) { return g.raw(std::exp(u)) * std::exp(-d * u); };
  quad::AdaptiveOptions opt;
  opt.rel_tol = 1e-12;
  std::vector<double> br;
  for (double k : g.kinks()) br.push_back(std::log(k));
  if (lo > 0.0) return quad::integrate(f, std::log(lo), std::log(hi), br, opt).value;
  const double s0 = hi * 1e-12;
  const double a = std::log(g.raw(s0 * std::exp(1.0)) / g.raw(s0));
  if (!(a - d > 1e-9)) return growth::kInf;
  const double tail = g.raw(s0) * std::pow(s0, -d) / (a - d);
  return tail + quad::integrate(f, std::log(s0), std::log(hi), br, opt).value;
}

double dyadic_factor(int n, double d, double C) {
  const double dp = std::max(0.0, d), ep = std::max(0.0, n - 1 + d);
  return C * std::pow(2.0, dp) * std::pow(2.0, ep) / std::log(2.0);
}

}  // namespace

DyadicBound dyadic_inner_bound(const BoundaryMesh& mesh, std::size_t center, double r, double d,
                               const growth::GrowthFunction& g, double C) {
  const auto ge = g.extend();
  const auto& x = mesh.nodes[center];
  std::vector<double> terms;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    if (i == center) continue;
    const double rho = distance(mesh.nodes[i], x);
    if (rho <= r) terms.push_back(mesh.weights[i] * ge.raw(rho) / std::pow(rho, mesh.dim - 1 + d));
  }
  DyadicBound b;
  b.lhs = quad::pairwise_sum(terms);
  b.rhs = dyadic_factor(mesh.dim, d, C) * dyadic_integral(ge, 0.0, 2.0 * r, d);
  return b;
}

DyadicBound dyadic_tail_bound(const BoundaryMesh& mesh, std::size_t center, double r, double d,
                              const growth::GrowthFunction& g, double C) {
  const auto ge = g.extend();
  const auto& x = mesh.nodes[center];
  std::vector<double> terms;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const double rho = distance(mesh.nodes[i], x);
    if (rho >= r) terms.push_back(mesh.weights[i] * ge.raw(rho) / std::pow(rho, mesh.dim - 1 + d));
  }
  DyadicBound b;
  b.lhs = quad::pairwise_sum(terms);
  const double top = 4.0 * mesh.spec.diameter();
  b.rhs = 2.0 * r >= top ? 0.0 : dyadic_factor(mesh.dim, d, C) * dyadic_integral(ge, 2.0 * r, top, d);
  return b;
}

// ---------------------------------------------------------------------------

ConePoint cone_ladder(const BoundaryMesh& mesh, std::size_t node, double kappa, const std::vector<double>& heights,
                      bool exterior) {
  ConePoint c;
  c.x = mesh.nodes.at(node);
  c.kappa = kappa;
  c.heights = heights;
  const Point nu = mesh.normals[node];
  for (double h : heights) {
    const Point z = add(c.x, scale(nu, exterior ? h : -h));
    c.samples.push_back(z);
    const bool side = mesh.spec.contains(z) != exterior;
    c.inside_cone.push_back(side && distance(z, c.x) < (1.0 + kappa) * distance_to_boundary(mesh, z));
  }
  return c;
}

bool pseudo_ball_contains(const Point& x, const Point& h, double a, double b, const growth::GrowthFunction& g,
                          const Point& y) {
  const Point v = sub(y, x);
  const double rho = length(v);
  if (!(rho > 0.0) || !(rho < g.D())) return false;
  double w;
  try {
    w = g(rho);
  } catch (const Error&) {
    return false;
  }
  const double proj = dot(h, v);
  return a * rho * w < proj && proj < b;
}

HourglassResult hourglass_check(const BoundaryMesh& mesh, const growth::GrowthFunction& g, double a, double b,
                                const HourglassOptions& opt) {
  HourglassResult res;
  const double diam = mesh.spec.diameter();
  const std::size_t per_node =
      2ull * opt.radial * opt.angular * (mesh.dim == 3 ? static_cast<std::size_t>(opt.azimuthal) : 2ull);
  if (per_node * mesh.size() > opt.max_samples) throw Error("budget", "hourglass_check: sampling budget exceeded");

  // Largest radius with a rho w(rho) < b.
  auto edge = [&](double rho) { return a * rho * g.raw(rho) < b; };
  double hi = std::min(g.D() * (1.0 - 1e-12), 1e6 * diam);
  if (edge(hi)) {
    // whole range admissible
  } else {
    double lo = 0.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (edge(mid) ? lo : hi) = mid;
    }
    hi = lo;
  }
  const double rho_lo = opt.rho_min_factor * diam;
  res.node_ok.assign(mesh.size(), true);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const Point& x = mesh.nodes[i];
    const Point h0 = scale(mesh.normals[i], -1.0);
    // unit vectors orthogonal to h0
    Point e1, e2{0, 0, 0};
    if (mesh.dim == 2) {
      e1 = {-h0[1], h0[0], 0};
    } else {
      const Point ref = std::abs(h0[0]) < 0.9 ? Point{1, 0, 0} : Point{0, 1, 0};
      e1 = sub(ref, scale(h0, dot(ref, h0)));
      e1 = scale(e1, 1.0 / length(e1));
      e2 = {h0[1] * e1[2] - h0[2] * e1[1], h0[2] * e1[0] - h0[0] * e1[2], h0[0] * e1[1] - h0[1] * e1[0]};
    }
    bool ok = true;
    for (int side : {+1, -1}) {
      const Point hh = scale(h0, side);
      for (int kr = 0; kr < opt.radial && ok; ++kr) {
        const double rho = rho_lo * std::pow(hi / rho_lo, (kr + 0.5) / opt.radial);
        const double cmin = a * g.raw(rho);
        const double cmax = std::min(1.0, b / rho);
        if (!(cmin < cmax)) continue;
        const double th_hi = std::acos(cmin), th_lo = std::acos(cmax);
        for (int ka = 0; ka < opt.angular && ok; ++ka) {
          const double th = th_lo + (th_hi - th_lo) * (ka + 0.5) / opt.angular;
          const int nz = mesh.dim == 3 ? opt.azimuthal : 2;
          for (int kz = 0; kz < nz; ++kz) {
            Point dir;
            if (mesh.dim == 2) {
              dir = scale(e1, kz == 0 ? 1.0 : -1.0);
            } else {
              const double ps = kTwoPi * kz / nz;
              dir = add(scale(e1, std::cos(ps)), scale(e2, std::sin(ps)));
            }
            const Point y = add(x, add(scale(hh, rho * std::cos(th)), scale(dir, rho * std::sin(th))));
            ++res.samples;
            const bool in = mesh.spec.contains(y);
            if ((side > 0 && !in) || (side < 0 && in)) {
              ok = false;
              break;
            }
          }
        }
      }
    }
    res.node_ok[i] = ok;
    if (!ok) {
      res.failures.push_back(i);
      res.global = false;
    }
  }
  return res;
}

}  // namespace siolab::geometry
