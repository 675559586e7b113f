#include "siolab/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "siolab/clifford.hpp"
#include "siolab/error.hpp"
#include "siolab/parallel.hpp"
#include "siolab/quadrature.hpp"

namespace siolab::ops {

namespace {

constexpr double kPi = std::numbers::pi;

// out += s * (k (.) f), where either factor may be a scalar (width 1).
void mul_acc(std::span<const double> k, std::span<const double> f, double s, std::span<double> out) {
  if (k.size() == 1) {
    for (std::size_t b = 0; b < f.size(); ++b) out[b] += s * k[0] * f[b];
  } else if (f.size() == 1) {
    for (std::size_t b = 0; b < k.size(); ++b) out[b] += s * k[b] * f[0];
  } else {
    clifford::gproduct_accumulate(k, f, s, out);
  }
}

int output_width(const OperatorSpec& op, int fw) {
  const int kw = op.kernel_width();
  if (kw > 1 && fw > 1 && kw != fw) throw DimensionError("field width does not match the kernel's Clifford algebra");
  return std::max(kw, fw);
}

double normal_sign(const OperatorSpec& op) { return op.side == Side::exterior ? -1.0 : 1.0; }

void check_mesh(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f) {
  if (mesh.dim != op.n) throw DimensionError("operator dimension does not match the mesh");
  if (f.size() != mesh.size()) throw DimensionError("field does not match the mesh");
}

Point unit(const Point& p) { return scale(p, 1.0 / geometry::length(p)); }

}  // namespace

std::string to_string(OpKind k) {
  switch (k) {
    case OpKind::riesz: return "riesz";
    case OpKind::poly_kernel: return "poly_kernel";
    case OpKind::double_layer: return "double_layer";
    case OpKind::cauchy_clifford: return "cauchy_clifford";
    case OpKind::single_layer: return "single_layer";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::interior ? "interior" : "exterior"; }

OperatorSpec OperatorSpec::riesz(int n, int j, Side side) {
  OperatorSpec o;
  o.kind = OpKind::riesz;
  o.side = side;
  o.n = n;
  o.j = j;
  o.poly = kernels::PolyKernel::riesz(n, j);
  return o;
}

OperatorSpec OperatorSpec::poly_kernel(const kernels::PolyKernel& K, Side side) {
  OperatorSpec o;
  o.kind = OpKind::poly_kernel;
  o.side = side;
  o.n = K.n;
  o.poly = K;
  return o;
}

OperatorSpec OperatorSpec::double_layer(const kernels::DoubleLayerField& f, Side side) {
  OperatorSpec o;
  o.kind = f.kind() == kernels::FieldKind::cauchy_clifford ? OpKind::cauchy_clifford : OpKind::double_layer;
  o.side = side;
  o.n = f.dim();
  o.field = f;
  return o;
}

OperatorSpec OperatorSpec::cauchy_clifford(int n, Side side) {
  return double_layer(kernels::DoubleLayerField::cauchy_clifford(n), side);
}

OperatorSpec OperatorSpec::single_layer(int n, Side side) {
  if (n < 2 || n > 3) throw DimensionError("single layer needs n in {2,3}");
  OperatorSpec o;
  o.kind = OpKind::single_layer;
  o.side = side;
  o.n = n;
  return o;
}

OperatorSpec OperatorSpec::from_json(const nlohmann::json& j, int n) {
  const std::string kind = j.value("kind", std::string("double_layer"));
  const std::string side_s = j.value("side", std::string("interior"));
  if (side_s != "interior" && side_s != "exterior") throw SpecError("operator side must be interior or exterior");
  const Side side = side_s == "interior" ? Side::interior : Side::exterior;
  if (kind == "riesz") return riesz(n, j.value("j", 1), side);
  if (kind == "poly_kernel") {
    if (!j.contains("P")) throw SpecError("poly_kernel needs a polynomial P");
    return poly_kernel(kernels::PolyKernel::make(poly::Polynomial::parse(j.at("P").get<std::string>(), n)), side);
  }
  if (kind == "cauchy_clifford") return cauchy_clifford(n, side);
  if (kind == "single_layer") return single_layer(n, side);
  if (kind == "double_layer") {
    nlohmann::json fj = j.value("field", nlohmann::json::object());
    if (!fj.contains("n")) fj["n"] = n;
    const auto field = kernels::DoubleLayerField::from_json(fj);
    if (field.dim() != n) throw DimensionError("double-layer field dimension does not match the domain");
    return double_layer(field, side);
  }
  throw SpecError("unknown operator kind '" + kind + "'");
}

nlohmann::json OperatorSpec::to_json() const {
  nlohmann::json j{{"kind", ops::to_string(kind)}, {"side", ops::to_string(side)}, {"n", n}};
  if (kind == OpKind::riesz) j["j"] = this->j;
  if (kind == OpKind::poly_kernel) j["P"] = poly.P.to_string();
  if (kind == OpKind::double_layer) j["field"] = field.to_json();
  return j;
}

int OperatorSpec::kernel_width() const { return is_double_layer() ? field.width() : 1; }

std::vector<double> OperatorSpec::theta() const {
  if (!is_double_layer()) throw SpecError("theta is defined for double-layer operators only");
  return kernels::theta(field, n == 2 ? 512 : 96);
}

double fundamental_solution(const Point& x, int n) {
  double r2 = 0.0;
  for (int k = 0; k < n; ++k) r2 += x[k] * x[k];
  if (n == 2) return std::log(r2) / (4.0 * kPi);
  return 1.0 / (kernels::sphere_area(n) * (2.0 - n) * std::pow(r2, 0.5 * (n - 2)));
}

DomainField potential(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f,
                      const std::vector<Point>& X, bool with_gradient) {
  check_mesh(op, mesh, f);
  const int n = op.n;
  const int fw = f.width;
  const int W = output_width(op, fw);
  const int kw = op.kernel_width();
  const int row = W * (with_gradient ? 1 + n : 1);
  const double sgn = normal_sign(op);
  const double wn = kernels::sphere_area(n);
  const std::size_t N = mesh.size();
  const double tiny = 1e-12 * mesh.spec.diameter();

  DomainField out;
  out.points = X;
  out.rho.resize(X.size());
  out.width = W;
  out.dim = n;
  out.values.assign(X.size() * W, 0.0);
  if (with_gradient) out.gradients.assign(X.size() * n * W, 0.0);

  for (std::size_t p = 0; p < X.size(); ++p) {
    const bool inside = mesh.spec.contains(X[p]);
    const double rho = geometry::distance_to_boundary(mesh, X[p]);
    if (!(rho > tiny)) throw DomainError("evaluation point lies on the boundary");
    if (inside != (op.side == Side::interior))
      throw DomainError("evaluation point is not on the operator's side of the boundary");
    out.rho[p] = rho;
    if (rho < 2.0 * mesh.panel_h) out.accuracy_warning = true;
  }

  parallel_for(X.size(), [&](std::size_t p) {
    const Point& x = X[p];
    std::vector<double> terms(N * row, 0.0);
    std::vector<double> kv(kw), kg(n * kw), sum(row);
    for (std::size_t j = 0; j < N; ++j) {
      const Point d = sub(x, mesh.nodes[j]);
      const double w = mesh.weights[j];
      const auto fj = f.row(j);
      double* t = terms.data() + j * row;
      switch (op.kind) {
        case OpKind::riesz:
        case OpKind::poly_kernel: {
          kv[0] = op.poly(d);
          mul_acc(kv, fj, w, {t, static_cast<std::size_t>(W)});
          if (with_gradient) {
            const Point g = op.poly.gradient(d);
            for (int m = 0; m < n; ++m) {
              kv[0] = g[m];
              mul_acc(kv, fj, w, {t + (1 + m) * W, static_cast<std::size_t>(W)});
            }
          }
          break;
        }
        case OpKind::single_layer: {
          kv[0] = fundamental_solution(d, n);
          mul_acc(kv, fj, w, {t, static_cast<std::size_t>(W)});
          if (with_gradient) {
            double r2 = 0.0;
            for (int k = 0; k < n; ++k) r2 += d[k] * d[k];
            const double c = 1.0 / (wn * std::pow(r2, 0.5 * n));
            for (int m = 0; m < n; ++m) {
              kv[0] = c * d[m];
              mul_acc(kv, fj, w, {t + (1 + m) * W, static_cast<std::size_t>(W)});
            }
          }
          break;
        }
        case OpKind::double_layer:
        case OpKind::cauchy_clifford: {
          const Point nu = scale(mesh.normals[j], sgn);
          op.field.pairing(d, nu, kv);
          mul_acc(kv, fj, w, {t, static_cast<std::size_t>(W)});
          if (with_gradient) {
            op.field.pairing_gradient(d, nu, kg);
            for (int m = 0; m < n; ++m)
              mul_acc({kg.data() + m * kw, static_cast<std::size_t>(kw)}, fj, w,
                      {t + (1 + m) * W, static_cast<std::size_t>(W)});
          }
          break;
        }
      }
    }
    quad::pairwise_sum_rows(terms, row, sum);
    std::copy(sum.begin(), sum.begin() + W, out.values.begin() + p * W);
    if (with_gradient) std::copy(sum.begin() + W, sum.end(), out.gradients.begin() + p * n * W);
  });
  return out;
}

namespace {

// Boundary operator at node i, given the parametric derivative ft (curves).
void pv_node(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f, const BoundaryField* ft,
             const std::vector<double>& theta, std::size_t i, std::span<double> out) {
  const int W = static_cast<int>(out.size());
  const int kw = op.kernel_width();
  const std::size_t N = mesh.size();
  const double sgn = normal_sign(op);
  const Point& x = mesh.nodes[i];
  const bool curve = mesh.dim == 2;
  std::vector<double> terms(N * W, 0.0), kv(kw), df(f.width);
  const auto fi = f.row(i);

  if (op.is_double_layer()) {
    for (std::size_t j = 0; j < N; ++j) {
      if (j == i) continue;
      op.field.pairing(sub(x, mesh.nodes[j]), scale(mesh.normals[j], sgn), kv);
      const auto fj = f.row(j);
      for (int b = 0; b < f.width; ++b) df[b] = fj[b] - fi[b];
      mul_acc(kv, df, mesh.weights[j], {terms.data() + j * W, static_cast<std::size_t>(W)});
    }
    if (curve) {
      // regular limit of the subtracted integrand: -<nu, k(tau)> (.) df/dt
      op.field.pairing(unit(mesh.d1[i]), scale(mesh.normals[i], sgn), kv);
      mul_acc(kv, ft->row(i), -mesh.dt, {terms.data() + i * W, static_cast<std::size_t>(W)});
    }
    quad::pairwise_sum_rows(terms, W, out);
    const double half = op.side == Side::interior ? -0.5 : 0.5;
    mul_acc(theta, fi, half, out);
    return;
  }
  if (op.kind == OpKind::riesz || op.kind == OpKind::poly_kernel) {
    for (std::size_t j = 0; j < N; ++j) {
      if (j == i) continue;
      kv[0] = op.poly(sub(x, mesh.nodes[j]));
      mul_acc(kv, f.row(j), mesh.weights[j], {terms.data() + j * W, static_cast<std::size_t>(W)});
    }
    if (curve) {
      // constant term of K(gamma(t) - gamma(t+h)) f(t+h) |gamma'(t+h)| at h = 0
      const Point& g1 = mesh.d1[i];
      const Point& g2 = mesh.d2[i];
      const double s = geometry::length(g1);
      const Point tau = scale(g1, 1.0 / s);
      const double K = op.poly(tau);
      const Point gK = op.poly.gradient(tau);
      const double a = -K * dot(g1, g2) / (s * s) - 0.5 * dot(gK, g2) / s;
      double* t = terms.data() + i * W;
      const auto fti = ft->row(i);
      for (int b = 0; b < W; ++b) t[b] = mesh.dt * (-K * fti[b] + a * fi[b]);
    }
    quad::pairwise_sum_rows(terms, W, out);
    return;
  }
  throw SpecError("the single layer has no principal-value boundary operator");
}

}  // namespace

BoundaryField pv_boundary(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f) {
  check_mesh(op, mesh, f);
  if (op.kind == OpKind::single_layer) throw SpecError("the single layer has no principal-value boundary operator");
  const int W = output_width(op, f.width);
  BoundaryField ft;
  if (mesh.dim == 2) ft = parametric_derivative(mesh, f);
  const std::vector<double> theta = op.is_double_layer() ? op.theta() : std::vector<double>{};
  BoundaryField out(mesh.size(), W);
  parallel_for(mesh.size(), [&](std::size_t i) { pv_node(op, mesh, f, &ft, theta, i, out.row(i)); });
  return out;
}

std::vector<double> pv_at_node(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f,
                               std::size_t node) {
  check_mesh(op, mesh, f);
  if (op.kind == OpKind::single_layer) throw SpecError("the single layer has no principal-value boundary operator");
  if (node >= mesh.size()) throw DomainError("node index out of range");
  const int W = output_width(op, f.width);
  BoundaryField ft;
  if (mesh.dim == 2) ft = parametric_derivative(mesh, f);
  const std::vector<double> theta = op.is_double_layer() ? op.theta() : std::vector<double>{};
  std::vector<double> out(W, 0.0);
  pv_node(op, mesh, f, &ft, theta, node, out);
  return out;
}

RieszViaClifford riesz_via_clifford(const BoundaryMesh& mesh) {
  const int n = mesh.dim;
  RieszViaClifford r;
  r.c_nu = pv_boundary(OperatorSpec::cauchy_clifford(n), mesh, normal_field(mesh));
  const int W = r.c_nu.width;
  for (int j = 0; j < n; ++j) {
    BoundaryField c = r.c_nu.component(1 << j);
    c *= -1.0;
    r.components.push_back(std::move(c));
  }
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    double s = 0.0;
    for (int b = 0; b < W; ++b)
      if (std::popcount(static_cast<unsigned>(b)) != 1) s += r.c_nu.data[i * W + b] * r.c_nu.data[i * W + b];
    r.non_vector_residual = std::max(r.non_vector_residual, std::sqrt(s));
  }
  return r;
}

namespace {

double vec_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Value at 0 of the polynomial through (h_k, v_k).
double neville_at_zero(std::vector<double> h, std::vector<double> v) {
  const std::size_t m = h.size();
  for (std::size_t k = 1; k < m; ++k)
    for (std::size_t i = 0; i + k < m; ++i) v[i] = (h[i + k] * v[i] - h[i] * v[i + 1]) / (h[i + k] - h[i]);
  return v[0];
}

}  // namespace

nlohmann::json TraceResult::to_json() const {
  nlohmann::json rj = nlohmann::json::array();
  for (const auto& r : rows)
    rj.push_back({{"h", r.h}, {"N", r.N}, {"value", r.value}, {"residual", r.residual}, {"in_cone", r.in_cone}});
  return {{"rows", rj},         {"reference", reference}, {"limit", limit},         {"residual", residual},
          {"spread", spread},   {"monotone", monotone},   {"all_in_cone", all_in_cone}};
}

TraceResult nontangential_trace(const OperatorSpec& op, const geometry::DomainSpec& domain, const FieldSampler& f,
                                int width, const TraceOptions& opt) {
  if (!op.is_double_layer()) throw SpecError("nontangential traces are implemented for double-layer operators");
  if (domain.dim() != 2) throw DimensionError("nontangential traces are implemented for planar domains");
  if (opt.m_last <= opt.m_first) throw SpecError("trace ladder needs m_last > m_first");
  const bool exterior = op.side == Side::exterior;
  auto sample = [&](const BoundaryMesh& mesh) {
    BoundaryField bf(mesh.size(), width);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      const auto v = f(mesh, i);
      if (static_cast<int>(v.size()) != width) throw DimensionError("sampler returned the wrong width");
      std::copy(v.begin(), v.end(), bf.row(i).begin());
    }
    return bf;
  };
  auto mesh_for = [&](double h) {
    int N = opt.min_nodes;
    for (;;) {
      auto mesh = geometry::build_mesh(domain, N);
      if (mesh.panel_h <= h / opt.panel_ratio) return mesh;
      if (N >= opt.max_nodes) throw Error("budget", "trace ladder needs more than max_nodes boundary nodes");
      N *= 2;
    }
  };

  TraceResult res;
  std::vector<std::pair<double, std::vector<double>>> ladder;
  BoundaryMesh finest;
  for (int m = opt.m_first; m <= opt.m_last; ++m) {
    const double h = opt.height_scale * std::ldexp(1.0, -m);
    auto mesh = mesh_for(h);
    const std::size_t node = mesh.node_at_param(opt.t_star);
    const auto bf = sample(mesh);
    const auto cone = geometry::cone_ladder(mesh, node, opt.kappa, {h}, exterior);
    const auto pot = potential(op, mesh, bf, cone.samples);
    TraceRow row;
    row.h = h;
    row.N = static_cast<int>(mesh.size());
    row.value.assign(pot.values.begin(), pot.values.end());
    row.in_cone = cone.inside_cone[0];
    res.all_in_cone = res.all_in_cone && row.in_cone;
    res.rows.push_back(std::move(row));
    if (m == opt.m_last) finest = std::move(mesh);
  }
  res.width = static_cast<int>(res.rows.back().value.size());

  // trace target on the finest mesh
  {
    const std::size_t node = finest.node_at_param(opt.t_star);
    const auto bf = sample(finest);
    res.reference = pv_at_node(op, finest, bf, node);
    const auto th = op.theta();
    std::span<double> ref(res.reference);
    mul_acc(th, bf.row(node), -0.5, ref);
  }
  for (auto& r : res.rows) r.residual = vec_dist(r.value, res.reference);
  for (std::size_t k = 1; k < res.rows.size(); ++k) {
    const double prev = res.rows[k - 1].residual, cur = res.rows[k].residual;
    if (cur > prev && cur > opt.monotone_floor) res.monotone = false;
  }

  const int K = std::clamp(opt.extrapolation_points, 2, static_cast<int>(res.rows.size()) - 1);
  auto extrapolate = [&](int count, std::size_t last) {
    std::vector<double> lim(res.width);
    for (int b = 0; b < res.width; ++b) {
      std::vector<double> hs, vs;
      for (std::size_t k = last + 1 - count; k <= last; ++k) {
        hs.push_back(res.rows[k].h);
        vs.push_back(res.rows[k].value[b]);
      }
      lim[b] = neville_at_zero(hs, vs);
    }
    return lim;
  };
  const std::size_t last = res.rows.size() - 1;
  res.limit = extrapolate(K, last);
  res.residual = vec_dist(res.limit, res.reference);
  res.spread = vec_dist(res.limit, extrapolate(K, last - 1));
  return res;
}

SingleLayerIdentity single_layer_gradient_identity(const BoundaryMesh& mesh, const std::vector<Point>& probes) {
  const int n = mesh.dim;
  const auto one = constant_field(mesh, 1.0);
  const auto S = potential(OperatorSpec::single_layer(n), mesh, one, probes, true);
  const auto C = potential(OperatorSpec::cauchy_clifford(n), mesh, normal_field(mesh), probes);
  SingleLayerIdentity r;
  const double step = 1e-4;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    double e = 0.0, efd = 0.0, g2 = 0.0;
    std::vector<Point> pts;
    for (int m = 0; m < n; ++m) {
      Point a = probes[p], b = probes[p];
      a[m] += step;
      b[m] -= step;
      pts.push_back(a);
      pts.push_back(b);
    }
    const auto Sfd = potential(OperatorSpec::single_layer(n), mesh, one, pts);
    for (int m = 0; m < n; ++m) {
      const double cv = C.value(p)[1u << m];
      const double g = S.gradient(p, m)[0];
      const double gfd = (Sfd.values[2 * m] - Sfd.values[2 * m + 1]) / (2.0 * step);
      e += (g + cv) * (g + cv);
      efd += (gfd + cv) * (gfd + cv);
      g2 += g * g;
    }
    r.residual = std::max(r.residual, std::sqrt(e));
    r.fd_residual = std::max(r.fd_residual, std::sqrt(efd));
    r.max_gradient = std::max(r.max_gradient, std::sqrt(g2));
  }
  return r;
}

double clifford_involution_check(const BoundaryMesh& mesh, const BoundaryField& f) {
  const int n = mesh.dim;
  const auto op = OperatorSpec::cauchy_clifford(n);
  const BoundaryField fm = f.width == 1 ? f.as_multivector(n) : f;
  const auto c1 = pv_boundary(op, mesh, fm);
  const auto c2 = pv_boundary(op, mesh, c1);
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    double s = 0.0;
    for (int b = 0; b < fm.width; ++b) {
      const double d = c2.data[i * fm.width + b] - 0.25 * fm.data[i * fm.width + b];
      s += d * d;
    }
    worst = std::max(worst, std::sqrt(s));
  }
  return worst;
}

}  // namespace siolab::ops
