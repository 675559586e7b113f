#include "siolab/harness/experiments.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "siolab/error.hpp"
#include "siolab/field.hpp"
#include "siolab/geometry.hpp"
#include "siolab/growth.hpp"
#include "siolab/harness/svg.hpp"
#include "siolab/holder.hpp"
#include "siolab/operators.hpp"
#include "siolab/quadrature.hpp"

namespace siolab::harness {

using nlohmann::json;
namespace geo = siolab::geometry;

namespace {

std::string gfmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

constexpr double kPi = std::numbers::pi;
constexpr const char* kVersion = "siolab 0.1.0";

// JSON has no infinities; keep them readable.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double as_double(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return growth::kInf;
    if (s == "-inf") return -growth::kInf;
    if (s == "nan") return std::nan("");
  }
  return std::nan("");
}

Rule rule_le(std::string ac, std::string name, double measured, double threshold, std::string note = {}) {
  return {std::move(ac), std::move(name), "<=", measured, threshold, measured <= threshold, std::move(note)};
}

Rule rule_ge(std::string ac, std::string name, double measured, double threshold, std::string note = {}) {
  return {std::move(ac), std::move(name), ">=", measured, threshold, measured >= threshold, std::move(note)};
}

Rule rule_true(std::string ac, std::string name, bool ok, std::string note = {}) {
  return {std::move(ac), std::move(name), "true", ok ? 1.0 : 0.0, 1.0, ok, std::move(note)};
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

struct Ctx {
  const ExperimentConfig& cfg;
  ExperimentReport& rep;

  double p(const char* key, double def) const {
    if (!cfg.params.contains(key)) return def;
    const double v = as_double(cfg.params.at(key));
    if (std::isnan(v)) throw SpecError(std::string("params.") + key + " must be a number");
    return v;
  }
  int pi(const char* key, int def) const { return static_cast<int>(std::lround(p(key, def))); }
  std::vector<std::string> pstrings(const char* key, std::vector<std::string> def) const {
    if (!cfg.params.contains(key)) return def;
    return cfg.params.at(key).get<std::vector<std::string>>();
  }
  std::vector<int> resolutions(std::vector<int> def) const { return cfg.resolutions.empty() ? def : cfg.resolutions; }
  geo::DomainSpec domain(const char* def_kind) const {
    json d = cfg.domain;
    if (!d.contains("kind")) d["kind"] = def_kind;
    return geo::DomainSpec::from_json(d);
  }
  std::vector<geo::DomainSpec> domains(std::vector<geo::DomainSpec> def) const {
    if (!cfg.params.contains("domains")) return def;
    std::vector<geo::DomainSpec> out;
    for (const auto& d : cfg.params.at("domains")) out.push_back(geo::DomainSpec::from_json(d));
    if (out.empty()) throw SpecError("params.domains is empty");
    return out;
  }
  growth::GrowthFunction omega(const growth::GrowthFunction& def) const {
    return cfg.omega.empty() ? def : growth::GrowthFunction::from_json(cfg.omega);
  }
  ops::OperatorSpec op(int n, const json& def) const {
    return ops::OperatorSpec::from_json(cfg.op.empty() ? def : cfg.op, n);
  }
  void columns(std::vector<std::string> c) const { rep.columns = std::move(c); }
  void row(std::vector<json> r) const { rep.rows.push_back(std::move(r)); }
  void add(Rule r) const { rep.summary.push_back(std::move(r)); }
};

json series(const std::string& label, const std::vector<double>& x, const std::vector<double>& y, bool dashed = false) {
  json xs = json::array(), ys = json::array();
  for (double v : x) xs.push_back(num(v));
  for (double v : y) ys.push_back(num(v));
  return {{"label", label}, {"x", xs}, {"y", ys}, {"dashed", dashed}};
}

json line_plot(const std::string& title, const std::string& xl, const std::string& yl, json s, bool logx = true,
               bool logy = true) {
  return {{"title", title}, {"xlabel", xl}, {"ylabel", yl}, {"logx", logx}, {"logy", logy}, {"series", std::move(s)}};
}

BoundaryField unit_field(const geo::BoundaryMesh& mesh, const ops::OperatorSpec& op) {
  auto one = constant_field(mesh, 1.0);
  return op.kernel_width() > 1 ? one.as_multivector(mesh.dim) : one;
}

// ---------------------------------------------------------------------------

void t1_check(const Ctx& c) {
  const auto spec = c.domain("disk");
  const auto op = c.op(spec.dim(), {{"kind", "double_layer"}, {"field", {{"kind", "harmonic"}}}});
  const double tol = c.p("tolerance", 1e-6);
  const int probes = c.pi("probes", 20);
  const double rho = c.p("probe_rho", 0.2);
  const auto theta = op.theta();
  c.columns({"N", "quantity", "residual"});
  std::map<std::string, std::vector<double>> hist;
  std::vector<double> Ns;
  for (int N : c.resolutions({256, 512, 1024})) {
    const auto mesh = geo::build_mesh(spec, N);
    const auto one = unit_field(mesh, op);
    const int W = std::max<int>(theta.size(), one.width);
    std::vector<double> half(W, 0.0), full(W, 0.0), zero(W, 0.0);
    for (std::size_t b = 0; b < theta.size(); ++b) half[b] = 0.5 * theta[b], full[b] = theta[b];
    std::vector<double> neg_half = half, neg_full = full;
    for (auto& v : neg_half) v = -v;
    for (auto& v : neg_full) v = -v;
    std::map<std::string, double> res;
    const auto Ti = ops::pv_boundary(op, mesh, one);
    const auto Te = ops::pv_boundary(op.on_side(ops::Side::exterior), mesh, one);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      res["T1_interior"] = std::max(res["T1_interior"], max_abs_diff(Ti.row(i), neg_half));
      res["T1_exterior"] = std::max(res["T1_exterior"], max_abs_diff(Te.row(i), half));
    }
    const auto Xi = geo::sample_probes(mesh, probes, rho, c.cfg.seed);
    const auto Xe = geo::sample_probes(mesh, probes, rho, c.cfg.seed + 1, true);
    const auto Pi = ops::potential(op, mesh, one, Xi);
    const auto Pe = ops::potential(op.on_side(ops::Side::exterior), mesh, one, Xe);
    for (std::size_t k = 0; k < Xi.size(); ++k)
      res["potential_interior"] = std::max(res["potential_interior"], max_abs_diff(Pi.value(k), neg_full));
    for (std::size_t k = 0; k < Xe.size(); ++k)
      res["potential_exterior"] = std::max(res["potential_exterior"], max_abs_diff(Pe.value(k), zero));
    Ns.push_back(N);
    for (const auto& [q, r] : res) {
      c.row({N, q, num(r)});
      hist[q].push_back(r);
    }
  }
  json s = json::array();
  for (const auto& [q, v] : hist) {
    c.add(rule_le("AC-3", q + " at N=" + std::to_string(static_cast<int>(Ns.back())), v.back(), tol));
    s.push_back(series(q, Ns, v));
  }
  c.rep.plots["convergence"] = line_plot("T1 and potential residuals", "N", "max residual", s);
}

void jump_check(const Ctx& c) {
  const auto spec = c.domain("ellipse");
  const auto op0 = c.op(spec.dim(), {{"kind", "double_layer"}, {"field", {{"kind", "harmonic"}}}});
  ops::TraceOptions opt;
  opt.m_first = c.pi("m_first", opt.m_first);
  opt.m_last = c.pi("m_last", opt.m_last);
  opt.panel_ratio = c.p("panel_ratio", opt.panel_ratio);
  opt.t_star = c.p("t_star", opt.t_star);
  opt.kappa = c.p("kappa", opt.kappa);
  opt.extrapolation_points = c.pi("extrapolation_points", opt.extrapolation_points);
  const double tol = c.p("tolerance", 1e-4);
  const auto g = c.omega(growth::GrowthFunction::power(0.5));
  const int W = op0.kernel_width();
  c.columns({"field", "side", "h", "N", "value0", "residual"});
  json s = json::array();
  for (const auto& fname : c.pstrings("fields", {"one", "y1"})) {
    ops::FieldSampler f;
    if (fname == "one") {
      f = [W](const geo::BoundaryMesh&, std::size_t) {
        std::vector<double> v(W, 0.0);
        v[0] = 1.0;
        return v;
      };
    } else if (fname == "y1") {
      f = [W](const geo::BoundaryMesh& m, std::size_t i) {
        std::vector<double> v(W, 0.0);
        v[0] = m.nodes[i][0];
        return v;
      };
    } else if (fname == "omega") {
      const auto ge = g.extend();
      f = [W, ge](const geo::BoundaryMesh& m, std::size_t i) {
        std::vector<double> v(W, 0.0);
        v[0] = ge.raw(geo::distance(m.nodes[i], m.spec.curve(0.0).pos));
        return v;
      };
    } else {
      throw SpecError("jump_check: unknown field '" + fname + "' (one, y1, omega)");
    }
    for (const auto& side_s : c.pstrings("sides", {"interior"})) {
      if (side_s != "interior" && side_s != "exterior") throw SpecError("jump_check: sides are interior/exterior");
      const auto op = op0.on_side(side_s == "interior" ? ops::Side::interior : ops::Side::exterior);
      const auto r = ops::nontangential_trace(op, spec, f, W, opt);
      std::vector<double> hs, rs;
      for (const auto& row : r.rows) {
        c.row({fname, side_s, row.h, row.N, num(row.value[0]), num(row.residual)});
        hs.push_back(row.h);
        rs.push_back(row.residual);
      }
      const std::string tag = fname + "/" + side_s;
      c.row({fname, side_s, 0.0, r.rows.back().N, num(r.limit[0]), num(r.residual)});
      c.add(rule_le("AC-5", "extrapolated trace residual " + tag, r.residual, tol,
                    "spread " + gfmt(r.spread)));
      c.add(rule_true("AC-5", "monotone residual along the ladder " + tag, r.monotone,
                      "floor " + gfmt(opt.monotone_floor)));
      c.add(rule_true("AC-5", "ladder points inside the cone " + tag, r.all_in_cone));
      s.push_back(series(tag, hs, rs));
    }
  }
  c.rep.plots["convergence"] = line_plot("Trace residual along the ladder", "h", "|u(x - h nu) - trace|", s);
}

void involution_check(const Ctx& c) {
  const auto spec = c.domain("disk");
  if (!spec.is_smooth()) throw SpecError("involution_check needs a smooth domain");
  const double tol = c.p("tolerance", 1e-4);
  const int checkN = c.pi("check_N", 1024);
  const double floor = c.p("floor", 1e-12);
  const auto g = c.omega(growth::GrowthFunction::power(0.5));
  const auto Ns = c.resolutions({512, 1024, 2048});
  c.columns({"field", "N", "residual"});
  json s = json::array();
  for (const auto& fname : c.pstrings("fields", {"one", "y1", "omega"})) {
    std::vector<double> xs, rs;
    for (int N : Ns) {
      const auto mesh = geo::build_mesh(spec, N);
      BoundaryField f;
      if (fname == "one") f = constant_field(mesh, 1.0);
      else if (fname == "y1") f = coordinate_field(mesh, 0);
      else if (fname == "omega") f = modulus_field(mesh, g, mesh.nodes[0]);
      else throw SpecError("involution_check: unknown field '" + fname + "' (one, y1, omega)");
      const double r = ops::clifford_involution_check(mesh, f);
      c.row({fname, N, num(r)});
      xs.push_back(N);
      rs.push_back(r);
    }
    for (std::size_t k = 0; k < xs.size(); ++k)
      if (static_cast<int>(xs[k]) == checkN) c.add(rule_le("AC-6", "residual " + fname + " at N=" + std::to_string(checkN), rs[k], tol));
    for (std::size_t k = 1; k < xs.size(); ++k) {
      const bool floored = rs[k] <= floor && rs[k - 1] <= floor;
      const double ratio = rs[k] > 0 ? rs[k - 1] / rs[k] : growth::kInf;
      Rule r = rule_ge("AC-6", "reduction " + fname + " N=" + std::to_string(static_cast<int>(xs[k - 1])) + "->" +
                                   std::to_string(static_cast<int>(xs[k])),
                       ratio, 2.0, floored ? "both residuals at the rounding floor" : "");
      r.passed = r.passed || floored;
      c.add(r);
    }
    s.push_back(series(fname, xs, rs));
  }
  c.rep.plots["convergence"] = line_plot("Involution residual", "N", "max |C(Cf) - f/4|", s);
}

void reproducing_check(const Ctx& c) {
  const auto spec = c.domain("disk");
  const int probes = c.pi("probes", 50);
  const double rho = c.p("rho_min", 0.2);
  const double tol = c.p("tolerance", 1e-8);
  const auto op = ops::OperatorSpec::cauchy_clifford(spec.dim());
  c.columns({"N", "max_residual", "mean_residual", "accuracy_warning"});
  std::vector<double> xs, rs;
  for (int N : c.resolutions({512})) {
    const auto mesh = geo::build_mesh(spec, N);
    const auto X = geo::sample_probes(mesh, probes, rho, c.cfg.seed);
    const auto P = ops::potential(op, mesh, unit_field(mesh, op), X);
    std::vector<double> one(P.width, 0.0);
    one[0] = 1.0;
    double worst = 0.0, mean = 0.0;
    for (std::size_t k = 0; k < X.size(); ++k) {
      const double e = max_abs_diff(P.value(k), one);
      worst = std::max(worst, e);
      mean += e / X.size();
    }
    c.row({N, num(worst), num(mean), P.accuracy_warning});
    xs.push_back(N);
    rs.push_back(worst);
  }
  c.add(rule_le("AC-4", "max |C1 - 1| at N=" + std::to_string(static_cast<int>(xs.back())), rs.back(), tol));
  c.rep.plots["convergence"] = line_plot("Cauchy reproducing residual", "N", "max |C1 - 1|", json::array({series("C1", xs, rs)}));
}

void single_layer_identity(const Ctx& c) {
  const auto spec = c.domain("ellipse");
  const int probes = c.pi("probes", 50);
  const double rho = c.p("rho_min", 0.1);
  const double tol = c.p("tolerance", 1e-6);
  const auto g = c.omega(growth::GrowthFunction::power(0.5)).extend();
  c.columns({"N", "residual", "fd_residual", "max_gradient"});
  std::vector<double> xs, rs, fs;
  geo::BoundaryMesh last;
  for (int N : c.resolutions({2048})) {
    auto mesh = geo::build_mesh(spec, N);
    const auto X = geo::sample_probes(mesh, probes, rho, c.cfg.seed);
    const auto r = ops::single_layer_gradient_identity(mesh, X);
    c.row({N, num(r.residual), num(r.fd_residual), num(r.max_gradient)});
    xs.push_back(N);
    rs.push_back(r.residual);
    fs.push_back(r.fd_residual);
    last = std::move(mesh);
  }
  c.add(rule_le("AC-8", "max |grad S1 + vec(C nu)| at N=" + std::to_string(static_cast<int>(xs.back())), rs.back(), tol));
  c.add(rule_le("AC-8", "finite-difference cross-check at N=" + std::to_string(static_cast<int>(xs.back())), fs.back(),
                c.p("fd_tolerance", 1e-5)));
  c.rep.plots["convergence"] = line_plot("Single-layer gradient identity", "N", "residual",
                                         json::array({series("analytic gradient", xs, rs), series("central differences", xs, fs, true)}));
  if (spec.dim() == 2) {
    // |grad S1| on a grid, banded by W(rho)
    const auto [lo, hi] = spec.bounding_box();
    const int G = c.pi("heatmap_grid", 28);
    std::vector<geo::Point> X;
    for (int a = 0; a < G; ++a)
      for (int b = 0; b < G; ++b) {
        const geo::Point p{lo[0] + (hi[0] - lo[0]) * (a + 0.5) / G, lo[1] + (hi[1] - lo[1]) * (b + 0.5) / G, 0.0};
        if (spec.contains(p) && geo::distance_to_boundary(last, p) > 2.0 * last.panel_h) X.push_back(p);
      }
    const auto S = ops::potential(ops::OperatorSpec::single_layer(2), last, constant_field(last, 1.0), X, true);
    std::vector<double> wv(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) wv[k] = growth::w_omega(g, S.rho[k]);
    std::vector<double> sorted = wv;
    std::sort(sorted.begin(), sorted.end());
    const double q1 = sorted[sorted.size() / 3], q2 = sorted[2 * sorted.size() / 3];
    json hx = json::array(), hy = json::array(), hv = json::array(), hb = json::array();
    for (std::size_t k = 0; k < X.size(); ++k) {
      hx.push_back(X[k][0]);
      hy.push_back(X[k][1]);
      hv.push_back(std::hypot(S.gradient(k, 0)[0], S.gradient(k, 1)[0]));
      hb.push_back(wv[k] < q1 ? 0 : (wv[k] < q2 ? 1 : 2));
    }
    char l0[64], l1[64], l2[64];
    std::snprintf(l0, sizeof l0, "W(rho) < %.3g", q1);
    std::snprintf(l1, sizeof l1, "%.3g <= W(rho) < %.3g", q1, q2);
    std::snprintf(l2, sizeof l2, "W(rho) >= %.3g", q2);
    c.rep.plots["field_heatmap"] = {{"title", "|grad S1| inside the domain"}, {"x", hx}, {"y", hy}, {"value", hv},
                                    {"band", hb}, {"band_labels", {l0, l1, l2}}};
  }
}

void riesz_characterization(const Ctx& c) {
  const auto specs = c.domains({geo::DomainSpec::disk_of(1), geo::DomainSpec::ellipse_of(2, 1),
                                geo::DomainSpec::star_of(1, 0.2, 3), geo::DomainSpec::teardrop_of(kPi / 2)});
  const auto g = c.omega(growth::GrowthFunction::power(0.5));
  const auto Ns = c.resolutions({256, 512, 1024, 2048, 4096});
  const double stab = c.p("stability", 0.2);
  const double factor = c.p("blowup_factor", 10.0);
  const int crossN = c.pi("cross_N", 1024);
  c.columns({"domain", "N", "quantity", "value"});
  json s = json::array();
  double plateau = 0.0;
  std::vector<std::pair<std::string, std::vector<double>>> rough;
  for (const auto& spec : specs) {
    const std::string name = geo::to_string(spec.kind);
    if (spec.dim() != 2) throw SpecError("riesz_characterization runs on planar domains");
    std::vector<double> xs, sem;
    for (int N : Ns) {
      const auto mesh = geo::build_mesh(spec, N);
      const auto one = constant_field(mesh, 1.0);
      double worst = 0.0;
      for (int j = 1; j <= 2; ++j) {
        const auto R = ops::pv_boundary(ops::OperatorSpec::riesz(2, j), mesh, one);
        worst = std::max(worst, holder::seminorm(mesh, R, g).seminorm);
      }
      c.row({name, N, "seminorm", num(worst)});
      xs.push_back(N);
      sem.push_back(worst);
    }
    s.push_back(series(name, xs, sem));
    if (spec.is_smooth()) {
      const double a = sem[sem.size() - 2], b = sem.back();
      const double change = std::abs(b - a) / std::max(a, 1e-300);
      c.add(rule_le("AC-11", name + ": relative change of the seminorm over the last refinement", change, stab));
      plateau = std::max(plateau, b);
    } else {
      rough.emplace_back(name, sem);
    }

    // Riesz transforms of 1: direct quadrature against the Clifford route
    if (!spec.is_smooth()) continue;
    const auto mesh = geo::build_mesh(spec, crossN);
    const auto viac = ops::riesz_via_clifford(mesh);
    double diff = 0.0, scale = 0.0, closed = 0.0;
    for (int j = 1; j <= 2; ++j) {
      const auto R = ops::pv_boundary(ops::OperatorSpec::riesz(2, j), mesh, constant_field(mesh, 1.0));
      for (std::size_t i = 0; i < mesh.size(); ++i) {
        diff = std::max(diff, std::abs(R.data[i] - viac.components[j - 1].data[i]));
        scale = std::max(scale, std::abs(R.data[i]));
        if (spec.kind == geo::DomainKind::disk)
          closed = std::max(closed, std::abs(R.data[i] - mesh.nodes[i][j - 1] / (2.0 * spec.r)));
      }
    }
    c.row({name, crossN, "direct_vs_clifford_relative", num(diff / scale)});
    c.row({name, crossN, "non_vector_residual", num(viac.non_vector_residual)});
    c.add(rule_le("AC-7", name + ": direct Riesz path vs Clifford route (relative)", diff / scale, 1e-8));
    if (spec.kind == geo::DomainKind::disk) {
      c.row({name, crossN, "closed_form_error", num(closed)});
      c.add(rule_le("AC-7", name + ": R_j1 - x_j/2", closed, 1e-6));
    }
  }
  for (const auto& [name, sem] : rough) {
    if (plateau > 0.0) c.add(rule_ge("AC-11", name + ": seminorm at N=" + std::to_string(Ns.back()) + " over smooth plateau",
                                     sem.back() / plateau, factor));
    bool increasing = true;
    for (std::size_t k = 1; k < sem.size(); ++k) increasing = increasing && sem[k] > sem[k - 1];
    c.add(rule_true("AC-11", name + ": seminorm still increasing", increasing));
  }
  c.rep.plots["convergence"] = line_plot("C^w seminorm of R_j 1", "N", "seminorm", s);

  // empirical moduli on the first smooth domain at the finest resolution
  for (const auto& spec : specs) {
    if (!spec.is_smooth()) continue;
    const auto mesh = geo::build_mesh(spec, std::min(Ns.back(), 2048));
    const auto R = ops::pv_boundary(ops::OperatorSpec::riesz(2, 1), mesh, constant_field(mesh, 1.0));
    BoundaryField nu(mesh.size(), 2);
    for (std::size_t i = 0; i < mesh.size(); ++i) nu.data[2 * i] = mesh.normals[i][0], nu.data[2 * i + 1] = mesh.normals[i][1];
    json ms = json::array();
    const auto gz = g.extend();
    for (auto [label, field] : {std::pair<std::string, const BoundaryField*>{"nu", &nu}, {"R_1 1", &R}}) {
      const auto prof = holder::modulus_profile(mesh.nodes, *field);
      std::vector<double> t, d, lin, fit, fitz;
      double cw = 0.0, cz = 0.0;
      for (const auto& r : prof) {
        t.push_back(r.bin_hi);
        d.push_back(r.max_delta);
        cw = std::max(cw, r.max_delta / gz.raw(r.bin_hi));
        cz = std::max(cz, r.max_delta / r.bin_hi);
      }
      for (double x : t) fit.push_back(cw * gz.raw(x)), lin.push_back(cz * x);
      ms.push_back(series(label + " max |delta|", t, d));
      ms.push_back(series(label + ": c w(t)", t, fit, true));
      ms.push_back(series(label + ": c t", t, lin, true));
    }
    c.rep.plots["modulus_fit"] = line_plot("Empirical moduli on " + geo::to_string(spec.kind), "distance", "max |delta f|", ms);
    break;
  }
}

void growth_analysis(const Ctx& c) {
  using growth::GrowthFunction;
  const double tol = c.p("index_tolerance", 0.02);
  c.columns({"fixture", "quantity", "value", "target"});
  struct Fixture {
    std::string name;
    GrowthFunction g;
    double lo, hi;
  };
  const double a = c.p("alpha", 0.4), b = c.p("beta", 0.7), th = c.p("theta", 1.0);
  const double am = c.p("alpha_minmax", 0.3);
  std::vector<Fixture> fx = {
      {"power", GrowthFunction::power(a), a, a},
      {"power_log_plus", GrowthFunction::power_log_plus(a, th), a, a},
      {"power_log_inv", GrowthFunction::power_log_inv(a, th), a, a},
      {"power_log_D", GrowthFunction::power_log_D(a, th, 1.0), a, a},
      {"max_powers D=inf", GrowthFunction::max_powers(am, b), am, b},
      {"min_powers D=inf", GrowthFunction::min_powers(am, b), am, b},
      {"max_powers D=1", GrowthFunction::max_powers(am, b, 1.0), am, am},
      {"min_powers D=1", GrowthFunction::min_powers(am, b, 1.0), b, b},
  };
  for (const auto& f : fx) {
    const auto ix = growth::dilation_indices(f.g);
    c.row({f.name, "i_lower", ix.i_lower, f.lo});
    c.row({f.name, "i_upper", ix.i_upper, f.hi});
    const double err = std::max(std::abs(ix.i_lower - f.lo), std::abs(ix.i_upper - f.hi));
    c.add(rule_le("AC-9", "dilation indices of " + f.name, err, tol));
  }
  // closed form of w_Z for power(1/2) on (0, 1)
  const auto p = GrowthFunction::power(0.5, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double t = std::pow(10.0, -8.0 + 8.0 * (k + 0.5) / 32.0);
    const double exact = 4.0 * std::sqrt(t) - 2.0 * t;
    const double v = growth::zygmund_transform(p, t);
    worst = std::max(worst, std::abs(v - exact) / exact);
  }
  c.row({"power(0.5, D=1)", "zygmund_closed_form_rel_error", num(worst), 0.0});
  c.add(rule_le("AC-9", "w_Z of power(1/2) vs 4 sqrt(t) - 2t (relative)", worst, 1e-8));

  // int_0^tau W = w_Z(tau) for the configured function
  const auto g = c.omega(GrowthFunction::power(0.5, 1.0));
  if (!std::isfinite(g.D())) throw SpecError("growth_analysis: omega needs a finite D for the W identity");
  double wid = 0.0;
  for (int k = 0; k < 32; ++k) {
    const double tau = g.D() * std::pow(10.0, -6.0 + 6.0 * (k + 0.5) / 32.0) * 0.999;
    // t = tau s^2 removes the endpoint singularity of W
    quad::AdaptiveOptions q;
    q.rel_tol = 1e-11;
    const auto r = quad::integrate([&](double s) { return s > 0 ? 2.0 * tau * s * growth::w_omega(g, tau * s * s) : 0.0; },
                                   0.0, 1.0, q);
    const double z = growth::zygmund_transform(g, tau);
    const double e = std::abs(r.value - z) / z;
    c.row({g.describe(), "int_W_vs_wZ_rel_error tau=" + gfmt(tau), num(e), 0.0});
    wid = std::max(wid, e);
  }
  c.add(rule_le("AC-9", "int_0^tau W = w_Z(tau) over 32 tau values (relative)", wid, 1e-6));
  const auto an = growth::analyze(g);
  c.rep.plots["analysis"] = an.to_json();
  c.row({g.describe(), "doubling_constant", num(an.doubling_constant), json()});
  c.row({g.describe(), "dini_integral", num(an.dini_integral), json()});
  c.row({g.describe(), "zygmund_constant", num(an.zygmund_constant), json()});
  c.row({g.describe(), "i_lower", num(an.i_lower), json()});
  c.row({g.describe(), "i_upper", num(an.i_upper), json()});

  json s = json::array();
  std::vector<double> ts, wz, w;
  for (int k = 0; k <= 40; ++k) {
    const double t = g.D() * std::pow(10.0, -8.0 + 8.0 * k / 40.0) * 0.999;
    ts.push_back(t);
    w.push_back(g(t));
    wz.push_back(growth::zygmund_transform(g, t));
  }
  s.push_back(series("w", ts, w));
  s.push_back(series("w_Z", ts, wz, true));
  c.rep.plots["convergence"] = line_plot(g.describe() + " and its Zygmund transform", "t", "value", s);
}

void holder_fixtures(const Ctx& c) {
  const auto spec = c.domain("disk");
  const auto Ns = c.resolutions({256, 512, 1024, 2048, 4096});
  const double alpha = c.p("alpha", 0.9);
  const double eps = c.p("eps", 0.85);
  const double ratio_min = c.p("divergence_ratio", 5.0);
  const double claim_alpha = c.p("claim_alpha", 0.5);
  if (!(eps > 0 && eps < alpha && alpha < 1)) throw SpecError("holder_fixtures needs 0 < eps < alpha < 1");
  const double D = spec.diameter();
  const auto claim_w = growth::GrowthFunction::power(claim_alpha);
  const auto pw = growth::GrowthFunction::power(alpha);
  const auto wlog = growth::GrowthFunction::power_log_D(alpha, 1.0, D);  // t^a (1/a + ln(D/t))
  c.columns({"fixture", "N", "seminorm", "sup_norm", "pairs"});
  std::map<std::string, std::vector<double>> sem;
  std::vector<double> xs;
  bool products_ok = true;
  std::mt19937_64 rng(c.cfg.seed);
  for (int N : Ns) {
    const auto mesh = geo::build_mesh(spec, N);
    const geo::Point x0 = mesh.nodes[0];
    auto report = [&](const std::string& name, const BoundaryField& f, const growth::GrowthFunction& g) {
      const auto r = holder::seminorm(mesh, f, g);
      c.row({name, N, num(r.seminorm), num(r.sup_norm), r.pairs_examined});
      sem[name].push_back(r.seminorm);
      return r;
    };
    report("claim: w(|y - z|) in C^w", modulus_field(mesh, claim_w, x0), claim_w);
    const auto gf = scalar_field(mesh, [&](const geo::Point& y) {
      const double r = geo::distance(y, x0);
      return r > 0 ? std::pow(r, alpha) * (1.0 / alpha + std::log(D / r)) : 0.0;
    });
    report("g in C^alpha", gf, pw);
    const auto ff = scalar_field(mesh, [&](const geo::Point& y) { return std::pow(geo::distance(y, x0), alpha - eps); });
    report("f in C^w", ff, wlog);
    xs.push_back(N);
    if (N <= 1024) {
      std::uniform_real_distribution<double> U(-1.0, 1.0);
      const double a1 = U(rng), a2 = U(rng), a3 = U(rng);
      const auto t1 = scalar_field(mesh, [&](const geo::Point& y) { return std::sin(3 * y[0] + a1) + a2 * y[1]; });
      const auto t2 = scalar_field(mesh, [&](const geo::Point& y) { return std::cos(2 * y[1] - a3) * y[0]; });
      const auto chk = holder::product_norm_check(mesh, t1, t2, claim_w);
      products_ok = products_ok && chk.holds;
      c.row({"product ||fg|| - ||f|| ||g||", N, num(chk.norm_fg - chk.norm_f * chk.norm_g), json(), json()});
    }
  }
  const auto& claim = sem["claim: w(|y - z|) in C^w"];
  c.add(rule_le("AC-10", "subadditive modulus field seminorm (max over N)", *std::max_element(claim.begin(), claim.end()),
                1.0 + 1e-9));
  for (const char* name : {"g in C^alpha", "f in C^w"}) {
    const auto& v = sem[name];
    c.add(rule_ge("AC-10", std::string(name) + ": seminorm ratio N=" + std::to_string(Ns.back()) + " / N=" +
                               std::to_string(Ns.front()),
                  v.back() / v.front(), ratio_min));
  }
  c.add(rule_true("AC-10", "product inequality on random trigonometric fields", products_ok));
  json s = json::array();
  for (const auto& [name, v] : sem) s.push_back(series(name, xs, v));
  c.rep.plots["convergence"] = line_plot("Seminorms under refinement", "N", "seminorm", s);
}

void ahlfors_profile(const Ctx& c) {
  const auto specs = c.domains({geo::DomainSpec::disk_of(1), geo::DomainSpec::star_of(1, 0.2, 3)});
  const auto g = c.omega(growth::GrowthFunction::power(0.5));
  const int N = c.resolutions({2048}).back();
  const int stride = c.pi("stride", 64);
  const int nr = c.pi("radii", 12);
  c.columns({"domain", "kind", "center", "r", "d", "lhs_or_lower", "rhs_or_upper"});
  json s = json::array();
  int failures = 0, checks = 0;
  for (const auto& spec : specs) {
    const std::string name = geo::to_string(spec.kind);
    const auto mesh = geo::build_mesh(spec, N);
    const double lo = 4.5 * mesh.panel_h, hi = 1.9 * spec.diameter();
    std::vector<double> radii;
    for (int k = 0; k < nr; ++k) radii.push_back(lo * std::pow(hi / lo, k / (nr - 1.0)));
    const auto prof = geo::ahlfors_profile(mesh, radii, stride);
    std::vector<double> rs, lows, ups;
    for (const auto& r : prof) {
      c.row({name, "ahlfors", json(), r.r, json(), r.lower, r.upper});
      rs.push_back(r.r);
      lows.push_back(r.lower);
      ups.push_back(r.upper);
    }
    s.push_back(series(name + " lower", rs, lows));
    s.push_back(series(name + " upper", rs, ups, true));
    std::vector<std::size_t> centers;
    for (std::size_t i = 0; i < mesh.size(); i += stride) centers.push_back(i);
    const double C = geo::upper_ahlfors_constant(mesh, centers);
    c.row({name, "upper_ahlfors_constant", json(), json(), json(), C, json()});
    for (std::size_t ctr : centers)
      for (double r : {0.01, 0.05, 0.2, 0.5})
        for (double d : {0.0, 1.0}) {
          const auto in = geo::dyadic_inner_bound(mesh, ctr, r, d, g, C);
          const auto tl = geo::dyadic_tail_bound(mesh, ctr, r, d, g, C);
          c.row({name, "inner", ctr, r, d, num(in.lhs), num(in.rhs)});
          c.row({name, "tail", ctr, r, d, num(tl.lhs), num(tl.rhs)});
          checks += 2;
          failures += !in.holds() + !tl.holds();
        }
  }
  c.add(rule_le("AC-12", "dyadic integral bounds violated (of " + std::to_string(checks) + ")", failures, 0));
  c.rep.plots["convergence"] = line_plot("Ahlfors ratios sigma(B(x,r))/r", "r", "ratio", s, true, false);
}

void hourglass(const Ctx& c) {
  const auto specs = c.domains({geo::DomainSpec::disk_of(1), geo::DomainSpec::teardrop_of(kPi / 2)});
  const auto g = c.omega(growth::GrowthFunction::power(0.5));
  const int N = c.resolutions({256}).back();
  const double a = c.p("a", 1.0), b = c.p("b", 0.1);
  c.columns({"domain", "node", "x", "y", "ok"});
  for (const auto& spec : specs) {
    const std::string name = geo::to_string(spec.kind);
    const auto mesh = geo::build_mesh(spec, N);
    const auto r = geo::hourglass_check(mesh, g, a, b);
    for (std::size_t i : r.failures) c.row({name, i, mesh.nodes[i][0], mesh.nodes[i][1], false});
    c.row({name, "all", json(), json(), r.global});
    if (spec.is_smooth())
      c.add(rule_true("AC-11", name + ": pseudo-balls on both sides of every node (smooth side of the dichotomy)", r.global));
    else
      c.add(rule_true("AC-11", name + ": pseudo-ball condition fails at the corner (non-smooth side)", !r.global,
                      std::to_string(r.failures.size()) + " failing nodes"));
  }
}

using Runner = void (*)(const Ctx&);

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m = {{"t1_check", t1_check},
                                                  {"jump_check", jump_check},
                                                  {"involution_check", involution_check},
                                                  {"reproducing_check", reproducing_check},
                                                  {"single_layer_identity", single_layer_identity},
                                                  {"riesz_characterization", riesz_characterization},
                                                  {"growth_analysis", growth_analysis},
                                                  {"holder_fixtures", holder_fixtures},
                                                  {"ahlfors_profile", ahlfors_profile},
                                                  {"hourglass", hourglass}};
  return m;
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") != std::string::npos) {
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return s;
}

svg::LinePlot line_from_json(const json& j) {
  svg::LinePlot p;
  p.title = j.value("title", std::string());
  p.xlabel = j.value("xlabel", std::string());
  p.ylabel = j.value("ylabel", std::string());
  p.logx = j.value("logx", true);
  p.logy = j.value("logy", true);
  for (const auto& s : j.at("series")) {
    svg::Series ser;
    ser.label = s.value("label", std::string());
    ser.dashed = s.value("dashed", false);
    for (const auto& v : s.at("x")) ser.x.push_back(as_double(v));
    for (const auto& v : s.at("y")) ser.y.push_back(as_double(v));
    p.series.push_back(std::move(ser));
  }
  return p;
}

}  // namespace

json Rule::to_json() const {
  return {{"criterion", criterion}, {"name", name},     {"comparison", comparison}, {"measured", num(measured)},
          {"threshold", num(threshold)}, {"passed", passed}, {"note", note}};
}

Rule Rule::from_json(const json& j) {
  Rule r;
  r.criterion = j.at("criterion").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.comparison = j.value("comparison", std::string());
  r.measured = as_double(j.at("measured"));
  r.threshold = as_double(j.at("threshold"));
  r.passed = j.at("passed").get<bool>();
  r.note = j.value("note", std::string());
  return r;
}

bool ExperimentReport::passed() const {
  return std::all_of(summary.begin(), summary.end(), [](const Rule& r) { return r.passed; });
}

json ExperimentReport::to_json() const {
  json s = json::array();
  for (const auto& r : summary) s.push_back(r.to_json());
  return {{"experiment", experiment}, {"columns", columns}, {"rows", rows},          {"summary", s},
          {"passed", passed()},       {"plots", plots},     {"provenance", provenance}};
}

ExperimentReport ExperimentReport::from_json(const json& j) {
  ExperimentReport r;
  r.experiment = j.at("experiment").get<std::string>();
  r.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto& row : j.at("rows")) r.rows.push_back(row.get<std::vector<json>>());
  for (const auto& s : j.at("summary")) r.summary.push_back(Rule::from_json(s));
  r.plots = j.value("plots", json::object());
  r.provenance = j.value("provenance", json::object());
  return r;
}

std::string ExperimentReport::rows_csv() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < columns.size(); ++k) os << (k ? "," : "") << csv_cell(columns[k]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << csv_cell(row[k]);
    os << '\n';
  }
  return os.str();
}

std::string git_blob_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + std::string(1, '\0') + content;
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md, &len, EVP_sha1(), nullptr) != 1) throw Error("hash", "SHA-1 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) out += hex[md[k] >> 4], out += hex[md[k] & 15];
  return out;
}

ExperimentReport run(const ExperimentConfig& cfg) {
  const auto it = runners().find(cfg.experiment);
  if (it == runners().end()) throw SpecError("unknown experiment '" + cfg.experiment + "'");
  ExperimentReport rep;
  rep.experiment = cfg.experiment;
  const std::string canonical = cfg.raw.dump();
  rep.provenance = {{"config", cfg.raw}, {"config_hash", git_blob_hash(canonical)}, {"version", kVersion}};
  Ctx ctx{cfg, rep};
  it->second(ctx);
  return rep;
}

std::string plot(const ExperimentReport& report, const std::string& kind) {
  if (kind != "convergence" && kind != "modulus_fit" && kind != "field_heatmap")
    throw SpecError("unknown plot kind '" + kind + "' (convergence, modulus_fit, field_heatmap)");
  if (!report.plots.contains(kind)) throw Error("empty", "report has no data for plot '" + kind + "'");
  const json& j = report.plots.at(kind);
  if (kind == "field_heatmap") {
    svg::Heatmap h;
    h.title = j.value("title", std::string());
    for (const auto& v : j.at("x")) h.x.push_back(as_double(v));
    for (const auto& v : j.at("y")) h.y.push_back(as_double(v));
    for (const auto& v : j.at("value")) h.value.push_back(as_double(v));
    for (const auto& v : j.at("band")) h.band.push_back(v.get<int>());
    h.band_labels = j.at("band_labels").get<std::vector<std::string>>();
    return svg::render(h);
  }
  return svg::render(line_from_json(j));
}

std::vector<std::string> write_artifacts(const ExperimentReport& report, const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& content) {
    const auto path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write '" + path + "'");
    out << content;
    written.push_back(path);
  };
  put("report.json", report.to_json().dump(2) + "\n");
  put("rows.csv", report.rows_csv());
  for (const char* kind : {"convergence", "modulus_fit", "field_heatmap"}) {
    if (!report.plots.contains(kind)) continue;
    try {
      put(std::string(kind) + ".svg", plot(report, kind));
    } catch (const Error& e) {
      if (e.kind() != "empty") throw;
    }
  }
  return written;
}

}  // namespace siolab::harness
