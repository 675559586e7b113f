#pragma once

#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "siolab/field.hpp"
#include "siolab/geometry.hpp"
#include "siolab/kernels.hpp"

namespace siolab::ops {

using geometry::BoundaryMesh;
using geometry::Point;
using geometry::dot;
using geometry::scale;
using geometry::sub;

enum class OpKind { riesz, poly_kernel, double_layer, cauchy_clifford, single_layer };
enum class Side { interior, exterior };

std::string to_string(OpKind k);
std::string to_string(Side s);

struct OperatorSpec {
  OpKind kind = OpKind::double_layer;
  Side side = Side::interior;
  int n = 2;
  int j = 1;  // Riesz component, 1-based
  kernels::PolyKernel poly;
  kernels::DoubleLayerField field = kernels::DoubleLayerField::harmonic(2);

  static OperatorSpec riesz(int n, int j, Side side = Side::interior);
  static OperatorSpec poly_kernel(const kernels::PolyKernel& K, Side side = Side::interior);
  static OperatorSpec double_layer(const kernels::DoubleLayerField& f, Side side = Side::interior);
  static OperatorSpec cauchy_clifford(int n, Side side = Side::interior);
  static OperatorSpec single_layer(int n, Side side = Side::interior);
  static OperatorSpec from_json(const nlohmann::json& j, int n);
  nlohmann::json to_json() const;

  OperatorSpec on_side(Side s) const {
    OperatorSpec o = *this;
    o.side = s;
    return o;
  }
  bool is_double_layer() const { return kind == OpKind::double_layer || kind == OpKind::cauchy_clifford; }
  // Width of the kernel values (1 or 2^n).
  int kernel_width() const;
  // Spherical mean of the double-layer field (kernel_width() entries).
  std::vector<double> theta() const;
};

// Fundamental solution of the Laplacian: log|x|/(2 pi) for n = 2,
// 1/(w_{n-1}(2-n)|x|^{n-2}) otherwise.
double fundamental_solution(const Point& x, int n);

// Direct quadrature of the boundary-to-domain operator at points off the
// boundary. Points must lie on the operator's side; DomainError otherwise.
DomainField potential(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f,
                      const std::vector<Point>& X, bool with_gradient = false);

// Principal-value boundary operator at every node.
//
// Double layers use the subtraction identity -+ (theta/2) f(x) +
// sum_{j != i} w_j <nu_j, k(x_i - y_j)> (f_j - f_i); Riesz and polynomial
// kernels use the punctured trapezoid sum. On curves the diagonal node gets
// the regular part of the integrand's Laurent expansion, with the tangential
// derivative of f computed spectrally; on surfaces it is omitted.
BoundaryField pv_boundary(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f);

// Same, at one node only (O(N)).
std::vector<double> pv_at_node(const OperatorSpec& op, const BoundaryMesh& mesh, const BoundaryField& f,
                               std::size_t node);

struct RieszViaClifford {
  std::vector<BoundaryField> components;  // R_j 1 = -(C nu)_{e_j}
  BoundaryField c_nu;                     // full multivector C nu
  double non_vector_residual = 0.0;       // max coefficient norm outside the vector blades
};

RieszViaClifford riesz_via_clifford(const BoundaryMesh& mesh);

struct TraceOptions {
  int m_first = 2;
  int m_last = 12;
  double height_scale = 1.0;
  double panel_ratio = 4.0;  // panel_h <= h / panel_ratio
  double t_star = std::numbers::pi / 4;
  double kappa = 1.0;
  int min_nodes = 64;
  int max_nodes = 1 << 21;
  int extrapolation_points = 4;
  double monotone_floor = 1e-11;
};

// Values of f at node i of a given mesh (width entries).
using FieldSampler = std::function<std::vector<double>(const BoundaryMesh&, std::size_t)>;

struct TraceRow {
  double h = 0.0;
  int N = 0;
  std::vector<double> value;
  double residual = 0.0;
  bool in_cone = true;
};

struct TraceResult {
  std::vector<TraceRow> rows;
  std::vector<double> reference;  // -(theta/2) f(x) + T f(x) on the finest mesh
  std::vector<double> limit;      // extrapolated limit of the ladder values
  double residual = 0.0;          // |limit - reference|
  double spread = 0.0;            // change of the limit when one ladder point is dropped
  bool monotone = true;           // raw residuals non-increasing (above the floor)
  bool all_in_cone = true;
  int width = 1;

  nlohmann::json to_json() const;
};

// Nontangential approach along -nu (interior) or +nu (exterior) at the node
// with parameter t_star, with meshes refined together with the heights.
TraceResult nontangential_trace(const OperatorSpec& op, const geometry::DomainSpec& domain, const FieldSampler& f,
                                int width, const TraceOptions& opt = {});

struct SingleLayerIdentity {
  double residual = 0.0;     // max |grad S1 + vec(C nu)|
  double fd_residual = 0.0;  // same with grad S1 by central differences
  double max_gradient = 0.0;
};

SingleLayerIdentity single_layer_gradient_identity(const BoundaryMesh& mesh, const std::vector<Point>& probes);

// max over nodes of |C(C f) - f/4|.
double clifford_involution_check(const BoundaryMesh& mesh, const BoundaryField& f);

}  // namespace siolab::ops
