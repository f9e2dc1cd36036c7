#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "holosym/jet.hpp"
#include "holosym/rng.hpp"
#include "holosym/tensor.hpp"

namespace holosym {

/// Metric components and their coordinate partials at one point.
///   dg(a,b,c)         = d_c g_ab
///   ddg(a,b,c,d)      = d_c d_d g_ab
///   dddg(a,b,c,d,e)   = d_c d_d d_e g_ab
/// Only the blocks up to `order` are filled; higher ones are empty tensors.
struct MetricJet {
  int order = 0;
  Matrix g;
  Tensor dg;
  Tensor ddg;
  Tensor dddg;
};

/// Builds a MetricJet from jets of the metric components (all in one space).
MetricJet metric_jet_from_jets(const std::vector<std::vector<Jet>>& g);

using MetricJetFn = std::function<MetricJet(const Vector& point, int order)>;
using ComplexStructureFn = std::function<Matrix(const Vector& point)>;
using DomainFn = std::function<bool(const Vector& point)>;
/// Kaehler potential as a function of the 2n real coordinates.
using PotentialFn = std::function<Jet(std::span<const Jet> coords)>;

/// A single coordinate chart of a (possibly Kaehler) manifold.
///
/// Invariants: dim is even and >= 2. For Kaehler charts the metric is
/// symmetric positive definite, J^2 = -1, g(JX,JY) = g(X,Y) and J is parallel;
/// these are not enforced here (negative controls deliberately violate the
/// last one) but can be checked with kahler_defect().
class Chart {
 public:
  struct Definition {
    std::string name;
    int dim = 0;
    std::vector<std::pair<std::string, double>> params;
    MetricJetFn metric_jet;
    ComplexStructureFn complex_structure;
    DomainFn in_domain;  // empty: whole coordinate space
    double sample_radius = 1.0;
  };

  explicit Chart(Definition def);

  const std::string& name() const { return def_.name; }
  int dim() const { return def_.dim; }
  const std::vector<std::pair<std::string, double>>& params() const { return def_.params; }
  double sample_radius() const { return def_.sample_radius; }

  bool contains(const Vector& p) const;

  /// Throws DomainError outside the chart; order is clamped to [0, 3].
  MetricJet metric_jet(const Vector& p, int order = 3) const;
  Matrix complex_structure(const Vector& p) const;

  /// Uniform in the coordinate ball of radius sample_radius().
  Vector sample_point(Rng& rng) const;

 private:
  void check_point(const Vector& p) const;

  Definition def_;
};

/// Standard complex structure on R^{2n}: J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k}.
Matrix standard_complex_structure(int dim);

/// Chart whose metric is derived from a Kaehler potential K with the standard
/// complex structure: g(X,Y) = (Hess K(X,Y) + Hess K(JX,JY)) / 2. The result
/// is Kaehler by construction; jets come from forward-mode differentiation of
/// K to order five.
Chart kahler_chart(std::string name, int dim, std::vector<std::pair<std::string, double>> params,
                   PotentialFn potential, DomainFn in_domain, double sample_radius);

Chart catalog_flat(int n);
Chart catalog_fubini_study(int n, double c_tilde);
Chart catalog_complex_hyperbolic(int n, double c_tilde);
Chart catalog_product_spheres(double r1, double r2);
/// Fubini-Study potential plus eps * exp(-|x - x0|^2), x0 fixed off-center.
/// Kaehler but not locally symmetric; used as a negative control.
Chart catalog_fubini_study_bump(int n, double c_tilde, double eps);
/// S^2(r1) x S^2(r2) with an orthogonal almost complex structure that mixes the
/// factors: J^2 = -1 and g(JX,JY) = g(X,Y), but J is not parallel.
Chart catalog_twisted_product(double r1, double r2);

struct CatalogEntry {
  std::string id;
  std::string params;        // schema with defaults, e.g. "n=2,c=4"
  std::string description;
  std::string ground_truth;  // known classification
  bool kahler;
};

const std::vector<CatalogEntry>& catalog_entries();

/// Parses "cpn:n=2,c=4" style ids. Missing parameters take the defaults listed
/// in catalog_entries(). Throws ArgumentError for unknown ids, unknown keys or
/// malformed values.
Chart make_chart(const std::string& id);

/// Everything evaluated at one point in the chart basis.
///   christoffel(k,i,j)          = Gamma^k_ij
///   d_christoffel(k,i,j,m)      = d_m Gamma^k_ij
///   dd_christoffel(k,i,j,m,n)   = d_m d_n Gamma^k_ij
///   riemann(i,j,k,l)            = g(R(d_i,d_j)d_k, d_l),
///       R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
///   nabla_riemann(i,j,k,l,m)    = (nabla_{d_m} R)(d_i,d_j,d_k,d_l)
struct PointFrame {
  Vector point;
  int dim = 0;
  Matrix g;
  Matrix g_inv;
  Matrix J;
  Tensor christoffel;
  Tensor d_christoffel;
  Tensor dd_christoffel;
  Tensor riemann;
  Tensor nabla_riemann;
};

PointFrame point_frame(const Chart& chart, const Vector& p);

/// Frame from raw data; jet.order must be 3.
PointFrame point_frame(const MetricJet& jet, const Matrix& J, const Vector& p);

/// The same point expressed in a g-orthonormal basis (g = 1 there): R, nabla R
/// and J are rewritten; Christoffel fields are left empty. Plane sampling and
/// all magnitude comparisons work in this basis, which makes them independent
/// of the coordinate scale.
PointFrame orthonormal_frame(const PointFrame& frame);

/// Christoffel symbols only (first-order jet); used by parallel transport.
Tensor christoffel_at(const Chart& chart, const Vector& p);

/// Pointwise defects of the Kaehler conditions (all zero for a Kaehler chart).
struct KahlerDefect {
  double asymmetry = 0.0;       // max |g_ab - g_ba|
  double min_eigenvalue = 0.0;  // of g
  double j_square = 0.0;        // max |J^2 + 1|
  double hermitian = 0.0;       // max |J^T g J - g|
  double parallel = 0.0;        // max |nabla J|, dJ by central differences
};

KahlerDefect kahler_defect(const Chart& chart, const Vector& p);

}  // namespace holosym
