#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holosym/curvature.hpp"
#include "holosym/geometry.hpp"
#include "holosym/symmetry.hpp"

namespace holosym {

enum class Verdict { Holds, Fails, Undetermined };

const char* to_string(Verdict v);

enum class PlaneMode { Generic, Holomorphic };

using PlanePair = std::pair<Plane, Plane>;

/// Pairs (pi, pibar) of g-orthonormal planes. Holomorphic mode returns
/// pi = u ^ Ju and pibar = x ^ Jx for random g-unit u, x (w = Jv exactly).
/// Deterministic given the seed. Throws ArgumentError for count < 1.
std::vector<PlanePair> sample_planes(const PointFrame& frame, int count, PlaneMode mode,
                                     std::uint64_t seed);

/// T(v,w,w,v;x,y) / (G(pi) sqrt(G(pibar))) where G is the Gram determinant
/// with respect to g. Invariant under re-basing either plane.
double normalized_plane_value(const Matrix& g, const Tensor& six, const Plane& pi, const Plane& pibar);

/// |normalized Q(v,w,w,v;x,y)| > tol. Throws ArgumentError for degenerate planes.
bool curvature_dependent(const Matrix& g, const Tensor& q, const Plane& pi, const Plane& pibar,
                         double tol);

/// L = RR(v,w,w,v;x,y) / Q(v,w,w,v;x,y). Also used with Qc in place of Q.
/// Throws NotCurvatureDependentError when the normalized denominator is not
/// above tol.
double double_sectional_curvature(const Matrix& g, const Tensor& rr, const Tensor& q, const Plane& pi,
                                  const Plane& pibar, double tol = 1e-8);

struct PlaneSampler {
  int count = 500;
  std::uint64_t seed = 0;
};

/// Per-point verdicts. All magnitudes are taken in a g-orthonormal basis and
/// compared against tol times the natural power of s = max|R| there:
/// s for Q and Qc, s^2 for R.R, s^(3/2) for nabla R. Flatness compares max|R|
/// against tol directly.
struct ClassificationReport {
  std::string manifold;
  Vector point;

  struct Flags {
    Verdict flat = Verdict::Undetermined;
    Verdict csc = Verdict::Undetermined;
    Verdict chsc = Verdict::Undetermined;
    Verdict locally_symmetric = Verdict::Undetermined;
    Verdict semisymmetric = Verdict::Undetermined;
    Verdict deszcz_pseudosymmetric = Verdict::Undetermined;
    Verdict holomorphically_pseudosymmetric = Verdict::Undetermined;
  } flags;

  struct Fitted {
    std::optional<double> c;
    std::optional<double> c_tilde;
    std::optional<double> L;
    std::optional<double> f;
  } fitted;

  // Relative residuals, same order as the flags.
  struct Residuals {
    double flat = 0.0;
    double csc = 0.0;
    double chsc = 0.0;
    double locally_symmetric = 0.0;
    double semisymmetric = 0.0;
    double deszcz_pseudosymmetric = 0.0;
    double holomorphically_pseudosymmetric = 0.0;
  } residuals;

  bool in_U = false;
  double curvature_scale = 0.0;  // max|R| in the orthonormal basis
  int samples = 0;               // requested plane pairs per fit
  int samples_used = 0;          // well-conditioned pairs that entered the fits
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

/// Throws DomainError outside the chart and NumericError for a degenerate metric.
ClassificationReport classify_point(const Chart& chart, const Vector& p, const PlaneSampler& sampler,
                                    double tol = 1e-8);

/// Same from an already computed frame (chart basis); `manifold` is copied
/// into the report.
ClassificationReport classify_frame(const PointFrame& frame, const std::string& manifold,
                                    const PlaneSampler& sampler, double tol = 1e-8);

/// True when the flags respect flat => csc => locsym => semisym => deszcz =>
/// holomorphic and chsc => locsym ("undetermined" never violates).
bool implications_respected(const ClassificationReport::Flags& flags);

}  // namespace holosym
