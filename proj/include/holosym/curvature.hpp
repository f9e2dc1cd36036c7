#pragma once

#include <functional>
#include <vector>

#include "holosym/geometry.hpp"

namespace holosym {

/// The 2-plane spanned by v and w. `holomorphic` records that w = Jv by
/// construction.
struct Plane {
  Vector v;
  Vector w;
  bool holomorphic = false;

  static Plane holomorphic_plane(const Matrix& J, const Vector& u) { return {u, J * u, true}; }

  /// g(v,v) g(w,w) - g(v,w)^2
  double gram(const Matrix& g) const;
};

/// Relative degeneracy threshold: a plane is accepted when its Gram
/// determinant exceeds this times g(v,v) g(w,w).
inline constexpr double kDegeneratePlaneTolerance = 1e-12;

/// Throws ArgumentError when the plane is degenerate with respect to g.
void check_plane(const Matrix& g, const Plane& plane);

/// K = R(v,w,w,v) / (g(v,v) g(w,w) - g(v,w)^2)
double sectional_curvature(const PointFrame& frame, const Plane& plane);

/// Sectional curvature of u ^ Ju; throws ArgumentError for u = 0.
double holomorphic_sectional_curvature(const PointFrame& frame, const Vector& u);

/// A coordinate curve x(t), t in [0, t_end], given through its velocity.
struct Curve {
  Vector start;
  std::function<Vector(double)> velocity;
  double t_end = 1.0;
  int steps = 200;
};

/// Quadratic curve x(t) = start + t a + t^2 b, t in [0, 1].
Curve quadratic_curve(const Vector& start, const Vector& a, const Vector& b, int steps = 200);

struct TransportResult {
  Vector end_point;
  std::vector<Vector> vectors;
};

/// Parallel transport of `vectors` (given at curve.start) along the curve:
/// dv^k/dt + Gamma^k_ij dx^i/dt v^j = 0, integrated together with dx/dt by
/// classical fixed-step RK4. Throws DomainError if a stage point leaves the
/// chart.
TransportResult parallel_transport(const Chart& chart, const Curve& curve,
                                   const std::vector<Vector>& vectors);

}  // namespace holosym
