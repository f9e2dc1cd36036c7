#include "holosym/curvature.hpp"

#include <cmath>

#include "holosym/errors.hpp"

namespace holosym {

double Plane::gram(const Matrix& g) const {
  const double vv = v.dot(g * v);
  const double ww = w.dot(g * w);
  const double vw = v.dot(g * w);
  return vv * ww - vw * vw;
}

void check_plane(const Matrix& g, const Plane& plane) {
  const int n = static_cast<int>(g.rows());
  if (plane.v.size() != n || plane.w.size() != n) throw ArgumentError("plane vectors have the wrong dimension");
  const double vv = plane.v.dot(g * plane.v);
  const double ww = plane.w.dot(g * plane.w);
  if (!(plane.gram(g) > kDegeneratePlaneTolerance * vv * ww) || vv == 0.0 || ww == 0.0) {
    throw ArgumentError("degenerate plane");
  }
}

double sectional_curvature(const PointFrame& frame, const Plane& plane) {
  check_plane(frame.g, plane);
  const Vector args[] = {plane.v, plane.w, plane.w, plane.v};
  return evaluate(frame.riemann, args) / plane.gram(frame.g);
}

double holomorphic_sectional_curvature(const PointFrame& frame, const Vector& u) {
  if (u.size() != frame.dim) throw ArgumentError("vector has the wrong dimension");
  if (u.isZero(0.0)) throw ArgumentError("holomorphic sectional curvature of the zero vector");
  return sectional_curvature(frame, Plane::holomorphic_plane(frame.J, u));
}

Curve quadratic_curve(const Vector& start, const Vector& a, const Vector& b, int steps) {
  Curve c;
  c.start = start;
  c.velocity = [a, b](double t) -> Vector { return a + 2.0 * t * b; };
  c.t_end = 1.0;
  c.steps = steps;
  return c;
}

namespace {

struct State {
  Vector x;
  std::vector<Vector> v;
};

State derivative(const Chart& chart, const Curve& curve, double t, const State& s) {
  State d;
  d.x = curve.velocity(t);
  const Tensor gamma = christoffel_at(chart, s.x);
  const int n = chart.dim();
  d.v.reserve(s.v.size());
  for (const Vector& v : s.v) {
    Vector dv = Vector::Zero(n);
    for (int k = 0; k < n; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) {
        if (d.x(i) == 0.0) continue;
        for (int j = 0; j < n; ++j) acc += gamma(k, i, j) * d.x(i) * v(j);
      }
      dv(k) = -acc;
    }
    d.v.push_back(std::move(dv));
  }
  return d;
}

State axpy(const State& s, double h, const State& d) {
  State out;
  out.x = s.x + h * d.x;
  out.v.reserve(s.v.size());
  for (std::size_t i = 0; i < s.v.size(); ++i) out.v.push_back(s.v[i] + h * d.v[i]);
  return out;
}

}  // namespace

TransportResult parallel_transport(const Chart& chart, const Curve& curve,
                                   const std::vector<Vector>& vectors) {
  const int n = chart.dim();
  if (curve.start.size() != n) throw ArgumentError("curve start has the wrong dimension");
  if (curve.steps < 1) throw ArgumentError("curve needs at least one step");
  if (!curve.velocity) throw ArgumentError("curve has no velocity");
  if (!chart.contains(curve.start)) throw DomainError("curve starts outside the chart");
  for (const Vector& v : vectors) {
    if (v.size() != n) throw ArgumentError("transported vector has the wrong dimension");
  }

  State s{curve.start, vectors};
  if (curve.t_end == 0.0) return {s.x, s.v};
  const double h = curve.t_end / curve.steps;
  for (int step = 0; step < curve.steps; ++step) {
    const double t = step * h;
    const State k1 = derivative(chart, curve, t, s);
    const State k2 = derivative(chart, curve, t + 0.5 * h, axpy(s, 0.5 * h, k1));
    const State k3 = derivative(chart, curve, t + 0.5 * h, axpy(s, 0.5 * h, k2));
    const State k4 = derivative(chart, curve, t + h, axpy(s, h, k3));
    s.x += (h / 6.0) * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x);
    for (std::size_t i = 0; i < s.v.size(); ++i) {
      s.v[i] += (h / 6.0) * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
    }
  }
  if (!chart.contains(s.x)) throw DomainError("curve leaves the chart");
  return {s.x, s.v};
}

}  // namespace holosym
