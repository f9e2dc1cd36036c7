#include "holosym/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "holosym/errors.hpp"

namespace holosym {

namespace {

void check_dims(const Matrix& g, const Vector& x, const Vector& y) {
  if (g.rows() != g.cols() || x.size() != g.rows() || y.size() != g.rows()) {
    throw ArgumentError("vector and metric dimensions differ");
  }
}

Vector basis(int n, int i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

// Endomorphism whose derivation produces the given kind (with its sign folded
// into the returned factor).
Endomorphism kind_endo(const PointFrame& f, SixTensor kind, const Vector& x, const Vector& y,
                       double& sign) {
  switch (kind) {
    case SixTensor::RR:
      sign = 1.0;
      return curvature_endo(f, x, y);
    case SixTensor::Tachibana:
      sign = -1.0;
      return metric_endo(f.g, x, y);
    case SixTensor::ComplexTachibana:
      sign = -1.0;
      return complex_metric_endo(f.g, f.J, x, y);
  }
  throw ArgumentError("unknown tensor kind");
}

}  // namespace

const char* to_string(SixTensor kind) {
  switch (kind) {
    case SixTensor::RR: return "RR";
    case SixTensor::Tachibana: return "Q";
    case SixTensor::ComplexTachibana: return "Qc";
  }
  return "?";
}

Endomorphism metric_endo(const Matrix& g, const Vector& x, const Vector& y) {
  check_dims(g, x, y);
  // z -> x g(y,z) - y g(x,z)
  Matrix m = x * (g * y).transpose() - y * (g * x).transpose();
  return Endomorphism(std::move(m));
}

Endomorphism complex_metric_endo(const Matrix& g, const Matrix& J, const Vector& x, const Vector& y) {
  check_dims(g, x, y);
  if (J.rows() != g.rows() || J.cols() != g.cols()) throw ArgumentError("complex structure dimension mismatch");
  const Vector jx = J * x;
  const Vector jy = J * y;
  Endomorphism e = metric_endo(g, x, y) + metric_endo(g, jx, jy);
  e -= Endomorphism(J) * (2.0 * jx.dot(g * y));
  return e;
}

Endomorphism curvature_endo(const PointFrame& f, const Vector& x, const Vector& y) {
  const int n = f.dim;
  if (x.size() != n || y.size() != n) throw ArgumentError("vector dimension mismatch");
  // lowered(c, w) = R(x, y, e_c, e_w); A(l, c) = g^{lw} lowered(c, w)
  Matrix lowered = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < n; ++b) {
      const double s = x(a) * y(b);
      if (s == 0.0) continue;
      for (int c = 0; c < n; ++c)
        for (int w = 0; w < n; ++w) lowered(c, w) += s * f.riemann(a, b, c, w);
    }
  }
  return Endomorphism(f.g_inv * lowered.transpose());
}

Tensor six_tensor_block(const PointFrame& f, SixTensor kind, int a, int b) {
  const int n = f.dim;
  double sign = 1.0;
  const Endomorphism e = kind_endo(f, kind, basis(n, a), basis(n, b), sign);
  return endo_dot(e, f.riemann) * sign;
}

void for_each_block(const PointFrame& f, SixTensor kind,
                    const std::function<void(int, int, const Tensor&)>& fn) {
  for (int a = 0; a < f.dim; ++a)
    for (int b = a + 1; b < f.dim; ++b) fn(a, b, six_tensor_block(f, kind, a, b));
}

Tensor materialize(const PointFrame& f, SixTensor kind) {
  const int n = f.dim;
  Tensor out(6, n);
  auto data = out.data();
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  for_each_block(f, kind, [&](int a, int b, const Tensor& block) {
    const auto bd = block.data();
    for (std::size_t q = 0; q < bd.size(); ++q) {
      data[q * n2 + static_cast<std::size_t>(a) * n + b] = bd[q];
      data[q * n2 + static_cast<std::size_t>(b) * n + a] = -bd[q];
    }
  });
  return out;
}

Tensor compute_rr(const PointFrame& frame) { return materialize(frame, SixTensor::RR); }

Tensor compute_tachibana(const PointFrame& frame) { return materialize(frame, SixTensor::Tachibana); }

Tensor compute_complex_tachibana(const PointFrame& frame) {
  return materialize(frame, SixTensor::ComplexTachibana);
}

double six_tensor_max_abs(const PointFrame& f, SixTensor kind) {
  double m = 0.0;
  for_each_block(f, kind, [&m](int, int, const Tensor& block) { m = std::max(m, block.max_abs()); });
  return m;
}

double six_tensor_value(const PointFrame& f, SixTensor kind, const Vector& x1, const Vector& x2,
                        const Vector& x3, const Vector& x4, const Vector& x, const Vector& y) {
  double sign = 1.0;
  const Endomorphism e = kind_endo(f, kind, x, y, sign);
  return sign * endo_dot(e, f.riemann, x1, x2, x3, x4);
}

double on_planes(const PointFrame& f, SixTensor kind, const Plane& pi, const Plane& pibar) {
  return six_tensor_value(f, kind, pi.v, pi.w, pi.w, pi.v, pibar.v, pibar.w);
}

double on_planes(const Tensor& six, const Plane& pi, const Plane& pibar) {
  if (six.rank() != 6) throw ArgumentError("expected a (0,6) tensor");
  const Vector args[] = {pi.v, pi.w, pi.w, pi.v, pibar.v, pibar.w};
  return evaluate(six, args);
}

Tensor pi_tensor(const Matrix& g, const Matrix& J) {
  const int n = static_cast<int>(g.rows());
  if (J.rows() != n || J.cols() != n) throw ArgumentError("complex structure dimension mismatch");
  const Matrix w = J.transpose() * g;  // w(a,b) = g(J e_a, e_b)
  Tensor p(4, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          p(i, j, k, l) = 0.25 * (g(j, k) * g(i, l) - g(i, k) * g(j, l) + w(j, k) * w(i, l) -
                                  w(i, k) * w(j, l) - 2.0 * w(i, j) * w(k, l));
        }
  return p;
}

Tensor compute_pi_dot_pi(const Matrix& g, const Matrix& J) {
  const int n = static_cast<int>(g.rows());
  const Tensor p = pi_tensor(g, J);
  Tensor out(6, n);
  auto data = out.data();
  const std::size_t n2 = static_cast<std::size_t>(n) * n;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const Endomorphism e = complex_metric_endo(g, J, basis(n, a), basis(n, b)) * 0.25;
      const Tensor block = endo_dot(e, p);
      const auto bd = block.data();
      for (std::size_t q = 0; q < bd.size(); ++q) {
        data[q * n2 + static_cast<std::size_t>(a) * n + b] = bd[q];
        data[q * n2 + static_cast<std::size_t>(b) * n + a] = -bd[q];
      }
    }
  return out;
}

Tensor compute_pi_dot_pi(const PointFrame& frame) { return compute_pi_dot_pi(frame.g, frame.J); }

CurvatureTensors compute_curvature_tensors(const PointFrame& frame) {
  return {frame.riemann, frame.nabla_riemann, compute_rr(frame), compute_tachibana(frame),
          compute_complex_tachibana(frame)};
}

}  // namespace holosym
