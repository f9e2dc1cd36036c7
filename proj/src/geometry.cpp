#include "holosym/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "holosym/errors.hpp"

namespace holosym {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

using JetMatrix = std::vector<std::vector<Jet>>;

JetMatrix jets_from_metric(const MetricJet& mj, int order) {
  const int n = static_cast<int>(mj.g.rows());
  auto space = JetSpace::get(n, order);
  JetMatrix out(n, std::vector<Jet>(n, Jet(space)));
  std::vector<int> vars;
  for (std::size_t m = 0; m < space->size(); ++m) {
    const auto e = space->exponents(m);
    vars.clear();
    double alpha_fact = 1.0;
    for (int v = 0; v < n; ++v) {
      for (int r = 0; r < e[v]; ++r) vars.push_back(v);
      alpha_fact *= factorial(e[v]);
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        double d = 0.0;
        switch (vars.size()) {
          case 0: d = mj.g(a, b); break;
          case 1: d = mj.dg(a, b, vars[0]); break;
          case 2: d = mj.ddg(a, b, vars[0], vars[1]); break;
          case 3: d = mj.dddg(a, b, vars[0], vars[1], vars[2]); break;
          default: break;
        }
        out[a][b].coefficients()[m] = d / alpha_fact;
      }
  }
  return out;
}

Matrix checked_inverse(const Matrix& g) {
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    if (!std::isfinite(g.data()[i])) throw NumericError("metric has non-finite entries");
  }
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) throw NumericError("metric is not positive definite");
  Matrix inv = llt.solve(Matrix::Identity(g.rows(), g.cols()));
  return 0.5 * (inv + inv.transpose());
}

// Inverse of a matrix of jets: (g0 + N)^{-1} = sum_k (-g0^{-1} N)^k g0^{-1},
// which terminates because N has no constant term.
JetMatrix inverse_jets(const JetMatrix& g, const Matrix& g0_inv) {
  const int n = static_cast<int>(g.size());
  auto space = g[0][0].space();
  const int order = space->order();
  JetMatrix m(n, std::vector<Jet>(n, Jet(space)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet acc(space);
      for (int c = 0; c < n; ++c) {
        Jet nc = g[c][b];
        nc.coefficients()[0] = 0.0;
        acc -= g0_inv(a, c) * nc;
      }
      m[a][b] = acc;
    }
  // s = I + m (I + m (I + ...))
  JetMatrix s(n, std::vector<Jet>(n, Jet(space)));
  for (int a = 0; a < n; ++a) s[a][a] = Jet(space, 1.0);
  for (int k = 0; k < order; ++k) {
    JetMatrix next(n, std::vector<Jet>(n, Jet(space)));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        Jet acc(space, a == b ? 1.0 : 0.0);
        for (int c = 0; c < n; ++c) acc += m[a][c] * s[c][b];
        next[a][b] = std::move(acc);
      }
    s = std::move(next);
  }
  JetMatrix inv(n, std::vector<Jet>(n, Jet(space)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Jet acc(space);
      for (int c = 0; c < n; ++c) acc += g0_inv(c, b) * s[a][c];
      inv[a][b] = std::move(acc);
    }
  return inv;
}

// Gamma^k_ij as jets one order below the metric jets.
std::vector<Jet> christoffel_jets(const JetMatrix& g, const JetMatrix& g_inv) {
  const int n = static_cast<int>(g.size());
  const int order = g[0][0].space()->order();
  // dg[a][b][c] = d_c g_ab
  std::vector<Jet> dg(static_cast<std::size_t>(n) * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) dg[(a * n + b) * n + c] = g[a][b].diff(c);
  auto lower = dg[0].space();
  std::vector<Jet> gamma(static_cast<std::size_t>(n) * n * n, Jet(lower));
  std::vector<Jet> first_kind(static_cast<std::size_t>(n) * n * n, Jet(lower));
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        first_kind[(l * n + i) * n + j] =
            0.5 * (dg[(l * n + j) * n + i] + dg[(l * n + i) * n + j] - dg[(i * n + j) * n + l]);
      }
  for (int k = 0; k < n; ++k) {
    std::vector<Jet> inv_row;
    inv_row.reserve(n);
    for (int l = 0; l < n; ++l) inv_row.push_back(g_inv[k][l].truncate(order - 1));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        Jet acc(lower);
        for (int l = 0; l < n; ++l) acc += inv_row[l] * first_kind[(l * n + i) * n + j];
        gamma[(k * n + i) * n + j] = acc;
        gamma[(k * n + j) * n + i] = acc;
      }
  }
  return gamma;
}

}  // namespace

MetricJet metric_jet_from_jets(const std::vector<std::vector<Jet>>& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) throw ArgumentError("empty metric");
  const int order = std::min(3, g[0][0].space()->order());
  MetricJet mj;
  mj.order = order;
  mj.g = Matrix(n, n);
  if (order >= 1) mj.dg = Tensor(3, n);
  if (order >= 2) mj.ddg = Tensor(4, n);
  if (order >= 3) mj.dddg = Tensor(5, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Jet& j = g[a][b];
      mj.g(a, b) = j.value();
      for (int c = 0; c < n && order >= 1; ++c) {
        const int i1[] = {c};
        mj.dg(a, b, c) = j.partial(i1);
        for (int d = 0; d < n && order >= 2; ++d) {
          const int i2[] = {c, d};
          mj.ddg(a, b, c, d) = j.partial(i2);
          for (int e = 0; e < n && order >= 3; ++e) {
            const int i3[] = {c, d, e};
            mj.dddg(a, b, c, d, e) = j.partial(i3);
          }
        }
      }
    }
  return mj;
}

Chart::Chart(Definition def) : def_(std::move(def)) {
  if (def_.dim < 2 || def_.dim % 2 != 0) throw ArgumentError("chart dimension must be even and >= 2");
  if (!def_.metric_jet) throw ArgumentError("chart needs a metric jet function");
  if (!def_.complex_structure) throw ArgumentError("chart needs a complex structure function");
  if (!(def_.sample_radius > 0.0)) throw ArgumentError("sample radius must be positive");
}

bool Chart::contains(const Vector& p) const {
  if (p.size() != def_.dim) return false;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p(i))) return false;
  }
  return !def_.in_domain || def_.in_domain(p);
}

void Chart::check_point(const Vector& p) const {
  if (p.size() != def_.dim) {
    throw ArgumentError("point has " + std::to_string(p.size()) + " coordinates, chart " + def_.name +
                        " needs " + std::to_string(def_.dim));
  }
  if (!contains(p)) throw DomainError("point outside the domain of chart " + def_.name);
}

MetricJet Chart::metric_jet(const Vector& p, int order) const {
  check_point(p);
  return def_.metric_jet(p, std::clamp(order, 0, 3));
}

Matrix Chart::complex_structure(const Vector& p) const {
  check_point(p);
  return def_.complex_structure(p);
}

Vector Chart::sample_point(Rng& rng) const { return rng.in_ball(def_.dim, def_.sample_radius); }

Matrix standard_complex_structure(int dim) {
  if (dim < 2 || dim % 2 != 0) throw ArgumentError("complex structure needs an even dimension");
  Matrix j = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim / 2; ++k) {
    j(2 * k + 1, 2 * k) = 1.0;
    j(2 * k, 2 * k + 1) = -1.0;
  }
  return j;
}

PointFrame point_frame(const Chart& chart, const Vector& p) {
  MetricJet mj = chart.metric_jet(p, 3);
  return point_frame(mj, chart.complex_structure(p), p);
}

PointFrame point_frame(const MetricJet& mj, const Matrix& J, const Vector& p) {
  if (mj.order < 3) throw ArgumentError("point frame needs metric derivatives to order 3");
  const int n = static_cast<int>(mj.g.rows());
  if (J.rows() != n || J.cols() != n) throw ArgumentError("complex structure dimension mismatch");

  PointFrame f;
  f.point = p;
  f.dim = n;
  f.g = 0.5 * (mj.g + mj.g.transpose());
  f.g_inv = checked_inverse(f.g);
  f.J = J;

  const JetMatrix g3 = jets_from_metric(mj, 3);
  const JetMatrix ginv3 = inverse_jets(g3, f.g_inv);
  const std::vector<Jet> gamma2 = christoffel_jets(g3, ginv3);

  auto idx3 = [n](int k, int i, int j) { return (static_cast<std::size_t>(k) * n + i) * n + j; };

  f.christoffel = Tensor(3, n);
  f.d_christoffel = Tensor(4, n);
  f.dd_christoffel = Tensor(5, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Jet& gm = gamma2[idx3(k, i, j)];
        f.christoffel(k, i, j) = gm.value();
        for (int m = 0; m < n; ++m) {
          const int a1[] = {m};
          f.d_christoffel(k, i, j, m) = gm.partial(a1);
          for (int q = 0; q < n; ++q) {
            const int a2[] = {m, q};
            f.dd_christoffel(k, i, j, m, q) = gm.partial(a2);
          }
        }
      }

  // Riemann tensor as first-order jets, so its partials come for free.
  auto s1 = JetSpace::get(n, 1);
  std::vector<Jet> gamma1(gamma2.size());
  std::vector<Jet> dgamma(gamma2.size() * n);  // [(k,i,j), m] = d_m Gamma^k_ij as order-1 jet
  for (std::size_t q = 0; q < gamma2.size(); ++q) {
    gamma1[q] = gamma2[q].truncate(1);
    for (int m = 0; m < n; ++m) dgamma[q * n + m] = gamma2[q].diff(m);
  }
  // rm[(l,k,i,j)] = Rm^l_kij with R(d_i,d_j)d_k = Rm^l_kij d_l
  std::vector<Jet> rm(static_cast<std::size_t>(n) * n * n * n, Jet(s1));
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          Jet acc = dgamma[idx3(l, j, k) * n + i] - dgamma[idx3(l, i, k) * n + j];
          for (int m = 0; m < n; ++m) {
            acc += gamma1[idx3(l, i, m)] * gamma1[idx3(m, j, k)] -
                   gamma1[idx3(l, j, m)] * gamma1[idx3(m, i, k)];
          }
          rm[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j] = std::move(acc);
        }

  f.riemann = Tensor(4, n);
  Tensor dr(5, n);  // dr(i,j,k,w,m) = d_m R_ijkw
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int w = 0; w < n; ++w) {
          Jet acc(s1);
          for (int l = 0; l < n; ++l) {
            acc += g3[w][l].truncate(1) * rm[((static_cast<std::size_t>(l) * n + k) * n + i) * n + j];
          }
          f.riemann(i, j, k, w) = acc.value();
          for (int m = 0; m < n; ++m) {
            const int a1[] = {m};
            dr(i, j, k, w, m) = acc.partial(a1);
          }
        }

  const Tensor& r = f.riemann;
  const Tensor& gm = f.christoffel;
  f.nabla_riemann = Tensor(5, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int w = 0; w < n; ++w)
          for (int m = 0; m < n; ++m) {
            double v = dr(i, j, k, w, m);
            for (int q = 0; q < n; ++q) {
              v -= gm(q, m, i) * r(q, j, k, w) + gm(q, m, j) * r(i, q, k, w) +
                   gm(q, m, k) * r(i, j, q, w) + gm(q, m, w) * r(i, j, k, q);
            }
            f.nabla_riemann(i, j, k, w, m) = v;
          }
  if (!f.riemann.all_finite() || !f.nabla_riemann.all_finite()) {
    throw NumericError("non-finite curvature at point");
  }
  return f;
}

PointFrame orthonormal_frame(const PointFrame& frame) {
  Eigen::LLT<Matrix> llt(frame.g_inv);
  if (llt.info() != Eigen::Success) throw NumericError("inverse metric is not positive definite");
  const Matrix e = llt.matrixL();  // columns are g-orthonormal
  PointFrame out;
  out.point = frame.point;
  out.dim = frame.dim;
  out.g = Matrix::Identity(frame.dim, frame.dim);
  out.g_inv = out.g;
  out.J = e.triangularView<Eigen::Lower>().solve(frame.J * e);
  out.riemann = change_basis(frame.riemann, e);
  out.nabla_riemann = change_basis(frame.nabla_riemann, e);
  return out;
}

Tensor christoffel_at(const Chart& chart, const Vector& p) {
  const MetricJet mj = chart.metric_jet(p, 1);
  const int n = chart.dim();
  const Matrix g_inv = checked_inverse(0.5 * (mj.g + mj.g.transpose()));
  Tensor gamma(3, n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) {
          acc += g_inv(k, l) * (mj.dg(l, j, i) + mj.dg(l, i, j) - mj.dg(i, j, l));
        }
        gamma(k, i, j) = 0.5 * acc;
        gamma(k, j, i) = 0.5 * acc;
      }
  return gamma;
}

KahlerDefect kahler_defect(const Chart& chart, const Vector& p) {
  const int n = chart.dim();
  KahlerDefect d;
  const MetricJet mj = chart.metric_jet(p, 1);
  const Matrix& g = mj.g;
  const Matrix J = chart.complex_structure(p);
  d.asymmetry = (g - g.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.transpose()));
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.j_square = (J * J + Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
  d.hermitian = (J.transpose() * g * J - g).cwiseAbs().maxCoeff();

  const Tensor gamma = christoffel_at(chart, p);
  const double h = 1e-6;
  for (int m = 0; m < n; ++m) {
    Vector pp = p, pm = p;
    pp(m) += h;
    pm(m) -= h;
    const Matrix dj = (chart.complex_structure(pp) - chart.complex_structure(pm)) / (2.0 * h);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = dj(i, j);
        for (int s = 0; s < n; ++s) v += gamma(i, m, s) * J(s, j) - gamma(s, m, j) * J(i, s);
        d.parallel = std::max(d.parallel, std::abs(v));
      }
  }
  return d;
}

}  // namespace holosym
