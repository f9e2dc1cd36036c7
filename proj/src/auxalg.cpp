#include "holosym/auxalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <vector>

#include "holosym/errors.hpp"
#include "holosym/geometry.hpp"
#include "holosym/rng.hpp"

namespace holosym {

namespace {

// Union-find over index tuples where each link carries a sign:
// T(x) = sign * T(parent(x)). A cycle with odd sign forces the orbit to zero.
class SignedUnionFind {
 public:
  explicit SignedUnionFind(std::size_t n) : parent_(n), sign_(n, 1), zero_(n, false) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::pair<std::size_t, int> find(std::size_t x) {
    int s = 1;
    std::size_t r = x;
    while (parent_[r] != r) {
      s *= sign_[r];
      r = parent_[r];
    }
    // path compression
    int acc = s;
    while (parent_[x] != x) {
      const std::size_t next = parent_[x];
      const int next_sign = acc * sign_[x];
      parent_[x] = r;
      sign_[x] = acc;
      acc = next_sign;
      x = next;
    }
    return {r, s};
  }

  // T(a) = s T(b)
  void relate(std::size_t a, std::size_t b, int s) {
    auto [ra, sa] = find(a);
    auto [rb, sb] = find(b);
    const int link = sa * s * sb;
    if (ra == rb) {
      if (link < 0) zero_[ra] = true;
      return;
    }
    parent_[ra] = rb;
    sign_[ra] = link;
    zero_[rb] = zero_[rb] || zero_[ra];
  }

  bool zero(std::size_t root) const { return zero_[root]; }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> sign_;
  std::vector<bool> zero_;
};

struct Layout {
  int dim;
  int rank;
  std::size_t size;

  std::array<int, 6> decode(std::size_t t) const {
    std::array<int, 6> idx{};
    for (int k = rank - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(t % dim);
      t /= dim;
    }
    return idx;
  }
  std::size_t encode(const std::array<int, 6>& idx) const {
    std::size_t t = 0;
    for (int k = 0; k < rank; ++k) t = t * dim + idx[k];
    return t;
  }
};

// J e_i = jsign(i) e_{jperm(i)} for the standard complex structure.
int jperm(int i) { return i % 2 == 0 ? i + 1 : i - 1; }
int jsign(int i) { return i % 2 == 0 ? 1 : -1; }

using Generator = std::pair<std::array<int, 6>, int>;

std::vector<Generator> generators(const std::array<int, 6>& x, const AuxAlgOptions& o) {
  std::vector<Generator> out;
  auto swapped = [&](int a, int b) {
    auto y = x;
    std::swap(y[a], y[b]);
    return y;
  };
  auto j_twisted = [&](int a, int b) {
    auto y = x;
    y[a] = jperm(x[a]);
    y[b] = jperm(x[b]);
    return Generator{y, jsign(x[a]) * jsign(x[b])};
  };
  out.push_back({swapped(0, 1), -1});
  out.push_back({swapped(2, 3), -1});
  out.push_back({{x[2], x[3], x[0], x[1], x[4], x[5]}, 1});
  if (!o.drop_j_invariance) {
    out.push_back(j_twisted(0, 1));
    out.push_back(j_twisted(2, 3));
  }
  if (o.rank == 6) {
    out.push_back({swapped(4, 5), -1});
    out.push_back(j_twisted(4, 5));
  }
  return out;
}

}  // namespace

AuxAlgResult certify_holomorphic_determination(const AuxAlgOptions& opts) {
  if (opts.dim < 2 || opts.dim > 6 || opts.dim % 2 != 0) {
    throw ArgumentError("algebraic certificate supports even dimensions 2, 4 and 6");
  }
  if (opts.rank != 5 && opts.rank != 6) throw ArgumentError("tensor rank must be 5 or 6");

  const int d = opts.dim;
  Layout lay{d, opts.rank, 1};
  for (int k = 0; k < opts.rank; ++k) lay.size *= d;

  SignedUnionFind uf(lay.size);
  for (std::size_t t = 0; t < lay.size; ++t) {
    const auto x = lay.decode(t);
    for (const auto& [y, s] : generators(x, opts)) uf.relate(t, lay.encode(y), s);
  }

  // variable index and sign per tuple; var = -1 for tuples forced to zero
  std::vector<int> var(lay.size, -1);
  std::vector<int> sgn(lay.size, 0);
  std::map<std::size_t, int> root_var;
  for (std::size_t t = 0; t < lay.size; ++t) {
    auto [r, s] = uf.find(t);
    if (uf.zero(r)) continue;
    auto it = root_var.find(r);
    if (it == root_var.end()) it = root_var.emplace(r, static_cast<int>(root_var.size())).first;
    var[t] = it->second;
    sgn[t] = s;
  }
  const int nv = static_cast<int>(root_var.size());
  AuxAlgResult res;
  res.orbit_variables = nv;
  if (nv == 0) return res;

  // First Bianchi identity in slots 2..4, accumulated as B^T B.
  auto bianchi_row = [&](std::size_t t, std::map<int, double>& row) {
    row.clear();
    const auto x = lay.decode(t);
    const std::array<std::array<int, 6>, 3> terms = {
        x, std::array<int, 6>{x[0], x[2], x[3], x[1], x[4], x[5]},
        std::array<int, 6>{x[0], x[3], x[1], x[2], x[4], x[5]}};
    for (const auto& y : terms) {
      const std::size_t u = lay.encode(y);
      if (var[u] >= 0) row[var[u]] += sgn[u];
    }
  };
  Matrix normal = Matrix::Zero(nv, nv);
  std::map<int, double> row;
  for (std::size_t t = 0; t < lay.size; ++t) {
    bianchi_row(t, row);
    for (const auto& [i, a] : row)
      for (const auto& [j, b] : row) normal(i, j) += a * b;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(normal);
  const Vector& lambda = eig.eigenvalues();
  const double lambda_max = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  int dim_w = 0;
  while (dim_w < nv && lambda(dim_w) < 1e-9 * lambda_max) ++dim_w;
  res.dim_w = dim_w;
  if (dim_w == 0) return res;
  const Matrix w = eig.eigenvectors().leftCols(dim_w);

  for (std::size_t t = 0; t < lay.size; ++t) {
    bianchi_row(t, row);
    for (int k = 0; k < dim_w; ++k) {
      double acc = 0.0;
      for (const auto& [i, a] : row) acc += a * w(i, k);
      res.constraint_residual = std::max(res.constraint_residual, std::abs(acc));
    }
  }

  // Evaluation functionals on (u,Ju,Ju,u,v,Jv) or (u,Ju,Ju,u,v).
  const Matrix J = standard_complex_structure(d);
  const int m = 4 * dim_w;
  res.samples = m;
  Rng rng(opts.seed);
  const std::size_t tail = opts.rank == 6 ? static_cast<std::size_t>(d) * d : static_cast<std::size_t>(d);
  Matrix f = Matrix::Zero(m, nv);
  std::vector<double> head(static_cast<std::size_t>(d) * d * d * d);
  std::vector<double> last(tail);
  for (int s = 0; s < m; ++s) {
    const Vector u = rng.normal_vector(d);
    const Vector v = rng.normal_vector(d);
    const Vector ju = J * u;
    const Vector jv = J * v;
    std::size_t h = 0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) head[h++] = u(a) * ju(b) * ju(c) * u(e);
    if (opts.rank == 6) {
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) last[a * d + b] = v(a) * jv(b);
    } else {
      for (int a = 0; a < d; ++a) last[a] = v(a);
    }
    for (std::size_t t = 0; t < lay.size; ++t) {
      if (var[t] < 0) continue;
      f(s, var[t]) += sgn[t] * head[t / tail] * last[t % tail];
    }
  }
  const Matrix e = f * w;
  Eigen::BDCSVD<Matrix> svd(e, Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  res.sigma_max = sigma(0);
  res.sigma_min = sigma(sigma.size() - 1);
  res.rank_e = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > opts.rank_threshold * res.sigma_max) ++res.rank_e;
  }

  if (res.rank_e < dim_w) {
    const Vector coeff = svd.matrixV().col(dim_w - 1);
    const Vector vals = w * coeff;
    Tensor witness(opts.rank, d);
    auto data = witness.data();
    for (std::size_t t = 0; t < lay.size; ++t) data[t] = var[t] < 0 ? 0.0 : sgn[t] * vals(var[t]);
    const double scale = witness.max_abs();
    witness *= 1.0 / scale;
    res.witness = std::move(witness);
    res.witness_evaluation = (f * vals).cwiseAbs().maxCoeff() / scale;
  }
  return res;
}

}  // namespace holosym
