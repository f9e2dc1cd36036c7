#include "holosym/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "holosym/errors.hpp"

namespace holosym {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

Tensor::Tensor(int rank, int dim) : rank_(rank), dim_(dim) {
  if (rank < 0) throw ArgumentError("tensor rank must be non-negative");
  if (dim < 1) throw ArgumentError("tensor dimension must be positive");
  values_.assign(ipow(dim, rank), 0.0);
}

double Tensor::at(std::span<const int> idx) const {
  return const_cast<Tensor*>(this)->at(idx);
}

double& Tensor::at(std::span<const int> idx) {
  if (static_cast<int>(idx.size()) != rank_) throw ArgumentError("index count does not match rank");
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= dim_) throw ArgumentError("tensor index out of range");
    off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
  }
  return values_[off];
}

double Tensor::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double Tensor::frobenius() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

bool Tensor::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

void Tensor::check_same_shape(const Tensor& o) const {
  if (rank_ != o.rank_ || dim_ != o.dim_) throw ArgumentError("tensor shapes differ");
}

Tensor& Tensor::operator+=(const Tensor& o) {
  check_same_shape(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  check_same_shape(o);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Tensor& Tensor::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Endomorphism::Endomorphism(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() < 1) throw ArgumentError("endomorphism must be square");
}

Endomorphism Endomorphism::zero(int dim) { return Endomorphism(Matrix::Zero(dim, dim)); }

Endomorphism Endomorphism::identity(int dim) { return Endomorphism(Matrix::Identity(dim, dim)); }

Endomorphism& Endomorphism::operator+=(const Endomorphism& o) {
  if (o.dim() != dim()) throw ArgumentError("endomorphism dimensions differ");
  m_ += o.m_;
  return *this;
}

Endomorphism& Endomorphism::operator-=(const Endomorphism& o) {
  if (o.dim() != dim()) throw ArgumentError("endomorphism dimensions differ");
  m_ -= o.m_;
  return *this;
}

Endomorphism& Endomorphism::operator*=(double s) {
  m_ *= s;
  return *this;
}

Tensor contract(const Tensor& t, int a, int b, const Matrix& metric_inverse) {
  const int rank = t.rank();
  const int n = t.dim();
  if (rank < 2) throw ArgumentError("contract needs a tensor of rank >= 2");
  if (a == b || a < 0 || b < 0 || a >= rank || b >= rank) {
    throw ArgumentError("invalid contraction slots " + std::to_string(a) + ", " + std::to_string(b));
  }
  if (metric_inverse.rows() != n || metric_inverse.cols() != n) {
    throw ArgumentError("metric dimension does not match tensor");
  }
  Tensor out(rank - 2, n);
  std::vector<int> full(rank);
  std::vector<int> rest(rank - 2);
  const std::size_t total = out.size();
  for (std::size_t off = 0; off < total; ++off) {
    std::size_t r = off;
    for (int s = rank - 3; s >= 0; --s) {
      rest[s] = static_cast<int>(r % n);
      r /= n;
    }
    for (int s = 0, k = 0; s < rank; ++s) {
      if (s != a && s != b) full[s] = rest[k++];
    }
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      full[a] = i;
      for (int j = 0; j < n; ++j) {
        const double h = metric_inverse(i, j);
        if (h == 0.0) continue;
        full[b] = j;
        acc += h * t.at(full);
      }
    }
    out.data()[off] = acc;
  }
  return out;
}

Tensor endo_dot(const Endomorphism& a, const Tensor& r) {
  if (r.rank() != 4) throw ArgumentError("endo_dot expects a (0,4) tensor");
  const int n = r.dim();
  if (a.dim() != n) throw ArgumentError("endomorphism and tensor dimensions differ");
  const Matrix& m = a.matrix();
  Tensor out(4, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double acc = 0.0;
          for (int p = 0; p < n; ++p) {
            acc += m(p, i) * r(p, j, k, l) + m(p, j) * r(i, p, k, l) + m(p, k) * r(i, j, p, l) +
                   m(p, l) * r(i, j, k, p);
          }
          out(i, j, k, l) = -acc;
        }
  return out;
}

namespace {

double eval4(const Tensor& r, const Vector& x1, const Vector& x2, const Vector& x3,
             const Vector& x4) {
  const int n = r.dim();
  const double* d = r.data().data();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (x1(i) == 0.0) continue;
    double si = 0.0;
    for (int j = 0; j < n; ++j) {
      if (x2(j) == 0.0) continue;
      double sj = 0.0;
      for (int k = 0; k < n; ++k) {
        if (x3(k) == 0.0) continue;
        const double* row = d + ((static_cast<std::size_t>(i) * n + j) * n + k) * n;
        double sk = 0.0;
        for (int l = 0; l < n; ++l) sk += row[l] * x4(l);
        sj += sk * x3(k);
      }
      si += sj * x2(j);
    }
    acc += si * x1(i);
  }
  return acc;
}

}  // namespace

double endo_dot(const Endomorphism& a, const Tensor& r, const Vector& x1, const Vector& x2,
                const Vector& x3, const Vector& x4) {
  if (r.rank() != 4) throw ArgumentError("endo_dot expects a (0,4) tensor");
  if (a.dim() != r.dim()) throw ArgumentError("endomorphism and tensor dimensions differ");
  return -(eval4(r, a(x1), x2, x3, x4) + eval4(r, x1, a(x2), x3, x4) +
           eval4(r, x1, x2, a(x3), x4) + eval4(r, x1, x2, x3, a(x4)));
}

double evaluate(const Tensor& t, std::span<const Vector> args) {
  const int rank = t.rank();
  const int n = t.dim();
  if (static_cast<int>(args.size()) != rank) throw ArgumentError("argument count does not match rank");
  for (const Vector& v : args) {
    if (v.size() != n) throw ArgumentError("argument dimension does not match tensor");
  }
  if (rank == 4) return eval4(t, args[0], args[1], args[2], args[3]);
  // Contract the last slot repeatedly.
  std::vector<double> cur(t.data().begin(), t.data().end());
  for (int s = rank - 1; s >= 0; --s) {
    const Vector& v = args[s];
    std::vector<double> next(cur.size() / n, 0.0);
    for (std::size_t o = 0; o < next.size(); ++o) {
      const double* row = cur.data() + o * n;
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += row[i] * v(i);
      next[o] = acc;
    }
    cur.swap(next);
  }
  return cur[0];
}

Tensor change_slot_basis(const Tensor& t, int slot, const Matrix& m) {
  const int rank = t.rank();
  const int n = t.dim();
  if (slot < 0 || slot >= rank) throw ArgumentError("invalid slot");
  if (m.rows() != n || m.cols() != n) throw ArgumentError("basis matrix dimension mismatch");
  Tensor out(rank, n);
  std::size_t stride = 1;
  for (int s = rank - 1; s > slot; --s) stride *= n;
  const std::size_t block = stride * n;
  const auto in = t.data();
  auto res = out.data();
  for (std::size_t base = 0; base < in.size(); base += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += m(j, i) * in[base + j * stride + inner];
        res[base + i * stride + inner] = acc;
      }
    }
  }
  return out;
}

Tensor change_basis(const Tensor& t, const Matrix& m) {
  Tensor out = t;
  for (int s = 0; s < t.rank(); ++s) out = change_slot_basis(out, s, m);
  return out;
}

double metric_norm(const Tensor& t, const Matrix& metric_inverse) {
  // Rewrite in a g-orthonormal basis: columns of L^{-T} where g^{-1} = E E^T.
  Eigen::LLT<Matrix> llt(metric_inverse);
  if (llt.info() != Eigen::Success) throw NumericError("inverse metric is not positive definite");
  const Matrix e = llt.matrixL();
  return change_basis(t, e).frobenius();
}

}  // namespace holosym
