#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace holosym {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense covariant tensor at a single point: `rank` indices, each in
/// [0, dim). Storage is row-major (first index slowest), so a (0,6) tensor
/// with slots (X1,X2,X3,X4;X,Y) keeps that order in memory.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int rank, int dim);

  int rank() const { return rank_; }
  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }

  template <class... I>
  double& operator()(I... idx) {
    return values_[offset(idx...)];
  }
  template <class... I>
  double operator()(I... idx) const {
    return values_[offset(idx...)];
  }

  double at(std::span<const int> idx) const;
  double& at(std::span<const int> idx);

  std::span<double> data() { return values_; }
  std::span<const double> data() const { return values_; }

  double max_abs() const;
  double frobenius() const;
  bool all_finite() const;

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  Tensor& operator*=(double s);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }

 private:
  template <class... I>
  std::size_t offset(I... idx) const {
    std::size_t off = 0;
    ((off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(idx)), ...);
    return off;
  }

  void check_same_shape(const Tensor& o) const;

  int rank_ = 0;
  int dim_ = 0;
  std::vector<double> values_;
};

/// A (1,1) tensor at a point. Column j holds the image of the j-th basis
/// vector: (A e_j) = sum_i A(i, j) e_i.
class Endomorphism {
 public:
  explicit Endomorphism(Matrix m);

  static Endomorphism zero(int dim);
  static Endomorphism identity(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Vector operator()(const Vector& v) const { return m_ * v; }

  Endomorphism& operator+=(const Endomorphism& o);
  Endomorphism& operator-=(const Endomorphism& o);
  Endomorphism& operator*=(double s);

  friend Endomorphism operator+(Endomorphism a, const Endomorphism& b) { return a += b; }
  friend Endomorphism operator-(Endomorphism a, const Endomorphism& b) { return a -= b; }
  friend Endomorphism operator*(Endomorphism a, double s) { return a *= s; }
  friend Endomorphism operator*(double s, Endomorphism a) { return a *= s; }
  // composition (a after b)
  friend Endomorphism compose(const Endomorphism& a, const Endomorphism& b) {
    return Endomorphism(a.m_ * b.m_);
  }

 private:
  Matrix m_;
};

/// Trace of t over slots a and b with the inverse metric: the result keeps the
/// remaining slots in their original order.
Tensor contract(const Tensor& t, int a, int b, const Matrix& metric_inverse);

/// (A.R)(X1,X2,X3,X4) = -R(AX1,X2,X3,X4) - R(X1,AX2,X3,X4)
///                      - R(X1,X2,AX3,X4) - R(X1,X2,X3,AX4).
Tensor endo_dot(const Endomorphism& a, const Tensor& r);

/// Same derivation evaluated directly on vectors, without building the
/// (0,4) result: O(dim^4) instead of O(dim^5).
double endo_dot(const Endomorphism& a, const Tensor& r, const Vector& x1, const Vector& x2,
                const Vector& x3, const Vector& x4);

/// Full multilinear evaluation t(args[0], ..., args[rank-1]).
double evaluate(const Tensor& t, std::span<const Vector> args);

/// Applies m to one slot: out(.., i, ..) = sum_j m(j, i) t(.., j, ..).
/// With m the components of a basis {f_i} (column i = f_i), this rewrites t in
/// that basis.
Tensor change_slot_basis(const Tensor& t, int slot, const Matrix& m);

/// Rewrites every slot of t in the basis whose vectors are the columns of m.
Tensor change_basis(const Tensor& t, const Matrix& m);

/// sqrt(t_{i1..ik} t^{i1..ik}), all slots raised with the inverse metric.
double metric_norm(const Tensor& t, const Matrix& metric_inverse);

}  // namespace holosym
