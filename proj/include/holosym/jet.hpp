#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace holosym {

/// Monomial basis of polynomials in `vars` variables of total degree at most
/// `order`, with a precomputed product table. Spaces are interned: get()
/// returns the same instance for equal (vars, order).
class JetSpace {
 public:
  struct Product {
    int lhs, rhs, out;
  };

  static std::shared_ptr<const JetSpace> get(int vars, int order);

  int vars() const { return vars_; }
  int order() const { return order_; }
  std::size_t size() const { return exponents_.size(); }

  std::span<const int> exponents(std::size_t monomial) const {
    return {exponents_[monomial].data(), exponents_[monomial].size()};
  }
  int degree(std::size_t monomial) const { return degree_[monomial]; }

  // Index of the monomial with the given exponents; -1 if degree > order.
  int index_of(std::span<const int> exps) const;

  const std::vector<Product>& products() const { return products_; }

  JetSpace(int vars, int order);

 private:
  long long key(std::span<const int> exps) const;

  int vars_;
  int order_;
  std::vector<std::vector<int>> exponents_;
  std::vector<int> degree_;
  std::vector<int> lookup_;  // dense key -> monomial index
  std::vector<Product> products_;
};

/// Truncated multivariate Taylor expansion f(p + d) = sum_a c_a d^a around a
/// point, |a| <= order. Arithmetic propagates exact derivatives up to the
/// order of the space (forward-mode differentiation).
class Jet {
 public:
  Jet() = default;
  explicit Jet(std::shared_ptr<const JetSpace> space, double constant = 0.0);

  static Jet variable(std::shared_ptr<const JetSpace> space, int var, double value);

  const std::shared_ptr<const JetSpace>& space() const { return space_; }
  double value() const { return c_[0]; }
  std::span<const double> coefficients() const { return c_; }
  std::span<double> coefficients() { return c_; }

  /// Partial derivative at the expansion point for a multi-index given as a
  /// list of variable indices (repetition allowed), e.g. {0, 0, 2}.
  double partial(std::span<const int> vars) const;

  /// d/d(var): a jet one order lower.
  Jet diff(int var) const;

  /// Drops terms above the given order.
  Jet truncate(int order) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator+=(double s);
  Jet& operator-=(double s);
  Jet& operator*=(double s);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double s) { return a += s; }
  friend Jet operator+(double s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, double s) { return a -= s; }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
  friend Jet operator/(double s, const Jet& a);
  Jet operator-() const;

  friend Jet exp(const Jet& a);
  friend Jet log(const Jet& a);
  friend Jet sqrt(const Jet& a);
  friend Jet pow(const Jet& a, double p);

 private:
  // phi(f) from the Taylor coefficients phi^(j)(f0)/j! of a scalar function.
  static Jet compose(const Jet& f, std::span<const double> taylor);
  void check_space(const Jet& o) const;

  std::shared_ptr<const JetSpace> space_;
  std::vector<double> c_;
};

}  // namespace holosym
