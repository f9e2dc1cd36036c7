#include "holosym/jet.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "holosym/errors.hpp"

namespace holosym {

namespace {

void enumerate(int vars, int remaining, int var, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (var == vars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[var] = e;
    enumerate(vars, remaining - e, var + 1, cur, out);
  }
  cur[var] = 0;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

JetSpace::JetSpace(int vars, int order) : vars_(vars), order_(order) {
  if (vars < 1 || order < 0) throw ArgumentError("invalid jet space");
  std::vector<std::vector<int>> all;
  std::vector<int> cur(vars, 0);
  enumerate(vars, order, 0, cur, all);
  // graded ordering: constant term first, then by degree
  for (int d = 0; d <= order; ++d) {
    for (const auto& e : all) {
      int s = 0;
      for (int x : e) s += x;
      if (s == d) {
        exponents_.push_back(e);
        degree_.push_back(d);
      }
    }
  }
  long long span = 1;
  for (int i = 0; i < vars; ++i) span *= (order + 1);
  lookup_.assign(static_cast<std::size_t>(span), -1);
  for (std::size_t m = 0; m < exponents_.size(); ++m) {
    lookup_[static_cast<std::size_t>(key(exponents_[m]))] = static_cast<int>(m);
  }
  std::vector<int> sum(vars);
  for (std::size_t a = 0; a < exponents_.size(); ++a) {
    for (std::size_t b = 0; b < exponents_.size(); ++b) {
      if (degree_[a] + degree_[b] > order) continue;
      for (int i = 0; i < vars; ++i) sum[i] = exponents_[a][i] + exponents_[b][i];
      products_.push_back({static_cast<int>(a), static_cast<int>(b), index_of(sum)});
    }
  }
}

long long JetSpace::key(std::span<const int> exps) const {
  long long k = 0;
  for (int e : exps) k = k * (order_ + 1) + e;
  return k;
}

int JetSpace::index_of(std::span<const int> exps) const {
  int deg = 0;
  for (int e : exps) {
    if (e < 0) return -1;
    deg += e;
  }
  if (deg > order_) return -1;
  return lookup_[static_cast<std::size_t>(key(exps))];
}

std::shared_ptr<const JetSpace> JetSpace::get(int vars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const JetSpace>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{vars, order}];
  if (!slot) slot = std::make_shared<const JetSpace>(vars, order);
  return slot;
}

Jet::Jet(std::shared_ptr<const JetSpace> space, double constant)
    : space_(std::move(space)), c_(space_->size(), 0.0) {
  c_[0] = constant;
}

Jet Jet::variable(std::shared_ptr<const JetSpace> space, int var, double value) {
  Jet j(space, value);
  if (var < 0 || var >= space->vars()) throw ArgumentError("jet variable out of range");
  if (space->order() >= 1) {
    std::vector<int> e(space->vars(), 0);
    e[var] = 1;
    j.c_[space->index_of(e)] = 1.0;
  }
  return j;
}

double Jet::partial(std::span<const int> vars) const {
  std::vector<int> e(space_->vars(), 0);
  for (int v : vars) {
    if (v < 0 || v >= space_->vars()) throw ArgumentError("jet variable out of range");
    ++e[v];
  }
  const int m = space_->index_of(e);
  if (m < 0) throw ArgumentError("derivative order exceeds jet order");
  double f = 1.0;
  for (int x : e) f *= factorial(x);
  return c_[m] * f;
}

Jet Jet::diff(int var) const {
  if (space_->order() < 1) throw ArgumentError("cannot differentiate an order-0 jet");
  auto lower = JetSpace::get(space_->vars(), space_->order() - 1);
  Jet out(lower);
  std::vector<int> e(space_->vars());
  for (std::size_t m = 0; m < space_->size(); ++m) {
    const auto ex = space_->exponents(m);
    if (ex[var] == 0) continue;
    e.assign(ex.begin(), ex.end());
    --e[var];
    const int target = lower->index_of(e);
    if (target >= 0) out.c_[target] += ex[var] * c_[m];
  }
  return out;
}

Jet Jet::truncate(int order) const {
  if (order >= space_->order()) return *this;
  auto lower = JetSpace::get(space_->vars(), order);
  Jet out(lower);
  for (std::size_t m = 0; m < lower->size(); ++m) out.c_[m] = c_[m];  // graded ordering
  return out;
}

void Jet::check_space(const Jet& o) const {
  if (space_ != o.space_) throw ArgumentError("jets live in different spaces");
}

Jet& Jet::operator+=(const Jet& o) {
  check_space(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_space(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

Jet& Jet::operator+=(double s) {
  c_[0] += s;
  return *this;
}

Jet& Jet::operator-=(double s) {
  c_[0] -= s;
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Jet Jet::operator-() const {
  Jet out = *this;
  for (double& v : out.c_) v = -v;
  return out;
}

Jet operator*(const Jet& a, const Jet& b) {
  a.check_space(b);
  Jet out(a.space_);
  const double* x = a.c_.data();
  const double* y = b.c_.data();
  double* z = out.c_.data();
  for (const auto& p : a.space_->products()) z[p.out] += x[p.lhs] * y[p.rhs];
  return out;
}

Jet Jet::compose(const Jet& f, std::span<const double> taylor) {
  Jet h = f;
  h.c_[0] = 0.0;
  // Horner in the nilpotent part; h^(order+1) vanishes.
  const int k = std::min<int>(f.space_->order(), static_cast<int>(taylor.size()) - 1);
  Jet out(f.space_, taylor[k]);
  for (int j = k - 1; j >= 0; --j) {
    out = out * h;
    out.c_[0] += taylor[j];
  }
  return out;
}

Jet operator/(double s, const Jet& a) {
  const double f0 = a.value();
  if (f0 == 0.0) throw NumericError("jet division by zero");
  const int k = a.space_->order();
  std::vector<double> t(k + 1);
  double p = 1.0 / f0;
  for (int j = 0; j <= k; ++j) {
    t[j] = s * ((j % 2 == 0) ? p : -p);
    p /= f0;
  }
  return Jet::compose(a, t);
}

Jet operator/(const Jet& a, const Jet& b) { return a * (1.0 / b); }

Jet exp(const Jet& a) {
  const int k = a.space_->order();
  std::vector<double> t(k + 1);
  const double e = std::exp(a.value());
  double fact = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) fact *= j;
    t[j] = e / fact;
  }
  return Jet::compose(a, t);
}

Jet log(const Jet& a) {
  const double f0 = a.value();
  if (!(f0 > 0.0)) throw NumericError("jet log of non-positive value");
  const int k = a.space_->order();
  std::vector<double> t(k + 1);
  t[0] = std::log(f0);
  double p = 1.0;
  for (int j = 1; j <= k; ++j) {
    p /= f0;
    t[j] = ((j % 2 == 1) ? 1.0 : -1.0) * p / j;
  }
  return Jet::compose(a, t);
}

Jet pow(const Jet& a, double exponent) {
  const double f0 = a.value();
  if (!(f0 > 0.0)) throw NumericError("jet pow of non-positive value");
  const int k = a.space_->order();
  std::vector<double> t(k + 1);
  double binom = 1.0;
  for (int j = 0; j <= k; ++j) {
    if (j > 0) binom *= (exponent - (j - 1)) / j;
    t[j] = binom * std::pow(f0, exponent - j);
  }
  return Jet::compose(a, t);
}

Jet sqrt(const Jet& a) { return pow(a, 0.5); }

}  // namespace holosym
