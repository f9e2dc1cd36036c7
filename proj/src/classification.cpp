#include "holosym/classification.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "holosym/errors.hpp"
#include "holosym/rng.hpp"

namespace holosym {

namespace {

constexpr double kDenominatorFloor = 1e-6;
constexpr int kMinWellConditioned = 10;

// Gram-Schmidt against g; returns false when the pair is numerically dependent.
bool orthonormalize(const Matrix& g, Vector& v, Vector& w) {
  const double vv = v.dot(g * v);
  if (!(vv > 0.0)) return false;
  v /= std::sqrt(vv);
  w -= v.dot(g * w) * v;
  const double ww = w.dot(g * w);
  if (!(ww > 1e-24)) return false;
  w /= std::sqrt(ww);
  return true;
}

Plane generic_plane(const Matrix& g, Rng& rng) {
  const int n = static_cast<int>(g.rows());
  for (;;) {
    Vector v = rng.normal_vector(n);
    Vector w = rng.normal_vector(n);
    if (orthonormalize(g, v, w)) return {v, w, false};
  }
}

Plane holomorphic_plane(const Matrix& g, const Matrix& J, Rng& rng) {
  const int n = static_cast<int>(g.rows());
  for (;;) {
    Vector u = rng.normal_vector(n);
    const double uu = u.dot(g * u);
    if (uu > 1e-24) return Plane::holomorphic_plane(J, u / std::sqrt(uu));
  }
}

// max |A - coef B| over all components, block by block.
double max_abs_difference(const PointFrame& f, SixTensor a, SixTensor b, double coef) {
  double m = 0.0;
  for (int i = 0; i < f.dim; ++i)
    for (int j = i + 1; j < f.dim; ++j) {
      Tensor d = six_tensor_block(f, a, i, j);
      if (coef != 0.0) d -= six_tensor_block(f, b, i, j) * coef;
      m = std::max(m, d.max_abs());
    }
  return m;
}

double max_abs_difference(const Tensor& a, const Tensor& b, double coef) {
  auto da = a.data();
  auto db = b.data();
  double m = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - coef * db[i]));
  return m;
}

double fit_pattern(const Tensor& r, const Tensor& pattern) {
  auto dr = r.data();
  auto dp = pattern.data();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < dr.size(); ++i) {
    num += dr[i] * dp[i];
    den += dp[i] * dp[i];
  }
  return den > 0.0 ? num / den : 0.0;
}

Tensor constant_curvature_pattern(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  Tensor p(4, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) p(i, j, k, l) = g(j, k) * g(i, l) - g(i, k) * g(j, l);
  return p;
}

// Evaluates one of the (0,6) tensors on plane pairs, materialized at small
// dimension and lazily above it.
class SixEvaluator {
 public:
  explicit SixEvaluator(const PointFrame& f) : f_(f), materialized_(f.dim <= kMaterializeMaxDim) {
    if (materialized_) {
      rr_ = compute_rr(f);
      q_ = compute_tachibana(f);
      qc_ = compute_complex_tachibana(f);
    }
  }

  bool materialized() const { return materialized_; }
  const Tensor& tensor(SixTensor k) const {
    return k == SixTensor::RR ? rr_ : (k == SixTensor::Tachibana ? q_ : qc_);
  }

  double operator()(SixTensor k, const Plane& pi, const Plane& pibar) const {
    return materialized_ ? on_planes(tensor(k), pi, pibar) : on_planes(f_, k, pi, pibar);
  }

  double max_abs(SixTensor k) const {
    return materialized_ ? tensor(k).max_abs() : six_tensor_max_abs(f_, k);
  }

  double max_abs_difference(SixTensor a, SixTensor b, double coef) const {
    return materialized_ ? holosym::max_abs_difference(tensor(a), tensor(b), coef)
                         : holosym::max_abs_difference(f_, a, b, coef);
  }

 private:
  const PointFrame& f_;
  bool materialized_;
  Tensor rr_, q_, qc_;
};

struct RatioFit {
  Verdict verdict = Verdict::Undetermined;
  std::optional<double> value;
  double residual = 0.0;
  int used = 0;
};

// R.R = value * D, with D the Tachibana or complex Tachibana tensor. The
// planes are orthonormal, so plane values need no Gram normalization.
RatioFit fit_ratio(const SixEvaluator& eval, SixTensor denominator, const std::vector<PlanePair>& planes,
                   double s, double tol) {
  RatioFit fit;
  std::vector<double> ratios;
  std::vector<std::pair<double, double>> values;
  values.reserve(planes.size());
  for (const auto& [pi, pibar] : planes) {
    const double num = eval(SixTensor::RR, pi, pibar);
    const double den = eval(denominator, pi, pibar);
    values.emplace_back(num, den);
    if (std::abs(den) >= kDenominatorFloor * s) ratios.push_back(num / den);
  }
  fit.used = static_cast<int>(ratios.size());
  if (fit.used < kMinWellConditioned) return fit;
  const auto mid = ratios.begin() + ratios.size() / 2;
  std::nth_element(ratios.begin(), mid, ratios.end());
  double median = *mid;
  if (ratios.size() % 2 == 0) median = 0.5 * (median + *std::max_element(ratios.begin(), mid));

  double sample_res = 0.0;
  for (const auto& [num, den] : values) sample_res = std::max(sample_res, std::abs(num - median * den));
  const double global_res = eval.max_abs_difference(SixTensor::RR, denominator, median);
  fit.residual = std::max(sample_res, global_res) / (s * s);
  fit.verdict = fit.residual < tol ? Verdict::Holds : Verdict::Fails;
  if (fit.verdict == Verdict::Holds) fit.value = median;
  return fit;
}

bool holds(Verdict v) { return v == Verdict::Holds; }

void force_holds(Verdict& v) { v = Verdict::Holds; }

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

std::vector<PlanePair> sample_planes(const PointFrame& frame, int count, PlaneMode mode, std::uint64_t seed) {
  if (count < 1) throw ArgumentError("plane sample count must be at least 1");
  Rng rng(seed);
  std::vector<PlanePair> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    if (mode == PlaneMode::Holomorphic) {
      Plane pi = holomorphic_plane(frame.g, frame.J, rng);
      Plane pibar = holomorphic_plane(frame.g, frame.J, rng);
      out.emplace_back(std::move(pi), std::move(pibar));
    } else {
      Plane pi = generic_plane(frame.g, rng);
      Plane pibar = generic_plane(frame.g, rng);
      out.emplace_back(std::move(pi), std::move(pibar));
    }
  }
  return out;
}

double normalized_plane_value(const Matrix& g, const Tensor& six, const Plane& pi, const Plane& pibar) {
  check_plane(g, pi);
  check_plane(g, pibar);
  return on_planes(six, pi, pibar) / (pi.gram(g) * std::sqrt(pibar.gram(g)));
}

bool curvature_dependent(const Matrix& g, const Tensor& q, const Plane& pi, const Plane& pibar, double tol) {
  return std::abs(normalized_plane_value(g, q, pi, pibar)) > tol;
}

double double_sectional_curvature(const Matrix& g, const Tensor& rr, const Tensor& q, const Plane& pi,
                                  const Plane& pibar, double tol) {
  const double den = normalized_plane_value(g, q, pi, pibar);
  if (!(std::abs(den) > tol)) throw NotCurvatureDependentError("plane pair is not curvature-dependent");
  return normalized_plane_value(g, rr, pi, pibar) / den;
}

bool implications_respected(const ClassificationReport::Flags& f) {
  auto implies = [](Verdict a, Verdict b) { return !(a == Verdict::Holds && b == Verdict::Fails); };
  return implies(f.flat, f.csc) && implies(f.flat, f.chsc) && implies(f.csc, f.locally_symmetric) &&
         implies(f.chsc, f.locally_symmetric) && implies(f.locally_symmetric, f.semisymmetric) &&
         implies(f.semisymmetric, f.deszcz_pseudosymmetric) &&
         implies(f.deszcz_pseudosymmetric, f.holomorphically_pseudosymmetric);
}

ClassificationReport classify_point(const Chart& chart, const Vector& p, const PlaneSampler& sampler,
                                    double tol) {
  return classify_frame(point_frame(chart, p), chart.name(), sampler, tol);
}

ClassificationReport classify_frame(const PointFrame& chart_frame, const std::string& manifold,
                                    const PlaneSampler& sampler, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("tolerance must be positive");
  if (sampler.count < 1) throw ArgumentError("plane sample count must be at least 1");

  ClassificationReport rep;
  rep.manifold = manifold;
  rep.point = chart_frame.point;
  rep.tolerance = tol;
  rep.seed = sampler.seed;
  rep.samples = sampler.count;

  const PointFrame f = orthonormal_frame(chart_frame);
  const bool low_dim = f.dim < 4;
  const double s = f.riemann.max_abs();
  rep.curvature_scale = s;
  auto& flags = rep.flags;
  auto& res = rep.residuals;

  res.flat = s;
  if (s < tol) {
    flags.flat = flags.csc = flags.chsc = flags.locally_symmetric = flags.semisymmetric = Verdict::Holds;
    rep.fitted.c = 0.0;
    rep.fitted.c_tilde = 0.0;
    if (!low_dim) {
      flags.deszcz_pseudosymmetric = flags.holomorphically_pseudosymmetric = Verdict::Holds;
      rep.fitted.L = 0.0;
      rep.fitted.f = 0.0;
    }
    return rep;
  }
  flags.flat = Verdict::Fails;

  const SixEvaluator eval(f);
  const double q_max = eval.max_abs(SixTensor::Tachibana);
  const double qc_max = eval.max_abs(SixTensor::ComplexTachibana);
  const double rr_max = eval.max_abs(SixTensor::RR);
  const double nabla_max = f.nabla_riemann.max_abs();

  res.csc = q_max / s;
  res.chsc = qc_max / s;
  res.locally_symmetric = nabla_max / std::pow(s, 1.5);
  res.semisymmetric = rr_max / (s * s);
  rep.in_U = res.csc >= tol;

  flags.csc = rep.in_U ? Verdict::Fails : Verdict::Holds;
  flags.chsc = res.chsc < tol ? Verdict::Holds : Verdict::Fails;
  flags.locally_symmetric = res.locally_symmetric < tol ? Verdict::Holds : Verdict::Fails;
  flags.semisymmetric = res.semisymmetric < tol ? Verdict::Holds : Verdict::Fails;

  if (holds(flags.csc)) rep.fitted.c = fit_pattern(f.riemann, constant_curvature_pattern(f.g));
  if (holds(flags.chsc)) rep.fitted.c_tilde = fit_pattern(f.riemann, pi_tensor(f.g, f.J));

  // The hierarchy is a theorem; borderline numerics must not contradict it.
  if (holds(flags.csc) || holds(flags.chsc)) force_holds(flags.locally_symmetric);
  if (holds(flags.locally_symmetric)) force_holds(flags.semisymmetric);

  if (low_dim) return rep;

  const bool qc_mass = !holds(flags.chsc);
  if (holds(flags.semisymmetric)) {
    flags.deszcz_pseudosymmetric = flags.holomorphically_pseudosymmetric = Verdict::Holds;
    res.deszcz_pseudosymmetric = res.holomorphically_pseudosymmetric = res.semisymmetric;
    if (rep.in_U) rep.fitted.L = 0.0;
    if (qc_mass) rep.fitted.f = 0.0;
    return rep;
  }

  if (!rep.in_U) {
    flags.deszcz_pseudosymmetric = Verdict::Holds;
  } else {
    const auto planes = sample_planes(f, sampler.count, PlaneMode::Generic, Rng::derive(sampler.seed, 1));
    const RatioFit fit = fit_ratio(eval, SixTensor::Tachibana, planes, s, tol);
    flags.deszcz_pseudosymmetric = fit.verdict;
    rep.fitted.L = fit.value;
    res.deszcz_pseudosymmetric = fit.residual;
    rep.samples_used += fit.used;
  }

  if (!qc_mass) {
    flags.holomorphically_pseudosymmetric = Verdict::Holds;
  } else {
    const auto planes =
        sample_planes(f, sampler.count, PlaneMode::Holomorphic, Rng::derive(sampler.seed, 2));
    const RatioFit fit = fit_ratio(eval, SixTensor::ComplexTachibana, planes, s, tol);
    flags.holomorphically_pseudosymmetric = fit.verdict;
    rep.fitted.f = fit.value;
    res.holomorphically_pseudosymmetric = fit.residual;
    rep.samples_used += fit.used;
  }
  if (holds(flags.deszcz_pseudosymmetric)) force_holds(flags.holomorphically_pseudosymmetric);
  return rep;
}

}  // namespace holosym
