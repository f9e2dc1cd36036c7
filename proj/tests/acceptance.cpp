// Acceptance checks: one line per criterion, exit status 1 if any fails.
// Tolerances are pinned here on purpose; they are not read from the suites.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "holosym/auxalg.hpp"
#include "holosym/classification.hpp"
#include "holosym/errors.hpp"
#include "holosym/rng.hpp"
#include "holosym/symmetry.hpp"
#include "holosym/verification.hpp"

using namespace holosym;

namespace {

using Clock = std::chrono::steady_clock;

const std::vector<std::string> kKahler = {"flat:n=2",        "cpn:n=2,c=4",     "cpn:n=3,c=2",
                                          "chn:n=1,c=-4",    "chn:n=2,c=-4",    "s2xs2:r1=1,r2=1",
                                          "s2xs2:r1=1,r2=2", "fsbump:n=2,c=4,eps=0.1"};
const std::vector<std::string> kLocallySymmetric = {"flat:n=2",     "cpn:n=2,c=4",     "cpn:n=3,c=2",
                                                    "chn:n=1,c=-4", "chn:n=2,c=-4",    "s2xs2:r1=1,r2=1",
                                                    "s2xs2:r1=1,r2=2"};
const std::vector<std::string> kSemisymmetricInU = {"cpn:n=2,c=4", "cpn:n=3,c=2", "chn:n=2,c=-4", "s2xs2:r1=1,r2=1",
                                                    "s2xs2:r1=1,r2=2"};

struct Outcome {
  bool pass = true;
  std::string detail;
};

char buf[512];

template <class... A>
std::string format(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<PointFrame> frames(const Chart& chart, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<PointFrame> out;
  for (int i = 0; i < count; ++i) out.push_back(point_frame(chart, chart.sample_point(rng)));
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }
bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

CaseConfig config(int points, int samples, std::uint64_t seed, Expectation e = Expectation::Auto) {
  CaseConfig c;
  c.points = points;
  c.samples = samples;
  c.seed = seed;
  c.expect = e;
  return c;
}

// 1: fitted holomorphic sectional curvature and Qc on the complex space forms
Outcome chsc_reproduction() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst_c = 0.0, worst_qc = 0.0;
  struct Case {
    const char* id;
    double c;
  };
  for (const Case& k : {Case{"cpn:n=2,c=4", 4.0}, Case{"chn:n=1,c=-4", -4.0}}) {
    const Chart chart = make_chart(k.id);
    for (const PointFrame& f : frames(chart, 20, 101)) {
      const ClassificationReport r = classify_frame(f, chart.name(), {100, 1});
      const double c = r.fitted.c_tilde.value_or(std::numeric_limits<double>::quiet_NaN());
      const double err = std::abs(c - k.c);
      worst_c = std::max(worst_c, std::isnan(err) ? std::numeric_limits<double>::infinity() : err);
      const PointFrame on = orthonormal_frame(f);
      const double r2 = std::pow(on.riemann.max_abs(), 2);
      const double qc = six_tensor_max_abs(on, SixTensor::ComplexTachibana);
      worst_qc = std::max(worst_qc, qc / r2);
      if (!(err <= 1e-7) || !(qc < 1e-8 * r2)) o.pass = false;
    }
  }
  const double t = seconds_since(t0);
  if (!(t < 10.0)) o.pass = false;
  o.detail = format("max|c~ - c| = %.2e (< 1e-7), max|Qc|/max|R|^2 = %.2e (< 1e-8), %.2f s (< 10 s)", worst_c,
                    worst_qc, t);
  return o;
}

// 2: the four CHSC characterizations agree everywhere
Outcome chsc_agreement() {
  Outcome o;
  int points = 0, disagreements = 0, chsc_points = 0;
  std::vector<std::string> ids = kKahler;
  ids.push_back("twisted:r1=1,r2=2");  // not Kaehler; the verdicts still have to agree
  for (const std::string& id : ids) {
    const SuiteResult r = verify_chsc_equivalences(make_chart(id), config(20, 200, 2));
    const bool product = starts_with(id, "s2xs2");
    for (const CaseRecord& c : r.details) {
      ++points;
      if (c.residual != 0.0) ++disagreements;
      if (contains(c.label, "=HHHH")) ++chsc_points;
      // the product of spheres must come out as a unanimous failure
      if (product && !contains(c.label, "=FFFF")) o.pass = false;
    }
  }
  if (disagreements != 0 || points != 20 * static_cast<int>(ids.size())) o.pass = false;
  o.detail = format("%d points on %d charts, %d disagreements, %d unanimous CHSC", points,
                    static_cast<int>(ids.size()), disagreements, chsc_points);
  return o;
}

// 3: product of spheres is locally symmetric and semisymmetric but not CHSC
Outcome semisymmetric_test_bed() {
  Outcome o;
  double nabla = 0.0, rr = 0.0, qc_min = std::numeric_limits<double>::infinity();
  for (const char* id : {"s2xs2:r1=1,r2=1", "s2xs2:r1=1,r2=2"}) {
    for (const PointFrame& f : frames(make_chart(id), 10, 103)) {
      const double r2 = std::pow(f.riemann.max_abs(), 2);
      nabla = std::max(nabla, f.nabla_riemann.max_abs());
      rr = std::max(rr, six_tensor_max_abs(f, SixTensor::RR) / r2);
      qc_min = std::min(qc_min, six_tensor_max_abs(f, SixTensor::ComplexTachibana));
    }
  }
  o.pass = nabla < 1e-8 && rr < 1e-8 && qc_min > 1e-3;
  o.detail = format("max|nabla R| = %.2e (< 1e-8), max|RR|/max|R|^2 = %.2e (< 1e-8), min max|Qc| = %.3f (> 1e-3)",
                    nabla, rr, qc_min);
  return o;
}

// 4: Qc against Q on generic and holomorphic plane pairs
Outcome tachibana_identities() {
  Outcome o;
  double split_err = 0.0, hol_first_err = 0.0;
  int pairs = 0;
  for (const std::string& id : kKahler) {
    const Chart chart = make_chart(id);
    if (chart.dim() < 4) continue;
    const PointFrame f = frames(chart, 1, 104).front();
    const Tensor q = compute_tachibana(f);
    const Tensor qc = compute_complex_tachibana(f);
    const auto generic = sample_planes(f, 1000, PlaneMode::Generic, 41);
    const auto holo = sample_planes(f, 1000, PlaneMode::Holomorphic, 42);
    for (int k = 0; k < 1000; ++k) {
      const auto& [pi, pibar] = generic[k];
      const Plane jpibar{f.J * pibar.v, f.J * pibar.w, false};
      split_err = std::max(split_err, std::abs(on_planes(qc, pi, pibar) - on_planes(q, pi, pibar) - on_planes(q, pi, jpibar)));
      const Plane& h = holo[k].first;
      hol_first_err = std::max(hol_first_err, std::abs(on_planes(qc, h, pibar) - 2.0 * on_planes(q, h, pibar)));
      ++pairs;
    }
  }
  o.pass = split_err < 1e-9 && hol_first_err < 1e-9;
  o.detail = format("%d plane pairs, max|Qc - Q - Q(.;J.)| = %.2e, max|Qc(h) - 2Q(h)| = %.2e (< 1e-9)", pairs, split_err,
                    hol_first_err);
  return o;
}

// 5: Pi.Pi on catalog frames and random Hermitian pairs, absolute entries
Outcome pi_dot_pi() {
  Outcome o;
  double worst = 0.0;
  int count = 0;
  std::vector<std::string> ids = kKahler;
  ids.push_back("twisted:r1=1,r2=2");
  for (const std::string& id : ids) {
    const Chart chart = make_chart(id);
    for (const PointFrame& f : frames(chart, 5, 105)) {
      worst = std::max(worst, compute_pi_dot_pi(f.g, f.J).max_abs());
      ++count;
    }
  }
  Rng rng(1005);
  for (int dim : {4, 6})
    for (int i = 0; i < 25; ++i) {
      const HermitianPair h = random_hermitian_pair(dim, rng);
      worst = std::max(worst, compute_pi_dot_pi(h.g, h.J).max_abs());
      ++count;
    }
  o.pass = worst < 1e-12;
  o.detail = format("%d frames (50 random Hermitian), max entry %.2e (< 1e-12)", count, worst);
  return o;
}

// 6: J-symmetries of R and R.R, and the non-Kaehler control
Outcome j_symmetries() {
  Outcome o;
  double worst = 0.0;
  for (const std::string& id : kKahler) {
    const SuiteResult r = verify_j_symmetries(make_chart(id), config(1, 1000, 6));
    worst = std::max(worst, r.max_residual);
  }
  const SuiteResult control = verify_j_symmetries(make_chart("twisted:r1=1,r2=2"), config(1, 1000, 6));
  o.pass = worst < 1e-9 && !control.pass;
  o.detail = format("max residual %.2e over 1000 tuples per chart (< 1e-9); twisted control %s (residual %.2e)",
                    worst, control.pass ? "passed (wrong)" : "fails", control.max_residual);
  return o;
}

// 7: holomorphic plane values determine the (0,6) and (0,5) tensors
Outcome rank_certification() {
  Outcome o;
  std::string parts;
  double t6 = 0.0;
  for (int dim : {4, 6})
    for (int rank : {6, 5}) {
      const auto t0 = Clock::now();
      AuxAlgOptions opts;
      opts.dim = dim;
      opts.rank = rank;
      const AuxAlgResult full = certify_holomorphic_determination(opts);
      opts.drop_j_invariance = true;
      const AuxAlgResult relaxed = certify_holomorphic_determination(opts);
      const double t = seconds_since(t0);
      if (dim == 6) t6 = std::max(t6, t);
      const bool ok = full.certified() && relaxed.rank_e < relaxed.dim_w && relaxed.witness.has_value();
      if (!ok) o.pass = false;
      parts += format("%sdim %d (0,%d): rank %d/%d, relaxed %d/%d", parts.empty() ? "" : "; ", dim, rank,
                      full.rank_e, full.dim_w, relaxed.rank_e, relaxed.dim_w);
    }
  if (!(t6 < 60.0)) o.pass = false;
  o.detail = parts + format("; dim 6 %.1f s (< 60 s)", t6);
  return o;
}

// 8: first-order rotation coefficient and quadratic remainder
Outcome rotation_interpretation() {
  Outcome o;
  double alpha = 0.0, slope_dev = 0.0, one_sided_dev = 0.0;
  int slopes = 0, round_off = 0;
  for (const char* id : {"s2xs2:r1=1,r2=1", "s2xs2:r1=1,r2=2"}) {
    const SuiteResult r = verify_rotation_interpretation(make_chart(id), config(5, 1, 8));
    for (const CaseRecord& c : r.details) {
      if (contains(c.label, "alpha-Qc")) alpha = std::max(alpha, std::abs(c.value));
      if (contains(c.label, "one-sided remainder slope")) {
        one_sided_dev = std::max(one_sided_dev, std::abs(c.value - 2.0));
      } else if (contains(c.label, "remainder slope")) {
        slope_dev = std::max(slope_dev, std::abs(c.value - 2.0));
        ++slopes;
      }
      if (contains(c.label, "below round-off")) ++round_off;
    }
  }
  o.pass = alpha < 1e-6 && slope_dev <= 0.1 && slopes == 10 && round_off == 0;
  o.detail = format("max|alpha - Qc| = %.2e (< 1e-6), max|slope - 2| = %.3f (<= 0.1) over %d fits of the even "
                    "remainder (one-sided remainder: %.3f, not tested)",
                    alpha, slope_dev, slopes, one_sided_dev);
  return o;
}

// 9: transported holomorphic sectional curvature versus nabla R
Outcome transport_drift() {
  Outcome o;
  double sym_drift = 0.0;
  for (const std::string& id : kLocallySymmetric) {
    CaseConfig c = config(3, 200, 9);
    c.curves = 10;
    const SuiteResult r = verify_locsym_charac(make_chart(id), c);
    for (const CaseRecord& rec : r.details) {
      if (starts_with(rec.label, "curve")) sym_drift = std::max(sym_drift, rec.value);
      if (starts_with(rec.label, "verdicts") && !contains(rec.label, "=HHH")) o.pass = false;
    }
  }
  CaseConfig c = config(3, 200, 9);
  c.curves = 10;
  const SuiteResult bump = verify_locsym_charac(make_chart("fsbump:n=2,c=4,eps=0.1"), c);
  double bump_drift = 0.0, witness = 0.0;
  bool detectors_agree = false;
  for (const CaseRecord& rec : bump.details) {
    if (starts_with(rec.label, "curve")) bump_drift = std::max(bump_drift, rec.value);
    if (contains(rec.label, "(U,JU,JU,U)")) witness = std::max(witness, rec.value);
    if (starts_with(rec.label, "verdicts")) detectors_agree = contains(rec.label, "=FFF");
  }
  o.pass = o.pass && sym_drift < 1e-7 && bump_drift > 1e-4 && witness > 1e-4 && detectors_agree;
  o.detail = format("locally symmetric charts: max drift %.2e (< 1e-7); perturbed: max drift %.2e (> 1e-4), "
                    "max|(nabla R)(U,JU,JU,U)| = %.2e, detectors %s",
                    sym_drift, bump_drift, witness, detectors_agree ? "agree" : "disagree");
  return o;
}

// 10: double sectional curvatures and the implication chain
Outcome double_sectional() {
  Outcome o;
  double l_max = 0.0;
  int defined = 0;
  for (const std::string& id : kSemisymmetricInU) {
    for (const PointFrame& f : frames(make_chart(id), 3, 110)) {
      const Tensor q = compute_tachibana(f);
      const Tensor rr = compute_rr(f);
      for (const auto& [pi, pibar] : sample_planes(f, 300, PlaneMode::Generic, 7)) {
        try {
          l_max = std::max(l_max, std::abs(double_sectional_curvature(f.g, rr, q, pi, pibar)));
          ++defined;
        } catch (const NotCurvatureDependentError&) {
        }
      }
    }
  }
  const bool l_ok = l_max < 1e-8 && defined > 0;

  int reports = 0;
  bool chain = true;
  std::vector<std::string> ids = kKahler;
  ids.push_back("twisted:r1=1,r2=2");
  for (const std::string& id : ids) {
    const Chart chart = make_chart(id);
    for (const PointFrame& f : frames(chart, 5, 210)) {
      chain = chain && implications_respected(classify_frame(f, chart.name(), {200, 3}).flags);
      ++reports;
    }
  }

  // holomorphic pairs: Q-denominator values are twice the Qc-denominator ones
  double ratio_dev = 0.0;
  int both = 0;
  for (const char* id : {"fsbump:n=2,c=4,eps=0.1", "s2xs2:r1=1,r2=2", "cpn:n=3,c=2"}) {
    for (const PointFrame& f : frames(make_chart(id), 3, 310)) {
      const Tensor q = compute_tachibana(f);
      const Tensor qc = compute_complex_tachibana(f);
      const Tensor rr = compute_rr(f);
      for (const auto& [pi, pibar] : sample_planes(f, 300, PlaneMode::Holomorphic, 9)) {
        double lq = 0.0, lqc = 0.0;
        try {
          lq = double_sectional_curvature(f.g, rr, q, pi, pibar);
          lqc = double_sectional_curvature(f.g, rr, qc, pi, pibar);
        } catch (const NotCurvatureDependentError&) {
          continue;
        }
        ratio_dev = std::max(ratio_dev, std::abs(lq - 2.0 * lqc) / std::max(1.0, std::abs(lq)));
        ++both;
      }
    }
  }
  const bool ratio_ok = ratio_dev < 1e-9 && both > 0;
  o.pass = l_ok && chain && ratio_ok;
  o.detail = format("%d defined L on semisymmetric charts, max|L| = %.2e (< 1e-8); implications %s on %d reports; "
                    "%d holomorphic pairs, max|L_Q - 2 L_Qc|/max(1,|L_Q|) = %.2e (< 1e-9)",
                    defined, l_max, chain ? "respected" : "VIOLATED", reports, both, ratio_dev);
  return o;
}

// 11: two CLI runs give identical JSON
Outcome reproducibility() {
  Outcome o;
  auto run = [](std::string& out) {
    const std::string cmd = std::string("\"") + HOLOSYM_CLI_PATH + "\" verify --suite all --seed 1 --format json";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return -1;
    char chunk[4096];
    std::size_t n;
    while ((n = std::fread(chunk, 1, sizeof chunk, p)) > 0) out.append(chunk, n);
    return pclose(p);
  };
  std::string a, b;
  const int sa = run(a);
  const int sb = run(b);
  o.pass = sa == 0 && sb == 0 && !a.empty() && a == b;
  o.detail = format("two runs of 'verify --suite all --seed 1 --format json': %zu and %zu bytes, %s, exit %d/%d",
                    a.size(), b.size(), a == b ? "identical" : "DIFFERENT", sa, sb);
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"CHSC reproduction", chsc_reproduction},
      {"CHSC four-way agreement", chsc_agreement},
      {"semisymmetric test bed", semisymmetric_test_bed},
      {"Tachibana identities", tachibana_identities},
      {"Pi.Pi = 0", pi_dot_pi},
      {"J-symmetries", j_symmetries},
      {"rank certification", rank_certification},
      {"rotation interpretation", rotation_interpretation},
      {"transport drift", transport_drift},
      {"double sectional curvatures", double_sectional},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %2zu %s  %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
