#include <cmath>
#include <set>

#include <doctest.h>

#include "holosym/classification.hpp"
#include "holosym/errors.hpp"
#include "holosym/rng.hpp"

using namespace holosym;

namespace {

constexpr Verdict H = Verdict::Holds;
constexpr Verdict F = Verdict::Fails;
constexpr Verdict U = Verdict::Undetermined;

ClassificationReport classify_random(const char* id, std::uint64_t seed, int samples = 300) {
  const Chart chart = make_chart(id);
  Rng rng(seed);
  return classify_point(chart, chart.sample_point(rng), {samples, seed});
}

}  // namespace

TEST_CASE("plane sampling is deterministic and holomorphic planes are exact") {
  const Chart chart = make_chart("fsbump:n=2,c=4,eps=0.1");
  const PointFrame f = point_frame(chart, Vector::Constant(4, 0.2));
  const auto a = sample_planes(f, 20, PlaneMode::Holomorphic, 7);
  const auto b = sample_planes(f, 20, PlaneMode::Holomorphic, 7);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].first.v == b[i].first.v);
    CHECK(a[i].second.w == b[i].second.w);
    CHECK(a[i].first.holomorphic);
    CHECK(a[i].first.w == f.J * a[i].first.v);
    CHECK(a[i].second.w == f.J * a[i].second.v);
  }
  const auto c = sample_planes(f, 20, PlaneMode::Generic, 8);
  for (const auto& [pi, pibar] : c) {
    CHECK_FALSE(pi.holomorphic);
    CHECK(pi.v.dot(f.g * pi.v) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(pi.v.dot(f.g * pi.w)) < 1e-12);
  }
  CHECK_THROWS_AS(sample_planes(f, 0, PlaneMode::Generic, 0), ArgumentError);
}

TEST_CASE("most generic plane pairs on the product of spheres are curvature-dependent") {
  const Chart chart = make_chart("s2xs2:r1=1,r2=1");
  const PointFrame f = point_frame(chart, Vector::Constant(4, 0.3));
  const Tensor q = compute_tachibana(f);
  const auto planes = sample_planes(f, 500, PlaneMode::Generic, 3);
  int dependent = 0;
  for (const auto& [pi, pibar] : planes) dependent += curvature_dependent(f.g, q, pi, pibar, 1e-8);
  CHECK(dependent > 450);
}

TEST_CASE("double sectional curvature") {
  const Chart chart = make_chart("s2xs2:r1=1,r2=2");
  const PointFrame f = point_frame(chart, Vector::Constant(4, -0.4));
  const Tensor q = compute_tachibana(f);
  const Tensor rr = compute_rr(f);
  const auto planes = sample_planes(f, 50, PlaneMode::Generic, 4);
  for (const auto& [pi, pibar] : planes) {
    if (!curvature_dependent(f.g, q, pi, pibar, 1e-8)) continue;
    CHECK(std::abs(double_sectional_curvature(f.g, rr, q, pi, pibar)) < 1e-8);
    // invariant under an orientation-preserving change of basis of either plane
    const Plane pi2{pi.v + 2.0 * pi.w, -pi.v + pi.w, false};
    const Plane pibar2{3.0 * pibar.v, pibar.v + pibar.w, false};
    const Plane flipped{pibar.w, pibar.v, false};
    CHECK(normalized_plane_value(f.g, q, pi, flipped) ==
          doctest::Approx(-normalized_plane_value(f.g, q, pi, pibar)).epsilon(1e-12));
    CHECK(normalized_plane_value(f.g, q, pi2, pibar2) ==
          doctest::Approx(normalized_plane_value(f.g, q, pi, pibar)).epsilon(1e-10));
  }
  // a plane pair with Q = 0: pi = pibar
  const Plane& p = planes[0].first;
  CHECK_THROWS_AS(double_sectional_curvature(f.g, rr, q, p, p), NotCurvatureDependentError);
  const Plane degenerate{p.v, p.v, false};
  CHECK_THROWS_AS(normalized_plane_value(f.g, q, degenerate, p), ArgumentError);
}

TEST_CASE("flat space") {
  const ClassificationReport r = classify_random("flat:n=2", 1);
  const auto& f = r.flags;
  CHECK(f.flat == H);
  CHECK(f.csc == H);
  CHECK(f.chsc == H);
  CHECK(f.locally_symmetric == H);
  CHECK(f.semisymmetric == H);
  CHECK(f.deszcz_pseudosymmetric == H);
  CHECK(f.holomorphically_pseudosymmetric == H);
  CHECK(*r.fitted.c == 0.0);
  CHECK(*r.fitted.c_tilde == 0.0);
  CHECK_FALSE(r.in_U);
}

TEST_CASE("complex projective plane") {
  const ClassificationReport r = classify_random("cpn:n=2,c=4", 2);
  const auto& f = r.flags;
  CHECK(f.flat == F);
  CHECK(f.csc == F);
  CHECK(f.chsc == H);
  CHECK(f.locally_symmetric == H);
  CHECK(f.semisymmetric == H);
  CHECK(f.deszcz_pseudosymmetric == H);
  CHECK(f.holomorphically_pseudosymmetric == H);
  CHECK(*r.fitted.c_tilde == doctest::Approx(4.0).epsilon(1e-9));
  CHECK_FALSE(r.fitted.c.has_value());
  CHECK(r.in_U);
  CHECK(*r.fitted.L == 0.0);
  CHECK_FALSE(r.fitted.f.has_value());  // Qc = 0: f is not determined
}

TEST_CASE("complex hyperbolic line: constant curvature in real dimension 2") {
  const ClassificationReport r = classify_random("chn:n=1,c=-4", 3);
  CHECK(r.flags.csc == H);
  CHECK(r.flags.chsc == H);
  CHECK(*r.fitted.c == doctest::Approx(-4.0).epsilon(1e-9));
  CHECK(*r.fitted.c_tilde == doctest::Approx(-4.0).epsilon(1e-9));
  // pseudosymmetry needs 2-planes beyond the tangent plane itself
  CHECK(r.flags.deszcz_pseudosymmetric == U);
  CHECK(r.flags.holomorphically_pseudosymmetric == U);
}

TEST_CASE("complex projective 3-space fits c = 2") {
  const ClassificationReport r = classify_random("cpn:n=3,c=2", 4, 100);
  CHECK(r.flags.chsc == H);
  CHECK(*r.fitted.c_tilde == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("product of spheres: locally symmetric, not CHSC") {
  for (const char* id : {"s2xs2:r1=1,r2=1", "s2xs2:r1=1,r2=2"}) {
    CAPTURE(id);
    const ClassificationReport r = classify_random(id, 5);
    const auto& f = r.flags;
    CHECK(f.flat == F);
    CHECK(f.csc == F);
    CHECK(f.chsc == F);
    CHECK(f.locally_symmetric == H);
    CHECK(f.semisymmetric == H);
    CHECK(f.deszcz_pseudosymmetric == H);
    CHECK(f.holomorphically_pseudosymmetric == H);
    CHECK(*r.fitted.L == 0.0);
    CHECK(*r.fitted.f == 0.0);
  }
}

TEST_CASE("perturbed Fubini-Study potential fails everything") {
  const ClassificationReport r = classify_random("fsbump:n=2,c=4,eps=0.1", 6);
  const auto& f = r.flags;
  CHECK(f.flat == F);
  CHECK(f.csc == F);
  CHECK(f.chsc == F);
  CHECK(f.locally_symmetric == F);
  CHECK(f.semisymmetric == F);
  CHECK(f.deszcz_pseudosymmetric == F);
  CHECK(f.holomorphically_pseudosymmetric == F);
  CHECK(r.samples_used > 0);
}

TEST_CASE("reports are deterministic given the seed") {
  const ClassificationReport a = classify_random("fsbump:n=2,c=4,eps=0.1", 9);
  const ClassificationReport b = classify_random("fsbump:n=2,c=4,eps=0.1", 9);
  CHECK(a.residuals.deszcz_pseudosymmetric == b.residuals.deszcz_pseudosymmetric);
  CHECK(a.residuals.holomorphically_pseudosymmetric == b.residuals.holomorphically_pseudosymmetric);
  CHECK(a.samples_used == b.samples_used);
}

TEST_CASE("implication chain on every emitted report") {
  const char* ids[] = {"flat:n=2",        "cpn:n=2,c=4",     "chn:n=1,c=-4",          "chn:n=2,c=-4",
                       "s2xs2:r1=1,r2=1", "s2xs2:r1=1,r2=2", "fsbump:n=2,c=4,eps=0.1", "twisted:r1=1,r2=2"};
  for (const char* id : ids)
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      CAPTURE(id);
      CHECK(implications_respected(classify_random(id, seed, 100).flags));
    }
  ClassificationReport::Flags bad;
  bad.locally_symmetric = H;
  bad.semisymmetric = F;
  CHECK_FALSE(implications_respected(bad));
}

TEST_CASE("classification argument checks") {
  const Chart chart = make_chart("cpn:n=2,c=4");
  CHECK_THROWS_AS(classify_point(chart, Vector::Zero(4), {0, 0}), ArgumentError);
  CHECK_THROWS_AS(classify_point(chart, Vector::Zero(4), {10, 0}, 0.0), ArgumentError);
  CHECK_THROWS_AS(classify_point(make_chart("chn:n=1,c=-4"), Vector::Constant(2, 0.9), {10, 0}), DomainError);
  CHECK(std::set<std::string>{to_string(H), to_string(F), to_string(U)} ==
        std::set<std::string>{"holds", "fails", "undetermined"});
}
