#include <cmath>
#include <string>

#include <doctest.h>

#include "holosym/errors.hpp"
#include "holosym/geometry.hpp"
#include "holosym/rng.hpp"

using namespace holosym;

namespace {

const char* const kKahler[] = {"flat:n=2",        "cpn:n=1,c=4",     "cpn:n=2,c=4",
                               "cpn:n=3,c=2",     "chn:n=1,c=-4",    "chn:n=2,c=-4",
                               "s2xs2:r1=1,r2=1", "s2xs2:r1=1,r2=2", "fsbump:n=2,c=4,eps=0.1"};

}  // namespace

TEST_CASE("catalog ids parse, canonicalize and reject garbage") {
  CHECK(make_chart("cpn").name() == make_chart("cpn:n=2,c=4").name());
  CHECK(make_chart("cpn:n=3,c=2").dim() == 6);
  CHECK(make_chart("s2xs2:r1=1,r2=2").dim() == 4);
  CHECK_THROWS_AS(make_chart("nosuch:n=2"), ArgumentError);
  CHECK_THROWS_AS(make_chart("cpn:n=2,q=1"), ArgumentError);
  CHECK_THROWS_AS(make_chart("cpn:n=two"), ArgumentError);
  CHECK_THROWS_AS(make_chart("cpn:n=2,c=-4"), ArgumentError);
  CHECK_THROWS_AS(make_chart("chn:n=1,c=4"), ArgumentError);
  CHECK(catalog_entries().size() >= 6);
}

TEST_CASE("points outside the chart raise DomainError") {
  const Chart ball = make_chart("chn:n=1,c=-4");
  Vector out(2);
  out << 0.9, 0.9;
  CHECK_FALSE(ball.contains(out));
  CHECK_THROWS_AS(point_frame(ball, out), DomainError);
  CHECK_THROWS_AS(ball.metric_jet(Vector::Zero(4)), ArgumentError);
}

TEST_CASE("Kaehler conditions hold on every Kaehler catalog chart") {
  for (const char* id : kKahler) {
    CAPTURE(id);
    const Chart chart = make_chart(id);
    Rng rng(21);
    for (int k = 0; k < 3; ++k) {
      const KahlerDefect d = kahler_defect(chart, chart.sample_point(rng));
      CHECK(d.asymmetry < 1e-12);
      CHECK(d.min_eigenvalue > 0.0);
      CHECK(d.j_square < 1e-12);
      CHECK(d.hermitian < 1e-12);
      CHECK(d.parallel < 1e-6);
    }
  }
}

TEST_CASE("the twisted control has a non-parallel J") {
  const Chart chart = make_chart("twisted:r1=1,r2=2");
  Rng rng(22);
  const KahlerDefect d = kahler_defect(chart, chart.sample_point(rng));
  CHECK(d.j_square < 1e-12);
  CHECK(d.hermitian < 1e-12);
  CHECK(d.parallel > 1e-3);
}

TEST_CASE("curvature symmetries, Bianchi identities and J-invariance") {
  for (const char* id : kKahler) {
    CAPTURE(id);
    const Chart chart = make_chart(id);
    Rng rng(23);
    const PointFrame f = point_frame(chart, chart.sample_point(rng));
    const Tensor& R = f.riemann;
    const Tensor& D = f.nabla_riemann;
    const int n = f.dim;
    const double s = std::max(1.0, R.max_abs());
    const double sd = std::max(1.0, D.max_abs());
    double sym = 0, bianchi = 0, second = 0, jinv = 0;
    const Tensor RJ = change_slot_basis(change_slot_basis(R, 0, f.J), 1, f.J);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            sym = std::max(sym, std::abs(R(i, j, k, l) + R(j, i, k, l)));
            sym = std::max(sym, std::abs(R(i, j, k, l) + R(i, j, l, k)));
            sym = std::max(sym, std::abs(R(i, j, k, l) - R(k, l, i, j)));
            bianchi = std::max(bianchi, std::abs(R(i, j, k, l) + R(j, k, i, l) + R(k, i, j, l)));
            jinv = std::max(jinv, std::abs(RJ(i, j, k, l) - R(i, j, k, l)));
            for (int m = 0; m < n; ++m)
              second = std::max(second, std::abs(D(i, j, k, l, m) + D(j, m, k, l, i) + D(m, i, k, l, j)));
          }
    CHECK(sym < 1e-9 * s);
    CHECK(bianchi < 1e-9 * s);
    CHECK(jinv < 1e-9 * s);
    CHECK(second < 1e-9 * sd);
  }
}

TEST_CASE("orthonormal frame") {
  const Chart chart = make_chart("fsbump:n=2,c=4,eps=0.1");
  Rng rng(24);
  const PointFrame f = point_frame(chart, chart.sample_point(rng));
  const PointFrame o = orthonormal_frame(f);
  CHECK((o.g - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((o.J * o.J + Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((o.J.transpose() * o.J - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
  // full contractions are basis independent
  CHECK(metric_norm(o.riemann, o.g_inv) == doctest::Approx(metric_norm(f.riemann, f.g_inv)).epsilon(1e-11));
  CHECK(metric_norm(o.nabla_riemann, o.g_inv) ==
        doctest::Approx(metric_norm(f.nabla_riemann, f.g_inv)).epsilon(1e-10));
}

TEST_CASE("sampling is deterministic and stays in the domain") {
  const Chart chart = make_chart("chn:n=2,c=-4");
  Rng a(99), b(99);
  for (int k = 0; k < 50; ++k) {
    const Vector p = chart.sample_point(a);
    CHECK(p == chart.sample_point(b));
    CHECK(chart.contains(p));
  }
}
