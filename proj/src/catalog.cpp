#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "holosym/errors.hpp"
#include "holosym/geometry.hpp"

namespace holosym {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string canonical_name(const std::string& id,
                           const std::vector<std::pair<std::string, double>>& params) {
  std::string s = id;
  for (std::size_t i = 0; i < params.size(); ++i) {
    s += (i == 0 ? ":" : ",");
    s += params[i].first + "=" + format_number(params[i].second);
  }
  return s;
}

// |z|^2 over the complex coordinates held in [begin, end) of the real ones.
Jet squared_norm(std::span<const Jet> x, int begin, int end) {
  Jet s(x[0].space());
  for (int i = begin; i < end; ++i) s += x[i] * x[i];
  return s;
}

bool in_unit_ball(const Vector& p) { return p.squaredNorm() < 1.0; }

}  // namespace

Chart kahler_chart(std::string name, int dim, std::vector<std::pair<std::string, double>> params,
                   PotentialFn potential, DomainFn in_domain, double sample_radius) {
  if (dim < 2 || dim % 2 != 0) throw ArgumentError("Kaehler chart needs an even dimension");
  const Matrix j0 = standard_complex_structure(dim);
  Chart::Definition def;
  def.name = std::move(name);
  def.dim = dim;
  def.params = std::move(params);
  def.in_domain = std::move(in_domain);
  def.sample_radius = sample_radius;
  def.complex_structure = [j0](const Vector&) { return j0; };
  def.metric_jet = [dim, j0, potential = std::move(potential)](const Vector& p, int order) {
    auto space = JetSpace::get(dim, order + 2);
    std::vector<Jet> x;
    x.reserve(dim);
    for (int a = 0; a < dim; ++a) x.push_back(Jet::variable(space, a, p(a)));
    const Jet k = potential(x);
    std::vector<Jet> dk;
    dk.reserve(dim);
    for (int a = 0; a < dim; ++a) dk.push_back(k.diff(a));
    std::vector<std::vector<Jet>> hess(dim, std::vector<Jet>(dim));
    for (int a = 0; a < dim; ++a)
      for (int b = a; b < dim; ++b) {
        hess[a][b] = dk[a].diff(b);
        hess[b][a] = hess[a][b];
      }
    // J is a signed permutation: J e_a = sign(a) e_perm(a)
    std::vector<int> perm(dim);
    std::vector<double> sign(dim);
    for (int a = 0; a < dim; ++a) {
      for (int c = 0; c < dim; ++c) {
        if (j0(c, a) != 0.0) {
          perm[a] = c;
          sign[a] = j0(c, a);
        }
      }
    }
    std::vector<std::vector<Jet>> g(dim, std::vector<Jet>(dim));
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        g[a][b] = 0.5 * (hess[a][b] + (sign[a] * sign[b]) * hess[perm[a]][perm[b]]);
      }
    return metric_jet_from_jets(g);
  };
  return Chart(std::move(def));
}

Chart catalog_flat(int n) {
  if (n < 1) throw ArgumentError("flat: n must be >= 1");
  return kahler_chart(
      canonical_name("flat", {{"n", n}}), 2 * n, {{"n", n}},
      [](std::span<const Jet> x) { return 0.5 * squared_norm(x, 0, static_cast<int>(x.size())); },
      {}, 1.0);
}

Chart catalog_fubini_study(int n, double c_tilde) {
  if (n < 1) throw ArgumentError("cpn: n must be >= 1");
  if (!(c_tilde > 0.0)) throw ArgumentError("cpn: c must be positive (use chn for c < 0)");
  const double a = 2.0 / c_tilde;
  return kahler_chart(
      canonical_name("cpn", {{"n", n}, {"c", c_tilde}}), 2 * n, {{"n", n}, {"c", c_tilde}},
      [a](std::span<const Jet> x) {
        return a * log(1.0 + squared_norm(x, 0, static_cast<int>(x.size())));
      },
      {}, 2.0);
}

Chart catalog_complex_hyperbolic(int n, double c_tilde) {
  if (n < 1) throw ArgumentError("chn: n must be >= 1");
  if (!(c_tilde < 0.0)) throw ArgumentError("chn: c must be negative (use cpn for c > 0)");
  const double a = 2.0 / -c_tilde;
  return kahler_chart(
      canonical_name("chn", {{"n", n}, {"c", c_tilde}}), 2 * n, {{"n", n}, {"c", c_tilde}},
      [a](std::span<const Jet> x) {
        return -a * log(1.0 - squared_norm(x, 0, static_cast<int>(x.size())));
      },
      in_unit_ball, 0.6);
}

Chart catalog_product_spheres(double r1, double r2) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw ArgumentError("s2xs2: radii must be positive");
  // Each factor is CP^1 with holomorphic sectional curvature 1/r^2.
  const double a1 = 2.0 * r1 * r1;
  const double a2 = 2.0 * r2 * r2;
  return kahler_chart(
      canonical_name("s2xs2", {{"r1", r1}, {"r2", r2}}), 4, {{"r1", r1}, {"r2", r2}},
      [a1, a2](std::span<const Jet> x) {
        return a1 * log(1.0 + squared_norm(x, 0, 2)) + a2 * log(1.0 + squared_norm(x, 2, 4));
      },
      {}, 2.0);
}

Chart catalog_fubini_study_bump(int n, double c_tilde, double eps) {
  if (n < 1) throw ArgumentError("fsbump: n must be >= 1");
  if (!(c_tilde > 0.0)) throw ArgumentError("fsbump: c must be positive");
  if (!(std::abs(eps) <= 0.25)) throw ArgumentError("fsbump: |eps| must be <= 0.25");
  const double a = 2.0 / c_tilde;
  const int dim = 2 * n;
  Vector center = Vector::Zero(dim);
  const double offsets[] = {0.4, -0.3, 0.2, 0.1};
  for (int i = 0; i < dim && i < 4; ++i) center(i) = offsets[i];
  return kahler_chart(
      canonical_name("fsbump", {{"n", n}, {"c", c_tilde}, {"eps", eps}}), dim,
      {{"n", n}, {"c", c_tilde}, {"eps", eps}},
      [a, eps, center](std::span<const Jet> x) {
        const int d = static_cast<int>(x.size());
        Jet r2(x[0].space());
        for (int i = 0; i < d; ++i) {
          const Jet dx = x[i] - center(i);
          r2 += dx * dx;
        }
        return a * log(1.0 + squared_norm(x, 0, d)) + eps * exp(-r2);
      },
      [](const Vector& p) { return p.squaredNorm() < 1.5 * 1.5; }, 0.8);
}

Chart catalog_twisted_product(double r1, double r2) {
  const Chart base = catalog_product_spheres(r1, r2);
  Chart::Definition def;
  def.name = canonical_name("twisted", {{"r1", r1}, {"r2", r2}});
  def.dim = 4;
  def.params = {{"r1", r1}, {"r2", r2}};
  def.sample_radius = 1.0;
  def.metric_jet = [base](const Vector& p, int order) { return base.metric_jet(p, order); };
  // The metric is l1 (dx1^2 + dy1^2) + l2 (dx2^2 + dy2^2); J swaps the
  // orthonormal frames of the two factors.
  def.complex_structure = [base](const Vector& p) {
    const MetricJet mj = base.metric_jet(p, 0);
    const double s = std::sqrt(mj.g(0, 0) / mj.g(2, 2));
    Matrix j = Matrix::Zero(4, 4);
    j(2, 0) = s;         // J dx1 -> dx2
    j(0, 2) = -1.0 / s;  // J dx2 -> -dx1
    j(3, 1) = s;         // J dy1 -> dy2
    j(1, 3) = -1.0 / s;  // J dy2 -> -dy1
    return j;
  };
  return Chart(std::move(def));
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"flat", "n=2", "C^n with the Euclidean metric",
       "flat; every symmetry flag holds with c = c~ = L = f = 0", true},
      {"cpn", "n=2,c=4", "CP^n, Fubini-Study metric in an affine chart, holomorphic sectional curvature c > 0",
       "constant holomorphic sectional curvature c~ = c; locally symmetric; csc only for n = 1", true},
      {"chn", "n=1,c=-4", "CH^n, Bergman ball metric, holomorphic sectional curvature c < 0",
       "constant holomorphic sectional curvature c~ = c; locally symmetric; csc only for n = 1", true},
      {"s2xs2", "r1=1,r2=1", "S^2(r1) x S^2(r2), product of stereographic charts",
       "locally symmetric and semisymmetric (L = f = 0); not chsc, not csc", true},
      {"fsbump", "n=2,c=4,eps=0.1", "Fubini-Study potential plus an off-center Gaussian bump (negative control)",
       "Kaehler, not locally symmetric, not semisymmetric", true},
      {"twisted", "r1=1,r2=2", "S^2 x S^2 metric with a factor-mixing orthogonal J (negative control)",
       "not Kaehler: J^2 = -1 and g(JX,JY) = g(X,Y) but J is not parallel", false},
  };
  return entries;
}

Chart make_chart(const std::string& id) {
  const auto colon = id.find(':');
  const std::string kind = id.substr(0, colon);
  const CatalogEntry* entry = nullptr;
  for (const auto& e : catalog_entries()) {
    if (e.id == kind) entry = &e;
  }
  if (entry == nullptr) throw ArgumentError("unknown manifold id '" + kind + "' in '" + id + "'");

  auto parse_list = [&id](const std::string& text, std::map<std::string, double>& out, bool strict) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) {
        if (strict) throw ArgumentError("empty parameter in '" + id + "'");
        continue;
      }
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
        throw ArgumentError("malformed parameter '" + item + "' in '" + id + "'");
      }
      const std::string key = item.substr(0, eq);
      const std::string val = item.substr(eq + 1);
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(val, &used);
      } catch (const std::exception&) {
        throw ArgumentError("malformed number '" + val + "' in '" + id + "'");
      }
      if (used != val.size() || !std::isfinite(v)) {
        throw ArgumentError("malformed number '" + val + "' in '" + id + "'");
      }
      out[key] = v;
    }
  };

  std::map<std::string, double> defaults;
  parse_list(entry->params, defaults, false);
  std::map<std::string, double> given;
  if (colon != std::string::npos) parse_list(id.substr(colon + 1), given, true);
  for (const auto& [key, value] : given) {
    if (!defaults.count(key)) {
      throw ArgumentError("unknown parameter '" + key + "' for manifold '" + kind + "'");
    }
    defaults[key] = value;
  }
  auto integer = [&](const std::string& key) {
    const double v = defaults.at(key);
    if (v != std::floor(v) || v < 1 || v > 4) {
      throw ArgumentError("parameter " + key + " must be an integer in [1, 4] in '" + id + "'");
    }
    return static_cast<int>(v);
  };

  if (kind == "flat") return catalog_flat(integer("n"));
  if (kind == "cpn") return catalog_fubini_study(integer("n"), defaults.at("c"));
  if (kind == "chn") return catalog_complex_hyperbolic(integer("n"), defaults.at("c"));
  if (kind == "s2xs2") return catalog_product_spheres(defaults.at("r1"), defaults.at("r2"));
  if (kind == "fsbump") return catalog_fubini_study_bump(integer("n"), defaults.at("c"), defaults.at("eps"));
  return catalog_twisted_product(defaults.at("r1"), defaults.at("r2"));
}

}  // namespace holosym
