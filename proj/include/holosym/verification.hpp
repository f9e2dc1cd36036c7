#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holosym/geometry.hpp"
#include "holosym/rng.hpp"

namespace holosym {

struct CaseRecord {
  std::string label;
  double value = 0.0;     // the measured quantity
  double residual = 0.0;  // what is compared against the suite tolerance
};

struct SuiteResult {
  std::string suite_id;
  int cases_run = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;  // max_residual < tolerance
  std::vector<CaseRecord> details;

  void add(std::string label, double value, double residual);
  /// Appends another result's cases, prefixing their labels.
  void absorb(const SuiteResult& other, const std::string& prefix);
};

/// What a chart-level suite is told about the chart. Auto compares the
/// equivalent conditions of a characterization with each other. Holds/Fails
/// additionally claim the property, so a chart that contradicts the claim
/// fails the suite; this is how negative controls are expressed.
enum class Expectation { Auto, Holds, Fails };

struct CaseConfig {
  int points = 5;
  int samples = 200;
  int curves = 10;  // parallel-transport curves per chart (locsym)
  std::uint64_t seed = 0;
  std::optional<double> tol;  // suite default when empty
  double verdict_tol = 1e-8;  // threshold for "vanishes" verdicts, relative
  Expectation expect = Expectation::Auto;
};

/// Orthonormal {X, JX, Y} samples of R(X,JX,X,Y); vanishing must match the
/// constant holomorphic sectional curvature verdict (max |Qc|).
SuiteResult verify_ogiue(const Chart& chart, const CaseConfig& cfg);

/// R.R(JX1,JX2,...) = R.R(..,JX3,JX4;..) = R.R(..;JX,JY) = R.R and
/// R(JX,JY) = R(X,Y), R(X,Y)J = J R(X,Y) on random arguments.
SuiteResult verify_j_symmetries(const Chart& chart, const CaseConfig& cfg);

/// Rank certificate for (0,6) (rank 6) or (0,5) (rank 5) tensors at the
/// given dimension, plus the relaxed negative control without J-invariance.
SuiteResult verify_prop_auxalg(int dim, int rank, std::uint64_t seed);

/// Four verdicts: constant holomorphic sectional curvature, Qc = 0,
/// Qc(u,Ju,Ju,u;x,Jx) = 0 and Q(u,Ju,Ju,u;x,Jx) = 0.
SuiteResult verify_chsc_equivalences(const Chart& chart, const CaseConfig& cfg);

/// Two-stage finite rotation of pi's projections onto pibar and J pibar;
/// D(eps) = K(rotated) - K(pi) must have first-order coefficient Qc(pi;pibar)
/// and an eps^2 remainder.
SuiteResult verify_rotation_interpretation(const Chart& chart, const CaseConfig& cfg);

/// max |nabla R| against sampled (nabla_X R)(U,JU,JU,U) and against the
/// drift of holomorphic sectional curvature under parallel transport.
SuiteResult verify_locsym_charac(const Chart& chart, const CaseConfig& cfg);

/// Four semisymmetry verdicts from full and plane-restricted R.R.
SuiteResult verify_semisym_charac(const Chart& chart, const CaseConfig& cfg);

/// Qc = Q(pi;pibar) + Q(pi;J pibar), Qc = 2Q when one plane is holomorphic,
/// holomorphic double sectional curvatures against the fitted f, and the
/// one-plane to two-plane independence implication.
SuiteResult verify_holps_charac(const Chart& chart, const CaseConfig& cfg);

/// Pi.Pi = 0 on catalog frames and random Hermitian (g, J).
SuiteResult verify_pi_dot_pi(const Chart& chart, const CaseConfig& cfg);
/// Random Hermitian pair: g = A^-T A^-1, J = A J0 A^-1 with A = U S V^T, U and
/// V Haar-orthogonal and singular values in [0.7, 1.4], so g has eigenvalues of
/// order one (Pi.Pi is cubic in g; the bound on its entries is absolute).
struct HermitianPair {
  Matrix g;
  Matrix J;
};
HermitianPair random_hermitian_pair(int dim, Rng& rng);

SuiteResult verify_pi_dot_pi_random(int frames, int dim, std::uint64_t seed);

const std::vector<std::string>& suite_ids();

/// Default tolerance of a suite (agreement suites count disagreements and
/// use 0.5).
double suite_tolerance(const std::string& id);

struct SuiteOptions {
  std::vector<std::string> manifolds;  // empty: the built-in battery
  std::vector<int> dims;               // prop-auxalg*: empty means {4, 6}
  CaseConfig config;
};

/// Runs one suite over its charts. Throws ArgumentError for an unknown id.
SuiteResult run_suite(const std::string& id, const SuiteOptions& opts);

}  // namespace holosym
