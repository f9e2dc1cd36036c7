#pragma once

#include <cstdint>
#include <optional>

#include "holosym/tensor.hpp"

namespace holosym {

/// Linear-algebra certificate that tensors with curvature-type symmetries
/// are determined by their values on holomorphic-plane arguments.
///
/// Rank 6: symmetries (a) pair antisymmetry and pair exchange in slots 1-4,
/// (b) first Bianchi in slots 2-4, (c) J-invariance of the slot pairs (1,2)
/// and (3,4), (d) antisymmetry and J-invariance of slots (5,6); evaluation at
/// (u,Ju,Ju,u,v,Jv).
/// Rank 5: (a), (b), (c) only; evaluation at (u,Ju,Ju,u,v).
///
/// W is the solution space of the symmetry constraints and E: W -> R^m the
/// evaluation map on m = 4 dim(W) random (u,v). The claim holds iff
/// rank(E) = dim(W).
struct AuxAlgOptions {
  int dim = 4;               // 2n, even
  int rank = 6;              // 6 or 5
  bool drop_j_invariance = false;  // omit (c): negative control
  std::uint64_t seed = 0;
  double rank_threshold = 1e-8;  // relative to the largest singular value
};

struct AuxAlgResult {
  int orbit_variables = 0;  // unknowns left after folding (a), (c), (d)
  int dim_w = 0;
  int samples = 0;
  int rank_e = 0;
  double sigma_max = 0.0;
  double sigma_min = 0.0;       // smallest singular value of E
  double constraint_residual = 0.0;  // max |Bianchi| over the W basis
  // Present when rank(E) < dim(W): a nonzero symmetric tensor that vanishes
  // on every sampled argument, normalized to max entry 1.
  std::optional<Tensor> witness;
  double witness_evaluation = 0.0;  // max |witness(args)| over the samples
  bool certified() const { return dim_w > 0 && rank_e == dim_w; }
};

/// Throws ArgumentError unless dim is even and in [2, 6] and rank is 5 or 6.
AuxAlgResult certify_holomorphic_determination(const AuxAlgOptions& opts);

}  // namespace holosym
