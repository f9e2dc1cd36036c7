#pragma once

#include <functional>

#include "holosym/curvature.hpp"
#include "holosym/geometry.hpp"

namespace holosym {

/// (x ^_g y) z = g(y,z) x - g(x,z) y
Endomorphism metric_endo(const Matrix& g, const Vector& x, const Vector& y);

/// (x ^c y) = (x ^_g y) + (Jx ^_g Jy) - 2 g(Jx,y) J
Endomorphism complex_metric_endo(const Matrix& g, const Matrix& J, const Vector& x, const Vector& y);

/// R(x,y) as a (1,1) tensor.
Endomorphism curvature_endo(const PointFrame& frame, const Vector& x, const Vector& y);

/// The (0,6) tensors built from R by a derivation in slots (X1..X4), with the
/// endomorphism depending on the last two slots (X,Y):
///   RR : (R(X,Y) . R)(X1..X4)
///   Q  : -((X ^_g Y) . R)(X1..X4)
///   Qc : -((X ^c Y) . R)(X1..X4)
enum class SixTensor { RR, Tachibana, ComplexTachibana };

const char* to_string(SixTensor kind);

/// Dimension above which (0,6) tensors are never stored; maxima and residuals
/// are then reduced block by block and plane values are evaluated lazily.
inline constexpr int kMaterializeMaxDim = 6;

/// The (0,4) slice T(.,.,.,.; e_a, e_b).
Tensor six_tensor_block(const PointFrame& frame, SixTensor kind, int a, int b);

/// Calls fn(a, b, block) for every slice, a < b (slices are antisymmetric in
/// (a, b) and vanish for a = b).
void for_each_block(const PointFrame& frame, SixTensor kind,
                    const std::function<void(int, int, const Tensor&)>& fn);

/// Full (0,6) tensor, slots stored as (X1,X2,X3,X4,X,Y).
Tensor materialize(const PointFrame& frame, SixTensor kind);

Tensor compute_rr(const PointFrame& frame);
Tensor compute_tachibana(const PointFrame& frame);
Tensor compute_complex_tachibana(const PointFrame& frame);

/// max |T| without storing T.
double six_tensor_max_abs(const PointFrame& frame, SixTensor kind);

/// T(x1,x2,x3,x4; x, y) evaluated from R directly.
double six_tensor_value(const PointFrame& frame, SixTensor kind, const Vector& x1, const Vector& x2,
                        const Vector& x3, const Vector& x4, const Vector& x, const Vector& y);

/// T(v,w,w,v; x,y) for pi = v ^ w, pibar = x ^ y, evaluated lazily.
double on_planes(const PointFrame& frame, SixTensor kind, const Plane& pi, const Plane& pibar);

/// Same value contracted from a materialized (0,6) tensor.
double on_planes(const Tensor& six, const Plane& pi, const Plane& pibar);

/// Pi(X1,X2,X3,X4) = g(Pi(X1,X2) X3, X4) with Pi(X,Y) = (X ^c Y) / 4.
Tensor pi_tensor(const Matrix& g, const Matrix& J);

/// (Pi(X,Y) . Pi)(X1..X4) as a (0,6) tensor.
Tensor compute_pi_dot_pi(const Matrix& g, const Matrix& J);
Tensor compute_pi_dot_pi(const PointFrame& frame);

struct CurvatureTensors {
  Tensor R;       // (0,4)
  Tensor nablaR;  // (0,5), differentiating slot last
  Tensor RR;      // (0,6)
  Tensor Q;       // (0,6)
  Tensor Qc;      // (0,6)
};

CurvatureTensors compute_curvature_tensors(const PointFrame& frame);

}  // namespace holosym
