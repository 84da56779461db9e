#pragma once

#include "bmx/chart.hpp"
#include "bmx/forms.hpp"

namespace bmx {

/// Pointwise curvature data in chart indices, all tensors fully covariant.
///
/// Conventions (validated by the test suite rather than asserted):
///   riemann[i][j][k][l] = < R(d_i, d_j) d_l , d_k >, so that constant
///   curvature K gives riemann = (K/2) (g ^ g) and sectional curvatures of
///   the round sphere come out positive;
///   ricci[j][l] = g^{ik} riemann[i][j][k][l], scalar = g-trace of ricci;
///   weyl = riemann - (1/2) ricci0 ^ g - (scalar/24) g ^ g  (Kulkarni-Nomizu
///   products), which is totally trace-free in dimension four;
///   bach[i][j] = (grad^s grad^t + (1/2) ricci^{st}) weyl[i][s][j][t].
struct CurvatureStack {
  Mat4d g{}, ginv{};
  double det = 0;
  double orientation = 1;
  Ten3d christoffel{};  // christoffel[k][i][j] = Gamma^k_{ij}
  Ten4d riemann{};
  Mat4d ricci{}, ricci0{};
  double scalar = 0;
  Ten4d weyl{}, weyl_plus{}, weyl_minus{};
  Mat4d bach{};
  bool has_bach = false;
  // Lambda^2-operator norms (convention pinned by |W+|^2 = s^2/24 on Kahler)
  double weyl_norm2 = 0, weyl_plus_norm2 = 0, weyl_minus_norm2 = 0;
};

/// Full stack through the Bach tensor (fourth metric derivatives).
CurvatureStack curvature_stack(const MetricChart& chart, const Vec4d& x);

/// Riemann-level stack only (second derivatives); bach left zero.
CurvatureStack curvature_stack_basic(const MetricChart& chart, const Vec4d& x);

/// Covariant divergence (grad^i B)_{ij}; needs fifth metric derivatives, so
/// the chart must use the jet strategy.
Vec4d bach_divergence(const MetricChart& chart, const Vec4d& x);

/// Bach tensor with first derivatives (jet strategy only).
Mat4<Jet<1>> bach_jet1(const MetricChart& chart, const Vec4d& x);

/// Trace-free Ricci with first derivatives, for curvature-derived 2-form
/// fields.
Mat4<Jet<1>> ricci0_jet1(const MetricChart& chart, const Vec4d& x);

Jet<1> scalar_jet1(const MetricChart& chart, const Vec4d& x);

/// Bach tensor of a Kahler surface from scalar curvature, trace-free Ricci
/// and trace-free Hessian of the scalar: (1/12)(s ricci0 + 2 hess0).
/// Inputs must be trace-free within tol of their own scale.
Mat4d bach_kahler_formula(double s, const Mat4d& ricci0, const Mat4d& hess0_s,
                          const Mat4d& g, const Mat4d& ginv, double tol = 1e-7);

}  // namespace bmx
