#pragma once

#include "bmx/quadrature.hpp"

namespace bmx {

/// A geometry together with a 2-form field given per chart. The complex
/// structure, when present, lives on the geometry's charts.
struct FieldConfiguration {
  CatalogEntry geometry;
  std::vector<TwoFormFn> F;
};

/// Kahler form omega = g(J., .) of a chart, at all jet orders.
TwoFormFn omega_field(const CatalogEntry& entry, int chart);

/// Primitive Ricci form rho0 = ricci0(J., .); value and first-derivative
/// slots (curvature-backed).
TwoFormFn rho0_field(const CatalogEntry& entry, int chart);

/// psi = bach(J., .); value and first-derivative slots.
TwoFormFn psi_field(const CatalogEntry& entry, int chart);

TwoFormFn zero_form_field();

/// ca * a + cb * b on the slots both operands provide.
TwoFormFn form_lincomb(const TwoFormFn& a, double ca, const TwoFormFn& b,
                       double cb);

/// F = omega + (1/2) rho0, the constant-scalar-curvature Kahler solution of
/// the Einstein-Maxwell system. Requires Kahler data and constant scalar
/// curvature (sampled std/mean <= 1e-8).
FieldConfiguration maxwell_field_csck(const CatalogEntry& entry);

/// F = omega + (1/2) psi with psi = bach(J., .), the extremal-Kahler
/// solution of the Bach-Merkulov system. On constant-scalar-curvature input
/// psi collapses to (s/12) rho0.
FieldConfiguration maxwell_field_extremal(const CatalogEntry& entry);

/// F = omega (ablation configuration) and F = 0.
FieldConfiguration with_omega_only(const CatalogEntry& entry);
FieldConfiguration with_zero_field(const CatalogEntry& entry);

struct ResidualReport {
  double max_raw = 0, rms_raw = 0;
  double max_normalized = 0, rms_normalized = 0;
  double scale = 0;  // mean curvature magnitude used for normalization
  int points = 0;
  double df_max = 0;       // max |dF|_g over points
  double dstar_f_max = 0;  // max |d*F|_g
};

/// {"max":..,"rms":..,"points":..,"normalized":true} (normalized values).
std::string residual_to_json(const ResidualReport& rep);

/// Pointwise residual of [ricci + F o F]_0 = 0 plus harmonicity of F.
ResidualReport em_residual(const FieldConfiguration& cfg,
                           const std::vector<QuadNode>& points);

/// Pointwise residual of bach + [F o F]_0 = 0 plus harmonicity of F.
ResidualReport bm_residual(const FieldConfiguration& cfg,
                           const std::vector<QuadNode>& points);

/// (max |dF|_g, max |d*F|_g) over the sample points.
std::pair<double, double> harmonic_residual(const FieldConfiguration& cfg,
                                            const std::vector<QuadNode>& points);

/// max |grad omega|_g / |omega|_g over the points: the parallel Kahler form
/// residual of an entry's complex structure.
double kahler_parallel_residual(const CatalogEntry& entry,
                                const std::vector<QuadNode>& points);

/// Replaces the metric by u*g on chart 0 (u == 1 outside the safe ball) and
/// keeps the same 2-form field. Throws DomainError on nonpositive u.
FieldConfiguration conformal_rescale(const FieldConfiguration& cfg,
                                     const ScalarFn& u);

/// Constant conformal factor applied on every chart.
FieldConfiguration conformal_rescale_const(const FieldConfiguration& cfg,
                                           double c);

struct VariationCheck {
  double fd_derivative = 0;  // (W(g+th) - W(g-th)) / 2t
  double pairing = 0;        // integral <h, bach> dmu
  double discrepancy = 0;    // |fd - pairing|
  double scale = 0;          // integral |h||bach| dmu
};

/// First-variation test of the Weyl energy along h at step t: the central
/// difference of W against the Bach pairing. With the Kahler-normalized
/// bach the measured derivative is <h, -2 bach>; both numbers are reported.
VariationCheck weyl_first_variation_check(const CatalogEntry& entry,
                                          const SymFn& h, double t,
                                          int resolution);

/// Same along a global per-chart field.
VariationCheck weyl_first_variation_check(const CatalogEntry& entry,
                                          const SymField& h, double t,
                                          int resolution);

}  // namespace bmx
