#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bmx/curvature.hpp"

namespace bmx {

/// One chart of a catalog geometry, with optional constant complex
/// structure (all catalog Kahler structures are constant in their charts).
struct ChartSpec {
  MetricChart chart;
  std::optional<Mat4d> J;
  /// Perturbation fields attach to chart 0 only and must be supported in
  /// the coordinate ball of this radius; quadrature assigns the matching
  /// manifold region to chart 0 nodes.
  double safe_radius = 0.0;
};

enum class GridKind { ProductSpheres, Sphere4, FubiniStudy, FlatTorus };

struct GridSpec {
  GridKind kind = GridKind::FlatTorus;
  double r1 = 1.0, r2 = 1.0;  // product sphere radii
  double radius = 1.0;        // S^4
  double scale = 1.0;         // Fubini-Study
};

struct KnownConstants {
  std::optional<double> scalar;
  std::optional<double> volume;
  std::optional<double> area1, area2;
  bool is_einstein = false;
  bool is_csck = false;
  bool is_kahler = false;
  bool is_flat = false;
};

/// A closed-form test geometry: an atlas of charts, the quadrature
/// parametrization, classical constants, and (when the manifold is a
/// complex surface) pointwise Kahler data.
struct CatalogEntry {
  std::string name;
  std::vector<ChartSpec> charts;
  GridSpec grid;
  KnownConstants known;
  /// Maps a point between overlapping charts (same manifold point); only
  /// provided for the sphere-type entries where two charts exist.
  std::function<Vec4d(int from, int to, const Vec4d&)> transition;

  bool has_kahler() const { return bool(charts[0].J); }
};

/// Round 4-sphere of the given radius; two stereographic charts related by
/// an orientation-preserving inversion. scalar = 12/r^2.
CatalogEntry make_sphere4(double radius);

/// Fubini-Study on one affine chart of the complex projective plane;
/// `scale` multiplies the metric, so scalar = 12/scale, volume =
/// 2 pi^2 scale^2.
CatalogEntry make_fubini_study(double scale);

/// Product of round 2-spheres with the product complex structure; the
/// constant-scalar-curvature Kahler witness (Einstein iff r1 == r2).
/// Four charts: each factor in its direct or inverted stereographic chart.
CatalogEntry make_product_spheres(double r1, double r2);

/// Unit flat 4-torus on [0,1)^4.
CatalogEntry make_flat_chart();

/// Smooth positive factor 1 + amplitude * phi(|x-center|^2/width^2) with
/// phi a standard compactly-supported mollifier (phi(0) = 1). Requires
/// amplitude > -1 and width > 0.
ScalarFn make_bump(double amplitude, const Vec4d& center, double width);

/// The mollifier alone (compact support, peak 1), as a reusable factor.
ScalarFn make_mollifier(const Vec4d& center, double width);

/// Named registry used by the CLI: sphere4, fubini-study, product-1-1,
/// product-1-sqrt2, flat.
std::vector<std::string> catalog_names();
CatalogEntry catalog_get(const std::string& name);

/// Entry with chart 0's metric multiplied by the factor u (u must equal 1
/// outside the chart-0 safe ball). Other charts are untouched.
CatalogEntry conformally_scaled(const CatalogEntry& entry, const ScalarFn& u);

/// Entry with every chart's metric scaled by a positive constant.
CatalogEntry scaled_const(const CatalogEntry& entry, double c);

/// A global symmetric 2-tensor field given per chart.
struct SymField {
  std::vector<SymFn> per_chart;
};

/// Entry with chart 0's metric replaced by g + t*h (h supported in the
/// safe ball; other charts untouched).
CatalogEntry metric_perturbed(const CatalogEntry& entry, const SymFn& h,
                              double t);

/// Entry with every chart's metric perturbed by its own component of h.
CatalogEntry metric_perturbed(const CatalogEntry& entry, const SymField& h,
                              double t);

/// Unit R^3 embedding coordinates of one sphere factor at a chart point of
/// a product entry (chart-coherent: the same manifold point gives the same
/// vector in every chart).
std::array<double, 3> product_factor_embedding(const CatalogEntry& entry,
                                               int chart, const Vec4d& x,
                                               int factor);

/// Analytic global symmetric field on a product entry:
///   h = alpha(m) (factor-1 metric block) + beta(m) (factor-2 metric block)
/// with alpha, beta affine in the unit embedding coordinates of the two
/// sphere factors: coeff[0] + coeff[1..3].n1 + coeff[4..6].n2. Smooth on
/// the whole manifold and cheap to integrate to spectral accuracy.
SymField product_block_field(const CatalogEntry& entry,
                             const std::array<double, 7>& alpha,
                             const std::array<double, 7>& beta);

}  // namespace bmx
