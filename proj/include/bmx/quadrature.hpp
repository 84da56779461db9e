#pragma once

#include <functional>

#include "bmx/catalog.hpp"

namespace bmx {

/// One quadrature node: a chart point plus the coordinate weight (cubature
/// weight times the parametrization Jacobian, metric factor excluded).
struct QuadNode {
  int chart = 0;
  Vec4d x{};
  double cweight = 0;
};

struct QuadratureGrid {
  std::vector<QuadNode> nodes;
  int resolution = 0;
};

/// Deterministic tensor grid for an entry: Gauss-Legendre in the polar
/// parameters, trapezoid in the periodic angles, `resolution` nodes per
/// axis. Sphere nodes are assigned to whichever stereographic chart keeps
/// them away from the projection pole.
QuadratureGrid build_grid(const CatalogEntry& entry, int resolution);

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

using Density = std::function<double(int chart, const Vec4d& x)>;

struct EnergyReport {
  double value = 0;
  double error_estimate = 0;
  int nodes = 0;
  std::string convention;
};

/// integral of density dmu over the entry, single resolution.
double integrate_value(const CatalogEntry& entry, const Density& density,
                       int resolution);

/// Same with an error estimate from comparing against half resolution.
EnergyReport integrate(const CatalogEntry& entry, const Density& density,
                       int resolution);

/// Integrates ncomp densities in one pass (the callback fills one value per
/// component); useful when the components share expensive curvature work.
std::vector<double> integrate_multi(
    const CatalogEntry& entry,
    const std::function<void(int chart, const Vec4d& x, double* out)>& density,
    int ncomp, int resolution);

/// integral of s^2 dmu.
EnergyReport calabi_energy_numeric(const CatalogEntry& entry, int resolution);

enum class WeylKind { Full, Plus, Minus };

/// integral of |W|^2 dmu (or the self-dual / anti-self-dual half), in the
/// Lambda^2-operator norm convention.
EnergyReport weyl_energy_numeric(const CatalogEntry& entry, WeylKind which,
                                 int resolution);

/// Every stride-th grid node, capped at max_points; the default sample set
/// for pointwise residual checks.
std::vector<QuadNode> sample_nodes(const CatalogEntry& entry, int resolution,
                                   std::size_t max_points);

/// Area of one sphere factor of a product entry (2d quadrature over the
/// factor with the other factor held at the origin).
double product_factor_area(const CatalogEntry& entry, int which,
                           int resolution);

}  // namespace bmx
