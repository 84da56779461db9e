#pragma once

#include <optional>

#include "bmx/geom.hpp"

namespace bmx {

struct Box4 {
  Vec4d lo{-1e30, -1e30, -1e30, -1e30};
  Vec4d hi{1e30, 1e30, 1e30, 1e30};
  bool contains(const Vec4d& x, double pad = 0.0) const {
    for (int i = 0; i < 4; ++i)
      if (x[i] - pad < lo[i] || x[i] + pad > hi[i]) return false;
    return true;
  }
};

enum class DiffStrategy { Jet, FiniteDifference };

struct FdParams {
  double step = 0.05;       // balances truncation against rounding at 4th order
  bool richardson = true;   // one extrapolation level, h and h/2
};

/// A coordinate chart with a smooth metric on a box domain.
///
/// The metric function must produce a symmetric positive-definite matrix at
/// every interior point; both differentiation strategies read it through the
/// same type-erased interface.
struct MetricChart {
  Box4 domain;
  MetricFn metric;
  DiffStrategy strategy = DiffStrategy::Jet;
  FdParams fd;
  double orientation = 1.0;  // +1: coordinate order is positively oriented
};

/// Metric component jets at a point: Taylor data through `order` (<= 4),
/// zero-padded into a fixed order-4 container.
struct MetricJets {
  int order = 0;
  Mat4<Jet<4>> g;
};

/// Derivatives of the metric components at x through the given order,
/// computed with the chart's strategy (exact jet propagation, or central
/// finite differences with one Richardson level).
/// Errors: OutOfDomain (stencil leaves the box), NonFinite,
/// NotPositiveDefinite (value-level metric check).
MetricJets metric_jets(const MetricChart& chart, const Vec4d& x, int order);

/// Metric evaluated as an order-O jet (pipeline entry point). The
/// finite-difference strategy supports O <= 4.
template <int O>
Mat4<Jet<O>> metric_jet(const MetricChart& chart, const Vec4d& x);

/// Value-level sanity check used before differentiating: symmetric,
/// positive definite (eigenvalue floor 1e-12 of trace scale), finite.
void check_metric_value(const Mat4d& g);

}  // namespace bmx
