#include "bmx/chart.hpp"

#include <cmath>
#include <vector>

namespace bmx {

void check_metric_value(const Mat4d& g) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(g[i][j]))
        fail(ErrorCode::NonFinite, "metric component not finite");
      scale = std::max(scale, std::abs(g[i][j]));
    }
  }
  double trace_scale = std::abs(g[0][0] + g[1][1] + g[2][2] + g[3][3]);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (std::abs(g[i][j] - g[j][i]) > 1e-10 * std::max(scale, 1e-300))
        fail(ErrorCode::InvalidArgument, "metric not symmetric");
  // Cholesky with a pivot floor relative to the trace scale
  Mat4d a = g;
  for (int k = 0; k < 4; ++k) {
    for (int i = 0; i < k; ++i) a[k][k] -= a[k][i] * a[k][i];
    if (a[k][k] <= 1e-12 * trace_scale)
      fail(ErrorCode::NotPositiveDefinite, "metric not positive definite");
    a[k][k] = std::sqrt(a[k][k]);
    for (int j = k + 1; j < 4; ++j) {
      for (int i = 0; i < k; ++i) a[j][k] -= a[j][i] * a[k][i];
      a[j][k] /= a[k][k];
    }
  }
}

namespace {

// Fornberg finite-difference weights for derivatives 0..m_max at x = 0 on
// the given grid.
std::vector<std::vector<double>> fd_weights(const std::vector<double>& grid,
                                            int m_max) {
  const int n = int(grid.size());
  std::vector<std::vector<double>> c(n, std::vector<double>(m_max + 1, 0.0));
  double c1 = 1.0;
  double c4 = grid[0];
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    int mn = std::min(i, m_max);
    double c2 = 1.0;
    double c5 = c4;
    c4 = grid[i];
    for (int j = 0; j < i; ++j) {
      double c3 = grid[i] - grid[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k)
          c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k)
        c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  return c;
}

constexpr int kHalf = 4;  // 9-point stencils, offsets -4..4

struct FdGrid {
  // metric values over the full offset grid at spacing h
  std::vector<Mat4d> vals;
  static int index(const std::array<int, 4>& off) {
    int idx = 0;
    for (int a = 0; a < 4; ++a) idx = idx * (2 * kHalf + 1) + (off[a] + kHalf);
    return idx;
  }
};

FdGrid eval_grid(const MetricChart& chart, const Vec4d& x, double h) {
  const int w = 2 * kHalf + 1;
  FdGrid grid;
  grid.vals.resize(w * w * w * w);
  std::array<int, 4> off;
  for (off[0] = -kHalf; off[0] <= kHalf; ++off[0])
    for (off[1] = -kHalf; off[1] <= kHalf; ++off[1])
      for (off[2] = -kHalf; off[2] <= kHalf; ++off[2])
        for (off[3] = -kHalf; off[3] <= kHalf; ++off[3]) {
          Vec4d p = x;
          for (int a = 0; a < 4; ++a) p[a] += off[a] * h;
          grid.vals[FdGrid::index(off)] = chart.metric.eval<double>(p);
        }
  return grid;
}

// One mixed partial from a tensor-product stencil over the cached grid.
double apply_stencil(const FdGrid& grid,
                     const std::vector<std::vector<double>>& w, double h,
                     const std::array<int, 4>& alpha, int i, int j) {
  // iterate offsets only along axes with nonzero exponent
  std::array<int, 4> off{0, 0, 0, 0};
  double total = 0.0;
  int axes[4], n_axes = 0;
  for (int a = 0; a < 4; ++a)
    if (alpha[a] > 0) axes[n_axes++] = a;
  if (n_axes == 0) return grid.vals[FdGrid::index(off)][i][j];

  std::array<int, 4> cursor{0, 0, 0, 0};  // stencil position per active axis
  const int width = 2 * kHalf + 1;
  while (true) {
    double coeff = 1.0;
    for (int t = 0; t < n_axes; ++t) {
      int a = axes[t];
      off[a] = cursor[t] - kHalf;
      coeff *= w[cursor[t]][alpha[a]];
    }
    if (coeff != 0.0) total += coeff * grid.vals[FdGrid::index(off)][i][j];
    int t = 0;
    while (t < n_axes && ++cursor[t] == width) cursor[t++] = 0;
    if (t == n_axes) break;
  }
  int total_order = alpha[0] + alpha[1] + alpha[2] + alpha[3];
  return total / std::pow(h, total_order);
}

Mat4<Jet<4>> fd_metric_jets(const MetricChart& chart, const Vec4d& x,
                            int order) {
  double scale = 1.0;  // chart-coordinate scale; domains here are O(1) boxes
  double h = chart.fd.step * scale;
  if (!chart.domain.contains(x, kHalf * h))
    fail(ErrorCode::OutOfDomain, "finite-difference stencil leaves the chart");

  std::vector<double> offsets(2 * kHalf + 1);
  for (int i = 0; i <= 2 * kHalf; ++i) offsets[i] = double(i - kHalf);
  auto w = fd_weights(offsets, 4);

  FdGrid grid_h = eval_grid(chart, x, h);
  FdGrid grid_h2;
  if (chart.fd.richardson) grid_h2 = eval_grid(chart, x, h / 2);

  Mat4<Jet<4>> out;
  const auto& tab = Jet<4>::tables();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jet<4> jet;
      for (int t = 0; t < Jet<4>::kTerms; ++t) {
        const auto& e = tab.exps[t];
        int deg = e[0] + e[1] + e[2] + e[3];
        if (deg > order) break;
        std::array<int, 4> alpha{e[0], e[1], e[2], e[3]};
        double d = apply_stencil(grid_h, w, h, alpha, i, j);
        if (chart.fd.richardson && deg > 0) {
          double d2 = apply_stencil(grid_h2, w, h / 2, alpha, i, j);
          d = (64.0 * d2 - d) / 63.0;  // cancel the O(h^6) term
        }
        if (!std::isfinite(d))
          fail(ErrorCode::NonFinite, "finite-difference derivative not finite");
        double fact = 1.0;
        for (int a = 0; a < 4; ++a)
          for (int m = 2; m <= alpha[a]; ++m) fact *= m;
        jet.c[t] = d / fact;
      }
      out[i][j] = jet;
    }
  return out;
}

}  // namespace

template <int O>
Mat4<Jet<O>> metric_jet(const MetricChart& chart, const Vec4d& x) {
  if (!chart.domain.contains(x))
    fail(ErrorCode::OutOfDomain, "point outside chart domain");
  check_metric_value(chart.metric.eval<double>(x));
  if (chart.strategy == DiffStrategy::Jet) {
    auto g = chart.metric.eval<Jet<O>>(seed_point<Jet<O>>(x));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (double cv : g[i][j].c)
          if (!std::isfinite(cv))
            fail(ErrorCode::NonFinite, "metric jet not finite");
    return g;
  }
  if constexpr (O > 4) {
    fail(ErrorCode::Unsupported,
         "finite differences support derivative order <= 4; use the jet "
         "strategy");
  } else {
    auto full = fd_metric_jets(chart, x, O);
    Mat4<Jet<O>> out;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) out[i][j] = truncate<O>(full[i][j]);
    return out;
  }
}

template Mat4<Jet<1>> metric_jet<1>(const MetricChart&, const Vec4d&);
template Mat4<Jet<2>> metric_jet<2>(const MetricChart&, const Vec4d&);
template Mat4<Jet<3>> metric_jet<3>(const MetricChart&, const Vec4d&);
template Mat4<Jet<4>> metric_jet<4>(const MetricChart&, const Vec4d&);
template Mat4<Jet<5>> metric_jet<5>(const MetricChart&, const Vec4d&);

MetricJets metric_jets(const MetricChart& chart, const Vec4d& x, int order) {
  if (order < 1 || order > 4)
    fail(ErrorCode::InvalidArgument, "derivative order must be 1..4");
  MetricJets out;
  out.order = order;
  auto pad = [&](auto g) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (std::size_t t = 0; t < g[i][j].c.size(); ++t)
          out.g[i][j].c[t] = g[i][j].c[t];
  };
  switch (order) {
    case 1: pad(metric_jet<1>(chart, x)); break;
    case 2: pad(metric_jet<2>(chart, x)); break;
    case 3: pad(metric_jet<3>(chart, x)); break;
    default: pad(metric_jet<4>(chart, x)); break;
  }
  return out;
}

}  // namespace bmx
