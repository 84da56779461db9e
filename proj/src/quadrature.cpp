#include "bmx/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <thread>

namespace bmx {

namespace {
constexpr double kPi = std::numbers::pi;
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev estimate
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

namespace {

struct Angular2 {
  // one sphere factor node: chart bit, 2d coords, coordinate weight
  int inverted = 0;
  double cx = 0, cy = 0;
  double cweight = 0;
};

std::vector<Angular2> sphere2_nodes(double radius, int res) {
  std::vector<double> u, wu;
  gauss_legendre(res, u, wu);
  std::vector<Angular2> out;
  out.reserve(res * res);
  const double wphi = 2.0 * kPi / res;
  for (int iu = 0; iu < res; ++iu) {
    double theta = std::acos(u[iu]);
    bool inv = theta < kPi / 2;  // stay away from the projection pole
    double half = 0.5 * theta;
    double rho = inv ? radius * std::tan(half) : radius / std::tan(half);
    double s = std::sin(half), c = std::cos(half);
    double dphi_du = inv ? radius / (2.0 * c * c * std::sin(theta))
                         : radius / (2.0 * s * s * std::sin(theta));
    double jac = dphi_du * rho;  // 2d polar: |drho/du| * rho
    for (int ip = 0; ip < res; ++ip) {
      double phi = wphi * ip;
      Angular2 node;
      node.inverted = inv ? 1 : 0;
      node.cx = rho * std::cos(phi);
      node.cy = inv ? -rho * std::sin(phi) : rho * std::sin(phi);
      node.cweight = wu[iu] * wphi * jac;
      out.push_back(node);
    }
  }
  return out;
}

QuadratureGrid grid_product(const GridSpec& spec, int res) {
  auto f1 = sphere2_nodes(spec.r1, res);
  auto f2 = sphere2_nodes(spec.r2, res);
  QuadratureGrid grid;
  grid.resolution = res;
  grid.nodes.reserve(f1.size() * f2.size());
  for (const auto& a : f1)
    for (const auto& b : f2) {
      QuadNode n;
      n.chart = a.inverted + 2 * b.inverted;
      n.x = {a.cx, a.cy, b.cx, b.cy};
      n.cweight = a.cweight * b.cweight;
      grid.nodes.push_back(n);
    }
  return grid;
}

QuadratureGrid grid_sphere4(const GridSpec& spec, int res) {
  const double R = spec.radius;
  std::vector<double> u, wu, psi, wpsi, v, wv;
  gauss_legendre(res, u, wu);
  gauss_legendre(res, psi, wpsi);  // mapped to (0, pi)
  gauss_legendre(res, v, wv);
  const double wphi = 2.0 * kPi / res;
  QuadratureGrid grid;
  grid.resolution = res;
  grid.nodes.reserve(std::size_t(res) * res * res * res);
  for (int a = 0; a < res; ++a) {
    double chi = std::acos(u[a]);
    bool inv = chi < kPi / 2;
    double half = 0.5 * chi;
    double s = std::sin(half), c = std::cos(half);
    double rho = inv ? R * std::tan(half) : R / std::tan(half);
    double drho_du = inv ? R / (2.0 * c * c * std::sin(chi))
                         : R / (2.0 * s * s * std::sin(chi));
    double radial = drho_du * rho * rho * rho;
    for (int b = 0; b < res; ++b) {
      double ps = 0.5 * kPi * (psi[b] + 1.0);
      double wps = 0.5 * kPi * wpsi[b];
      double sp = std::sin(ps), cp = std::cos(ps);
      for (int d = 0; d < res; ++d) {
        double ct = v[d], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int e = 0; e < res; ++e) {
          double phi = wphi * e;
          Vec4d n3{sp * st * std::cos(phi), sp * st * std::sin(phi), sp * ct,
                   inv ? -cp : cp};
          QuadNode node;
          node.chart = inv ? 1 : 0;
          node.x = {rho * n3[0], rho * n3[1], rho * n3[2], rho * n3[3]};
          node.cweight = wu[a] * wps * wv[d] * wphi * radial * sp * sp;
          grid.nodes.push_back(node);
        }
      }
    }
  }
  return grid;
}

QuadratureGrid grid_fubini_study(int res) {
  std::vector<double> xi, wxi, psi, wpsi, v, wv;
  gauss_legendre(res, xi, wxi);
  gauss_legendre(res, psi, wpsi);
  gauss_legendre(res, v, wv);
  const double wphi = 2.0 * kPi / res;
  QuadratureGrid grid;
  grid.resolution = res;
  grid.nodes.reserve(std::size_t(res) * res * res * res);
  for (int a = 0; a < res; ++a) {
    double t = 0.5 * (xi[a] + 1.0);  // compactified radius t = rho^2/(1+rho^2)
    double wt = 0.5 * wxi[a];
    double rho = std::sqrt(t / (1.0 - t));
    double drho_dt = 1.0 / (2.0 * rho * (1.0 - t) * (1.0 - t));
    double radial = drho_dt * rho * rho * rho;
    for (int b = 0; b < res; ++b) {
      double ps = 0.5 * kPi * (psi[b] + 1.0);
      double wps = 0.5 * kPi * wpsi[b];
      double sp = std::sin(ps), cp = std::cos(ps);
      for (int d = 0; d < res; ++d) {
        double ct = v[d], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
        for (int e = 0; e < res; ++e) {
          double phi = wphi * e;
          QuadNode node;
          node.chart = 0;
          node.x = {rho * sp * st * std::cos(phi), rho * sp * st * std::sin(phi),
                    rho * sp * ct, rho * cp};
          node.cweight = wt * wps * wv[d] * wphi * radial * sp * sp;
          grid.nodes.push_back(node);
        }
      }
    }
  }
  return grid;
}

QuadratureGrid grid_flat(int res) {
  QuadratureGrid grid;
  grid.resolution = res;
  grid.nodes.reserve(std::size_t(res) * res * res * res);
  double w = 1.0 / res;
  for (int a = 0; a < res; ++a)
    for (int b = 0; b < res; ++b)
      for (int c = 0; c < res; ++c)
        for (int d = 0; d < res; ++d) {
          QuadNode node;
          node.chart = 0;
          node.x = {(a + 0.5) * w, (b + 0.5) * w, (c + 0.5) * w, (d + 0.5) * w};
          node.cweight = w * w * w * w;
          grid.nodes.push_back(node);
        }
  return grid;
}

void parallel_over(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t nthreads = std::max(1u, hw);
  nthreads = std::min<std::size_t>(nthreads, 16);
  if (n < 4096 || nthreads == 1) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(nthreads);
  std::size_t chunk = (n + nthreads - 1) / nthreads;
  for (std::size_t t = 0; t < nthreads; ++t) {
    std::size_t lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, t, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : threads) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

QuadratureGrid build_grid(const CatalogEntry& entry, int resolution) {
  if (resolution < 2)
    fail(ErrorCode::InvalidArgument, "resolution must be at least 2");
  switch (entry.grid.kind) {
    case GridKind::ProductSpheres: return grid_product(entry.grid, resolution);
    case GridKind::Sphere4: return grid_sphere4(entry.grid, resolution);
    case GridKind::FubiniStudy: return grid_fubini_study(resolution);
    case GridKind::FlatTorus: return grid_flat(resolution);
  }
  fail(ErrorCode::InvalidArgument, "unknown grid kind");
}

double integrate_value(const CatalogEntry& entry, const Density& density,
                       int resolution) {
  QuadratureGrid grid = build_grid(entry, resolution);
  std::vector<double> terms(grid.nodes.size());
  parallel_over(grid.nodes.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const QuadNode& n = grid.nodes[i];
      const MetricChart& chart = entry.charts[n.chart].chart;
      double d = density(n.chart, n.x);
      double term = 0.0;
      if (d != 0.0) {
        Mat4d g = chart.metric.eval<double>(n.x);
        term = n.cweight * std::sqrt(det4(g)) * d;
      }
      if (!std::isfinite(term))
        fail(ErrorCode::NonFinite, "non-finite density at a quadrature node");
      terms[i] = term;
    }
  });
  // fixed-order compensated sum keeps results thread-count independent
  double sum = 0.0, comp = 0.0;
  for (double t : terms) {
    double y = t - comp;
    double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
  return sum;
}

std::vector<double> integrate_multi(
    const CatalogEntry& entry,
    const std::function<void(int chart, const Vec4d& x, double* out)>& density,
    int ncomp, int resolution) {
  QuadratureGrid grid = build_grid(entry, resolution);
  std::vector<double> terms(grid.nodes.size() * ncomp);
  parallel_over(grid.nodes.size(), [&](std::size_t lo, std::size_t hi) {
    std::vector<double> buf(ncomp);
    for (std::size_t i = lo; i < hi; ++i) {
      const QuadNode& n = grid.nodes[i];
      const MetricChart& chart = entry.charts[n.chart].chart;
      density(n.chart, n.x, buf.data());
      Mat4d g = chart.metric.eval<double>(n.x);
      double w = n.cweight * std::sqrt(det4(g));
      for (int c = 0; c < ncomp; ++c) {
        double term = w * buf[c];
        if (!std::isfinite(term))
          fail(ErrorCode::NonFinite, "non-finite density at a quadrature node");
        terms[i * ncomp + c] = term;
      }
    }
  });
  std::vector<double> out(ncomp, 0.0);
  std::vector<double> comp(ncomp, 0.0);
  for (std::size_t i = 0; i < grid.nodes.size(); ++i)
    for (int c = 0; c < ncomp; ++c) {
      double y = terms[i * ncomp + c] - comp[c];
      double s = out[c] + y;
      comp[c] = (s - out[c]) - y;
      out[c] = s;
    }
  return out;
}

EnergyReport integrate(const CatalogEntry& entry, const Density& density,
                       int resolution) {
  EnergyReport rep;
  rep.value = integrate_value(entry, density, resolution);
  int coarse = std::max(6, resolution / 2);
  double cval = integrate_value(entry, density, coarse);
  rep.error_estimate = std::abs(rep.value - cval);
  QuadratureGrid grid = build_grid(entry, resolution);
  rep.nodes = int(grid.nodes.size());
  return rep;
}

EnergyReport calabi_energy_numeric(const CatalogEntry& entry, int resolution) {
  Density d = [&entry](int chart, const Vec4d& x) {
    CurvatureStack st = curvature_stack_basic(entry.charts[chart].chart, x);
    return st.scalar * st.scalar;
  };
  EnergyReport rep = integrate(entry, d, resolution);
  rep.convention = "scalar-curvature-squared";
  return rep;
}

EnergyReport weyl_energy_numeric(const CatalogEntry& entry, WeylKind which,
                                 int resolution) {
  Density d = [&entry, which](int chart, const Vec4d& x) {
    CurvatureStack st = curvature_stack_basic(entry.charts[chart].chart, x);
    switch (which) {
      case WeylKind::Full: return st.weyl_norm2;
      case WeylKind::Plus: return st.weyl_plus_norm2;
      default: return st.weyl_minus_norm2;
    }
  };
  EnergyReport rep = integrate(entry, d, resolution);
  rep.convention = "lambda2-operator-frobenius";
  return rep;
}

double product_factor_area(const CatalogEntry& entry, int which,
                           int resolution) {
  if (entry.grid.kind != GridKind::ProductSpheres)
    fail(ErrorCode::InvalidArgument, "factor areas need a product entry");
  double radius = which == 0 ? entry.grid.r1 : entry.grid.r2;
  auto nodes = sphere2_nodes(radius, resolution);
  int off = which == 0 ? 0 : 2;
  double sum = 0;
  for (const auto& n : nodes) {
    // factor charts combine independently; hold the other factor at its
    // chart origin
    int chart = which == 0 ? n.inverted : 2 * n.inverted;
    Vec4d x{0, 0, 0, 0};
    x[off] = n.cx;
    x[off + 1] = n.cy;
    Mat4d g = entry.charts[chart].chart.metric.eval<double>(x);
    double block = g[off][off] * g[off + 1][off + 1] - g[off][off + 1] * g[off][off + 1];
    sum += n.cweight * std::sqrt(block);
  }
  return sum;
}

std::vector<QuadNode> sample_nodes(const CatalogEntry& entry, int resolution,
                                   std::size_t max_points) {
  QuadratureGrid grid = build_grid(entry, resolution);
  std::size_t stride = std::max<std::size_t>(1, grid.nodes.size() / max_points);
  std::vector<QuadNode> out;
  for (std::size_t i = 0; i < grid.nodes.size(); i += stride)
    out.push_back(grid.nodes[i]);
  if (out.size() > max_points) out.resize(max_points);
  return out;
}

}  // namespace bmx
