#include "bmx/catalog.hpp"

#include <cmath>
#include <numbers>

namespace bmx {

namespace {

constexpr double kPi = std::numbers::pi;

Mat4d product_J() {
  Mat4d j = mat_zero<double>();
  // (x,y) -> (-y,x) on each factor: J d_x = d_y
  j[1][0] = 1.0;
  j[0][1] = -1.0;
  j[3][2] = 1.0;
  j[2][3] = -1.0;
  return j;
}

// round-sphere conformal factor 4 R^4 / (R^2 + rho^2)^2
template <class T>
T round_factor(double radius, const T& rho2) {
  double r2 = radius * radius;
  T d = rho2 + r2;
  return (4.0 * r2 * r2) / (d * d);
}

MetricFn product_metric(double r1, double r2) {
  return make_smooth<MatShape>([r1, r2](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T f1 = round_factor(r1, x[0] * x[0] + x[1] * x[1]);
    T f2 = round_factor(r2, x[2] * x[2] + x[3] * x[3]);
    Mat4<T> g = mat_zero<T>();
    g[0][0] = f1;
    g[1][1] = f1;
    g[2][2] = f2;
    g[3][3] = f2;
    return g;
  });
}

MetricFn sphere4_metric(double radius) {
  return make_smooth<MatShape>([radius](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T rho2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    T f = round_factor(radius, rho2);
    Mat4<T> g = mat_zero<T>();
    for (int i = 0; i < 4; ++i) g[i][i] = f;
    return g;
  });
}

// Fubini-Study from the potential log(1 + |z|^2): h_ij = scale *
// [(1+|z|^2) delta_ij - conj(z_i) z_j] / (1+|z|^2)^2, realified with
// g = 2 Re(h dz (x) dconj(z)) in coordinates (x1, y1, x2, y2).
MetricFn fubini_study_metric(double scale) {
  return make_smooth<MatShape>([scale](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    const T &x1 = x[0], &y1 = x[1], &x2 = x[2], &y2 = x[3];
    T z1sq = x1 * x1 + y1 * y1;
    T z2sq = x2 * x2 + y2 * y2;
    T d = 1.0 + z1sq + z2sq;
    T inv_d2 = recip(d * d);
    T s11 = (d - z1sq) * inv_d2 * scale;
    T s22 = (d - z2sq) * inv_d2 * scale;
    // conj(z1) z2 = (x1 x2 + y1 y2) + i (x1 y2 - y1 x2)
    T s12 = (x1 * x2 + y1 * y2) * inv_d2 * (-scale);
    T a12 = (x1 * y2 - y1 * x2) * inv_d2 * (-scale);
    Mat4<T> g;
    g[0][0] = 2.0 * s11;
    g[1][1] = 2.0 * s11;
    g[0][1] = T(0.0);
    g[1][0] = T(0.0);
    g[2][2] = 2.0 * s22;
    g[3][3] = 2.0 * s22;
    g[2][3] = T(0.0);
    g[3][2] = T(0.0);
    g[0][2] = 2.0 * s12;
    g[2][0] = 2.0 * s12;
    g[0][3] = 2.0 * a12;
    g[3][0] = 2.0 * a12;
    g[1][2] = -2.0 * a12;
    g[2][1] = -2.0 * a12;
    g[1][3] = 2.0 * s12;
    g[3][1] = 2.0 * s12;
    return g;
  });
}

Vec4d invert_factor(const Vec4d& x, int factor, double radius) {
  // holomorphic chart inversion z -> R^2 / z on one sphere factor
  int o = 2 * factor;
  double n2 = x[o] * x[o] + x[o + 1] * x[o + 1];
  double r2 = radius * radius;
  Vec4d out = x;
  out[o] = r2 * x[o] / n2;
  out[o + 1] = -r2 * x[o + 1] / n2;
  return out;
}

}  // namespace

CatalogEntry make_product_spheres(double r1, double r2) {
  if (r1 <= 0 || r2 <= 0)
    fail(ErrorCode::InvalidArgument, "sphere radii must be positive");
  CatalogEntry e;
  e.name = "product-spheres";
  MetricFn metric = product_metric(r1, r2);
  for (int c = 0; c < 4; ++c) {
    ChartSpec cs;
    cs.chart.metric = metric;
    cs.J = product_J();
    cs.safe_radius = 0.9 * std::min(r1, r2);
    e.charts.push_back(cs);
  }
  e.grid = GridSpec{GridKind::ProductSpheres, r1, r2, 1.0, 1.0};
  double s = 2.0 / (r1 * r1) + 2.0 / (r2 * r2);
  e.known.scalar = s;
  e.known.volume = 16.0 * kPi * kPi * r1 * r1 * r2 * r2;
  e.known.area1 = 4.0 * kPi * r1 * r1;
  e.known.area2 = 4.0 * kPi * r2 * r2;
  e.known.is_einstein = std::abs(r1 - r2) < 1e-14;
  e.known.is_csck = true;
  e.known.is_kahler = true;
  e.transition = [r1, r2](int from, int to, const Vec4d& x) {
    Vec4d p = x;
    int diff = from ^ to;
    if (diff & 1) p = invert_factor(p, 0, r1);
    if (diff & 2) p = invert_factor(p, 1, r2);
    return p;
  };
  return e;
}

CatalogEntry make_sphere4(double radius) {
  if (radius <= 0) fail(ErrorCode::InvalidArgument, "radius must be positive");
  CatalogEntry e;
  e.name = "sphere4";
  MetricFn metric = sphere4_metric(radius);
  for (int c = 0; c < 2; ++c) {
    ChartSpec cs;
    cs.chart.metric = metric;
    cs.safe_radius = 0.9 * radius;
    e.charts.push_back(cs);
  }
  e.grid = GridSpec{GridKind::Sphere4, 1.0, 1.0, radius, 1.0};
  e.known.scalar = 12.0 / (radius * radius);
  e.known.volume = (8.0 / 3.0) * kPi * kPi * radius * radius * radius * radius;
  e.known.is_einstein = true;
  double r2 = radius * radius;
  e.transition = [r2](int from, int to, const Vec4d& x) {
    if (from == to) return x;
    // orientation-preserving inversion between the two stereographic charts
    double n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    return Vec4d{r2 * x[0] / n2, r2 * x[1] / n2, r2 * x[2] / n2,
                 -r2 * x[3] / n2};
  };
  return e;
}

CatalogEntry make_fubini_study(double scale) {
  if (scale <= 0) fail(ErrorCode::InvalidArgument, "scale must be positive");
  CatalogEntry e;
  e.name = "fubini-study";
  ChartSpec cs;
  cs.chart.metric = fubini_study_metric(scale);
  cs.J = product_J();  // standard complex structure on the affine chart
  cs.safe_radius = 1.5;
  e.charts.push_back(cs);
  e.grid = GridSpec{GridKind::FubiniStudy, 1.0, 1.0, 1.0, scale};
  e.known.scalar = 12.0 / scale;
  e.known.volume = 2.0 * kPi * kPi * scale * scale;
  e.known.is_einstein = true;
  e.known.is_csck = true;
  e.known.is_kahler = true;
  return e;
}

CatalogEntry make_flat_chart() {
  CatalogEntry e;
  e.name = "flat";
  ChartSpec cs;
  cs.chart.metric = make_smooth<MatShape>([](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    Mat4<T> g = mat_zero<T>();
    (void)x;
    for (int i = 0; i < 4; ++i) g[i][i] = T(1.0);
    return g;
  });
  cs.chart.domain.lo = {-0.5, -0.5, -0.5, -0.5};
  cs.chart.domain.hi = {1.5, 1.5, 1.5, 1.5};
  cs.J = product_J();
  cs.safe_radius = 0.45;  // ball around the box center (0.5,...,0.5)
  e.charts.push_back(cs);
  e.grid = GridSpec{GridKind::FlatTorus, 1.0, 1.0, 1.0, 1.0};
  e.known.scalar = 0.0;
  e.known.volume = 1.0;
  e.known.is_einstein = true;
  e.known.is_csck = true;
  e.known.is_kahler = true;
  e.known.is_flat = true;
  return e;
}

ScalarFn make_mollifier(const Vec4d& center, double width) {
  if (width <= 0) fail(ErrorCode::InvalidArgument, "bump width must be positive");
  return make_smooth<ScalarShape>([center, width](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    T t(0.0);
    for (int i = 0; i < 4; ++i) {
      T d = x[i] - center[i];
      t += d * d;
    }
    t = t / (width * width);
    // phi(t) = exp(1 - 1/(1-t)) inside the unit ball, 0 outside; all jet
    // coefficients die off faster than any power at the support boundary
    if (value_of(t) >= 1.0 - 1e-3) return T(0.0);
    return exp(1.0 - recip(1.0 - t));
  });
}

ScalarFn make_bump(double amplitude, const Vec4d& center, double width) {
  if (amplitude <= -1.0)
    fail(ErrorCode::InvalidArgument, "bump amplitude must exceed -1");
  ScalarFn phi = make_mollifier(center, width);
  return make_smooth<ScalarShape>([phi, amplitude](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    return T(1.0) + amplitude * phi.eval<T>(x);
  });
}

std::vector<std::string> catalog_names() {
  return {"sphere4", "fubini-study", "product-1-1", "product-1-sqrt2", "flat"};
}

namespace {

double parse_radius_token(const std::string& tok) {
  if (tok == "sqrt2") return std::sqrt(2.0);
  if (tok == "sqrt3") return std::sqrt(3.0);
  try {
    std::size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size() || v <= 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "bad radius token '" + tok + "'");
  }
}

}  // namespace

CatalogEntry catalog_get(const std::string& name) {
  if (name == "sphere4") return make_sphere4(1.0);
  if (name == "fubini-study") return make_fubini_study(1.0);
  if (name == "flat") return make_flat_chart();
  if (name.rfind("product-", 0) == 0) {
    std::string rest = name.substr(8);
    auto dash = rest.find('-');
    if (dash != std::string::npos) {
      double r1 = parse_radius_token(rest.substr(0, dash));
      double r2 = parse_radius_token(rest.substr(dash + 1));
      CatalogEntry e = make_product_spheres(r1, r2);
      e.name = name;
      return e;
    }
  }
  fail(ErrorCode::NotFound, "unknown catalog entry '" + name + "'");
}

CatalogEntry conformally_scaled(const CatalogEntry& entry, const ScalarFn& u) {
  CatalogEntry out = entry;
  MetricFn base = entry.charts[0].chart.metric;
  out.charts[0].chart.metric = make_smooth<MatShape>([base, u](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    auto g = base.eval<T>(x);
    T uv = u.eval<T>(x);
    if (value_of(uv) <= 0.0)
      fail(ErrorCode::DomainError, "conformal factor must be positive");
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = g[i][j] * uv;
    return g;
  });
  out.known = KnownConstants{};
  return out;
}

CatalogEntry scaled_const(const CatalogEntry& entry, double c) {
  if (c <= 0) fail(ErrorCode::DomainError, "conformal factor must be positive");
  CatalogEntry out = entry;
  for (auto& cs : out.charts) {
    MetricFn base = cs.chart.metric;
    cs.chart.metric = make_smooth<MatShape>([base, c](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      auto g = base.eval<T>(x);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = g[i][j] * c;
      return g;
    });
  }
  if (out.known.scalar) *out.known.scalar /= c;
  if (out.known.volume) *out.known.volume *= c * c;
  if (out.known.area1) *out.known.area1 *= c;
  if (out.known.area2) *out.known.area2 *= c;
  return out;
}

namespace {

MetricFn perturb_one(const MetricFn& base, const SymFn& h, double t) {
  return make_smooth<MatShape>([base, h, t](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    auto g = base.eval<T>(x);
    auto hp = h.eval<T>(x);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g[i][j] = g[i][j] + t * hp[i][j];
    return g;
  });
}

}  // namespace

CatalogEntry metric_perturbed(const CatalogEntry& entry, const SymFn& h,
                              double t) {
  CatalogEntry out = entry;
  out.charts[0].chart.metric = perturb_one(entry.charts[0].chart.metric, h, t);
  out.known = KnownConstants{};
  return out;
}

CatalogEntry metric_perturbed(const CatalogEntry& entry, const SymField& h,
                              double t) {
  if (h.per_chart.size() != entry.charts.size())
    fail(ErrorCode::InvalidArgument, "field/atlas chart count mismatch");
  CatalogEntry out = entry;
  for (std::size_t c = 0; c < entry.charts.size(); ++c)
    out.charts[c].chart.metric =
        perturb_one(entry.charts[c].chart.metric, h.per_chart[c], t);
  out.known = KnownConstants{};
  return out;
}

std::array<double, 3> product_factor_embedding(const CatalogEntry& entry,
                                               int chart, const Vec4d& x,
                                               int factor) {
  if (entry.grid.kind != GridKind::ProductSpheres)
    fail(ErrorCode::InvalidArgument, "embeddings need a product entry");
  double r = factor == 0 ? entry.grid.r1 : entry.grid.r2;
  bool inverted = factor == 0 ? (chart & 1) : (chart & 2);
  double a = x[2 * factor], b = x[2 * factor + 1];
  double rho2 = a * a + b * b;
  double den = 1.0 / (rho2 + r * r);
  std::array<double, 3> n{2 * r * a * den, 2 * r * b * den, (rho2 - r * r) * den};
  if (inverted) {
    n[1] = -n[1];
    n[2] = -n[2];
  }
  return n;
}

SymField product_block_field(const CatalogEntry& entry,
                             const std::array<double, 7>& alpha,
                             const std::array<double, 7>& beta) {
  if (entry.grid.kind != GridKind::ProductSpheres)
    fail(ErrorCode::InvalidArgument, "block fields need a product entry");
  const double r1 = entry.grid.r1, r2 = entry.grid.r2;
  SymField out;
  for (int chart = 0; chart < int(entry.charts.size()); ++chart) {
    bool inv1 = chart & 1, inv2 = chart & 2;
    out.per_chart.push_back(make_smooth<MatShape>([=](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      // unit embedding of a stereographic factor chart into R^3; the
      // inverted chart flips the second coordinate and the pole axis
      auto embed = [](const T& a, const T& b, double r, bool inverted) {
        T r2c = a * a + b * b;
        T den = recip(r2c + r * r);
        std::array<T, 3> n{2.0 * r * (a * den), 2.0 * r * (b * den),
                           (r2c - r * r) * den};
        if (inverted) {
          n[1] = -n[1];
          n[2] = -n[2];
        }
        return n;
      };
      auto n1 = embed(x[0], x[1], r1, inv1);
      auto n2 = embed(x[2], x[3], r2, inv2);
      auto weight = [&](const std::array<double, 7>& c) {
        T w(c[0]);
        for (int i = 0; i < 3; ++i) w += c[1 + i] * n1[i] + c[4 + i] * n2[i];
        return w;
      };
      T wa = weight(alpha), wb = weight(beta);
      T f1 = round_factor(r1, x[0] * x[0] + x[1] * x[1]);
      T f2 = round_factor(r2, x[2] * x[2] + x[3] * x[3]);
      Mat4<T> h = mat_zero<T>();
      h[0][0] = wa * f1;
      h[1][1] = wa * f1;
      h[2][2] = wb * f2;
      h[3][3] = wb * f2;
      return h;
    }));
  }
  return out;
}

}  // namespace bmx
