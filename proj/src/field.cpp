#include "bmx/field.hpp"

#include <cmath>

#include "bmx/io.hpp"

namespace bmx {

std::string residual_to_json(const ResidualReport& rep) {
  JsonWriter w;
  w.begin_object()
      .field("max", rep.max_normalized)
      .field("rms", rep.rms_normalized)
      .field("points", rep.points)
      .field("normalized", true)
      .end_object();
  return w.str();
}

namespace {

template <class T>
std::array<T, 6> pack_form(const Mat4<T>& m) {
  std::array<T, 6> out;
  for (int p = 0; p < 6; ++p)
    out[p] = 0.5 * (m[kPairI[p]][kPairJ[p]] - m[kPairJ[p]][kPairI[p]]);
  return out;
}

template <class T>
std::array<T, 6> endo_form(const Mat4<T>& t, const Mat4d& j) {
  // psi_{ij} = J^a_i t_{aj}, antisymmetrized
  Mat4<T> psi;
  for (int i = 0; i < 4; ++i)
    for (int jj = 0; jj < 4; ++jj) {
      T acc(0.0);
      for (int a = 0; a < 4; ++a)
        if (j[a][i] != 0.0) acc += j[a][i] * t[a][jj];
      psi[i][jj] = acc;
    }
  return pack_form(psi);
}

const Mat4d& chart_J(const CatalogEntry& entry, int chart) {
  if (!entry.charts[chart].J)
    fail(ErrorCode::IncompatibleStructure,
         "entry '" + entry.name + "' has no Kahler data");
  return *entry.charts[chart].J;
}

}  // namespace

TwoFormFn omega_field(const CatalogEntry& entry, int chart) {
  Mat4d j = chart_J(entry, chart);
  MetricFn metric = entry.charts[chart].chart.metric;
  return make_smooth<Form6Shape>([metric, j](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    Mat4<T> g = metric.eval<T>(x);
    return endo_form<T>(g, j);
  });
}

TwoFormFn rho0_field(const CatalogEntry& entry, int chart) {
  Mat4d j = chart_J(entry, chart);
  MetricChart mc = entry.charts[chart].chart;
  TwoFormFn f;
  f.f0 = [mc, j](const Vec4d& x) {
    CurvatureStack st = curvature_stack_basic(mc, x);
    return endo_form<double>(st.ricci0, j);
  };
  f.f1 = [mc, j](const Vec4<Jet<1>>& x) {
    Vec4d p{x[0].value(), x[1].value(), x[2].value(), x[3].value()};
    Mat4<Jet<1>> r0 = ricci0_jet1(mc, p);
    return endo_form<Jet<1>>(r0, j);
  };
  return f;
}

TwoFormFn psi_field(const CatalogEntry& entry, int chart) {
  Mat4d j = chart_J(entry, chart);
  MetricChart mc = entry.charts[chart].chart;
  TwoFormFn f;
  f.f0 = [mc, j](const Vec4d& x) {
    CurvatureStack st = curvature_stack(mc, x);
    Mat4<double> b = st.bach;
    return endo_form<double>(b, j);
  };
  f.f1 = [mc, j](const Vec4<Jet<1>>& x) {
    Vec4d p{x[0].value(), x[1].value(), x[2].value(), x[3].value()};
    Mat4<Jet<1>> b = bach_jet1(mc, p);
    return endo_form<Jet<1>>(b, j);
  };
  return f;
}

TwoFormFn zero_form_field() {
  return make_smooth<Form6Shape>([](const auto& x) {
    using T = std::decay_t<decltype(x[0])>;
    (void)x;
    std::array<T, 6> z;
    for (auto& c : z) c = T(0.0);
    return z;
  });
}

TwoFormFn form_lincomb(const TwoFormFn& a, double ca, const TwoFormFn& b,
                       double cb) {
  TwoFormFn out;
  auto mix = [ca, cb](const auto& va, const auto& vb) {
    auto r = va;
    for (int p = 0; p < 6; ++p) r[p] = ca * va[p] + cb * vb[p];
    return r;
  };
  if (a.f0 && b.f0)
    out.f0 = [a, b, mix](const Vec4d& x) { return mix(a.f0(x), b.f0(x)); };
  if (a.f1 && b.f1)
    out.f1 = [a, b, mix](const Vec4<Jet<1>>& x) { return mix(a.f1(x), b.f1(x)); };
  if (a.f2 && b.f2)
    out.f2 = [a, b, mix](const Vec4<Jet<2>>& x) { return mix(a.f2(x), b.f2(x)); };
  if (a.f3 && b.f3)
    out.f3 = [a, b, mix](const Vec4<Jet<3>>& x) { return mix(a.f3(x), b.f3(x)); };
  if (a.f4 && b.f4)
    out.f4 = [a, b, mix](const Vec4<Jet<4>>& x) { return mix(a.f4(x), b.f4(x)); };
  if (a.f5 && b.f5)
    out.f5 = [a, b, mix](const Vec4<Jet<5>>& x) { return mix(a.f5(x), b.f5(x)); };
  return out;
}

namespace {

void require_constant_scalar(const CatalogEntry& entry) {
  auto pts = sample_nodes(entry, 8, 24);
  double mean = 0, m2 = 0;
  int n = 0;
  for (const auto& node : pts) {
    CurvatureStack st = curvature_stack_basic(entry.charts[node.chart].chart, node.x);
    ++n;
    double d = st.scalar - mean;
    mean += d / n;
    m2 += d * (st.scalar - mean);
  }
  double sd = std::sqrt(m2 / std::max(1, n - 1));
  if (sd > 1e-8 * std::max(std::abs(mean), 1e-12))
    fail(ErrorCode::DomainError,
         "scalar curvature is not constant over the sample set");
}

FieldConfiguration make_config(const CatalogEntry& entry,
                               const std::function<TwoFormFn(int)>& maker) {
  FieldConfiguration cfg;
  cfg.geometry = entry;
  for (int c = 0; c < int(entry.charts.size()); ++c) cfg.F.push_back(maker(c));
  return cfg;
}

}  // namespace

FieldConfiguration maxwell_field_csck(const CatalogEntry& entry) {
  chart_J(entry, 0);
  require_constant_scalar(entry);
  return make_config(entry, [&](int c) {
    return form_lincomb(omega_field(entry, c), 1.0, rho0_field(entry, c), 0.5);
  });
}

FieldConfiguration maxwell_field_extremal(const CatalogEntry& entry) {
  chart_J(entry, 0);
  return make_config(entry, [&](int c) {
    return form_lincomb(omega_field(entry, c), 1.0, psi_field(entry, c), 0.5);
  });
}

FieldConfiguration with_omega_only(const CatalogEntry& entry) {
  chart_J(entry, 0);
  return make_config(entry, [&](int c) { return omega_field(entry, c); });
}

FieldConfiguration with_zero_field(const CatalogEntry& entry) {
  return make_config(entry, [&](int) { return zero_form_field(); });
}

namespace {

struct PointResidual {
  double raw = 0;
  double scale = 0;
};

TwoForm eval_form(const TwoFormFn& f, const Vec4d& x) {
  TwoForm out;
  out.c = f.eval<double>(x);
  return out;
}

// |dF|_g and |d*F|_g at a point from the first-derivative slot of F
std::pair<double, double> exterior_residual(const MetricChart& chart,
                                            const TwoFormFn& f, const Vec4d& x) {
  auto xj = seed_point<Jet<1>>(x);
  std::array<Jet<1>, 6> fj = f.eval<Jet<1>>(xj);
  Mat4<Jet<1>> gj = chart.metric.eval<Jet<1>>(xj);
  std::array<Jet<1>, 6> sfj = hodge_star6<Jet<1>>(fj, gj, chart.orientation);

  Mat4d g = chart.metric.eval<double>(x);
  Mat4d ginv = inverse4(g);

  auto d_norm = [&](const std::array<Jet<1>, 6>& w) {
    // (dW)_{abc} = d_a W_{bc} - d_b W_{ac} + d_c W_{ab}
    Ten3d dw{};
    auto comp = [&](int i, int j, int axis) {
      if (i == j) return 0.0;
      double s = i < j ? 1.0 : -1.0;
      return s * partial_value(w[pair_index(i, j)], axis);
    };
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c)
          dw[a][b][c] = comp(b, c, a) - comp(a, c, b) + comp(a, b, c);
    double n = 0;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) {
          double up = 0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              for (int k = 0; k < 4; ++k)
                up += ginv[a][i] * ginv[b][j] * ginv[c][k] * dw[i][j][k];
          n += dw[a][b][c] * up;
        }
    return std::sqrt(std::max(0.0, n / 6.0));
  };
  return {d_norm(fj), d_norm(sfj)};
}

}  // namespace

std::pair<double, double> harmonic_residual(const FieldConfiguration& cfg,
                                            const std::vector<QuadNode>& points) {
  double df = 0, dsf = 0;
  for (const auto& node : points) {
    auto [a, b] = exterior_residual(cfg.geometry.charts[node.chart].chart,
                                    cfg.F[node.chart], node.x);
    df = std::max(df, a);
    dsf = std::max(dsf, b);
  }
  return {df, dsf};
}

double kahler_parallel_residual(const CatalogEntry& entry,
                                const std::vector<QuadNode>& points) {
  double worst = 0;
  for (const auto& node : points) {
    const MetricChart& chart = entry.charts[node.chart].chart;
    TwoFormFn omega = omega_field(entry, node.chart);
    auto xj = seed_point<Jet<1>>(node.x);
    std::array<Jet<1>, 6> w = omega.eval<Jet<1>>(xj);
    CurvatureStack st = curvature_stack_basic(chart, node.x);
    auto comp = [&](int i, int j) {
      if (i == j) return Jet<1>(0.0);
      double s = i < j ? 1.0 : -1.0;
      Jet<1> v = w[pair_index(i, j)];
      return s * v;
    };
    double n2 = 0;
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
          double nab = partial_value(comp(i, j), a);
          for (int m = 0; m < 4; ++m)
            nab -= st.christoffel[m][a][i] * value_of(comp(m, j)) +
                   st.christoffel[m][a][j] * value_of(comp(i, m));
          // raise all three slots
          double up = 0;
          for (int aa = 0; aa < 4; ++aa)
            for (int ii = 0; ii < 4; ++ii)
              for (int jj = 0; jj < 4; ++jj) {
                double nab2 = partial_value(comp(ii, jj), aa);
                for (int m = 0; m < 4; ++m)
                  nab2 -= st.christoffel[m][aa][ii] * value_of(comp(m, jj)) +
                          st.christoffel[m][aa][jj] * value_of(comp(ii, m));
                up += st.ginv[a][aa] * st.ginv[i][ii] * st.ginv[j][jj] * nab2;
              }
          n2 += nab * up;
        }
    TwoForm om;
    for (int p = 0; p < 6; ++p) om.c[p] = value_of(w[p]);
    double omega_norm = std::sqrt(form_norm2(om, st.ginv));
    worst = std::max(worst, std::sqrt(std::max(0.0, 0.5 * n2)) /
                                std::max(omega_norm, 1e-300));
  }
  return worst;
}

namespace {

ResidualReport residual_impl(const FieldConfiguration& cfg,
                             const std::vector<QuadNode>& points, bool bm) {
  ResidualReport rep;
  rep.points = int(points.size());
  double sum_sq = 0, sum_scale = 0, sum_riem = 0;
  for (const auto& node : points) {
    const MetricChart& chart = cfg.geometry.charts[node.chart].chart;
    CurvatureStack st =
        bm ? curvature_stack(chart, node.x) : curvature_stack_basic(chart, node.x);
    TwoForm f = eval_form(cfg.F[node.chart], node.x);
    Mat4d fof = f_compose_f(f, st.ginv);
    Mat4d e;
    if (bm) {
      Mat4d tf = trace_free_part(fof, st.g, st.ginv);
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) e[i][j] = st.bach[i][j] + tf[i][j];
      sum_scale += std::max(std::sqrt(sym_norm2(st.bach, st.ginv)),
                            std::sqrt(sym_norm2(tf, st.ginv)));
    } else {
      Mat4d sum;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) sum[i][j] = st.ricci[i][j] + fof[i][j];
      e = trace_free_part(sum, st.g, st.ginv);
      sum_scale += std::sqrt(sym_norm2(st.ricci, st.ginv));
    }
    sum_riem += std::sqrt(ten4_norm2(st.riemann, st.ginv));
    double r = std::sqrt(sym_norm2(e, st.ginv));
    rep.max_raw = std::max(rep.max_raw, r);
    sum_sq += r * r;
  }
  rep.rms_raw = std::sqrt(sum_sq / std::max(1, rep.points));
  double scale = sum_scale / std::max(1, rep.points);
  double riem_scale = sum_riem / std::max(1, rep.points);
  // near-vacuous configurations (both sides of the equation tiny) are
  // normalized by the curvature magnitude instead
  if (scale < 1e-6 * std::max(riem_scale, 1e-300)) scale = riem_scale;
  rep.scale = scale;
  if (scale > 0) {
    rep.max_normalized = rep.max_raw / scale;
    rep.rms_normalized = rep.rms_raw / scale;
  } else {
    rep.max_normalized = rep.max_raw;
    rep.rms_normalized = rep.rms_raw;
  }
  auto [df, dsf] = harmonic_residual(cfg, points);
  rep.df_max = df;
  rep.dstar_f_max = dsf;
  return rep;
}

}  // namespace

ResidualReport em_residual(const FieldConfiguration& cfg,
                           const std::vector<QuadNode>& points) {
  return residual_impl(cfg, points, false);
}

ResidualReport bm_residual(const FieldConfiguration& cfg,
                           const std::vector<QuadNode>& points) {
  return residual_impl(cfg, points, true);
}

FieldConfiguration conformal_rescale(const FieldConfiguration& cfg,
                                     const ScalarFn& u) {
  FieldConfiguration out;
  out.geometry = conformally_scaled(cfg.geometry, u);
  out.F = cfg.F;
  return out;
}

FieldConfiguration conformal_rescale_const(const FieldConfiguration& cfg,
                                           double c) {
  FieldConfiguration out;
  out.geometry = scaled_const(cfg.geometry, c);
  out.F = cfg.F;
  return out;
}

VariationCheck weyl_first_variation_check(const CatalogEntry& entry,
                                          const SymFn& h, double t,
                                          int resolution) {
  SymField field;
  field.per_chart.push_back(h);
  for (std::size_t c = 1; c < entry.charts.size(); ++c)
    field.per_chart.push_back(make_smooth<MatShape>([](const auto& x) {
      using T = std::decay_t<decltype(x[0])>;
      (void)x;
      return mat_zero<T>();
    }));
  return weyl_first_variation_check(entry, field, t, resolution);
}

VariationCheck weyl_first_variation_check(const CatalogEntry& entry,
                                          const SymField& h, double t,
                                          int resolution) {
  CatalogEntry plus = metric_perturbed(entry, h, t);
  CatalogEntry minus = metric_perturbed(entry, h, -t);
  double wp = integrate_value(
      plus,
      [&plus](int chart, const Vec4d& x) {
        return curvature_stack_basic(plus.charts[chart].chart, x).weyl_norm2;
      },
      resolution);
  double wm = integrate_value(
      minus,
      [&minus](int chart, const Vec4d& x) {
        return curvature_stack_basic(minus.charts[chart].chart, x).weyl_norm2;
      },
      resolution);

  VariationCheck out;
  out.fd_derivative = (wp - wm) / (2.0 * t);

  // <h, B> and |h||B| in one pass
  auto sums = integrate_multi(
      entry,
      [&](int chart, const Vec4d& x, double* dst) {
        dst[0] = 0;
        dst[1] = 0;
        Mat4d hv = h.per_chart[chart].eval<double>(x);
        double hmag = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) hmag = std::max(hmag, std::abs(hv[i][j]));
        if (hmag == 0) return;
        CurvatureStack st = curvature_stack(entry.charts[chart].chart, x);
        double pair = 0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            for (int s = 0; s < 4; ++s)
              for (int tt = 0; tt < 4; ++tt)
                pair += st.ginv[i][s] * st.ginv[tt][j] * hv[s][tt] * st.bach[i][j];
        dst[0] = pair;
        dst[1] = std::sqrt(sym_norm2(hv, st.ginv)) *
                 std::sqrt(sym_norm2(st.bach, st.ginv));
      },
      2, resolution);
  out.pairing = sums[0];
  out.scale = sums[1];
  out.discrepancy = std::abs(out.fd_derivative - out.pairing);
  return out;
}

}  // namespace bmx
