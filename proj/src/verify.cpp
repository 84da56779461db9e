#include "bmx/verify.hpp"

#include <cmath>
#include <random>

#include "bmx/io.hpp"

namespace bmx {

namespace {

void add_check(SuiteReport& rep, const std::string& name, double value,
               double threshold, bool inverted = false) {
  CheckRow row;
  row.name = name;
  row.value = value;
  row.threshold = threshold;
  row.inverted = inverted;
  row.pass = inverted ? value >= threshold : value <= threshold;
  rep.ok = rep.ok && row.pass;
  rep.rows.push_back(row);
}

double tol_or(double tolerance, double fallback) {
  return tolerance > 0 ? tolerance : fallback;
}

void curvature_suite(SuiteReport& rep, const CatalogEntry& entry, int res,
                     double tol) {
  auto pts = sample_nodes(entry, res, 48);
  double antisym = 0, pairsym = 0, bianchi = 0, wtrace = 0, decomp = 0;
  double bach_sym = 0, bach_trace = 0, kahler_defect = 0, einstein_defect = 0;
  double bach_flat = 0;
  for (const auto& node : pts) {
    CurvatureStack st = curvature_stack(entry.charts[node.chart].chart, node.x);
    double scale = std::sqrt(std::max(1e-300, ten4_norm2(st.riemann, st.ginv)));
    auto kn = [&](const Mat4d& a, const Mat4d& b, int i, int j, int k, int l) {
      return a[i][k] * b[j][l] - a[i][l] * b[j][k] - a[j][k] * b[i][l] +
             a[j][l] * b[i][k];
    };
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double r = st.riemann[i][j][k][l];
            antisym = std::max(antisym,
                               std::abs(r + st.riemann[i][j][l][k]) / scale);
            pairsym = std::max(pairsym,
                               std::abs(r - st.riemann[k][l][i][j]) / scale);
            bianchi = std::max(
                bianchi, std::abs(st.riemann[i][j][k][l] + st.riemann[j][l][k][i] +
                                  st.riemann[l][i][k][j]) /
                             scale);
            decomp = std::max(
                decomp,
                std::abs(st.weyl[i][j][k][l] + 0.5 * kn(st.ricci0, st.g, i, j, k, l) +
                         st.scalar / 24.0 * kn(st.g, st.g, i, j, k, l) -
                         st.riemann[i][j][k][l]) /
                    scale);
          }
    for (int j = 0; j < 4; ++j)
      for (int l = 0; l < 4; ++l) {
        double tr = 0;
        for (int i = 0; i < 4; ++i)
          for (int k = 0; k < 4; ++k) tr += st.ginv[i][k] * st.weyl[i][j][k][l];
        wtrace = std::max(wtrace, std::abs(tr) / scale);
      }
    // symmetry/trace defects measured against the curvature magnitude, the
    // meaningful scale on Bach-flat entries
    double bscale = std::max({std::sqrt(sym_norm2(st.bach, st.ginv)), scale,
                              1e-300});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        bach_sym = std::max(bach_sym,
                            std::abs(st.bach[i][j] - st.bach[j][i]) / bscale);
    bach_trace = std::max(bach_trace, std::abs(trace_g(st.bach, st.ginv)) / bscale);
    if (entry.has_kahler()) {
      double expect = st.scalar * st.scalar / 24.0;
      kahler_defect = std::max(kahler_defect,
                               std::abs(st.weyl_plus_norm2 - expect) /
                                   std::max(expect, 1e-12));
    }
    if (entry.known.is_einstein) {
      einstein_defect = std::max(
          einstein_defect, std::sqrt(sym_norm2(st.ricci0, st.ginv)) /
                               std::max(1e-300, std::sqrt(sym_norm2(st.ricci, st.ginv))));
      bach_flat = std::max(bach_flat,
                           std::sqrt(sym_norm2(st.bach, st.ginv)) / scale);
    }
  }
  add_check(rep, "riemann_antisym", antisym, tol_or(tol, 1e-8));
  add_check(rep, "riemann_pair_symmetry", pairsym, tol_or(tol, 1e-8));
  add_check(rep, "first_bianchi", bianchi, tol_or(tol, 1e-8));
  add_check(rep, "weyl_trace_free", wtrace, tol_or(tol, 1e-8));
  add_check(rep, "decomposition_reassembles", decomp, tol_or(tol, 1e-9));
  add_check(rep, "bach_symmetric", bach_sym, tol_or(tol, 1e-7));
  add_check(rep, "bach_trace_free", bach_trace, tol_or(tol, 1e-7));
  if (entry.has_kahler())
    add_check(rep, "weyl_plus_norm_identity", kahler_defect, tol_or(tol, 1e-7));
  if (entry.known.is_einstein) {
    add_check(rep, "einstein_traceless_ricci", einstein_defect, tol_or(tol, 1e-8));
    add_check(rep, "einstein_bach_flat", bach_flat, tol_or(tol, 1e-7));
  }
  // divergence-freeness is fifth-order; a few points suffice
  if (entry.charts[0].chart.strategy == DiffStrategy::Jet) {
    double div_defect = 0;
    int count = 0;
    for (const auto& node : pts) {
      if (count++ >= 4) break;
      CurvatureStack st = curvature_stack(entry.charts[node.chart].chart, node.x);
      double scale = std::sqrt(std::max(1e-300, ten4_norm2(st.riemann, st.ginv)));
      double bscale =
          std::max(std::sqrt(sym_norm2(st.bach, st.ginv)), 1e-3 * scale);
      Vec4d div = bach_divergence(entry.charts[node.chart].chart, node.x);
      for (int j = 0; j < 4; ++j)
        div_defect = std::max(div_defect, std::abs(div[j]) / bscale);
    }
    add_check(rep, "bach_divergence_free", div_defect, tol_or(tol, 1e-7));
  }
}

void em_suite(SuiteReport& rep, const CatalogEntry& entry, int res, double tol) {
  auto pts = sample_nodes(entry, res, 96);
  if (entry.known.is_einstein) {
    ResidualReport zero = em_residual(with_zero_field(entry), pts);
    add_check(rep, "einstein_vacuum_residual", zero.max_normalized,
              tol_or(tol, 1e-7));
  }
  if (entry.has_kahler() && entry.known.is_csck) {
    FieldConfiguration cfg = maxwell_field_csck(entry);
    ResidualReport rr = em_residual(cfg, pts);
    add_check(rep, "csck_em_residual", rr.max_normalized, tol_or(tol, 1e-6));
    add_check(rep, "field_closed", rr.df_max, tol_or(tol, 1e-7));
    add_check(rep, "field_coclosed", rr.dstar_f_max, tol_or(tol, 1e-6));
    if (!entry.known.is_einstein) {
      ResidualReport ablation = em_residual(with_omega_only(entry), pts);
      add_check(rep, "ablation_detected", ablation.max_normalized, 1e-2, true);
    }
  }
}

void bm_suite(SuiteReport& rep, const CatalogEntry& entry, int res, double tol) {
  auto pts = sample_nodes(entry, res, 64);
  if (!entry.has_kahler()) {
    if (entry.known.is_einstein) {
      ResidualReport zero = bm_residual(with_zero_field(entry), pts);
      add_check(rep, "einstein_vacuum_residual", zero.max_normalized,
                tol_or(tol, 1e-7));
    }
    return;
  }
  FieldConfiguration ext = maxwell_field_extremal(entry);
  ResidualReport rr = bm_residual(ext, pts);
  add_check(rep, "extremal_bm_residual", rr.max_normalized, tol_or(tol, 1e-6));
  auto few = sample_nodes(entry, std::min(res, 10), 12);
  if (entry.known.is_einstein) {
    // bach vanishes, so the extremal field must collapse to the Kahler form
    double defect = 0;
    for (const auto& node : few) {
      auto a = ext.F[node.chart].eval<double>(node.x);
      auto b = omega_field(entry, node.chart).eval<double>(node.x);
      CurvatureStack st =
          curvature_stack_basic(entry.charts[node.chart].chart, node.x);
      TwoForm diff, om;
      for (int p = 0; p < 6; ++p) {
        diff.c[p] = a[p] - b[p];
        om.c[p] = b[p];
      }
      defect = std::max(defect, std::sqrt(form_norm2(diff, st.ginv)) /
                                    std::sqrt(form_norm2(om, st.ginv)));
    }
    add_check(rep, "extremal_field_is_omega", defect, tol_or(tol, 1e-7));
    auto [df, dsf] = harmonic_residual(with_omega_only(entry), few);
    add_check(rep, "field_closed", df, tol_or(tol, 1e-6));
    add_check(rep, "field_coclosed", dsf, tol_or(tol, 1e-6));
    return;
  }
  auto [df, dsf] = harmonic_residual(ext, few);
  add_check(rep, "field_closed", df, tol_or(tol, 1e-6));
  add_check(rep, "field_coclosed", dsf, tol_or(tol, 1e-6));
  if (entry.known.is_csck && entry.known.scalar) {
    double s = *entry.known.scalar;
    FieldConfiguration explicit_cfg;
    explicit_cfg.geometry = entry;
    for (int c = 0; c < int(entry.charts.size()); ++c)
      explicit_cfg.F.push_back(
          form_lincomb(omega_field(entry, c), 1.0, rho0_field(entry, c), s / 24.0));
    ResidualReport er = bm_residual(explicit_cfg, pts);
    add_check(rep, "csck_explicit_bm_residual", er.max_normalized,
              tol_or(tol, 1e-6));
    // psi pathway: bach(J.,.) vs (s/12) rho0, and anti-self-duality
    double psi_defect = 0, sd_defect = 0;
    int count = 0;
    for (const auto& node : pts) {
      if (count++ >= 16) break;
      TwoForm pv, rv;
      pv.c = psi_field(entry, node.chart).eval<double>(node.x);
      rv.c = rho0_field(entry, node.chart).eval<double>(node.x);
      CurvatureStack st =
          curvature_stack_basic(entry.charts[node.chart].chart, node.x);
      double scale =
          std::max(1e-300, std::sqrt(form_norm2(rv, st.ginv)) * std::abs(s) / 12.0);
      TwoForm diff;
      for (int p = 0; p < 6; ++p) diff.c[p] = pv.c[p] - s / 12.0 * rv.c[p];
      psi_defect = std::max(psi_defect,
                            std::sqrt(form_norm2(diff, st.ginv)) / scale);
      auto [plus, minus] = selfdual_split(pv, st.g, st.orientation);
      sd_defect = std::max(sd_defect,
                           std::sqrt(form_norm2(plus, st.ginv)) /
                               std::max(1e-300, std::sqrt(form_norm2(pv, st.ginv))));
    }
    add_check(rep, "psi_matches_scaled_ricci_form", psi_defect, tol_or(tol, 1e-7));
    add_check(rep, "psi_anti_self_dual", sd_defect, tol_or(tol, 1e-8));
  }
}

void conformal_suite(SuiteReport& rep, const CatalogEntry& entry, int res,
                     double tol, unsigned long long seed) {
  double safe = entry.charts[0].safe_radius;
  Vec4d center{0, 0, 0, 0};
  if (entry.grid.kind == GridKind::FlatTorus) center = {0.5, 0.5, 0.5, 0.5};
  ScalarFn u = make_bump(0.3, center, 0.8 * safe);
  CatalogEntry scaled = conformally_scaled(entry, u);

  auto pts = sample_nodes(entry, res, 48);
  double bach_law = 0, vol_law = 0;
  for (const auto& node : pts) {
    if (node.chart != 0) continue;
    CurvatureStack a = curvature_stack(entry.charts[0].chart, node.x);
    CurvatureStack b = curvature_stack(scaled.charts[0].chart, node.x);
    double uv = u.eval<double>(node.x);
    double scale = std::max(std::sqrt(sym_norm2(a.bach, a.ginv)),
                            1e-3 * std::sqrt(ten4_norm2(a.riemann, a.ginv)));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        bach_law = std::max(bach_law,
                            std::abs(b.bach[i][j] - a.bach[i][j] / uv) / scale);
    vol_law = std::max(vol_law, std::abs(std::sqrt(b.det) -
                                         uv * uv * std::sqrt(a.det)) /
                                    std::sqrt(a.det));
  }
  add_check(rep, "bach_conformal_law", bach_law, tol_or(tol, 1e-5));
  add_check(rep, "volume_element_law", vol_law, tol_or(tol, 1e-12));

  // star on 2-forms is unchanged under rescaling
  std::mt19937_64 rng(seed ? seed : 12345);
  auto uniform = [&rng]() { return double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  double star_defect = 0;
  for (int trial = 0; trial < 32; ++trial) {
    const QuadNode& node = pts[trial % pts.size()];
    Mat4d g = entry.charts[node.chart].chart.metric.eval<double>(node.x);
    double uv = trial % 2 ? 1.7 : u.eval<double>(node.x);
    Mat4d ug = g;
    for (auto& row : ug)
      for (double& v : row) v *= uv;
    TwoForm f;
    for (int p = 0; p < 6; ++p) f.c[p] = uniform();
    TwoForm s1 = hodge_star_2form(f, g, 1.0);
    TwoForm s2 = hodge_star_2form(f, ug, 1.0);
    for (int p = 0; p < 6; ++p)
      star_defect = std::max(star_defect, std::abs(s1.c[p] - s2.c[p]));
  }
  add_check(rep, "hodge_star_conformal_invariance", star_defect,
            tol_or(tol, 1e-12));

  double w0 = weyl_energy_numeric(entry, WeylKind::Full, res).value;
  double w1 = weyl_energy_numeric(scaled, WeylKind::Full, res).value;
  double winv = std::abs(w1 - w0) / std::max(w0, 1e-12);
  if (w0 > 1e-12)
    add_check(rep, "weyl_energy_conformal_invariance", winv, tol_or(tol, 1e-5));

  if (entry.has_kahler() && entry.known.is_csck) {
    FieldConfiguration cfg = maxwell_field_extremal(entry);
    ResidualReport before = bm_residual(cfg, pts);
    FieldConfiguration after = conformal_rescale(cfg, u);
    ResidualReport rr = bm_residual(after, pts);
    add_check(rep, "bm_solution_conformal_orbit", rr.max_normalized,
              std::max(10.0 * before.max_normalized, tol_or(tol, 1e-5)));
  }
}

}  // namespace

SuiteReport run_suite(const CatalogEntry& entry, const std::string& suite,
                      int resolution, double tolerance,
                      unsigned long long seed) {
  SuiteReport rep;
  rep.suite = suite;
  rep.entry = entry.name;
  rep.resolution = resolution;
  rep.tolerance = tolerance;
  rep.seed = seed;
  if (suite == "curvature") curvature_suite(rep, entry, resolution, tolerance);
  else if (suite == "em") em_suite(rep, entry, resolution, tolerance);
  else if (suite == "bm") bm_suite(rep, entry, resolution, tolerance);
  else if (suite == "conformal") conformal_suite(rep, entry, resolution, tolerance, seed);
  else fail(ErrorCode::NotFound, "unknown suite '" + suite + "'");
  if (rep.rows.empty())
    fail(ErrorCode::InvalidArgument,
         "suite '" + suite + "' has no applicable checks for entry '" +
             entry.name + "'");
  return rep;
}

std::string suite_to_json(const SuiteReport& rep) {
  JsonWriter w;
  w.begin_object()
      .field("suite", rep.suite)
      .field("entry", rep.entry)
      .field("resolution", rep.resolution)
      .field("tolerance", rep.tolerance);
  w.begin_array("checks");
  for (const auto& row : rep.rows) {
    w.begin_object()
        .field("name", row.name)
        .field("value", row.value)
        .field(row.inverted ? "min" : "tolerance", row.threshold)
        .field("pass", row.pass)
        .end_object();
  }
  w.end_array();
  w.field("status", rep.ok ? "ok" : "violation");
  w.end_object();
  return w.str();
}

std::string suite_to_csv(const SuiteReport& rep) {
  std::string out = csv_row({"name", "value", "threshold", "pass"});
  for (const auto& row : rep.rows)
    out += csv_row({row.name, fmt_double(row.value), fmt_double(row.threshold),
                    row.pass ? "true" : "false"});
  return out;
}

}  // namespace bmx
