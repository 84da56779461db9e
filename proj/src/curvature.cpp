#include "bmx/curvature.hpp"

#include <cmath>
#include <memory>

namespace bmx {

namespace {

template <int M>
struct Pipeline {
  static_assert(M >= 2);
  static constexpr int K = M - 2;  // curvature jet order
  Mat4<Jet<M>> g, ginv;
  Ten3<Jet<M - 1>> gamma;  // gamma[k][i][j]
  Ten4<Jet<K>> riem;
  Mat4<Jet<K>> ricci, ricci0;
  Jet<K> scalar;
  Ten4<Jet<K>> weyl;
};

template <int A, int B>
Mat4<Jet<A>> trunc_mat(const Mat4<Jet<B>>& m) {
  Mat4<Jet<A>> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = truncate<A>(m[i][j]);
  return out;
}

template <int M>
Pipeline<M> run_pipeline(const MetricChart& chart, const Vec4d& x) {
  constexpr int K = M - 2;
  Pipeline<M> p;
  p.g = metric_jet<M>(chart, x);
  p.ginv = inverse4(p.g);

  // Christoffel symbols, one derivative down
  auto ginv1 = trunc_mat<M - 1>(p.ginv);
  std::array<Mat4<Jet<M - 1>>, 4> dg;  // dg[a][i][j] = d_a g_ij
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) dg[a][i][j] = partial(p.g[i][j], a);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = i; j < 4; ++j) {
        Jet<M - 1> acc(0.0);
        for (int l = 0; l < 4; ++l)
          acc += ginv1[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        p.gamma[k][i][j] = 0.5 * acc;
        p.gamma[k][j][i] = p.gamma[k][i][j];
      }

  // R^m_{ijl} = d_i Gamma^m_{jl} - d_j Gamma^m_{il}
  //           + Gamma^m_{ia} Gamma^a_{jl} - Gamma^m_{ja} Gamma^a_{il}
  Ten3<Jet<K>> gamma2;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gamma2[k][i][j] = truncate<K>(p.gamma[k][i][j]);
  auto g2 = trunc_mat<K>(p.g);
  auto ginv2 = trunc_mat<K>(p.ginv);

  // R^m_{ijl} is antisymmetric in (i, j) by the formula itself
  Ten4<Jet<K>> rmixed{};
  for (int m = 0; m < 4; ++m)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int l = 0; l < 4; ++l) {
          Jet<K> acc = partial(p.gamma[m][j][l], i) - partial(p.gamma[m][i][l], j);
          for (int a = 0; a < 4; ++a)
            acc += gamma2[m][i][a] * gamma2[a][j][l] -
                   gamma2[m][j][a] * gamma2[a][i][l];
          rmixed[m][i][j][l] = acc;
          rmixed[m][j][i][l] = -acc;
        }
  // riem[i][j][k][l] = <R(d_i,d_j) d_l, d_k>
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          Jet<K> acc(0.0);
          for (int m = 0; m < 4; ++m) acc += g2[k][m] * rmixed[m][i][j][l];
          p.riem[i][j][k][l] = acc;
          p.riem[j][i][k][l] = -acc;
        }
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) p.riem[i][i][k][l] = Jet<K>(0.0);

  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) {
      Jet<K> acc(0.0);
      for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) acc += ginv2[i][k] * p.riem[i][j][k][l];
      p.ricci[j][l] = acc;
    }
  p.scalar = Jet<K>(0.0);
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l) p.scalar += ginv2[j][l] * p.ricci[j][l];
  for (int j = 0; j < 4; ++j)
    for (int l = 0; l < 4; ++l)
      p.ricci0[j][l] = p.ricci[j][l] - 0.25 * (p.scalar * g2[j][l]);

  // Weyl part of the curvature
  auto kn = [](const Mat4<Jet<K>>& a, const Mat4<Jet<K>>& b, int i, int j,
               int k, int l) {
    return a[i][k] * b[j][l] - a[i][l] * b[j][k] - a[j][k] * b[i][l] +
           a[j][l] * b[i][k];
  };
  // the subtracted wedge products share riem's formula-level antisymmetries
  for (int i = 0; i < 4; ++i)
    for (int jj = 0; jj < 4; ++jj)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) p.weyl[i][jj][k][l] = Jet<K>(0.0);
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = k + 1; l < 4; ++l) {
          Jet<K> term = p.riem[i][j][k][l];
          term -= 0.5 * kn(p.ricci0, g2, i, j, k, l);
          term -= (1.0 / 24.0) * (p.scalar * kn(g2, g2, i, j, k, l));
          p.weyl[i][j][k][l] = term;
          p.weyl[j][i][k][l] = -term;
          p.weyl[i][j][l][k] = -term;
          p.weyl[j][i][l][k] = term;
        }
  return p;
}

/// Bach tensor at jet order M-4 from an order-M pipeline.
template <int M>
Mat4<Jet<M - 4>> assemble_bach(const Pipeline<M>& p) {
  static_assert(M >= 4);
  constexpr int N1 = M - 3;  // order of nabla W
  constexpr int N2 = M - 4;  // order of nabla nabla W and bach

  Ten3<Jet<N1>> gamma3;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gamma3[k][i][j] = truncate<N1>(p.gamma[k][i][j]);
  Ten4<Jet<N1>> w3;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) w3[i][j][k][l] = truncate<N1>(p.weyl[i][j][k][l]);

  // nablaW[a][i][j][k][l] = (grad_a W)_{ijkl}; the covariant derivative
  // inherits W's pair antisymmetries identically, so compute i<j, k<l
  using T5 = std::array<Ten4<Jet<N1>>, 4>;
  auto nablaW = std::make_unique<T5>();
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = k + 1; l < 4; ++l) {
            Jet<N1> acc = partial(p.weyl[i][j][k][l], a);
            for (int m = 0; m < 4; ++m)
              acc -= gamma3[m][a][i] * w3[m][j][k][l] +
                     gamma3[m][a][j] * w3[i][m][k][l] +
                     gamma3[m][a][k] * w3[i][j][m][l] +
                     gamma3[m][a][l] * w3[i][j][k][m];
            (*nablaW)[a][i][j][k][l] = acc;
            (*nablaW)[a][j][i][k][l] = -acc;
            (*nablaW)[a][i][j][l][k] = -acc;
            (*nablaW)[a][j][i][l][k] = acc;
          }

  Ten3<Jet<N2>> gamma4;
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gamma4[k][i][j] = truncate<N2>(p.gamma[k][i][j]);
  auto nw4 = std::make_unique<std::array<Ten4<Jet<N2>>, 4>>();
  for (int a = 0; a < 4; ++a)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            (*nw4)[a][i][j][k][l] = truncate<N2>((*nablaW)[a][i][j][k][l]);

  // (grad_b grad_a W)_{ijkl}, same inherited pair antisymmetries
  using T6 = std::array<std::array<Ten4<Jet<N2>>, 4>, 4>;
  auto n2w = std::make_unique<T6>();
  for (int b = 0; b < 4; ++b)
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = k + 1; l < 4; ++l) {
              Jet<N2> acc = partial((*nablaW)[a][i][j][k][l], b);
              for (int m = 0; m < 4; ++m)
                acc -= gamma4[m][b][a] * (*nw4)[m][i][j][k][l] +
                       gamma4[m][b][i] * (*nw4)[a][m][j][k][l] +
                       gamma4[m][b][j] * (*nw4)[a][i][m][k][l] +
                       gamma4[m][b][k] * (*nw4)[a][i][j][m][l] +
                       gamma4[m][b][l] * (*nw4)[a][i][j][k][m];
              (*n2w)[b][a][i][j][k][l] = acc;
              (*n2w)[b][a][j][i][k][l] = -acc;
              (*n2w)[b][a][i][j][l][k] = -acc;
              (*n2w)[b][a][j][i][l][k] = acc;
            }

  auto ginv4 = trunc_mat<N2>(p.ginv);
  Mat4<Jet<N2>> ricci4;
  Ten4<Jet<N2>> w4;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ricci4[i][j] = truncate<N2>(p.ricci[i][j]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) w4[i][j][k][l] = truncate<N2>(p.weyl[i][j][k][l]);

  // Double divergence of Weyl plus its Ricci contraction,
  //   g^{sa} g^{tb} [ (grad_a grad_b W)_{isjt} + (1/2) r_{ab} W_{isjt} ],
  // normalized (factor 1/2) so that Kahler surfaces satisfy
  // bach = (1/12)(s ricci0 + 2 hess0 s). With this normalization the first
  // variation of the Weyl energy integral |W|^2 dmu is <h, -2 bach> dmu;
  // the conformal law bach(u g) = bach(g)/u and Einstein => bach = 0 are
  // normalization-independent.
  Mat4<Jet<N2>> bach;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Jet<N2> acc(0.0);
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t)
          for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
              acc += ginv4[s][a] * ginv4[t][b] *
                     ((*n2w)[a][b][i][s][j][t] +
                      0.5 * (ricci4[a][b] * w4[i][s][j][t]));
            }
      bach[i][j] = 0.5 * acc;
    }
  return bach;
}

template <int M, bool WithBach>
CurvatureStack stack_from_pipeline(const MetricChart& chart, const Pipeline<M>& p) {
  CurvatureStack st;
  st.orientation = chart.orientation;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      st.g[i][j] = value_of(p.g[i][j]);
      st.ginv[i][j] = value_of(p.ginv[i][j]);
      st.ricci[i][j] = value_of(p.ricci[i][j]);
      st.ricci0[i][j] = value_of(p.ricci0[i][j]);
    }
  st.det = det4(st.g);
  st.scalar = value_of(p.scalar);
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) st.christoffel[k][i][j] = value_of(p.gamma[k][i][j]);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) {
          st.riemann[i][j][k][l] = value_of(p.riem[i][j][k][l]);
          st.weyl[i][j][k][l] = value_of(p.weyl[i][j][k][l]);
        }
  WeylSplit split = weyl_split(st.weyl, st.g, st.orientation);
  st.weyl_plus = split.plus;
  st.weyl_minus = split.minus;
  st.weyl_norm2 = split.norm2;
  st.weyl_plus_norm2 = split.plus_norm2;
  st.weyl_minus_norm2 = split.minus_norm2;
  if constexpr (WithBach) {
    auto bach = assemble_bach<M>(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) st.bach[i][j] = value_of(bach[i][j]);
    st.has_bach = true;
  }
  return st;
}

}  // namespace

CurvatureStack curvature_stack(const MetricChart& chart, const Vec4d& x) {
  auto p = run_pipeline<4>(chart, x);
  return stack_from_pipeline<4, true>(chart, p);
}

CurvatureStack curvature_stack_basic(const MetricChart& chart, const Vec4d& x) {
  auto p = run_pipeline<2>(chart, x);
  return stack_from_pipeline<2, false>(chart, p);
}

Mat4<Jet<1>> bach_jet1(const MetricChart& chart, const Vec4d& x) {
  auto p = run_pipeline<5>(chart, x);
  return assemble_bach<5>(p);
}

Vec4d bach_divergence(const MetricChart& chart, const Vec4d& x) {
  auto p = run_pipeline<5>(chart, x);
  auto bach = assemble_bach<5>(p);
  Mat4d ginv, bval;
  Ten3d gam;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      ginv[i][j] = value_of(p.ginv[i][j]);
      bval[i][j] = value_of(bach[i][j]);
    }
  for (int k = 0; k < 4; ++k)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) gam[k][i][j] = value_of(p.gamma[k][i][j]);
  Vec4d div{0, 0, 0, 0};
  for (int j = 0; j < 4; ++j) {
    double acc = 0;
    for (int a = 0; a < 4; ++a)
      for (int i = 0; i < 4; ++i) {
        double nab = partial_value(bach[i][j], a);
        for (int m = 0; m < 4; ++m)
          nab -= gam[m][a][i] * bval[m][j] + gam[m][a][j] * bval[i][m];
        acc += ginv[a][i] * nab;
      }
    div[j] = acc;
  }
  return div;
}

Mat4<Jet<1>> ricci0_jet1(const MetricChart& chart, const Vec4d& x) {
  auto p = run_pipeline<3>(chart, x);
  return p.ricci0;
}

Jet<1> scalar_jet1(const MetricChart& chart, const Vec4d& x) {
  auto p = run_pipeline<3>(chart, x);
  return p.scalar;
}

Mat4d bach_kahler_formula(double s, const Mat4d& ricci0, const Mat4d& hess0_s,
                          const Mat4d& g, const Mat4d& ginv, double tol) {
  auto check_trace_free = [&](const Mat4d& t, const char* what) {
    double tr = std::abs(trace_g(t, ginv));
    double scale = std::sqrt(sym_norm2(t, ginv));
    if (tr > tol * std::max(scale, 1e-12))
      fail(ErrorCode::InvalidArgument,
           std::string(what) + " input is not trace-free");
  };
  check_trace_free(ricci0, "ricci0");
  check_trace_free(hess0_s, "hess0_s");
  (void)g;
  Mat4d out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[i][j] = (s * ricci0[i][j] + 2.0 * hess0_s[i][j]) / 12.0;
  return out;
}

}  // namespace bmx
