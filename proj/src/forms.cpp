#include "bmx/forms.hpp"

#include <cmath>

namespace bmx {

int levi_civita(int i, int j, int k, int l) {
  static const auto table = [] {
    std::array<int, 256> t{};
    int idx[4];
    for (idx[0] = 0; idx[0] < 4; ++idx[0])
      for (idx[1] = 0; idx[1] < 4; ++idx[1])
        for (idx[2] = 0; idx[2] < 4; ++idx[2])
          for (idx[3] = 0; idx[3] < 4; ++idx[3]) {
            int sign = 1;
            bool repeat = false;
            int perm[4] = {idx[0], idx[1], idx[2], idx[3]};
            for (int a = 0; a < 4 && !repeat; ++a)
              for (int b = a + 1; b < 4; ++b) {
                if (perm[a] == perm[b]) {
                  repeat = true;
                  break;
                }
                if (perm[a] > perm[b]) sign = -sign;
              }
            t[((idx[0] * 4 + idx[1]) * 4 + idx[2]) * 4 + idx[3]] =
                repeat ? 0 : sign;
          }
    return t;
  }();
  return table[((i * 4 + j) * 4 + k) * 4 + l];
}

Mat4d f_compose_f(const TwoForm& f, const Mat4d& ginv) {
  Mat4d fm = f.matrix();
  Mat4d out = mat_zero<double>();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double v = 0;
      for (int s = 0; s < 4; ++s)
        for (int t = 0; t < 4; ++t) v += fm[i][s] * ginv[s][t] * fm[t][j];
      out[i][j] = v;
    }
  return out;
}

double trace_g(const Mat4d& t, const Mat4d& ginv) {
  double tr = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) tr += ginv[i][j] * t[i][j];
  return tr;
}

Mat4d trace_free_part(const Mat4d& t, const Mat4d& g, const Mat4d& ginv) {
  double tr = trace_g(t, ginv);
  Mat4d out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = t[i][j] - 0.25 * tr * g[i][j];
  return out;
}

double sym_norm2(const Mat4d& t, const Mat4d& ginv) {
  double n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          n += t[i][j] * t[k][l] * ginv[i][k] * ginv[j][l];
  return n;
}

double form_norm2(const TwoForm& f, const Mat4d& ginv) {
  Mat4d fm = f.matrix();
  double n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l)
          n += fm[i][j] * fm[k][l] * ginv[i][k] * ginv[j][l];
  return 0.5 * n;
}

double ten4_norm2(const Ten4d& t, const Mat4d& ginv) {
  // raise one slot at a time, then contract against the original
  Ten4d a = t, b;
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double v = 0;
            for (int m = 0; m < 4; ++m) v += ginv[m][l] * a[i][j][k][m];
            b[l][i][j][k] = v;
          }
    a = b;
  }
  double n = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) n += a[i][j][k][l] * t[i][j][k][l];
  return n;
}

template <class T>
std::array<T, 6> hodge_star6(const std::array<T, 6>& f, const Mat4<T>& g,
                             double orientation) {
  T det;
  Mat4<T> ginv = inverse4(g, &det);
  T vol = sqrt(det) * orientation;
  // raise both indices
  Mat4<T> fm;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) fm[i][j] = T(0.0);
  for (int p = 0; p < 6; ++p) {
    fm[kPairI[p]][kPairJ[p]] = f[p];
    fm[kPairJ[p]][kPairI[p]] = -f[p];
  }
  Mat4<T> fup;
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      T v(0.0);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) v += ginv[k][a] * ginv[l][b] * fm[a][b];
      fup[k][l] = v;
    }
  std::array<T, 6> out;
  for (int p = 0; p < 6; ++p) {
    int i = kPairI[p], j = kPairJ[p];
    T v(0.0);
    for (int k = 0; k < 4; ++k)
      for (int l = 0; l < 4; ++l) {
        int e = levi_civita(i, j, k, l);
        if (e != 0) v += double(e) * fup[k][l];
      }
    out[p] = v * vol * 0.5;
  }
  return out;
}

template std::array<double, 6> hodge_star6<double>(const std::array<double, 6>&,
                                                   const Mat4<double>&, double);
template std::array<Jet<1>, 6> hodge_star6<Jet<1>>(const std::array<Jet<1>, 6>&,
                                                   const Mat4<Jet<1>>&, double);

TwoForm hodge_star_2form(const TwoForm& f, const Mat4d& g, double orientation) {
  TwoForm out;
  out.c = hodge_star6<double>(f.c, g, orientation);
  return out;
}

std::pair<TwoForm, TwoForm> selfdual_split(const TwoForm& f, const Mat4d& g,
                                           double orientation) {
  TwoForm sf = hodge_star_2form(f, g, orientation);
  TwoForm plus, minus;
  for (int p = 0; p < 6; ++p) {
    plus.c[p] = 0.5 * (f.c[p] + sf.c[p]);
    minus.c[p] = 0.5 * (f.c[p] - sf.c[p]);
  }
  return {plus, minus};
}

TwoForm two_form_from_endo(const Mat4d& t, const Mat4d& j, const Mat4d& g,
                           double tol) {
  // J^2 = -id
  double jscale = 0, defect = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = 0;
      for (int m = 0; m < 4; ++m) v += j[a][m] * j[m][b];
      defect = std::max(defect, std::abs(v + (a == b ? 1.0 : 0.0)));
      jscale = std::max(jscale, std::abs(j[a][b]));
    }
  if (defect > tol * std::max(1.0, jscale * jscale))
    fail(ErrorCode::IncompatibleStructure, "J^2 != -id");
  // g(J., J.) = g
  double gscale = 0, gdefect = 0;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      double v = 0;
      for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) v += g[m][n] * j[m][a] * j[n][b];
      gdefect = std::max(gdefect, std::abs(v - g[a][b]));
      gscale = std::max(gscale, std::abs(g[a][b]));
    }
  if (gdefect > tol * std::max(gscale, 1e-300))
    fail(ErrorCode::IncompatibleStructure, "J is not g-orthogonal");

  Mat4d psi;
  for (int i = 0; i < 4; ++i)
    for (int jj = 0; jj < 4; ++jj) {
      double v = 0;
      for (int a = 0; a < 4; ++a) v += j[a][i] * t[a][jj];
      psi[i][jj] = v;
    }
  return TwoForm::from_matrix(psi);
}

Frame orthonormal_frame(const Mat4d& g) {
  // Cholesky g = L L^T; frame = L^{-T} has positive determinant, so the
  // frame orientation matches the chart orientation.
  Mat4d l = mat_zero<double>();
  for (int k = 0; k < 4; ++k) {
    double d = g[k][k];
    for (int i = 0; i < k; ++i) d -= l[k][i] * l[k][i];
    if (d <= 0) fail(ErrorCode::NotPositiveDefinite, "frame: metric not PD");
    l[k][k] = std::sqrt(d);
    for (int r = k + 1; r < 4; ++r) {
      double v = g[r][k];
      for (int i = 0; i < k; ++i) v -= l[r][i] * l[k][i];
      l[r][k] = v / l[k][k];
    }
  }
  // invert lower-triangular L
  Mat4d linv = mat_zero<double>();
  for (int i = 0; i < 4; ++i) {
    linv[i][i] = 1.0 / l[i][i];
    for (int r = i + 1; r < 4; ++r) {
      double v = 0;
      for (int m = i; m < r; ++m) v += l[r][m] * linv[m][i];
      linv[r][i] = -v / l[r][r];
    }
  }
  Frame fr;
  // e_a^i = (L^{-T})[i][a] = linv[a][i]
  for (int i = 0; i < 4; ++i)
    for (int a = 0; a < 4; ++a) {
      fr.frame[i][a] = linv[a][i];
      fr.coframe[a][i] = l[i][a];
    }
  return fr;
}

namespace {

// star on the orthonormal pair basis (01,02,03,12,13,23)
constexpr int kStarPair[6] = {5, 4, 3, 2, 1, 0};
constexpr double kStarSign[6] = {1, -1, 1, 1, -1, 1};

}  // namespace

WeylSplit weyl_split(const Ten4d& w, const Mat4d& g, double orientation) {
  Frame fr = orthonormal_frame(g);
  // transform to the frame one slot at a time
  Ten4d a = w, b;
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double v = 0;
            for (int m = 0; m < 4; ++m) v += fr.frame[m][l] * a[i][j][k][m];
            b[l][i][j][k] = v;  // rotate slots so one loop body serves all four
          }
    a = b;
  }
  // operator matrix on the pair basis
  double m6[6][6];
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q)
      m6[p][q] = a[kPairI[p]][kPairJ[p]][kPairI[q]][kPairJ[q]];

  const bool flip = orientation < 0;
  auto star_p = [&](int p) { return kStarPair[p]; };
  auto star_s = [&](int p) { return flip ? -kStarSign[p] : kStarSign[p]; };

  double plus6[6][6], minus6[6][6], cross = 0;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      // P+- M P+- with P+- = (Id +- S)/2
      double mm = m6[p][q];
      double ms = star_s(q) * m6[p][star_p(q)];
      double sm = star_s(p) * m6[star_p(p)][q];
      double ss = star_s(p) * star_s(q) * m6[star_p(p)][star_p(q)];
      plus6[p][q] = 0.25 * (mm + ms + sm + ss);
      minus6[p][q] = 0.25 * (mm - ms - sm + ss);
      double c1 = 0.25 * (mm - ms + sm - ss);
      double c2 = 0.25 * (mm + ms - sm - ss);
      cross += c1 * c1 + c2 * c2;
    }

  WeylSplit out;
  out.cross_norm2 = cross;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      out.norm2 += m6[p][q] * m6[p][q];
      out.plus_norm2 += plus6[p][q] * plus6[p][q];
      out.minus_norm2 += minus6[p][q] * minus6[p][q];
    }

  // rebuild (0,4) tensors in frame indices, then return to chart indices
  auto rebuild = [&](const double part6[6][6], Ten4d& dst) {
    Ten4d f{};
    for (int p = 0; p < 6; ++p)
      for (int q = 0; q < 6; ++q) {
        double v = part6[p][q];
        int i = kPairI[p], j = kPairJ[p], k = kPairI[q], l = kPairJ[q];
        f[i][j][k][l] = v;
        f[j][i][k][l] = -v;
        f[i][j][l][k] = -v;
        f[j][i][l][k] = v;
      }
    Ten4d t = f, s;
    for (int slot = 0; slot < 4; ++slot) {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
          for (int k = 0; k < 4; ++k)
            for (int l = 0; l < 4; ++l) {
              double v = 0;
              for (int m = 0; m < 4; ++m) v += fr.coframe[m][l] * t[i][j][k][m];
              s[l][i][j][k] = v;
            }
      t = s;
    }
    dst = t;
  };
  rebuild(plus6, out.plus);
  rebuild(minus6, out.minus);
  return out;
}

}  // namespace bmx
