#pragma once

#include <array>
#include <functional>

#include "bmx/jet.hpp"

namespace bmx {

template <class T>
using Vec4 = std::array<T, 4>;
template <class T>
using Mat4 = std::array<std::array<T, 4>, 4>;

using Vec4d = Vec4<double>;
using Mat4d = Mat4<double>;

template <class T>
Mat4<T> mat_zero() {
  Mat4<T> m;
  for (auto& row : m)
    for (auto& v : row) v = T(0.0);
  return m;
}

inline Mat4d mat_identity() {
  Mat4d m = mat_zero<double>();
  for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
  return m;
}

/// Determinant by cofactor expansion; works for double and jet scalars.
template <class T>
T det4(const Mat4<T>& m) {
  auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };
  return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
         m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

/// Inverse via adjugate. Caller guarantees invertibility (metric use).
template <class T>
Mat4<T> inverse4(const Mat4<T>& m, T* det_out = nullptr) {
  auto minor3 = [&](int r, int c) {
    int rs[3], cs[3], ri = 0, ci = 0;
    for (int i = 0; i < 4; ++i)
      if (i != r) rs[ri++] = i;
    for (int j = 0; j < 4; ++j)
      if (j != c) cs[ci++] = j;
    return m[rs[0]][cs[0]] *
               (m[rs[1]][cs[1]] * m[rs[2]][cs[2]] - m[rs[1]][cs[2]] * m[rs[2]][cs[1]]) -
           m[rs[0]][cs[1]] *
               (m[rs[1]][cs[0]] * m[rs[2]][cs[2]] - m[rs[1]][cs[2]] * m[rs[2]][cs[0]]) +
           m[rs[0]][cs[2]] *
               (m[rs[1]][cs[0]] * m[rs[2]][cs[1]] - m[rs[1]][cs[1]] * m[rs[2]][cs[0]]);
  };
  Mat4<T> adj;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      T mm = minor3(r, c);
      adj[c][r] = ((r + c) % 2 == 0) ? mm : -mm;
    }
  T det = m[0][0] * adj[0][0] + m[0][1] * adj[1][0] + m[0][2] * adj[2][0] +
          m[0][3] * adj[3][0];
  if (det_out) *det_out = det;
  T inv_det = T(1.0) / det;
  Mat4<T> out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = adj[r][c] * inv_det;
  return out;
}

/// Seeds a chart point for evaluation at scalar type T (double passes
/// through, jets become coordinate variables).
template <class T>
Vec4<T> seed_point(const Vec4d& x) {
  if constexpr (std::is_same_v<T, double>) {
    return x;
  } else {
    Vec4<T> p;
    for (int i = 0; i < 4; ++i) p[i] = T::variable(i, x[i]);
    return p;
  }
}

// Result shapes for erased smooth functions.
template <class T>
using ScalarShape = T;
template <class T>
using MatShape = Mat4<T>;
template <class T>
using Form6Shape = std::array<T, 6>;  // 2-form components, (ij) in pair order

/// Index pairs of the 2-form component order (01,02,03,12,13,23).
inline constexpr int kPairI[6] = {0, 0, 0, 1, 1, 2};
inline constexpr int kPairJ[6] = {1, 2, 3, 2, 3, 3};
inline int pair_index(int i, int j) {
  static constexpr int tab[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
  return tab[i][j];
}

/// A smooth map from chart points to Shape<T>, type-erased per jet order.
/// Slots may be left empty when a caller never needs that order.
template <template <class> class Shape>
struct SmoothFn {
  std::function<Shape<double>(const Vec4<double>&)> f0;
  std::function<Shape<Jet<1>>(const Vec4<Jet<1>>&)> f1;
  std::function<Shape<Jet<2>>(const Vec4<Jet<2>>&)> f2;
  std::function<Shape<Jet<3>>(const Vec4<Jet<3>>&)> f3;
  std::function<Shape<Jet<4>>(const Vec4<Jet<4>>&)> f4;
  std::function<Shape<Jet<5>>(const Vec4<Jet<5>>&)> f5;

  template <class T>
  Shape<T> eval(const Vec4<T>& x) const {
    const auto& slot = [&]() -> const auto& {
      if constexpr (std::is_same_v<T, double>) return f0;
      else if constexpr (std::is_same_v<T, Jet<1>>) return f1;
      else if constexpr (std::is_same_v<T, Jet<2>>) return f2;
      else if constexpr (std::is_same_v<T, Jet<3>>) return f3;
      else if constexpr (std::is_same_v<T, Jet<4>>) return f4;
      else return f5;
    }();
    if (!slot) fail(ErrorCode::Unsupported, "smooth function: order not provided");
    return slot(x);
  }

  explicit operator bool() const { return bool(f0); }
};

using ScalarFn = SmoothFn<ScalarShape>;
using MetricFn = SmoothFn<MatShape>;
using SymFn = SmoothFn<MatShape>;
using TwoFormFn = SmoothFn<Form6Shape>;

/// Builds a SmoothFn from one generic callable, instantiated at all orders.
template <template <class> class Shape, class F>
SmoothFn<Shape> make_smooth(F f) {
  SmoothFn<Shape> s;
  s.f0 = [f](const Vec4<double>& x) { return f(x); };
  s.f1 = [f](const Vec4<Jet<1>>& x) { return f(x); };
  s.f2 = [f](const Vec4<Jet<2>>& x) { return f(x); };
  s.f3 = [f](const Vec4<Jet<3>>& x) { return f(x); };
  s.f4 = [f](const Vec4<Jet<4>>& x) { return f(x); };
  s.f5 = [f](const Vec4<Jet<5>>& x) { return f(x); };
  return s;
}

}  // namespace bmx
