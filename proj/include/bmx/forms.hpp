#pragma once

#include "bmx/geom.hpp"

namespace bmx {

template <class T>
using Ten3 = std::array<std::array<std::array<T, 4>, 4>, 4>;
template <class T>
using Ten4 = std::array<std::array<std::array<std::array<T, 4>, 4>, 4>, 4>;
using Ten3d = Ten3<double>;
using Ten4d = Ten4<double>;

/// Antisymmetric 2-tensor at a point, stored as the six independent
/// components F_{ij} for (ij) in (01,02,03,12,13,23).
struct TwoForm {
  std::array<double, 6> c{};

  double operator()(int i, int j) const {
    if (i == j) return 0.0;
    double s = i < j ? 1.0 : -1.0;
    return s * c[pair_index(i, j)];
  }

  Mat4d matrix() const {
    Mat4d m = mat_zero<double>();
    for (int p = 0; p < 6; ++p) {
      m[kPairI[p]][kPairJ[p]] = c[p];
      m[kPairJ[p]][kPairI[p]] = -c[p];
    }
    return m;
  }

  static TwoForm from_matrix(const Mat4d& m) {
    TwoForm f;
    for (int p = 0; p < 6; ++p)
      f.c[p] = 0.5 * (m[kPairI[p]][kPairJ[p]] - m[kPairJ[p]][kPairI[p]]);
    return f;
  }

  friend TwoForm operator+(const TwoForm& a, const TwoForm& b) {
    TwoForm r;
    for (int p = 0; p < 6; ++p) r.c[p] = a.c[p] + b.c[p];
    return r;
  }
  friend TwoForm operator-(const TwoForm& a, const TwoForm& b) {
    TwoForm r;
    for (int p = 0; p < 6; ++p) r.c[p] = a.c[p] - b.c[p];
    return r;
  }
  friend TwoForm operator*(double s, const TwoForm& a) {
    TwoForm r;
    for (int p = 0; p < 6; ++p) r.c[p] = s * a.c[p];
    return r;
  }
};

/// Permutation symbol on four indices (+1/-1/0).
int levi_civita(int i, int j, int k, int l);

/// (F o F)_{ij} = F_i^s F_{sj}, the endomorphism square with the index
/// raised by g. Symmetric for any 2-form.
Mat4d f_compose_f(const TwoForm& f, const Mat4d& ginv);

/// T minus its g-trace part: T - (tr_g T / 4) g.
Mat4d trace_free_part(const Mat4d& t, const Mat4d& g, const Mat4d& ginv);

double trace_g(const Mat4d& t, const Mat4d& ginv);

/// Full contraction norm |T|^2 = T_{ij} T^{ij} of a (0,2)-tensor.
double sym_norm2(const Mat4d& t, const Mat4d& ginv);

/// 2-form norm |F|^2 = (1/2) F_{ij} F^{ij} (unit simple forms have norm 1).
double form_norm2(const TwoForm& f, const Mat4d& ginv);

/// Full contraction T_{ijkl} T^{ijkl} of a (0,4)-tensor.
double ten4_norm2(const Ten4d& t, const Mat4d& ginv);

/// Pointwise Hodge star on 2-forms, (*F)_{ij} = (sqrt(det g)/2) orientation
/// eps_{ijkl} F^{kl}. Generic over double/jet scalars.
template <class T>
std::array<T, 6> hodge_star6(const std::array<T, 6>& f, const Mat4<T>& g,
                             double orientation);

TwoForm hodge_star_2form(const TwoForm& f, const Mat4d& g, double orientation);

/// (F+, F-) with F+- = (F +- *F)/2; *F+ = F+, *F- = -F-.
std::pair<TwoForm, TwoForm> selfdual_split(const TwoForm& f, const Mat4d& g,
                                           double orientation);

/// psi = T(J., .), i.e. psi_{ij} = J^a_i T_{aj}, antisymmetrized (exact
/// antisymmetry holds when T is J-invariant symmetric). Validates J^2 = -id
/// and g(J., J.) = g within tol.
TwoForm two_form_from_endo(const Mat4d& t, const Mat4d& j, const Mat4d& g,
                           double tol = 1e-8);

/// Positively-oriented orthonormal frame at a point (columns of `frame` are
/// the frame vectors e_a^i; `coframe` rows are the dual one-forms).
struct Frame {
  Mat4d frame;    // e_a^i = frame[i][a]
  Mat4d coframe;  // theta^a_i = coframe[a][i]
};
Frame orthonormal_frame(const Mat4d& g);

/// Self-dual/anti-self-dual decomposition of a Weyl-type (0,4) tensor plus
/// its norms in the Lambda^2-operator convention (|W|^2 is the Frobenius
/// norm of the induced operator on 2-forms; on a Kahler surface this makes
/// |W+|^2 = s^2/24).
struct WeylSplit {
  Ten4d plus{}, minus{};
  double norm2 = 0, plus_norm2 = 0, minus_norm2 = 0;
  double cross_norm2 = 0;  // mixed-block defect, ~0 for genuine Weyl tensors
};
WeylSplit weyl_split(const Ten4d& w, const Mat4d& g, double orientation);

}  // namespace bmx
