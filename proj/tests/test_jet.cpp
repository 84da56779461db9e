#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "bmx/jet.hpp"
#include "testutil.hpp"

using namespace bmx;

namespace {

// f(x) = (x0^2 x1 + 3 x2) / (1 + x3^2) + exp(x0 x1) * sqrt(2 + x2)
template <class T>
T sample_fn(const std::array<T, 4>& x) {
  T num = x[0] * x[0] * x[1] + 3.0 * x[2];
  T den = 1.0 + x[3] * x[3];
  return num / den + exp(x[0] * x[1]) * sqrt(x[2] + 2.0);
}

// central differences of machine-evaluated sample_fn, one axis at a time,
// a single step length for the whole mixed stencil
double fd_partial_h(const Vec4<double>& x, std::array<int, 4> alpha, double h) {
  int axis = -1;
  for (int a = 0; a < 4; ++a)
    if (alpha[a] > 0) {
      axis = a;
      break;
    }
  if (axis < 0) return sample_fn<double>(x);
  int n = alpha[axis];
  std::array<int, 4> rest = alpha;
  rest[axis] = 0;
  static const std::vector<std::vector<double>> coefs = {
      {},
      {-0.5, 0.0, 0.5},
      {1.0, -2.0, 1.0},
      {-0.5, 1.0, 0.0, -1.0, 0.5},
      {1.0, -4.0, 6.0, -4.0, 1.0}};
  const auto& c = coefs[n];
  int m = int(c.size());
  double acc = 0;
  for (int i = 0; i < m; ++i) {
    if (c[i] == 0.0) continue;
    Vec4<double> q = x;
    q[axis] += (i - m / 2) * h;
    acc += c[i] * fd_partial_h(q, rest, h);
  }
  return acc / std::pow(h, n);
}

// one Richardson level on top of the second-order stencils
double fd_partial(const Vec4<double>& x, std::array<int, 4> alpha) {
  int total = alpha[0] + alpha[1] + alpha[2] + alpha[3];
  double h = total <= 2 ? 1e-3 : 1.5e-2;
  double d1 = fd_partial_h(x, alpha, h);
  double d2 = fd_partial_h(x, alpha, h / 2);
  return (4.0 * d2 - d1) / 3.0;
}

void check_close(double got, double ref, double tol) {
  CHECK(std::abs(got - ref) <= tol * (1.0 + std::abs(ref)));
}

}  // namespace

TEST_CASE("constants and variables") {
  auto x = seed_point<Jet<3>>({1.0, 2.0, 3.0, 4.0});
  CHECK(x[2].value() == 3.0);
  CHECK(x[2].deriv({0, 0, 1, 0}) == 1.0);
  CHECK(x[2].deriv({0, 1, 0, 0}) == 0.0);
  Jet<3> c(5.0);
  CHECK(c.value() == 5.0);
  CHECK(c.deriv({1, 0, 0, 0}) == 0.0);
}

TEST_CASE("polynomial jets are exact") {
  Vec4d p{1.0, -2.0, 0.5, 3.0};
  auto x = seed_point<Jet<4>>(p);
  // f = x0^2 x1: d/dx0 = 2 x0 x1, d2/dx0^2 = 2 x1, d2/dx0 dx1 = 2 x0
  Jet<4> f = x[0] * x[0] * x[1];
  CHECK(f.value() == doctest::Approx(-2.0));
  CHECK(f.deriv({1, 0, 0, 0}) == doctest::Approx(-4.0));
  CHECK(f.deriv({2, 0, 0, 0}) == doctest::Approx(-4.0));
  CHECK(f.deriv({1, 1, 0, 0}) == doctest::Approx(2.0));
  CHECK(f.deriv({2, 1, 0, 0}) == doctest::Approx(2.0));
  CHECK(f.deriv({0, 0, 1, 0}) == 0.0);
  // diag(1+x0^2,...) example: d g00 / d x0 at x0=1 is 2
  Jet<4> g00 = 1.0 + x[0] * x[0];
  CHECK(g00.deriv({1, 0, 0, 0}) == doctest::Approx(2.0));
}

TEST_CASE("division, exp, sqrt against finite differences") {
  bmxtest::Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    Vec4d p = rng.point(-0.6, 0.6);
    auto x = seed_point<Jet<4>>(p);
    Jet<4> f = sample_fn<Jet<4>>(x);
    CHECK(f.value() == doctest::Approx(sample_fn<double>(p)).epsilon(1e-14));
    std::vector<std::array<int, 4>> alphas = {
        {1, 0, 0, 0}, {0, 0, 0, 1}, {1, 1, 0, 0}, {0, 2, 0, 0},
        {2, 1, 0, 0}, {0, 0, 2, 0}, {1, 0, 1, 1}, {2, 2, 0, 0},
        {0, 0, 0, 4}, {1, 1, 1, 1}};
    for (auto a : alphas) {
      int total = a[0] + a[1] + a[2] + a[3];
      double ref = fd_partial(p, a);
      double tol = total <= 2 ? 1e-5 : 1e-3;
      check_close(f.deriv(a), ref, tol);
    }
  }
}

TEST_CASE("jet identities") {
  bmxtest::Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    Vec4d p = rng.point(0.1, 0.9);
    auto x = seed_point<Jet<4>>(p);
    Jet<4> a = 1.0 + x[0] * x[1] + x[2];
    Jet<4> b = 2.0 + x[3] * x[3] + x[1];
    Jet<4> prod_div = (a * b) / b;
    for (int t = 0; t < Jet<4>::kTerms; ++t)
      CHECK(prod_div.c[t] == doctest::Approx(a.c[t]).epsilon(1e-12));
    Jet<4> s = sqrt(a);
    Jet<4> s2 = s * s;
    for (int t = 0; t < Jet<4>::kTerms; ++t)
      CHECK(s2.c[t] == doctest::Approx(a.c[t]).epsilon(1e-12));
    Jet<4> e = exp(log(a));
    for (int t = 0; t < Jet<4>::kTerms; ++t)
      CHECK(e.c[t] == doctest::Approx(a.c[t]).epsilon(1e-12));
    Jet<4> sc = sin(a) * sin(a) + cos(a) * cos(a);
    CHECK(sc.value() == doctest::Approx(1.0).epsilon(1e-14));
    for (int t = 1; t < Jet<4>::kTerms; ++t)
      CHECK(sc.c[t] == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("partial extraction") {
  Vec4d p{0.3, 0.7, -0.2, 0.4};
  auto x = seed_point<Jet<3>>(p);
  Jet<3> f = x[0] * x[0] * x[1] + x[3] * x[2] * x[0];
  Jet<2> df0 = partial(f, 0);
  // d f / d x0 = 2 x0 x1 + x3 x2
  CHECK(df0.value() == doctest::Approx(2 * 0.3 * 0.7 + 0.4 * (-0.2)));
  CHECK(df0.deriv({0, 1, 0, 0}) == doctest::Approx(2 * 0.3));
  CHECK(df0.deriv({1, 0, 0, 0}) == doctest::Approx(2 * 0.7));
  Jet<1> dd = partial(df0, 1);
  CHECK(partial_value(dd, 0) == doctest::Approx(2.0));
}

TEST_CASE("truncation is a prefix") {
  auto x = seed_point<Jet<4>>({0.2, 0.5, 0.1, 0.8});
  Jet<4> f = exp(x[0] * x[1]) + x[2] / (1.0 + x[3]);
  Jet<2> t = truncate<2>(f);
  for (int i = 0; i < Jet<2>::kTerms; ++i) CHECK(t.c[i] == f.c[i]);
}
