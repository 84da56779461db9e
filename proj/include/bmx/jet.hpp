#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "bmx/errors.hpp"

namespace bmx {

namespace detail {

constexpr int n_terms(int order) {
  // multi-indices over 4 variables with total degree <= order
  int total = 0;
  for (int d = 0; d <= order; ++d) total += (d + 1) * (d + 2) * (d + 3) / 6;
  return total;
}

/// Shared enumeration of multi-indices (degree-major, then lexicographic),
/// identical for every order so lower-order jets are prefixes.
struct JetTables {
  int order;
  std::vector<std::array<std::uint8_t, 4>> exps;
  std::vector<int> lookup;  // packed exponent -> term index, -1 if absent
  struct MulEntry {
    std::int32_t a, b, target;
  };
  std::vector<MulEntry> mul;
  // per axis: target term (order-1 enumeration) <- (source term, factor)
  struct DiffEntry {
    std::int32_t src;
    double factor;
  };
  std::array<std::vector<DiffEntry>, 4> diff;

  static int pack(const std::array<std::uint8_t, 4>& e) {
    return e[0] + 8 * (e[1] + 8 * (e[2] + 8 * int(e[3])));
  }

  explicit JetTables(int ord) : order(ord), lookup(8 * 8 * 8 * 8, -1) {
    for (int d = 0; d <= ord; ++d) {
      for (int e0 = d; e0 >= 0; --e0)
        for (int e1 = d - e0; e1 >= 0; --e1)
          for (int e2 = d - e0 - e1; e2 >= 0; --e2) {
            int e3 = d - e0 - e1 - e2;
            std::array<std::uint8_t, 4> e{std::uint8_t(e0), std::uint8_t(e1),
                                          std::uint8_t(e2), std::uint8_t(e3)};
            lookup[pack(e)] = int(exps.size());
            exps.push_back(e);
          }
    }
    const int nt = int(exps.size());
    for (int a = 0; a < nt; ++a) {
      int da = exps[a][0] + exps[a][1] + exps[a][2] + exps[a][3];
      for (int b = 0; b < nt; ++b) {
        int db = exps[b][0] + exps[b][1] + exps[b][2] + exps[b][3];
        if (da + db > ord) continue;
        std::array<std::uint8_t, 4> e;
        for (int v = 0; v < 4; ++v) e[v] = std::uint8_t(exps[a][v] + exps[b][v]);
        mul.push_back({a, b, lookup[pack(e)]});
      }
    }
    if (ord >= 1) {
      const int nlow = n_terms(ord - 1);
      for (int axis = 0; axis < 4; ++axis) {
        diff[axis].resize(nlow);
        for (int t = 0; t < nlow; ++t) {
          std::array<std::uint8_t, 4> e = exps[t];
          e[axis] += 1;
          int src = lookup[pack(e)];
          diff[axis][t] = {src, double(e[axis])};
        }
      }
    }
  }

  static const JetTables& get(int order);
};

}  // namespace detail

/// Truncated multivariate Taylor polynomial in 4 variables: value plus all
/// partial derivatives through total degree Order, propagated exactly
/// through arithmetic (forward-mode jet).
///
/// Coefficient c[i] is the Taylor coefficient D^alpha f / alpha! for the
/// i-th multi-index of the shared enumeration.
template <int Order>
struct Jet {
  static_assert(Order >= 0 && Order <= 6);
  static constexpr int kTerms = detail::n_terms(Order);

  std::array<double, kTerms> c{};

  Jet() = default;
  Jet(double v) { c[0] = v; }

  static const detail::JetTables& tables() {
    static const detail::JetTables& t = detail::JetTables::get(Order);
    return t;
  }

  /// Seeds coordinate variable `axis` with value x.
  static Jet variable(int axis, double x) {
    Jet j;
    j.c[0] = x;
    if constexpr (Order >= 1) j.c[1 + axis] = 1.0;
    return j;
  }

  double value() const { return c[0]; }

  /// Derivative value for a multi-index (alpha! times the coefficient).
  double deriv(std::array<int, 4> alpha) const {
    std::array<std::uint8_t, 4> e{std::uint8_t(alpha[0]), std::uint8_t(alpha[1]),
                                  std::uint8_t(alpha[2]), std::uint8_t(alpha[3])};
    int idx = tables().lookup[detail::JetTables::pack(e)];
    if (idx < 0) fail(ErrorCode::InvalidArgument, "derivative order too high");
    double fact = 1.0;
    for (int v = 0; v < 4; ++v)
      for (int m = 2; m <= alpha[v]; ++m) fact *= m;
    return c[idx] * fact;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < kTerms; ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r;
    for (int i = 0; i < kTerms; ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
  }
  Jet operator-() const {
    Jet r;
    for (int i = 0; i < kTerms; ++i) r.c[i] = -c[i];
    return r;
  }
  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c[0] += s;
    return r;
  }
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) {
    Jet r = a;
    r.c[0] -= s;
    return r;
  }
  friend Jet operator-(double s, const Jet& a) { return (-a) + s; }
  friend Jet operator*(const Jet& a, double s) {
    Jet r;
    for (int i = 0; i < kTerms; ++i) r.c[i] = a.c[i] * s;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (const auto& m : tables().mul) r.c[m.target] += a.c[m.a] * b.c[m.b];
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
  friend Jet operator/(double s, const Jet& b) { return recip(b) * s; }

  Jet& operator+=(const Jet& b) { return *this = *this + b; }
  Jet& operator-=(const Jet& b) { return *this = *this - b; }
  Jet& operator*=(const Jet& b) { return *this = *this * b; }

  /// Composes a univariate power series around the value part:
  /// series[m] = f^(m)(value)/m!. Exact for the truncation order.
  static Jet compose(const Jet& x, const std::array<double, Order + 1>& series) {
    Jet n = x;
    n.c[0] = 0.0;
    // Horner in jet arithmetic
    Jet r(series[Order]);
    for (int m = Order - 1; m >= 0; --m) r = r * n + series[m];
    return r;
  }

  friend Jet recip(const Jet& x) {
    double v = x.c[0];
    if (v == 0.0) fail(ErrorCode::DomainError, "jet reciprocal at zero");
    std::array<double, Order + 1> s{};
    double p = 1.0 / v;
    for (int m = 0; m <= Order; ++m) {
      s[m] = (m % 2 == 0 ? p : -p);
      p /= v;
    }
    return compose(x, s);
  }
};

template <int Order>
Jet<Order> sqrt(const Jet<Order>& x) {
  double v = x.value();
  if (v <= 0.0) fail(ErrorCode::DomainError, "jet sqrt of non-positive value");
  std::array<double, Order + 1> s{};
  double r = std::sqrt(v);
  // binomial series for (v + n)^(1/2)
  double coef = r;
  s[0] = coef;
  for (int m = 1; m <= Order; ++m) {
    coef *= (1.5 / m - 1.0) / v;
    s[m] = coef;
  }
  return Jet<Order>::compose(x, s);
}

template <int Order>
Jet<Order> exp(const Jet<Order>& x) {
  std::array<double, Order + 1> s{};
  double e = std::exp(x.value());
  double f = 1.0;
  for (int m = 0; m <= Order; ++m) {
    s[m] = e / f;
    f *= (m + 1);
  }
  return Jet<Order>::compose(x, s);
}

template <int Order>
Jet<Order> log(const Jet<Order>& x) {
  double v = x.value();
  if (v <= 0.0) fail(ErrorCode::DomainError, "jet log of non-positive value");
  std::array<double, Order + 1> s{};
  s[0] = std::log(v);
  double p = 1.0 / v;
  for (int m = 1; m <= Order; ++m) {
    s[m] = (m % 2 == 1 ? p : -p) / m;
    p /= v;
  }
  return Jet<Order>::compose(x, s);
}

template <int Order>
Jet<Order> sin(const Jet<Order>& x) {
  std::array<double, Order + 1> s{};
  double sv = std::sin(x.value()), cv = std::cos(x.value());
  double f = 1.0;
  const double cyc[4] = {sv, cv, -sv, -cv};
  for (int m = 0; m <= Order; ++m) {
    s[m] = cyc[m % 4] / f;
    f *= (m + 1);
  }
  return Jet<Order>::compose(x, s);
}

template <int Order>
Jet<Order> cos(const Jet<Order>& x) {
  std::array<double, Order + 1> s{};
  double sv = std::sin(x.value()), cv = std::cos(x.value());
  double f = 1.0;
  const double cyc[4] = {cv, -sv, -cv, sv};
  for (int m = 0; m <= Order; ++m) {
    s[m] = cyc[m % 4] / f;
    f *= (m + 1);
  }
  return Jet<Order>::compose(x, s);
}

/// Partial derivative as a jet one order down.
template <int Order>
Jet<Order - 1> partial(const Jet<Order>& x, int axis) {
  static_assert(Order >= 1);
  Jet<Order - 1> r;
  const auto& tab = Jet<Order>::tables().diff[axis];
  for (int t = 0; t < Jet<Order - 1>::kTerms; ++t)
    r.c[t] = x.c[tab[t].src] * tab[t].factor;
  return r;
}

inline double partial_value(const Jet<1>& x, int axis) { return x.c[1 + axis]; }

/// Truncation to a lower order (coefficient prefix).
template <int M, int Order>
Jet<M> truncate(const Jet<Order>& x) {
  static_assert(M <= Order);
  Jet<M> r;
  for (int i = 0; i < Jet<M>::kTerms; ++i) r.c[i] = x.c[i];
  return r;
}

/// Value part of a scalar that may be a double or a jet.
inline double value_of(double x) { return x; }
template <int Order>
double value_of(const Jet<Order>& x) {
  return x.value();
}

// arithmetic passthroughs so generic code can call these unqualified
// (template form keeps them from colliding with the <cmath> globals)
template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
T sqrt(T x) { return std::sqrt(x); }
template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
T exp(T x) { return std::exp(x); }
template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
T log(T x) { return std::log(x); }
template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
T sin(T x) { return std::sin(x); }
template <class T, std::enable_if_t<std::is_arithmetic_v<T>, int> = 0>
T cos(T x) { return std::cos(x); }
inline double recip(double x) { return 1.0 / x; }

}  // namespace bmx
