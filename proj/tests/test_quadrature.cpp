#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "bmx/quadrature.hpp"
#include "testutil.hpp"

using namespace bmx;

namespace {
constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;
}  // namespace

TEST_CASE("Gauss-Legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(12, x, w);
  double s0 = 0, s2 = 0, s10 = 0;
  for (int i = 0; i < 12; ++i) {
    s0 += w[i];
    s2 += w[i] * x[i] * x[i];
    s10 += w[i] * std::pow(x[i], 10);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(s10 == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
}

TEST_CASE("volumes of the catalog geometries") {
  CatalogEntry p11 = make_product_spheres(1.0, 1.0);
  double v = integrate_value(p11, [](int, const Vec4d&) { return 1.0; }, 24);
  CHECK(v == doctest::Approx(16.0 * kPi2).epsilon(1e-10));

  CatalogEntry ps = make_product_spheres(1.0, std::sqrt(2.0));
  v = integrate_value(ps, [](int, const Vec4d&) { return 1.0; }, 24);
  CHECK(v == doctest::Approx(32.0 * kPi2).epsilon(1e-10));

  CatalogEntry s4 = make_sphere4(1.0);
  v = integrate_value(s4, [](int, const Vec4d&) { return 1.0; }, 24);
  CHECK(v == doctest::Approx(8.0 * kPi2 / 3.0).epsilon(1e-10));

  CatalogEntry fs = make_fubini_study(1.0);
  v = integrate_value(fs, [](int, const Vec4d&) { return 1.0; }, 24);
  CHECK(v == doctest::Approx(2.0 * kPi2).epsilon(1e-10));

  CatalogEntry flat = make_flat_chart();
  v = integrate_value(flat, [](int, const Vec4d&) { return 1.0; }, 8);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  // zero density
  v = integrate_value(p11, [](int, const Vec4d&) { return 0.0; }, 8);
  CHECK(v == 0.0);
}

TEST_CASE("factor areas") {
  CatalogEntry ps = make_product_spheres(1.0, std::sqrt(2.0));
  CHECK(product_factor_area(ps, 0, 24) == doctest::Approx(4.0 * kPi).epsilon(1e-9));
  CHECK(product_factor_area(ps, 1, 24) == doctest::Approx(8.0 * kPi).epsilon(1e-9));
}

TEST_CASE("Calabi energies against classical values") {
  CatalogEntry p11 = make_product_spheres(1.0, 1.0);
  EnergyReport rep = calabi_energy_numeric(p11, 16);
  CHECK(rep.value == doctest::Approx(256.0 * kPi2).epsilon(1e-8));
  CHECK(rep.error_estimate <= 1e-6 * rep.value);
  CHECK(rep.nodes == 16 * 16 * 16 * 16);

  CatalogEntry s4 = make_sphere4(1.0);
  rep = calabi_energy_numeric(s4, 16);
  CHECK(rep.value == doctest::Approx(384.0 * kPi2).epsilon(1e-8));

  CatalogEntry fs = make_fubini_study(1.0);
  rep = calabi_energy_numeric(fs, 12);
  CHECK(rep.value == doctest::Approx(288.0 * kPi2).epsilon(1e-8));
}

TEST_CASE("Calabi energy is scale invariant") {
  CatalogEntry ps = make_product_spheres(1.0, std::sqrt(2.0));
  double base = calabi_energy_numeric(ps, 10).value;
  CatalogEntry scaled = scaled_const(ps, 2.7);
  double after = calabi_energy_numeric(scaled, 10).value;
  CHECK(after == doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("Weyl energies") {
  // both orientations of the equal product are Kahler, so |W|^2 = s^2/12
  CatalogEntry p11 = make_product_spheres(1.0, 1.0);
  EnergyReport plus = weyl_energy_numeric(p11, WeylKind::Plus, 12);
  EnergyReport full = weyl_energy_numeric(p11, WeylKind::Full, 12);
  CHECK(plus.value == doctest::Approx(256.0 * kPi2 / 24.0).epsilon(1e-9));
  CHECK(full.value == doctest::Approx(2.0 * plus.value).epsilon(1e-9));

  CatalogEntry fs = make_fubini_study(1.0);
  EnergyReport fsp = weyl_energy_numeric(fs, WeylKind::Plus, 12);
  EnergyReport fsm = weyl_energy_numeric(fs, WeylKind::Minus, 12);
  CHECK(fsp.value == doctest::Approx(12.0 * kPi2).epsilon(1e-8));
  CHECK(fsm.value <= 1e-9 * fsp.value);

  CatalogEntry flat = make_flat_chart();
  CHECK(weyl_energy_numeric(flat, WeylKind::Full, 6).value ==
        doctest::Approx(0.0));
}

TEST_CASE("spectral convergence on a smooth non-symmetric density") {
  CatalogEntry ps = make_product_spheres(1.0, 1.0);
  Density d = [&ps](int chart, const Vec4d& x) {
    auto n1 = product_factor_embedding(ps, chart, x, 0);
    auto n2 = product_factor_embedding(ps, chart, x, 1);
    return std::exp(0.8 * n1[2] + 0.5 * n2[0] * n1[0]) + 0.3 * n2[2] * n2[2];
  };
  double ref = integrate_value(ps, d, 40);
  double prev_err = -1;
  bool shrinking = true;
  for (int res : {6, 10, 14, 18}) {
    double err = std::abs(integrate_value(ps, d, res) - ref) / std::abs(ref);
    if (prev_err >= 0 && err > prev_err && err > 1e-9) shrinking = false;
    prev_err = err;
  }
  CHECK(shrinking);
  CHECK(prev_err <= 1e-9);
}

TEST_CASE("non-finite densities are rejected") {
  CatalogEntry flat = make_flat_chart();
  CHECK_THROWS_AS(integrate_value(
                      flat, [](int, const Vec4d&) { return std::nan(""); }, 6),
                  Error);
}

TEST_CASE("sample nodes are deterministic and bounded") {
  CatalogEntry ps = make_product_spheres(1.0, 1.0);
  auto a = sample_nodes(ps, 12, 100);
  auto b = sample_nodes(ps, 12, 100);
  REQUIRE(a.size() == b.size());
  CHECK(a.size() <= 100);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].chart == b[i].chart);
    CHECK(a[i].x == b[i].x);
  }
}
