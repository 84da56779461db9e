#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "bmx/bmx.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  bmx_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("class lifecycle and lattice operations") {
  bmx_class_t* a = nullptr;
  REQUIRE(bmx_class_create(1, "1", "3", &a) == BMX_OK);
  bmx_class_t* c1 = nullptr;
  REQUIRE(bmx_first_chern(1, &c1) == BMX_OK);

  char* s = nullptr;
  REQUIRE(bmx_class_intersect(c1, a, &s) == BMX_OK);
  CHECK(take(s) == "7");
  REQUIRE(bmx_class_intersect(a, a, &s) == BMX_OK);
  CHECK(take(s) == "5");

  int kahler = 0;
  REQUIRE(bmx_class_is_kahler(a, &kahler) == BMX_OK);
  CHECK(kahler == 1);

  unsigned ns[8];
  size_t count = 0;
  REQUIRE(bmx_class_compatible_structures(a, ns, 8, &count) == BMX_OK);
  REQUIRE(count == 2);
  CHECK(ns[0] == 1);
  CHECK(ns[1] == 3);

  bmx_class_t* moved = nullptr;
  REQUIRE(bmx_class_change_basis(a, 3, &moved) == BMX_OK);
  REQUIRE(bmx_class_to_json(moved, &s) == BMX_OK);
  CHECK(take(s) == "{\"k\":3,\"p\":\"1\",\"q\":\"4\"}");

  double bound = 0;
  REQUIRE(bmx_class_lebrun_bound(a, &bound) == BMX_OK);
  CHECK(bound == doctest::Approx(32.0 * 9.8696044010893586 * 49.0 / 5.0));

  bmx_class_destroy(a);
  bmx_class_destroy(c1);
  bmx_class_destroy(moved);
}

TEST_CASE("error codes and messages") {
  bmx_class_t* bad = nullptr;
  CHECK(bmx_class_create(1, "1/0", "3", &bad) == BMX_ERR_PARSE);
  CHECK(std::string(bmx_last_error()).size() > 0);

  bmx_class_t* a = nullptr;
  bmx_class_t* b = nullptr;
  REQUIRE(bmx_class_create(1, "1", "3", &a) == BMX_OK);
  REQUIRE(bmx_class_create(2, "1", "3", &b) == BMX_OK);
  char* s = nullptr;
  CHECK(bmx_class_intersect(a, b, &s) == BMX_ERR_BASIS_MISMATCH);
  CHECK(bmx_class_change_basis(a, 2, nullptr) == BMX_ERR_INVALID_ARGUMENT);
  bmx_class_t* out = nullptr;
  CHECK(bmx_class_change_basis(a, 2, &out) == BMX_ERR_PARITY);

  bmx_class_t* boundary = nullptr;
  REQUIRE(bmx_class_create(1, "1", "1", &boundary) == BMX_OK);
  size_t count = 0;
  CHECK(bmx_class_compatible_structures(boundary, nullptr, 0, &count) ==
        BMX_ERR_NOT_KAHLER);
  double v = 0;
  bmx_class_t* degenerate = nullptr;
  REQUIRE(bmx_class_create(1, "1", "0", &degenerate) == BMX_OK);
  CHECK(bmx_class_lebrun_bound(degenerate, &v) == BMX_ERR_DEGENERATE_CLASS);

  bmx_entry_t* entry = nullptr;
  CHECK(bmx_entry_open("not-a-thing", &entry) == BMX_ERR_NOT_FOUND);

  CHECK(std::string(bmx_status_name(BMX_ERR_PARITY)) == "parity-error");
  bmx_class_destroy(a);
  bmx_class_destroy(b);
  bmx_class_destroy(boundary);
  bmx_class_destroy(degenerate);
}

TEST_CASE("reports") {
  char* s = nullptr;
  REQUIRE(bmx_cone_report(1, "1", "3", "json", &s) == BMX_OK);
  auto j = json::parse(take(s));
  CHECK(j["kahler"] == true);
  CHECK(j["structures"].size() == 2);

  REQUIRE(bmx_cone_report(1, "1", "1", "json", &s) == BMX_OK);
  j = json::parse(take(s));
  CHECK(j["kahler"] == false);

  bmx_class_t* cls = nullptr;
  REQUIRE(bmx_class_create(1, "1", "3", &cls) == BMX_OK);
  int distinct = 0;
  REQUIRE(bmx_compare_report(cls, "json", &s, &distinct) == BMX_OK);
  j = json::parse(take(s));
  CHECK(distinct == 1);
  CHECK(j["rows"][0]["energy_over_pi"] == "1476/37");
  CHECK(j["rows"][1]["energy_over_pi"] == "508/11");
  bmx_class_destroy(cls);

  REQUIRE(bmx_catalog_list("json", &s) == BMX_OK);
  j = json::parse(take(s));
  CHECK(j["entries"].size() == 5);
}

TEST_CASE("energies through the boundary") {
  char* over_pi = nullptr;
  double value = 0;
  REQUIRE(bmx_calabi_energy_hs("5", 1, &over_pi, &value) == BMX_OK);
  CHECK(take(over_pi) == "1476/37");
  CHECK(value == doctest::Approx(1476.0 / 37.0 * 3.14159265358979324));
  CHECK(bmx_calabi_energy_hs("1", 1, &over_pi, &value) == BMX_ERR_DOMAIN);

  bmx_entry_t* flat = nullptr;
  REQUIRE(bmx_entry_open("flat", &flat) == BMX_OK);
  char* s = nullptr;
  REQUIRE(bmx_energy_numeric(flat, "weyl", 6, &s) == BMX_OK);
  auto j = json::parse(take(s));
  CHECK(j["value"] == doctest::Approx(0.0));
  CHECK(j["provenance"] == "numeric");
  CHECK(bmx_energy_numeric(flat, "nope", 6, &s) == BMX_ERR_NOT_FOUND);
  REQUIRE(bmx_entry_info(flat, &s) == BMX_OK);
  j = json::parse(take(s));
  CHECK(j["kahler"] == true);
  bmx_entry_destroy(flat);

  bmx_class_t* cls = nullptr;
  REQUIRE(bmx_class_create(0, "1", "2", &cls) == BMX_OK);
  REQUIRE(bmx_energy_formula(cls, "calabi", &s) == BMX_OK);
  j = json::parse(take(s));
  CHECK(j["energy_over_pi"] == "36");
  CHECK(bmx_energy_formula(cls, "weyl", &s) == BMX_ERR_UNSUPPORTED);
  bmx_class_destroy(cls);
}

TEST_CASE("curvature stack dump and verify run") {
  bmx_entry_t* s4 = nullptr;
  REQUIRE(bmx_entry_open("sphere4", &s4) == BMX_OK);
  double x[4] = {0.2, -0.3, 0.1, 0.4};
  char* s = nullptr;
  REQUIRE(bmx_curvature_stack_json(s4, 0, x, &s) == BMX_OK);
  auto j = json::parse(take(s));
  CHECK(j["scalar"] == doctest::Approx(12.0));
  CHECK(j["riemann"].size() == 256);
  CHECK(j["bach"].size() == 16);

  int violations = -1;
  REQUIRE(bmx_verify_run(s4, "curvature", 8, 0.0, 7, "json", &s, &violations) ==
          BMX_OK);
  j = json::parse(take(s));
  CHECK(violations == 0);
  CHECK(j["status"] == "ok");
  CHECK(bmx_verify_run(s4, "bogus", 8, 0.0, 7, "json", &s, &violations) ==
        BMX_ERR_NOT_FOUND);
  bmx_entry_destroy(s4);
}
