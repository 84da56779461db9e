#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bmx/verify.hpp"
#include "json.hpp"

using namespace bmx;

TEST_CASE("curvature suite passes on every catalog entry") {
  for (const char* name :
       {"sphere4", "fubini-study", "product-1-1", "product-1-sqrt2", "flat"}) {
    SuiteReport rep = run_suite(catalog_get(name), "curvature", 8, 0.0, 1);
    for (const auto& row : rep.rows) {
      INFO(name << " / " << row.name << " = " << row.value);
      CHECK(row.pass);
    }
    CHECK(rep.ok);
  }
}

TEST_CASE("em suite") {
  SuiteReport rep = run_suite(catalog_get("product-1-sqrt2"), "em", 10, 0.0, 1);
  CHECK(rep.ok);
  bool saw_ablation = false;
  for (const auto& row : rep.rows)
    if (row.name == "ablation_detected") {
      saw_ablation = true;
      CHECK(row.inverted);
      CHECK(row.value >= 1e-2);
    }
  CHECK(saw_ablation);
  // flat: vacuous Einstein pass
  SuiteReport flat = run_suite(catalog_get("flat"), "em", 6, 0.0, 1);
  CHECK(flat.ok);
}

TEST_CASE("bm suite") {
  for (const char* name : {"product-1-sqrt2", "fubini-study", "sphere4"}) {
    SuiteReport rep = run_suite(catalog_get(name), "bm", 10, 0.0, 1);
    INFO(name);
    CHECK(rep.ok);
  }
}

TEST_CASE("conformal suite") {
  SuiteReport rep =
      run_suite(catalog_get("product-1-sqrt2"), "conformal", 12, 0.0, 42);
  for (const auto& row : rep.rows) {
    INFO(row.name << " = " << row.value);
    CHECK(row.pass);
  }
}

TEST_CASE("suite errors and serialization") {
  CHECK_THROWS_AS(run_suite(catalog_get("flat"), "bogus", 8, 0.0, 1), Error);
  SuiteReport rep = run_suite(catalog_get("sphere4"), "curvature", 6, 0.0, 1);
  auto j = nlohmann::json::parse(suite_to_json(rep));
  CHECK(j["status"] == "ok");
  CHECK(j["checks"].size() == rep.rows.size());
  std::string csv = suite_to_csv(rep);
  CHECK(csv.rfind("name,value,threshold,pass", 0) == 0);
}

TEST_CASE("tolerance override propagates") {
  // an absurdly strict tolerance must flip checks to violations
  SuiteReport rep = run_suite(catalog_get("product-1-sqrt2"), "bm", 8, 1e-30, 1);
  CHECK(!rep.ok);
}
