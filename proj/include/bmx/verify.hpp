#pragma once

#include "bmx/field.hpp"

namespace bmx {

struct CheckRow {
  std::string name;
  double value = 0;       // measured residual / defect
  double threshold = 0;   // pass when value <= threshold, unless inverted
  bool inverted = false;  // pass when value >= threshold (detector checks)
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  std::string entry;
  int resolution = 0;
  double tolerance = 0;
  unsigned long long seed = 0;
  std::vector<CheckRow> rows;
  bool ok = true;
};

/// Runs one named residual/property suite over a catalog entry.
/// Suites: "curvature" (stack invariants), "em", "bm" (field equations and
/// harmonicity), "conformal" (rescaling laws). `tolerance` <= 0 picks each
/// check's documented default.
SuiteReport run_suite(const CatalogEntry& entry, const std::string& suite,
                      int resolution, double tolerance,
                      unsigned long long seed);

std::string suite_to_json(const SuiteReport& rep);
std::string suite_to_csv(const SuiteReport& rep);

}  // namespace bmx
