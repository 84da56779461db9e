#pragma once

#include <string>
#include <vector>

#include "bmx/hirzebruch.hpp"

namespace bmx {

/// Fixed 12-significant-digit float formatting; all emitted output goes
/// through this so results are byte-stable for identical inputs.
std::string fmt_double(double v);

/// Minimal deterministic JSON writer (insertion order preserved, floats via
/// fmt_double).
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array(const std::string& key = "");
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(unsigned v);
  JsonWriter& value(bool v);
  JsonWriter& field(const std::string& k, const std::string& v);
  JsonWriter& field(const std::string& k, const char* v);
  JsonWriter& field(const std::string& k, double v);
  JsonWriter& field(const std::string& k, int v);
  JsonWriter& field(const std::string& k, unsigned v);
  JsonWriter& field(const std::string& k, bool v);
  std::string str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<bool> need_comma_;
};

std::string json_escape(const std::string& s);

/// {"k": k, "p": "p", "q": "q"} with exact rational strings.
std::string class_to_json(const CohomologyClass& cls);
CohomologyClass class_from_json(const std::string& text);

/// CSV row assembly with '.' decimals and ',' separators.
std::string csv_row(const std::vector<std::string>& cells);

std::string comparison_to_json(const EnergyComparison& cmp);
std::string comparison_to_csv(const EnergyComparison& cmp);

}  // namespace bmx
