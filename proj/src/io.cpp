#include "bmx/io.hpp"

#include <cstdio>

#include "json.hpp"

namespace bmx {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void JsonWriter::comma() {
  if (!need_comma_.empty()) {
    if (need_comma_.back()) out_ += ",";
    need_comma_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += "{";
  need_comma_.push_back(false);
  return *this;
}
JsonWriter& JsonWriter::end_object() {
  out_ += "}";
  need_comma_.pop_back();
  if (!need_comma_.empty()) need_comma_.back() = true;
  return *this;
}
JsonWriter& JsonWriter::begin_array(const std::string& k) {
  if (!k.empty()) key(k);
  else comma();
  out_ += "[";
  need_comma_.push_back(false);
  return *this;
}
JsonWriter& JsonWriter::end_array() {
  out_ += "]";
  need_comma_.pop_back();
  if (!need_comma_.empty()) need_comma_.back() = true;
  return *this;
}
JsonWriter& JsonWriter::key(const std::string& k) {
  comma();
  out_ += "\"" + json_escape(k) + "\":";
  if (!need_comma_.empty()) need_comma_.back() = false;
  return *this;
}
JsonWriter& JsonWriter::value(const std::string& v) {
  comma();
  out_ += "\"" + json_escape(v) + "\"";
  return *this;
}
JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }
JsonWriter& JsonWriter::value(double v) {
  comma();
  out_ += fmt_double(v);
  return *this;
}
JsonWriter& JsonWriter::value(int v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}
JsonWriter& JsonWriter::value(long long v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}
JsonWriter& JsonWriter::value(unsigned v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}
JsonWriter& JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  return *this;
}
JsonWriter& JsonWriter::field(const std::string& k, const std::string& v) {
  key(k);
  return value(v);
}
JsonWriter& JsonWriter::field(const std::string& k, const char* v) {
  key(k);
  return value(v);
}
JsonWriter& JsonWriter::field(const std::string& k, double v) {
  key(k);
  return value(v);
}
JsonWriter& JsonWriter::field(const std::string& k, int v) {
  key(k);
  return value(v);
}
JsonWriter& JsonWriter::field(const std::string& k, unsigned v) {
  key(k);
  return value(v);
}
JsonWriter& JsonWriter::field(const std::string& k, bool v) {
  key(k);
  return value(v);
}

std::string class_to_json(const CohomologyClass& cls) {
  JsonWriter w;
  w.begin_object()
      .field("k", cls.k)
      .field("p", cls.p.str())
      .field("q", cls.q.str())
      .end_object();
  return w.str();
}

CohomologyClass class_from_json(const std::string& text) {
  try {
    auto j = nlohmann::json::parse(text);
    CohomologyClass cls;
    cls.k = j.at("k").get<unsigned>();
    cls.p = Rat::parse(j.at("p").get<std::string>());
    cls.q = Rat::parse(j.at("q").get<std::string>());
    return cls;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, std::string("bad class JSON: ") + e.what());
  }
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += cells[i];
  }
  out += "\n";
  return out;
}

std::string comparison_to_json(const EnergyComparison& cmp) {
  JsonWriter w;
  w.begin_object();
  w.field("k", cmp.cls.k).field("p", cmp.cls.p.str()).field("q", cmp.cls.q.str());
  w.begin_array("rows");
  for (const auto& row : cmp.rows) {
    w.begin_object()
        .field("n", row.n)
        .field("p", row.cls.p.str())
        .field("q", row.cls.q.str())
        .field("a", row.a.str())
        .field("energy_over_pi", row.energy_over_pi.str())
        .field("energy", row.energy)
        .end_object();
  }
  w.end_array();
  if (cmp.rows.size() >= 2) w.field("distinct_energies", cmp.distinct_energies);
  w.end_object();
  return w.str();
}

std::string comparison_to_csv(const EnergyComparison& cmp) {
  std::string out = csv_row({"n", "p", "q", "a", "energy_over_pi", "energy"});
  for (const auto& row : cmp.rows)
    out += csv_row({std::to_string(row.n), row.cls.p.str(), row.cls.q.str(),
                    row.a.str(), row.energy_over_pi.str(), fmt_double(row.energy)});
  return out;
}

}  // namespace bmx
