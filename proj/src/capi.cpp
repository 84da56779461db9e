#include "bmx/bmx.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "bmx/io.hpp"
#include "bmx/verify.hpp"

using namespace bmx;

struct bmx_class_t {
  CohomologyClass cls;
};

struct bmx_entry_t {
  CatalogEntry entry;
};

namespace {

thread_local std::string g_last_error;

bmx_status status_from(const Error& e) {
  g_last_error = e.what();
  int code = static_cast<int>(e.code());
  if (code >= 1 && code <= 14) return static_cast<bmx_status>(code);
  return BMX_ERR_INTERNAL;
}

template <class F>
bmx_status wrap(F&& fn) {
  try {
    fn();
    return BMX_OK;
  } catch (const Error& e) {
    return status_from(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BMX_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

std::string cone_report_impl(unsigned k, const char* p, const char* q,
                             const std::string& format) {
  CohomologyClass cls{k, Rat::parse(p), Rat::parse(q)};
  bool kahler = is_kahler(cls);
  std::vector<CohomologyClass> rows;
  std::vector<unsigned> ns;
  if (kahler) {
    ns = compatible_structures(cls);
    for (unsigned n : ns) rows.push_back(change_basis(cls, n));
  }
  if (format == "csv") {
    std::string out = csv_row({"n", "p", "q"});
    for (std::size_t i = 0; i < rows.size(); ++i)
      out += csv_row({std::to_string(ns[i]), rows[i].p.str(), rows[i].q.str()});
    return out;
  }
  JsonWriter w;
  w.begin_object()
      .field("k", cls.k)
      .field("p", cls.p.str())
      .field("q", cls.q.str())
      .field("kahler", kahler);
  w.begin_array("structures");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    w.begin_object()
        .field("n", ns[i])
        .field("p", rows[i].p.str())
        .field("q", rows[i].q.str())
        .end_object();
  }
  w.end_array();
  w.end_object();
  return w.str();
}

void append_flat(JsonWriter& w, const std::string& key, const Mat4d& m) {
  w.begin_array(key);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) w.value(m[i][j]);
  w.end_array();
}

void append_flat4(JsonWriter& w, const std::string& key, const Ten4d& t) {
  w.begin_array(key);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k)
        for (int l = 0; l < 4; ++l) w.value(t[i][j][k][l]);
  w.end_array();
}

}  // namespace

extern "C" {

const char* bmx_version(void) { return "1.0.0"; }

const char* bmx_status_name(bmx_status status) {
  switch (status) {
    case BMX_OK: return "ok";
    case BMX_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case BMX_ERR_PARSE: return "parse-error";
    case BMX_ERR_BASIS_MISMATCH: return "basis-mismatch";
    case BMX_ERR_PARITY: return "parity-error";
    case BMX_ERR_NOT_KAHLER: return "not-kahler";
    case BMX_ERR_DEGENERATE_CLASS: return "degenerate-class";
    case BMX_ERR_DOMAIN: return "domain-error";
    case BMX_ERR_OUT_OF_DOMAIN: return "out-of-domain";
    case BMX_ERR_NON_FINITE: return "non-finite";
    case BMX_ERR_NOT_POSITIVE_DEFINITE: return "not-positive-definite";
    case BMX_ERR_INCOMPATIBLE_STRUCTURE: return "incompatible-structure";
    case BMX_ERR_NOT_FOUND: return "not-found";
    case BMX_ERR_OVERFLOW: return "overflow";
    case BMX_ERR_UNSUPPORTED: return "unsupported";
    default: return "internal-error";
  }
}

const char* bmx_last_error(void) { return g_last_error.c_str(); }

void bmx_string_free(char* s) { std::free(s); }

bmx_status bmx_class_create(unsigned k, const char* p, const char* q,
                            bmx_class_t** out) {
  return wrap([&] {
    require(p && q && out, "null argument");
    *out = new bmx_class_t{CohomologyClass{k, Rat::parse(p), Rat::parse(q)}};
  });
}

void bmx_class_destroy(bmx_class_t* cls) { delete cls; }

bmx_status bmx_class_to_json(const bmx_class_t* cls, char** out) {
  return wrap([&] {
    require(cls && out, "null argument");
    *out = dup_string(class_to_json(cls->cls));
  });
}

bmx_status bmx_class_from_json(const char* json, bmx_class_t** out) {
  return wrap([&] {
    require(json && out, "null argument");
    *out = new bmx_class_t{class_from_json(json)};
  });
}

bmx_status bmx_class_intersect(const bmx_class_t* a, const bmx_class_t* b,
                               char** out) {
  return wrap([&] {
    require(a && b && out, "null argument");
    *out = dup_string(intersect(a->cls, b->cls).str());
  });
}

bmx_status bmx_class_change_basis(const bmx_class_t* cls, unsigned n,
                                  bmx_class_t** out) {
  return wrap([&] {
    require(cls && out, "null argument");
    *out = new bmx_class_t{change_basis(cls->cls, n)};
  });
}

bmx_status bmx_class_is_kahler(const bmx_class_t* cls, int* out) {
  return wrap([&] {
    require(cls && out, "null argument");
    *out = is_kahler(cls->cls) ? 1 : 0;
  });
}

bmx_status bmx_class_compatible_structures(const bmx_class_t* cls,
                                           unsigned* buf, size_t cap,
                                           size_t* count) {
  return wrap([&] {
    require(cls && count, "null argument");
    auto ns = compatible_structures(cls->cls);
    *count = ns.size();
    if (buf)
      for (size_t i = 0; i < ns.size() && i < cap; ++i) buf[i] = ns[i];
  });
}

bmx_status bmx_first_chern(unsigned k, bmx_class_t** out) {
  return wrap([&] {
    require(out != nullptr, "null argument");
    *out = new bmx_class_t{first_chern(k)};
  });
}

bmx_status bmx_class_lebrun_bound(const bmx_class_t* cls, double* out) {
  return wrap([&] {
    require(cls && out, "null argument");
    *out = lebrun_bound(cls->cls);
  });
}

bmx_status bmx_calabi_energy_hs(const char* a, unsigned k, char** over_pi,
                                double* value) {
  return wrap([&] {
    require(a != nullptr, "null argument");
    Rat r = calabi_energy_hs_over_pi(Rat::parse(a), k);
    if (over_pi) *over_pi = dup_string(r.str());
    if (value) *value = calabi_energy_hs(Rat::parse(a), k);
  });
}

bmx_status bmx_calabi_energy_class(const bmx_class_t* cls, char** over_pi,
                                   double* value) {
  return wrap([&] {
    require(cls != nullptr, "null argument");
    Rat r = calabi_energy_class_over_pi(cls->cls);
    if (over_pi) *over_pi = dup_string(r.str());
    if (value) *value = calabi_energy_class(cls->cls);
  });
}

bmx_status bmx_compare_report(const bmx_class_t* cls, const char* format,
                              char** out, int* distinct) {
  return wrap([&] {
    require(cls && format && out, "null argument");
    EnergyComparison cmp = compare_across_structures(cls->cls);
    std::string fmt(format);
    if (fmt == "csv") *out = dup_string(comparison_to_csv(cmp));
    else if (fmt == "json") *out = dup_string(comparison_to_json(cmp));
    else fail(ErrorCode::InvalidArgument, "format must be json or csv");
    if (distinct)
      *distinct = cmp.rows.size() < 2 ? -1 : (cmp.distinct_energies ? 1 : 0);
  });
}

bmx_status bmx_cone_report(unsigned k, const char* p, const char* q,
                           const char* format, char** out) {
  return wrap([&] {
    require(p && q && format && out, "null argument");
    std::string fmt(format);
    if (fmt != "json" && fmt != "csv")
      fail(ErrorCode::InvalidArgument, "format must be json or csv");
    *out = dup_string(cone_report_impl(k, p, q, fmt));
  });
}

bmx_status bmx_entry_open(const char* name, bmx_entry_t** out) {
  return wrap([&] {
    require(name && out, "null argument");
    *out = new bmx_entry_t{catalog_get(name)};
  });
}

void bmx_entry_destroy(bmx_entry_t* entry) { delete entry; }

bmx_status bmx_entry_info(const bmx_entry_t* entry, char** out_json) {
  return wrap([&] {
    require(entry && out_json, "null argument");
    const CatalogEntry& e = entry->entry;
    JsonWriter w;
    w.begin_object()
        .field("name", e.name)
        .field("charts", int(e.charts.size()))
        .field("kahler", e.has_kahler())
        .field("einstein", e.known.is_einstein)
        .field("csck", e.known.is_csck);
    if (e.known.scalar) w.field("scalar", *e.known.scalar);
    if (e.known.volume) w.field("volume", *e.known.volume);
    if (e.known.area1) w.field("area1", *e.known.area1);
    if (e.known.area2) w.field("area2", *e.known.area2);
    w.end_object();
    *out_json = dup_string(w.str());
  });
}

bmx_status bmx_catalog_list(const char* format, char** out) {
  return wrap([&] {
    require(format && out, "null argument");
    std::string fmt(format);
    auto names = catalog_names();
    if (fmt == "csv") {
      std::string s = csv_row({"name", "scalar", "volume", "einstein", "csck", "kahler"});
      for (const auto& name : names) {
        CatalogEntry e = catalog_get(name);
        s += csv_row({name, fmt_double(e.known.scalar.value_or(0.0)),
                      fmt_double(e.known.volume.value_or(0.0)),
                      e.known.is_einstein ? "true" : "false",
                      e.known.is_csck ? "true" : "false",
                      e.has_kahler() ? "true" : "false"});
      }
      *out = dup_string(s);
      return;
    }
    if (fmt != "json") fail(ErrorCode::InvalidArgument, "format must be json or csv");
    JsonWriter w;
    w.begin_object().begin_array("entries");
    for (const auto& name : names) {
      CatalogEntry e = catalog_get(name);
      w.begin_object()
          .field("name", name)
          .field("scalar", e.known.scalar.value_or(0.0))
          .field("volume", e.known.volume.value_or(0.0))
          .field("einstein", e.known.is_einstein)
          .field("csck", e.known.is_csck)
          .field("kahler", e.has_kahler())
          .end_object();
    }
    w.end_array().end_object();
    *out = dup_string(w.str());
  });
}

bmx_status bmx_curvature_stack_json(const bmx_entry_t* entry, int chart,
                                    const double x[4], char** out) {
  return wrap([&] {
    require(entry && x && out, "null argument");
    const CatalogEntry& e = entry->entry;
    require(chart >= 0 && chart < int(e.charts.size()), "chart out of range");
    Vec4d p{x[0], x[1], x[2], x[3]};
    CurvatureStack st = curvature_stack(e.charts[chart].chart, p);
    JsonWriter w;
    w.begin_object();
    w.begin_array("point");
    for (double v : p) w.value(v);
    w.end_array();
    w.field("chart", chart).field("scalar", st.scalar);
    append_flat(w, "g", st.g);
    append_flat(w, "ricci", st.ricci);
    append_flat(w, "ricci0", st.ricci0);
    append_flat(w, "bach", st.bach);
    w.begin_array("christoffel");
    for (int k = 0; k < 4; ++k)
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) w.value(st.christoffel[k][i][j]);
    w.end_array();
    append_flat4(w, "riemann", st.riemann);
    append_flat4(w, "weyl", st.weyl);
    append_flat4(w, "weyl_plus", st.weyl_plus);
    append_flat4(w, "weyl_minus", st.weyl_minus);
    w.field("weyl_norm2", st.weyl_norm2)
        .field("weyl_plus_norm2", st.weyl_plus_norm2)
        .field("weyl_minus_norm2", st.weyl_minus_norm2);
    w.end_object();
    *out = dup_string(w.str());
  });
}

bmx_status bmx_energy_numeric(const bmx_entry_t* entry, const char* functional,
                              int resolution, char** out_json) {
  return wrap([&] {
    require(entry && functional && out_json, "null argument");
    std::string fn(functional);
    const CatalogEntry& e = entry->entry;
    EnergyReport rep;
    if (fn == "volume") {
      rep = integrate(e, [](int, const Vec4d&) { return 1.0; }, resolution);
      rep.convention = "riemannian-volume";
    } else if (fn == "calabi") {
      rep = calabi_energy_numeric(e, resolution);
    } else if (fn == "weyl") {
      rep = weyl_energy_numeric(e, WeylKind::Full, resolution);
    } else if (fn == "weyl-plus") {
      rep = weyl_energy_numeric(e, WeylKind::Plus, resolution);
    } else if (fn == "weyl-minus") {
      rep = weyl_energy_numeric(e, WeylKind::Minus, resolution);
    } else {
      fail(ErrorCode::NotFound, "unknown functional '" + fn + "'");
    }
    JsonWriter w;
    w.begin_object()
        .field("functional", fn)
        .field("provenance", "numeric")
        .field("value", rep.value)
        .field("error_estimate", rep.error_estimate)
        .field("nodes", rep.nodes)
        .field("convention", rep.convention)
        .end_object();
    *out_json = dup_string(w.str());
  });
}

bmx_status bmx_energy_formula(const bmx_class_t* cls, const char* functional,
                              char** out_json) {
  return wrap([&] {
    require(cls && functional && out_json, "null argument");
    std::string fn(functional);
    Rat over_pi = calabi_energy_class_over_pi(cls->cls);
    if (fn == "weyl-plus") {
      over_pi = over_pi / Rat(24);
    } else if (fn != "calabi") {
      fail(ErrorCode::Unsupported,
           "closed form available for calabi and weyl-plus only");
    }
    JsonWriter w;
    w.begin_object()
        .field("functional", fn)
        .field("provenance", "formula")
        .field("energy_over_pi", over_pi.str())
        .field("value", over_pi.to_double() * 3.14159265358979323846)
        .end_object();
    *out_json = dup_string(w.str());
  });
}

bmx_status bmx_verify_run(const bmx_entry_t* entry, const char* suite,
                          int resolution, double tolerance,
                          unsigned long long seed, const char* format,
                          char** out, int* violations) {
  return wrap([&] {
    require(entry && suite && format && out, "null argument");
    std::string fmt(format);
    if (fmt != "json" && fmt != "csv")
      fail(ErrorCode::InvalidArgument, "format must be json or csv");
    SuiteReport rep = run_suite(entry->entry, suite, resolution, tolerance, seed);
    *out = dup_string(fmt == "csv" ? suite_to_csv(rep) : suite_to_json(rep));
    if (violations) {
      int bad = 0;
      for (const auto& row : rep.rows)
        if (!row.pass) ++bad;
      *violations = bad;
    }
  });
}

}  // extern "C"
