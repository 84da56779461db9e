// Command-line front end; talks to the core exclusively through the C API.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bmx/bmx.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

int report_error(bmx_status status) {
  std::fprintf(stderr, "error (%s): %s\n", bmx_status_name(status),
               bmx_last_error());
  return kExitError;
}

void print_and_free(char* s) {
  std::fputs(s, stdout);
  std::size_t n = std::strlen(s);
  if (n == 0 || s[n - 1] != '\n') std::fputc('\n', stdout);
  bmx_string_free(s);
}

struct ClassArg {
  unsigned k = 0;
  std::string p, q;
};

bool parse_class_triple(const std::string& text, ClassArg& out) {
  auto c1 = text.find(',');
  auto c2 = text.find(',', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) return false;
  try {
    out.k = unsigned(std::stoul(text.substr(0, c1)));
  } catch (const std::exception&) {
    return false;
  }
  out.p = text.substr(c1 + 1, c2 - c1 - 1);
  out.q = text.substr(c2 + 1);
  return !out.p.empty() && !out.q.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hirzebruch-surface energies, curvature stacks, and field-equation checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  std::string format = "json";
  int resolution = 24;
  double tolerance = 0.0;  // 0: per-check defaults
  unsigned long long seed = 0;
  app.add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--resolution", resolution, "quadrature nodes per axis")
      ->check(CLI::Range(2, 128));
  app.add_option("--tolerance", tolerance, "override per-check tolerances");
  app.add_option("--seed", seed, "seed for randomized property checks");

  // cone: Kahler verdict and compatible complex structures
  auto* cone = app.add_subcommand("cone", "Kahler-cone test and structure list");
  unsigned cone_k = 0;
  std::string cone_p, cone_q;
  cone->add_option("--k", cone_k, "Hirzebruch index")->required();
  cone->add_option("--p", cone_p, "coefficient of c_k (rational)")->required();
  cone->add_option("--q", cone_q, "coefficient of f (rational)")->required();

  auto* compare = app.add_subcommand(
      "compare", "extremal Calabi energies across complex structures");
  unsigned cmp_k = 0;
  std::string cmp_p, cmp_q;
  compare->add_option("--k", cmp_k, "Hirzebruch index")->required();
  compare->add_option("--p", cmp_p, "coefficient of c_k (rational)")->required();
  compare->add_option("--q", cmp_q, "coefficient of f (rational)")->required();

  auto* verify = app.add_subcommand("verify", "run a residual/property suite");
  std::string suite, verify_entry;
  verify->add_option("--suite", suite, "curvature | em | bm | conformal")
      ->required()
      ->check(CLI::IsMember({"curvature", "em", "bm", "conformal"}));
  verify->add_option("--entry", verify_entry, "catalog entry name")->required();

  auto* energy = app.add_subcommand("energy", "energy of an entry or a class");
  std::string energy_entry, energy_class, functional = "calabi";
  energy->add_option("--entry", energy_entry, "catalog entry (numeric quadrature)");
  energy->add_option("--class", energy_class, "k,p,q (closed form)");
  energy->add_option("--functional", functional,
                     "volume | calabi | weyl | weyl-plus | weyl-minus");

  auto* list = app.add_subcommand("catalog-list", "list catalog geometries");

  CLI11_PARSE(app, argc, argv);

  char* out = nullptr;
  bmx_status status = BMX_OK;

  if (cone->parsed()) {
    status = bmx_cone_report(cone_k, cone_p.c_str(), cone_q.c_str(),
                             format.c_str(), &out);
    if (status != BMX_OK) return report_error(status);
    print_and_free(out);
    return kExitOk;
  }

  if (compare->parsed()) {
    bmx_class_t* cls = nullptr;
    status = bmx_class_create(cmp_k, cmp_p.c_str(), cmp_q.c_str(), &cls);
    if (status != BMX_OK) return report_error(status);
    int distinct = 0;
    status = bmx_compare_report(cls, format.c_str(), &out, &distinct);
    bmx_class_destroy(cls);
    if (status != BMX_OK) return report_error(status);
    print_and_free(out);
    return kExitOk;
  }

  if (verify->parsed()) {
    bmx_entry_t* entry = nullptr;
    status = bmx_entry_open(verify_entry.c_str(), &entry);
    if (status != BMX_OK) return report_error(status);
    int violations = 0;
    status = bmx_verify_run(entry, suite.c_str(), resolution, tolerance, seed,
                            format.c_str(), &out, &violations);
    bmx_entry_destroy(entry);
    if (status != BMX_OK) return report_error(status);
    print_and_free(out);
    return violations == 0 ? kExitOk : kExitViolation;
  }

  if (energy->parsed()) {
    if (energy_entry.empty() == energy_class.empty()) {
      std::fprintf(stderr,
                   "error: give exactly one of --entry or --class\n");
      return kExitError;
    }
    if (!energy_entry.empty()) {
      bmx_entry_t* entry = nullptr;
      status = bmx_entry_open(energy_entry.c_str(), &entry);
      if (status != BMX_OK) return report_error(status);
      status = bmx_energy_numeric(entry, functional.c_str(), resolution, &out);
      bmx_entry_destroy(entry);
    } else {
      ClassArg cls_arg;
      if (!parse_class_triple(energy_class, cls_arg)) {
        std::fprintf(stderr, "error: --class expects k,p,q\n");
        return kExitError;
      }
      bmx_class_t* cls = nullptr;
      status = bmx_class_create(cls_arg.k, cls_arg.p.c_str(), cls_arg.q.c_str(), &cls);
      if (status != BMX_OK) return report_error(status);
      status = bmx_energy_formula(cls, functional.c_str(), &out);
      bmx_class_destroy(cls);
    }
    if (status != BMX_OK) return report_error(status);
    print_and_free(out);
    return kExitOk;
  }

  if (list->parsed()) {
    status = bmx_catalog_list(format.c_str(), &out);
    if (status != BMX_OK) return report_error(status);
    print_and_free(out);
    return kExitOk;
  }

  return kExitError;
}
