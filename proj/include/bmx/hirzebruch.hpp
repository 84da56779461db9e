#pragma once

#include <vector>

#include "bmx/lattice.hpp"

namespace bmx {

/// Calabi energy of the extremal Kahler metric on F_k in the class
/// 4 pi c_k + 2 pi (a+k) f (Hwang-Simanca closed form), divided by pi:
///   12 (a^3 + 4a^2 + (4+k^2) a - 4k^2) / (3a^2 - k^2).
/// Requires a > k, which is the Kahler condition for that class and keeps
/// the denominator positive. Exact rational arithmetic throughout.
Rat calabi_energy_hs_over_pi(const Rat& a, unsigned k);

/// Same, times pi.
double calabi_energy_hs(const Rat& a, unsigned k);

/// Calabi energy of the extremal metric in an arbitrary Kahler class,
/// via the scale-invariant parameter a = 2 q/p - k. Divided by pi.
Rat calabi_energy_class_over_pi(const CohomologyClass& cls);

/// Same, times pi.
double calabi_energy_class(const CohomologyClass& cls);

/// One row of a cross-structure comparison: the class rewritten in the
/// (c_n, f) basis, its a-parameter, and the extremal Calabi energy.
struct ComparisonRow {
  unsigned n = 0;
  CohomologyClass cls;
  Rat a;
  Rat energy_over_pi;
  double energy = 0.0;
};

/// Extremal Calabi energies of one de Rham class across every complex
/// structure it is Kahler for, sorted by n.
struct EnergyComparison {
  CohomologyClass cls;
  std::vector<ComparisonRow> rows;
  /// True when the rows realize at least two distinct energy levels
  /// (meaningful only with >= 2 rows).
  bool distinct_energies = false;
};

EnergyComparison compare_across_structures(const CohomologyClass& cls);

}  // namespace bmx
