#include "bmx/hirzebruch.hpp"

#include <numbers>

namespace bmx {

Rat calabi_energy_hs_over_pi(const Rat& a, unsigned k) {
  Rat kk(static_cast<std::int64_t>(k));
  if (a <= kk)
    fail(ErrorCode::DomainError,
         "energy formula needs a > k (Kahler range), got a=" + a.str() +
             ", k=" + std::to_string(k));
  Rat k2 = kk * kk;
  Rat num = a * a * a + Rat(4) * a * a + (Rat(4) + k2) * a - Rat(4) * k2;
  Rat den = Rat(3) * a * a - k2;
  return Rat(12) * num / den;
}

double calabi_energy_hs(const Rat& a, unsigned k) {
  return calabi_energy_hs_over_pi(a, k).to_double() * std::numbers::pi;
}

Rat calabi_energy_class_over_pi(const CohomologyClass& cls) {
  if (!is_kahler(cls))
    fail(ErrorCode::NotKahler, "Calabi energy needs a Kahler class");
  Rat a = Rat(2) * cls.q / cls.p - Rat(static_cast<std::int64_t>(cls.k));
  return calabi_energy_hs_over_pi(a, cls.k);
}

double calabi_energy_class(const CohomologyClass& cls) {
  return calabi_energy_class_over_pi(cls).to_double() * std::numbers::pi;
}

EnergyComparison compare_across_structures(const CohomologyClass& cls) {
  EnergyComparison cmp;
  cmp.cls = cls;
  for (unsigned n : compatible_structures(cls)) {
    ComparisonRow row;
    row.n = n;
    row.cls = change_basis(cls, n);
    row.a = Rat(2) * row.cls.q / row.cls.p - Rat(static_cast<std::int64_t>(n));
    row.energy_over_pi = calabi_energy_hs_over_pi(row.a, n);
    row.energy = row.energy_over_pi.to_double() * std::numbers::pi;
    cmp.rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < cmp.rows.size(); ++i)
    for (std::size_t j = i + 1; j < cmp.rows.size(); ++j)
      if (cmp.rows[i].energy_over_pi != cmp.rows[j].energy_over_pi)
        cmp.distinct_energies = true;
  return cmp;
}

}  // namespace bmx
