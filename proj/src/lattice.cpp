#include "bmx/lattice.hpp"

#include <cmath>
#include <numbers>

namespace bmx {

CohomologyClass poincare_dual(const HomologyCycle& z) {
  return CohomologyClass{z.k, z.coeff_c, z.coeff_f};
}

Rat intersect(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.k != b.k)
    fail(ErrorCode::BasisMismatch,
         "intersection requires matching bases (k=" + std::to_string(a.k) +
             " vs k=" + std::to_string(b.k) + "); apply change_basis first");
  Rat k(static_cast<std::int64_t>(a.k));
  return a.p * b.q + a.q * b.p - k * a.p * b.p;
}

CohomologyClass change_basis(const CohomologyClass& a, unsigned n) {
  if ((a.k % 2) != (n % 2))
    fail(ErrorCode::ParityError,
         "basis change needs n == k (mod 2), got k=" + std::to_string(a.k) +
             ", n=" + std::to_string(n));
  Rat shift(static_cast<std::int64_t>(n) - static_cast<std::int64_t>(a.k), 2);
  return CohomologyClass{n, a.p, a.p * shift + a.q};
}

bool is_kahler(const CohomologyClass& a) {
  Rat k(static_cast<std::int64_t>(a.k));
  return a.p > Rat(0) && a.q > k * a.p;
}

std::vector<unsigned> compatible_structures(const CohomologyClass& a) {
  if (!is_kahler(a))
    fail(ErrorCode::NotKahler, "class is not Kahler; no compatible structures");
  Rat bound = Rat(2) * a.q / a.p - Rat(static_cast<std::int64_t>(a.k));
  std::vector<unsigned> out;
  for (unsigned n = a.k % 2; Rat(static_cast<std::int64_t>(n)) < bound; n += 2)
    out.push_back(n);
  return out;
}

CohomologyClass first_chern(unsigned k) {
  return CohomologyClass{k, Rat(2), Rat(static_cast<std::int64_t>(k) + 2)};
}

Rat lebrun_bound_over_pi2(const CohomologyClass& a) {
  Rat self = intersect(a, a);
  if (self <= Rat(0))
    fail(ErrorCode::DegenerateClass,
         "bound requires positive self-intersection, got " + self.str());
  Rat c1a = intersect(first_chern(a.k), a);
  return Rat(32) * c1a * c1a / self;
}

double lebrun_bound(const CohomologyClass& a) {
  const double pi = std::numbers::pi;
  return lebrun_bound_over_pi2(a).to_double() * pi * pi;
}

}  // namespace bmx
