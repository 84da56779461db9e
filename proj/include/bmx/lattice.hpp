#pragma once

#include <vector>

#include "bmx/rational.hpp"

namespace bmx {

/// A second-cohomology class of the k-th Hirzebruch surface, written in the
/// Poincare-dual basis (c_k, f) of the section and fiber cycles:
/// the class is p*c_k + q*f. Coefficients are exact rationals; classes with
/// different k live in different bases and must be converted before pairing.
struct CohomologyClass {
  unsigned k = 0;
  Rat p;
  Rat q;
};

/// A homology 2-cycle a*C_k + b*F (section and fiber classes).
struct HomologyCycle {
  unsigned k = 0;
  Rat coeff_c;
  Rat coeff_f;
};

/// Poincare duality: (C_k, F) coefficients map to (c_k, f) coefficients.
CohomologyClass poincare_dual(const HomologyCycle& z);

/// Intersection pairing in the (c_k, f) basis. The Gram matrix is
/// [[-k, 1], [1, 0]]: c.c = -k, c.f = 1, f.f = 0.
/// Throws BasisMismatch if the k tags differ.
Rat intersect(const CohomologyClass& a, const CohomologyClass& b);

/// Rewrites a class in the (c_n, f) basis: c_k = c_n + (n-k)/2 * f, so
/// (p, q) becomes (p, p*(n-k)/2 + q). Requires n == k (mod 2); the basis
/// change is an isometry of the intersection form.
CohomologyClass change_basis(const CohomologyClass& a, unsigned n);

/// Kahler cone test on F_k: p > 0 and q > k*p, both strict.
bool is_kahler(const CohomologyClass& a);

/// All n >= 0 with n == k (mod 2) for which the class stays Kahler after
/// change_basis, i.e. n < 2q/p - k. Ascending; always contains k.
/// Throws NotKahler if the class is not Kahler to begin with.
std::vector<unsigned> compatible_structures(const CohomologyClass& a);

/// First Chern class of F_k in the (c_k, f) basis: c1 = 2 c_k + (k+2) f.
///
/// Derivation (adjunction, both generators are rational curves):
///   fiber F:    F.F = 0,  genus 0  =>  K.F = -2
///   section C:  C.C = -k, genus 0  =>  K.C = k - 2
/// Writing K = alpha c_k + beta f gives alpha = -2 (pair with f) and
/// beta - k*alpha = k - 2 (pair with c_k), so K = -2 c_k - (k+2) f and
/// c1 = -K.
CohomologyClass first_chern(unsigned k);

/// 32 pi^2 (c1 . A)^2 / (A . A), the scalar-curvature energy lower bound for
/// classes of positive self-intersection. Exact rational part, one
/// multiplication by pi^2 at the end.
double lebrun_bound(const CohomologyClass& a);

/// Exact rational factor of the bound: lebrun_bound = pi^2 * this.
Rat lebrun_bound_over_pi2(const CohomologyClass& a);

}  // namespace bmx
