#pragma once

#include <optional>
#include <vector>

#include "bnatlas/core.hpp"

/* Expected maximal Brill-Noether loci: the candidates for the maximal
   elements of the containment poset of proper Brill-Noether loci at a
   fixed genus, and the bookkeeping around the maximality conjecture. */

namespace bnatlas {

/* floor(sqrt(n)) by monotone bisection; no floating point anywhere. */
Int isqrt(Int n);

/* Largest rank carried by an expected maximal locus at genus g (g >= 3).
   With s = floor(sqrt(g)): s when g >= s^2 + s, else s - 1. */
Int r_max(Int g);

/* Degree of the expected maximal locus of rank r at genus g:
   d_max = r + ceil(g r / (r+1)) - 1.  Requires 1 <= r <= r_max(g). */
Int d_max(Int g, Int r);

/* rho(g, r, d_max(g, r)) without going through d_max:
   -(r + 1 - (g mod (r+1))), with the least nonnegative residue. */
Int exp_max_rho(Int g, Int r);

/* The expected maximal loci at genus g, ordered by rank:
   (g, r, d_max(g, r)) for 1 <= r <= r_max(g). */
std::vector<LocusId> enumerate_expected_maximal(Int g);

/* Sufficient test: 2r <= d <= g-1, 1 <= r <= r_max(g) and
   -r-1 <= rho <= -1 already force the locus to be expected maximal.
   Exposed separately so the equivalence can be property-tested. */
bool satisfies_small_rho_test(const LocusId& L);

/* Membership in enumerate_expected_maximal(g); requires canonical L. */
bool is_expected_maximal(const LocusId& L);

/* Status flags for the maximality conjecture at genus g:
   - exceptional: g in {7, 8, 9}, where the conjecture is known to fail;
   - verified_small: g <= 23, range with a published verification;
   - ckk_family: g+1 or g+2 equals lcm(1..n) for some n >= 3 (smallest
     witnessing n reported), a family with a published proof. */
struct ConjectureStatus {
  Int g = 0;
  bool exceptional = false;
  bool verified_small = false;
  bool ckk_family = false;
  std::optional<Int> ckk_n;

  friend bool operator==(const ConjectureStatus&,
                         const ConjectureStatus&) = default;
};

ConjectureStatus conjecture_status(Int g);

}  // namespace bnatlas
