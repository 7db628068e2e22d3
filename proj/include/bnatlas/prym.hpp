#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bnatlas/core.hpp"
#include "bnatlas/noncontainment.hpp"

/* Prym-Brill-Noether input to the stratification graph: special curves
   (halves of unramified double covers with prescribed Prym variety
   behaviour) that lie in one expected maximal locus and provably avoid
   others, by the Schwarz dimension count or by a parity obstruction. */

namespace bnatlas {

/* Parameters (r, eps) with r >= 1 and 0 <= 2 eps < r pick out
     g_base = 1 + r(r+1)/2 + eps,   g_tilde = 2 g_base - 1,
   and the target locus (g_tilde, r, g_tilde - 1), which is always
   expected maximal with rho = 2 eps - r. */
struct PrymParams {
  Int r = 1;
  Int eps = 0;
  Int g_base = 2;
  Int g_tilde = 3;
  LocusId target;
  Int rho = 0;

  friend bool operator==(const PrymParams&, const PrymParams&) = default;
};

PrymParams prym_params(Int r, Int eps);

/* Inverse direction: the unique (r, eps) whose target sits at genus
   g_tilde, when one exists (g_tilde odd and g_tilde - 1 - r(r+1) lands
   in [0, r)). */
std::optional<PrymParams> prym_params_at_genus(Int g_tilde);

/* Schwarz obstruction at B = (g, s, e): rho(B) == -s - 1. */
bool schwarz_predicate(const LocusId& b);

/* Parity obstruction at B = (g, s, e), for odd g: rho(B) == -s, e odd,
   and s % 4 != 3. */
bool parity_predicate(const LocusId& b);

/* Non-containment certificate target ⊄ b for whichever predicate
   applies (Schwarz checked first); Error("domain") if neither does or
   if b does not live at genus P.g_tilde. */
Certificate prym_certificate(const PrymParams& P, const LocusId& b);

/* All loci (g_tilde, s, e) with negative rho that one of the two
   predicates rules out as containers of the target, scanned over
   1 <= s <= r_max(g_tilde), 2s <= e, sorted by (s, e). */
std::vector<Certificate> cor54_certificates(Int r, Int eps);

/* One clause of a failed hypothesis, reported as a value (a finding),
   not as an exception. */
struct HypothesisGap {
  std::string failed_clause;
  std::string details;

  friend bool operator==(const HypothesisGap&, const HypothesisGap&) = default;
};

/* Outcome of the rank-pair probe at even r with r % 4 != 0:
   g = r^2 + r + 1, a = (g, r, g-1), b = (g, r-1, g-3).  Either a
   certificate that b cannot contain a, or the named clause at which
   both predicates fail (for this family: the degree g-3 = (r+2)(r-1)
   is always even, so the parity route's oddness clause fails). */
struct Cor55Result {
  LocusId a;
  LocusId b;
  Int rho_a = 0;
  Int rho_b = 0;
  std::optional<Certificate> certificate;
  std::optional<HypothesisGap> gap;

  friend bool operator==(const Cor55Result&, const Cor55Result&) = default;
};

/* Requires r even with r % 4 != 0. */
Cor55Result cor55_check(Int r);

}  // namespace bnatlas
