#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bnatlas/core.hpp"

/* Chain-curve decompositions: a locus with rho < 0 is modelled by a chain
   of k components carrying limit linear series aspects; the vanishing
   orders at the nodes distribute the negativity of rho across components
   whose own loci have small codimension.  Everything here is exact
   integer bookkeeping plus re-checkable verification reports. */

namespace bnatlas {

/* Numeric condition (*) controlling when the balanced chain construction
   produces nonempty components:
     (2r+1) * floor((-rho+1)/2) - floor(-rho/2) <= g.
   Requires rho(L) < 0. */
bool star_condition(const LocusId& L);

enum class StarClass { Holds, ExceptionCase };

std::string to_string(StarClass c);

/* For an expected maximal locus, (*) holds except in one configuration:
   -rho = r+1 = ceil(sqrt(g)) odd with g not a perfect square.  In that
   exception-case the locus has the strictly smallest rho at its genus. */
StarClass star_classification(const LocusId& L);

enum class ChainMode { Prop31Even, Prop31Odd, Search };

std::string to_string(ChainMode m);
ChainMode chain_mode_from_string(const std::string& s);

/* One component of the chain.  degree = d - v where v is the total
   vanishing at its nodes (sum of the first entries of left and right);
   rho is of the component's own locus (genus, r, degree), which agrees
   with the adjusted rho of the aspect carrying the node marks. */
struct ChainComponent {
  Int genus = 1;
  Int degree = 0;
  std::optional<VanishingSequence> left;
  std::optional<VanishingSequence> right;
  Int rho = 0;

  friend bool operator==(const ChainComponent&,
                         const ChainComponent&) = default;
};

struct VerificationReport {
  std::vector<std::pair<std::string, bool>> checks;

  bool all_passed() const;
  friend bool operator==(const VerificationReport&,
                         const VerificationReport&) = default;
};

struct ChainDecomposition {
  LocusId source;
  Int k = 1;
  ChainMode mode = ChainMode::Prop31Even;
  /* Target per-component rho values: {-1,-2} for the balanced
     construction, caller-chosen subset of {-1,-2,-3} for searches. */
  std::vector<Int> allowed_rhos;
  std::vector<ChainComponent> components;
  VerificationReport report;

  friend bool operator==(const ChainDecomposition&,
                         const ChainDecomposition&) = default;
};

/* Balanced chain decomposition with k = floor((-rho+1)/2) components.
   Genus vector: k copies of r-1 (last entry r when -rho is odd), then
   r+1 added cyclically from the first entry until the sum is g; all node
   vanishing sequences are the consecutive runs fixed by the recursion
     v_1     = (g_1+2)/(r+1) + d - r - g_1
     v_i^1   = d - v_{i-1}^2 - r
     v_i^2   = v_i - v_i^1
   with (g_k+1)/(r+1) replacing (g_k+2)/(r+1) in the odd tail.
   Requires rho < 0, d < g+r and (*); errors "star-violated" /
   "empty-component" otherwise.  The attached report is fully evaluated. */
ChainDecomposition build_chain_prop31(const LocusId& L);

/* Re-checks a decomposition by pure arithmetic.  Checks reported, in
   order: genus-sum, congruence, component-genus, vanishing-bounds,
   refined-compatibility, component-rho, additivity. */
VerificationReport verify_chain(const ChainDecomposition& C);

/* One assignment of vanishing sequences to every node side of a chain
   with fixed (genera, r, d).  refined means a_i + a'_{r-i} = d at every
   node; crude schedules satisfy >= with at least one strict. */
struct Schedule {
  std::vector<std::pair<VanishingSequence, VanishingSequence>> nodes;
  std::vector<Int> component_rhos;  // adjusted rho per component
  Int total = 0;
  bool refined = true;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

/* Exhaustive oracle enumerating node schedules in lexicographic order.
   Scale-bounded: k <= 6 and d <= 30 by default (raise via the
   BN_ATLAS_ORACLE_SCALE environment variable); exceeding the bounds
   raises "oracle-scale".  cap bounds the number of schedules returned. */
std::vector<Schedule> enumerate_schedules(const std::vector<Int>& genera,
                                          Int r, Int d, bool refined_only,
                                          std::size_t cap = 1'000'000);

/* Searches for a verified chain decomposition whose component rho values
   all lie in allowed_rhos (subset of {-1,-2,-3}).  Deterministic order:
   k ascending, codimension vectors in lexicographic order, genus
   increments in colexicographic order; first verified decomposition
   wins.  allowed = {-1} requires -rho (2r+1) <= g; allowed = {-1,-2,-3}
   requires L expected maximal.  Exhaustion of the bounded search raises
   "no-decomposition-found". */
ChainDecomposition build_chain_search(const LocusId& L,
                                      const std::vector<Int>& allowed_rhos);

}  // namespace bnatlas
