// Brute-force oracles, kept deliberately independent of the library's
// closed-form implementations: each one re-derives its answer by direct
// scanning so the fast paths can be checked against first principles.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "bnatlas/core.hpp"
#include "bnatlas/maximal.hpp"

namespace bnatlas::oracles {

/* A locus is expected maximal iff it is proper and neither trivial move
   lands in a proper locus.  Scan the whole canonical window. */
inline std::vector<LocusId> expected_maximal(Int g) {
  std::vector<LocusId> out;
  for (Int r = 1; r <= g; ++r) {
    for (Int d = 2 * r; d <= g - 1; ++d) {
      if (rho(g, r, d) >= 0) continue;
      if (rho(g, r, d + 1) < 0) continue;
      if (r >= 1 && rho(g, r - 1, d - 1) < 0) continue;
      out.push_back(LocusId{g, r, d});
    }
  }
  return out;
}

/* Count of refined schedules for a k-component chain: at each of the
   k-1 nodes the left sequence determines the right one by mirroring,
   and every mirror is itself valid, so the count is C(d+1, r+1)^(k-1). */
inline Int refined_schedule_count(Int k, Int r, Int d) {
  Int binom = 1;
  for (Int i = 0; i < r + 1; ++i)
    binom = binom * (d + 1 - i) / (i + 1);
  Int total = 1;
  for (Int i = 0; i + 1 < k; ++i) total = checked_mul(total, binom);
  return total;
}

/* Direct predicate scan behind the Prym corollary: all (s, e) pairs at
   genus g whose rho hits -s-1 (Schwarz) or -s with odd degree and
   s != 3 mod 4 (parity), excluding the target locus itself. */
struct PrymPair {
  Int s = 0, e = 0;
  bool schwarz = false;
  auto operator<=>(const PrymPair&) const = default;
};

inline std::vector<PrymPair> prym_pairs(Int g, const LocusId& target) {
  std::vector<PrymPair> out;
  for (Int s = 1; s <= r_max(g); ++s) {
    for (Int e = 2 * s; e <= 2 * g - 2; ++e) {
      const LocusId b{g, s, e};
      if (b == target) continue;
      const Int p = rho(b);
      if (p >= 0) continue;
      if (p == -s - 1)
        out.push_back({s, e, true});
      else if (p == -s && e % 2 == 1 && s % 4 != 3)
        out.push_back({s, e, false});
    }
  }
  return out;
}

/* Reachability of an expected-maximal locus through trivial moves,
   canonicalizing after every step.  Memoized per-genus walk. */
inline bool reaches_expected_maximal(const LocusId& start,
                                     std::map<LocusId, int>& memo) {
  const LocusId L = canonicalize(start);
  const auto it = memo.find(L);
  if (it != memo.end()) {
    if (it->second == 2) return true;
    if (it->second == 0) return false;
    return false;  // in-progress: cycles would be a bug, treat as failure
  }
  memo[L] = 1;
  bool ok = is_expected_maximal(L);
  if (!ok) {
    for (const TrivialContainment& move : trivial_containments(L)) {
      if (move.target_rho >= 0) continue;
      if (reaches_expected_maximal(move.target, memo)) {
        ok = true;
        break;
      }
    }
  }
  memo[L] = ok ? 2 : 0;
  return ok;
}

}  // namespace bnatlas::oracles
