#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bnatlas/chains.hpp"
#include "bnatlas/core.hpp"
#include "bnatlas/noncontainment.hpp"

/* Recursive certificates that a Brill-Noether locus has its expected
   dimension: the locus is split along hyperelliptic or rho-zero pieces
   until only base cases remain, and every node of the recursion records
   re-checkable arithmetic facts. */

namespace bnatlas {

enum class DimTag {
  CaseISplit,
  CaseIISplit,
  BaseR1,
  BaseSmallGenus,
  BaseRhoZero,
  BaseHyperelliptic,
  BaseDivisor,
};

std::string to_string(DimTag t);
DimTag dim_tag_from_string(const std::string& s);

/* One node of the recursion tree.  raw is the locus as produced by the
   parent split; locus is its canonical form (raw itself when rho >= 0);
   rho is shared by both.  checks are the named facts established when
   the node was built. */
struct DimNode {
  LocusId raw;
  LocusId locus;
  Int rho = 0;
  DimTag tag = DimTag::BaseRhoZero;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<DimNode> children;

  friend bool operator==(const DimNode&, const DimNode&) = default;
};

struct DimCertificate {
  LocusId root;
  DimNode tree;

  friend bool operator==(const DimCertificate&,
                         const DimCertificate&) = default;
};

/* Builds the recursion tree for L.  Requires d <= 2g-2 and
   -rho <= ceil(g/2); Error("domain") otherwise.  Splits:
     rho >= 0                  rho-zero leaf (before canonicalizing)
     g <= 7                    small-genus leaf
     r == 1                    rank-one leaf
     -rho >= r                 case I: hyperelliptic piece (r+2, r, 2r)
                               plus (g-r-2, r, d-r)
     -rho <= r-1, g == 3r+3+rho   divisor leaf (the split would
                                  reproduce the locus itself)
     -rho <= r-1 otherwise     case II: (3r+3+rho, r, 4r+rho) plus the
                               rho-zero piece (g-3r-3-rho, r, d-3r-rho)
   applied to canonical forms at every step. */
DimCertificate expected_dim_certificate(const LocusId& L);

/* Re-walks the tree: root linkage, child shapes per tag, canonical
   forms, leaf conditions, split parameters, rho additivity, and the
   stored per-node checks. */
VerificationReport verify_dim_certificate(const DimCertificate& C);

/* Wraps the tree as an exp-dim-component certificate whose witness
   embeds the full recursion. */
Certificate to_certificate(const DimCertificate& C);

}  // namespace bnatlas
