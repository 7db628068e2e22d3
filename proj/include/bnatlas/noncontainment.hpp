#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bnatlas/chains.hpp"
#include "bnatlas/core.hpp"
#include "bnatlas/maximal.hpp"

/* Non-containment certificates between Brill-Noether loci and the
   stratification graph they assemble into.  A certificate is a
   self-contained arithmetic witness: verify_certificate re-derives the
   claimed facts from the stored subject and witness alone. */

namespace bnatlas {

enum class CertKind {
  DimThm34,
  PointedDivisorRule,
  Codim2Rule,
  TrivialContainment,
  SerreIdentification,
  PrymSchwarz,
  PrymParity,
  ExpDimComponent,
};

std::string to_string(CertKind k);
CertKind cert_kind_from_string(const std::string& s);

struct Certificate {
  CertKind kind = CertKind::DimThm34;
  nlohmann::json subject;
  nlohmann::json witness;
  bool verified = false;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/* Arithmetic re-check of a certificate from its stored data; returns
   false (never throws) on malformed or dishonest certificates. */
bool verify_certificate(const Certificate& cert);

/* A codimension-1 locus cannot sit inside a deeper one. */
bool rule_divisor_vs_deeper(Int rho_a, Int rho_b);

/* A codimension-2 locus a with d < g+r and r+1 <= g-d+r cannot sit
   inside a locus of codimension >= 3. */
bool rule_codim2_vs_deeper(const LocusId& a, Int rho_b);

/* Certificates for the two rules above; Error("domain") when the
   hypotheses do not hold for (a, b).  Both require a.g == b.g. */
Certificate divisor_rule_certificate(const LocusId& a, const LocusId& b);
Certificate codim2_rule_certificate(const LocusId& a, const LocusId& b);

/* Containment certificate for one trivial move out of `from`. */
Certificate trivial_containment_certificate(const LocusId& from,
                                            const TrivialContainment& move);

/* from and serre_dual(from) label the same locus. */
Certificate serre_identification_certificate(const LocusId& from);

/* Dimension-based non-containment between expected maximal loci of the
   same genus: a balanced chain pins dim of the locus of a at rho(a)
   worth of codimension, so rho(b) < rho(a) forbids a inside b.  nullopt
   when rho(b) >= rho(a); Error("domain") unless both loci are expected
   maximal of the same genus. */
std::optional<Certificate> thm34_certificate(const LocusId& a,
                                             const LocusId& b);

enum class EdgeLabel { Contained, NotContained, Unknown };

std::string to_string(EdgeLabel label);

/* Ordered claim about the pair (from, to): Contained means the locus of
   `from` lies inside the locus of `to`; NotContained the negation;
   Unknown carries a flag (always "open") instead of a certificate. */
struct GraphEdge {
  LocusId from;
  LocusId to;
  EdgeLabel label = EdgeLabel::Unknown;
  std::optional<std::size_t> certificate;  // index into certificates
  std::string flag;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct StratificationGraph {
  Int genus = 0;
  ConjectureStatus status;
  std::vector<LocusId> nodes;
  std::vector<GraphEdge> edges;
  std::vector<Certificate> certificates;

  friend bool operator==(const StratificationGraph&,
                         const StratificationGraph&) = default;
};

/* The expected maximal loci at genus g with one edge per ordered pair:
   trivial/Serre containments first (these never fire between distinct
   expected maximal loci, but the builder checks), then the dimension
   certificate, then the Prym certificates when `from` is the Prym
   target at this genus, and Unknown/"open" otherwise. */
StratificationGraph build_stratification_graph(Int g);

/* Structural audit: self-edges, duplicate or contradictory ordered
   pairs, non-maximal nodes, certificate re-verification and linkage,
   and flags on unknown edges. */
VerificationReport consistency_check(const StratificationGraph& G);

/* Graphviz rendering: digraph "bn_poset_g<G>", rankdir=LR, node ids
   "g_r_d", labels "M^r_{g,d} (rho=R)"; solid = not-contained, dashed =
   unknown, bold = contained. */
std::string to_dot(const StratificationGraph& G);

}  // namespace bnatlas
