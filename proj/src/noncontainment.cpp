#include "bnatlas/noncontainment.hpp"

#include <map>
#include <set>
#include <sstream>
#include <utility>

#include "bnatlas/dimension.hpp"
#include "bnatlas/json_io.hpp"
#include "bnatlas/prym.hpp"

namespace bnatlas {

std::string to_string(CertKind k) {
  switch (k) {
    case CertKind::DimThm34: return "dim-thm34";
    case CertKind::PointedDivisorRule: return "pointed-divisor-rule";
    case CertKind::Codim2Rule: return "codim2-rule";
    case CertKind::TrivialContainment: return "trivial-containment";
    case CertKind::SerreIdentification: return "serre-identification";
    case CertKind::PrymSchwarz: return "prym-schwarz";
    case CertKind::PrymParity: return "prym-parity";
    case CertKind::ExpDimComponent: return "exp-dim-component";
  }
  fail("internal", "unknown certificate kind");
}

CertKind cert_kind_from_string(const std::string& s) {
  if (s == "dim-thm34") return CertKind::DimThm34;
  if (s == "pointed-divisor-rule") return CertKind::PointedDivisorRule;
  if (s == "codim2-rule") return CertKind::Codim2Rule;
  if (s == "trivial-containment") return CertKind::TrivialContainment;
  if (s == "serre-identification") return CertKind::SerreIdentification;
  if (s == "prym-schwarz") return CertKind::PrymSchwarz;
  if (s == "prym-parity") return CertKind::PrymParity;
  if (s == "exp-dim-component") return CertKind::ExpDimComponent;
  fail("domain", "unknown certificate kind \"" + s + "\"");
}

std::string to_string(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::Contained: return "contained";
    case EdgeLabel::NotContained: return "not-contained";
    case EdgeLabel::Unknown: return "unknown";
  }
  fail("internal", "unknown edge label");
}

bool rule_divisor_vs_deeper(Int rho_a, Int rho_b) {
  return rho_a == -1 && rho_b <= -2;
}

bool rule_codim2_vs_deeper(const LocusId& a, Int rho_b) {
  validate(a);
  return rho(a) == -2 && a.d < checked_add(a.g, a.r) &&
         a.r + 1 <= checked_add(checked_sub(a.g, a.d), a.r) && rho_b <= -3;
}

namespace {

Certificate seal(Certificate cert) {
  cert.verified = verify_certificate(cert);
  if (!cert.verified)
    fail("internal", "freshly built " + to_string(cert.kind) +
                         " certificate failed verification");
  return cert;
}

}  // namespace

Certificate divisor_rule_certificate(const LocusId& a, const LocusId& b) {
  validate(a);
  validate(b);
  if (a.g != b.g)
    fail("domain", "divisor rule needs equal genera, got " + to_string(a) +
                       " vs " + to_string(b));
  const Int rho_a = rho(a);
  const Int rho_b = rho(b);
  if (!rule_divisor_vs_deeper(rho_a, rho_b))
    fail("domain", "divisor rule needs rho(a) = -1 and rho(b) <= -2, got " +
                       std::to_string(rho_a) + " and " + std::to_string(rho_b));
  Certificate cert;
  cert.kind = CertKind::PointedDivisorRule;
  cert.subject = nlohmann::json{{"a", a}, {"b", b}};
  cert.witness = nlohmann::json{{"rho_a", rho_a}, {"rho_b", rho_b}};
  return seal(std::move(cert));
}

Certificate codim2_rule_certificate(const LocusId& a, const LocusId& b) {
  validate(a);
  validate(b);
  if (a.g != b.g)
    fail("domain", "codim-2 rule needs equal genera, got " + to_string(a) +
                       " vs " + to_string(b));
  const Int rho_b = rho(b);
  if (!rule_codim2_vs_deeper(a, rho_b))
    fail("domain", "codim-2 rule hypotheses fail for " + to_string(a) +
                       " vs " + to_string(b));
  Certificate cert;
  cert.kind = CertKind::Codim2Rule;
  cert.subject = nlohmann::json{{"a", a}, {"b", b}};
  cert.witness = nlohmann::json{{"rho_a", rho(a)}, {"rho_b", rho_b}};
  return seal(std::move(cert));
}

Certificate trivial_containment_certificate(const LocusId& from,
                                            const TrivialContainment& move) {
  validate(from);
  Certificate cert;
  cert.kind = CertKind::TrivialContainment;
  cert.subject = nlohmann::json{{"from", from}, {"to", move.target}};
  cert.witness = nlohmann::json{{"rule", to_string(move.rule)},
                                {"rho_from", rho(from)},
                                {"rho_to", move.target_rho}};
  return seal(std::move(cert));
}

Certificate serre_identification_certificate(const LocusId& from) {
  validate(from);
  const LocusId to = serre_dual(from);
  Certificate cert;
  cert.kind = CertKind::SerreIdentification;
  cert.subject = nlohmann::json{{"from", from}, {"to", to}};
  cert.witness = nlohmann::json{{"rho", rho(from)}};
  return seal(std::move(cert));
}

std::optional<Certificate> thm34_certificate(const LocusId& a,
                                             const LocusId& b) {
  validate(a);
  validate(b);
  if (a.g != b.g)
    fail("domain", "degeneration bound needs equal genera, got " +
                       to_string(a) + " vs " + to_string(b));
  if (!is_expected_maximal(a) || !is_expected_maximal(b))
    fail("domain", "degeneration bound needs expected-maximal loci, got " +
                       to_string(a) + " vs " + to_string(b));
  const Int rho_a = rho(a);
  const Int rho_b = rho(b);
  if (rho_b >= rho_a) return std::nullopt;
  if (star_classification(a) == StarClass::ExceptionCase)
    /* The exception case realizes the strictly smallest rho among
       expected-maximal loci of its genus, so no deeper b can exist. */
    fail("internal", "exception-case locus " + to_string(a) +
                         " reached with a deeper comparison target");
  const ChainDecomposition chain = build_chain_prop31(a);
  nlohmann::json bounds = nlohmann::json::array();
  Int bound_sum = 0;
  for (const ChainComponent& c : chain.components) {
    bounds.push_back(c.rho);
    bound_sum = checked_add(bound_sum, c.rho);
  }
  Certificate cert;
  cert.kind = CertKind::DimThm34;
  cert.subject = nlohmann::json{{"a", a}, {"b", b}};
  cert.witness = nlohmann::json{{"chain", chain},
                                {"bounds", bounds},
                                {"bound_sum", bound_sum},
                                {"rho_b", rho_b}};
  return seal(std::move(cert));
}

bool verify_certificate(const Certificate& cert) {
  try {
    switch (cert.kind) {
      case CertKind::TrivialContainment: {
        const auto from = cert.subject.at("from").get<LocusId>();
        const auto to = cert.subject.at("to").get<LocusId>();
        const auto rule = cert.witness.at("rule").get<std::string>();
        const Int rho_from = cert.witness.at("rho_from").get<Int>();
        const Int rho_to = cert.witness.at("rho_to").get<Int>();
        validate(from);
        validate(to);
        if (rho(from) != rho_from || rho_from >= 0) return false;
        if (rho(to) != rho_to) return false;
        if (rule == "add-basepoint")
          return to == LocusId{from.g, from.r, from.d + 1};
        if (rule == "remove-non-basepoint")
          return from.r >= 1 && from.d >= 1 &&
                 to == LocusId{from.g, from.r - 1, from.d - 1} && rho_to < 0;
        return false;
      }
      case CertKind::SerreIdentification: {
        const auto from = cert.subject.at("from").get<LocusId>();
        const auto to = cert.subject.at("to").get<LocusId>();
        const Int r = cert.witness.at("rho").get<Int>();
        validate(from);
        validate(to);
        return serre_dual(from) == to && rho(from) == r && rho(to) == r;
      }
      case CertKind::PointedDivisorRule: {
        const auto a = cert.subject.at("a").get<LocusId>();
        const auto b = cert.subject.at("b").get<LocusId>();
        const Int rho_a = cert.witness.at("rho_a").get<Int>();
        const Int rho_b = cert.witness.at("rho_b").get<Int>();
        validate(a);
        validate(b);
        return a.g == b.g && rho(a) == rho_a && rho(b) == rho_b &&
               rule_divisor_vs_deeper(rho_a, rho_b);
      }
      case CertKind::Codim2Rule: {
        const auto a = cert.subject.at("a").get<LocusId>();
        const auto b = cert.subject.at("b").get<LocusId>();
        const Int rho_a = cert.witness.at("rho_a").get<Int>();
        const Int rho_b = cert.witness.at("rho_b").get<Int>();
        validate(a);
        validate(b);
        return a.g == b.g && rho(a) == rho_a && rho(b) == rho_b &&
               rule_codim2_vs_deeper(a, rho_b);
      }
      case CertKind::DimThm34: {
        const auto a = cert.subject.at("a").get<LocusId>();
        const auto b = cert.subject.at("b").get<LocusId>();
        const auto chain = cert.witness.at("chain").get<ChainDecomposition>();
        const auto bounds = cert.witness.at("bounds");
        const Int bound_sum = cert.witness.at("bound_sum").get<Int>();
        const Int rho_b = cert.witness.at("rho_b").get<Int>();
        validate(a);
        validate(b);
        if (a.g != b.g) return false;
        if (!is_expected_maximal(a) || !is_expected_maximal(b)) return false;
        if (rho(b) != rho_b) return false;
        if (chain.source != a) return false;
        if (!verify_chain(chain).all_passed()) return false;
        if (!bounds.is_array() ||
            bounds.size() != chain.components.size())
          return false;
        Int total = 0;
        for (std::size_t i = 0; i < chain.components.size(); ++i) {
          if (bounds[i].get<Int>() != chain.components[i].rho) return false;
          total = checked_add(total, chain.components[i].rho);
        }
        return total == bound_sum && bound_sum == rho(a) &&
               rho_b < bound_sum;
      }
      case CertKind::PrymSchwarz:
      case CertKind::PrymParity: {
        const auto a = cert.subject.at("a").get<LocusId>();
        const auto b = cert.subject.at("b").get<LocusId>();
        const Int r = cert.witness.at("r").get<Int>();
        const Int eps = cert.witness.at("eps").get<Int>();
        const Int g_base = cert.witness.at("g_base").get<Int>();
        const Int rho_b = cert.witness.at("rho_b").get<Int>();
        validate(b);
        const PrymParams P = prym_params(r, eps);
        if (P.g_base != g_base) return false;
        if (P.target != a || b.g != P.g_tilde) return false;
        if (rho(b) != rho_b) return false;
        return cert.kind == CertKind::PrymSchwarz ? schwarz_predicate(b)
                                                  : parity_predicate(b);
      }
      case CertKind::ExpDimComponent: {
        const auto locus = cert.subject.at("locus").get<LocusId>();
        const auto dc = cert.witness.at("tree").get<DimCertificate>();
        return dc.root == locus && verify_dim_certificate(dc).all_passed();
      }
    }
    return false;
  } catch (const std::exception&) {
    return false;
  }
}

StratificationGraph build_stratification_graph(Int genus) {
  StratificationGraph G;
  G.genus = genus;
  G.status = conjecture_status(genus);
  G.nodes = enumerate_expected_maximal(genus);
  const std::optional<PrymParams> pp = prym_params_at_genus(genus);

  for (const LocusId& A : G.nodes) {
    for (const LocusId& B : G.nodes) {
      if (A == B) continue;
      GraphEdge e;
      e.from = A;
      e.to = B;
      bool decided = false;

      for (const TrivialContainment& move : trivial_containments(A)) {
        if (move.target == B) {
          e.label = EdgeLabel::Contained;
          e.certificate = G.certificates.size();
          G.certificates.push_back(trivial_containment_certificate(A, move));
          decided = true;
          break;
        }
      }

      if (!decided && A.d <= 2 * A.g - 2 && A.g - A.d + A.r - 1 >= 0 &&
          serre_dual(A) == B) {
        e.label = EdgeLabel::Contained;
        e.certificate = G.certificates.size();
        G.certificates.push_back(serre_identification_certificate(A));
        decided = true;
      }

      if (!decided) {
        if (std::optional<Certificate> cert = thm34_certificate(A, B)) {
          e.label = EdgeLabel::NotContained;
          e.certificate = G.certificates.size();
          G.certificates.push_back(std::move(*cert));
          decided = true;
        }
      }

      if (!decided && pp && pp->target == A &&
          (schwarz_predicate(B) || parity_predicate(B))) {
        e.label = EdgeLabel::NotContained;
        e.certificate = G.certificates.size();
        G.certificates.push_back(prym_certificate(*pp, B));
        decided = true;
      }

      if (!decided) {
        e.label = EdgeLabel::Unknown;
        e.flag = "open";
      }
      G.edges.push_back(std::move(e));
    }
  }
  return G;
}

VerificationReport consistency_check(const StratificationGraph& G) {
  VerificationReport rep;
  const auto guarded = [](auto&& fn) -> bool {
    try {
      return fn();
    } catch (const std::exception&) {
      return false;
    }
  };
  const auto add = [&rep](const char* name, bool ok) {
    rep.checks.emplace_back(name, ok);
  };

  add("no-self-edges", guarded([&] {
        for (const GraphEdge& e : G.edges)
          if (e.from == e.to) return false;
        return true;
      }));

  add("no-duplicate-edges", guarded([&] {
        std::map<std::pair<LocusId, LocusId>, int> counts;
        for (const GraphEdge& e : G.edges) ++counts[{e.from, e.to}];
        for (const auto& [key, n] : counts)
          if (n != 1) return false;
        return true;
      }));

  add("no-contradictions", guarded([&] {
        std::map<std::pair<LocusId, LocusId>, std::set<EdgeLabel>> labels;
        for (const GraphEdge& e : G.edges)
          labels[{e.from, e.to}].insert(e.label);
        for (const auto& [key, seen] : labels)
          if (seen.size() != 1) return false;
        return true;
      }));

  add("nodes-expected-maximal", guarded([&] {
        std::set<LocusId> known;
        for (const LocusId& n : G.nodes) {
          if (n.g != G.genus || !is_expected_maximal(n)) return false;
          known.insert(n);
        }
        for (const GraphEdge& e : G.edges)
          if (!known.count(e.from) || !known.count(e.to)) return false;
        return true;
      }));

  add("certificates-verify", guarded([&] {
        for (const Certificate& c : G.certificates)
          if (!c.verified || !verify_certificate(c)) return false;
        return true;
      }));

  add("certificate-subjects-match", guarded([&] {
        std::set<std::size_t> used;
        for (const GraphEdge& e : G.edges) {
          if (!e.certificate) continue;
          const std::size_t idx = *e.certificate;
          if (idx >= G.certificates.size()) return false;
          if (!used.insert(idx).second) return false;
          const Certificate& c = G.certificates[idx];
          if (e.label == EdgeLabel::Contained) {
            if (c.kind != CertKind::TrivialContainment &&
                c.kind != CertKind::SerreIdentification)
              return false;
            if (c.subject.at("from").get<LocusId>() != e.from ||
                c.subject.at("to").get<LocusId>() != e.to)
              return false;
          } else if (e.label == EdgeLabel::NotContained) {
            if (c.kind != CertKind::DimThm34 &&
                c.kind != CertKind::PrymSchwarz &&
                c.kind != CertKind::PrymParity)
              return false;
            if (c.subject.at("a").get<LocusId>() != e.from ||
                c.subject.at("b").get<LocusId>() != e.to)
              return false;
          } else {
            return false;  // Unknown edges carry no certificate.
          }
        }
        return true;
      }));

  add("unknown-edges-flagged", guarded([&] {
        for (const GraphEdge& e : G.edges) {
          if (e.label == EdgeLabel::Unknown) {
            if (e.flag != "open" || e.certificate) return false;
          } else {
            if (!e.certificate) return false;
          }
        }
        return true;
      }));

  return rep;
}

namespace {

std::string dot_id(const LocusId& L) {
  return std::to_string(L.g) + "_" + std::to_string(L.r) + "_" +
         std::to_string(L.d);
}

const char* dot_style(EdgeLabel l) {
  switch (l) {
    case EdgeLabel::Contained: return "bold";
    case EdgeLabel::NotContained: return "solid";
    case EdgeLabel::Unknown: return "dashed";
  }
  fail("internal", "unknown edge label");
}

}  // namespace

std::string to_dot(const StratificationGraph& G) {
  std::ostringstream out;
  out << "digraph \"bn_poset_g" << G.genus << "\" {\n";
  out << "  rankdir=LR;\n";
  for (const LocusId& n : G.nodes) {
    out << "  \"" << dot_id(n) << "\" [label=\"M^" << n.r << "_{" << n.g
        << "," << n.d << "} (rho=" << rho(n) << ")\"];\n";
  }
  for (const GraphEdge& e : G.edges) {
    out << "  \"" << dot_id(e.from) << "\" -> \"" << dot_id(e.to)
        << "\" [style=" << dot_style(e.label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace bnatlas
