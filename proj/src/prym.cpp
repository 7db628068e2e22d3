#include "bnatlas/prym.hpp"

#include <string>

#include "bnatlas/json_io.hpp"
#include "bnatlas/maximal.hpp"

namespace bnatlas {

PrymParams prym_params(Int r, Int eps) {
  if (r < 1 || r > kMaxRank)
    fail("domain", "prym parameters need r >= 1, got r = " + std::to_string(r));
  if (eps < 0 || 2 * eps >= r)
    fail("domain", "prym parameters need 0 <= 2*eps < r, got eps = " +
                       std::to_string(eps) + " at r = " + std::to_string(r));
  PrymParams P;
  P.r = r;
  P.eps = eps;
  P.g_base = checked_add(checked_add(1, checked_mul(r, r + 1) / 2), eps);
  P.g_tilde = checked_sub(checked_mul(2, P.g_base), 1);
  P.target = LocusId{P.g_tilde, r, P.g_tilde - 1};
  P.rho = 2 * eps - r;
  if (rho(P.target) != P.rho || !is_expected_maximal(P.target))
    fail("internal", "prym target bookkeeping failed at r = " +
                         std::to_string(r) + ", eps = " + std::to_string(eps));
  return P;
}

std::optional<PrymParams> prym_params_at_genus(Int g_tilde) {
  if (g_tilde < 3 || g_tilde > kMaxGenus) return std::nullopt;
  if (g_tilde % 2 == 0) return std::nullopt;
  const Int x = g_tilde - 1;
  Int r = isqrt(x);
  while (r >= 1 && checked_mul(r, r + 1) > x) --r;
  if (r < 1) return std::nullopt;
  const Int rem = x - r * (r + 1);
  if (rem < 0 || rem >= r) return std::nullopt;
  if (rem % 2 != 0) return std::nullopt;  // impossible for odd g_tilde
  return prym_params(r, rem / 2);
}

bool schwarz_predicate(const LocusId& b) {
  validate(b);
  return rho(b) == -b.r - 1;
}

bool parity_predicate(const LocusId& b) {
  validate(b);
  if (b.g % 2 == 0)
    fail("domain", "the parity obstruction needs odd genus, got " +
                       to_string(b));
  return rho(b) == -b.r && b.d % 2 == 1 && b.r % 4 != 3;
}

Certificate prym_certificate(const PrymParams& P, const LocusId& b) {
  validate(b);
  if (b.g != P.g_tilde)
    fail("domain", "certificate target must live at genus " +
                       std::to_string(P.g_tilde) + ", got " + to_string(b));
  Certificate c;
  if (schwarz_predicate(b))
    c.kind = CertKind::PrymSchwarz;
  else if (parity_predicate(b))
    c.kind = CertKind::PrymParity;
  else
    fail("domain", "neither prym obstruction applies at " + to_string(b));
  c.subject = nlohmann::json{{"a", P.target}, {"b", b}};
  c.witness = nlohmann::json{
      {"r", P.r}, {"eps", P.eps}, {"g_base", P.g_base}, {"rho_b", rho(b)}};
  c.verified = verify_certificate(c);
  if (!c.verified)
    fail("internal", "freshly built prym certificate failed verification");
  return c;
}

std::vector<Certificate> cor54_certificates(Int r, Int eps) {
  const PrymParams P = prym_params(r, eps);
  const Int g = P.g_tilde;
  std::vector<Certificate> out;
  const Int top = r_max(g);
  for (Int s = 1; s <= top; ++s) {
    for (Int e = 2 * s; e <= 2 * g - 2; ++e) {
      const LocusId b{g, s, e};
      if (rho(b) >= 0) break;  // rho grows with e; nothing further is proper
      if (b == P.target) continue;
      if (schwarz_predicate(b) || parity_predicate(b))
        out.push_back(prym_certificate(P, b));
    }
  }
  return out;
}

Cor55Result cor55_check(Int r) {
  if (r < 2 || r % 2 != 0)
    fail("domain", "cor55_check needs even r >= 2, got " + std::to_string(r));
  if (r % 4 == 0)
    fail("domain", "cor55_check needs r % 4 != 0, got " + std::to_string(r));
  const Int g = checked_add(checked_add(checked_mul(r, r), r), 1);

  Cor55Result res;
  res.a = LocusId{g, r, g - 1};
  res.b = LocusId{g, r - 1, g - 3};
  res.rho_a = rho(res.a);
  res.rho_b = rho(res.b);
  if (res.rho_a != -r || res.rho_b != -r + 1)
    fail("internal", "rank-pair rho bookkeeping failed at r = " +
                         std::to_string(r));
  const PrymParams P = prym_params(r, 0);
  if (P.target != res.a)
    fail("internal", "rank-pair target mismatch at r = " + std::to_string(r));

  if (schwarz_predicate(res.b)) {
    res.certificate = prym_certificate(P, res.b);
    return res;
  }
  /* Only the parity route can still apply; name the clauses that fail. */
  std::vector<std::string> failed;
  if (rho(res.b) != -res.b.r) failed.push_back("rho-is-minus-s");
  if (res.b.d % 2 == 0) failed.push_back("d-is-odd");
  if (res.b.r % 4 == 3) failed.push_back("rank-mod-4");
  if (failed.empty()) {
    res.certificate = prym_certificate(P, res.b);
    return res;
  }
  HypothesisGap gap;
  for (std::size_t i = 0; i < failed.size(); ++i) {
    if (i > 0) gap.failed_clause += ",";
    gap.failed_clause += failed[i];
  }
  gap.details =
      "b = " + to_string(res.b) + " has rho = " + std::to_string(res.rho_b) +
      ", so only the parity obstruction could exclude it, but its degree " +
      std::to_string(res.b.d) + " = (r+2)(r-1) is even for every even r";
  res.gap = gap;
  return res;
}

}  // namespace bnatlas
