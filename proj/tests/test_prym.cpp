#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <vector>

#include "json.hpp"

#include "bnatlas/core.hpp"
#include "bnatlas/json_io.hpp"
#include "bnatlas/maximal.hpp"
#include "bnatlas/noncontainment.hpp"
#include "bnatlas/prym.hpp"
#include "oracles.hpp"

using namespace bnatlas;

TEST_CASE("prym parameter golden values") {
  const PrymParams p20 = prym_params(2, 0);
  CHECK(p20.g_base == 4);
  CHECK(p20.g_tilde == 7);
  CHECK(p20.target == LocusId{7, 2, 6});
  CHECK(p20.rho == -2);

  const PrymParams p30 = prym_params(3, 0);
  CHECK(p30.g_base == 7);
  CHECK(p30.g_tilde == 13);
  CHECK(p30.target == LocusId{13, 3, 12});
  CHECK(p30.rho == -3);

  const PrymParams p31 = prym_params(3, 1);
  CHECK(p31.g_base == 8);
  CHECK(p31.g_tilde == 15);
  CHECK(p31.target == LocusId{15, 3, 14});
  CHECK(p31.rho == -1);

  const PrymParams p60 = prym_params(6, 0);
  CHECK(p60.g_base == 22);
  CHECK(p60.g_tilde == 43);
  CHECK(p60.target == LocusId{43, 6, 42});
  CHECK(p60.rho == -6);

  const PrymParams p51 = prym_params(5, 1);
  CHECK(p51.g_base == 17);
  CHECK(p51.g_tilde == 33);
  CHECK(p51.target == LocusId{33, 5, 32});
  CHECK(p51.rho == -3);

  const PrymParams p10 = prym_params(1, 0);
  CHECK(p10.g_base == 2);
  CHECK(p10.g_tilde == 3);
  CHECK(p10.target == LocusId{3, 1, 2});
  CHECK(p10.rho == -1);
}

TEST_CASE("prym parameter domain guards") {
  CHECK_THROWS_AS(prym_params(0, 0), Error);
  CHECK_THROWS_AS(prym_params(-1, 0), Error);
  CHECK_THROWS_AS(prym_params(2, 1), Error);   // 2*eps >= r
  CHECK_THROWS_AS(prym_params(1, 1), Error);
  CHECK_THROWS_AS(prym_params(5, -1), Error);
}

TEST_CASE("prym targets are expected maximal with the stated rho") {
  for (Int r = 1; r <= 60; ++r)
    for (Int eps = 0; 2 * eps < r; ++eps) {
      const PrymParams P = prym_params(r, eps);
      CHECK(P.g_tilde == 2 * P.g_base - 1);
      CHECK(P.target == LocusId{P.g_tilde, r, P.g_tilde - 1});
      CHECK(P.rho == 2 * eps - r);
      CHECK(rho(P.target) == P.rho);
      CHECK(is_expected_maximal(P.target));
    }
}

TEST_CASE("recovering prym parameters from the genus") {
  const auto at33 = prym_params_at_genus(33);
  REQUIRE(at33.has_value());
  CHECK(*at33 == prym_params(5, 1));

  const auto at7 = prym_params_at_genus(7);
  REQUIRE(at7.has_value());
  CHECK(*at7 == prym_params(2, 0));

  const auto at13 = prym_params_at_genus(13);
  REQUIRE(at13.has_value());
  CHECK(*at13 == prym_params(3, 0));

  const auto at15 = prym_params_at_genus(15);
  REQUIRE(at15.has_value());
  CHECK(*at15 == prym_params(3, 1));

  const auto at3 = prym_params_at_genus(3);
  REQUIRE(at3.has_value());
  CHECK(*at3 == prym_params(1, 0));

  CHECK_FALSE(prym_params_at_genus(9).has_value());
  CHECK_FALSE(prym_params_at_genus(11).has_value());
  CHECK_FALSE(prym_params_at_genus(12).has_value());
  CHECK_FALSE(prym_params_at_genus(34).has_value());
  CHECK_FALSE(prym_params_at_genus(2).has_value());

  // the map is a two-sided inverse on its image
  for (Int r = 1; r <= 40; ++r)
    for (Int eps = 0; 2 * eps < r; ++eps) {
      const PrymParams P = prym_params(r, eps);
      const auto back = prym_params_at_genus(P.g_tilde);
      REQUIRE(back.has_value());
      CHECK(*back == P);
    }
}

TEST_CASE("obstruction predicates") {
  CHECK(schwarz_predicate(LocusId{15, 2, 11}));   // rho = -3 = -s-1
  CHECK_FALSE(schwarz_predicate(LocusId{15, 3, 14}));  // rho = -1
  CHECK_FALSE(schwarz_predicate(LocusId{43, 6, 41}));  // rho = -13
  CHECK_FALSE(schwarz_predicate(LocusId{15, 2, 12}));  // rho = 0

  CHECK(parity_predicate(LocusId{33, 1, 17}));  // rho = -1, d odd
  CHECK_FALSE(parity_predicate(LocusId{33, 1, 16}));  // d even
  CHECK_FALSE(parity_predicate(LocusId{15, 2, 11}));  // rho = -s-1, not -s
  CHECK_FALSE(parity_predicate(LocusId{33, 3, 27}));  // s % 4 == 3
  CHECK_THROWS_AS(parity_predicate(LocusId{12, 1, 6}), Error);  // even genus
}

TEST_CASE("prym certificates build, verify, and resist tampering") {
  const PrymParams P = prym_params(5, 1);

  const Certificate schwarz = prym_certificate(P, LocusId{33, 2, 23});
  CHECK(schwarz.kind == CertKind::PrymSchwarz);
  CHECK(schwarz.verified);
  CHECK(verify_certificate(schwarz));
  CHECK(schwarz.subject.at("a").get<LocusId>() == LocusId{33, 5, 32});
  CHECK(schwarz.witness.at("g_base").get<Int>() == 17);
  CHECK(schwarz.witness.at("rho_b").get<Int>() == -3);

  const Certificate parity = prym_certificate(P, LocusId{33, 1, 17});
  CHECK(parity.kind == CertKind::PrymParity);
  CHECK(verify_certificate(parity));

  // wrong genus, or neither predicate
  CHECK_THROWS_AS(prym_certificate(P, LocusId{15, 2, 11}), Error);
  CHECK_THROWS_AS(prym_certificate(P, LocusId{33, 3, 27}), Error);

  SUBCASE("tampered fields are rejected") {
    Certificate bad = schwarz;
    bad.witness["g_base"] = 18;
    CHECK_FALSE(verify_certificate(bad));

    Certificate bent = schwarz;
    bent.witness["rho_b"] = -4;
    CHECK_FALSE(verify_certificate(bent));

    Certificate warped = schwarz;
    warped.subject["a"] = LocusId{33, 4, 30};
    CHECK_FALSE(verify_certificate(warped));

    Certificate twisted = schwarz;
    twisted.subject["b"] = LocusId{33, 2, 22};
    CHECK_FALSE(verify_certificate(twisted));

    Certificate renamed = parity;
    renamed.kind = CertKind::PrymSchwarz;  // wrong predicate for this b
    CHECK_FALSE(verify_certificate(renamed));

    Certificate hollow = schwarz;
    hollow.witness.erase("eps");
    CHECK_FALSE(verify_certificate(hollow));
  }
}

TEST_CASE("excluded-locus scans") {
  CHECK(cor54_certificates(2, 0).empty());
  CHECK(cor54_certificates(6, 0).empty());

  const auto at31 = cor54_certificates(3, 1);
  REQUIRE(at31.size() == 1);
  CHECK(at31[0].kind == CertKind::PrymSchwarz);
  CHECK(at31[0].subject.at("b").get<LocusId>() == LocusId{15, 2, 11});
  CHECK(verify_certificate(at31[0]));

  const auto at51 = cor54_certificates(5, 1);
  REQUIRE(at51.size() == 2);
  CHECK(at51[0].kind == CertKind::PrymParity);
  CHECK(at51[0].subject.at("b").get<LocusId>() == LocusId{33, 1, 17});
  CHECK(at51[1].kind == CertKind::PrymSchwarz);
  CHECK(at51[1].subject.at("b").get<LocusId>() == LocusId{33, 2, 23});
  for (const Certificate& c : at51) CHECK(verify_certificate(c));
}

TEST_CASE("excluded-locus scans match the brute-force oracle") {
  for (Int r = 1; r <= 6; ++r)
    for (Int eps = 0; 2 * eps < r; ++eps) {
      const PrymParams P = prym_params(r, eps);
      const auto certs = cor54_certificates(r, eps);
      const auto pairs = oracles::prym_pairs(P.g_tilde, P.target);
      REQUIRE(certs.size() == pairs.size());
      for (std::size_t i = 0; i < certs.size(); ++i) {
        const auto b = certs[i].subject.at("b").get<LocusId>();
        CHECK(b.r == pairs[i].s);
        CHECK(b.d == pairs[i].e);
        CHECK((certs[i].kind == CertKind::PrymSchwarz) ==
              pairs[i].schwarz);
      }
    }
}

TEST_CASE("parity certificates satisfy the parity-consistency identity") {
  for (Int r = 1; r <= 8; ++r)
    for (Int eps = 0; 2 * eps < r; ++eps)
      for (const Certificate& c : cor54_certificates(r, eps)) {
        if (c.kind != CertKind::PrymParity) continue;
        const auto b = c.subject.at("b").get<LocusId>();
        CHECK(b.d % 2 == 1);
        CHECK(b.r % 4 != 3);
        if (b.r % 2 == 0) CHECK(((b.r + 1) * b.d) % 2 == 1);
        if (b.r % 4 == 1) CHECK((((b.r + 1) / 2) * b.d) % 2 == 1);
      }
}

TEST_CASE("rank-pair probe at r = 2") {
  const Cor55Result res = cor55_check(2);
  CHECK(res.a == LocusId{7, 2, 6});
  CHECK(res.b == LocusId{7, 1, 4});
  CHECK(res.rho_a == -2);
  CHECK(res.rho_b == -1);
  CHECK_FALSE(res.certificate.has_value());
  REQUIRE(res.gap.has_value());
  CHECK(res.gap->failed_clause == "d-is-odd");
  CHECK_FALSE(res.gap->details.empty());
}

TEST_CASE("rank-pair probe at r = 6") {
  const Cor55Result res = cor55_check(6);
  CHECK(res.a == LocusId{43, 6, 42});
  CHECK(res.b == LocusId{43, 5, 40});
  CHECK(res.rho_a == -6);
  CHECK(res.rho_b == -5);
  CHECK_FALSE(res.certificate.has_value());
  REQUIRE(res.gap.has_value());
  CHECK(res.gap->failed_clause == "d-is-odd");
}

TEST_CASE("rank-pair probe domain guards") {
  CHECK_THROWS_AS(cor55_check(4), Error);   // r % 4 == 0
  CHECK_THROWS_AS(cor55_check(3), Error);   // odd
  CHECK_THROWS_AS(cor55_check(0), Error);
  CHECK_THROWS_AS(cor55_check(-2), Error);
  try {
    cor55_check(4);
  } catch (const Error& e) {
    CHECK(e.code() == "domain");
  }
}

TEST_CASE("prym values round-trip through JSON") {
  const PrymParams P = prym_params(5, 1);
  nlohmann::json jp = P;
  CHECK(jp.get<PrymParams>() == P);

  const Cor55Result res = cor55_check(2);
  nlohmann::json jr = res;
  CHECK(jr.get<Cor55Result>() == res);

  const auto certs = cor54_certificates(5, 1);
  for (const Certificate& c : certs) {
    nlohmann::json jc = c;
    CHECK(jc.get<Certificate>() == c);
  }
}
