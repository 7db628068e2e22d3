#include "bnatlas/core.hpp"

#include <sstream>

namespace bnatlas {

void fail(const std::string& code, const std::string& msg) {
  throw Error(code, msg);
}

Int checked_add(Int a, Int b) {
  Int out = 0;
  if (__builtin_add_overflow(a, b, &out))
    fail("overflow", "integer overflow in " + std::to_string(a) + " + " +
                         std::to_string(b));
  return out;
}

Int checked_sub(Int a, Int b) {
  Int out = 0;
  if (__builtin_sub_overflow(a, b, &out))
    fail("overflow", "integer overflow in " + std::to_string(a) + " - " +
                         std::to_string(b));
  return out;
}

Int checked_mul(Int a, Int b) {
  Int out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    fail("overflow", "integer overflow in " + std::to_string(a) + " * " +
                         std::to_string(b));
  return out;
}

std::string to_string(const LocusId& L) {
  std::ostringstream os;
  os << "(" << L.g << "," << L.r << "," << L.d << ")";
  return os.str();
}

void validate(const LocusId& L) {
  if (L.g < 2 || L.g > kMaxGenus)
    fail("domain", "genus out of range in locus " + to_string(L));
  if (L.r < 0 || L.r > kMaxRank)
    fail("domain", "rank out of range in locus " + to_string(L));
  if (L.d < 0 || L.d > kMaxDegree)
    fail("domain", "degree out of range in locus " + to_string(L));
}

VanishingSequence::VanishingSequence(Int r, Int d, std::vector<Int> entries)
    : r_(r), d_(d), entries_(std::move(entries)) {
  if (r < 0 || d < 0 || r > kMaxRank || d > kMaxDegree)
    fail("domain", "vanishing sequence with invalid type parameters");
  if (static_cast<Int>(entries_.size()) != r + 1)
    fail("domain", "vanishing sequence needs exactly r+1 entries");
  Int prev = -1;
  for (Int a : entries_) {
    if (a <= prev)
      fail("domain", "vanishing sequence entries must be strictly increasing");
    if (a < 0 || a > d)
      fail("domain", "vanishing sequence entry outside [0, d]");
    prev = a;
  }
}

RamificationSequence VanishingSequence::to_ramification() const {
  std::vector<Int> b(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    b[i] = entries_[i] - static_cast<Int>(i);
  return RamificationSequence(r_, d_, std::move(b));
}

Int VanishingSequence::weight() const {
  Int w = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    w = checked_add(w, entries_[i] - static_cast<Int>(i));
  return w;
}

RamificationSequence::RamificationSequence(Int r, Int d,
                                           std::vector<Int> entries)
    : r_(r), d_(d), entries_(std::move(entries)) {
  if (r < 0 || d < 0 || r > kMaxRank || d > kMaxDegree)
    fail("domain", "ramification sequence with invalid type parameters");
  if (r > d)
    fail("domain", "ramification sequence needs r <= d");
  if (static_cast<Int>(entries_.size()) != r + 1)
    fail("domain", "ramification sequence needs exactly r+1 entries");
  Int prev = 0;
  for (Int b : entries_) {
    if (b < prev)
      fail("domain", "ramification sequence entries must be nondecreasing");
    if (b < 0 || b > d - r)
      fail("domain", "ramification sequence entry outside [0, d-r]");
    prev = b;
  }
}

VanishingSequence RamificationSequence::to_vanishing() const {
  std::vector<Int> a(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i)
    a[i] = entries_[i] + static_cast<Int>(i);
  return VanishingSequence(r_, d_, std::move(a));
}

Int RamificationSequence::weight() const {
  Int w = 0;
  for (Int b : entries_) w = checked_add(w, b);
  return w;
}

Int rho(Int g, Int r, Int d) {
  /* Chain components may carry genus 0 or 1, so only g >= 0 is required
     here; locus-level validation stays in validate(). */
  if (g < 0 || g > kMaxGenus)
    fail("domain", "rho needs 0 <= g <= 10^9, got g = " + std::to_string(g));
  if (r < 0 || r > kMaxRank)
    fail("domain", "rho needs 0 <= r, got r = " + std::to_string(r));
  if (d < 0 || d > kMaxDegree)
    fail("domain", "rho needs 0 <= d, got d = " + std::to_string(d));
  const Int deficit = checked_add(checked_sub(g, d), r);  // g - d + r
  return checked_sub(g, checked_mul(r + 1, deficit));
}

Int rho(const LocusId& L) { return rho(L.g, L.r, L.d); }

Int expected_codimension(const LocusId& L) {
  const Int p = rho(L);
  return p < 0 ? -p : 0;
}

Int adjusted_rho(const PointedLocus& P) {
  Int value = rho(P.base);
  for (const auto& mark : P.marks) {
    if (mark.type_r() != P.base.r || mark.type_d() != P.base.d)
      fail("domain", "mark type parameters must match the underlying locus");
    value = checked_sub(value, mark.weight());
  }
  return value;
}

LocusId serre_dual(const LocusId& L) {
  validate(L);
  if (L.d > 2 * L.g - 2)
    fail("domain", "serre_dual needs d <= 2g-2, got " + to_string(L));
  const Int r2 = L.g - L.d + L.r - 1;
  if (r2 < 0)
    fail("domain", "serre_dual needs g-d+r-1 >= 0, got " + to_string(L));
  return LocusId{L.g, r2, 2 * L.g - 2 - L.d};
}

bool is_canonical(const LocusId& L) { return L.d <= L.g - 1; }

LocusId canonicalize(const LocusId& L) {
  validate(L);
  if (is_canonical(L)) return L;
  return serre_dual(L);
}

std::string to_string(ContainmentRule rule) {
  switch (rule) {
    case ContainmentRule::AddBasepoint: return "add-basepoint";
    case ContainmentRule::RemoveNonBasepoint: return "remove-non-basepoint";
  }
  fail("internal", "unknown containment rule");
}

std::vector<TrivialContainment> trivial_containments(const LocusId& L) {
  validate(L);
  if (rho(L) >= 0)
    fail("domain",
         "trivial_containments needs rho < 0, got " + to_string(L));
  std::vector<TrivialContainment> out;
  const LocusId up{L.g, L.r, L.d + 1};
  out.push_back({up, ContainmentRule::AddBasepoint, rho(up)});
  if (L.r >= 1 && L.d >= 1) {
    const LocusId down{L.g, L.r - 1, L.d - 1};
    const Int down_rho = rho(down);
    if (down_rho < 0)
      out.push_back({down, ContainmentRule::RemoveNonBasepoint, down_rho});
  }
  return out;
}

}  // namespace bnatlas
