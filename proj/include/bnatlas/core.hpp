#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

/* Exact-integer core for Brill-Noether locus combinatorics: locus labels,
   ramification/vanishing sequences at marked points, the Brill-Noether
   number rho, Serre duality, and the trivial containment moves.  All
   arithmetic is checked 64-bit; overflow raises instead of wrapping. */

namespace bnatlas {

using Int = std::int64_t;

/* Error with a stable machine-readable code.  Codes used by the library:
   "domain", "overflow", "star-violated", "empty-component", "oracle-scale",
   "no-decomposition-found", "io", "internal". */
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] void fail(const std::string& code, const std::string& msg);

/* Inputs are bounded so that every product formed below stays inside
   int64; the checked helpers still guard every arithmetic step. */
inline constexpr Int kMaxGenus = 1'000'000'000;
inline constexpr Int kMaxRank = 1'000'000'000;
inline constexpr Int kMaxDegree = 2'000'000'000;

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);

/* Label (g, r, d) for the locus of genus-g curves carrying a g^r_d. */
struct LocusId {
  Int g = 2;
  Int r = 0;
  Int d = 0;

  friend bool operator==(const LocusId&, const LocusId&) = default;
  friend auto operator<=>(const LocusId&, const LocusId&) = default;
};

std::string to_string(const LocusId& L);

/* Throws Error("domain") unless g >= 2, r >= 0, d >= 0 and all within the
   global magnitude bounds. */
void validate(const LocusId& L);

class RamificationSequence;

/* Strictly increasing 0 <= a_0 < ... < a_r <= d: vanishing orders of a
   g^r_d at a marked point.  Malformed sequences are rejected at
   construction; nothing is ever clamped. */
class VanishingSequence {
public:
  VanishingSequence(Int r, Int d, std::vector<Int> entries);

  Int type_r() const noexcept { return r_; }
  Int type_d() const noexcept { return d_; }
  const std::vector<Int>& entries() const noexcept { return entries_; }

  RamificationSequence to_ramification() const;

  /* Weight of the associated ramification sequence: sum a_i - r(r+1)/2. */
  Int weight() const;

  friend bool operator==(const VanishingSequence&,
                         const VanishingSequence&) = default;

private:
  Int r_;
  Int d_;
  std::vector<Int> entries_;
};

/* Nondecreasing 0 <= b_0 <= ... <= b_r <= d - r.  b_i = a_i - i under the
   bijection with vanishing sequences of the same type. */
class RamificationSequence {
public:
  RamificationSequence(Int r, Int d, std::vector<Int> entries);

  Int type_r() const noexcept { return r_; }
  Int type_d() const noexcept { return d_; }
  const std::vector<Int>& entries() const noexcept { return entries_; }

  VanishingSequence to_vanishing() const;

  Int weight() const;  // sum of entries

  friend bool operator==(const RamificationSequence&,
                         const RamificationSequence&) = default;

private:
  Int r_;
  Int d_;
  std::vector<Int> entries_;
};

/* A locus together with ramification conditions at marked points.  Every
   mark must have type parameters equal to (base.r, base.d). */
struct PointedLocus {
  LocusId base;
  std::vector<RamificationSequence> marks;
};

/* rho(g,r,d) = g - (r+1)(g-d+r).  Accepts any g >= 0 (chain components
   may have genus 0 or 1); the locus-level g >= 2 constraint is what
   validate() enforces. */
Int rho(Int g, Int r, Int d);
Int rho(const LocusId& L);

/* max(0, -rho): the codimension the locus is expected to have. */
Int expected_codimension(const LocusId& L);

/* rho minus the total ramification weight of the marks. */
Int adjusted_rho(const PointedLocus& P);

/* (g, r, d) -> (g, g-d+r-1, 2g-2-d); requires 0 <= d <= 2g-2 and
   g-d+r-1 >= 0.  Involution; preserves rho. */
LocusId serre_dual(const LocusId& L);

bool is_canonical(const LocusId& L);  // d <= g-1

/* Identity when d <= g-1, otherwise the Serre dual (which then satisfies
   d <= g-1).  Idempotent. */
LocusId canonicalize(const LocusId& L);

enum class ContainmentRule { AddBasepoint, RemoveNonBasepoint };

std::string to_string(ContainmentRule rule);

struct TrivialContainment {
  LocusId target;
  ContainmentRule rule;
  Int target_rho;

  friend bool operator==(const TrivialContainment&,
                         const TrivialContainment&) = default;
};

/* Containments that hold for every locus with rho < 0:
     (g, r, d+1)    add a base point     (always emitted, rho annotated)
     (g, r-1, d-1)  drop a non base point (only if r >= 1 and the target
                                           still has rho < 0)            */
std::vector<TrivialContainment> trivial_containments(const LocusId& L);

}  // namespace bnatlas
