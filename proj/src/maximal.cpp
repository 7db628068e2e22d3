#include "bnatlas/maximal.hpp"

#include <algorithm>
#include <numeric>

namespace bnatlas {

Int isqrt(Int n) {
  if (n < 0) fail("domain", "isqrt of a negative number");
  if (n < 2) return n;
  Int lo = 1, hi = std::min<Int>(n, 3037000499LL);  // floor(sqrt(2^63 - 1))
  while (lo < hi) {
    const Int mid = lo + (hi - lo + 1) / 2;
    if (mid <= n / mid)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

static void require_genus_at_least_three(Int g, const char* who) {
  if (g < 3 || g > kMaxGenus)
    fail("domain", std::string(who) + " needs 3 <= g <= 10^9, got " +
                       std::to_string(g));
}

Int r_max(Int g) {
  require_genus_at_least_three(g, "r_max");
  const Int s = isqrt(g);
  /* ceil(sqrt(g) - 1) when g >= s^2 + s, floor(sqrt(g) - 1) otherwise;
     both collapse to the expressions below for integer g. */
  return g >= s * s + s ? s : s - 1;
}

static Int ceil_div(Int a, Int b) {  // a >= 0, b > 0
  return (a + b - 1) / b;
}

Int d_max(Int g, Int r) {
  require_genus_at_least_three(g, "d_max");
  if (r < 1 || r > r_max(g))
    fail("domain", "d_max needs 1 <= r <= r_max(g), got r = " +
                       std::to_string(r) + " at g = " + std::to_string(g));
  return r + ceil_div(checked_mul(g, r), r + 1) - 1;
}

Int exp_max_rho(Int g, Int r) {
  require_genus_at_least_three(g, "exp_max_rho");
  if (r < 1 || r > r_max(g))
    fail("domain", "exp_max_rho needs 1 <= r <= r_max(g), got r = " +
                       std::to_string(r) + " at g = " + std::to_string(g));
  return -(r + 1 - g % (r + 1));
}

std::vector<LocusId> enumerate_expected_maximal(Int g) {
  require_genus_at_least_three(g, "enumerate_expected_maximal");
  std::vector<LocusId> out;
  const Int top = r_max(g);
  out.reserve(static_cast<std::size_t>(top));
  for (Int r = 1; r <= top; ++r) out.push_back(LocusId{g, r, d_max(g, r)});
  return out;
}

bool satisfies_small_rho_test(const LocusId& L) {
  validate(L);
  if (L.g < 3 || L.r < 1) return false;
  if (!(2 * L.r <= L.d && L.d <= L.g - 1)) return false;
  if (L.r > r_max(L.g)) return false;
  const Int p = rho(L);
  return -L.r - 1 <= p && p <= -1;
}

bool is_expected_maximal(const LocusId& L) {
  validate(L);
  if (!is_canonical(L))
    fail("domain", "is_expected_maximal expects a canonical locus, got " +
                       to_string(L));
  if (L.g < 3 || L.r < 1) return false;
  return L.r <= r_max(L.g) && L.d == d_max(L.g, L.r);
}

ConjectureStatus conjecture_status(Int g) {
  require_genus_at_least_three(g, "conjecture_status");
  ConjectureStatus st;
  st.g = g;
  st.exceptional = (g == 7 || g == 8 || g == 9);
  st.verified_small = g <= 23;
  Int l = 2;  // lcm(1..2)
  for (Int n = 3; l <= g + 2; ++n) {
    l = std::lcm(l, n);
    if (l == g + 1 || l == g + 2) {
      st.ckk_family = true;
      st.ckk_n = n;
      break;
    }
  }
  return st;
}

}  // namespace bnatlas
