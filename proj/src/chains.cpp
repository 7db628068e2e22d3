#include "bnatlas/chains.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <set>

#include "bnatlas/maximal.hpp"

namespace bnatlas {

namespace {

/* The run (v, v+1, ..., v+r) as a vanishing sequence of type (r, d). */
VanishingSequence run_sequence(Int r, Int d, Int v) {
  std::vector<Int> e(static_cast<std::size_t>(r + 1));
  for (Int j = 0; j <= r; ++j) e[static_cast<std::size_t>(j)] = v + j;
  return VanishingSequence(r, d, std::move(e));
}

bool run_fits(Int r, Int d, Int v) { return v >= 0 && v + r <= d; }

/* Components of the chain over (g, r, d) whose i-th piece has genus
   genera[i] and its own rho equal to -cvec[i], marked with the runs the
   node recursion dictates.  nullopt when some run leaves [0, d] or some
   component degree drops below r. */
std::optional<std::vector<ChainComponent>> assemble_components(
    const LocusId& L, const std::vector<Int>& genera,
    const std::vector<Int>& cvec) {
  const Int r = L.r;
  const Int d = L.d;
  const std::size_t k = genera.size();
  if (k == 0 || cvec.size() != k) return std::nullopt;

  std::vector<Int> v(k), v_left(k, 0), v_right(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (genera[i] < 0) return std::nullopt;
    const Int numer = checked_add(genera[i], cvec[i]);
    if (numer % (r + 1) != 0) return std::nullopt;
    const Int t = numer / (r + 1);
    v[i] = checked_sub(checked_add(t, d), checked_add(r, genera[i]));
  }
  v_left[0] = 0;
  v_right[0] = v[0];
  for (std::size_t i = 1; i < k; ++i) {
    v_left[i] = d - v_right[i - 1] - r;
    v_right[i] = v[i] - v_left[i];
  }
  /* No node on the right of the last component: its whole vanishing must
     sit at the left node.  This telescopes to sum(cvec) = -rho(L). */
  if (v_right[k - 1] != 0) return std::nullopt;

  for (std::size_t i = 0; i < k; ++i) {
    if (i > 0 && !run_fits(r, d, v_left[i])) return std::nullopt;
    if (i + 1 < k && !run_fits(r, d, v_right[i])) return std::nullopt;
    if (d - v[i] < r) return std::nullopt;  // component degree below rank
  }

  std::vector<ChainComponent> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    ChainComponent c;
    c.genus = genera[i];
    c.degree = d - v[i];
    if (i > 0) c.left = run_sequence(r, d, v_left[i]);
    if (i + 1 < k) c.right = run_sequence(r, d, v_right[i]);
    c.rho = rho(c.genus, r, c.degree);
    out.push_back(std::move(c));
  }
  return out;
}

Int oracle_scale() {
  const char* env = std::getenv("BN_ATLAS_ORACLE_SCALE");
  if (env == nullptr) return 0;
  char* end = nullptr;
  const long long value = std::strtoll(env, &end, 10);
  if (end == env || value < 0) return 0;
  return static_cast<Int>(value);
}

/* Advance a strictly increasing (r+1)-tuple within [0, d] to its
   lexicographic successor; false once the last tuple has been seen. */
bool next_tuple(std::vector<Int>& a, Int d) {
  const Int n = static_cast<Int>(a.size());
  for (Int i = n - 1; i >= 0; --i) {
    if (a[static_cast<std::size_t>(i)] < d - (n - 1 - i)) {
      ++a[static_cast<std::size_t>(i)];
      for (Int j = i + 1; j < n; ++j)
        a[static_cast<std::size_t>(j)] =
            a[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

std::vector<Int> first_tuple(Int r) {
  std::vector<Int> a(static_cast<std::size_t>(r + 1));
  std::iota(a.begin(), a.end(), Int{0});
  return a;
}

}  // namespace

bool star_condition(const LocusId& L) {
  validate(L);
  const Int p = rho(L);
  if (p >= 0)
    fail("domain", "star condition needs rho < 0, got rho = " +
                       std::to_string(p) + " at " + to_string(L));
  const Int nr = -p;
  try {
    const Int lhs = checked_sub(
        checked_mul(checked_add(checked_mul(2, L.r), 1), (nr + 1) / 2),
        nr / 2);
    return lhs <= L.g;
  } catch (const Error& e) {
    /* The left side only grows with r and -rho; overflowing int64 means
       it certainly exceeds g. */
    if (e.code() == "overflow") return false;
    throw;
  }
}

std::string to_string(StarClass c) {
  switch (c) {
    case StarClass::Holds: return "holds";
    case StarClass::ExceptionCase: return "exception-case";
  }
  fail("internal", "unknown star classification");
}

StarClass star_classification(const LocusId& L) {
  if (!is_expected_maximal(L))
    fail("domain", "star_classification needs an expected maximal locus, "
                   "got " + to_string(L));
  const Int nr = -rho(L);
  const Int s = isqrt(L.g);
  const bool square = (s * s == L.g);
  const Int ceil_sqrt = square ? s : s + 1;
  if (!square && nr == L.r + 1 && L.r + 1 == ceil_sqrt &&
      ceil_sqrt % 2 == 1)
    return StarClass::ExceptionCase;
  return StarClass::Holds;
}

std::string to_string(ChainMode m) {
  switch (m) {
    case ChainMode::Prop31Even: return "prop31-even";
    case ChainMode::Prop31Odd: return "prop31-odd";
    case ChainMode::Search: return "search";
  }
  fail("internal", "unknown chain mode");
}

ChainMode chain_mode_from_string(const std::string& s) {
  if (s == "prop31-even") return ChainMode::Prop31Even;
  if (s == "prop31-odd") return ChainMode::Prop31Odd;
  if (s == "search") return ChainMode::Search;
  fail("domain", "unknown chain mode \"" + s + "\"");
}

bool VerificationReport::all_passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(),
                     [](const auto& c) { return c.second; });
}

ChainDecomposition build_chain_prop31(const LocusId& L) {
  validate(L);
  const Int p = rho(L);
  if (p >= 0)
    fail("domain", "chain decomposition needs rho < 0, got rho = " +
                       std::to_string(p) + " at " + to_string(L));
  if (!star_condition(L))
    fail("star-violated",
         "condition (*) fails at " + to_string(L) +
             "; the balanced chain would need more genus than is available");

  const Int g = L.g, r = L.r, d = L.d;
  const Int nr = -p;
  const bool odd = (nr % 2 != 0);
  const Int k = (nr + 1) / 2;

  ChainDecomposition out;
  out.source = L;
  out.k = k;
  out.mode = odd ? ChainMode::Prop31Odd : ChainMode::Prop31Even;
  out.allowed_rhos = odd ? std::vector<Int>{-2, -1} : std::vector<Int>{-2};

  if (k == 1) {
    /* rho is -1 or -2: the chain is the curve itself, no nodes. */
    ChainComponent c;
    c.genus = g;
    c.degree = d;
    c.rho = p;
    out.components.push_back(std::move(c));
  } else {
    std::vector<Int> genera(static_cast<std::size_t>(k), r - 1);
    if (odd) genera.back() = r;
    Int start_sum = 0;
    for (Int gi : genera) start_sum = checked_add(start_sum, gi);
    const Int rest = checked_sub(g, start_sum);
    if (rest < 0 || rest % (r + 1) != 0)
      fail("internal", "genus distribution invariant violated at " +
                           to_string(L));
    const Int m_total = rest / (r + 1);
    const Int q = m_total / k;
    const Int rem = m_total % k;
    for (Int i = 0; i < k; ++i)
      genera[static_cast<std::size_t>(i)] = checked_add(
          genera[static_cast<std::size_t>(i)],
          checked_mul(r + 1, q + (i < rem ? 1 : 0)));

    std::vector<Int> cvec(static_cast<std::size_t>(k), 2);
    if (odd) cvec.back() = 1;
    auto comps = assemble_components(L, genera, cvec);
    if (!comps)
      fail("empty-component",
           "balanced chain at " + to_string(L) +
               " forces a node vanishing outside [0, d]");
    out.components = std::move(*comps);
  }

  out.report = verify_chain(out);
  if (!out.report.all_passed())
    fail("internal",
         "freshly built balanced chain failed verification at " +
             to_string(L));
  return out;
}

VerificationReport verify_chain(const ChainDecomposition& C) {
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

  const Int r = C.source.r;
  const Int d = C.source.d;
  const std::size_t k = C.components.size();

  add("genus-sum", guarded([&] {
        if (C.components.empty()) return false;
        Int sum = 0;
        for (const auto& c : C.components) sum = checked_add(sum, c.genus);
        return sum == C.source.g;
      }));

  add("congruence", guarded([&] {
        if (r < 0) return false;
        for (const auto& c : C.components) {
          const Int diff = checked_sub(c.genus, c.rho);
          if (((diff % (r + 1)) + (r + 1)) % (r + 1) != 0) return false;
        }
        return true;
      }));

  add("component-genus", guarded([&] {
        if (C.k != static_cast<Int>(k) || k == 0) return false;
        for (const auto& c : C.components)
          if (c.genus < 0 || c.degree < r || c.degree > d) return false;
        return true;
      }));

  add("vanishing-bounds", guarded([&] {
        for (std::size_t i = 0; i < k; ++i) {
          const auto& c = C.components[i];
          if (c.left.has_value() != (i > 0)) return false;
          if (c.right.has_value() != (i + 1 < k)) return false;
          for (const auto* seq : {&c.left, &c.right}) {
            if (!seq->has_value()) continue;
            const VanishingSequence& s = **seq;
            if (s.type_r() != r || s.type_d() != d) return false;
            Int prev = -1;
            for (Int a : s.entries()) {
              if (a <= prev || a < 0 || a > d) return false;
              prev = a;
            }
            if (static_cast<Int>(s.entries().size()) != r + 1) return false;
          }
        }
        return true;
      }));

  add("refined-compatibility", guarded([&] {
        for (std::size_t i = 0; i + 1 < k; ++i) {
          const auto& a = C.components[i].right;
          const auto& ap = C.components[i + 1].left;
          if (!a || !ap) return false;
          const auto& ae = a->entries();
          const auto& pe = ap->entries();
          if (ae.size() != pe.size()) return false;
          const std::size_t n = ae.size();
          for (std::size_t j = 0; j < n; ++j)
            if (checked_add(ae[j], pe[n - 1 - j]) != d) return false;
        }
        return true;
      }));

  add("component-rho", guarded([&] {
        for (std::size_t i = 0; i < k; ++i) {
          const auto& c = C.components[i];
          /* Route 1: rho of the component's own locus. */
          if (rho(c.genus, r, c.degree) != c.rho) return false;
          /* Route 2: rho of (genus, r, d) adjusted by the node marks,
             and the degree bookkeeping d_i = d - (total node vanishing). */
          Int vanish = 0;
          PointedLocus P{LocusId{c.genus, r, d}, {}};
          for (const auto* seq : {&c.left, &c.right}) {
            if (!seq->has_value()) continue;
            vanish = checked_add(vanish, (*seq)->entries().front());
            P.marks.push_back((*seq)->to_ramification());
          }
          if (c.degree != checked_sub(d, vanish)) return false;
          if (adjusted_rho(P) != c.rho) return false;
          /* Mode-specific targets. */
          switch (C.mode) {
            case ChainMode::Prop31Even:
              if (c.rho != -2) return false;
              break;
            case ChainMode::Prop31Odd:
              if (c.rho != (i + 1 == k ? -1 : -2)) return false;
              break;
            case ChainMode::Search:
              if (std::find(C.allowed_rhos.begin(), C.allowed_rhos.end(),
                            c.rho) == C.allowed_rhos.end())
                return false;
              break;
          }
        }
        return true;
      }));

  add("additivity", guarded([&] {
        Int sum = 0;
        for (const auto& c : C.components) sum = checked_add(sum, c.rho);
        return sum == rho(C.source);
      }));

  return rep;
}

std::vector<Schedule> enumerate_schedules(const std::vector<Int>& genera,
                                          Int r, Int d, bool refined_only,
                                          std::size_t cap) {
  if (genera.empty())
    fail("domain", "schedule enumeration needs at least one component");
  for (Int gi : genera)
    if (gi < 0) fail("domain", "component genus must be nonnegative");
  if (r < 0 || d < r)
    fail("domain", "schedule enumeration needs 0 <= r <= d");

  const Int scale = oracle_scale();
  const Int max_d = std::max<Int>(30, scale);
  const Int max_k = std::max<Int>(6, scale / 5);
  const Int k = static_cast<Int>(genera.size());
  if (k > max_k || d > max_d)
    fail("oracle-scale",
         "schedule enumeration is bounded to k <= " + std::to_string(max_k) +
             " and d <= " + std::to_string(max_d) +
             " (raise BN_ATLAS_ORACLE_SCALE to go further)");

  std::vector<Schedule> out;
  const std::size_t nodes = static_cast<std::size_t>(k - 1);
  std::vector<std::pair<std::vector<Int>, std::vector<Int>>> chosen(nodes);

  const auto emit = [&] {
    Schedule s;
    s.nodes.reserve(nodes);
    s.refined = true;
    for (std::size_t i = 0; i < nodes; ++i) {
      VanishingSequence a(r, d, chosen[i].first);
      VanishingSequence ap(r, d, chosen[i].second);
      const auto& ae = a.entries();
      const auto& pe = ap.entries();
      for (std::size_t j = 0; j < ae.size(); ++j)
        if (ae[j] + pe[ae.size() - 1 - j] != d) s.refined = false;
      s.nodes.emplace_back(std::move(a), std::move(ap));
    }
    s.total = 0;
    for (Int i = 0; i < k; ++i) {
      Int value = rho(genera[static_cast<std::size_t>(i)], r, d);
      if (i > 0)
        value = checked_sub(
            value, s.nodes[static_cast<std::size_t>(i - 1)].second
                       .weight());
      if (i + 1 < k)
        value = checked_sub(
            value, s.nodes[static_cast<std::size_t>(i)].first.weight());
      s.component_rhos.push_back(value);
      s.total = checked_add(s.total, value);
    }
    out.push_back(std::move(s));
  };

  /* Node choices vary lexicographically: node 0 slowest, and at each node
     the left-side sequence before the right-side one. */
  const std::function<void(std::size_t)> recurse = [&](std::size_t node) {
    if (out.size() >= cap) return;
    if (node == nodes) {
      emit();
      return;
    }
    std::vector<Int> a = first_tuple(r);
    do {
      if (out.size() >= cap) return;
      if (refined_only) {
        std::vector<Int> ap(a.size());
        bool ok = true;
        for (std::size_t j = 0; j < a.size(); ++j) {
          ap[j] = d - a[a.size() - 1 - j];
          if (ap[j] < 0 || ap[j] > d) ok = false;
        }
        if (!ok) continue;
        chosen[node] = {a, ap};
        recurse(node + 1);
      } else {
        std::vector<Int> ap = first_tuple(r);
        do {
          if (out.size() >= cap) return;
          bool ok = true;
          for (std::size_t j = 0; j < a.size(); ++j)
            if (a[j] + ap[a.size() - 1 - j] < d) {
              ok = false;
              break;
            }
          if (!ok) continue;
          chosen[node] = {a, ap};
          recurse(node + 1);
        } while (next_tuple(ap, d));
      }
    } while (next_tuple(a, d));
  };

  recurse(0);
  return out;
}

ChainDecomposition build_chain_search(const LocusId& L,
                                      const std::vector<Int>& allowed_rhos) {
  validate(L);
  const Int p = rho(L);
  if (p >= 0)
    fail("domain", "chain search needs rho < 0, got rho = " +
                       std::to_string(p) + " at " + to_string(L));

  std::set<Int> mag_set;
  for (Int a : allowed_rhos) {
    if (a != -1 && a != -2 && a != -3)
      fail("domain",
           "allowed rho values must lie in {-1, -2, -3}, got " +
               std::to_string(a));
    mag_set.insert(-a);
  }
  if (mag_set.empty())
    fail("domain", "allowed rho set must be nonempty");
  const std::vector<Int> mags(mag_set.begin(), mag_set.end());
  std::vector<Int> normalized;  // ascending, e.g. {-3, -2, -1}
  for (auto it = mag_set.rbegin(); it != mag_set.rend(); ++it)
    normalized.push_back(-*it);

  const Int g = L.g, r = L.r;
  const Int nr = -p;

  if (mags.size() == 1 && mags[0] == 1) {
    bool enough_genus = false;
    try {
      enough_genus =
          checked_mul(checked_add(checked_mul(2, r), 1), nr) <= g;
    } catch (const Error& e) {
      if (e.code() != "overflow") throw;
    }
    if (!enough_genus)
      fail("domain",
           "chain search into codimension-1 pieces needs (2r+1)(-rho) <= g, "
           "violated at " + to_string(L));
  } else if (mags.size() == 3) {
    if (!is_expected_maximal(L))
      fail("domain",
           "chain search over {-1,-2,-3} needs an expected maximal locus, "
           "got " + to_string(L));
  }

  const Int cmin = mags.front();
  const Int cmax = mags.back();
  std::size_t attempts = 0;
  constexpr std::size_t kBudget = 1'000'000;
  const auto charge = [&attempts, &L] {
    if (++attempts > kBudget)
      fail("no-decomposition-found",
           "chain search exhausted its budget at " + to_string(L));
  };

  ChainDecomposition out;
  out.source = L;
  out.mode = ChainMode::Search;
  out.allowed_rhos = normalized;

  std::vector<Int> cvec;
  std::vector<Int> bases;
  std::vector<Int> parts;
  std::vector<Int> genera;

  /* Genus increments in colexicographic order: the last entries grow
     first, so (M, 0, ..., 0) is tried before anything else. */
  const std::function<bool(Int, Int)> try_compositions =
      [&](Int index, Int left) -> bool {
    if (index == 0) {
      parts[0] = left;
      charge();
      for (std::size_t i = 0; i < genera.size(); ++i)
        genera[i] = checked_add(bases[i],
                                checked_mul(r + 1, parts[i]));
      auto comps = assemble_components(L, genera, cvec);
      if (!comps) return false;
      out.k = static_cast<Int>(genera.size());
      out.components = std::move(*comps);
      out.report = verify_chain(out);
      return out.report.all_passed();
    }
    for (Int m = 0; m <= left; ++m) {
      parts[static_cast<std::size_t>(index)] = m;
      if (try_compositions(index - 1, left - m)) return true;
    }
    return false;
  };

  const std::function<bool(Int, Int)> try_cvectors =
      [&](Int index, Int remaining) -> bool {
    const Int k = static_cast<Int>(cvec.size());
    if (index == k) {
      if (remaining != 0) return false;
      charge();
      bases.assign(cvec.size(), 0);
      Int base_sum = 0;
      for (std::size_t i = 0; i < cvec.size(); ++i) {
        const Int t = ((-cvec[i]) % (r + 1) + (r + 1)) % (r + 1);
        bases[i] = (t == r) ? r : t + r + 1;
        base_sum = checked_add(base_sum, bases[i]);
      }
      const Int rest = g - base_sum;
      if (rest < 0 || rest % (r + 1) != 0) return false;
      parts.assign(cvec.size(), 0);
      genera.assign(cvec.size(), 0);
      return try_compositions(k - 1, rest / (r + 1));
    }
    const Int slots = k - index - 1;
    for (Int m : mags) {
      const Int next = remaining - m;
      if (next < cmin * slots || next > cmax * slots) continue;
      cvec[static_cast<std::size_t>(index)] = m;
      if (try_cvectors(index + 1, next)) return true;
    }
    return false;
  };

  Int k_min = (nr + cmax - 1) / cmax;
  if (k_min < 1) k_min = 1;
  Int k_max = nr / cmin;
  if (k_max > g) k_max = g;  // every component has genus >= r >= 1
  for (Int k = k_min; k <= k_max; ++k) {
    charge();
    cvec.assign(static_cast<std::size_t>(k), 0);
    if (try_cvectors(0, nr)) return out;
  }
  fail("no-decomposition-found",
       "no chain decomposition with component rho in the allowed set at " +
           to_string(L));
}

}  // namespace bnatlas
