#pragma once

// F-module analysis on enumerable matrix groups, plus predicate-level
// checks of the quoted structure results (Timmesfeld replacement,
// Meierfrankenfeld-Stellmacher inequality, normal abelian lemma, descent,
// the perp relation, the rank-one exclusion, and the Hypothesis-NA /
// weak-closure family). These run on the brute-force engines and double
// as oracles for the symbolic engine.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "p3mod/group.hpp"
#include "p3mod/rep.hpp"
#include "p3mod/smallgroup.hpp"

namespace p3mod {

struct OffenderReport {
  IdSubgroup sub;
  long jlog = 0;
  bool is_best = false;
  bool is_quadratic = false;
};

/// j-values, best-offender and quadratic flags for every listed elementary
/// abelian subgroup that offends; also verifies "every offender contains a
/// best one" by inclusion search.
template <class E>
std::vector<OffenderReport> offenders(const SmallGroup<E>& g,
                                      const std::vector<IdSubgroup>& eas,
                                      bool* every_offender_contains_best = nullptr) {
  std::vector<OffenderReport> out;
  for (const IdSubgroup& s : eas) {
    long j = subgroup_jlog(g, s);
    if (j < 0) continue;
    OffenderReport r;
    r.sub = s;
    r.jlog = j;
    r.is_best = true;
    for (const IdSubgroup& f : subgroups_of_ea(g, s))
      if (subgroup_jlog(g, f) > j) { r.is_best = false; break; }
    r.is_quadratic = true;
    for (uint32_t a : s.gens) {
      for (uint32_t b : s.gens)
        if (!brute_pair_annihilates(g.elem(a), g.elem(b))) { r.is_quadratic = false; break; }
      if (!r.is_quadratic) break;
    }
    out.push_back(std::move(r));
  }
  if (every_offender_contains_best) {
    *every_offender_contains_best = true;
    for (const OffenderReport& r : out) {
      bool found = false;
      for (const OffenderReport& b : out)
        if (b.is_best && r.sub.contains_set(b.sub)) { found = true; break; }
      if (!found) { *every_offender_contains_best = false; break; }
    }
  }
  return out;
}

struct TimmesfeldResult {
  bool pass = false;
  long je = 0, jf = 0;
  size_t f_order_log3 = 0;
  bool f_equals_e = false;
};

/// For a best offender E: F = C_E([V,E]) must be a quadratic best offender
/// with j_F = j_E.
template <class E>
TimmesfeldResult timmesfeld_check(const SmallGroup<E>& g, const IdSubgroup& e_sub) {
  TimmesfeldResult res;
  res.je = subgroup_jlog(g, e_sub);
  auto comm_space = brute_commutator_space(g, e_sub.gens);

  std::vector<uint32_t> f_ids;
  for (uint32_t x : e_sub.ids) {
    bool fixes = true;
    const auto& elem = g.elem(x);
    for (size_t b = 0; b < elem.nblocks() && fixes; ++b) {
      Mat m = elem.block(b);
      Mat d = m - Mat::identity(m.rows());
      for (const Vec& row : comm_space[b])
        if (!vec_is_zero(vec_mat(row, d))) { fixes = false; break; }
    }
    if (fixes) f_ids.push_back(x);
  }
  IdSubgroup f;
  f.ids = f_ids;
  f.gens = f_ids;
  std::sort(f.ids.begin(), f.ids.end());
  res.f_order_log3 = subgroup_order_log3(f);
  res.f_equals_e = (f.ids == e_sub.ids);
  res.jf = subgroup_jlog(g, f);

  bool f_quadratic = true;
  for (uint32_t a : f.gens) {
    for (uint32_t b : f.gens)
      if (!brute_pair_annihilates(g.elem(a), g.elem(b))) { f_quadratic = false; break; }
    if (!f_quadratic) break;
  }
  bool f_best = res.jf >= 0;
  if (f_best)
    for (const IdSubgroup& s : subgroups_of_ea(g, f))
      if (subgroup_jlog(g, s) > res.jf) { f_best = false; break; }
  res.pass = f_quadratic && f_best && (res.jf == res.je);
  return res;
}

struct MsResult {
  long jh = 0, jk = 0, jmeet = 0, jjoin = 0;
  bool inequality_ok = false;
  bool equality = false;
  bool product_is_join = false;      // <H,K> = HK
  bool fixed_spaces_add = false;     // C_V(H cap K) = C_V(H) + C_V(K)
  bool equivalence_ok = false;       // equality <=> both conditions
};

template <class E>
MsResult ms_check(const SmallGroup<E>& g, const IdSubgroup& h, const IdSubgroup& k) {
  MsResult r;
  IdSubgroup meet = intersect(h, k);
  IdSubgroup jn = join(g, h, k);
  r.jh = subgroup_jlog(g, h);
  r.jk = subgroup_jlog(g, k);
  r.jmeet = subgroup_jlog(g, meet);
  r.jjoin = subgroup_jlog(g, jn);
  r.inequality_ok = (r.jh + r.jk <= r.jmeet + r.jjoin);
  r.equality = (r.jh + r.jk == r.jmeet + r.jjoin);
  r.product_is_join = (h.ids.size() * k.ids.size() / meet.ids.size() == jn.ids.size());
  std::vector<Vec> ch = subgroup_fixed_space(g, h);
  std::vector<Vec> ck = subgroup_fixed_space(g, k);
  std::vector<Vec> cmeet = subgroup_fixed_space(g, meet);
  std::vector<Vec> sum = ch;
  sum.insert(sum.end(), ck.begin(), ck.end());
  sum = rref(std::move(sum));
  r.fixed_spaces_add = (sum.size() == cmeet.size());
  r.equivalence_ok = (r.equality == (r.product_is_join && r.fixed_spaces_add));
  return r;
}

struct DescentResult {
  bool eligible = false;
  bool pass = false;
};

/// a, b with 1 != c = [a,b] in C_G(a,b) and b quadratic: <b,c> must be
/// quadratic. Ineligible pairs are skipped, not failed.
template <class E>
DescentResult descent_check(const SmallGroup<E>& g, uint32_t a, uint32_t b) {
  DescentResult r;
  uint32_t c = g.mul_id(g.mul_id(g.inv_id(a), g.inv_id(b)), g.mul_id(a, b));
  if (c == 0) return r;
  if (!g.commute(c, a) || !g.commute(c, b)) return r;
  if (!brute_quadratic(g.elem(b))) return r;
  r.eligible = true;
  uint32_t pair_ids[2] = {b, c};
  r.pass = true;
  for (uint32_t x : pair_ids)
    for (uint32_t y : pair_ids)
      if (!brute_pair_annihilates(g.elem(x), g.elem(y))) { r.pass = false; }
  return r;
}

/// g perp h: [g,h] = 1 and [V,g,h] = 0.
template <class E>
bool perp(const SmallGroup<E>& g, uint32_t x, uint32_t y) {
  return g.commute(x, y) && brute_pair_annihilates(g.elem(x), g.elem(y));
}

struct RankOneResult {
  bool hypothesis_met = false;  // no central quadratics
  bool pass = false;            // no order-3 subgroup offends
  size_t checked = 0;
};

template <class E>
RankOneResult no_rank_one_check(const SmallGroup<E>& g) {
  RankOneResult r;
  for (uint32_t z : centre_ids(g))
    if (brute_quadratic(g.elem(z))) return r;  // hypothesis unmet
  r.hypothesis_met = true;
  r.pass = true;
  std::set<uint32_t> used;
  for (uint32_t i = 1; i < g.order(); ++i) {
    if (used.count(i)) continue;
    uint32_t sq = g.mul_id(i, i);
    if (g.mul_id(sq, i) != 0) continue;
    used.insert(i);
    used.insert(sq);
    ++r.checked;
    IdSubgroup s = subgroup_closure(g, {i});
    if (subgroup_jlog(g, s) >= 0) r.pass = false;
  }
  return r;
}

struct NormalAbelianResult {
  bool hypothesis_met = false;
  bool pass = false;     // no offender inside A
  size_t checked = 0;
};

/// Normal abelian A in a group with no central quadratics contains no
/// offender. A is passed as an id subgroup; it must be abelian and normal.
template <class E>
NormalAbelianResult normal_abelian_check(const SmallGroup<E>& g, const IdSubgroup& a) {
  NormalAbelianResult r;
  for (size_t i = 0; i < a.ids.size(); ++i)
    for (size_t j = i + 1; j < a.ids.size(); ++j)
      if (!g.commute(a.ids[i], a.ids[j]))
        throw std::invalid_argument("normal_abelian_check: A not abelian");
  if (!is_normal(g, a)) throw std::invalid_argument("normal_abelian_check: A not normal");
  for (uint32_t z : centre_ids(g))
    if (brute_quadratic(g.elem(z))) return r;
  r.hypothesis_met = true;
  // Omega_1(A) is a subgroup since A is abelian; every EA inside A sits in it.
  std::vector<uint32_t> omega1;
  for (uint32_t x : a.ids) {
    uint32_t sq = g.mul_id(x, x);
    if (g.mul_id(sq, x) == 0) omega1.push_back(x);
  }
  IdSubgroup top;
  top.ids = omega1;
  top.gens = omega1;
  std::sort(top.ids.begin(), top.ids.end());
  r.pass = true;
  for (const IdSubgroup& s : subgroups_of_ea(g, top)) {
    if (s.ids.size() == 1) continue;
    ++r.checked;
    if (subgroup_jlog(g, s) >= 0) r.pass = false;
  }
  return r;
}

struct NAInstanceResult {
  bool conditions_ok = false;       // A,N normal, A abelian, A<=N, [N,N]<=A, [N,A]=1
  bool no_central_quadratics = false;
  size_t class_e_size = 0;          // offenders E <= N with |E : E cap A| = 3
  size_t weakly_closed_members = 0; // must stay 0 (Prop-NA predicate)
  bool class_e_facts_ok = true;           // j_E = 0, j_{E cap A} = -1, C_V(E) = C_V(E cap A)
  bool hypothesis_met() const { return conditions_ok && no_central_quadratics; }
  bool vacuous() const { return hypothesis_met() && class_e_size == 0; }
  bool pass() const { return !hypothesis_met() || (weakly_closed_members == 0 && class_e_facts_ok); }
};

/// Validates the Hypothesis-NA conditions and, on every member of the
/// class E found, asserts failure of weak closure plus the j/fixed-space
/// facts. Guarded by pair budgets for the [N,N] <= A and [N,A] = 1 scans.
template <class E>
NAInstanceResult hypothesisNA_check(const SmallGroup<E>& g, const IdSubgroup& n,
                                    const IdSubgroup& a, size_t max_rank = 4,
                                    size_t max_subgroups = 1000000) {
  NAInstanceResult res;
  if (n.ids.size() * n.ids.size() > 4000000)
    throw BudgetExceeded("hypothesisNA_check: N too large for the pairwise scans");

  bool ok = is_normal(g, n) && is_normal(g, a);
  for (size_t i = 0; i < a.ids.size() && ok; ++i)
    for (size_t j = i + 1; j < a.ids.size(); ++j)
      if (!g.commute(a.ids[i], a.ids[j])) { ok = false; break; }
  ok = ok && std::includes(n.ids.begin(), n.ids.end(), a.ids.begin(), a.ids.end());
  for (size_t i = 0; i < n.ids.size() && ok; ++i)
    for (size_t j = 0; j < n.ids.size(); ++j) {
      uint32_t x = n.ids[i], y = n.ids[j];
      uint32_t comm = g.mul_id(g.mul_id(g.inv_id(x), g.inv_id(y)), g.mul_id(x, y));
      if (!std::binary_search(a.ids.begin(), a.ids.end(), comm)) { ok = false; break; }
    }
  for (size_t i = 0; i < n.ids.size() && ok; ++i)
    for (uint32_t y : a.ids)
      if (!g.commute(n.ids[i], y)) { ok = false; break; }
  res.conditions_ok = ok;
  if (!ok) return res;

  res.no_central_quadratics = true;
  for (uint32_t z : centre_ids(g))
    if (brute_quadratic(g.elem(z))) { res.no_central_quadratics = false; break; }
  if (!res.no_central_quadratics) return res;

  for (const IdSubgroup& s : elementary_abelians(g, max_rank, max_subgroups)) {
    if (!std::includes(n.ids.begin(), n.ids.end(), s.ids.begin(), s.ids.end())) continue;
    long j = subgroup_jlog(g, s);
    if (j < 0) continue;
    IdSubgroup meet = intersect(s, a);
    if (subgroup_order_log3(s) != subgroup_order_log3(meet) + 1) continue;
    ++res.class_e_size;
    if (weak_closure_bruteforce(g, s)) ++res.weakly_closed_members;
    long jf = subgroup_jlog(g, meet);
    bool fixed_eq =
        subgroup_fixed_space(g, s).size() == subgroup_fixed_space(g, meet).size();
    if (!(j == 0 && jf == -1 && fixed_eq)) res.class_e_facts_ok = false;
  }
  return res;
}

/// Sound pruning bound for offender searches on large instances: if
/// max_rank + max_g dim C_V(g) < dim V over all order-3 elements g, then no
/// elementary abelian subgroup whatsoever offends (C_V(E) <= C_V(g) for any
/// g in E).
template <class E>
struct OffenderPrune {
  size_t max_fixed_dim = 0;
  size_t rank_bound = 0;
  bool proven_none = false;
};

template <class E>
OffenderPrune<E> offender_prune_scan(const SmallGroup<E>& g, unsigned jobs = 1) {
  OffenderPrune<E> r;
  r.rank_bound = g.order_log3().value_or(0);
  std::vector<uint32_t> reps;
  {
    std::set<uint32_t> used;
    for (uint32_t i = 1; i < g.order(); ++i) {
      if (used.count(i)) continue;
      uint32_t sq = g.mul_id(i, i);
      if (g.mul_id(sq, i) != 0) continue;
      used.insert(i);
      used.insert(sq);
      reps.push_back(i);
    }
  }
  std::vector<size_t> dims(reps.size());
  parallel_for(reps.size(), jobs, [&](size_t i) {
    const E& e = g.elem(reps[i]);
    dims[i] = brute_fixed_dim(std::span<const E>(&e, 1));
  });
  for (size_t d : dims) r.max_fixed_dim = std::max(r.max_fixed_dim, d);
  r.proven_none = (r.rank_bound + r.max_fixed_dim < g.dim());
  return r;
}

// --- symbolic-side helpers (subgroups of E(Omega) on a block module) ---------

/// Echelon basis of C_V(S) for a subgroup of H given by its log-coordinate
/// span; blockwise kernels embedded into full-length rows.
std::vector<Vec> h_subgroup_fixed_space(const ModuleSpec& mod, const HSubgroup& s);

long h_subgroup_jlog(const ModuleSpec& mod, const HSubgroup& s);

/// Symbolic Meierfrankenfeld-Stellmacher check for subgroups of E(Omega);
/// the dense-engine ms_check is its oracle on small instances.
MsResult ms_check_symbolic(const ModuleSpec& mod, const HSubgroup& h, const HSubgroup& k);

/// Weak closure of an H-subgroup inside E(Omega) by enumeration of all
/// conjugators (coordinates iterate the full group; |H| <= 3^12 guard).
bool weak_closure_symbolic(const Omega& om, const HSubgroup& s);

// --- builders & io ------------------------------------------------------------

/// Block-diagonal image of an H-element on the block-sum module, stored as
/// Kronecker factors (two 3x3 matrices per summand).
KronElem kron_image(const Omega& om, const SummandTable& table, const HElement& h);

/// The 27-element extraspecial group in its defining 3-dimensional
/// representation.
SmallGroup<DenseElem> extraspecial_v1_group();

/// Same group acting diagonally on V1 (x) V1 (9-dimensional, no central
/// quadratics).
SmallGroup<DenseElem> tensor_square_group();

/// Group file: header "p dim ngens", then ngens matrices in the text
/// format. p must be 3 and every matrix invertible.
std::vector<Mat> parse_group_file(std::istream& in);

}  // namespace p3mod
