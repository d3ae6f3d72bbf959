#pragma once

// Brute-force engines for fully enumerable matrix groups over GF(3).
//
// Two element representations share one set of algorithms:
//   DenseElem - one dense d x d matrix (user-supplied groups, the
//               27-element extraspecial instance);
//   KronElem  - a block-diagonal element stored as 3x3 Kronecker factors,
//               two per block (the |Omega| = 4 mini-instance at dimension
//               216, where dense storage would not fit the budget).
// Multiplication happens factor-wise; 9x9 blocks are materialized only
// for linear algebra. Everything here is independent of the symbolic
// collection engine, which is the point: these are the oracles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "p3mod/errors.hpp"
#include "p3mod/gf3.hpp"
#include "p3mod/parallel.hpp"

namespace p3mod {

struct DenseElem {
  Mat m;
  static DenseElem mul(const DenseElem& a, const DenseElem& b) { return {mat_mul(a.m, b.m)}; }
  DenseElem inverse() const { return {mat_inv(m)}; }
  std::string key() const { return std::string(m.data().begin(), m.data().end()); }
  size_t nblocks() const { return 1; }
  const Mat& block(size_t) const { return m; }
  size_t dim() const { return m.rows(); }
  bool is_identity() const { return m.is_identity(); }
};

struct KronElem {
  std::vector<Mat> f;  // 3x3 factors, two per block
  static KronElem mul(const KronElem& a, const KronElem& b) {
    KronElem r;
    r.f.reserve(a.f.size());
    for (size_t i = 0; i < a.f.size(); ++i) r.f.push_back(mat_mul(a.f[i], b.f[i]));
    return r;
  }
  KronElem inverse() const {
    KronElem r;
    r.f.reserve(f.size());
    for (const Mat& m : f) r.f.push_back(mat_inv(m));
    return r;
  }
  std::string key() const {
    std::string s;
    s.reserve(f.size() * 9);
    for (const Mat& m : f) s.append(m.data().begin(), m.data().end());
    return s;
  }
  size_t nblocks() const { return f.size() / 2; }
  Mat block(size_t b) const { return kronecker(f[2 * b], f[2 * b + 1]); }
  size_t dim() const { return 9 * nblocks(); }
  bool is_identity() const {
    return std::all_of(f.begin(), f.end(), [](const Mat& m) { return m.is_identity(); });
  }
};

/// Enumerated closure of a generator list; order capped (default 3^11).
template <class E>
class SmallGroup {
 public:
  static SmallGroup enumerate(std::vector<E> gens, size_t cap = 177147) {
    SmallGroup g;
    if (gens.empty()) throw std::invalid_argument("SmallGroup: no generators");
    E id = gens[0];
    {  // identity with the same shape
      E inv = gens[0].inverse();
      id = E::mul(gens[0], inv);
    }
    g.push(id);
    for (E& e : gens) {
      uint32_t i = g.push(e);
      g.gen_ids_.push_back(i);
    }
    for (size_t head = 0; head < g.elems_.size(); ++head) {
      for (uint32_t gi : g.gen_ids_) {
        E p = E::mul(g.elems_[head], g.elems_[gi]);
        g.push(std::move(p));
        if (g.elems_.size() > cap)
          throw BudgetExceeded("group closure exceeds cap " + std::to_string(cap));
      }
    }
    return g;
  }

  size_t order() const { return elems_.size(); }
  /// log3 of the order; nullopt if the order is not a power of 3.
  std::optional<size_t> order_log3() const {
    size_t n = order(), k = 0;
    while (n % 3 == 0) { n /= 3; ++k; }
    return n == 1 ? std::optional<size_t>(k) : std::nullopt;
  }

  const E& elem(uint32_t i) const { return elems_[i]; }
  const std::vector<uint32_t>& gen_ids() const { return gen_ids_; }
  size_t dim() const { return elems_[0].dim(); }

  uint32_t id_of(const E& e) const {
    auto it = ids_.find(e.key());
    if (it == ids_.end()) throw std::logic_error("element outside enumerated group");
    return it->second;
  }
  uint32_t mul_id(uint32_t a, uint32_t b) const { return id_of(E::mul(elems_[a], elems_[b])); }
  uint32_t inv_id(uint32_t a) const { return id_of(elems_[a].inverse()); }
  uint32_t conj_id(uint32_t a, uint32_t g) const {
    return id_of(E::mul(E::mul(elems_[g].inverse(), elems_[a]), elems_[g]));
  }
  bool commute(uint32_t a, uint32_t b) const { return mul_id(a, b) == mul_id(b, a); }

 private:
  uint32_t push(E e) {
    auto [it, fresh] = ids_.emplace(e.key(), static_cast<uint32_t>(elems_.size()));
    if (fresh) elems_.push_back(std::move(e));
    return it->second;
  }
  std::vector<E> elems_;
  std::unordered_map<std::string, uint32_t> ids_;
  std::vector<uint32_t> gen_ids_;
};

// --- module-side predicates -------------------------------------------------

/// dim of the joint fixed space {v : v e = v for all listed elements}.
template <class E>
size_t brute_fixed_dim(std::span<const E> elems) {
  if (elems.empty()) throw std::invalid_argument("brute_fixed_dim: empty list");
  size_t total = 0;
  for (size_t b = 0; b < elems[0].nblocks(); ++b) {
    std::vector<Mat> pieces;
    for (const E& e : elems) {
      Mat m = e.block(b);
      Mat d = m - Mat::identity(m.rows());
      if (!d.is_zero()) pieces.push_back(std::move(d));
    }
    if (pieces.empty()) {
      total += elems[0].block(b).rows();
      continue;
    }
    total += kernel_basis(hstack(pieces)).size();
  }
  return total;
}

/// (e-1)^2 = 0 and e != 1.
template <class E>
bool brute_quadratic(const E& e) {
  if (e.is_identity()) return false;
  for (size_t b = 0; b < e.nblocks(); ++b) {
    Mat m = e.block(b);
    Mat d = m - Mat::identity(m.rows());
    if (!mat_mul(d, d).is_zero()) return false;
  }
  return true;
}

/// [V, a, b] = 0, i.e. (a-1)(b-1) = 0 blockwise.
template <class E>
bool brute_pair_annihilates(const E& a, const E& b) {
  for (size_t bl = 0; bl < a.nblocks(); ++bl) {
    Mat da = a.block(bl), db = b.block(bl);
    da = da - Mat::identity(da.rows());
    db = db - Mat::identity(db.rows());
    if (da.is_zero() || db.is_zero()) continue;
    if (!mat_mul(da, db).is_zero()) return false;
  }
  return true;
}

/// Basis (echelon rows) of [V, S] = span of the row spaces of (e-1),
/// blockwise; returned per block.
template <class E>
std::vector<std::vector<Vec>> brute_commutator_space(const SmallGroup<E>& g,
                                                     std::span<const uint32_t> gen_ids) {
  std::vector<std::vector<Vec>> out;
  for (size_t b = 0; b < g.elem(0).nblocks(); ++b) {
    std::vector<Vec> rows;
    for (uint32_t id : gen_ids) {
      Mat d = g.elem(id).block(b);
      d = d - Mat::identity(d.rows());
      for (size_t r = 0; r < d.rows(); ++r)
        rows.emplace_back(d.row(r).begin(), d.row(r).end());
    }
    out.push_back(rref(std::move(rows)));
  }
  return out;
}

// --- subgroups as id sets -----------------------------------------------------

struct IdSubgroup {
  std::vector<uint32_t> gens;
  std::vector<uint32_t> ids;  // sorted, closed
  bool operator==(const IdSubgroup& o) const { return ids == o.ids; }
  bool contains_set(const IdSubgroup& o) const {
    return std::includes(ids.begin(), ids.end(), o.ids.begin(), o.ids.end());
  }
};

template <class E>
IdSubgroup subgroup_closure(const SmallGroup<E>& g, std::vector<uint32_t> gens) {
  std::set<uint32_t> seen{0};  // identity has id 0 by construction
  std::vector<uint32_t> frontier{0};
  for (uint32_t x : gens)
    if (seen.insert(x).second) frontier.push_back(x);
  for (size_t head = 0; head < frontier.size(); ++head)
    for (uint32_t x : gens) {
      uint32_t p = g.mul_id(frontier[head], x);
      if (seen.insert(p).second) frontier.push_back(p);
    }
  IdSubgroup s;
  s.gens = std::move(gens);
  s.ids.assign(seen.begin(), seen.end());
  return s;
}

inline IdSubgroup intersect(const IdSubgroup& a, const IdSubgroup& b) {
  IdSubgroup r;
  std::set_intersection(a.ids.begin(), a.ids.end(), b.ids.begin(), b.ids.end(),
                        std::back_inserter(r.ids));
  r.gens = r.ids;  // any generating set works; the full set certainly does
  return r;
}

template <class E>
IdSubgroup join(const SmallGroup<E>& g, const IdSubgroup& a, const IdSubgroup& b) {
  std::vector<uint32_t> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return subgroup_closure(g, std::move(gens));
}

inline size_t subgroup_order_log3(const IdSubgroup& s) {
  size_t n = s.ids.size(), k = 0;
  while (n % 3 == 0) { n /= 3; ++k; }
  if (n != 1) throw std::logic_error("subgroup order not a power of 3");
  return k;
}

template <class E>
size_t subgroup_fixed_dim(const SmallGroup<E>& g, const IdSubgroup& s) {
  std::vector<E> gens;
  for (uint32_t id : s.gens) gens.push_back(g.elem(id));
  if (gens.empty()) return g.dim();
  return brute_fixed_dim<E>(gens);
}

template <class E>
long subgroup_jlog(const SmallGroup<E>& g, const IdSubgroup& s) {
  return long(subgroup_order_log3(s)) + long(subgroup_fixed_dim(g, s)) - long(g.dim());
}

/// Echelon basis of C_V(S), blockwise concatenated into full-length rows.
template <class E>
std::vector<Vec> subgroup_fixed_space(const SmallGroup<E>& g, const IdSubgroup& s) {
  size_t dim = g.dim();
  std::vector<Vec> rows;
  size_t offset = 0;
  for (size_t b = 0; b < g.elem(0).nblocks(); ++b) {
    std::vector<Mat> pieces;
    size_t bd = 0;
    for (uint32_t id : s.gens) {
      Mat m = g.elem(id).block(b);
      bd = m.rows();
      Mat d = m - Mat::identity(bd);
      if (!d.is_zero()) pieces.push_back(std::move(d));
    }
    if (bd == 0) bd = g.elem(0).block(b).rows();
    std::vector<Vec> local;
    if (pieces.empty()) {
      local.assign(bd, Vec());
      for (size_t r = 0; r < bd; ++r) {
        local[r].assign(bd, 0);
        local[r][r] = 1;
      }
    } else {
      local = kernel_basis(hstack(pieces));
    }
    for (const Vec& v : local) {
      Vec full(dim, 0);
      std::copy(v.begin(), v.end(), full.begin() + offset);
      rows.push_back(std::move(full));
    }
    offset += bd;
  }
  return rref(std::move(rows));
}

// --- elementary abelian enumeration ------------------------------------------

/// All elementary abelian subgroups of rank <= max_rank. Starts from
/// order-3 classes (deduplicated under g <-> g^2), extends by commuting
/// classes, canonicalizes by the closed id set. Throws BudgetExceeded when
/// more than max_subgroups distinct subgroups appear.
template <class E>
std::vector<IdSubgroup> elementary_abelians(const SmallGroup<E>& g, size_t max_rank,
                                            size_t max_subgroups = 1000000) {
  std::vector<uint32_t> class_reps;
  {
    std::set<uint32_t> used;
    for (uint32_t i = 1; i < g.order(); ++i) {
      if (used.count(i)) continue;
      uint32_t sq = g.mul_id(i, i);
      if (g.mul_id(sq, i) != 0) continue;  // order > 3
      used.insert(i);
      used.insert(sq);
      class_reps.push_back(i);
    }
  }

  std::vector<IdSubgroup> out;
  std::set<std::vector<uint32_t>> seen;
  std::vector<size_t> layer_start;  // where each rank layer begins in out

  for (uint32_t r : class_reps) {
    IdSubgroup s = subgroup_closure(g, {r});
    if (seen.insert(s.ids).second) out.push_back(std::move(s));
    if (out.size() > max_subgroups) throw BudgetExceeded("elementary_abelians: budget");
  }
  size_t lo = 0, hi = out.size();
  for (size_t rank = 2; rank <= max_rank && lo < hi; ++rank) {
    for (size_t i = lo; i < hi; ++i) {
      for (uint32_t r : class_reps) {
        IdSubgroup base = out[i];
        if (std::binary_search(base.ids.begin(), base.ids.end(), r)) continue;
        bool ok = true;
        for (uint32_t gen : base.gens)
          if (!g.commute(gen, r)) { ok = false; break; }
        if (!ok) continue;
        std::vector<uint32_t> gens = base.gens;
        gens.push_back(r);
        IdSubgroup s = subgroup_closure(g, std::move(gens));
        if (seen.insert(s.ids).second) {
          out.push_back(std::move(s));
          if (out.size() > max_subgroups) throw BudgetExceeded("elementary_abelians: budget");
        }
      }
    }
    lo = hi;
    hi = out.size();
  }
  return out;
}

/// All subgroups of one elementary abelian subgroup (including the trivial
/// subgroup and s itself).
template <class E>
std::vector<IdSubgroup> subgroups_of_ea(const SmallGroup<E>& g, const IdSubgroup& s) {
  std::vector<IdSubgroup> out;
  std::set<std::vector<uint32_t>> seen;
  IdSubgroup triv;
  triv.ids = {0};
  seen.insert(triv.ids);
  out.push_back(triv);
  size_t lo = 0, hi = out.size();
  while (lo < hi) {
    for (size_t i = lo; i < hi; ++i) {
      for (uint32_t x : s.ids) {
        if (x == 0 || std::binary_search(out[i].ids.begin(), out[i].ids.end(), x)) continue;
        std::vector<uint32_t> gens = out[i].gens;
        gens.push_back(x);
        IdSubgroup t = subgroup_closure(g, std::move(gens));
        if (seen.insert(t.ids).second) out.push_back(std::move(t));
      }
    }
    lo = hi;
    hi = out.size();
  }
  return out;
}

// --- centre helpers -------------------------------------------------------------

template <class E>
std::vector<uint32_t> centre_ids(const SmallGroup<E>& g) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < g.order(); ++i) {
    bool central = true;
    for (uint32_t gen : g.gen_ids())
      if (!g.commute(i, gen)) { central = false; break; }
    if (central) out.push_back(i);
  }
  return out;
}

template <class E>
std::vector<uint32_t> second_centre_ids(const SmallGroup<E>& g,
                                        const std::set<uint32_t>& centre) {
  std::vector<uint32_t> out;
  for (uint32_t i = 0; i < g.order(); ++i) {
    bool ok = true;
    for (uint32_t gen : g.gen_ids()) {
      uint32_t comm = g.mul_id(g.mul_id(g.inv_id(i), g.inv_id(gen)), g.mul_id(i, gen));
      if (!centre.count(comm)) { ok = false; break; }
    }
    if (ok) out.push_back(i);
  }
  return out;
}

/// True iff every conjugate of s contained in C_G(s) equals s.
template <class E>
bool weak_closure_bruteforce(const SmallGroup<E>& g, const IdSubgroup& s) {
  for (uint32_t c = 0; c < g.order(); ++c) {
    std::vector<uint32_t> conj_gens;
    conj_gens.reserve(s.gens.size());
    for (uint32_t x : s.gens) conj_gens.push_back(g.conj_id(x, c));
    bool centralizes = true;
    for (uint32_t cg : conj_gens) {
      for (uint32_t x : s.gens)
        if (!g.commute(cg, x)) { centralizes = false; break; }
      if (!centralizes) break;
    }
    if (!centralizes) continue;
    IdSubgroup conj = subgroup_closure(g, std::move(conj_gens));
    if (!(conj == s)) return false;
  }
  return true;
}

template <class E>
bool is_normal(const SmallGroup<E>& g, const IdSubgroup& s) {
  for (uint32_t gen : g.gen_ids())
    for (uint32_t x : s.gens)
      if (!std::binary_search(s.ids.begin(), s.ids.end(), g.conj_id(x, gen))) return false;
  return true;
}

}  // namespace p3mod
