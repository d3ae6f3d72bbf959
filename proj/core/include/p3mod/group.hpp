#pragma once

// Exact normal-form arithmetic for the free class-two exponent-3 group
// E(Omega), the wreath product Q = C3 wr C3 acting on the 9-letter Omega,
// and the semidirect product G = E(Omega) x| Q.
//
// Normal form: an element is  prod_i g_i^{u_i} (in Omega order) times
// prod_{i<j} [g_i,g_j]^{c_ij}.  Two elements are equal iff their (u, c)
// coordinates are equal. The collection rule for products and every sign
// convention below is validated by the projection-homomorphism property
// (each of the n(n-1)/2 projections onto the extraspecial group of order
// 27 must be a homomorphism) rather than trusted.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "p3mod/gf3.hpp"

namespace p3mod {

/// Ordered generator set. The ordering is immutable: it defines the
/// commutator coordinate system.
class Omega {
 public:
  explicit Omega(std::vector<std::string> labels);

  /// The 9-letter alphabet x1,x2,x3,y1,y2,y3,z1,z2,z3 of the main construction.
  static Omega main9();
  /// n letters a, b, c, ... (n <= 8), for the small instances.
  static Omega letters(size_t n);

  size_t n() const noexcept { return labels_.size(); }
  size_t npairs() const noexcept { return labels_.size() * (labels_.size() - 1) / 2; }
  size_t coords() const noexcept { return n() + npairs(); }

  const std::string& label(size_t i) const { return labels_[i]; }
  size_t index_of(const std::string& label) const;

  /// Index of the unordered pair {i,j}, i < j, in lexicographic order.
  size_t pair_index(size_t i, size_t j) const;
  std::pair<size_t, size_t> pair_at(size_t idx) const;

  bool operator==(const Omega& o) const { return labels_ == o.labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Element of E(Omega): generator exponents u (length n) and commutator
/// coordinates c (length n(n-1)/2, indexed by Omega::pair_index).
struct HElement {
  Vec u, c;
  bool operator==(const HElement& o) const = default;
  bool is_identity() const { return vec_is_zero(u) && vec_is_zero(c); }
  /// True iff the element lies in the derived subgroup H' (= the centre).
  bool central() const { return vec_is_zero(u); }
};

HElement h_identity(const Omega& om);
HElement h_generator(const Omega& om, size_t i);

HElement h_mul(const Omega& om, const HElement& a, const HElement& b);
HElement h_inv(const Omega& om, const HElement& a);
HElement h_pow(const Omega& om, const HElement& a, long k);
/// [a,b] = a^-1 b^-1 a b; lands in H', coordinates u_i^a u_j^b - u_j^a u_i^b.
HElement h_comm(const Omega& om, const HElement& a, const HElement& b);
bool h_commute(const Omega& om, const HElement& a, const HElement& b);

/// Image of a in the extraspecial group E(labels.first, labels.second),
/// realized as a 3x3 matrix (a -> I+E12, b -> I+E23, [a,b] -> I+E13).
/// a == identity iff all n(n-1)/2 projections are the identity matrix.
Mat projection_f(const Omega& om, const HElement& a,
                 const std::string& la, const std::string& lb);
Mat projection_f(const Omega& om, const HElement& a, size_t ia, size_t ib);

/// Permutation of Omega positions; img[i] is the image of position i.
struct Perm {
  std::vector<uint8_t> img;
  static Perm identity(size_t n);
  bool is_identity() const;
  size_t n() const { return img.size(); }
  bool operator==(const Perm& o) const = default;
};

/// p then q: (p*q)[i] = q[p[i]], matching right-action composition.
Perm perm_mul(const Perm& p, const Perm& q);
Perm perm_inv(const Perm& p);

/// The induced automorphism of E(Omega): generators are relabelled by q,
/// pair coordinates move to the image pair with sign -1 when the image
/// pair comes out reversed.
HElement q_act(const Omega& om, const HElement& h, const Perm& q);

/// Element of G = H x| Q in its unique h*q decomposition.
struct GElement {
  HElement h;
  Perm q;
  bool operator==(const GElement& o) const = default;
  bool is_identity() const { return h.is_identity() && q.is_identity(); }
  bool in_h() const { return q.is_identity(); }
};

GElement g_identity(const Omega& om);
GElement g_from_h(const HElement& h, size_t n);
GElement g_from_q(const Omega& om, const Perm& q);

// (h1,q1)(h2,q2) = (h1 * q_act(h2, q1^-1), q1 q2): chosen so that
// conjugation of H by q in Q agrees with the action table, e.g.
// g_conj(x1, sigma_x) = x2.
GElement g_mul(const Omega& om, const GElement& a, const GElement& b);
GElement g_inv(const Omega& om, const GElement& a);
GElement g_pow(const Omega& om, const GElement& a, long k);
/// Right conjugation a^g = g^-1 a g.
GElement g_conj(const Omega& om, const GElement& a, const GElement& g);
GElement g_comm(const Omega& om, const GElement& a, const GElement& b);

// --- wreath product Q = C3 wr C3 < Sym(9) -------------------------------

/// Q with its four generators and the certified 81-element closure.
struct WreathQ {
  Perm sigma_x, sigma_y, sigma_z, tau;
  std::vector<Perm> elements;  // deterministic BFS order, identity first

  std::vector<const Perm*> generators() const {
    return {&sigma_x, &sigma_y, &sigma_z, &tau};
  }
};

/// Builds Q for the 9-letter Omega and certifies |Q| = 81 by closure;
/// throws std::logic_error if the closure has unexpected size.
WreathQ build_wreath_q(const Omega& om);

/// Product over the distinct Q-images of a central element h (order
/// independent since all factors commute). Throws if h is not central.
HElement orbit_product(const Omega& om, const WreathQ& q, const HElement& h);

// --- subgroups of H ------------------------------------------------------

/// Adjusted ("log") coordinates u ++ (c_ij - u_i u_j). Under these, every
/// subgroup of E(Omega) is exactly an F3-subspace, so membership, rank,
/// intersections and joins are plain linear algebra.
Vec log_coords(const Omega& om, const HElement& h);
HElement from_log_coords(const Omega& om, std::span<const uint8_t> v);

/// Subgroup of E(Omega) as an echelonized subspace in log coordinates.
class HSubgroup {
 public:
  HSubgroup() = default;
  static HSubgroup from_generators(const Omega& om, std::span<const HElement> gens);
  static HSubgroup from_log_rows(const Omega& om, std::vector<Vec> rows);
  /// The derived subgroup H' (all elements with u = 0).
  static HSubgroup derived(const Omega& om);

  size_t rank() const { return basis_.size(); }
  bool contains(const Omega& om, const HElement& h) const;
  const std::vector<Vec>& log_basis() const { return basis_; }
  std::vector<HElement> basis_elements(const Omega& om) const;

  HSubgroup intersect(const Omega& om, const HSubgroup& o) const;
  HSubgroup join(const Omega& om, const HSubgroup& o) const;

  bool is_abelian(const Omega& om) const;
  /// All 3^rank elements; guarded against rank > 16.
  std::vector<HElement> elements(const Omega& om) const;

 private:
  std::vector<Vec> basis_;  // rref rows over log coordinates
};

/// Finite list of commuting order-3 generators with an echelonized
/// internal basis (when all generators lie in H).
struct EASubgroup {
  std::vector<GElement> gens;
  HSubgroup span;        // valid iff all gens lie in H
  size_t order_log3 = 0;
};

/// Validates commutativity and exponent; computes span/rank for gens in H.
EASubgroup make_ea_subgroup(const Omega& om, std::vector<GElement> gens);

/// E = < x1, [x1,a] : a in Omega >, the rank-9 witness subgroup.
EASubgroup build_E(const Omega& om);

// --- centre and weak closure --------------------------------------------

struct CenterResult {
  std::vector<HElement> basis;   // basis of the Q-fixed subspace of H'
  HElement c1, c2;               // orbit products of [x1,x2] and [x1,y1]
  size_t c1_support = 0, c2_support = 0;
  bool rank_is_two = false, c1_in_span = false, c2_in_span = false;
  bool pass() const { return rank_is_two && c1_in_span && c2_in_span; }
};

/// Fixed subspace of the Q-action on the 36-dimensional commutator space;
/// asserts rank 2 and that both orbit products lie in the span.
CenterResult center_of_G(const Omega& om, const WreathQ& q);

struct WeakClosureReport {
  bool normalizer_ok = false;   // [E, <H, sigma_y, sigma_z>] <= E on generators
  bool displaced_ok = false;    // [x1, x1^r] != 1 for the 8 nontrivial coset reps
  bool coset_ok = false;        // x1^(k r) lies in x1^r H' for sampled k
  size_t samples = 0;
  std::string witness;          // first failure, if any
  bool pass() const { return normalizer_ok && displaced_ok && coset_ok; }
};

/// Structural weak-closure verification for E = build_E(): (i) the index-9
/// subgroup K = <H, sigma_y, sigma_z> normalizes E, (ii) for every
/// nontrivial coset rep r = sigma_x^i tau^j the displaced generator x1^r
/// fails to commute with x1, (iii) sampled k in K confirm x1^(kr) stays in
/// x1^r H', making (ii) coset independent.
WeakClosureReport weak_closure_structural(const Omega& om, const WreathQ& q,
                                          const EASubgroup& E,
                                          uint64_t seed, size_t samples = 100);

// --- text serialization ---------------------------------------------------

/// "u: <digits> | c: <digits>" in fixed coordinate order.
std::string to_text(const Omega& om, const HElement& h);
/// HElement text plus " | q: <images>" in one-line image notation.
std::string to_text(const Omega& om, const GElement& g);
HElement h_from_text(const Omega& om, const std::string& s);
GElement g_from_text(const Omega& om, const std::string& s);

}  // namespace p3mod
