#pragma once

// The modules: V1 (3-dim representation of one extraspecial quotient),
// V2 = V1 (x) V1 (9-dim), and the block module V0 = sum of V2(a,b;c,d)
// over all 4-tuples of pairwise distinct letters. H acts blockwise, Q
// permutes the summands diagonally.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "p3mod/errors.hpp"
#include "p3mod/gf3.hpp"
#include "p3mod/group.hpp"

namespace p3mod {

/// 4-tuple of pairwise distinct Omega positions.
using SummandIndex = std::array<uint8_t, 4>;

/// Enumeration of F4(Omega) in lexicographic order, with the diagonal
/// permutation action. 9*8*7*6 = 3024 tuples for the main construction.
class SummandTable {
 public:
  explicit SummandTable(const Omega& om);

  size_t count() const { return tuples_.size(); }
  const SummandIndex& tuple(uint32_t idx) const { return tuples_[idx]; }
  uint32_t index_of(const SummandIndex& t) const;
  uint32_t apply_perm(uint32_t idx, const Perm& q) const;
  /// Report name, e.g. "(x1,x2,y1,y2)".
  std::string name(const Omega& om, uint32_t idx) const;
  uint32_t index_of_labels(const Omega& om, const std::string& a, const std::string& b,
                           const std::string& c, const std::string& d) const;

 private:
  std::vector<SummandIndex> tuples_;
  std::map<SummandIndex, uint32_t> index_;
};

/// Which module a computation runs over.
struct ModuleSpec {
  enum class Kind { kV1, kV2, kBlockSum } kind;
  const Omega* om = nullptr;
  // kV1: the pair; kV2: the tuple.
  size_t ia = 0, ib = 0;
  SummandIndex tuple{};
  std::shared_ptr<const SummandTable> table;  // kBlockSum

  size_t block_dim() const { return kind == Kind::kV1 ? 3 : 9; }
  size_t nblocks() const { return kind == Kind::kBlockSum ? table->count() : 1; }
  size_t dim() const { return block_dim() * nblocks(); }
};

ModuleSpec module_v1(const Omega& om, const std::string& a, const std::string& b);
ModuleSpec module_v2(const Omega& om, const SummandIndex& t);
/// The full block sum over F4(Omega): V0 for the 9-letter Omega (as a
/// G-module), the 216-dimensional V2-sum for the 4-letter instance.
ModuleSpec module_block_sum(const Omega& om);

/// Image of an H-element in GL3 on V1(a,b); the composite of the
/// extraspecial projection with the defining matrices.
Mat v1_matrix(const Omega& om, const HElement& e, size_t ia, size_t ib);

/// Image on V2(t0,t1;t2,t3) = V1(t0,t1) (x) V1(t2,t3); generators outside
/// the tuple act as the identity.
Mat v2_matrix(const Omega& om, const HElement& e, const SummandIndex& t);

/// Sparse vector of a block-sum module: absent blocks are zero.
struct BlockVector {
  std::map<uint32_t, Vec> blocks;
  bool is_zero() const;
  void add(uint32_t block, std::span<const uint8_t> v);
};

/// Action of one group element on a block-sum module: a permutation of
/// summands composed with one local matrix per source block. Application:
/// out[perm[B]] = in[B] * local[B].
struct BlockOperator {
  std::shared_ptr<const SummandTable> table;
  std::vector<uint32_t> perm;
  std::vector<Mat> local;

  bool is_identity() const;
  BlockVector apply(const BlockVector& v) const;
};

/// Operator of g on the block-sum module; satisfies
/// v0_operator(g1*g2) = compose(v0_operator(g1), v0_operator(g2)).
BlockOperator v0_operator(const ModuleSpec& mod, const GElement& g);
BlockOperator compose(const BlockOperator& a, const BlockOperator& b);

/// Joint fixed-space dimension of the listed elements. Elements with
/// nontrivial Q-part couple blocks along their orbits; a component larger
/// than cycle_bound blocks raises BudgetExceeded.
size_t fixed_space_dim(const ModuleSpec& mod, std::span<const GElement> gens,
                       size_t cycle_bound = 81, unsigned jobs = 1);

/// log3 of j_H(V) = |H| |C_V(H)| / |V|; exact integer arithmetic.
struct JValue {
  long log3 = 0;
  bool offends() const { return log3 >= 0; }
};

JValue jlog(const ModuleSpec& mod, std::span<const GElement> gens, size_t order_log3,
            size_t cycle_bound = 81, unsigned jobs = 1);

struct QuadraticWitness {
  uint32_t block = 0;        // source block of the witnessing basis vector
  size_t basis_index = 0;    // index within the block
  uint32_t value_block = 0;  // block where the defect landed
  Vec value;                 // nonzero image under (rho(g)-1)^2
};

/// True iff (rho(g)-1)^2 = 0 and rho(g) != 1. Evaluated cycle-by-cycle
/// over the block permutation orbits for elements with Q-part.
bool is_quadratic_element(const ModuleSpec& mod, const GElement& g,
                          QuadraticWitness* witness = nullptr, size_t cycle_bound = 81);

/// v * (rho(g)-1)^2 on one block, for elements acting block-diagonally.
Vec quadratic_defect(const ModuleSpec& mod, const HElement& h, uint32_t block,
                     std::span<const uint8_t> v);

/// [V,E,E] = 0 tested over all ordered generator pairs (i,j), i = j
/// included. Throws std::invalid_argument for a trivial subgroup.
bool is_quadratic_subgroup(const ModuleSpec& mod, std::span<const GElement> gens,
                           unsigned jobs = 1, std::string* witness = nullptr);

}  // namespace p3mod
