#include "p3mod/rep.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "p3mod/parallel.hpp"

namespace p3mod {

SummandTable::SummandTable(const Omega& om) {
  size_t n = om.n();
  if (n < 4) throw std::invalid_argument("SummandTable: needs at least 4 letters");
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (size_t c = 0; c < n; ++c)
        for (size_t d = 0; d < n; ++d) {
          if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
          SummandIndex t{uint8_t(a), uint8_t(b), uint8_t(c), uint8_t(d)};
          index_[t] = static_cast<uint32_t>(tuples_.size());
          tuples_.push_back(t);
        }
}

uint32_t SummandTable::index_of(const SummandIndex& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) throw std::invalid_argument("SummandTable: not a valid 4-tuple");
  return it->second;
}

uint32_t SummandTable::apply_perm(uint32_t idx, const Perm& q) const {
  const SummandIndex& t = tuples_[idx];
  return index_of({q.img[t[0]], q.img[t[1]], q.img[t[2]], q.img[t[3]]});
}

std::string SummandTable::name(const Omega& om, uint32_t idx) const {
  const SummandIndex& t = tuples_[idx];
  return "(" + om.label(t[0]) + "," + om.label(t[1]) + "," + om.label(t[2]) + "," +
         om.label(t[3]) + ")";
}

uint32_t SummandTable::index_of_labels(const Omega& om, const std::string& a,
                                       const std::string& b, const std::string& c,
                                       const std::string& d) const {
  return index_of({uint8_t(om.index_of(a)), uint8_t(om.index_of(b)),
                   uint8_t(om.index_of(c)), uint8_t(om.index_of(d))});
}

ModuleSpec module_v1(const Omega& om, const std::string& a, const std::string& b) {
  ModuleSpec m;
  m.kind = ModuleSpec::Kind::kV1;
  m.om = &om;
  m.ia = om.index_of(a);
  m.ib = om.index_of(b);
  if (m.ia == m.ib) throw std::invalid_argument("module_v1: labels must be distinct");
  return m;
}

ModuleSpec module_v2(const Omega& om, const SummandIndex& t) {
  ModuleSpec m;
  m.kind = ModuleSpec::Kind::kV2;
  m.om = &om;
  m.tuple = t;
  return m;
}

ModuleSpec module_block_sum(const Omega& om) {
  ModuleSpec m;
  m.kind = ModuleSpec::Kind::kBlockSum;
  m.om = &om;
  m.table = std::make_shared<SummandTable>(om);
  return m;
}

Mat v1_matrix(const Omega& om, const HElement& e, size_t ia, size_t ib) {
  return projection_f(om, e, ia, ib);
}

Mat v2_matrix(const Omega& om, const HElement& e, const SummandIndex& t) {
  return kronecker(v1_matrix(om, e, t[0], t[1]), v1_matrix(om, e, t[2], t[3]));
}

static Mat element_matrix(const ModuleSpec& mod, const HElement& h, uint32_t block) {
  switch (mod.kind) {
    case ModuleSpec::Kind::kV1: return v1_matrix(*mod.om, h, mod.ia, mod.ib);
    case ModuleSpec::Kind::kV2: return v2_matrix(*mod.om, h, mod.tuple);
    case ModuleSpec::Kind::kBlockSum: return v2_matrix(*mod.om, h, mod.table->tuple(block));
  }
  throw std::logic_error("unreachable");
}

bool BlockVector::is_zero() const {
  for (const auto& [b, v] : blocks)
    if (!vec_is_zero(v)) return false;
  return true;
}

void BlockVector::add(uint32_t block, std::span<const uint8_t> v) {
  auto it = blocks.find(block);
  if (it == blocks.end()) {
    blocks.emplace(block, Vec(v.begin(), v.end()));
    return;
  }
  it->second = vec_add(it->second, v);
  if (vec_is_zero(it->second)) blocks.erase(it);
}

bool BlockOperator::is_identity() const {
  for (size_t b = 0; b < perm.size(); ++b)
    if (perm[b] != b || !local[b].is_identity()) return false;
  return true;
}

BlockVector BlockOperator::apply(const BlockVector& v) const {
  BlockVector out;
  for (const auto& [b, vec] : v.blocks) out.add(perm[b], vec_mat(vec, local[b]));
  return out;
}

BlockOperator v0_operator(const ModuleSpec& mod, const GElement& g) {
  if (mod.kind != ModuleSpec::Kind::kBlockSum)
    throw std::invalid_argument("v0_operator: block-sum module required");
  BlockOperator op;
  op.table = mod.table;
  size_t nb = mod.table->count();
  op.perm.resize(nb);
  op.local.reserve(nb);
  for (uint32_t b = 0; b < nb; ++b) {
    op.perm[b] = mod.table->apply_perm(b, g.q);
    op.local.push_back(v2_matrix(*mod.om, g.h, mod.table->tuple(b)));
  }
  return op;
}

BlockOperator compose(const BlockOperator& a, const BlockOperator& b) {
  BlockOperator r;
  r.table = a.table;
  size_t nb = a.perm.size();
  r.perm.resize(nb);
  r.local.reserve(nb);
  for (uint32_t t = 0; t < nb; ++t) {
    r.perm[t] = b.perm[a.perm[t]];
    r.local.push_back(mat_mul(a.local[t], b.local[a.perm[t]]));
  }
  return r;
}

namespace {

// Connected components of the block set under all generators' permutations.
std::vector<std::vector<uint32_t>> block_components(const SummandTable& table,
                                                    std::span<const GElement> gens) {
  size_t nb = table.count();
  std::vector<uint32_t> parent(nb);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const GElement& g : gens) {
    if (g.in_h()) continue;
    for (uint32_t b = 0; b < nb; ++b) {
      uint32_t a = find(b), c = find(table.apply_perm(b, g.q));
      if (a != c) parent[std::max(a, c)] = std::min(a, c);
    }
  }
  std::map<uint32_t, std::vector<uint32_t>> comp;
  for (uint32_t b = 0; b < nb; ++b) comp[find(b)].push_back(b);
  std::vector<std::vector<uint32_t>> out;
  out.reserve(comp.size());
  for (auto& [root, blocks] : comp) out.push_back(std::move(blocks));
  return out;
}

size_t component_fixed_dim(const ModuleSpec& mod, std::span<const GElement> gens,
                           const std::vector<uint32_t>& comp) {
  size_t bd = mod.block_dim();
  size_t L = comp.size();
  std::map<uint32_t, size_t> pos;
  for (size_t i = 0; i < L; ++i) pos[comp[i]] = i;

  // Constraints v_B * local_g(B) - v_{perm_g(B)} = 0, one column group per
  // (generator, source block). Variables are the component's coordinates.
  std::vector<Mat> pieces;
  for (const GElement& g : gens) {
    for (size_t i = 0; i < L; ++i) {
      uint32_t b = comp[i];
      Mat m = element_matrix(mod, g.h, b);
      uint32_t tgt = mod.kind == ModuleSpec::Kind::kBlockSum
                         ? mod.table->apply_perm(b, g.q)
                         : b;
      size_t j = pos.at(tgt);
      Mat cons(L * bd, bd);
      for (size_t r = 0; r < bd; ++r)
        for (size_t c = 0; c < bd; ++c) cons(i * bd + r, c) = m(r, c);
      for (size_t c = 0; c < bd; ++c)
        cons(j * bd + c, c) = f3_sub(cons(j * bd + c, c), 1);
      if (!cons.is_zero()) pieces.push_back(std::move(cons));
    }
  }
  if (pieces.empty()) return L * bd;
  return kernel_basis(hstack(pieces)).size();
}

}  // namespace

size_t fixed_space_dim(const ModuleSpec& mod, std::span<const GElement> gens,
                       size_t cycle_bound, unsigned jobs) {
  for (const GElement& g : gens)
    if (!g.in_h() && mod.kind != ModuleSpec::Kind::kBlockSum)
      throw std::invalid_argument("fixed_space_dim: Q-part on a single-block module");
  if (gens.empty()) return mod.dim();

  bool all_h = std::all_of(gens.begin(), gens.end(), [](const GElement& g) { return g.in_h(); });
  if (mod.kind != ModuleSpec::Kind::kBlockSum || all_h) {
    // Block-diagonal: per-block left kernel of the stacked (mat - I).
    size_t nb = mod.nblocks();
    size_t bd = mod.block_dim();
    std::vector<size_t> dims(nb);
    parallel_for(nb, jobs, [&](size_t b) {
      std::vector<Mat> pieces;
      for (const GElement& g : gens) {
        Mat m = element_matrix(mod, g.h, static_cast<uint32_t>(b)) - Mat::identity(bd);
        if (!m.is_zero()) pieces.push_back(std::move(m));
      }
      dims[b] = pieces.empty() ? bd : kernel_basis(hstack(pieces)).size();
    });
    return std::accumulate(dims.begin(), dims.end(), size_t(0));
  }

  auto comps = block_components(*mod.table, gens);
  size_t total = 0;
  for (const auto& comp : comps) {
    if (comp.size() > cycle_bound)
      throw BudgetExceeded("fixed_space_dim: coupled component of " +
                           std::to_string(comp.size()) + " blocks exceeds cycle bound " +
                           std::to_string(cycle_bound));
    total += component_fixed_dim(mod, gens, comp);
  }
  return total;
}

JValue jlog(const ModuleSpec& mod, std::span<const GElement> gens, size_t order_log3,
            size_t cycle_bound, unsigned jobs) {
  size_t fix = fixed_space_dim(mod, gens, cycle_bound, jobs);
  return JValue{long(order_log3) + long(fix) - long(mod.dim())};
}

Vec quadratic_defect(const ModuleSpec& mod, const HElement& h, uint32_t block,
                     std::span<const uint8_t> v) {
  Mat n = element_matrix(mod, h, block) - Mat::identity(mod.block_dim());
  return vec_mat(vec_mat(v, n), n);
}

bool is_quadratic_element(const ModuleSpec& mod, const GElement& g,
                          QuadraticWitness* witness, size_t cycle_bound) {
  size_t bd = mod.block_dim();
  if (g.in_h()) {
    bool nontrivial = false;
    for (uint32_t b = 0; b < mod.nblocks(); ++b) {
      Mat m = element_matrix(mod, g.h, b);
      if (!m.is_identity()) nontrivial = true;
      Mat n = m - Mat::identity(bd);
      Mat n2 = mat_mul(n, n);
      if (!n2.is_zero()) {
        if (witness) {
          for (size_t r = 0; r < bd; ++r) {
            if (!vec_is_zero(n2.row(r))) {
              witness->block = b;
              witness->basis_index = r;
              witness->value_block = b;
              witness->value.assign(n2.row(r).begin(), n2.row(r).end());
              break;
            }
          }
        }
        return false;
      }
    }
    return nontrivial;  // identity has minimal polynomial of degree 1
  }

  if (mod.kind != ModuleSpec::Kind::kBlockSum)
    throw std::invalid_argument("is_quadratic_element: Q-part on a single-block module");

  // Walk each block orbit of the induced permutation and evaluate
  // e*(rho^2) - 2 e*rho + e on the block's basis vectors.
  const SummandTable& table = *mod.table;
  size_t nb = table.count();
  std::vector<char> seen(nb, 0);
  for (uint32_t b0 = 0; b0 < nb; ++b0) {
    if (seen[b0]) continue;
    std::vector<uint32_t> orbit;
    uint32_t b = b0;
    do {
      orbit.push_back(b);
      seen[b] = 1;
      b = table.apply_perm(b, g.q);
    } while (b != b0);
    if (orbit.size() > cycle_bound)
      throw BudgetExceeded("is_quadratic_element: orbit exceeds cycle bound");

    for (uint32_t src : orbit) {
      uint32_t t1 = table.apply_perm(src, g.q);
      uint32_t t2 = table.apply_perm(t1, g.q);
      Mat m1 = element_matrix(mod, g.h, src);
      Mat m2 = mat_mul(m1, element_matrix(mod, g.h, t1));
      for (size_t r = 0; r < bd; ++r) {
        Vec e(bd, 0);
        e[r] = 1;
        // (rho-1)^2 = rho^2 - 2 rho + 1 = rho^2 + rho + 1 over GF(3).
        BlockVector acc;
        acc.add(t2, vec_mat(e, m2));
        acc.add(t1, vec_mat(e, m1));
        acc.add(src, e);
        if (!acc.is_zero()) {
          if (witness) {
            witness->block = src;
            witness->basis_index = r;
            const auto& [vb, vv] = *acc.blocks.begin();
            witness->value_block = vb;
            witness->value = vv;
          }
          return false;
        }
      }
    }
  }
  // (rho-1)^2 = 0; quadratic iff rho != 1. A nontrivial block permutation
  // cannot happen here (an orbit of length >= 3 always leaves a defect).
  for (uint32_t b = 0; b < nb; ++b)
    if (!element_matrix(mod, g.h, b).is_identity() || table.apply_perm(b, g.q) != b)
      return true;
  return false;
}

bool is_quadratic_subgroup(const ModuleSpec& mod, std::span<const GElement> gens,
                           unsigned jobs, std::string* witness) {
  bool nontrivial = false;
  for (const GElement& g : gens) nontrivial |= !g.is_identity();
  if (gens.empty() || !nontrivial)
    throw std::invalid_argument("is_quadratic_subgroup: trivial subgroup");
  for (const GElement& g : gens)
    if (!g.in_h())
      throw std::invalid_argument("is_quadratic_subgroup: generators must act block-diagonally");

  size_t nb = mod.nblocks();
  size_t bd = mod.block_dim();
  std::vector<uint8_t> bad(nb, 0);
  std::vector<std::string> wit(nb);
  parallel_for(nb, jobs, [&](size_t b) {
    std::vector<Mat> nil;
    nil.reserve(gens.size());
    for (const GElement& g : gens)
      nil.push_back(element_matrix(mod, g.h, static_cast<uint32_t>(b)) - Mat::identity(bd));
    for (size_t i = 0; i < nil.size() && !bad[b]; ++i)
      for (size_t j = 0; j < nil.size(); ++j) {
        if (nil[i].is_zero() || nil[j].is_zero()) continue;
        if (!mat_mul(nil[i], nil[j]).is_zero()) {
          bad[b] = 1;
          wit[b] = "pair (" + std::to_string(i) + "," + std::to_string(j) + ") block " +
                   std::to_string(b);
          break;
        }
      }
  });
  for (size_t b = 0; b < nb; ++b) {
    if (bad[b]) {
      if (witness) *witness = wit[b];
      return false;
    }
  }
  return true;
}

}  // namespace p3mod
