#include "p3mod/toolkit.hpp"

#include <istream>

namespace p3mod {

std::vector<Vec> h_subgroup_fixed_space(const ModuleSpec& mod, const HSubgroup& s) {
  std::vector<HElement> basis = s.basis_elements(*mod.om);
  size_t dim = mod.dim();
  size_t bd = mod.block_dim();
  std::vector<Vec> rows;
  for (uint32_t b = 0; b < mod.nblocks(); ++b) {
    std::vector<Mat> pieces;
    for (const HElement& h : basis) {
      Mat m = mod.kind == ModuleSpec::Kind::kV1
                  ? v1_matrix(*mod.om, h, mod.ia, mod.ib)
                  : v2_matrix(*mod.om, h,
                              mod.kind == ModuleSpec::Kind::kV2 ? mod.tuple
                                                                : mod.table->tuple(b));
      Mat d = m - Mat::identity(bd);
      if (!d.is_zero()) pieces.push_back(std::move(d));
    }
    std::vector<Vec> local;
    if (pieces.empty()) {
      for (size_t r = 0; r < bd; ++r) {
        Vec v(bd, 0);
        v[r] = 1;
        local.push_back(std::move(v));
      }
    } else {
      local = kernel_basis(hstack(pieces));
    }
    for (const Vec& v : local) {
      Vec full(dim, 0);
      std::copy(v.begin(), v.end(), full.begin() + b * bd);
      rows.push_back(std::move(full));
    }
  }
  return rref(std::move(rows));
}

long h_subgroup_jlog(const ModuleSpec& mod, const HSubgroup& s) {
  std::vector<HElement> basis = s.basis_elements(*mod.om);
  std::vector<GElement> gens;
  gens.reserve(basis.size());
  for (const HElement& h : basis) gens.push_back(g_from_h(h, mod.om->n()));
  return long(s.rank()) + long(fixed_space_dim(mod, gens)) - long(mod.dim());
}

MsResult ms_check_symbolic(const ModuleSpec& mod, const HSubgroup& h, const HSubgroup& k) {
  const Omega& om = *mod.om;
  MsResult r;
  HSubgroup meet = h.intersect(om, k);
  HSubgroup jn = h.join(om, k);
  r.jh = h_subgroup_jlog(mod, h);
  r.jk = h_subgroup_jlog(mod, k);
  r.jmeet = h_subgroup_jlog(mod, meet);
  r.jjoin = h_subgroup_jlog(mod, jn);
  r.inequality_ok = (r.jh + r.jk <= r.jmeet + r.jjoin);
  r.equality = (r.jh + r.jk == r.jmeet + r.jjoin);
  // |HK| = |H||K| / |H cap K| as a set; it is the join iff the ranks agree.
  r.product_is_join = (h.rank() + k.rank() - meet.rank() == jn.rank());
  std::vector<Vec> sum = h_subgroup_fixed_space(mod, h);
  std::vector<Vec> ck = h_subgroup_fixed_space(mod, k);
  sum.insert(sum.end(), ck.begin(), ck.end());
  sum = rref(std::move(sum));
  r.fixed_spaces_add = (sum.size() == h_subgroup_fixed_space(mod, meet).size());
  r.equivalence_ok = (r.equality == (r.product_is_join && r.fixed_spaces_add));
  return r;
}

bool weak_closure_symbolic(const Omega& om, const HSubgroup& s) {
  if (om.coords() > 12)
    throw BudgetExceeded("weak_closure_symbolic: full enumeration beyond 3^12");
  size_t total = 1;
  for (size_t i = 0; i < om.coords(); ++i) total *= 3;

  std::vector<HElement> gens = s.basis_elements(om);
  Vec coords(om.coords(), 0);
  for (size_t idx = 0; idx < total; ++idx) {
    size_t t = idx;
    for (size_t i = 0; i < coords.size(); ++i, t /= 3) coords[i] = uint8_t(t % 3);
    HElement g{Vec(coords.begin(), coords.begin() + om.n()),
               Vec(coords.begin() + om.n(), coords.end())};
    std::vector<HElement> conj;
    conj.reserve(gens.size());
    bool centralizes = true;
    for (const HElement& e : gens) {
      HElement ec = h_mul(om, e, h_comm(om, e, g));  // e^g = e [e,g]
      for (const HElement& f : gens)
        if (!h_commute(om, ec, f)) { centralizes = false; break; }
      if (!centralizes) break;
      conj.push_back(std::move(ec));
    }
    if (!centralizes) continue;
    HSubgroup cs = HSubgroup::from_generators(om, conj);
    if (!(cs.log_basis() == s.log_basis())) return false;
  }
  return true;
}

KronElem kron_image(const Omega& om, const SummandTable& table, const HElement& h) {
  KronElem e;
  e.f.reserve(2 * table.count());
  for (uint32_t b = 0; b < table.count(); ++b) {
    const SummandIndex& t = table.tuple(b);
    e.f.push_back(v1_matrix(om, h, t[0], t[1]));
    e.f.push_back(v1_matrix(om, h, t[2], t[3]));
  }
  return e;
}

SmallGroup<DenseElem> extraspecial_v1_group() {
  Mat a = Mat::identity(3);
  a(0, 1) = 1;
  Mat b = Mat::identity(3);
  b(1, 2) = 1;
  return SmallGroup<DenseElem>::enumerate({DenseElem{a}, DenseElem{b}});
}

SmallGroup<DenseElem> tensor_square_group() {
  Mat a = Mat::identity(3);
  a(0, 1) = 1;
  Mat b = Mat::identity(3);
  b(1, 2) = 1;
  return SmallGroup<DenseElem>::enumerate(
      {DenseElem{kronecker(a, a)}, DenseElem{kronecker(b, b)}});
}

std::vector<Mat> parse_group_file(std::istream& in) {
  long p;
  size_t dim, ngens;
  if (!(in >> p >> dim >> ngens)) throw std::invalid_argument("group file: bad header");
  if (p != 3) throw std::invalid_argument("group file: only p = 3 is supported");
  if (dim == 0 || dim > 64) throw std::invalid_argument("group file: dimension out of range");
  std::vector<Mat> gens;
  gens.reserve(ngens);
  for (size_t i = 0; i < ngens; ++i) {
    Mat m = mat_from_text(in);
    if (m.rows() != dim || m.cols() != dim)
      throw std::invalid_argument("group file: generator has wrong shape");
    mat_inv(m);  // rejects non-invertible input at parse stage
    gens.push_back(std::move(m));
  }
  return gens;
}

}  // namespace p3mod
