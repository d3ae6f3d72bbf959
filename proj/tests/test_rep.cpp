#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "p3mod/rep.hpp"
#include "p3mod/rng.hpp"
#include "p3mod/toolkit.hpp"

using namespace p3mod;

namespace {

HElement random_h(const Omega& om, Rng& rng) {
  HElement h = h_identity(om);
  for (auto& x : h.u) x = rng.trit();
  for (auto& x : h.c) x = rng.trit();
  return h;
}

Mat table_a() {
  Mat m = Mat::identity(3);
  m(0, 1) = 1;
  return m;
}
Mat table_b() {
  Mat m = Mat::identity(3);
  m(1, 2) = 1;
  return m;
}
Mat table_c() {
  Mat m = Mat::identity(3);
  m(0, 2) = 1;
  return m;
}

}  // namespace

TEST_CASE("v1_matrix reproduces the defining table") {
  Omega om = Omega::letters(2);
  HElement a = h_generator(om, 0), b = h_generator(om, 1);
  CHECK(v1_matrix(om, a, 0, 1) == table_a());
  CHECK(v1_matrix(om, b, 0, 1) == table_b());
  CHECK(v1_matrix(om, h_comm(om, a, b), 0, 1) == table_c());
}

TEST_CASE("summand table: counts, lookup, diagonal action") {
  Omega om9 = Omega::main9();
  SummandTable t9(om9);
  CHECK(t9.count() == 3024);  // 9*8*7*6, recomputed by enumeration
  Omega om4 = Omega::letters(4);
  SummandTable t4(om4);
  CHECK(t4.count() == 24);

  WreathQ wq = build_wreath_q(om9);
  for (uint32_t b : {0u, 17u, 3000u}) {
    const SummandIndex& s = t9.tuple(b);
    uint32_t img = t9.apply_perm(b, wq.tau);
    const SummandIndex& si = t9.tuple(img);
    for (int k = 0; k < 4; ++k) CHECK(si[k] == wq.tau.img[s[k]]);
  }
  CHECK(t9.name(om9, t9.index_of_labels(om9, "x1", "x2", "y1", "y2")) == "(x1,x2,y1,y2)");
}

TEST_CASE("v2_matrix: outside generators act trivially; central witness") {
  Omega om = Omega::main9();
  SummandTable table(om);
  SummandIndex idx{0, 1, 3, 4};  // (x1,x2,y1,y2)

  CHECK(v2_matrix(om, h_generator(om, 5), idx).is_identity());  // y3 outside

  // g = [a1,a2][b1,b2] is not quadratic: defect 2 e3 x e3 from e1 x e1
  HElement g = h_mul(om, h_comm(om, h_generator(om, 0), h_generator(om, 1)),
                     h_comm(om, h_generator(om, 3), h_generator(om, 4)));
  Mat m = v2_matrix(om, g, idx);
  Mat n = m - Mat::identity(9);
  Vec e11(9, 0);
  e11[0] = 1;
  Vec defect = vec_mat(vec_mat(e11, n), n);
  Vec expect(9, 0);
  expect[8] = 2;
  CHECK(defect == expect);

  // <a1, [a1,a2]> maps to quadratic matrices
  ModuleSpec v2 = module_v2(om, idx);
  for (const HElement& e :
       {h_generator(om, 0), h_comm(om, h_generator(om, 0), h_generator(om, 1))}) {
    Mat d = v2_matrix(om, e, idx) - Mat::identity(9);
    CHECK(mat_mul(d, d).is_zero());
  }
  (void)v2;
}

TEST_CASE("v0_operator: identity, central element, pure permutation") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  ModuleSpec v0 = module_block_sum(om);
  CHECK(v0.dim() == 27216);

  CHECK(v0_operator(v0, g_identity(om)).is_identity());

  CenterResult z = center_of_G(om, wq);
  BlockOperator op = v0_operator(v0, g_from_h(z.c1, om.n()));
  uint32_t b = v0.table->index_of_labels(om, "x1", "x2", "y1", "y2");
  HElement image = h_mul(om, h_comm(om, h_generator(om, 0), h_generator(om, 1)),
                         h_comm(om, h_generator(om, 3), h_generator(om, 4)));
  CHECK(op.local[b] == v2_matrix(om, image, v0.table->tuple(b)));
  Mat n = op.local[b] - Mat::identity(9);
  CHECK(!n.is_zero());
  CHECK(!mat_mul(n, n).is_zero());  // neither trivial nor quadratic

  BlockOperator sx = v0_operator(v0, g_from_q(om, wq.sigma_x));
  bool pure_perm = true, moved = false;
  for (uint32_t t = 0; t < v0.table->count(); ++t) {
    pure_perm &= sx.local[t].is_identity();
    moved |= (sx.perm[t] != t);
  }
  CHECK(pure_perm);
  CHECK(moved);
}

TEST_CASE("block vectors transform consistently under operators") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  ModuleSpec v0 = module_block_sum(om);
  Rng rng(44);
  for (int t = 0; t < 10; ++t) {
    GElement g1 = g_from_h(random_h(om, rng), om.n());
    g1.q = wq.elements[rng.below(81)];
    GElement g2 = g_from_h(random_h(om, rng), om.n());
    g2.q = wq.elements[rng.below(81)];
    BlockOperator op1 = v0_operator(v0, g1), op2 = v0_operator(v0, g2);
    BlockOperator op12 = v0_operator(v0, g_mul(om, g1, g2));

    BlockVector v;
    for (int k = 0; k < 5; ++k) {
      Vec local(9);
      for (auto& x : local) x = rng.trit();
      v.add(uint32_t(rng.below(v0.table->count())), local);
    }
    BlockVector lhs = op12.apply(v);
    BlockVector rhs = op2.apply(op1.apply(v));
    CHECK(lhs.blocks == rhs.blocks);

    // single-block application: out[perm[B]] = in[B] * local[B]
    uint32_t b = uint32_t(rng.below(v0.table->count()));
    Vec e(9, 0);
    e[rng.below(9)] = 1;
    BlockVector one;
    one.add(b, e);
    BlockVector image = op1.apply(one);
    REQUIRE(image.blocks.size() == 1);
    CHECK(image.blocks.begin()->first == op1.perm[b]);
    CHECK(image.blocks.begin()->second == vec_mat(e, op1.local[b]));
  }
}

TEST_CASE("v0_operator is a homomorphism on 1000 random pairs") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  ModuleSpec v0 = module_block_sum(om);
  Rng rng(41);
  for (int t = 0; t < 1000; ++t) {
    GElement g1 = g_from_h(random_h(om, rng), om.n());
    g1.q = wq.elements[rng.below(81)];
    GElement g2 = g_from_h(random_h(om, rng), om.n());
    g2.q = wq.elements[rng.below(81)];
    BlockOperator lhs = v0_operator(v0, g_mul(om, g1, g2));
    BlockOperator rhs = compose(v0_operator(v0, g1), v0_operator(v0, g2));
    REQUIRE(lhs.perm == rhs.perm);
    REQUIRE(lhs.local == rhs.local);
  }
}

TEST_CASE("fixed_space_dim on V1 with brute-force cross-check") {
  Omega om = Omega::letters(2);
  ModuleSpec v1 = module_v1(om, "a", "b");
  HElement a = h_generator(om, 0), b = h_generator(om, 1);
  HElement c = h_comm(om, a, b);
  auto gens = [&](std::vector<HElement> hs) {
    std::vector<GElement> out;
    for (const HElement& h : hs) out.push_back(g_from_h(h, om.n()));
    return out;
  };
  auto ga = gens({a});
  CHECK(fixed_space_dim(v1, ga) == 2);
  auto gac = gens({a, c});
  CHECK(fixed_space_dim(v1, gac) == 2);
  auto gbc = gens({b, c});
  CHECK(fixed_space_dim(v1, gbc) == 1);
  std::vector<GElement> none;
  CHECK(fixed_space_dim(v1, none) == 3);

  // brute force over all 27 vectors
  size_t brute = 0;
  Mat ma = v1_matrix(om, a, 0, 1), mc = v1_matrix(om, c, 0, 1);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      for (int z = 0; z < 3; ++z) {
        Vec v{uint8_t(x), uint8_t(y), uint8_t(z)};
        if (vec_mat(v, ma) == v && vec_mat(v, mc) == v) ++brute;
      }
  CHECK(brute == 9);  // 3^2 matches dim 2
}

TEST_CASE("jlog on V1 and on V0") {
  Omega om2 = Omega::letters(2);
  ModuleSpec v1 = module_v1(om2, "a", "b");
  HElement a = h_generator(om2, 0), b = h_generator(om2, 1);
  HElement c = h_comm(om2, a, b);
  std::vector<GElement> ac{g_from_h(a, 2), g_from_h(c, 2)};
  std::vector<GElement> cc{g_from_h(c, 2)};
  CHECK(jlog(v1, ac, 2).log3 == 1);  // offender with j = 3
  CHECK(jlog(v1, ac, 2).offends());
  CHECK(jlog(v1, cc, 1).log3 == 0);  // offender with j = 1
  CHECK(jlog(v1, cc, 1).offends());

  Omega om = Omega::main9();
  ModuleSpec v0 = module_block_sum(om);
  EASubgroup e = build_E(om);
  size_t fix = fixed_space_dim(v0, e.gens);
  CHECK(fix == 21168);  // blockwise case analysis over the 4 slots of x1
  JValue j = jlog(v0, e.gens, e.order_log3);
  CHECK(j.log3 == -6039);
  CHECK(j.log3 <= -1);
  CHECK(!j.offends());
}

TEST_CASE("quadratic elements on V0") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  ModuleSpec v0 = module_block_sum(om);

  CHECK(!is_quadratic_element(v0, g_identity(om)));  // minimal polynomial degree 1
  CHECK(is_quadratic_element(v0, g_from_h(h_generator(om, 0), om.n())));  // x1

  CenterResult z = center_of_G(om, wq);
  uint32_t mix = v0.table->index_of_labels(om, "x1", "x2", "y1", "z1");
  for (int r : {1, 2}) {
    HElement g = h_mul(om, z.c1, h_pow(om, z.c2, r));
    QuadraticWitness qw;
    CHECK(!is_quadratic_element(v0, g_from_h(g, om.n()), &qw));
    // exact witness on the designated block: 2r * e3 x e3 from e1 x e1
    Vec e11(9, 0);
    e11[0] = 1;
    Vec defect = quadratic_defect(v0, g, mix, e11);
    Vec expect(9, 0);
    expect[8] = f3(2 * r);
    CHECK(defect == expect);
  }

  // nontrivial Q-part: a block orbit of length three forces a defect,
  // as does a 9-cycle (orbit length nine)
  CHECK(!is_quadratic_element(v0, g_from_q(om, wq.sigma_x)));
  CHECK(!is_quadratic_element(v0, g_from_q(om, perm_mul(wq.tau, wq.sigma_x))));
  CHECK_THROWS_AS(
      is_quadratic_element(v0, g_from_q(om, wq.sigma_x), nullptr, /*cycle_bound=*/2),
      BudgetExceeded);
}

TEST_CASE("quadratic subgroups: E on V0, <a,b> and <b,c> on V1") {
  Omega om = Omega::main9();
  ModuleSpec v0 = module_block_sum(om);
  EASubgroup e = build_E(om);
  CHECK(is_quadratic_subgroup(v0, e.gens));

  Omega om2 = Omega::letters(2);
  ModuleSpec v1 = module_v1(om2, "a", "b");
  HElement a = h_generator(om2, 0), b = h_generator(om2, 1);
  HElement c = h_comm(om2, a, b);
  std::vector<GElement> ab{g_from_h(a, 2), g_from_h(b, 2)};
  CHECK(!is_quadratic_subgroup(v1, ab));
  // hand value: (e1)(a-1)(b-1) = e3
  Mat na = v1_matrix(om2, a, 0, 1) - Mat::identity(3);
  Mat nb = v1_matrix(om2, b, 0, 1) - Mat::identity(3);
  Vec e1{1, 0, 0};
  CHECK(vec_mat(vec_mat(e1, na), nb) == Vec{0, 0, 1});

  std::vector<GElement> bc{g_from_h(b, 2), g_from_h(c, 2)};
  CHECK(is_quadratic_subgroup(v1, bc));

  std::vector<GElement> trivial{g_identity(om2)};
  CHECK_THROWS_AS(is_quadratic_subgroup(v1, trivial), std::invalid_argument);
}

TEST_CASE("symbolic and matrix quadratic flags agree on all 27 elements") {
  Omega om = Omega::letters(2);
  ModuleSpec v1 = module_v1(om, "a", "b");
  SmallGroup<DenseElem> g = extraspecial_v1_group();
  for (int ua = 0; ua < 3; ++ua)
    for (int ub = 0; ub < 3; ++ub)
      for (int cc = 0; cc < 3; ++cc) {
        HElement h{Vec{uint8_t(ua), uint8_t(ub)}, Vec{uint8_t(cc)}};
        DenseElem image{v1_matrix(om, h, 0, 1)};
        CHECK(is_quadratic_element(v1, g_from_h(h, om.n())) == brute_quadratic(image));
        // fixed dims agree elementwise too
        std::vector<GElement> one{g_from_h(h, om.n())};
        CHECK(fixed_space_dim(v1, one) ==
              brute_fixed_dim(std::span<const DenseElem>(&image, 1)));
      }
  CHECK(g.order() == 27);
}

TEST_CASE("generator-pair criterion equals elementwise quadraticity") {
  // On V1 and V2 instances: [V,E,E] = 0 over generator pairs iff every
  // nonidentity element of E is quadratic.
  Omega om = Omega::letters(4);
  ModuleSpec mod = module_block_sum(om);
  Rng rng(42);
  int agreements = 0;
  for (int t = 0; t < 40; ++t) {
    // commuting pair: g2 = g1^e * central
    HElement g1 = random_h(om, rng);
    HElement g2 = h_pow(om, g1, long(rng.below(3)));
    HElement z = h_identity(om);
    for (auto& x : z.c) x = rng.trit();
    g2 = h_mul(om, g2, z);
    REQUIRE(h_commute(om, g1, g2));
    if (g1.is_identity() && g2.is_identity()) continue;
    std::vector<GElement> gens{g_from_h(g1, om.n()), g_from_h(g2, om.n())};
    bool pairwise = is_quadratic_subgroup(mod, gens);
    HSubgroup span = HSubgroup::from_generators(om, std::vector<HElement>{g1, g2});
    bool elementwise = true;
    bool any = false;
    for (const HElement& h : span.elements(om)) {
      if (h.is_identity()) continue;
      any = true;
      elementwise &= is_quadratic_element(mod, g_from_h(h, om.n()));
    }
    if (!any) continue;
    CHECK(pairwise == elementwise);
    ++agreements;
  }
  CHECK(agreements >= 20);
}

TEST_CASE("blockwise fixed dim equals matrix-engine fixed dim at size 4") {
  Omega om = Omega::letters(4);
  ModuleSpec mod = module_block_sum(om);
  SummandTable table(om);
  Rng rng(43);
  for (int t = 0; t < 25; ++t) {
    std::vector<HElement> hs;
    size_t k = 1 + rng.below(3);
    for (size_t i = 0; i < k; ++i) hs.push_back(random_h(om, rng));
    std::vector<GElement> gens;
    std::vector<KronElem> imgs;
    for (const HElement& h : hs) {
      gens.push_back(g_from_h(h, om.n()));
      imgs.push_back(kron_image(om, table, h));
    }
    CHECK(fixed_space_dim(mod, gens) == brute_fixed_dim<KronElem>(imgs));
  }
}

TEST_CASE("coupled fixed spaces for elements with Q-part") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  ModuleSpec v0 = module_block_sum(om);
  // sigma_x fixes the 360 all-yz tuples and permutes the rest in 3-cycles:
  // dim C = 9*(360 + (3024-360)/3)
  std::vector<GElement> gens{g_from_q(om, wq.sigma_x)};
  CHECK(fixed_space_dim(v0, gens) == 9 * (360 + (3024 - 360) / 3));
  CHECK_THROWS_AS(fixed_space_dim(v0, gens, /*cycle_bound=*/2), BudgetExceeded);

  // V1 modules reject Q-parts
  Omega om2 = Omega::letters(2);
  ModuleSpec v1 = module_v1(om2, "a", "b");
  Perm p = Perm::identity(2);
  std::swap(p.img[0], p.img[1]);
  std::vector<GElement> bad{GElement{h_identity(om2), p}};
  CHECK_THROWS_AS(fixed_space_dim(v1, bad), std::invalid_argument);
}
