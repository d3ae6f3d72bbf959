#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "p3mod/group.hpp"
#include "p3mod/rng.hpp"

using namespace p3mod;

namespace {

HElement random_h(const Omega& om, Rng& rng) {
  HElement h = h_identity(om);
  for (auto& x : h.u) x = rng.trit();
  for (auto& x : h.c) x = rng.trit();
  return h;
}

GElement random_g(const Omega& om, const WreathQ& wq, Rng& rng) {
  GElement g = g_from_h(random_h(om, rng), om.n());
  g.q = wq.elements[rng.below(wq.elements.size())];
  return g;
}

bool all_projections_identity(const Omega& om, const HElement& h) {
  for (size_t i = 0; i + 1 < om.n(); ++i)
    for (size_t j = i + 1; j < om.n(); ++j)
      if (!projection_f(om, h, i, j).is_identity()) return false;
  return true;
}

}  // namespace

TEST_CASE("collection: sorted and unsorted two-letter words") {
  Omega om = Omega::main9();
  HElement x1 = h_generator(om, 0), x2 = h_generator(om, 1);

  HElement sorted = h_mul(om, x1, x2);
  CHECK(sorted.u[0] == 1);
  CHECK(sorted.u[1] == 1);
  CHECK(vec_is_zero(sorted.c));

  HElement swapped = h_mul(om, x2, x1);
  CHECK(swapped.u == sorted.u);
  CHECK(swapped.c[om.pair_index(0, 1)] == 2);  // -1: one collection swap

  // validated against the projection to 3x3 matrices
  Mat expect = mat_mul(projection_f(om, x2, 0, 1), projection_f(om, x1, 0, 1));
  CHECK(projection_f(om, swapped, 0, 1) == expect);
}

TEST_CASE("exponent three and inverse laws in H") {
  Omega om = Omega::main9();
  Rng rng(21);
  for (int t = 0; t < 1000; ++t) {
    HElement g = random_h(om, rng);
    CHECK(h_mul(om, g, h_mul(om, g, g)).is_identity());
    CHECK(h_mul(om, g, h_inv(om, g)).is_identity());
  }
  HElement a = random_h(om, rng), b = random_h(om, rng);
  CHECK(h_inv(om, h_mul(om, a, b)) == h_mul(om, h_inv(om, b), h_inv(om, a)));
  CHECK(h_inv(om, h_identity(om)).is_identity());
  CHECK(h_pow(om, h_generator(om, 0), 3).is_identity());
}

TEST_CASE("associativity of h_mul on random triples") {
  Omega om = Omega::main9();
  Rng rng(22);
  for (int t = 0; t < 10000; ++t) {
    HElement a = random_h(om, rng), b = random_h(om, rng), c = random_h(om, rng);
    CHECK(h_mul(om, h_mul(om, a, b), c) == h_mul(om, a, h_mul(om, b, c)));
  }
}

TEST_CASE("commutators: defining pairs, degeneracy, bilinearity") {
  Omega om = Omega::main9();
  HElement x1 = h_generator(om, 0), x2 = h_generator(om, 1), y1 = h_generator(om, 3);

  HElement c = h_comm(om, x1, y1);
  CHECK(c.central());
  CHECK(c.c[om.pair_index(0, 3)] == 1);

  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    HElement a = random_h(om, rng), b = random_h(om, rng), d = random_h(om, rng);
    CHECK(h_comm(om, a, a).is_identity());
    // [a, bd] = [a,b][a,d]; [ab, d] = [a,d][b,d]
    CHECK(h_comm(om, a, h_mul(om, b, d)) == h_mul(om, h_comm(om, a, b), h_comm(om, a, d)));
    CHECK(h_comm(om, h_mul(om, a, b), d) == h_mul(om, h_comm(om, a, d), h_comm(om, b, d)));
    // commutator defined through the word a^-1 b^-1 a b agrees
    HElement word = h_mul(om, h_mul(om, h_inv(om, a), h_inv(om, b)), h_mul(om, a, b));
    CHECK(word == h_comm(om, a, b));
  }
  CHECK(h_comm(om, h_mul(om, x1, x2), y1) ==
        h_mul(om, h_comm(om, x1, y1), h_comm(om, x2, y1)));
}

TEST_CASE("projection detection and homomorphism") {
  Omega om = Omega::main9();
  Mat A = Mat::identity(3);
  A(0, 1) = 1;
  Mat C = Mat::identity(3);
  C(0, 2) = 1;

  HElement x1 = h_generator(om, 0), x2 = h_generator(om, 1);
  CHECK(projection_f(om, x1, om.index_of("x1"), om.index_of("x2")) == A);
  CHECK(projection_f(om, h_generator(om, 5), 0, 1).is_identity());  // y3 outside the pair
  CHECK(projection_f(om, h_comm(om, x1, x2), 0, 1) == C);
  CHECK_THROWS_AS(projection_f(om, x1, 2, 2), std::invalid_argument);

  // reversed pair: f_(x2,x1) maps x2 -> a-slot, x1 -> b-slot, so the
  // product x2 x1 lands on A*B
  HElement x2x1 = h_mul(om, x2, x1);
  CHECK(projection_f(om, x2x1, 1, 0) ==
        mat_mul(projection_f(om, x2, 1, 0), projection_f(om, x1, 1, 0)));
  CHECK(projection_f(om, x2, 1, 0) == A);

  Rng rng(24);
  for (int t = 0; t < 300; ++t) {
    HElement a = random_h(om, rng), b = random_h(om, rng);
    size_t i = rng.below(om.n()), j = rng.below(om.n());
    if (i == j) continue;
    CHECK(projection_f(om, h_mul(om, a, b), i, j) ==
          mat_mul(projection_f(om, a, i, j), projection_f(om, b, i, j)));
    CHECK(all_projections_identity(om, a) == a.is_identity());
  }
}

TEST_CASE("q_act: action table, orbit signs, word reordering, automorphism") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  CHECK(wq.elements.size() == 81);

  HElement x1 = h_generator(om, 0);
  CHECK(q_act(om, x1, wq.sigma_x) == h_generator(om, 1));  // x1 -> x2
  CHECK(q_act(om, x1, wq.tau) == h_generator(om, 3));      // x1 -> y1
  CHECK(q_act(om, h_generator(om, 3), wq.sigma_x) == h_generator(om, 3));  // fixes y1

  // orbit of [x1,x2] under <sigma_x>: (x2,x3), then (x1,x3) with sign flip
  HElement c12 = h_comm(om, x1, h_generator(om, 1));
  HElement step1 = q_act(om, c12, wq.sigma_x);
  CHECK(step1.c[om.pair_index(1, 2)] == 1);
  HElement step2 = q_act(om, step1, wq.sigma_x);
  CHECK(step2.c[om.pair_index(0, 2)] == 2);  // [x3,x1] = [x1,x3]^-1

  // word reordering: (x3 x1)^sigma_x = x1 x2 exactly
  HElement x3x1 = h_mul(om, h_generator(om, 2), x1);
  CHECK(q_act(om, x3x1, wq.sigma_x) == h_mul(om, x1, h_generator(om, 1)));

  Rng rng(25);
  for (const Perm& q : wq.elements) {
    HElement a = random_h(om, rng), b = random_h(om, rng);
    CHECK(q_act(om, h_mul(om, a, b), q) == h_mul(om, q_act(om, a, q), q_act(om, b, q)));
  }
}

TEST_CASE("semidirect product: convention, axioms, exponent 27") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  GElement x1 = g_from_h(h_generator(om, 0), om.n());

  CHECK(g_conj(om, x1, g_from_q(om, wq.sigma_x)) == g_from_h(h_generator(om, 1), om.n()));
  CHECK(g_conj(om, x1, g_from_q(om, wq.sigma_y)) == x1);

  Rng rng(26);
  for (int t = 0; t < 1000; ++t) {
    GElement g = random_g(om, wq, rng);
    CHECK(g_mul(om, g, g_inv(om, g)).is_identity());
  }
  for (int t = 0; t < 10000; ++t) {
    GElement a = random_g(om, wq, rng), b = random_g(om, wq, rng), c = random_g(om, wq, rng);
    CHECK(g_mul(om, g_mul(om, a, b), c) == g_mul(om, a, g_mul(om, b, c)));
  }
  for (int t = 0; t < 100; ++t) {
    GElement a = random_g(om, wq, rng);
    HElement h = random_h(om, rng);
    // x^h = x [x,h] inside H
    CHECK(g_conj(om, x1, g_from_h(h, om.n())) ==
          g_from_h(h_mul(om, x1.h, h_comm(om, x1.h, h)), om.n()));
    CHECK(g_pow(om, a, 27).is_identity());
  }
  // order-27 witness: a 9-cycle in Q over a generator
  GElement w = g_mul(om, x1, g_from_q(om, perm_mul(wq.tau, wq.sigma_x)));
  GElement w9 = g_pow(om, w, 9);
  CHECK(!w9.is_identity());
  CHECK(w9.q.is_identity());
  CHECK(g_pow(om, w, 27).is_identity());
}

TEST_CASE("centralizer shape in H: C_H(g) = <g, H'>") {
  Omega om = Omega::main9();
  Rng rng(27);
  int tested = 0;
  for (int t = 0; t < 200; ++t) {
    HElement g = random_h(om, rng);
    if (g.central()) continue;
    HElement h = random_h(om, rng);
    bool commutes = h_commute(om, g, h);
    bool member = in_span(rref({Vec(g.u)}), h.u);
    CHECK(commutes == member);
    ++tested;
  }
  CHECK(tested >= 100);
}

TEST_CASE("centre: rank two, orbit products, invariance") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  CenterResult z = center_of_G(om, wq);
  CHECK(z.rank_is_two);
  CHECK(z.c1_in_span);
  CHECK(z.c2_in_span);
  CHECK(z.c1_support == 9);
  CHECK(z.c2_support == 27);
  for (const Perm* q : wq.generators()) {
    CHECK(q_act(om, z.c1, *q) == z.c1);
    CHECK(q_act(om, z.c2, *q) == z.c2);
  }
  CHECK(orbit_product(om, wq, h_identity(om)).is_identity());
  CHECK_THROWS_AS(orbit_product(om, wq, h_generator(om, 0)), std::invalid_argument);
}

TEST_CASE("witness subgroup E: rank 9, E cap H' of rank 8") {
  Omega om = Omega::main9();
  EASubgroup e = build_E(om);
  CHECK(e.order_log3 == 9);
  CHECK(e.span.intersect(om, HSubgroup::derived(om)).rank() == 8);
  for (size_t i = 0; i < e.gens.size(); ++i)
    for (size_t j = i + 1; j < e.gens.size(); ++j)
      CHECK(g_comm(om, e.gens[i], e.gens[j]).is_identity());

  // E contains [x1, h] for every h, not just the generator commutators
  Rng rng(30);
  for (int t = 0; t < 50; ++t) {
    HElement h = random_h(om, rng);
    CHECK(e.span.contains(om, h_comm(om, h_generator(om, 0), h)));
  }

  // non-commuting generators are rejected
  std::vector<GElement> bad{g_from_h(h_generator(om, 0), om.n()),
                            g_from_h(h_generator(om, 1), om.n())};
  CHECK_THROWS_AS(make_ea_subgroup(om, bad), std::invalid_argument);
}

TEST_CASE("subgroups of H are subspaces in log coordinates") {
  Omega om = Omega::main9();
  // <x1 x2> contains (x1 x2)^2 whose raw c-coordinate is nonzero
  HElement g = h_mul(om, h_generator(om, 0), h_generator(om, 1));
  HSubgroup s = HSubgroup::from_generators(om, std::vector<HElement>{g});
  CHECK(s.rank() == 1);
  CHECK(s.contains(om, h_mul(om, g, g)));
  CHECK(!s.contains(om, h_generator(om, 0)));
  CHECK(s.elements(om).size() == 3);

  // join with bracket closure: <x1> v <x2> contains [x1,x2]
  HSubgroup a = HSubgroup::from_generators(om, std::vector<HElement>{h_generator(om, 0)});
  HSubgroup b = HSubgroup::from_generators(om, std::vector<HElement>{h_generator(om, 1)});
  HSubgroup j = a.join(om, b);
  CHECK(j.rank() == 3);
  CHECK(j.contains(om, h_comm(om, h_generator(om, 0), h_generator(om, 1))));
  CHECK(!j.is_abelian(om));
  CHECK(a.intersect(om, b).rank() == 0);
}

TEST_CASE("structural weak closure of E") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  EASubgroup e = build_E(om);
  WeakClosureReport r = weak_closure_structural(om, wq, e, 31, 100);
  CHECK(r.normalizer_ok);
  CHECK(r.displaced_ok);
  CHECK(r.coset_ok);
  CHECK(r.pass());

  // r = tau: [x1, x1^tau] = [x1, y1] != 1
  GElement x1 = g_from_h(h_generator(om, 0), om.n());
  GElement xt = g_conj(om, x1, g_from_q(om, wq.tau));
  CHECK(xt.h == h_generator(om, 3));
  CHECK(!h_comm(om, x1.h, xt.h).is_identity());

  // sample of (iii): conjugation by H stays in x1 H'
  Rng rng(28);
  for (int t = 0; t < 50; ++t) {
    HElement h = random_h(om, rng);
    GElement conj = g_conj(om, x1, g_from_h(h, om.n()));
    CHECK(conj.h.u == x1.h.u);
  }
}

TEST_CASE("element text serialization round-trips") {
  Omega om = Omega::main9();
  WreathQ wq = build_wreath_q(om);
  Rng rng(29);
  for (int t = 0; t < 50; ++t) {
    HElement h = random_h(om, rng);
    CHECK(h_from_text(om, to_text(om, h)) == h);
    GElement g = random_g(om, wq, rng);
    CHECK(g_from_text(om, to_text(om, g)) == g);
  }
  HElement x1 = h_generator(om, 0);
  CHECK(to_text(om, x1) ==
        "u: 100000000 | c: 000000000000000000000000000000000000");
  CHECK_THROWS_AS(h_from_text(om, "u: 123 | c: 0"), std::invalid_argument);
  CHECK_THROWS_AS(h_from_text(om, "garbage"), std::invalid_argument);
}

TEST_CASE("omega validation and pair indexing") {
  CHECK_THROWS_AS(Omega({"a"}), std::invalid_argument);
  CHECK_THROWS_AS(Omega({"a", "a"}), std::invalid_argument);
  Omega om = Omega::main9();
  CHECK(om.npairs() == 36);
  for (size_t p = 0; p < om.npairs(); ++p) {
    auto [i, j] = om.pair_at(p);
    CHECK(om.pair_index(i, j) == p);
  }
  CHECK_THROWS_AS(h_mul(Omega::letters(2), h_identity(Omega::letters(2)),
                        h_identity(Omega::letters(4))),
                  std::invalid_argument);
}
