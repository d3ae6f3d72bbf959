// Micro-benchmarks for the hot paths: collection products, wreath action,
// block-operator construction and the blockwise fixed-space sweep.
// Self-contained chrono harness; run with an optional iteration multiplier:
//   p3mod_bench [multiplier]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "p3mod/group.hpp"
#include "p3mod/rep.hpp"
#include "p3mod/rng.hpp"

using namespace p3mod;

namespace {

volatile uint64_t g_sink = 0;

template <typename F>
void bench(const char* name, size_t iters, F&& f) {
  using clock = std::chrono::steady_clock;
  // warmup
  for (size_t i = 0; i < iters / 10 + 1; ++i) f(i);
  auto t0 = clock::now();
  for (size_t i = 0; i < iters; ++i) f(i);
  double ns = std::chrono::duration<double, std::nano>(clock::now() - t0).count() / double(iters);
  std::printf("%-32s %12.1f ns/op  (%zu iters)\n", name, ns, iters);
}

HElement random_h(const Omega& om, Rng& rng) {
  HElement h = h_identity(om);
  for (auto& x : h.u) x = rng.trit();
  for (auto& x : h.c) x = rng.trit();
  return h;
}

}  // namespace

int main(int argc, char** argv) {
  size_t mult = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
  if (mult == 0) mult = 1;

  const Omega om = Omega::main9();
  const WreathQ wq = build_wreath_q(om);
  ModuleSpec v0 = module_block_sum(om);
  Rng rng(42);

  std::vector<HElement> hs;
  for (int i = 0; i < 256; ++i) hs.push_back(random_h(om, rng));
  std::vector<GElement> gs;
  for (int i = 0; i < 64; ++i) {
    GElement g = g_from_h(hs[i], om.n());
    g.q = wq.elements[rng.below(81)];
    gs.push_back(g);
  }

  bench("h_mul (45 coords)", 200000 * mult, [&](size_t i) {
    g_sink = g_sink + h_mul(om, hs[i & 255], hs[(i + 1) & 255]).c[0];
  });
  bench("h_comm", 200000 * mult, [&](size_t i) {
    g_sink = g_sink + h_comm(om, hs[i & 255], hs[(i + 1) & 255]).c[0];
  });
  bench("q_act", 100000 * mult, [&](size_t i) {
    g_sink = g_sink + q_act(om, hs[i & 255], wq.elements[i % 81]).c[0];
  });
  bench("g_mul", 50000 * mult, [&](size_t i) {
    g_sink = g_sink + g_mul(om, gs[i & 63], gs[(i + 1) & 63]).h.c[0];
  });
  bench("v2_matrix (9x9)", 50000 * mult, [&](size_t i) {
    g_sink = g_sink + v2_matrix(om, hs[i & 255], v0.table->tuple(uint32_t(i % v0.table->count())))(0, 0);
  });
  bench("v0_operator (3024 blocks)", 5 * mult, [&](size_t i) {
    g_sink = g_sink + v0_operator(v0, gs[i & 63]).local[0](0, 0);
  });

  EASubgroup e = build_E(om);
  bench("fixed_space_dim(E, V0)", 1 * mult, [&](size_t) {
    g_sink = g_sink + fixed_space_dim(v0, e.gens, 81, 1);
  });
  bench("is_quadratic_subgroup(E, V0)", 1 * mult, [&](size_t) {
    g_sink = g_sink + is_quadratic_subgroup(v0, e.gens, 1);
  });
  return int(g_sink & 1) * 0;
}
