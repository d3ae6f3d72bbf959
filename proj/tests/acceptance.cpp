// Acceptance suite: runs every criterion end to end at its stated
// tolerance (all checks are exact over GF(3); runtime targets are wall
// bounds) and prints one pass/fail line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "p3mod/group.hpp"
#include "p3mod/rep.hpp"
#include "p3mod/toolkit.hpp"
#include "p3mod/verify.hpp"

using namespace p3mod;
using nlohmann::ordered_json;

namespace {

int g_failures = 0;

struct Criterion {
  std::string name;
  bool pass = true;
  std::string detail;
  double ms = 0;
};

void report(const Criterion& c) {
  std::printf("[%s] %-28s %10.1f ms  %s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.ms,
              c.detail.c_str());
  if (!c.pass) ++g_failures;
}

const Claim* find_claim(const Report& r, const std::string& id) {
  for (const Claim& c : r.claims())
    if (c.id == id) return &c;
  return nullptr;
}

bool claim_passed(const Report& r, const std::string& id) {
  const Claim* c = find_claim(r, id);
  return c && c->pass;
}

// Wall time of the underlying pipeline claims, charged to the criterion.
double claims_ms(const Report& r, std::initializer_list<const char*> ids) {
  double total = 0;
  for (const char* id : ids)
    if (const Claim* c = find_claim(r, id)) total += c->wall_ms;
  return total;
}

struct Shell {
  int exit_code;
  std::string output;
};

Shell sh(const std::string& cmd) {
  Shell s{-1, {}};
  FILE* p = popen((cmd + " 2>&1").c_str(), "r");
  if (!p) return s;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) s.output.append(buf.data(), n);
  int status = pclose(p);
  s.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the criterion body; its wall time is the body's own time plus any
// pipeline claim time the body charges via c.ms.
template <typename F>
Criterion timed(const std::string& name, double budget_ms, F&& f) {
  Criterion c;
  c.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.pass = f(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = e.what();
  }
  c.ms += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (c.ms > budget_ms) {
    c.pass = false;
    c.detail += " [over runtime budget]";
  }
  return c;
}

}  // namespace

int main() {
  RunConfig cfg;
  cfg.command = "acceptance";
  cfg.seed = 1;
  cfg.jobs = 2;

  const Omega om = Omega::main9();

  // Criteria 1-4 come out of the full verification pipeline.
  Report main_report = verify_theorem_main(cfg);

  report(timed("criterion-1-order", 1000.0, [&](Criterion& c) {
    c.ms = claims_ms(main_report, {"group-order", "collection-projection-homomorphism"});
    const Claim* cl = find_claim(main_report, "group-order");
    if (!cl || !cl->pass) return false;
    bool ok = cl->witness["log3_G"] == 49 && cl->witness["coordinate_counts"]["2"] == 3 &&
              cl->witness["coordinate_counts"]["4"] == 10 &&
              cl->witness["coordinate_counts"]["9"] == 45 && cl->witness["q_closure"] == 81;
    ok = ok && claim_passed(main_report, "collection-projection-homomorphism");
    c.detail = "log3|G| = 49";
    return ok;
  }));

  report(timed("criterion-2-center", 1000.0, [&](Criterion& c) {
    c.ms = claims_ms(main_report, {"center-rank"});
    const Claim* cl = find_claim(main_report, "center-rank");
    if (!cl || !cl->pass) return false;
    c.detail = "rank 2, supports 9/27";
    return cl->witness["rank"] == 2 && cl->witness["c1_support"] == 9 &&
           cl->witness["c2_support"] == 27;
  }));

  report(timed("criterion-3-counterexample", 300000.0, [&](Criterion& c) {
    c.ms = claims_ms(main_report,
                     {"center-faithful", "center-no-quadratics", "witness-subgroup-rank",
                      "witness-subgroup-quadratic", "weak-closure-normalizer",
                      "weak-closure-displaced-generator", "weak-closure-coset-independence",
                      "commutator-identities"});
    bool ok = claim_passed(main_report, "center-faithful") &&
              claim_passed(main_report, "center-no-quadratics") &&
              claim_passed(main_report, "witness-subgroup-rank") &&
              claim_passed(main_report, "witness-subgroup-quadratic") &&
              claim_passed(main_report, "weak-closure-normalizer") &&
              claim_passed(main_report, "weak-closure-displaced-generator") &&
              claim_passed(main_report, "weak-closure-coset-independence") &&
              claim_passed(main_report, "commutator-identities");
    // exact witness value on block (x1,x2,y1,z1): for z = c1 c2^r the
    // double commutator of e1 x e1 is exactly (2r mod 3) e3 x e3
    WreathQ wq = build_wreath_q(om);
    ModuleSpec v0 = module_block_sum(om);
    CenterResult z = center_of_G(om, wq);
    uint32_t block = v0.table->index_of_labels(om, "x1", "x2", "y1", "z1");
    for (int r : {1, 2}) {
      HElement g = h_mul(om, z.c1, h_pow(om, z.c2, r));
      Vec e11(9, 0);
      e11[0] = 1;
      Vec defect = quadratic_defect(v0, g, block, e11);
      Vec expect(9, 0);
      expect[8] = f3(2 * r);
      ok &= (defect == expect);
    }
    const Claim* wsq = find_claim(main_report, "witness-subgroup-quadratic");
    ok &= wsq && wsq->witness["generator_pairs"] == 81;
    c.detail = "8 central witnesses exact, E rank 9, 81 pairs annihilate, weak closure";
    return ok;
  }));

  report(timed("criterion-4-jlog", 60000.0, [&](Criterion& c) {
    c.ms = claims_ms(main_report, {"jlog-witness-subgroup"});
    const Claim* cl = find_claim(main_report, "jlog-witness-subgroup");
    if (!cl || !cl->pass) return false;
    long jl = cl->witness["jlog"].get<long>();
    size_t fix = cl->witness["fixed_dim"].get<size_t>();
    c.detail = "dim C_V0(E) = " + std::to_string(fix) + ", jlog = " + std::to_string(jl);
    return jl <= -1 && fix == 21168;  // frozen from the blockwise case analysis
  }));

  // Criteria 5-7: the oracle/property suites.
  RunConfig pcfg = cfg;
  pcfg.command = "props";
  pcfg.omega_sizes = {2, 4};
  Report props = props_suite(pcfg);

  report(timed("criterion-5-omega2-oracle", 10000.0, [&](Criterion& c) {
    c.ms = claims_ms(props, {"oracle-v1-fixed-dims", "oracle-quadratic-set", "oracle-j-values",
                             "oracle-offenders", "oracle-ms-equality"});
    bool ok = claim_passed(props, "oracle-v1-fixed-dims") &&
              claim_passed(props, "oracle-quadratic-set") &&
              claim_passed(props, "oracle-j-values") && claim_passed(props, "oracle-offenders") &&
              claim_passed(props, "oracle-ms-equality");
    const Claim* jv = find_claim(props, "oracle-j-values");
    ok = ok && jv && jv->witness["j_ac"] == 1 && jv->witness["j_bc"] == 0 &&
         jv->witness["j_c"] == 0 && jv->witness["j_whole"] == 1;
    const Claim* qs = find_claim(props, "oracle-quadratic-set");
    ok = ok && qs && qs->witness["quadratic_elements"] == 14;
    c.detail = "27-element instance exhaustively reproduced";
    return ok;
  }));

  report(timed("criterion-6-mini-instance", 120000.0, [&](Criterion& c) {
    c.ms = claims_ms(props, {"mini-agreement", "mini-group-order", "mini-witness-quadratic",
                             "mini-weak-closure"});
    bool ok = claim_passed(props, "mini-agreement") && claim_passed(props, "mini-group-order") &&
              claim_passed(props, "mini-witness-quadratic") &&
              claim_passed(props, "mini-weak-closure");
    const Claim* ag = find_claim(props, "mini-agreement");
    ok = ok && ag && ag->witness["operations"].get<size_t>() >= 10000;
    const Claim* wc = find_claim(props, "mini-weak-closure");
    ok = ok && wc && wc->witness["conjugations"] == 59049;
    c.detail = "10^4 engine agreements; E0 quadratic and weakly closed";
    return ok;
  }));

  report(timed("criterion-7-lemma-suites", 120000.0, [&](Criterion& c) {
    c.ms = claims_ms(props, {"property-timmesfeld", "property-ms-exhaustive", "mini-ms-random",
                             "property-descent", "mini-descent-random", "property-perp-symmetry",
                             "property-rank-one", "property-normal-abelian",
                             "property-na-instances", "mini-offender-scan"});
    bool ok = claim_passed(props, "property-timmesfeld") &&
              claim_passed(props, "property-ms-exhaustive") &&
              claim_passed(props, "mini-ms-random") && claim_passed(props, "property-descent") &&
              claim_passed(props, "mini-descent-random") &&
              claim_passed(props, "property-perp-symmetry") &&
              claim_passed(props, "property-rank-one") &&
              claim_passed(props, "property-normal-abelian") &&
              claim_passed(props, "property-na-instances") &&
              claim_passed(props, "mini-offender-scan");
    const Claim* ms = find_claim(props, "mini-ms-random");
    ok = ok && ms && ms->witness["pairs"].get<size_t>() >= 500;
    const Claim* de = find_claim(props, "mini-descent-random");
    ok = ok && de && de->witness["eligible_pairs"].get<size_t>() >= 1000;
    const Claim* na = find_claim(props, "property-na-instances");
    ok = ok && na && na->witness["violations"] == 0 && na->witness.contains("vacuous_passes");
    c.detail = "zero violations; vacuous passes counted";
    return ok;
  }));

  report(timed("criterion-8-determinism", 300000.0, [&](Criterion& c) {
    const char* bin = std::getenv("P3MOD_BIN");
    const char* fi = std::getenv("P3MOD_FI_BIN");
    if (!bin || !fi) {
      c.detail = "binaries not provided via P3MOD_BIN / P3MOD_FI_BIN";
      return false;
    }
    std::string o1 = "/tmp/p3mod_acc_1.json", o2 = "/tmp/p3mod_acc_2.json";
    bool ok = sh(std::string(bin) + " verify-main --seed 3 --jobs 1 --out " + o1).exit_code == 0;
    ok &= sh(std::string(bin) + " verify-main --seed 3 --jobs 2 --out " + o2).exit_code == 0;
    ok &= !slurp(o1).empty() && slurp(o1) == slurp(o2);
    for (const char* fault : {"collection-sign", "qact-sign", "kernel-drop"}) {
      Shell s = sh(std::string(fi) + " verify-main --inject-fault " + fault);
      ok &= (s.exit_code == 1) && s.output.find("[FAIL]") != std::string::npos;
    }
    c.detail = "byte-identical reports; every fault flips a claim";
    return ok;
  }));

  if (g_failures == 0) {
    std::printf("ACCEPTANCE: all 8 criteria passed\n");
    return 0;
  }
  std::printf("ACCEPTANCE: %d criterion(s) failed\n", g_failures);
  return 1;
}
