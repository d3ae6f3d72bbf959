// p3mod: builds the 3^49 group and its 27216-dimensional GF(3) block
// module, verifies the structural claims about them, and runs brute-force
// oracle/property suites on small instances.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "p3mod/errors.hpp"
#include "p3mod/fault.hpp"
#include "p3mod/toolkit.hpp"
#include "p3mod/verify.hpp"

namespace {

constexpr int kExitVerified = 0;
constexpr int kExitClaimFailed = 1;
constexpr int kExitBudget = 2;
constexpr int kExitUsage = 64;

int finish(const p3mod::Report& rep) {
  rep.print_summary(std::cout);
  if (!rep.config().out_path.empty()) {
    std::filesystem::path p(rep.config().out_path);
    if (!rep.write_file()) {
      std::cerr << "error: cannot write report to " << p << "\n";
      return kExitUsage;
    }
    std::cout << "report: " << p.string() << "\n";
  }
  return rep.all_pass() ? kExitVerified : kExitClaimFailed;
}

bool out_path_usable(const std::string& out) {
  if (out.empty()) return true;
  std::filesystem::path p(out);
  auto dir = p.parent_path();
  return dir.empty() || std::filesystem::is_directory(dir);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact GF(3) verification engine for a class-two 3-group construction"};
  app.require_subcommand(1);
  app.fallthrough();

  p3mod::RunConfig cfg;
  int omega_size = 0;  // 0 = unset
  std::string group_file;
  std::string fault_name;

  app.add_option("--seed", cfg.seed, "seed for all randomized sampling")
      ->envname("P3MOD_SEED")
      ->default_val(1);
  auto* omega_opt = app.add_option("--omega-size", omega_size,
                                   "generator-set size (9 = main construction; 2/4 = oracle instances)")
                        ->envname("P3MOD_OMEGA_SIZE");
  app.add_option("--jobs", cfg.jobs, "worker threads (output is identical at any degree)")
      ->envname("P3MOD_JOBS")
      ->default_val(1);
  app.add_option("--out", cfg.out_path, "write the JSON report here")->envname("P3MOD_OUT");
  app.add_option("--max-rank", cfg.max_rank, "elementary abelian enumeration rank budget")
      ->envname("P3MOD_MAX_RANK")
      ->default_val(4);
  app.add_option("--max-subgroups", cfg.max_subgroups, "subgroup/closure enumeration budget")
      ->envname("P3MOD_MAX_SUBGROUPS")
      ->default_val(1000000);
  app.add_option("--cycle-bound", cfg.cycle_bound, "coupled block-cycle size bound")
      ->envname("P3MOD_CYCLE_BOUND")
      ->default_val(81);
  app.add_flag("--timings", cfg.timings, "include wall times in the report file");
#ifdef P3MOD_FAULT_INJECTION
  app.add_option("--inject-fault", fault_name,
                 "activate a named engine fault (collection-sign, qact-sign, kernel-drop)")
      ->envname("P3MOD_INJECT");
#endif

  CLI::App* cmd_verify = app.add_subcommand("verify-main", "verify the main construction");
  CLI::App* cmd_props = app.add_subcommand("props", "oracle and lemma property suites");
  CLI::App* cmd_analyze = app.add_subcommand("analyze", "analyze a small matrix group file");
  cmd_analyze->add_option("group_file", group_file, "header 'p dim ngens', then the generators")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

#ifdef P3MOD_FAULT_INJECTION
  if (!fault_name.empty()) {
    try {
      p3mod::fault::set_active(fault_name);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
#endif

  if (!out_path_usable(cfg.out_path)) {
    std::cerr << "error: output directory does not exist: " << cfg.out_path << "\n";
    return kExitUsage;
  }

  try {
    if (cmd_verify->parsed()) {
      if (omega_opt->count() && omega_size != 9) {
        std::cerr << "error: verify-main requires --omega-size 9\n";
        return kExitUsage;
      }
      cfg.command = "verify-main";
      cfg.omega_sizes = {9};
      return finish(p3mod::verify_theorem_main(cfg));
    }
    if (cmd_props->parsed()) {
      cfg.command = "props";
      if (omega_opt->count()) {
        if (omega_size != 2 && omega_size != 4) {
          std::cerr << "error: props requires --omega-size 2 or 4\n";
          return kExitUsage;
        }
        cfg.omega_sizes = {omega_size};
      } else {
        cfg.omega_sizes = {2, 4};
      }
      return finish(p3mod::props_suite(cfg));
    }
    // analyze
    cfg.command = "analyze";
    cfg.omega_sizes = {};
    std::ifstream in(group_file);
    if (!in) {
      std::cerr << "error: cannot open " << group_file << "\n";
      return kExitUsage;
    }
    std::vector<p3mod::Mat> gens;
    try {
      gens = p3mod::parse_group_file(in);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << group_file << ": " << e.what() << "\n";
      return kExitUsage;
    }
    return finish(p3mod::analyze_group(cfg, gens));
  } catch (const p3mod::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitClaimFailed;
  }
}
