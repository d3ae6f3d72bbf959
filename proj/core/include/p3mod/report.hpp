#pragma once

// Structured verification reports. The report file is byte-for-byte
// deterministic for a fixed seed at any parallelism degree; wall times are
// printed on stdout and enter the file only when explicitly requested.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace p3mod {

inline constexpr const char* kReportSchema = "p3mod-report-v1";

struct Claim {
  std::string id;
  bool pass = false;
  nlohmann::ordered_json witness;  // deterministic payload
  double wall_ms = 0.0;            // stdout only, unless timings requested
};

struct RunConfig {
  std::string command;
  uint64_t seed = 1;
  std::vector<int> omega_sizes = {9};
  unsigned jobs = 1;
  std::string out_path;
  size_t max_rank = 4;
  size_t max_subgroups = 1000000;
  size_t cycle_bound = 81;
  bool timings = false;
};

class Report {
 public:
  explicit Report(RunConfig cfg) : cfg_(std::move(cfg)) {}

  /// Runs fn, appends a claim with its verdict and wall time. fn fills the
  /// witness object and returns pass/fail. Exceptions are recorded as
  /// failures with the message in the witness, except BudgetExceeded which
  /// propagates (exit code 2).
  bool run_claim(const std::string& id,
                 const std::function<bool(nlohmann::ordered_json&)>& fn);

  void add(Claim c) { claims_.push_back(std::move(c)); }

  bool all_pass() const;
  const std::vector<Claim>& claims() const { return claims_; }
  const RunConfig& config() const { return cfg_; }

  nlohmann::ordered_json to_json() const;
  /// Human-readable per-claim lines with wall times.
  void print_summary(std::ostream& os) const;
  /// Writes to_json() to cfg.out_path if set; returns false on IO failure.
  bool write_file() const;

 private:
  RunConfig cfg_;
  std::vector<Claim> claims_;
};

}  // namespace p3mod
