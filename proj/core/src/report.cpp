#include "p3mod/report.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include "p3mod/errors.hpp"

namespace p3mod {

bool Report::run_claim(const std::string& id,
                       const std::function<bool(nlohmann::ordered_json&)>& fn) {
  Claim c;
  c.id = id;
  c.witness = nlohmann::ordered_json::object();
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.pass = fn(c.witness);
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const std::exception& e) {
    c.pass = false;
    c.witness["error"] = e.what();
  }
  c.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                  .count();
  bool pass = c.pass;
  claims_.push_back(std::move(c));
  return pass;
}

bool Report::all_pass() const {
  for (const Claim& c : claims_)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = cfg_.command;
  j["seed"] = cfg_.seed;
  j["omega_sizes"] = cfg_.omega_sizes;
  j["budgets"] = {{"max_rank", cfg_.max_rank},
                  {"max_subgroups", cfg_.max_subgroups},
                  {"cycle_bound", cfg_.cycle_bound}};
  nlohmann::ordered_json claims = nlohmann::ordered_json::array();
  size_t passed = 0;
  for (const Claim& c : claims_) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["pass"] = c.pass;
    e["witness"] = c.witness;
    if (cfg_.timings) e["wall_ms"] = c.wall_ms;
    passed += c.pass;
    claims.push_back(std::move(e));
  }
  j["claims"] = std::move(claims);
  j["summary"] = {{"total", claims_.size()},
                  {"passed", passed},
                  {"failed", claims_.size() - passed}};
  return j;
}

void Report::print_summary(std::ostream& os) const {
  for (const Claim& c : claims_) {
    os << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << "  (" << c.wall_ms << " ms)\n";
    if (!c.pass) os << "       " << c.witness.dump() << "\n";
  }
  size_t passed = 0;
  for (const Claim& c : claims_) passed += c.pass;
  os << (all_pass() ? "VERIFIED" : "FAILED") << ": " << passed << "/" << claims_.size()
     << " claims passed\n";
}

bool Report::write_file() const {
  if (cfg_.out_path.empty()) return true;
  std::ofstream out(cfg_.out_path, std::ios::binary);
  if (!out) return false;
  out << to_json().dump(2) << "\n";
  return bool(out);
}

}  // namespace p3mod
