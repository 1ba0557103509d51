#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "phigamma/io.hpp"

namespace phigamma {

inline constexpr const char* kKernelVersion = "0.1.0";

struct SuiteConfig {
  int p = 3;
  long N = 12;
  long dmin = -8;
  long dmax = 40;
  long L = 8;
  int n_max = 2;
  long trials = 100;
  std::uint64_t seed = 42;
  long slack = 2;
};

// Unknown keys are rejected; missing keys keep their defaults.
SuiteConfig config_from_json(const json& j, SuiteConfig base = {});
json to_json(const SuiteConfig& c);

enum class Status { Pass, Fail, Inconclusive };
const char* status_name(Status s);

struct CaseRecord {
  std::string name;
  json params;
  Status status = Status::Pass;
  long worst = kInf;      // smallest discrepancy valuation seen
  long certified = kInf;  // smallest certified digit count seen
  long checks = 0;
  long loss = 0;          // digits forfeited below N, worst case
  std::string message;
  json inputs;            // the first failing trial
};

struct Report {
  std::string suite;
  SuiteConfig config;
  std::vector<CaseRecord> cases;  // sorted by name
  bool pass(bool strict = false) const;
  bool any_inconclusive() const;
};

// Accumulates the checks of one case.  trial() records the inputs of the current trial so that
// the first failure can carry them.
class CaseRun {
 public:
  CaseRun(std::string name, const SuiteConfig& cfg);

  const SuiteConfig& config() const { return cfg_; }
  long trials(long cap) const;
  void param(const std::string& key, json v) { rec_.params[key] = std::move(v); }
  void trial(json inputs) { current_ = std::move(inputs); }
  // Passes when a.ok and at least `need` digits are certified.
  bool agree(const Agreement& a, long need, const std::string& what);
  bool holds(bool cond, const std::string& what);
  // A scalar identity: disc_val(a, b) >= need.
  bool close(const Padic& a, const Padic& b, long need, const std::string& what);
  void note_certified(long c);
  void fail_with(const std::string& what);
  void inconclusive(const std::string& what);
  CaseRecord finish();

 private:
  SuiteConfig cfg_;
  CaseRecord rec_;
  json current_;
  bool failed_ = false;
};

std::vector<std::string> suite_names();  // padic, cyclo, robba, dif, herr, bigexp, fourier
std::vector<std::string> case_names(const std::string& suite);
CaseRecord run_case(const std::string& suite, const std::string& name, const SuiteConfig& cfg);
// "all" runs every suite with the case names prefixed by the suite.
Report run_suite(const std::string& suite, const SuiteConfig& cfg);
json to_json(const CaseRecord& r);
json to_json(const Report& r);

}  // namespace phigamma
