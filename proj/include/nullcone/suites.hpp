#pragma once

// Named verification suites. Each suite recomputes a family of facts about
// the constructions and compares against embedded expectations.

#include <map>
#include <string>
#include <vector>

#include "nullcone/report.hpp"

namespace nullcone {

using SuiteParams = std::map<std::string, std::string>;

struct Claim {
  std::string id;
  std::string statement;
  Json expected;
  Json computed;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  Json parameters = Json::object();
  std::vector<Claim> claims;
  Json data = Json::object();  // echoed inputs: moduli, sample points, tables
  double seconds = 0;          // text table only; JSON stays rerun-stable
  bool partial = false;        // a budget ran out; some work is still running

  bool pass() const;
  Json to_json() const;
  std::string table() const;
};

std::string tool_version();
const std::vector<std::string>& suite_names();

/// Raises UnknownSuite or BadParameter. "all" runs every suite with its
/// default parameters, concurrently, and reports them in fixed order.
SuiteReport run_suite(const std::string& name, const SuiteParams& params = {});

}  // namespace nullcone
