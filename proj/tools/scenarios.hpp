#pragma once

#include <map>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "mobius/serialize.hpp"
#include "mobius/svg.hpp"

namespace mobius::tools {

using Measured = std::variant<bool, double, std::string>;

struct CheckResult {
  std::string id;
  std::string op;
  std::string expected;
  std::string measured;
  std::string basis;
  bool pass = false;
};

struct ScenarioResult {
  std::string name;
  std::vector<CheckResult> checks;
  SvgScene figure;
  bool pass() const;
};

const Json& manifest();
std::vector<std::string> scenario_names();

/// Runs the scripted scenario and grades it against the manifest.
/// Throws Error(UnknownScenario).
ScenarioResult run_scenario(const std::string& name);

void print_table(std::ostream& out, const ScenarioResult& r);

}  // namespace mobius::tools
