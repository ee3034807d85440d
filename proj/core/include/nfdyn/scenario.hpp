#ifndef NFDYN_SCENARIO_HPP
#define NFDYN_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace nfdyn {

struct ScenarioOptions {
  std::uint64_t seed = 0;
  std::string out_dir;
  unsigned threads = 1;
  bool write_outputs = true;
};

struct ScenarioResult {
  bool pass = true;
  std::string summary;                // human-readable, one line per finding
  std::vector<std::string> outputs;   // paths written
  nlohmann::json report;              // same content as the JSON output file
};

// One experiment: an object with a "task" key in
// {certify, orbit, khintchine, popdiff, limit-check}. A file may also hold an
// array of such objects, run sequentially; the run passes iff all pass.
ScenarioResult run_scenario_json(const nlohmann::json& scenario,
                                 const ScenarioOptions& options);
ScenarioResult run_scenario_file(const std::string& path, const ScenarioOptions& options);

// Validation only: throws ParseError / ValidationError, never executes.
void check_scenario_json(const nlohmann::json& scenario);
void check_scenario_file(const std::string& path);

}  // namespace nfdyn

#endif
