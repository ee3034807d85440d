#include <CLI11.hpp>
#include <iostream>

#include "nfdyn/errors.hpp"
#include "nfdyn/presets.hpp"
#include "nfdyn/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"number-field recurrence experiments"};
  app.require_subcommand(1);

  nfdyn::ScenarioOptions options;
  app.add_option("--seed", options.seed, "seed override for randomized tasks");
  app.add_option("--out-dir", options.out_dir, "directory for report files");
  app.add_option("--threads", options.threads, "worker threads for averaging");

  std::string run_file, check_file;
  CLI::App* run = app.add_subcommand("run", "execute a scenario file");
  run->add_option("file", run_file, "scenario JSON file")->required();
  CLI::App* presets = app.add_subcommand("presets", "list shipped presets");
  CLI::App* check = app.add_subcommand("check", "validate a scenario file");
  check->add_option("file", check_file, "scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      nfdyn::ScenarioResult result = nfdyn::run_scenario_file(run_file, options);
      std::cout << result.summary;
      for (const auto& path : result.outputs) std::cout << "wrote " << path << "\n";
      return result.pass ? 0 : 1;
    }
    if (presets->parsed()) {
      std::cout << "fields:\n";
      for (const auto& p : nfdyn::field_presets())
        std::cout << "  " << p.name << " — " << p.description << "\n";
      std::cout << "generators:\n";
      for (const auto& p : nfdyn::generator_presets())
        std::cout << "  " << p.name << " — " << p.description << "\n";
      std::cout << "families:\n";
      for (const auto& p : nfdyn::family_presets())
        std::cout << "  " << p.name << " — " << p.description << "\n";
      return 0;
    }
    if (check->parsed()) {
      nfdyn::check_scenario_file(check_file);
      std::cout << "ok\n";
      return 0;
    }
  } catch (const nfdyn::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nfdyn::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const nfdyn::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
