#include <iostream>

#include <CLI11.hpp>

#include "ccp/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ccpequiv - behavioural equivalence checker for finite ccp programs"};
  app.require_subcommand(1);

  ccp::cli::CheckArgs checkArgs;
  CLI::App* check = app.add_subcommand(
      "check", "decide strong or weak saturated barbed bisimilarity of two configurations");
  check->add_option("file", checkArgs.file, "spec file")->required();
  check->add_option("--left", checkArgs.left, "left configuration (literal or [config] name)")
      ->required();
  check->add_option("--right", checkArgs.right, "right configuration")->required();
  check->add_option("--mode", checkArgs.mode, "strong | weak | weak-milner")->required();
  check->add_flag("--trace-partitions", checkArgs.tracePartitions,
                  "print every refinement partition");
  check->add_flag("--json", checkArgs.json, "emit the verdict as JSON");
  check->add_option("--max-states", checkArgs.maxStates, "state exploration cap");

  ccp::cli::LtsArgs ltsArgs;
  CLI::App* lts = app.add_subcommand("lts", "export a labeled transition system");
  lts->add_option("file", ltsArgs.file, "spec file")->required();
  lts->add_option("--config", ltsArgs.configs, "initial configuration (repeatable)")->required();
  lts->add_option("--saturate", ltsArgs.saturate, "none | milner | full");
  lts->add_option("--format", ltsArgs.format, "dot | json");
  lts->add_option("--max-states", ltsArgs.maxStates, "state exploration cap");

  ccp::cli::OracleArgs oracleArgs;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "brute-force bisimilarity check straight from the definition");
  oracle->add_option("file", oracleArgs.file, "spec file")->required();
  oracle->add_option("--left", oracleArgs.left, "left configuration")->required();
  oracle->add_option("--right", oracleArgs.right, "right configuration")->required();
  oracle->add_option("--mode", oracleArgs.mode, "strong | weak")->required();
  oracle->add_option("--max-states", oracleArgs.maxStates, "pair universe cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ccp::cli::kUsageOrLoadError;
  }

  if (check->parsed()) return ccp::cli::cmd_check(checkArgs, std::cout, std::cerr);
  if (lts->parsed()) return ccp::cli::cmd_lts(ltsArgs, std::cout, std::cerr);
  return ccp::cli::cmd_oracle(oracleArgs, std::cout, std::cerr);
}
