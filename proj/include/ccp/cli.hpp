#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ccp::cli {

// Exit codes shared by all subcommands.
inline constexpr int kEquivalent = 0;
inline constexpr int kNotEquivalent = 1;
inline constexpr int kUsageOrLoadError = 2;
inline constexpr int kCapExceeded = 3;

struct CheckArgs {
  std::string file;
  std::string left;
  std::string right;
  std::string mode = "strong";  // strong | weak | weak-milner
  bool tracePartitions = false;
  bool json = false;
  std::size_t maxStates = 10'000;
};

struct LtsArgs {
  std::string file;
  std::vector<std::string> configs;
  std::string saturate = "none";  // none | milner | full
  std::string format = "dot";     // dot | json
  std::size_t maxStates = 10'000;
};

struct OracleArgs {
  std::string file;
  std::string left;
  std::string right;
  std::string mode = "strong";  // strong | weak
  std::size_t maxStates = 10'000;
};

int cmd_check(const CheckArgs& args, std::ostream& out, std::ostream& err);
int cmd_lts(const LtsArgs& args, std::ostream& out, std::ostream& err);
int cmd_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err);

}  // namespace ccp::cli
