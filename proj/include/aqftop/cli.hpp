#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace aqftop {

enum class OutputFormat { Human, Machine };

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  std::size_t max_arity = 3;
  std::string star = "reverse";  // reverse | identity | none
  OutputFormat format = OutputFormat::Human;
  std::filesystem::path corpus;
  bool gamma = false;      // build-operad: print the composition table
  bool coend = false;      // check-operad: also compare with the coend
  std::string state;       // gns: state name, default the first
};

/// Exit codes of run_cli.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitInput = 2;

/// Directory searched for inputs that are not found as given.
std::filesystem::path default_corpus_dir();

/// Parses argv-style arguments (without the program name) and runs.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace aqftop
