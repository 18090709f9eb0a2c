#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace jladder::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;

enum class OutputFormat { csv, json };

struct RunConfig {
  std::filesystem::path checkpoint_dir;
  std::filesystem::path table_path;  ///< empty: build covering tables on demand
  std::map<std::string, double> tolerances{{"quad", 1e-6}, {"deep", 1e-4}};
  std::vector<double> sweep{1e4, 1e5, 1e6};
  std::filesystem::path output;  ///< empty: standard output
  OutputFormat format = OutputFormat::csv;
};

/// Throws std::invalid_argument when a tolerance lies outside [1e-12, 1e-2]
/// or the sweep is not strictly increasing.
void validate(const RunConfig& cfg);

/// Subcommands: ladder {build, eval}, verify, partitions, zeros, hl, report.
/// Data goes to `out` (or the --out file), diagnostics and per-check
/// summary lines to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace jladder::cli
