#pragma once

// Subcommand implementations behind the `sortlab` executable. Each returns
// a process exit code and writes human output to `out`, diagnostics to
// `err`.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace sortlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

enum class Format { text, csv, json };

std::optional<Format> parse_format(const std::string& text);

struct RunArgs {
  std::filesystem::path plan_path;
  std::filesystem::path output_dir;
  std::optional<std::uint64_t> seed;
  bool timing = true;
};

struct AnovaArgs {
  std::filesystem::path dataset_path;
  std::string response = "time_seconds";
  Format format = Format::text;
  std::optional<std::filesystem::path> output_path;
};

struct CompareArgs {
  std::filesystem::path dataset_a;
  std::filesystem::path dataset_b;
  std::string response = "time_seconds";
  double alpha = 0.05;
  Format format = Format::text;
  std::optional<std::filesystem::path> output_path;
};

struct GenArgs {
  std::uint64_t n = 10;
  double m = 0.0;
  double s = 1.0;
  std::uint64_t seed = 0;
  std::optional<std::filesystem::path> output_path;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);
int cmd_anova(const AnovaArgs& args, std::ostream& out, std::ostream& err);
int cmd_compare(const CompareArgs& args, std::ostream& out, std::ostream& err);
int cmd_fprob(double f, int d1, int d2, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_selftest(std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Usage errors exit with kExitValidation.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sortlab::cli
