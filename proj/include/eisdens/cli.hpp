#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it in-process.
//
// Exit codes:
//   0  success
//   1  internal error
//   2  usage, parse or domain error
//   3  enumeration budget exceeded
//   4  verification failure (some report did not pass)

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eisdens/io.hpp"

namespace eisdens::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitVerification = 4;

// Name of the environment variable giving the directory for relative
// --output paths.
inline constexpr const char* kOutputDirEnv = "EISDENS_OUTPUT_DIR";

struct RunConfig {
  std::string command;     // density | verify | places
  std::string subcommand;  // verify: exact | mc | sweep; places: count | list
  std::uint64_t q = 2;
  std::optional<std::string> modulus;  // base-p digits of the field modulus, "1,1,1"
  unsigned d = 2;
  std::string kind = "monic";
  std::string exclude = "inf";
  std::string width = "2^-30";
  std::optional<unsigned> N;
  std::optional<std::string> places;    // finite spectrum given by places
  std::optional<std::string> spectrum;  // spectrum JSON file
  bool truncated_only = false;
  std::optional<std::string> divisor;
  std::optional<unsigned> degree;
  std::optional<std::string> degrees;  // "a:b"
  std::optional<unsigned> max_degree;
  std::string T;
  std::optional<std::string> mode;
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  std::uint64_t budget = std::uint64_t{1} << 26;
  bool fallback_mc = false;
  double z_limit = 5.0;
  std::uint64_t cap = std::uint64_t{1} << 20;
  std::string format = "json";
  std::optional<std::string> output;

  bool operator==(const RunConfig&) const = default;
};

io::Json config_to_json(const RunConfig& cfg);
// Throws std::invalid_argument on unknown keys or wrong types.
RunConfig config_from_json(const io::Json& j);

// Parallelism is not part of RunConfig: outputs never depend on it.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int main(int argc, char** argv);

}  // namespace eisdens::cli
