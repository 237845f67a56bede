#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sentinel/surveillance.hpp"

namespace sentinel::cli {

enum class Mode { test, peel, simulate_null };
enum class OutputFormat { text, json };

struct RunConfig {
  std::filesystem::path input_path;
  double alpha = 0.05;
  std::optional<double> lambda;
  std::optional<std::uint64_t> seed;
  Mode mode = Mode::test;
  std::size_t max_rounds = 5;
  OutputFormat output_format = OutputFormat::text;
  std::vector<std::string> excluded_regions;
  std::size_t trials = 10000;  // simulate-null only
};

inline constexpr int kExitAccept = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitReject = 2;

// Environment variable consulted when --seed is not given.
inline constexpr const char* kSeedEnvVar = "EXTREME_SENTINEL_SEED";

nlohmann::ordered_json report_to_json(const EpidemicReport& report);
std::string report_to_text(const EpidemicReport& report);

// Executes one configured run. Exit status: 0 accept, 2 reject, 1 error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Flag parsing + run(). `env_seed` stands in for the environment variable.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const char* env_seed);

}  // namespace sentinel::cli
