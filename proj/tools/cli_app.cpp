#include "cli_app.hpp"

#include <charconv>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>

#include "sentinel/errors.hpp"
#include "sentinel/panel_io.hpp"
#include "sentinel/verify.hpp"

namespace sentinel::cli {

namespace {

std::string format(const char* pattern, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, pattern, v);
  return buffer;
}

nlohmann::ordered_json seed_json(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  return nullptr;
}

std::optional<std::uint64_t> parse_seed(std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

bool any_rejected(const std::vector<EpidemicReport>& reports) {
  for (const auto& r : reports) {
    if (r.rejected()) return true;
  }
  return false;
}

std::string decision_label(const EpidemicReport& report) {
  if (report.decision.branch != Branch::randomized) {
    return std::string(to_string(report.decision.branch));
  }
  if (!report.hard_rejection) return "unresolved (no seed)";
  return *report.hard_rejection ? "reject" : "accept";
}

int run_simulate_null(const RunConfig& config, const CountPanel& panel, std::ostream& out) {
  if (!config.seed) {
    throw ParameterError(std::string("simulate-null needs a seed (--seed or ") + kSeedEnvVar + ")");
  }
  SimulationConfig sim;
  sim.n_trials = config.trials;
  sim.seed = *config.seed;
  sim.alpha = config.alpha;
  const double lambda = config.lambda ? *config.lambda : estimate_lambda(panel);
  sim.panel_template = null_distributions(panel, lambda);
  const SimulationResult result = simulate_size_and_power(sim);

  if (config.output_format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["mode"] = "simulate-null";
    j["alpha"] = config.alpha;
    j["n"] = sim.panel_template.size();
    j["lambda"] = lambda;
    j["trials"] = result.trials;
    j["seed"] = *config.seed;
    j["rejections"] = result.rejections;
    j["rejection_rate"] = result.rejection_rate;
    j["std_error"] = result.std_error;
    out << j.dump(2) << '\n';
  } else {
    out << "null calibration of the extreme-event test\n"
        << "  cells:            " << sim.panel_template.size() << '\n'
        << "  lambda:           " << format("%.6g", lambda) << '\n'
        << "  alpha:            " << format("%g", config.alpha) << '\n'
        << "  trials:           " << result.trials << '\n'
        << "  seed:             " << *config.seed << '\n'
        << "  rejections:       " << result.rejections << '\n'
        << "  rejection rate:   " << format("%.6f", result.rejection_rate) << '\n'
        << "  std error:        " << format("%.6f", result.std_error) << '\n';
  }
  return kExitAccept;
}

}  // namespace

nlohmann::ordered_json report_to_json(const EpidemicReport& report) {
  nlohmann::ordered_json j;
  j["alpha"] = report.alpha;
  j["n"] = report.n;
  j["lambda"] = report.lambda_used;
  j["p_lower"] = report.bounds.lower;
  j["p_upper"] = report.bounds.upper;
  j["m_lower"] = report.bounds.m_lower;
  j["m_upper"] = report.bounds.m_upper;
  j["phi"] = report.decision.rejection_probability;
  j["branch"] = std::string(to_string(report.decision.branch));
  j["threshold"] = report.decision.threshold;
  j["m_statistic"] = report.decision.m_statistic;
  j["randomized_set"] = report.decision.randomized_set;
  j["flagged_region"] = report.flagged_cell.region_id;
  j["flagged_period"] = report.flagged_cell.period_id;
  j["seed"] = seed_json(report.seed);
  if (report.hard_rejection) {
    j["hard_rejection"] = *report.hard_rejection;
  } else {
    j["hard_rejection"] = nullptr;
  }
  j["rejected"] = report.rejected();
  return j;
}

std::string report_to_text(const EpidemicReport& report) {
  std::ostringstream os;
  os << "  cells (n):        " << report.n << '\n'
     << "  lambda:           " << format("%.6g", report.lambda_used) << '\n'
     << "  alpha:            " << format("%g", report.alpha) << '\n'
     << "  threshold:        " << format("%.8f", report.decision.threshold) << '\n'
     << "  p-value bounds:   [" << format("%.1e", report.bounds.lower) << ", "
     << format("%.1e", report.bounds.upper) << "]\n"
     << "  max F(n-1), F(n): " << format("%.8f", report.bounds.m_lower) << ", "
     << format("%.8f", report.bounds.m_upper) << '\n'
     << "  phi:              " << format("%.6g", report.decision.rejection_probability) << '\n'
     << "  branch:           " << to_string(report.decision.branch) << '\n'
     << "  decision:         " << decision_label(report) << '\n'
     << "  flagged cell:     " << report.flagged_cell.region_id << ' '
     << report.flagged_cell.period_id << '\n'
     << "  seed:             ";
  if (report.seed) {
    os << *report.seed << '\n';
  } else {
    os << "none\n";
  }
  return os.str();
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
      throw ParameterError("--alpha must lie in (0,1)");
    }
    if (config.lambda && !(*config.lambda > 0.0)) throw ParameterError("--lambda must be positive");
    if (config.max_rounds == 0) throw ParameterError("--max-rounds must be at least 1");

    IngestOptions options;
    options.excluded_regions.insert(config.excluded_regions.begin(),
                                    config.excluded_regions.end());
    const CountPanel panel = ingest(config.input_path, options);

    switch (config.mode) {
      case Mode::test: {
        const auto report = epidemic_test(panel, config.lambda, config.alpha, config.seed);
        if (config.output_format == OutputFormat::json) {
          out << report_to_json(report).dump(2) << '\n';
        } else {
          out << "extreme-event test\n" << report_to_text(report);
        }
        return report.rejected() ? kExitReject : kExitAccept;
      }
      case Mode::peel: {
        const auto reports =
            peel_test(panel, config.lambda, config.alpha, config.max_rounds, config.seed);
        if (config.output_format == OutputFormat::json) {
          nlohmann::ordered_json j;
          j["mode"] = "peel";
          j["alpha"] = config.alpha;
          j["max_rounds"] = config.max_rounds;
          j["seed"] = seed_json(config.seed);
          j["rounds"] = nlohmann::ordered_json::array();
          for (std::size_t r = 0; r < reports.size(); ++r) {
            auto entry = report_to_json(reports[r]);
            entry["round"] = r + 1;
            j["rounds"].push_back(std::move(entry));
          }
          out << j.dump(2) << '\n';
        } else {
          for (std::size_t r = 0; r < reports.size(); ++r) {
            out << "round " << r + 1 << '\n' << report_to_text(reports[r]);
          }
        }
        return any_rejected(reports) ? kExitReject : kExitAccept;
      }
      case Mode::simulate_null:
        return run_simulate_null(config, panel, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
               const char* env_seed) {
  CLI::App app{"UMP extreme-event test for Poisson surveillance panels"};
  RunConfig config;
  std::string input;
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;

  const std::map<std::string, Mode> modes{
      {"test", Mode::test}, {"peel", Mode::peel}, {"simulate-null", Mode::simulate_null}};
  const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::text},
                                                    {"json", OutputFormat::json}};

  app.add_option("--input", input, "CSV panel: region,period,count,population")->required();
  app.add_option("--mode", config.mode, "test | peel | simulate-null")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  app.add_option("--alpha", config.alpha, "significance level in (0,1)");
  app.add_option("--lambda", lambda, "null rate per person-period (default: pooled estimate)");
  app.add_option("--seed", seed, "seed resolving randomized decisions");
  app.add_option("--max-rounds", config.max_rounds, "peel mode round limit");
  app.add_option("--format", config.output_format, "text | json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--exclude", config.excluded_regions, "regions that do not report")
      ->delimiter(',');
  app.add_option("--trials", config.trials, "simulate-null trial count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitAccept;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  config.input_path = input;
  config.lambda = lambda;
  config.seed = seed;
  if (!config.seed && env_seed != nullptr && *env_seed != '\0') {
    config.seed = parse_seed(env_seed);
    if (!config.seed) {
      err << "error: " << kSeedEnvVar << " is not an unsigned 64-bit integer\n";
      return kExitError;
    }
  }
  return run(config, out, err);
}

}  // namespace sentinel::cli
