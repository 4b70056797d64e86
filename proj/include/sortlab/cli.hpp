#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "sortlab/bench.hpp"
#include "sortlab/factor_analysis.hpp"

namespace sortlab {

/// Process exit codes of the `sortlab` tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitMeasurement = 2,
    kExitIo = 3,
    kExitStatistics = 4,
    kExitParse = 5,
};

enum class OutputFormat { csv, json, svg, text };

struct PipelineConfig {
    BenchConfig bench;
    std::filesystem::path output_dir = "sortlab_out";
    ScoreMode score_mode = ScoreMode::zscore;
    double kappa = 4.0;
    std::set<OutputFormat> formats = {OutputFormat::csv, OutputFormat::json, OutputFormat::svg, OutputFormat::text};

    bool wants(OutputFormat f) const { return formats.count(f) != 0; }
};

/// Bad configuration value or config-file syntax.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Applies one setting. Keys accept '-' or '_' (score-mode == score_mode).
/// Throws ConfigError on an unknown key or an unparsable value.
void apply_setting(PipelineConfig& cfg, std::string_view key, std::string_view value);

/// Flat `key = value` lines; '#' starts a comment. Errors name
/// `<origin>:<line>`.
void apply_config_text(PipelineConfig& cfg, std::string_view text, const std::string& origin);
void apply_config_file(PipelineConfig& cfg, const std::filesystem::path& path);

// Each command returns an ExitCode; failures are reported on `err`.

/// Writes metrics_<technique>.csv into the output directory.
int cmd_bench(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);
/// Reads metrics CSVs (default: the three in the output directory) and writes
/// factors_<technique>.json.
int cmd_analyze(const PipelineConfig& cfg, const std::vector<std::filesystem::path>& inputs, std::ostream& out,
                std::ostream& err);
/// Reads factor JSONs (default: those in the output directory) and writes
/// report.txt and figure1.svg.
int cmd_report(const PipelineConfig& cfg, const std::vector<std::filesystem::path>& inputs, std::ostream& out,
               std::ostream& err);
/// bench, analyze and report in sequence, writing only the requested formats.
int cmd_pipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& err);

/// Entry point behind main(); args excludes the program name. Messages go to
/// `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sortlab
