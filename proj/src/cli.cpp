#include "sortlab/cli.hpp"

#include "sortlab/errors.hpp"
#include "sortlab/factor_json.hpp"
#include "sortlab/metrics_csv.hpp"
#include "sortlab/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace sortlab {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        const std::string item = trim(s.substr(start, comma - start));
        if (!item.empty()) {
            out.push_back(item);
        }
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

template <typename Int>
Int parse_unsigned(std::string_view key, const std::string& v) {
    Int value{};
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), value);
    if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError("invalid value '" + v + "' for " + std::string(key));
    }
    return value;
}

bool parse_bool(std::string_view key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError("invalid boolean '" + v + "' for " + std::string(key));
}

std::string normalize_key(std::string_view key) {
    std::string k = trim(key);
    std::replace(k.begin(), k.end(), '-', '_');
    return k;
}

std::string capitalized(std::string_view s) {
    std::string out(s);
    if (!out.empty()) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

void ensure_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory " + dir.string() + (ec ? ": " + ec.message() : ""));
    }
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

fs::path metrics_path(const fs::path& dir, Technique t) {
    return dir / ("metrics_" + std::string(to_string(t)) + ".csv");
}

fs::path factors_path(const fs::path& dir, const std::string& technique) {
    return dir / ("factors_" + technique + ".json");
}

int guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const MeasurementError& e) {
        err << "measurement error: " << e.what() << '\n';
        return kExitMeasurement;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const StatsError& e) {
        err << "statistics error: " << e.what() << '\n';
        return kExitStatistics;
    } catch (const FormatError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    }
}

void print_bench_summary(std::ostream& out, const std::map<Technique, MetricsMatrix>& matrices) {
    for (const auto& [t, m] : matrices) {
        std::int64_t total_ns = 0;
        for (const auto& r : m.rows) {
            total_ns += r.time_ns;
        }
        out << to_string(t) << ": " << m.size() << " runs, total sort time " << total_ns / 1000000 << " ms\n";
    }
}

FactorModel analyze_metrics(const MetricsMatrix& m, const PipelineConfig& cfg, const std::string& origin) {
    if (m.rows.empty()) {
        throw StatsError(StatsError::Kind::DegenerateInput, "insufficient rows in " + origin + ": file has no runs");
    }
    AnalysisOptions opts;
    opts.score_mode = cfg.score_mode;
    opts.kappa = cfg.kappa;
    try {
        return analyze(m, opts);
    } catch (const StatsError& e) {
        throw StatsError(e.kind(), origin + ": " + e.what());
    }
}

void print_model_summary(std::ostream& out, const FactorModel& fm) {
    std::ostringstream line;
    line << fm.technique << ": factor 1 explains " << format_table_number(fm.percent.front())
         << "% of variance, " << fm.retained << " factor(s) retained, Bartlett chi2 "
         << format_table_number(fm.bartlett.chi2) << " (df " << fm.bartlett.df << ")";
    out << line.str() << '\n';
}

std::vector<fs::path> default_metrics_inputs(const fs::path& dir) {
    std::vector<fs::path> found;
    for (const Technique t : kTechniques) {
        if (fs::exists(metrics_path(dir, t))) {
            found.push_back(metrics_path(dir, t));
        }
    }
    if (found.empty()) {
        throw IoError("no metrics_<technique>.csv files in " + dir.string());
    }
    return found;
}

std::vector<fs::path> default_factor_inputs(const fs::path& dir) {
    std::vector<fs::path> found;
    for (const Technique t : kTechniques) {
        const fs::path p = factors_path(dir, std::string(to_string(t)));
        if (fs::exists(p)) {
            found.push_back(p);
        }
    }
    if (found.empty()) {
        throw IoError("no factors_<technique>.json files in " + dir.string());
    }
    return found;
}

void write_report(const PipelineConfig& cfg, const std::vector<FactorModel>& models, std::ostream& out) {
    const ReportBundle bundle = build_report(models);
    if (cfg.wants(OutputFormat::text)) {
        write_text_file(cfg.output_dir / "report.txt", bundle.text);
        out << "wrote " << (cfg.output_dir / "report.txt").string() << '\n';
    }
    if (cfg.wants(OutputFormat::svg)) {
        write_text_file(cfg.output_dir / "figure1.svg", bundle.svg);
        out << "wrote " << (cfg.output_dir / "figure1.svg").string() << '\n';
    }
}

}  // namespace

void apply_setting(PipelineConfig& cfg, std::string_view raw_key, std::string_view raw_value) {
    const std::string key = normalize_key(raw_key);
    const std::string value = trim(raw_value);
    if (key == "sizes") {
        std::vector<std::size_t> sizes;
        for (const auto& item : split_list(value)) {
            sizes.push_back(parse_unsigned<std::size_t>(key, item));
        }
        cfg.bench.sizes = std::move(sizes);
    } else if (key == "reps") {
        cfg.bench.reps = parse_unsigned<std::size_t>(key, value);
    } else if (key == "seed") {
        cfg.bench.base_seed = parse_unsigned<std::uint64_t>(key, value);
    } else if (key == "warmup") {
        cfg.bench.warmup = parse_unsigned<std::size_t>(key, value);
    } else if (key == "distribution") {
        const auto d = parse_distribution(value);
        if (!d) {
            throw ConfigError("unknown distribution '" + value + "'");
        }
        cfg.bench.distribution = *d;
    } else if (key == "synthetic_time") {
        cfg.bench.synthetic_time = parse_bool(key, value);
    } else if (key == "out" || key == "output_dir") {
        if (value.empty()) {
            throw ConfigError("output directory must not be empty");
        }
        cfg.output_dir = value;
    } else if (key == "score_mode") {
        if (value == "zscore") {
            cfg.score_mode = ScoreMode::zscore;
        } else if (value == "paper-literal" || value == "paper_literal") {
            cfg.score_mode = ScoreMode::paper_literal;
        } else {
            throw ConfigError("unknown score mode '" + value + "'");
        }
    } else if (key == "kappa") {
        double k = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), k);
        if (value.empty() || ec != std::errc() || ptr != value.data() + value.size() || !(k >= 1.0) ||
            !std::isfinite(k)) {
            throw ConfigError("kappa must be a number >= 1, got '" + value + "'");
        }
        cfg.kappa = k;
    } else if (key == "formats") {
        std::set<OutputFormat> formats;
        for (const auto& f : split_list(value)) {
            if (f == "csv") {
                formats.insert(OutputFormat::csv);
            } else if (f == "json") {
                formats.insert(OutputFormat::json);
            } else if (f == "svg") {
                formats.insert(OutputFormat::svg);
            } else if (f == "text") {
                formats.insert(OutputFormat::text);
            } else {
                throw ConfigError("unknown format '" + f + "'");
            }
        }
        if (formats.empty()) {
            throw ConfigError("formats must not be empty");
        }
        cfg.formats = std::move(formats);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

void apply_config_text(PipelineConfig& cfg, std::string_view text, const std::string& origin) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        if (!trim(line).empty()) {
            const auto eq = line.find('=');
            try {
                if (eq == std::string_view::npos) {
                    throw ConfigError("expected key = value");
                }
                apply_setting(cfg, line.substr(0, eq), line.substr(eq + 1));
            } catch (const ConfigError& e) {
                throw ConfigError(origin + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
}

void apply_config_file(PipelineConfig& cfg, const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    apply_config_text(cfg, buf.str(), path.string());
}

int cmd_bench(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.bench.validate();
        ensure_output_dir(cfg.output_dir);
        const auto matrices = run_matrix(cfg.bench);
        for (const auto& [t, m] : matrices) {
            write_metrics_csv(m, metrics_path(cfg.output_dir, t));
        }
        print_bench_summary(out, matrices);
    });
}

int cmd_analyze(const PipelineConfig& cfg, const std::vector<fs::path>& inputs, std::ostream& out,
                std::ostream& err) {
    return guarded(err, [&] {
        const auto files = inputs.empty() ? default_metrics_inputs(cfg.output_dir) : inputs;
        ensure_output_dir(cfg.output_dir);
        for (const fs::path& f : files) {
            MetricsMatrix m;
            try {
                m = read_metrics_csv(f);
            } catch (const FormatError& e) {
                throw FormatError(f.string() + ": " + e.what());
            }
            const FactorModel fm = analyze_metrics(m, cfg, f.string());
            write_factor_json(fm, factors_path(cfg.output_dir, fm.technique));
            print_model_summary(out, fm);
        }
    });
}

int cmd_report(const PipelineConfig& cfg, const std::vector<fs::path>& inputs, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        const auto files = inputs.empty() ? default_factor_inputs(cfg.output_dir) : inputs;
        std::vector<FactorModel> models;
        for (const fs::path& f : files) {
            try {
                models.push_back(read_factor_json(f));
            } catch (const FormatError& e) {
                throw FormatError(f.string() + ": " + e.what());
            }
        }
        ensure_output_dir(cfg.output_dir);
        write_report(cfg, models, out);
    });
}

int cmd_pipeline(const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.bench.validate();
        ensure_output_dir(cfg.output_dir);
        const auto matrices = run_matrix(cfg.bench);
        print_bench_summary(out, matrices);
        std::vector<FactorModel> models;
        for (const auto& [t, m] : matrices) {
            if (cfg.wants(OutputFormat::csv)) {
                write_metrics_csv(m, metrics_path(cfg.output_dir, t));
            }
            models.push_back(analyze_metrics(m, cfg, capitalized(to_string(t)) + " metrics"));
            if (cfg.wants(OutputFormat::json)) {
                write_factor_json(models.back(), factors_path(cfg.output_dir, models.back().technique));
            }
            print_model_summary(out, models.back());
        }
        write_report(cfg, models, out);
    });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sorting-technique benchmark and factor-analysis laboratory", "sortlab"};
    app.require_subcommand(1);

    std::string config_path;
    std::string sizes, score_mode, formats, distribution, out_dir, kappa;
    std::size_t reps = 0, warmup = 0;
    std::uint64_t seed = 0;
    bool synthetic = false;
    std::vector<std::string> inputs;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file");
        cmd->add_option("--sizes", sizes, "comma-separated input sizes");
        cmd->add_option("--reps", reps, "repetitions per size");
        cmd->add_option("--seed", seed, "base seed");
        cmd->add_option("--distribution", distribution, "uniform|sorted|reverse|few_unique");
        cmd->add_option("--warmup", warmup, "discarded warm-up runs");
        cmd->add_option("--score-mode", score_mode, "zscore|paper-literal");
        cmd->add_option("--kappa", kappa, "promax power");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--formats", formats, "subset of csv,json,svg,text");
        cmd->add_flag("--synthetic-time", synthetic, "replace measured time with a deterministic model");
    };

    CLI::App* bench = app.add_subcommand("bench", "run the benchmark matrix and write metrics CSVs");
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "factor-analyze metrics CSVs");
    CLI::App* report = app.add_subcommand("report", "render tables and the figure from factor JSONs");
    CLI::App* pipeline = app.add_subcommand("pipeline", "bench, analyze and report");
    for (CLI::App* cmd : {bench, analyze_cmd, report, pipeline}) {
        add_common(cmd);
    }
    analyze_cmd->add_option("files", inputs, "metrics CSV files");
    report->add_option("files", inputs, "factor JSON files");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
    }

    CLI::App* cmd = app.get_subcommands().front();
    PipelineConfig cfg;
    try {
        if (!config_path.empty()) {
            apply_config_file(cfg, config_path);
        }
        auto given = [cmd](const char* flag) { return cmd->count(flag) > 0; };
        if (given("--sizes")) apply_setting(cfg, "sizes", sizes);
        if (given("--reps")) apply_setting(cfg, "reps", std::to_string(reps));
        if (given("--seed")) apply_setting(cfg, "seed", std::to_string(seed));
        if (given("--distribution")) apply_setting(cfg, "distribution", distribution);
        if (given("--warmup")) apply_setting(cfg, "warmup", std::to_string(warmup));
        if (given("--score-mode")) apply_setting(cfg, "score_mode", score_mode);
        if (given("--kappa")) apply_setting(cfg, "kappa", kappa);
        if (given("--out")) apply_setting(cfg, "out", out_dir);
        if (given("--formats")) apply_setting(cfg, "formats", formats);
        if (synthetic) cfg.bench.synthetic_time = true;
        cfg.bench.validate();
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    }

    std::vector<fs::path> paths(inputs.begin(), inputs.end());
    if (cmd == bench) return cmd_bench(cfg, out, err);
    if (cmd == analyze_cmd) return cmd_analyze(cfg, paths, out, err);
    if (cmd == report) return cmd_report(cfg, paths, out, err);
    return cmd_pipeline(cfg, out, err);
}

}  // namespace sortlab
