#include "sortlab/metrics_csv.hpp"

#include "sortlab/errors.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace sortlab {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            return out;
        }
        start = comma + 1;
    }
}

template <typename Int>
Int parse_int(std::string_view field, std::string_view name, std::size_t line) {
    Int value{};
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw FormatError("invalid " + std::string(name) + " '" + std::string(field) + "'", line);
    }
    return value;
}

}  // namespace

void write_metrics_csv(const MetricsMatrix& m, std::ostream& out) {
    out << kMetricsCsvHeader << '\n';
    for (const MetricsRecord& r : m.rows) {
        out << to_string(r.technique) << ',' << r.n << ',' << r.seed << ',' << r.time_ns << ','
            << r.mem_consumed_bits << ',' << r.total_mem_kb << '\n';
    }
}

void write_metrics_csv(const MetricsMatrix& m, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_metrics_csv(m, out);
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

MetricsMatrix read_metrics_csv(std::istream& in) {
    MetricsMatrix m;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (!saw_header) {
            if (line != kMetricsCsvHeader) {
                throw FormatError("expected header '" + std::string(kMetricsCsvHeader) + "'", line_no);
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 6) {
            throw FormatError("expected 6 fields, got " + std::to_string(fields.size()), line_no);
        }
        MetricsRecord r;
        const auto technique = parse_technique(fields[0]);
        if (!technique) {
            throw FormatError("unknown technique '" + std::string(fields[0]) + "'", line_no);
        }
        r.technique = *technique;
        r.n = parse_int<std::uint64_t>(fields[1], "n", line_no);
        r.seed = parse_int<std::uint64_t>(fields[2], "seed", line_no);
        r.time_ns = parse_int<std::int64_t>(fields[3], "time_ns", line_no);
        r.mem_consumed_bits = parse_int<std::int64_t>(fields[4], "mem_consumed_bits", line_no);
        r.total_mem_kb = parse_int<std::int64_t>(fields[5], "total_mem_kb", line_no);
        if (r.time_ns < 0 || r.mem_consumed_bits < 0 || r.total_mem_kb < 0) {
            throw FormatError("negative measurement", line_no);
        }
        if (!m.rows.empty() && m.rows.front().technique != r.technique) {
            throw FormatError("mixed techniques in one metrics file", line_no);
        }
        m.rows.push_back(r);
    }
    if (!saw_header) {
        throw FormatError("missing header", 1);
    }
    return m;
}

MetricsMatrix read_metrics_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    return read_metrics_csv(in);
}

}  // namespace sortlab
