#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "sortlab/bench.hpp"

namespace sortlab {

inline constexpr std::string_view kMetricsCsvHeader =
    "technique,n,seed,time_ns,mem_consumed_bits,total_mem_kb";

void write_metrics_csv(const MetricsMatrix& m, std::ostream& out);
/// Throws IoError if the file cannot be created or written.
void write_metrics_csv(const MetricsMatrix& m, const std::filesystem::path& path);

/// Throws FormatError carrying the 1-based line number of the first bad line.
MetricsMatrix read_metrics_csv(std::istream& in);
/// Throws IoError if the file cannot be opened, FormatError on bad content.
MetricsMatrix read_metrics_csv(const std::filesystem::path& path);

}  // namespace sortlab
