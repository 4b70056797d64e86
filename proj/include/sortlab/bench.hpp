#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sortlab/sorting.hpp"

namespace sortlab {

enum class Technique { shell, heap, treap };
inline constexpr Technique kTechniques[] = {Technique::shell, Technique::heap, Technique::treap};

std::string_view to_string(Technique t) noexcept;
std::optional<Technique> parse_technique(std::string_view s) noexcept;

enum class Distribution { uniform, sorted, reverse, few_unique };

std::string_view to_string(Distribution d) noexcept;
std::optional<Distribution> parse_distribution(std::string_view s) noexcept;

/// One benchmark run: one observation row over the three decision variables.
struct MetricsRecord {
    Technique technique = Technique::shell;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::int64_t time_ns = 0;
    std::int64_t mem_consumed_bits = 0;  // net bytes held after the sort call, times 8
    std::int64_t total_mem_kb = 0;       // peak live bytes during the call / 1024, rounded up

    friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

/// Runs of a single technique. Column order is (time_ns, mem_consumed_bits,
/// total_mem_kb).
struct MetricsMatrix {
    static constexpr std::size_t kVariables = 3;

    std::vector<MetricsRecord> rows;

    std::size_t size() const noexcept { return rows.size(); }
    double value(std::size_t row, std::size_t column) const;

    friend bool operator==(const MetricsMatrix&, const MetricsMatrix&) = default;
};

struct BenchConfig {
    std::vector<std::size_t> sizes = default_sizes();
    std::size_t reps = 10;
    std::uint64_t base_seed = 42;
    Distribution distribution = Distribution::uniform;
    std::size_t warmup = 2;
    /// Replace measured time_ns with a deterministic model (memory is still
    /// measured). Used for reproducible end-to-end runs.
    bool synthetic_time = false;

    /// Ten log-spaced sizes from 1e3 to 1e6.
    static std::vector<std::size_t> default_sizes();
    /// Throws std::invalid_argument on empty sizes, a zero size, or reps == 0.
    void validate() const;
};

std::vector<SortKey> generate_dataset(std::size_t n, std::uint64_t seed, Distribution dist);

/// Sorts `data` with `technique` under the allocation tracker and the
/// monotonic clock. The output is verified before the record is returned;
/// throws MeasurementError if it is not a sorted permutation of `data`.
MetricsRecord measure_run(Technique technique, std::span<const SortKey> data,
                          std::uint64_t seed = 0);

/// Seed for the (size_index, rep_index) cell.
std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t size_index, std::size_t rep_index) noexcept;

/// Deterministic stand-in for measured time: a per-technique n log n cost
/// with +-5% noise keyed on the seed.
std::int64_t synthetic_time_ns(Technique technique, std::uint64_t n, std::uint64_t seed) noexcept;

/// Every technique sees a bitwise-identical copy of each cell's data.
/// Measurements run strictly one after another.
std::map<Technique, MetricsMatrix> run_matrix(const BenchConfig& cfg);

}  // namespace sortlab
