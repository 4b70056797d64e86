#include "sortlab/bench.hpp"

#include "sortlab/alloc_tracker.hpp"
#include "sortlab/errors.hpp"
#include "sortlab/treap.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace sortlab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Priority seed for treap runs, kept distinct from the data seed.
constexpr std::uint64_t kTreapSalt = 0x7472656170ULL;

}  // namespace

std::string_view to_string(Technique t) noexcept {
    switch (t) {
        case Technique::shell: return "shell";
        case Technique::heap: return "heap";
        case Technique::treap: return "treap";
    }
    return "?";
}

std::optional<Technique> parse_technique(std::string_view s) noexcept {
    for (const Technique t : kTechniques) {
        if (to_string(t) == s) {
            return t;
        }
    }
    return std::nullopt;
}

std::string_view to_string(Distribution d) noexcept {
    switch (d) {
        case Distribution::uniform: return "uniform";
        case Distribution::sorted: return "sorted";
        case Distribution::reverse: return "reverse";
        case Distribution::few_unique: return "few_unique";
    }
    return "?";
}

std::optional<Distribution> parse_distribution(std::string_view s) noexcept {
    for (const Distribution d :
         {Distribution::uniform, Distribution::sorted, Distribution::reverse, Distribution::few_unique}) {
        if (to_string(d) == s) {
            return d;
        }
    }
    return std::nullopt;
}

double MetricsMatrix::value(std::size_t row, std::size_t column) const {
    const MetricsRecord& r = rows.at(row);
    switch (column) {
        case 0: return static_cast<double>(r.time_ns);
        case 1: return static_cast<double>(r.mem_consumed_bits);
        case 2: return static_cast<double>(r.total_mem_kb);
        default: throw std::out_of_range("metrics column " + std::to_string(column));
    }
}

std::vector<std::size_t> BenchConfig::default_sizes() {
    std::vector<std::size_t> sizes;
    for (int i = 0; i < 10; ++i) {
        sizes.push_back(static_cast<std::size_t>(std::llround(std::pow(10.0, 3.0 + i / 3.0))));
    }
    return sizes;
}

void BenchConfig::validate() const {
    if (sizes.empty()) {
        throw std::invalid_argument("sizes must not be empty");
    }
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t n) { return n == 0; })) {
        throw std::invalid_argument("sizes must all be >= 1");
    }
    if (reps == 0) {
        throw std::invalid_argument("reps must be >= 1");
    }
}

std::vector<SortKey> generate_dataset(std::size_t n, std::uint64_t seed, Distribution dist) {
    std::mt19937_64 rng(seed);
    std::vector<SortKey> out(n);
    switch (dist) {
        case Distribution::uniform:
        case Distribution::sorted:
        case Distribution::reverse:
            for (auto& v : out) {
                v = static_cast<SortKey>(rng());
            }
            if (dist == Distribution::sorted) {
                std::sort(out.begin(), out.end());
            } else if (dist == Distribution::reverse) {
                std::sort(out.begin(), out.end(), std::greater<>());
            }
            break;
        case Distribution::few_unique: {
            SortKey pool[16];
            for (auto& v : pool) {
                v = static_cast<SortKey>(rng());
            }
            for (auto& v : out) {
                v = pool[rng() % 16];
            }
            break;
        }
    }
    return out;
}

MetricsRecord measure_run(Technique technique, std::span<const SortKey> data, std::uint64_t seed) {
    using Clock = std::chrono::steady_clock;

    std::vector<SortKey> output;
    std::optional<Treap> treap;
    const std::uint64_t priority_seed = splitmix64(seed ^ kTreapSalt);

    AllocScope mem;
    const auto start = Clock::now();
    switch (technique) {
        case Technique::shell: output = shell_sort(data); break;
        case Technique::heap: output = heap_sort(data); break;
        case Technique::treap:
            // The treap is the sorted structure; it is torn down after the
            // measurement window, so its nodes count as memory consumed.
            treap.emplace(Treap::build(data, priority_seed));
            output = treap->in_order();
            break;
    }
    const auto stop = Clock::now();
    mem.stop();
    treap.reset();

    if (!verify_sorted_permutation(data, output)) {
        throw MeasurementError(std::string(to_string(technique)) + " sort produced an invalid result for n=" +
                               std::to_string(data.size()));
    }

    MetricsRecord rec;
    rec.technique = technique;
    rec.n = data.size();
    rec.seed = seed;
    rec.time_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    rec.mem_consumed_bits = mem.net_bytes() * 8;
    rec.total_mem_kb = (mem.peak_bytes() + 1023) / 1024;
    return rec;
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::size_t size_index, std::size_t rep_index) noexcept {
    return base_seed ^ splitmix64((static_cast<std::uint64_t>(size_index) << 32) | rep_index);
}

std::int64_t synthetic_time_ns(Technique technique, std::uint64_t n, std::uint64_t seed) noexcept {
    double per_op = 0.0;
    switch (technique) {
        case Technique::shell: per_op = 6.0; break;
        case Technique::heap: per_op = 9.0; break;
        case Technique::treap: per_op = 30.0; break;
    }
    const double nd = static_cast<double>(n);
    const double cost = per_op * nd * std::log2(nd + 2.0);
    const auto bits = splitmix64(seed ^ (static_cast<std::uint64_t>(technique) + 1) * 0x51ed27ULL);
    const double u = static_cast<double>(bits >> 11) * 0x1.0p-53;  // [0, 1)
    return static_cast<std::int64_t>(std::llround(cost * (0.95 + 0.10 * u)));
}

std::map<Technique, MetricsMatrix> run_matrix(const BenchConfig& cfg) {
    cfg.validate();
    std::map<Technique, MetricsMatrix> result;
    for (const Technique t : kTechniques) {
        result[t].rows.reserve(cfg.sizes.size() * cfg.reps);
    }

    if (cfg.warmup > 0) {
        const auto warm = generate_dataset(cfg.sizes.front(), cfg.base_seed, cfg.distribution);
        for (std::size_t w = 0; w < cfg.warmup; ++w) {
            for (const Technique t : kTechniques) {
                (void)measure_run(t, warm, cfg.base_seed);
            }
        }
    }

    for (std::size_t si = 0; si < cfg.sizes.size(); ++si) {
        for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
            const std::uint64_t seed = cell_seed(cfg.base_seed, si, rep);
            const std::vector<SortKey> data = generate_dataset(cfg.sizes[si], seed, cfg.distribution);
            for (const Technique t : kTechniques) {
                const std::vector<SortKey> copy = data;
                MetricsRecord rec = measure_run(t, copy, seed);
                if (cfg.synthetic_time) {
                    rec.time_ns = synthetic_time_ns(t, rec.n, seed);
                }
                result[t].rows.push_back(rec);
            }
        }
    }
    return result;
}

}  // namespace sortlab
