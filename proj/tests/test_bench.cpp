#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sortlab/alloc_tracker.hpp"
#include "sortlab/bench.hpp"
#include "sortlab/errors.hpp"
#include "sortlab/metrics_csv.hpp"
#include "sortlab/treap.hpp"

#include <algorithm>
#include <memory>
#include <random>
#include <sstream>

using namespace sortlab;

TEST_CASE("allocation scope tracks net and peak bytes") {
    AllocScope scope;
    auto keep = std::make_unique<char[]>(1000);
    {
        auto temp = std::make_unique<char[]>(5000);
        temp[0] = 1;
    }
    scope.stop();
    keep[0] = 1;
    CHECK(scope.net_bytes() == 1000);
    CHECK(scope.peak_bytes() == 6000);
    CHECK(scope.allocations() == 2);

    AllocScope freeing;
    keep.reset();
    freeing.stop();
    CHECK(freeing.net_bytes() == 0);  // clamped
}

TEST_CASE("generate_dataset") {
    CHECK(generate_dataset(0, 1, Distribution::uniform).empty());
    const auto s = generate_dataset(5, 9, Distribution::sorted);
    CHECK(s.size() == 5);
    CHECK(std::is_sorted(s.begin(), s.end()));
    const auto r = generate_dataset(100, 9, Distribution::reverse);
    CHECK(std::is_sorted(r.rbegin(), r.rend()));
    CHECK(generate_dataset(1000, 42, Distribution::uniform) == generate_dataset(1000, 42, Distribution::uniform));
    CHECK(generate_dataset(1000, 42, Distribution::uniform) != generate_dataset(1000, 43, Distribution::uniform));

    auto few = generate_dataset(5000, 3, Distribution::few_unique);
    std::sort(few.begin(), few.end());
    CHECK(std::unique(few.begin(), few.end()) - few.begin() <= 16);

    // full 64-bit range: some negatives and some values beyond 32 bits
    const auto u = generate_dataset(1000, 1, Distribution::uniform);
    CHECK(std::any_of(u.begin(), u.end(), [](SortKey k) { return k < 0; }));
    CHECK(std::any_of(u.begin(), u.end(), [](SortKey k) { return k > (SortKey{1} << 40); }));
}

TEST_CASE("measure_run on empty input") {
    const auto rec = measure_run(Technique::shell, std::vector<SortKey>{});
    CHECK(rec.n == 0);
    CHECK(rec.time_ns >= 0);
    CHECK(rec.technique == Technique::shell);
}

TEST_CASE("measure_run counts treap nodes as consumed memory") {
    const auto data = generate_dataset(1000, 42, Distribution::uniform);
    const auto rec = measure_run(Technique::treap, data, 42);
    // node arena plus the output array
    const std::int64_t node_bits = 1000 * static_cast<std::int64_t>(sizeof(Treap::Node)) * 8;
    CHECK(rec.mem_consumed_bits >= node_bits);
    CHECK(rec.mem_consumed_bits == node_bits + 1000 * 64);
    CHECK(rec.total_mem_kb * 1024 * 8 >= rec.mem_consumed_bits);
}

TEST_CASE("measure_run memory for in-place sorts is the output array") {
    const auto data = generate_dataset(1000, 1, Distribution::uniform);
    for (const Technique t : {Technique::shell, Technique::heap}) {
        const auto rec = measure_run(t, data);
        CHECK(rec.mem_consumed_bits == 1000 * 64);
        CHECK(rec.total_mem_kb >= 8);
    }
}

TEST_CASE("measure_run memory is deterministic") {
    const auto data = generate_dataset(5000, 8, Distribution::uniform);
    for (const Technique t : kTechniques) {
        const auto a = measure_run(t, data, 8);
        const auto b = measure_run(t, data, 8);
        CHECK(a.mem_consumed_bits == b.mem_consumed_bits);
        CHECK(a.total_mem_kb == b.total_mem_kb);
    }
}

TEST_CASE("heap sort time grows with n (median of 5)") {
    auto median_time = [](std::size_t n) {
        std::vector<std::int64_t> times;
        for (int rep = 0; rep < 5; ++rep) {
            const auto data = generate_dataset(n, 100 + rep, Distribution::uniform);
            times.push_back(measure_run(Technique::heap, data).time_ns);
        }
        std::nth_element(times.begin(), times.begin() + 2, times.end());
        return times[2];
    };
    CHECK(median_time(100000) > median_time(1000));
}

TEST_CASE("bench config validation and defaults") {
    BenchConfig cfg;
    CHECK(cfg.sizes.size() == 10);
    CHECK(cfg.sizes.front() == 1000);
    CHECK(cfg.sizes.back() == 1000000);
    CHECK(std::is_sorted(cfg.sizes.begin(), cfg.sizes.end()));
    CHECK(cfg.reps == 10);
    CHECK_NOTHROW(cfg.validate());
    cfg.sizes = {};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.sizes = {10, 0};
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.sizes = {10};
    cfg.reps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("run_matrix row counts and seeds") {
    BenchConfig cfg;
    cfg.sizes = {10};
    cfg.reps = 1;
    cfg.warmup = 0;
    auto one = run_matrix(cfg);
    CHECK(one.size() == 3);
    for (const auto& [t, m] : one) {
        CHECK(m.size() == 1);
        CHECK(m.rows[0].technique == t);
    }

    cfg.sizes = {10, 100};
    cfg.reps = 3;
    cfg.warmup = 1;
    const auto six = run_matrix(cfg);
    for (const auto& [t, m] : six) {
        REQUIRE(m.size() == 6);
        CHECK(m.rows[0].n == 10);
        CHECK(m.rows[5].n == 100);
        CHECK(m.rows[4].seed == cell_seed(cfg.base_seed, 1, 1));
    }
    // fairness: same cell, same seed across techniques
    for (std::size_t i = 0; i < 6; ++i) {
        CHECK(six.at(Technique::shell).rows[i].seed == six.at(Technique::treap).rows[i].seed);
    }
}

TEST_CASE("run_matrix memory columns are deterministic across runs") {
    BenchConfig cfg;
    cfg.sizes = {1000, 5000, 20000};
    cfg.reps = 2;
    const auto a = run_matrix(cfg);
    const auto b = run_matrix(cfg);
    for (const Technique t : kTechniques) {
        for (std::size_t i = 0; i < a.at(t).size(); ++i) {
            CHECK(a.at(t).rows[i].mem_consumed_bits == b.at(t).rows[i].mem_consumed_bits);
            CHECK(a.at(t).rows[i].total_mem_kb == b.at(t).rows[i].total_mem_kb);
        }
    }
}

TEST_CASE("synthetic time is deterministic and grows with n") {
    CHECK(synthetic_time_ns(Technique::heap, 1000, 5) == synthetic_time_ns(Technique::heap, 1000, 5));
    CHECK(synthetic_time_ns(Technique::heap, 100000, 5) > synthetic_time_ns(Technique::heap, 1000, 5));
    BenchConfig cfg;
    cfg.sizes = {100, 1000};
    cfg.reps = 2;
    cfg.synthetic_time = true;
    CHECK(run_matrix(cfg) == run_matrix(cfg));
}

TEST_CASE("metrics CSV round trip") {
    MetricsMatrix empty;
    std::stringstream buf;
    write_metrics_csv(empty, buf);
    CHECK(buf.str() == std::string(kMetricsCsvHeader) + "\n");
    CHECK(read_metrics_csv(buf).rows.empty());

    MetricsMatrix one;
    one.rows.push_back({Technique::treap, 1000, 0xffffffffffffffffULL, 123456, 448000, 32});
    std::stringstream buf2;
    write_metrics_csv(one, buf2);
    CHECK(read_metrics_csv(buf2) == one);

    std::mt19937_64 rng(77);
    for (int i = 0; i < 20; ++i) {
        MetricsMatrix m;
        const Technique t = kTechniques[i % 3];
        for (std::size_t r = 0, rows = rng() % 50; r < rows; ++r) {
            m.rows.push_back({t, rng() >> 20, rng(), static_cast<std::int64_t>(rng() >> 1),
                              static_cast<std::int64_t>(rng() >> 1), static_cast<std::int64_t>(rng() >> 30)});
        }
        std::stringstream s;
        write_metrics_csv(m, s);
        CHECK(read_metrics_csv(s) == m);
    }
}

TEST_CASE("metrics CSV format errors carry line numbers") {
    auto line_of = [](const std::string& text) -> std::size_t {
        std::istringstream in(text);
        try {
            read_metrics_csv(in);
        } catch (const FormatError& e) {
            return e.line();
        }
        return 0;
    };
    const std::string header = std::string(kMetricsCsvHeader) + "\n";
    CHECK(line_of(header + "heap,10,1,abc,80,1\n") == 2);
    CHECK(line_of(header + "heap,10,1,5,80,1\nheap,10,1,5,80\n") == 3);
    CHECK(line_of(header + "bubble,10,1,5,80,1\n") == 2);
    CHECK(line_of(header + "heap,10,1,5,80,1\ntreap,10,1,5,80,1\n") == 3);
    CHECK(line_of(header + "heap,10,1,-5,80,1\n") == 2);
    CHECK(line_of("time_ns,n\n") == 1);
    CHECK(line_of("") == 1);
    CHECK_THROWS_AS(read_metrics_csv(std::filesystem::path("/nonexistent/metrics.csv")), IoError);
}
