#pragma once

#include <cstdint>

namespace sortlab {

// Heap accounting backed by replacement global operator new/delete.
// Only requested byte counts are tracked (allocator headers and padding are
// not), so figures are deterministic for a deterministic allocation sequence.
// Not safe for concurrent measurement scopes.

struct AllocSnapshot {
    std::int64_t live_bytes = 0;       // currently outstanding tracked bytes
    std::uint64_t alloc_count = 0;     // operator new calls since process start
};

AllocSnapshot alloc_snapshot() noexcept;

/// Measures net and peak heap usage between construction and `stop()`.
class AllocScope {
public:
    AllocScope() noexcept;

    /// Freezes the counters. Idempotent.
    void stop() noexcept;

    /// Bytes allocated minus bytes freed inside the scope, clamped at 0.
    std::int64_t net_bytes() const noexcept;
    /// Highest live-byte excursion above the starting level.
    std::int64_t peak_bytes() const noexcept;
    std::uint64_t allocations() const noexcept;

private:
    std::int64_t base_live_;
    std::uint64_t base_count_;
    std::int64_t end_live_ = 0;
    std::int64_t end_peak_ = 0;
    std::uint64_t end_count_ = 0;
    bool stopped_ = false;
};

}  // namespace sortlab
