#include "sortlab/alloc_tracker.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <new>

namespace {

std::atomic<std::int64_t> g_live{0};
std::atomic<std::int64_t> g_peak{0};
std::atomic<std::uint64_t> g_count{0};

// Keeps the returned pointer aligned for max_align_t.
constexpr std::size_t kHeader = alignof(std::max_align_t) > sizeof(std::size_t)
                                    ? alignof(std::max_align_t)
                                    : sizeof(std::size_t);

void note_alloc(std::size_t size) noexcept {
    const auto live = g_live.fetch_add(static_cast<std::int64_t>(size), std::memory_order_relaxed) +
                      static_cast<std::int64_t>(size);
    g_count.fetch_add(1, std::memory_order_relaxed);
    auto peak = g_peak.load(std::memory_order_relaxed);
    while (live > peak && !g_peak.compare_exchange_weak(peak, live, std::memory_order_relaxed)) {
    }
}

void* tracked_alloc(std::size_t size) noexcept {
    auto* raw = static_cast<unsigned char*>(std::malloc(size + kHeader));
    if (!raw) {
        return nullptr;
    }
    *reinterpret_cast<std::size_t*>(raw) = size;
    note_alloc(size);
    return raw + kHeader;
}

void tracked_free(void* p) noexcept {
    if (!p) {
        return;
    }
    auto* raw = static_cast<unsigned char*>(p) - kHeader;
    const auto size = *reinterpret_cast<std::size_t*>(raw);
    g_live.fetch_sub(static_cast<std::int64_t>(size), std::memory_order_relaxed);
    std::free(raw);
}

void* tracked_alloc_or_throw(std::size_t size) {
    for (;;) {
        if (void* p = tracked_alloc(size == 0 ? 1 : size)) {
            return p;
        }
        auto handler = std::get_new_handler();
        if (!handler) {
            throw std::bad_alloc();
        }
        handler();
    }
}

}  // namespace

void* operator new(std::size_t size) { return tracked_alloc_or_throw(size); }
void* operator new[](std::size_t size) { return tracked_alloc_or_throw(size); }
void* operator new(std::size_t size, const std::nothrow_t&) noexcept {
    return tracked_alloc(size == 0 ? 1 : size);
}
void* operator new[](std::size_t size, const std::nothrow_t&) noexcept {
    return tracked_alloc(size == 0 ? 1 : size);
}
void operator delete(void* p) noexcept { tracked_free(p); }
void operator delete[](void* p) noexcept { tracked_free(p); }
void operator delete(void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete[](void* p, std::size_t) noexcept { tracked_free(p); }
void operator delete(void* p, const std::nothrow_t&) noexcept { tracked_free(p); }
void operator delete[](void* p, const std::nothrow_t&) noexcept { tracked_free(p); }

namespace sortlab {

AllocSnapshot alloc_snapshot() noexcept {
    return {g_live.load(std::memory_order_relaxed), g_count.load(std::memory_order_relaxed)};
}

AllocScope::AllocScope() noexcept
    : base_live_(g_live.load(std::memory_order_relaxed)),
      base_count_(g_count.load(std::memory_order_relaxed)) {
    g_peak.store(base_live_, std::memory_order_relaxed);
}

void AllocScope::stop() noexcept {
    if (stopped_) {
        return;
    }
    end_live_ = g_live.load(std::memory_order_relaxed);
    end_peak_ = g_peak.load(std::memory_order_relaxed);
    end_count_ = g_count.load(std::memory_order_relaxed);
    stopped_ = true;
}

std::int64_t AllocScope::net_bytes() const noexcept {
    const auto live = stopped_ ? end_live_ : g_live.load(std::memory_order_relaxed);
    return std::max<std::int64_t>(0, live - base_live_);
}

std::int64_t AllocScope::peak_bytes() const noexcept {
    const auto peak = stopped_ ? end_peak_ : g_peak.load(std::memory_order_relaxed);
    return std::max<std::int64_t>(0, peak - base_live_);
}

std::uint64_t AllocScope::allocations() const noexcept {
    return (stopped_ ? end_count_ : g_count.load(std::memory_order_relaxed)) - base_count_;
}

}  // namespace sortlab
