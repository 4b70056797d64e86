#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sortlab {

using SortKey = std::int64_t;

/// Strictly decreasing positive step sizes ending in 1.
class GapSequence {
public:
    /// Throws std::invalid_argument when the sequence is empty, not strictly
    /// decreasing, contains a zero, or does not end in 1.
    explicit GapSequence(std::vector<std::size_t> gaps);

    /// Shell's original halving sequence n/2, n/4, ..., 1. For n < 2 the
    /// sequence is just {1}.
    static GapSequence halving(std::size_t n);

    std::span<const std::size_t> gaps() const noexcept { return gaps_; }

private:
    std::vector<std::size_t> gaps_;
};

/// Called after each completed h-sorting pass with the array state and h.
using GapPassHook = std::function<void(std::span<const SortKey>, std::size_t gap)>;
/// Called once after the max-heap has been built, before extraction starts.
using HeapBuiltHook = std::function<void(std::span<const SortKey>)>;

std::vector<SortKey> shell_sort(std::span<const SortKey> input, const GapSequence& gaps,
                                const GapPassHook& on_pass = {});
/// Uses GapSequence::halving(input.size()).
std::vector<SortKey> shell_sort(std::span<const SortKey> input);

/// In-place heapsort on a copy of `input`: buildheap, then repeated
/// swap-root-to-end and downheap.
std::vector<SortKey> heap_sort(std::span<const SortKey> input, const HeapBuiltHook& on_built = {});

/// Restores the max-heap property below `root` within slots[0, heap_len).
void downheap(std::span<SortKey> slots, std::size_t root, std::size_t heap_len) noexcept;
void build_max_heap(std::span<SortKey> slots) noexcept;
bool is_max_heap(std::span<const SortKey> slots) noexcept;

/// Inserts every key into a treap with priorities from a generator seeded by
/// `rng_seed`, then emits the in-order traversal.
std::vector<SortKey> treap_sort(std::span<const SortKey> input, std::uint64_t rng_seed);

/// True iff `output` is non-decreasing and a permutation of `input`.
bool verify_sorted_permutation(std::span<const SortKey> input, std::span<const SortKey> output);

}  // namespace sortlab
