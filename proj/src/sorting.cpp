#include "sortlab/sorting.hpp"

#include "sortlab/treap.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace sortlab {

GapSequence::GapSequence(std::vector<std::size_t> gaps) : gaps_(std::move(gaps)) {
    if (gaps_.empty() || gaps_.back() != 1) {
        throw std::invalid_argument("gap sequence must end in 1");
    }
    for (std::size_t i = 1; i < gaps_.size(); ++i) {
        if (gaps_[i] >= gaps_[i - 1]) {
            throw std::invalid_argument("gap sequence must be strictly decreasing");
        }
    }
}

GapSequence GapSequence::halving(std::size_t n) {
    std::vector<std::size_t> gaps;
    for (std::size_t h = n / 2; h > 1; h /= 2) {
        gaps.push_back(h);
    }
    gaps.push_back(1);
    return GapSequence(std::move(gaps));
}

std::vector<SortKey> shell_sort(std::span<const SortKey> input, const GapSequence& gaps,
                                const GapPassHook& on_pass) {
    std::vector<SortKey> a(input.begin(), input.end());
    const std::size_t n = a.size();
    for (const std::size_t h : gaps.gaps()) {
        // gapped insertion sort; with h == 1 this is plain insertion sort
        for (std::size_t i = h; i < n; ++i) {
            const SortKey v = a[i];
            std::size_t j = i;
            while (j >= h && a[j - h] > v) {
                a[j] = a[j - h];
                j -= h;
            }
            a[j] = v;
        }
        if (on_pass) {
            on_pass(a, h);
        }
    }
    return a;
}

std::vector<SortKey> shell_sort(std::span<const SortKey> input) {
    return shell_sort(input, GapSequence::halving(input.size()));
}

void downheap(std::span<SortKey> slots, std::size_t root, std::size_t heap_len) noexcept {
    const SortKey v = slots[root];
    std::size_t i = root;
    for (;;) {
        std::size_t child = 2 * i + 1;
        if (child >= heap_len) {
            break;
        }
        if (child + 1 < heap_len && slots[child + 1] > slots[child]) {
            ++child;
        }
        if (slots[child] <= v) {
            break;
        }
        slots[i] = slots[child];
        i = child;
    }
    slots[i] = v;
}

void build_max_heap(std::span<SortKey> slots) noexcept {
    const std::size_t n = slots.size();
    for (std::size_t i = n / 2; i-- > 0;) {
        downheap(slots, i, n);
    }
}

bool is_max_heap(std::span<const SortKey> slots) noexcept {
    for (std::size_t i = 1; i < slots.size(); ++i) {
        if (slots[(i - 1) / 2] < slots[i]) {
            return false;
        }
    }
    return true;
}

std::vector<SortKey> heap_sort(std::span<const SortKey> input, const HeapBuiltHook& on_built) {
    std::vector<SortKey> a(input.begin(), input.end());
    std::span<SortKey> slots(a);
    build_max_heap(slots);
    if (on_built) {
        on_built(slots);
    }
    for (std::size_t len = a.size(); len > 1; --len) {
        std::swap(a[0], a[len - 1]);
        downheap(slots, 0, len - 1);
    }
    return a;
}

std::vector<SortKey> treap_sort(std::span<const SortKey> input, std::uint64_t rng_seed) {
    return Treap::build(input, rng_seed).in_order();
}

bool verify_sorted_permutation(std::span<const SortKey> input, std::span<const SortKey> output) {
    if (input.size() != output.size() || !std::is_sorted(output.begin(), output.end())) {
        return false;
    }
    std::vector<SortKey> expected(input.begin(), input.end());
    std::sort(expected.begin(), expected.end());
    return std::equal(expected.begin(), expected.end(), output.begin());
}

}  // namespace sortlab
