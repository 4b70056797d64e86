#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sortlab/sorting.hpp"

namespace sortlab {

// Randomized BST over SortKey. Nodes live in a contiguous arena and refer to
// each other by index.
//
// Invariants (checked by check_invariants()):
//   - keys: left subtree <= node < right subtree, so duplicates sit on the left
//   - priorities: parent >= each child (ties allowed)
//   - size() equals the number of nodes reachable from the root
//
// Insertion and erasure recurse along one root-to-leaf path, so stack depth is
// the tree height (expected O(log n) with random priorities).
class Treap {
public:
    using Index = std::uint32_t;
    static constexpr Index npos = static_cast<Index>(-1);

    struct Node {
        SortKey key;
        std::uint64_t priority;
        Index left = npos;
        Index right = npos;
    };

    Treap() = default;

    /// Inserts all keys with priorities drawn from std::mt19937_64(rng_seed).
    /// The arena is sized up front, so this performs one node allocation.
    static Treap build(std::span<const SortKey> keys, std::uint64_t rng_seed);

    void reserve(std::size_t n) { nodes_.reserve(n); }

    /// BST insert followed by rotations that restore the heap order. On an
    /// equal key the new node goes left unless its priority is higher, in which
    /// case it goes right and is guaranteed to rotate above the equal node.
    void insert(SortKey key, std::uint64_t priority);

    /// Removes one node holding `key` by rotating it down to a leaf.
    bool erase(SortKey key);

    bool contains(SortKey key) const noexcept;

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    std::optional<Index> root() const noexcept;
    const Node& node(Index i) const { return nodes_.at(i); }

    std::vector<SortKey> in_order() const;

    bool check_invariants() const;
    /// Mean depth over all nodes, root at depth 0. Zero for an empty treap.
    double mean_depth() const;
    std::size_t height() const;

private:
    Index insert_at(Index t, Index fresh);
    Index erase_at(Index t, SortKey key, bool& removed);
    Index rotate_right(Index t) noexcept;
    Index rotate_left(Index t) noexcept;
    Index allocate(SortKey key, std::uint64_t priority);

    std::vector<Node> nodes_;
    Index root_ = npos;
    Index free_ = npos;  // slots released by erase, chained through Node::left
    std::size_t size_ = 0;
};

}  // namespace sortlab
