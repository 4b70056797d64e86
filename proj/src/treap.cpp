#include "sortlab/treap.hpp"

#include <limits>
#include <random>
#include <stdexcept>
#include <utility>

namespace sortlab {

Treap Treap::build(std::span<const SortKey> keys, std::uint64_t rng_seed) {
    Treap t;
    t.reserve(keys.size());
    std::mt19937_64 rng(rng_seed);
    for (const SortKey k : keys) {
        t.insert(k, rng());
    }
    return t;
}

std::optional<Treap::Index> Treap::root() const noexcept {
    if (root_ == npos) {
        return std::nullopt;
    }
    return root_;
}

Treap::Index Treap::allocate(SortKey key, std::uint64_t priority) {
    if (free_ != npos) {
        const Index i = free_;
        free_ = nodes_[i].left;
        nodes_[i] = Node{key, priority};
        return i;
    }
    if (nodes_.size() >= npos) {
        throw std::length_error("treap arena exhausted");
    }
    nodes_.push_back(Node{key, priority});
    return static_cast<Index>(nodes_.size() - 1);
}

Treap::Index Treap::rotate_right(Index t) noexcept {
    const Index l = nodes_[t].left;
    nodes_[t].left = nodes_[l].right;
    nodes_[l].right = t;
    return l;
}

Treap::Index Treap::rotate_left(Index t) noexcept {
    const Index r = nodes_[t].right;
    nodes_[t].right = nodes_[r].left;
    nodes_[r].left = t;
    return r;
}

void Treap::insert(SortKey key, std::uint64_t priority) {
    const Index fresh = allocate(key, priority);
    root_ = insert_at(root_, fresh);
    ++size_;
}

Treap::Index Treap::insert_at(Index t, Index fresh) {
    if (t == npos) {
        return fresh;
    }
    const Node& x = nodes_[fresh];
    const Node& n = nodes_[t];
    const bool go_left = x.key < n.key || (x.key == n.key && x.priority <= n.priority);
    if (go_left) {
        const Index child = insert_at(nodes_[t].left, fresh);
        nodes_[t].left = child;
        if (nodes_[child].priority > nodes_[t].priority) {
            t = rotate_right(t);
        }
    } else {
        const Index child = insert_at(nodes_[t].right, fresh);
        nodes_[t].right = child;
        if (nodes_[child].priority > nodes_[t].priority) {
            t = rotate_left(t);
        }
    }
    return t;
}

bool Treap::erase(SortKey key) {
    bool removed = false;
    root_ = erase_at(root_, key, removed);
    if (removed) {
        --size_;
    }
    return removed;
}

Treap::Index Treap::erase_at(Index t, SortKey key, bool& removed) {
    if (t == npos) {
        return npos;
    }
    Node& n = nodes_[t];
    if (key < n.key) {
        n.left = erase_at(n.left, key, removed);
        return t;
    }
    if (key > n.key) {
        n.right = erase_at(n.right, key, removed);
        return t;
    }
    if (n.left == npos || n.right == npos) {
        const Index child = n.left == npos ? n.right : n.left;
        n.left = free_;
        n.right = npos;
        free_ = t;
        removed = true;
        return child;
    }
    // rotate the higher-priority child up, then continue below it
    if (nodes_[n.left].priority > nodes_[n.right].priority) {
        const Index up = rotate_right(t);
        nodes_[up].right = erase_at(t, key, removed);
        return up;
    }
    const Index up = rotate_left(t);
    nodes_[up].left = erase_at(t, key, removed);
    return up;
}

bool Treap::contains(SortKey key) const noexcept {
    Index t = root_;
    while (t != npos) {
        const Node& n = nodes_[t];
        if (key == n.key) {
            return true;
        }
        t = key < n.key ? n.left : n.right;
    }
    return false;
}

namespace {

template <typename Visit>
void walk_in_order(const std::vector<Treap::Node>& nodes, Treap::Index t, Visit& visit) {
    while (t != Treap::npos) {
        walk_in_order(nodes, nodes[t].left, visit);
        visit(nodes[t]);
        t = nodes[t].right;
    }
}

struct WalkResult {
    bool ok = true;
    std::size_t count = 0;
    std::size_t depth_sum = 0;
    std::size_t height = 0;
};

// Checks the subtree at t against the open key bounds (lo, hi] inherited from
// its ancestors: keys must satisfy lo < key <= hi.
void check_subtree(const std::vector<Treap::Node>& nodes, Treap::Index t, std::size_t depth,
                   std::optional<SortKey> lo, std::optional<SortKey> hi, WalkResult& out) {
    if (t == Treap::npos || !out.ok) {
        return;
    }
    if (out.count >= nodes.size()) {
        out.ok = false;  // cycle
        return;
    }
    const Treap::Node& n = nodes[t];
    ++out.count;
    out.depth_sum += depth;
    out.height = std::max(out.height, depth + 1);
    if ((lo && !(*lo < n.key)) || (hi && !(n.key <= *hi))) {
        out.ok = false;
        return;
    }
    for (const Treap::Index c : {n.left, n.right}) {
        if (c != Treap::npos && nodes[c].priority > n.priority) {
            out.ok = false;
            return;
        }
    }
    check_subtree(nodes, n.left, depth + 1, lo, n.key, out);
    check_subtree(nodes, n.right, depth + 1, n.key, hi, out);
}

}  // namespace

std::vector<SortKey> Treap::in_order() const {
    std::vector<SortKey> out;
    out.reserve(size_);
    auto visit = [&out](const Node& n) { out.push_back(n.key); };
    walk_in_order(nodes_, root_, visit);
    return out;
}

bool Treap::check_invariants() const {
    WalkResult r;
    check_subtree(nodes_, root_, 0, std::nullopt, std::nullopt, r);
    return r.ok && r.count == size_;
}

double Treap::mean_depth() const {
    WalkResult r;
    check_subtree(nodes_, root_, 0, std::nullopt, std::nullopt, r);
    return r.count == 0 ? 0.0 : static_cast<double>(r.depth_sum) / static_cast<double>(r.count);
}

std::size_t Treap::height() const {
    WalkResult r;
    check_subtree(nodes_, root_, 0, std::nullopt, std::nullopt, r);
    return r.height;
}

}  // namespace sortlab
