#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcn/geometry.hpp"
#include "pcn/grid.hpp"

namespace pcn {

/// One observed context prefix with its occurrence count and the counts of
/// each center symbol seen under it. Children are kept sorted by FrameKey.
struct CountNode {
    ContextKey key;
    std::int64_t n_occ = 0;
    std::vector<std::int64_t> center_counts;
    std::vector<CountNode> children;

    const CountNode* find_child(const FrameKey& frame) const;
    CountNode& child_for(const FrameKey& frame, int alphabet_size);

    friend bool operator==(const CountNode&, const CountNode&) = default;
};

struct CountConfig {
    int depth = 1;
    KeyMode mode = KeyMode::Count;
    BoundaryPolicy policy = BoundaryPolicy::interior_only();
    Symbol mask_substitute = 0;
    /// Worker count for the sharded build; 0 picks hardware concurrency.
    int threads = 1;
};

struct CountTree {
    CountNode root;
    int max_depth = 0;
    /// Number of evaluated centers.
    std::int64_t n_total = 0;
    /// Non-masked cells of the source grid (the |Lambda_n| reading of n).
    std::int64_t lattice_size = 0;
    KeyMode mode = KeyMode::Count;
    Alphabet alphabet;

    friend bool operator==(const CountTree&, const CountTree&) = default;
};

/// Empty tree (root only, zero counts) for the given configuration.
CountTree empty_count_tree(const Alphabet& alphabet, int depth, KeyMode mode);

/// Counts every valid center at the fixed depth: each center increments the
/// whole chain root -> D^1 -> ... -> D^depth. Throws EMPTY_SAMPLE when no
/// center qualifies.
CountTree build_count_tree(const Grid& grid, const CountConfig& config);

/// Same, restricted to an explicit list of centers (each must be valid).
CountTree build_count_tree(const Grid& grid, std::span<const Site> centers, const CountConfig& config);

/// Adds one center observation to the tree.
void add_observation(CountTree& tree, const ContextKey& key, Symbol center);

/// Node-wise sum. Throws MERGE_ERROR on depth/mode/alphabet mismatch.
CountTree merge_count_trees(const CountTree& a, const CountTree& b);

const CountNode* node_lookup(const CountTree& tree, const ContextKey& key);

/// Visits nodes depth-first in canonical order.
template <typename Fn>
void for_each_node(const CountNode& node, Fn&& fn) {
    fn(node);
    for (const auto& c : node.children) for_each_node(c, fn);
}

}  // namespace pcn
