#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pcn/grid.hpp"

namespace pcn {

/// Count mode identifies a frame by its per-symbol counts; position mode by the
/// full symbol sequence around the ring.
enum class KeyMode { Count, Position };

std::string to_string(KeyMode mode);
KeyMode parse_key_mode(const std::string& text);

struct Offset {
    int dr = 0;
    int dc = 0;
    friend bool operator==(const Offset&, const Offset&) = default;
};

/// Configuration of a single frame (the ring at Chebyshev distance `order`).
/// Count payload: |A| entries summing to 8*order. Position payload: 8*order
/// symbols in frame_offsets() order.
struct FrameKey {
    int order = 1;
    KeyMode mode = KeyMode::Count;
    std::vector<std::uint16_t> payload;

    friend auto operator<=>(const FrameKey&, const FrameKey&) = default;
    friend bool operator==(const FrameKey&, const FrameKey&) = default;
};

/// Concatenation of frames of orders 1..j. The empty key is the root.
struct ContextKey {
    KeyMode mode = KeyMode::Count;
    std::vector<FrameKey> frames;

    static ContextKey root(KeyMode mode) { return {mode, {}}; }

    int order() const noexcept { return static_cast<int>(frames.size()); }
    bool is_root() const noexcept { return frames.empty(); }
    /// Key of the ancestor holding the first `order` frames.
    ContextKey prefix(int order) const;
    ContextKey child(FrameKey frame) const;

    friend auto operator<=>(const ContextKey&, const ContextKey&) = default;
    friend bool operator==(const ContextKey&, const ContextKey&) = default;
};

struct FrameKeyHash {
    std::size_t operator()(const FrameKey& key) const noexcept;
};
struct ContextKeyHash {
    std::size_t operator()(const ContextKey& key) const noexcept;
};

/// The 8j offsets at Chebyshev distance j, scanned row-major over the ring:
/// top row left to right, then the two side cells of each middle row, then
/// the bottom row.
std::vector<Offset> frame_offsets(int j);

/// Same as frame_offsets() but served from a table for small orders.
const std::vector<Offset>& cached_frame_offsets(int j);

/// |D^k| = (2k+1)^2 - 1.
std::int64_t neighborhood_size(int k);

/// Number of distinct frame configurations of order j. Throws COUNT_OVERFLOW
/// when the value does not fit in 64 bits.
std::uint64_t num_classes(int j, int alphabet_size, KeyMode mode);

/// Leaf count of the complete tree of the given depth.
std::uint64_t max_leaves(int depth, int alphabet_size, KeyMode mode);

/// All count payloads of order j in canonical (lexicographic) order.
std::vector<std::vector<std::uint16_t>> count_classes(int j, int alphabet_size);

/// Reads neighborhood symbols of a grid under a boundary policy. Masked cells
/// read as `mask_substitute`.
class NeighborhoodReader {
public:
    NeighborhoodReader(const Grid& grid, BoundaryPolicy policy, Symbol mask_substitute = 0)
        : grid_(&grid), policy_(policy), substitute_(mask_substitute) {}

    Symbol read(int r, int c) const {
        if (policy_.mode == BoundaryPolicy::Mode::Mirror) {
            r = reflect_index(r, grid_->rows());
            c = reflect_index(c, grid_->cols());
        }
        Symbol s = grid_->at(r, c);
        return s == kMasked ? substitute_ : s;
    }

    FrameKey frame(Site site, int j, KeyMode mode) const;

    const Grid& grid() const noexcept { return *grid_; }
    const BoundaryPolicy& policy() const noexcept { return policy_; }

private:
    const Grid* grid_;
    BoundaryPolicy policy_;
    Symbol substitute_;
};

/// Frames 1..depth around `site`. Throws OUT_OF_BOUNDS unless the site is a
/// valid center for (depth, policy).
ContextKey extract_context(const Grid& grid, Site site, int depth, KeyMode mode,
                           const BoundaryPolicy& policy, Symbol mask_substitute = 0);

/// True iff `shorter`'s frames are a prefix of `longer`'s. Throws MODE_ERROR
/// when the modes differ.
bool is_suffix(const ContextKey& shorter, const ContextKey& longer);

/// Count mode: "1:8,0|2:16,0"; position mode: "1:0 1 0 0 0 0 0 1|2:..."; root: "".
std::string key_to_string(const ContextKey& key);
ContextKey key_from_string(const std::string& text, KeyMode mode, int alphabet_size);

}  // namespace pcn
