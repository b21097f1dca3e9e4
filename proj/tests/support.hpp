#pragma once

// Shared fixtures for the unit and acceptance suites: truth models, grid
// builders and brute-force oracles that do not go through the library's
// counting code.

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "pcn/bootstrap.hpp"
#include "pcn/counting.hpp"
#include "pcn/geometry.hpp"
#include "pcn/grid.hpp"
#include "pcn/sampler.hpp"
#include "pcn/selection.hpp"

namespace pcn::testing {

inline Alphabet binary() { return Alphabet({"white", "black"}); }

inline FrameKey count_frame(int order, int black) {
    return FrameKey{order, KeyMode::Count,
                    {static_cast<std::uint16_t>(8 * order - black), static_cast<std::uint16_t>(black)}};
}

/// Binary count-mode key from black counts per frame, e.g. {3, 10}.
inline ContextKey count_key(std::vector<int> blacks) {
    ContextKey k = ContextKey::root(KeyMode::Count);
    for (std::size_t j = 0; j < blacks.size(); ++j) k.frames.push_back(count_frame(static_cast<int>(j) + 1, blacks[j]));
    return k;
}

inline PcnNode binary_leaf(std::vector<int> blacks, double p_black) {
    return PcnNode{count_key(std::move(blacks)), 0, {}, {1.0 - p_black, p_black}};
}

/// Truth of the variable-neighborhood simulation: six first-order leaves and
/// the 3-, 4- and 5-black first frames expanded into all 17 second frames.
inline Pcn sim1_truth() {
    Pcn pcn;
    pcn.alphabet = binary();
    pcn.mode = KeyMode::Count;
    const std::map<int, double> first = {{0, 0.3100}, {1, 0.3543}, {2, 0.4013},
                                         {6, 0.5987}, {7, 0.6457}, {8, 0.6900}};
    const std::vector<double> logistic_steps = {0.1419, 0.1680, 0.1978, 0.2315, 0.2689, 0.3100, 0.3543,
                                                0.4013, 0.4502, 0.5000, 0.5498, 0.5987, 0.6457, 0.6900,
                                                0.7311, 0.7685, 0.8022, 0.8320, 0.8581};
    for (int k = 0; k <= 8; ++k) {
        if (first.count(k)) {
            pcn.leaves.push_back(binary_leaf({k}, first.at(k)));
        } else {
            // k = 3, 4, 5 shift the table by one step each.
            for (int s = 0; s <= 16; ++s) {
                pcn.leaves.push_back(binary_leaf({k, s}, logistic_steps[static_cast<std::size_t>(s + k - 3)]));
            }
        }
    }
    return pcn;
}

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// Complete second-order truth: all 9 x 17 = 153 leaves.
inline Pcn sim2_truth(double first_slope = 0.2, double second_slope = 0.2) {
    Pcn pcn;
    pcn.alphabet = binary();
    pcn.mode = KeyMode::Count;
    for (int k = 0; k <= 8; ++k) {
        for (int s = 0; s <= 16; ++s) {
            pcn.leaves.push_back(binary_leaf({k, s}, logistic(first_slope * (k - 4) + second_slope * (s - 8))));
        }
    }
    return pcn;
}

/// Two-symbol fire model: every first frame with at least one fire is a
/// context; the fire-free first frame is expanded into its second frames
/// 0..14 (15 and 16 fall back to the expanded node's law).
inline Pcn fire_like_truth() {
    Pcn pcn;
    pcn.alphabet = Alphabet({"notfire", "fire"});
    pcn.mode = KeyMode::Count;
    const std::vector<double> first = {0.0431, 0.1230, 0.2620, 0.5260, 0.8046, 0.8904, 0.9634, 0.9960};
    for (int k = 1; k <= 8; ++k) pcn.leaves.push_back(binary_leaf({k}, first[static_cast<std::size_t>(k - 1)]));
    const std::vector<double> second = {0.0002, 0.0075, 0.0078, 0.0112, 0.0094, 0.0162};
    for (int s = 0; s <= 14; ++s) {
        pcn.leaves.push_back(binary_leaf({0, s}, s < 6 ? second[static_cast<std::size_t>(s)] : 0.0));
    }
    pcn.internal.push_back(PcnNode{count_key({0}), 0, {}, {0.999, 0.001}});
    return pcn;
}

inline Pcn iid_model(double p_black) {
    Pcn pcn;
    pcn.alphabet = binary();
    pcn.mode = KeyMode::Count;
    pcn.leaves.push_back(PcnNode{ContextKey::root(KeyMode::Count), 0, {}, {1.0 - p_black, p_black}});
    return pcn;
}

inline Grid random_grid(int rows, int cols, double p_black, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Symbol> cells(static_cast<std::size_t>(rows * cols));
    for (auto& c : cells) c = uniform01(rng) < p_black ? 1 : 0;
    return Grid(rows, cols, binary(), std::move(cells));
}

/// Checkerboard with each cell flipped with probability `noise`.
inline Grid noisy_checkerboard(int rows, int cols, double noise, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Symbol> cells(static_cast<std::size_t>(rows * cols));
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            Symbol v = static_cast<Symbol>((r + c) % 2);
            if (uniform01(rng) < noise) v = static_cast<Symbol>(1 - v);
            cells[static_cast<std::size_t>(r * cols + c)] = v;
        }
    }
    return Grid(rows, cols, binary(), std::move(cells));
}

/// Brute-force context counts of an interior-only scan: for every site at
/// least `depth` cells from each edge, the black counts of rings 1..depth are
/// tallied by scanning the full square and testing Chebyshev distance.
struct BruteCounts {
    std::map<std::vector<int>, std::pair<std::int64_t, std::vector<std::int64_t>>> by_prefix;
    std::int64_t n = 0;
};

inline std::vector<int> ring_blacks(const Grid& g, int r, int c, int depth) {
    std::vector<int> blacks(static_cast<std::size_t>(depth), 0);
    for (int dr = -depth; dr <= depth; ++dr) {
        for (int dc = -depth; dc <= depth; ++dc) {
            const int ring = std::max(std::abs(dr), std::abs(dc));
            if (ring == 0) continue;
            Symbol v = g.at(r + dr, c + dc);
            if (v == kMasked) v = 0;
            blacks[static_cast<std::size_t>(ring - 1)] += v == 1 ? 1 : 0;
        }
    }
    return blacks;
}

inline BruteCounts brute_force_counts(const Grid& g, int depth) {
    BruteCounts out;
    for (int r = depth; r < g.rows() - depth; ++r) {
        for (int c = depth; c < g.cols() - depth; ++c) {
            if (g.masked(r, c)) continue;
            const auto blacks = ring_blacks(g, r, c, depth);
            ++out.n;
            for (int j = 0; j <= depth; ++j) {
                std::vector<int> prefix(blacks.begin(), blacks.begin() + j);
                auto& entry = out.by_prefix[prefix];
                if (entry.second.empty()) entry.second.assign(2, 0);
                entry.first += 1;
                entry.second[static_cast<std::size_t>(g.at(r, c))] += 1;
            }
        }
    }
    return out;
}

inline std::vector<int> blacks_of(const ContextKey& key) {
    std::vector<int> out;
    for (const auto& f : key.frames) out.push_back(f.payload[1]);
    return out;
}

}  // namespace pcn::testing
