#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pcn/selection.hpp"

namespace pcn {

/// Seeds a std::mt19937_64 through one SplitMix64 step so nearby seeds give
/// unrelated streams. Both algorithms are fully specified, so runs reproduce
/// across platforms.
std::mt19937_64 make_engine(std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Maps neighborhoods to the conditional law of the deepest matching context.
/// Unseen configurations fall back to the deepest expanded ancestor whose law
/// is known; if there is none, UNSEEN_CONTEXT is thrown.
class ContextResolver {
public:
    explicit ContextResolver(const Pcn& pcn);

    std::span<const double> resolve(const NeighborhoodReader& reader, Site site) const;

    int depth() const noexcept { return depth_; }
    KeyMode mode() const noexcept { return mode_; }

private:
    struct Node {
        int dist = -1;
        bool leaf = false;
        std::vector<std::pair<FrameKey, int>> children;  // sorted by key
    };

    int find_child(const Node& node, const FrameKey& frame) const;
    int insert_path(const ContextKey& key);

    KeyMode mode_;
    int depth_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::vector<double>> dists_;
};

enum class ScanOrder { Raster, Random };
enum class UpdateRule { HeatBath, Metropolis };

ScanOrder parse_scan_order(const std::string& text);
UpdateRule parse_update_rule(const std::string& text);
std::string to_string(ScanOrder scan);
std::string to_string(UpdateRule update);

struct SimConfig {
    int rows = 0;
    int cols = 0;
    int sweeps = 1;
    ScanOrder scan = ScanOrder::Raster;
    std::uint64_t seed = 0;
    /// Starting lattice; uniform random symbols when absent.
    std::optional<Grid> init;
    UpdateRule update = UpdateRule::HeatBath;
    /// Masked cells of the initial grid never change and read as
    /// `mask_substitute` inside neighborhoods.
    bool freeze_mask = true;
    Symbol mask_substitute = 0;
    /// Keep a copy of the lattice every k sweeps (0 disables).
    int snapshot_every = 0;
};

/// Per-sweep fractions of non-masked sites whose first frame falls in each
/// count class (canonical class order). Entry 0 is the initial lattice;
/// max_diff[0] is 0 by convention.
struct ConvergenceTrace {
    std::vector<std::vector<std::uint16_t>> classes;
    std::vector<std::vector<double>> frequencies;
    std::vector<double> max_diff;

    friend bool operator==(const ConvergenceTrace&, const ConvergenceTrace&) = default;
};

struct SimResult {
    Grid grid;
    ConvergenceTrace trace;
    std::vector<std::pair<int, Grid>> snapshots;
};

SimResult simulate(const Pcn& pcn, const SimConfig& config);

/// First-frame class frequencies of the current lattice under mirrored reads.
std::vector<double> class_frequencies(const Grid& grid, const std::vector<std::vector<std::uint16_t>>& classes,
                                      Symbol mask_substitute = 0);

/// First sweep whose max class-frequency change is below `threshold`, or
/// nullopt. Throws INSUFFICIENT_TRACE for fewer than two entries.
std::optional<int> stabilized(const ConvergenceTrace& trace, double threshold = 1e-3);

}  // namespace pcn
