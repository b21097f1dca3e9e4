#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pcn/sampler.hpp"
#include "pcn/selection.hpp"

namespace pcn {

/// Median-unbiased sample quantile (Hyndman-Fan type 8) of sorted values:
/// h = (n + 1/3) p + 1/3 clamped to [1, n], linear between neighbouring order
/// statistics. Throws EMPTY_INPUT on an empty span.
double quantile_median_unbiased(std::span<const double> sorted_values, double p);

struct BootConfig {
    int replicates = 100;
    /// Width of the buffer ring around the core; must exceed the model depth.
    int delta = 0;
    int base_rows = 0;
    int base_cols = 0;
    int sweeps = 400;
    std::uint64_t seed = 0;
    /// Re-estimate the structure per replicate and keep only replicates that
    /// reproduce the target leaf set.
    bool refit = false;
    /// Observed lattice used as the starting point. Either the core size (it
    /// is mirror-padded by delta) or the full replicate size.
    std::optional<Grid> start;
    ScanOrder scan = ScanOrder::Raster;
    UpdateRule update = UpdateRule::HeatBath;
    Symbol mask_substitute = 0;
    PenaltySize penalty_size = PenaltySize::Centers;
    int threads = 1;
};

struct CiRow {
    ContextKey key;
    Symbol symbol = 0;
    /// Absent when no retained replicate observed the context.
    std::optional<double> lower;
    std::optional<double> median;
    std::optional<double> upper;
    int replicates_observed = 0;
    /// Median occurrence count of the context over observing replicates.
    double median_n_occ = 0.0;
};

struct CiTable {
    Alphabet alphabet;
    std::vector<CiRow> rows;
    int replicates = 0;
    int excluded = 0;

    const CiRow* find(const ContextKey& key, Symbol symbol) const;
};

/// Per-replicate estimates for each target leaf: probability row and n_occ,
/// or nullopt when the leaf was not observed in the core.
struct ReplicateEstimate {
    bool structure_matched = true;
    std::vector<std::optional<std::pair<std::vector<double>, std::int64_t>>> leaves;
};

/// Simulates one replicate lattice (side base + 2 delta) and estimates the
/// target leaves on its core, using the delta ring as buffer.
ReplicateEstimate bootstrap_replicate(const Pcn& pcn, const BootConfig& config, int index);

/// Percentile intervals (2.5 %, 50 %, 97.5 %) for every leaf and symbol.
/// Throws DELTA_ERROR unless delta > depth.
CiTable bootstrap_ci(const Pcn& pcn, const BootConfig& config);

}  // namespace pcn
