#include "pcn/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "pcn/error.hpp"

namespace pcn {

std::mt19937_64 make_engine(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return std::mt19937_64(z);
}

ContextResolver::ContextResolver(const Pcn& pcn) : mode_(pcn.mode), depth_(pcn.depth()) {
    pcn.validate();
    nodes_.emplace_back();
    for (const auto& n : pcn.internal) {
        int idx = insert_path(n.key);
        nodes_[static_cast<std::size_t>(idx)].dist = static_cast<int>(dists_.size());
        dists_.push_back(n.probs);
    }
    for (const auto& l : pcn.leaves) {
        int idx = insert_path(l.key);
        auto& node = nodes_[static_cast<std::size_t>(idx)];
        if (!node.children.empty()) {
            throw PcnError(ErrorCode::CandidateError, "leaf '" + key_to_string(l.key) + "' has descendants");
        }
        node.leaf = true;
        node.dist = static_cast<int>(dists_.size());
        dists_.push_back(l.probs);
    }
}

int ContextResolver::find_child(const Node& node, const FrameKey& frame) const {
    auto it = std::lower_bound(node.children.begin(), node.children.end(), frame,
                               [](const auto& entry, const FrameKey& f) { return entry.first < f; });
    if (it == node.children.end() || it->first != frame) return -1;
    return it->second;
}

int ContextResolver::insert_path(const ContextKey& key) {
    int idx = 0;
    for (const auto& frame : key.frames) {
        if (nodes_[static_cast<std::size_t>(idx)].leaf) {
            throw PcnError(ErrorCode::CandidateError, "leaf is a suffix of '" + key_to_string(key) + "'");
        }
        int next = find_child(nodes_[static_cast<std::size_t>(idx)], frame);
        if (next < 0) {
            next = static_cast<int>(nodes_.size());
            nodes_.emplace_back();
            auto& children = nodes_[static_cast<std::size_t>(idx)].children;
            auto it = std::lower_bound(children.begin(), children.end(), frame,
                                       [](const auto& entry, const FrameKey& f) { return entry.first < f; });
            children.insert(it, {frame, next});
        }
        idx = next;
    }
    return idx;
}

std::span<const double> ContextResolver::resolve(const NeighborhoodReader& reader, Site site) const {
    int idx = 0;
    int fallback = nodes_[0].dist;
    for (int j = 1;; ++j) {
        const Node& node = nodes_[static_cast<std::size_t>(idx)];
        if (node.leaf) return dists_[static_cast<std::size_t>(node.dist)];
        if (node.dist >= 0) fallback = node.dist;
        const int next = node.children.empty() ? -1 : find_child(node, reader.frame(site, j, mode_));
        if (next < 0) {
            if (fallback < 0) {
                throw PcnError(ErrorCode::UnseenContext,
                               "no context or expanded ancestor matches the neighborhood of (" +
                                   std::to_string(site.row) + "," + std::to_string(site.col) + ")");
            }
            return dists_[static_cast<std::size_t>(fallback)];
        }
        idx = next;
    }
}

ScanOrder parse_scan_order(const std::string& text) {
    if (text == "raster") return ScanOrder::Raster;
    if (text == "random") return ScanOrder::Random;
    throw PcnError(ErrorCode::ConfigError, "scan must be 'raster' or 'random'");
}

UpdateRule parse_update_rule(const std::string& text) {
    if (text == "heat-bath") return UpdateRule::HeatBath;
    if (text == "metropolis") return UpdateRule::Metropolis;
    throw PcnError(ErrorCode::ConfigError, "update must be 'heat-bath' or 'metropolis'");
}

std::string to_string(ScanOrder scan) { return scan == ScanOrder::Raster ? "raster" : "random"; }
std::string to_string(UpdateRule update) { return update == UpdateRule::HeatBath ? "heat-bath" : "metropolis"; }

std::vector<double> class_frequencies(const Grid& grid, const std::vector<std::vector<std::uint16_t>>& classes,
                                      Symbol mask_substitute) {
    std::map<std::vector<std::uint16_t>, std::size_t> index;
    for (std::size_t i = 0; i < classes.size(); ++i) index.emplace(classes[i], i);
    std::vector<std::int64_t> counts(classes.size(), 0);
    std::int64_t total = 0;
    NeighborhoodReader reader(grid, BoundaryPolicy::mirror(), mask_substitute);
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (grid.masked(r, c)) continue;
            const auto key = reader.frame({r, c}, 1, KeyMode::Count);
            ++counts[index.at(key.payload)];
            ++total;
        }
    }
    std::vector<double> out(classes.size(), 0.0);
    if (total == 0) return out;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
    }
    return out;
}

SimResult simulate(const Pcn& pcn, const SimConfig& config) {
    const ContextResolver resolver(pcn);
    const int depth = resolver.depth();
    const int alphabet_size = pcn.alphabet.size();
    if (config.sweeps < 1) throw PcnError(ErrorCode::ConfigError, "sweeps must be at least 1");

    auto rng = make_engine(config.seed);
    Grid grid;
    if (config.init) {
        if (!(config.init->alphabet() == pcn.alphabet)) {
            throw PcnError(ErrorCode::ConfigError, "initial grid alphabet differs from the model alphabet");
        }
        grid = *config.init;
        if (!config.freeze_mask) {
            auto cells = grid.cells();
            for (auto& s : cells) {
                if (s == kMasked) s = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(alphabet_size));
            }
            grid = Grid(grid.rows(), grid.cols(), grid.alphabet(), std::move(cells));
        }
    } else {
        if (config.rows < 1 || config.cols < 1) throw PcnError(ErrorCode::ConfigError, "grid size must be positive");
        std::vector<Symbol> cells(static_cast<std::size_t>(config.rows) * static_cast<std::size_t>(config.cols));
        for (auto& s : cells) s = static_cast<Symbol>(rng() % static_cast<std::uint64_t>(alphabet_size));
        grid = Grid(config.rows, config.cols, pcn.alphabet, std::move(cells));
    }
    if (grid.rows() < 2 * depth + 1 || grid.cols() < 2 * depth + 1) {
        throw PcnError(ErrorCode::ConfigError, "lattice must be at least " + std::to_string(2 * depth + 1) +
                                                   " cells per side for a depth-" + std::to_string(depth) +
                                                   " model");
    }

    std::vector<Site> sites;
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (!grid.masked(r, c)) sites.push_back({r, c});
        }
    }

    SimResult result;
    result.trace.classes = count_classes(1, alphabet_size);
    result.trace.frequencies.push_back(class_frequencies(grid, result.trace.classes, config.mask_substitute));
    result.trace.max_diff.push_back(0.0);

    if (config.snapshot_every > 0) result.snapshots.emplace_back(0, grid);

    const NeighborhoodReader reader(grid, BoundaryPolicy::mirror(), config.mask_substitute);
    for (int sweep = 1; sweep <= config.sweeps; ++sweep) {
        if (config.scan == ScanOrder::Random) {
            for (std::size_t i = sites.size(); i > 1; --i) {
                const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
                std::swap(sites[i - 1], sites[std::min(j, i - 1)]);
            }
        }
        for (const Site s : sites) {
            const auto probs = resolver.resolve(reader, s);
            const Symbol current = grid.at(s);
            Symbol next = current;
            if (config.update == UpdateRule::HeatBath) {
                const double u = uniform01(rng);
                double acc = 0.0;
                next = static_cast<Symbol>(alphabet_size - 1);
                for (int a = 0; a < alphabet_size; ++a) {
                    acc += probs[static_cast<std::size_t>(a)];
                    if (u < acc) {
                        next = static_cast<Symbol>(a);
                        break;
                    }
                }
            } else {
                const auto proposal = static_cast<Symbol>(uniform01(rng) * alphabet_size);
                const double u = uniform01(rng);
                const double q_cur = probs[static_cast<std::size_t>(current)];
                const double q_new = probs[static_cast<std::size_t>(proposal)];
                // A current state with zero probability always moves.
                if (q_cur <= 0.0 || u * q_cur < q_new) next = proposal;
            }
            grid.set(s.row, s.col, next);
        }
        auto freq = class_frequencies(grid, result.trace.classes, config.mask_substitute);
        double diff = 0.0;
        const auto& prev = result.trace.frequencies.back();
        for (std::size_t i = 0; i < freq.size(); ++i) diff = std::max(diff, std::abs(freq[i] - prev[i]));
        result.trace.frequencies.push_back(std::move(freq));
        result.trace.max_diff.push_back(diff);
        if (config.snapshot_every > 0 && sweep % config.snapshot_every == 0) {
            result.snapshots.emplace_back(sweep, grid);
        }
    }
    result.grid = std::move(grid);
    return result;
}

std::optional<int> stabilized(const ConvergenceTrace& trace, double threshold) {
    if (trace.frequencies.size() < 2 || trace.max_diff.size() != trace.frequencies.size()) {
        throw PcnError(ErrorCode::InsufficientTrace, "trace needs at least two entries");
    }
    if (!(threshold > 0.0)) throw PcnError(ErrorCode::ConfigError, "threshold must be positive");
    for (std::size_t k = 1; k < trace.max_diff.size(); ++k) {
        if (trace.max_diff[k] < threshold) return static_cast<int>(k);
    }
    return std::nullopt;
}

}  // namespace pcn
