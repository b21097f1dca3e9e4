#include "pcn/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pcn/error.hpp"

namespace pcn {

double quantile_median_unbiased(std::span<const double> sorted_values, double p) {
    if (sorted_values.empty()) throw PcnError(ErrorCode::EmptyInput, "quantile of an empty sample");
    const double n = static_cast<double>(sorted_values.size());
    double h = (n + 1.0 / 3.0) * p + 1.0 / 3.0;
    h = std::clamp(h, 1.0, n);
    const double lo = std::floor(h);
    const auto i = static_cast<std::size_t>(lo) - 1;
    if (i + 1 >= sorted_values.size()) return sorted_values[i];
    return sorted_values[i] + (h - lo) * (sorted_values[i + 1] - sorted_values[i]);
}

const CiRow* CiTable::find(const ContextKey& key, Symbol symbol) const {
    for (const auto& r : rows) {
        if (r.key == key && r.symbol == symbol) return &r;
    }
    return nullptr;
}

namespace {

void check_config(const Pcn& pcn, const BootConfig& config) {
    if (config.delta <= pcn.depth()) {
        throw PcnError(ErrorCode::DeltaError, "delta " + std::to_string(config.delta) +
                                                  " must exceed the model depth " + std::to_string(pcn.depth()));
    }
    if (config.replicates < 1) throw PcnError(ErrorCode::ConfigError, "need at least one replicate");
    if (!config.start && (config.base_rows < 1 || config.base_cols < 1)) {
        throw PcnError(ErrorCode::ConfigError, "core size must be positive");
    }
}

Grid starting_grid(const BootConfig& config, int rows, int cols) {
    const Grid& s = *config.start;
    if (s.rows() == rows && s.cols() == cols) return s;
    if (s.rows() + 2 * config.delta == rows && s.cols() + 2 * config.delta == cols) {
        return mirror_pad(s, config.delta);
    }
    throw PcnError(ErrorCode::ConfigError, "starting grid must match the core or the padded replicate size");
}

}  // namespace

ReplicateEstimate bootstrap_replicate(const Pcn& pcn, const BootConfig& config, int index) {
    check_config(pcn, config);
    const int base_rows = config.start && config.base_rows < 1 ? config.start->rows() : config.base_rows;
    const int base_cols = config.start && config.base_cols < 1 ? config.start->cols() : config.base_cols;
    const int rows = base_rows + 2 * config.delta;
    const int cols = base_cols + 2 * config.delta;

    SimConfig sim;
    sim.rows = rows;
    sim.cols = cols;
    sim.sweeps = config.sweeps;
    sim.scan = config.scan;
    sim.update = config.update;
    sim.seed = config.seed ^ static_cast<std::uint64_t>(index);
    sim.mask_substitute = config.mask_substitute;
    if (config.start) sim.init = starting_grid(config, rows, cols);
    const Grid lattice = simulate(pcn, sim).grid;

    CountConfig cc;
    cc.depth = std::max(1, pcn.depth());
    cc.mode = pcn.mode;
    cc.policy = BoundaryPolicy::buffer(config.delta);
    cc.mask_substitute = config.mask_substitute;
    CountTree counts = build_count_tree(lattice, cc);

    ReplicateEstimate est;
    if (config.refit) {
        auto keys = fit_counts(counts, config.penalty_size).pcn.leaf_keys();
        auto target = pcn.leaf_keys();
        std::sort(keys.begin(), keys.end());
        std::sort(target.begin(), target.end());
        est.structure_matched = keys == target;
    }
    for (const auto& leaf : pcn.leaves) {
        const CountNode* node = node_lookup(counts, leaf.key);
        if (node == nullptr || node->n_occ < 1) {
            est.leaves.emplace_back(std::nullopt);
            continue;
        }
        std::vector<double> probs(node->center_counts.size());
        for (std::size_t a = 0; a < probs.size(); ++a) {
            probs[a] = static_cast<double>(node->center_counts[a]) / static_cast<double>(node->n_occ);
        }
        est.leaves.emplace_back(std::make_pair(std::move(probs), node->n_occ));
    }
    return est;
}

CiTable bootstrap_ci(const Pcn& pcn, const BootConfig& config) {
    check_config(pcn, config);
    pcn.validate();
    const int b = config.replicates;
    std::vector<ReplicateEstimate> estimates(static_cast<std::size_t>(b));
    const int workers = std::clamp(config.threads > 0 ? config.threads
                                                      : static_cast<int>(std::thread::hardware_concurrency()),
                                   1, b);
    if (workers == 1) {
        for (int i = 0; i < b; ++i) estimates[static_cast<std::size_t>(i)] = bootstrap_replicate(pcn, config, i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (int i = w; i < b; i += workers) {
                        estimates[static_cast<std::size_t>(i)] = bootstrap_replicate(pcn, config, i);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    CiTable table;
    table.alphabet = pcn.alphabet;
    for (const auto& e : estimates) {
        if (e.structure_matched) {
            ++table.replicates;
        } else {
            ++table.excluded;
        }
    }
    const int a_size = pcn.alphabet.size();
    for (std::size_t l = 0; l < pcn.leaves.size(); ++l) {
        std::vector<std::int64_t> occ;
        std::vector<std::vector<double>> per_symbol(static_cast<std::size_t>(a_size));
        for (const auto& e : estimates) {
            if (!e.structure_matched || !e.leaves[l]) continue;
            occ.push_back(e.leaves[l]->second);
            for (int a = 0; a < a_size; ++a) {
                per_symbol[static_cast<std::size_t>(a)].push_back(e.leaves[l]->first[static_cast<std::size_t>(a)]);
            }
        }
        std::vector<double> occ_d(occ.begin(), occ.end());
        std::sort(occ_d.begin(), occ_d.end());
        for (int a = 0; a < a_size; ++a) {
            CiRow row;
            row.key = pcn.leaves[l].key;
            row.symbol = static_cast<Symbol>(a);
            auto& values = per_symbol[static_cast<std::size_t>(a)];
            row.replicates_observed = static_cast<int>(values.size());
            if (!values.empty()) {
                std::sort(values.begin(), values.end());
                row.lower = quantile_median_unbiased(values, 0.025);
                row.median = quantile_median_unbiased(values, 0.5);
                row.upper = quantile_median_unbiased(values, 0.975);
                row.median_n_occ = quantile_median_unbiased(occ_d, 0.5);
            }
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

}  // namespace pcn
