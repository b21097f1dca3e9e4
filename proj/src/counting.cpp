#include "pcn/counting.hpp"

#include <algorithm>
#include <thread>

#include "pcn/error.hpp"

namespace pcn {

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

void merge_into(CountNode& dst, const CountNode& src) {
    dst.n_occ += src.n_occ;
    for (std::size_t a = 0; a < dst.center_counts.size(); ++a) dst.center_counts[a] += src.center_counts[a];
    for (const auto& child : src.children) {
        auto& d = dst.child_for(child.key.frames.back(), static_cast<int>(dst.center_counts.size()));
        merge_into(d, child);
    }
}

void check_config(const CountConfig& config) {
    if (config.depth < 1) throw PcnError(ErrorCode::ConfigError, "depth must be at least 1");
    if (config.policy.mode == BoundaryPolicy::Mode::Buffer && config.policy.margin < config.depth) {
        throw PcnError(ErrorCode::ConfigError, "buffer margin must be at least the depth");
    }
}

}  // namespace

const CountNode* CountNode::find_child(const FrameKey& frame) const {
    auto it = std::lower_bound(children.begin(), children.end(), frame,
                               [](const CountNode& n, const FrameKey& f) { return n.key.frames.back() < f; });
    if (it == children.end() || it->key.frames.back() != frame) return nullptr;
    return &*it;
}

CountNode& CountNode::child_for(const FrameKey& frame, int alphabet_size) {
    auto it = std::lower_bound(children.begin(), children.end(), frame,
                               [](const CountNode& n, const FrameKey& f) { return n.key.frames.back() < f; });
    if (it != children.end() && it->key.frames.back() == frame) return *it;
    CountNode fresh;
    fresh.key = key.child(frame);
    fresh.center_counts.assign(static_cast<std::size_t>(alphabet_size), 0);
    return *children.insert(it, std::move(fresh));
}

CountTree empty_count_tree(const Alphabet& alphabet, int depth, KeyMode mode) {
    CountTree tree;
    tree.max_depth = depth;
    tree.mode = mode;
    tree.alphabet = alphabet;
    tree.root.key = ContextKey::root(mode);
    tree.root.center_counts.assign(static_cast<std::size_t>(alphabet.size()), 0);
    return tree;
}

void add_observation(CountTree& tree, const ContextKey& key, Symbol center) {
    const int a = tree.alphabet.size();
    CountNode* node = &tree.root;
    node->n_occ += 1;
    node->center_counts[static_cast<std::size_t>(center)] += 1;
    for (const auto& frame : key.frames) {
        node = &node->child_for(frame, a);
        node->n_occ += 1;
        node->center_counts[static_cast<std::size_t>(center)] += 1;
    }
    tree.n_total += 1;
}

CountTree build_count_tree(const Grid& grid, std::span<const Site> centers, const CountConfig& config) {
    check_config(config);
    const int workers = std::min<int>(resolve_threads(config.threads),
                                      std::max<int>(1, static_cast<int>(centers.size())));
    NeighborhoodReader reader(grid, config.policy, config.mask_substitute);

    auto count_range = [&](std::size_t begin, std::size_t end) {
        CountTree part = empty_count_tree(grid.alphabet(), config.depth, config.mode);
        ContextKey key = ContextKey::root(config.mode);
        for (std::size_t i = begin; i < end; ++i) {
            const Site s = centers[i];
            if (!is_valid_center(grid, s, config.depth, config.policy)) {
                throw PcnError(ErrorCode::OutOfBounds, "center (" + std::to_string(s.row) + "," +
                                                           std::to_string(s.col) + ") is not valid");
            }
            key.frames.clear();
            for (int j = 1; j <= config.depth; ++j) key.frames.push_back(reader.frame(s, j, config.mode));
            add_observation(part, key, grid.at(s));
        }
        return part;
    };

    CountTree tree = empty_count_tree(grid.alphabet(), config.depth, config.mode);
    if (workers <= 1) {
        tree = count_range(0, centers.size());
    } else {
        std::vector<CountTree> parts(static_cast<std::size_t>(workers));
        std::vector<std::exception_ptr> errors(parts.size());
        std::vector<std::thread> pool;
        const std::size_t chunk = (centers.size() + parts.size() - 1) / parts.size();
        for (std::size_t w = 0; w < parts.size(); ++w) {
            pool.emplace_back([&, w] {
                try {
                    const std::size_t b = std::min(centers.size(), w * chunk);
                    const std::size_t e = std::min(centers.size(), b + chunk);
                    parts[w] = count_range(b, e);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
        for (const auto& p : parts) tree = merge_count_trees(tree, p);
    }
    tree.lattice_size = static_cast<std::int64_t>(grid.cells().size() - grid.masked_count());
    return tree;
}

CountTree build_count_tree(const Grid& grid, const CountConfig& config) {
    check_config(config);
    const auto centers = valid_centers(grid, config.depth, config.policy);
    if (centers.empty()) {
        throw PcnError(ErrorCode::EmptySample, "no valid centers at depth " + std::to_string(config.depth) +
                                                   " under boundary " + config.policy.to_string());
    }
    return build_count_tree(grid, centers, config);
}

CountTree merge_count_trees(const CountTree& a, const CountTree& b) {
    if (a.max_depth != b.max_depth || a.mode != b.mode || !(a.alphabet == b.alphabet)) {
        throw PcnError(ErrorCode::MergeError, "count trees differ in depth, mode or alphabet");
    }
    CountTree out = a;
    merge_into(out.root, b.root);
    out.n_total = a.n_total + b.n_total;
    out.lattice_size = std::max(a.lattice_size, b.lattice_size);
    return out;
}

const CountNode* node_lookup(const CountTree& tree, const ContextKey& key) {
    if (key.mode != tree.mode && !key.is_root()) return nullptr;
    const CountNode* node = &tree.root;
    for (const auto& frame : key.frames) {
        node = node->find_child(frame);
        if (node == nullptr) return nullptr;
    }
    return node;
}

}  // namespace pcn
