#include "pcn/selection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "pcn/error.hpp"

namespace pcn {

namespace {

// Sum over symbols of count * log(count / n_occ), with 0 log 0 = 0.
double log_mpl_term(const CountNode& node) {
    if (node.n_occ == 0) return 0.0;
    const double total = static_cast<double>(node.n_occ);
    double acc = 0.0;
    for (auto c : node.center_counts) {
        if (c > 0) acc += static_cast<double>(c) * std::log(static_cast<double>(c) / total);
    }
    return acc;
}

PcnNode empirical_node(const CountNode& node) {
    PcnNode out{node.key, node.n_occ, node.center_counts, {}};
    out.probs.resize(node.center_counts.size(), 0.0);
    if (node.n_occ > 0) {
        for (std::size_t a = 0; a < node.center_counts.size(); ++a) {
            out.probs[a] = static_cast<double>(node.center_counts[a]) / static_cast<double>(node.n_occ);
        }
    }
    return out;
}

double score_node(const CountNode& node, const CountTree& tree, std::int64_t n, ScoreMap& out) {
    ScoredNode s{node.key, log_p_tilde(node, n, tree.alphabet.size()), 0.0, 0};
    if (node.key.order() >= tree.max_depth || node.children.empty()) {
        s.v = s.p_tilde;
        s.chi = 0;
    } else {
        double children_v = 0.0;
        for (const auto& c : node.children) children_v += score_node(c, tree, n, out);
        if (s.p_tilde >= children_v) {
            s.v = s.p_tilde;
            s.chi = 0;
        } else {
            s.v = children_v;
            s.chi = 1;
        }
    }
    const double v = s.v;
    out.emplace(node.key, std::move(s));
    return v;
}

void prune_node(const CountNode& node, const ScoreMap& scores, Pcn& out) {
    auto it = scores.find(node.key);
    if (it == scores.end()) {
        throw PcnError(ErrorCode::ConfigError, "scores do not belong to this count tree");
    }
    if (it->second.chi == 0) {
        out.leaves.push_back(empirical_node(node));
        return;
    }
    out.internal.push_back(empirical_node(node));
    for (const auto& c : node.children) prune_node(c, scores, out);
}

// Every observed path must end in (or pass through) a candidate key.
void check_coverage(const CountNode& node, const std::set<ContextKey>& keys) {
    if (keys.count(node.key)) return;
    if (node.children.empty()) {
        throw PcnError(ErrorCode::CandidateError,
                       "candidate does not cover observed context '" + key_to_string(node.key) + "'");
    }
    for (const auto& c : node.children) check_coverage(c, keys);
}

std::vector<const CountNode*> validated_nodes(const CountTree& tree, std::span<const ContextKey> candidate) {
    std::set<ContextKey> keys;
    std::vector<const CountNode*> nodes;
    nodes.reserve(candidate.size());
    for (const auto& k : candidate) {
        if (k.mode != tree.mode && !k.is_root()) {
            throw PcnError(ErrorCode::ModeError, "candidate key mode differs from the count tree");
        }
        const CountNode* node = node_lookup(tree, k);
        if (node == nullptr || node->n_occ < 1) {
            throw PcnError(ErrorCode::CandidateError, "candidate key '" + key_to_string(k) + "' is not observed");
        }
        if (!keys.insert(k).second) {
            throw PcnError(ErrorCode::CandidateError, "candidate key '" + key_to_string(k) + "' repeated");
        }
        nodes.push_back(node);
    }
    for (const auto& k : keys) {
        for (int j = 0; j < k.order(); ++j) {
            auto p = k.prefix(j);
            if (keys.count(p)) {
                throw PcnError(ErrorCode::CandidateError, "candidate keys '" + key_to_string(p) + "' and '" +
                                                              key_to_string(k) + "' are suffix-related");
            }
        }
    }
    check_coverage(tree.root, keys);
    return nodes;
}

}  // namespace

PenaltySize parse_penalty_size(const std::string& text) {
    if (text == "centers") return PenaltySize::Centers;
    if (text == "lattice") return PenaltySize::Lattice;
    throw PcnError(ErrorCode::ConfigError, "penalty size must be 'centers' or 'lattice'");
}

std::string to_string(PenaltySize size) { return size == PenaltySize::Centers ? "centers" : "lattice"; }

std::int64_t penalty_sample_size(const CountTree& tree, PenaltySize size) {
    return size == PenaltySize::Centers ? tree.n_total : std::max(tree.lattice_size, tree.n_total);
}

int Pcn::depth() const {
    int d = 0;
    for (const auto& l : leaves) d = std::max(d, l.key.order());
    return d;
}

std::vector<ContextKey> Pcn::leaf_keys() const {
    std::vector<ContextKey> out;
    out.reserve(leaves.size());
    for (const auto& l : leaves) out.push_back(l.key);
    return out;
}

const PcnNode* Pcn::find_leaf(const ContextKey& key) const {
    for (const auto& l : leaves) {
        if (l.key == key) return &l;
    }
    return nullptr;
}

void Pcn::validate() const {
    if (leaves.empty()) throw PcnError(ErrorCode::ConfigError, "model has no leaves");
    std::set<ContextKey> keys;
    auto check_probs = [&](const PcnNode& n) {
        if (static_cast<int>(n.probs.size()) != alphabet.size()) {
            throw PcnError(ErrorCode::ConfigError, "context '" + key_to_string(n.key) + "' has " +
                                                       std::to_string(n.probs.size()) + " probabilities");
        }
        double sum = 0.0;
        for (double p : n.probs) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw PcnError(ErrorCode::ConfigError, "probability outside [0,1] at '" + key_to_string(n.key) + "'");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw PcnError(ErrorCode::ConfigError, "probabilities at '" + key_to_string(n.key) + "' do not sum to 1");
        }
    };
    for (const auto& l : leaves) {
        if (!l.key.is_root() && l.key.mode != mode) {
            throw PcnError(ErrorCode::ModeError, "leaf mode differs from model mode");
        }
        check_probs(l);
        if (!keys.insert(l.key).second) {
            throw PcnError(ErrorCode::CandidateError, "leaf '" + key_to_string(l.key) + "' repeated");
        }
    }
    for (const auto& k : keys) {
        for (int j = 0; j < k.order(); ++j) {
            if (keys.count(k.prefix(j))) {
                throw PcnError(ErrorCode::CandidateError, "leaves '" + key_to_string(k.prefix(j)) + "' and '" +
                                                              key_to_string(k) + "' are suffix-related");
            }
        }
    }
    for (const auto& n : internal) check_probs(n);
}

double log_p_tilde(const CountNode& node, std::int64_t n_total, int alphabet_size) {
    if (node.n_occ == 0) return 0.0;
    return -0.5 * static_cast<double>(alphabet_size - 1) * std::log(static_cast<double>(n_total)) +
           log_mpl_term(node);
}

double log_mpl(const CountTree& tree, std::span<const ContextKey> candidate) {
    double acc = 0.0;
    for (const CountNode* node : validated_nodes(tree, candidate)) acc += log_mpl_term(*node);
    return acc;
}

PicReport pic(const CountTree& tree, std::span<const ContextKey> candidate, PenaltySize size) {
    PicReport r;
    r.tree_log_mpl = log_mpl(tree, candidate);
    r.leaf_count = static_cast<std::int64_t>(candidate.size());
    r.penalty = 0.5 * static_cast<double>(tree.alphabet.size() - 1) * static_cast<double>(r.leaf_count) *
                std::log(static_cast<double>(penalty_sample_size(tree, size)));
    r.tree_pic = -r.tree_log_mpl + r.penalty;
    return r;
}

ScoreMap compute_scores(const CountTree& tree, PenaltySize size) {
    if (tree.n_total < 1) throw PcnError(ErrorCode::EmptySample, "count tree holds no observations");
    ScoreMap out;
    score_node(tree.root, tree, penalty_sample_size(tree, size), out);
    return out;
}

Pcn prune(const CountTree& tree, const ScoreMap& scores) {
    Pcn out;
    out.alphabet = tree.alphabet;
    out.mode = tree.mode;
    prune_node(tree.root, scores, out);
    return out;
}

int default_depth(std::int64_t n) {
    if (n <= 1) return 1;
    const double d = std::floor(std::pow(std::log(static_cast<double>(n)), 0.25));
    return std::max(1, static_cast<int>(d));
}

FitResult fit_counts(CountTree counts, PenaltySize size) {
    FitResult out;
    out.depth = counts.max_depth;
    const auto scores = compute_scores(counts, size);
    out.pcn = prune(counts, scores);
    const auto keys = out.pcn.leaf_keys();
    out.report = pic(counts, keys, size);
    out.counts = std::move(counts);
    return out;
}

FitResult fit(const Grid& grid, const FitConfig& config) {
    CountConfig cc;
    cc.depth = config.depth.value_or(
        default_depth(static_cast<std::int64_t>(grid.cells().size() - grid.masked_count())));
    cc.mode = config.mode;
    cc.policy = config.policy;
    cc.mask_substitute = config.mask_substitute;
    cc.threads = config.threads;
    return fit_counts(build_count_tree(grid, cc), config.penalty_size);
}

namespace {

double count_node_candidates(const CountNode& node, int max_depth) {
    if (node.key.order() >= max_depth || node.children.empty()) return 1.0;
    double prod = 1.0;
    for (const auto& c : node.children) prod *= count_node_candidates(c, max_depth);
    return 1.0 + prod;
}

using Continuation = std::function<void()>;

// Calls `done` once per candidate subtree of `node`, with the chosen leaves
// appended to `chosen` for the duration of the call.
void enumerate_node(const CountNode& node, int max_depth, std::vector<ContextKey>& chosen,
                    const Continuation& done);

void enumerate_children(const std::vector<CountNode>& children, std::size_t idx, int max_depth,
                        std::vector<ContextKey>& chosen, const Continuation& done) {
    if (idx == children.size()) {
        done();
        return;
    }
    enumerate_node(children[idx], max_depth, chosen,
                   [&] { enumerate_children(children, idx + 1, max_depth, chosen, done); });
}

void enumerate_node(const CountNode& node, int max_depth, std::vector<ContextKey>& chosen,
                    const Continuation& done) {
    chosen.push_back(node.key);
    done();
    chosen.pop_back();
    if (node.key.order() < max_depth && !node.children.empty()) {
        enumerate_children(node.children, 0, max_depth, chosen, done);
    }
}

}  // namespace

double count_candidates(const CountTree& tree) { return count_node_candidates(tree.root, tree.max_depth); }

OracleResult exhaustive_pic_oracle(const CountTree& tree, double bound, PenaltySize size) {
    const double total = count_candidates(tree);
    if (!(total <= bound)) {
        throw PcnError(ErrorCode::TooLarge, "about " + std::to_string(total) +
                                                " candidate trees exceed the enumeration bound " +
                                                std::to_string(bound));
    }
    OracleResult best;
    best.report.tree_pic = std::numeric_limits<double>::infinity();
    best.runner_up_pic = std::numeric_limits<double>::infinity();
    std::vector<ContextKey> chosen;
    enumerate_node(tree.root, tree.max_depth, chosen, [&] {
        ++best.candidates;
        const PicReport r = pic(tree, chosen, size);
        if (r.tree_pic < best.report.tree_pic) {
            best.runner_up_pic = best.report.tree_pic;
            best.report = r;
            best.leaves = chosen;
        } else if (r.tree_pic < best.runner_up_pic) {
            best.runner_up_pic = r.tree_pic;
        }
    });
    std::sort(best.leaves.begin(), best.leaves.end());
    return best;
}

}  // namespace pcn
