#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "pcn/counting.hpp"

namespace pcn {

/// Which sample size enters the penalty and the per-node score: the number of
/// evaluated centers (default) or the number of non-masked lattice cells.
enum class PenaltySize { Centers, Lattice };

PenaltySize parse_penalty_size(const std::string& text);
std::string to_string(PenaltySize size);
std::int64_t penalty_sample_size(const CountTree& tree, PenaltySize size);

/// A context of a fitted or hand-built model together with its conditional
/// distribution over the alphabet. Counts are empty for hand-built models.
struct PcnNode {
    ContextKey key;
    std::int64_t n_occ = 0;
    std::vector<std::int64_t> counts;
    std::vector<double> probs;
};

/// Probabilistic context neighborhood: a set of mutually non-suffix contexts
/// with their conditional laws. `internal` holds the expanded ancestors of the
/// leaves when their empirical law is known (used as fallback for unseen
/// configurations).
struct Pcn {
    Alphabet alphabet;
    KeyMode mode = KeyMode::Count;
    std::vector<PcnNode> leaves;
    std::vector<PcnNode> internal;

    /// Depth of the deepest leaf (0 for the memoryless model).
    int depth() const;
    std::vector<ContextKey> leaf_keys() const;
    const PcnNode* find_leaf(const ContextKey& key) const;

    /// Throws CANDIDATE_ERROR for suffix-related leaves and CONFIG_ERROR for
    /// malformed distributions.
    void validate() const;
};

struct PicReport {
    double tree_pic = 0.0;
    double tree_log_mpl = 0.0;
    std::int64_t leaf_count = 0;
    double penalty = 0.0;
};

struct ScoredNode {
    ContextKey key;
    double p_tilde = 0.0;  ///< log domain
    double v = 0.0;        ///< log domain
    int chi = 0;
};

using ScoreMap = std::map<ContextKey, ScoredNode>;

/// log P~ of a node: penalised maximum pseudo-log-likelihood of the node's
/// center counts, 0 for an unobserved node.
double log_p_tilde(const CountNode& node, std::int64_t n_total, int alphabet_size);

/// Maximum pseudo-log-likelihood of a candidate leaf set. Throws
/// CANDIDATE_ERROR if a key is unobserved, two keys are suffix-related, or an
/// observed depth-D path is not covered.
double log_mpl(const CountTree& tree, std::span<const ContextKey> candidate);

PicReport pic(const CountTree& tree, std::span<const ContextKey> candidate,
              PenaltySize size = PenaltySize::Centers);

/// Bottom-up V / chi recursion. Ties keep the parent (chi = 0).
ScoreMap compute_scores(const CountTree& tree, PenaltySize size = PenaltySize::Centers);

/// Top-down descent from the root along chi = 1 nodes; the first chi = 0 node
/// on each branch becomes a leaf carrying its empirical law.
Pcn prune(const CountTree& tree, const ScoreMap& scores);

/// floor((log n)^(1/4)), at least 1.
int default_depth(std::int64_t n);

struct FitConfig {
    std::optional<int> depth;
    KeyMode mode = KeyMode::Count;
    BoundaryPolicy policy = BoundaryPolicy::interior_only();
    Symbol mask_substitute = 0;
    PenaltySize penalty_size = PenaltySize::Centers;
    int threads = 1;
};

struct FitResult {
    Pcn pcn;
    PicReport report;
    CountTree counts;
    int depth = 0;
};

FitResult fit(const Grid& grid, const FitConfig& config);

/// Fit on an already built count tree.
FitResult fit_counts(CountTree counts, PenaltySize size = PenaltySize::Centers);

struct OracleResult {
    std::vector<ContextKey> leaves;
    PicReport report;
    /// Second smallest PIC among enumerated candidates (+inf if only one).
    double runner_up_pic = 0.0;
    std::uint64_t candidates = 0;
};

inline constexpr double kDefaultOracleBound = 1e7;

/// Number of feasible irreducible candidates (as a double; saturates to inf).
double count_candidates(const CountTree& tree);

/// Enumerates every feasible candidate and returns a PIC minimiser. Throws
/// TOO_LARGE when count_candidates() exceeds `bound`.
OracleResult exhaustive_pic_oracle(const CountTree& tree, double bound = kDefaultOracleBound,
                                   PenaltySize size = PenaltySize::Centers);

}  // namespace pcn
