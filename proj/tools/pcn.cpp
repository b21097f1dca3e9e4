// pcn: fit, simulate and bootstrap probabilistic context neighborhoods.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "manifest.hpp"
#include "pcn/bootstrap.hpp"
#include "pcn/error.hpp"
#include "pcn/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace pcn::cli {
namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

void report_error(const std::string& name, const std::string& message) {
    std::cerr << json{{"error", name}, {"message", message}}.dump() << '\n';
}

// Options shared by every command.
struct Common {
    int threads = 0;
    std::string manifest;
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--threads", common.threads, "worker threads (0 = all cores)")
        ->envname("PCN_THREADS")
        ->capture_default_str();
    sub->add_option("--manifest", common.manifest, "where to write the run manifest");
}

/// Every option of the subcommand with its resolved value.
void record_options(RunManifest& m, const CLI::App& sub) {
    for (const CLI::Option* opt : sub.get_options()) {
        if (opt->get_lnames().empty()) continue;
        const std::string& name = opt->get_lnames().front();
        if (name == "help") continue;
        if (opt->count() > 0) {
            const auto& res = opt->results();
            if (opt->get_expected_max() == 0) {
                m.set_option(name, true);
            } else if (res.size() == 1) {
                m.set_option(name, res.front());
            } else {
                m.set_option(name, res);
            }
        } else if (!opt->get_default_str().empty()) {
            m.set_option(name, opt->get_default_str());
        } else {
            m.set_option(name, nullptr);
        }
    }
}

std::uint64_t resolve_seed(const CLI::Option* opt, std::uint64_t given, RunManifest& m) {
    if (opt->count() > 0) {
        m.set_seed(given, false);
        return given;
    }
    std::random_device rd;
    const std::uint64_t seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    m.set_seed(seed, true);
    m.add_argument("--seed");
    m.add_argument(std::to_string(seed));
    return seed;
}

Symbol symbol_of(const Alphabet& alphabet, const std::string& label) {
    if (label.empty()) return 0;
    auto s = alphabet.index_of(label);
    if (!s) throw PcnError(ErrorCode::ConfigError, "'" + label + "' is not in the alphabet");
    return *s;
}

Grid read_grid(const fs::path& path, const Alphabet& alphabet, const std::string& mask, RunManifest& m) {
    Grid g = load_grid(path, format_for_path(path), alphabet, mask);
    m.add_input(path);
    return g;
}

Pcn read_model(const fs::path& path, RunManifest& m) {
    Pcn p = pcn_from_json(read_json_file(path));
    m.add_input(path);
    return p;
}

void write_output(RunManifest& m, const fs::path& path, const std::string& text) {
    write_text_file(path, text);
    m.add_output(path);
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw PcnError(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
}

std::string grid_text(const Grid& g, GridFormat format) {
    std::ostringstream out;
    write_grid(out, g, format);
    return out.str();
}

std::string format_probs(const std::vector<double>& probs) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4);
    for (std::size_t a = 0; a < probs.size(); ++a) out << (a ? " " : "") << probs[a];
    return out.str();
}

std::string key_label(const ContextKey& key) { return key.is_root() ? "root" : key_to_string(key); }

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string grid;
    std::string alphabet = "0,1";
    std::string mask = kDefaultMaskToken;
    std::string mask_substitute;
    std::optional<int> max_depth;
    std::string mode = "count";
    std::string boundary = "interior";
    std::string penalty_n = "centers";
    std::string out_dir = ".";
    bool dot = false;
    bool dump_counts = false;
};

int run_fit(const FitArgs& a, const Common& common, RunManifest& m) {
    const Alphabet alphabet = Alphabet::parse(a.alphabet);
    const Grid grid = read_grid(a.grid, alphabet, a.mask, m);
    FitConfig fc;
    fc.depth = a.max_depth;
    fc.mode = parse_key_mode(a.mode);
    fc.policy = BoundaryPolicy::parse(a.boundary);
    fc.mask_substitute = symbol_of(alphabet, a.mask_substitute);
    fc.penalty_size = parse_penalty_size(a.penalty_n);
    fc.threads = common.threads;
    const FitResult r = fit(grid, fc);

    const fs::path dir(a.out_dir);
    ensure_dir(dir);
    write_output(m, dir / "pcn.json", pcn_to_json(r.pcn).dump(2) + "\n");
    write_output(m, dir / "pic_report.json", pic_report_to_json(r.report).dump(2) + "\n");
    if (a.dot) write_output(m, dir / "tree.dot", pcn_to_dot(r.pcn));
    if (a.dump_counts) write_output(m, dir / "counts.json", count_tree_to_json(r.counts).dump(2) + "\n");

    std::printf("leaves: %zu\n", r.pcn.leaves.size());
    std::printf("depth: %d (max %d)\n", r.pcn.depth(), r.depth);
    std::printf("centers: %lld\n", static_cast<long long>(r.counts.n_total));
    std::printf("PIC: %.6f\n", r.report.tree_pic);
    return 0;
}

// ---------------------------------------------------------------- simulate

struct SimArgs {
    std::string pcn;
    std::optional<int> size;
    std::optional<int> rows;
    std::optional<int> cols;
    int sweeps = 100;
    std::uint64_t seed = 0;
    std::string scan = "raster";
    std::string update = "heat-bath";
    std::string init;
    std::string mask = kDefaultMaskToken;
    std::string mask_substitute;
    std::string out = "grid.txt";
    std::string trace;
    int snapshot_every = 0;
    double threshold = 1e-3;
};

int run_simulate(const SimArgs& a, const CLI::Option* seed_opt, RunManifest& m) {
    const Pcn model = read_model(a.pcn, m);
    SimConfig sc;
    sc.rows = a.rows.value_or(a.size.value_or(0));
    sc.cols = a.cols.value_or(a.size.value_or(0));
    sc.sweeps = a.sweeps;
    sc.scan = parse_scan_order(a.scan);
    sc.update = parse_update_rule(a.update);
    sc.mask_substitute = symbol_of(model.alphabet, a.mask_substitute);
    sc.snapshot_every = a.snapshot_every;
    if (!a.init.empty()) {
        sc.init = read_grid(a.init, model.alphabet, a.mask, m);
    } else if (sc.rows < 1 || sc.cols < 1) {
        throw PcnError(ErrorCode::ConfigError, "give --size, --rows/--cols or --init");
    }
    sc.seed = resolve_seed(seed_opt, a.seed, m);
    const SimResult r = simulate(model, sc);

    const fs::path out(a.out);
    if (out.has_parent_path()) ensure_dir(out.parent_path());
    const GridFormat format = format_for_path(out);
    write_output(m, out, grid_text(r.grid, format));
    if (!a.trace.empty()) {
        std::ostringstream t;
        write_trace_csv(t, r.trace);
        write_output(m, a.trace, t.str());
    }
    for (const auto& [sweep, g] : r.snapshots) {
        std::ostringstream name;
        name << out.stem().string() << ".sweep" << std::setw(4) << std::setfill('0') << sweep
             << out.extension().string();
        write_output(m, out.parent_path() / name.str(), grid_text(g, format));
    }
    std::printf("lattice: %d x %d, %d sweeps, seed %llu\n", r.grid.rows(), r.grid.cols(), sc.sweeps,
                static_cast<unsigned long long>(sc.seed));
    const auto stable = stabilized(r.trace, a.threshold);
    if (stable) {
        std::printf("stabilized at sweep %d (threshold %g)\n", *stable, a.threshold);
    } else {
        std::printf("not stabilized (threshold %g, last change %.3g)\n", a.threshold, r.trace.max_diff.back());
    }
    return 0;
}

// ---------------------------------------------------------------- bootstrap

struct BootArgs {
    std::string pcn;
    int replicates = 100;
    int delta = 0;
    std::optional<int> size;
    std::optional<int> rows;
    std::optional<int> cols;
    int sweeps = 400;
    std::uint64_t seed = 0;
    bool refit = false;
    std::string start;
    std::string mask = kDefaultMaskToken;
    std::string mask_substitute;
    std::string scan = "raster";
    std::string update = "heat-bath";
    std::string penalty_n = "centers";
    std::string out_dir = ".";
};

int run_bootstrap(const BootArgs& a, const Common& common, const CLI::Option* seed_opt, RunManifest& m) {
    const Pcn model = read_model(a.pcn, m);
    BootConfig bc;
    bc.replicates = a.replicates;
    bc.delta = a.delta;
    bc.base_rows = a.rows.value_or(a.size.value_or(0));
    bc.base_cols = a.cols.value_or(a.size.value_or(0));
    bc.sweeps = a.sweeps;
    bc.refit = a.refit;
    bc.scan = parse_scan_order(a.scan);
    bc.update = parse_update_rule(a.update);
    bc.mask_substitute = symbol_of(model.alphabet, a.mask_substitute);
    bc.penalty_size = parse_penalty_size(a.penalty_n);
    bc.threads = common.threads;
    if (!a.start.empty()) bc.start = read_grid(a.start, model.alphabet, a.mask, m);
    if (!bc.start && (bc.base_rows < 1 || bc.base_cols < 1)) {
        throw PcnError(ErrorCode::ConfigError, "give --size, --rows/--cols or --start");
    }
    bc.seed = resolve_seed(seed_opt, a.seed, m);
    const CiTable table = bootstrap_ci(model, bc);

    const fs::path dir(a.out_dir);
    ensure_dir(dir);
    std::ostringstream csv;
    write_ci_csv(csv, table);
    write_output(m, dir / "ci.csv", csv.str());
    json missing = json::array();
    for (const auto& row : table.rows) {
        if (row.symbol == 0 && !row.median) missing.push_back(key_label(row.key));
    }
    const json report{{"replicates_requested", a.replicates},
                      {"replicates_retained", table.replicates},
                      {"replicates_excluded", table.excluded},
                      {"refit", a.refit},
                      {"contexts_never_observed", missing}};
    write_output(m, dir / "exclusions.json", report.dump(2) + "\n");
    std::printf("replicates: %d retained, %d excluded\n", table.replicates, table.excluded);
    std::printf("contexts without an interval: %zu\n", missing.size());
    return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
    std::string grid;
    std::string alphabet = "0,1";
    std::string mask = kDefaultMaskToken;
    int max_depth = 1;
    std::string mode = "count";
    std::string boundary = "interior";
    std::string penalty_n = "centers";
    double bound = kDefaultOracleBound;
};

void print_leaves(const char* label, std::vector<ContextKey> keys, double pic_value) {
    std::sort(keys.begin(), keys.end());
    std::printf("%s: %zu leaves, PIC %.9f\n", label, keys.size(), pic_value);
    for (const auto& k : keys) std::printf("  %s\n", key_label(k).c_str());
}

int run_oracle(const OracleArgs& a, const Common& common, RunManifest& m) {
    const Alphabet alphabet = Alphabet::parse(a.alphabet);
    const Grid grid = read_grid(a.grid, alphabet, a.mask, m);
    CountConfig cc;
    cc.depth = a.max_depth;
    cc.mode = parse_key_mode(a.mode);
    cc.policy = BoundaryPolicy::parse(a.boundary);
    cc.threads = common.threads;
    const PenaltySize size = parse_penalty_size(a.penalty_n);
    CountTree tree = build_count_tree(grid, cc);
    const OracleResult oracle = exhaustive_pic_oracle(tree, a.bound, size);
    const FitResult fitted = fit_counts(std::move(tree), size);

    auto pruned = fitted.pcn.leaf_keys();
    std::sort(pruned.begin(), pruned.end());
    print_leaves("oracle", oracle.leaves, oracle.report.tree_pic);
    print_leaves("prune", pruned, fitted.report.tree_pic);
    std::printf("candidates: %llu\n", static_cast<unsigned long long>(oracle.candidates));
    const double gap = oracle.runner_up_pic - oracle.report.tree_pic;
    const bool pic_ok = std::abs(oracle.report.tree_pic - fitted.report.tree_pic) <= 1e-9;
    const bool tree_ok = gap <= 1e-9 || pruned == oracle.leaves;
    std::printf("%s\n", pic_ok && tree_ok ? "MATCH" : "MISMATCH");
    return pic_ok && tree_ok ? 0 : kExitInternal;
}

// ---------------------------------------------------------------- inspect

void inspect_model(const Pcn& p) {
    std::printf("model: %zu leaves, depth %d, mode %s, alphabet %zu symbols\n", p.leaves.size(), p.depth(),
                to_string(p.mode).c_str(), p.alphabet.labels().size());
    std::printf("%-28s %10s  %s\n", "context", "n_occ", "Q");
    auto row = [](const PcnNode& n, const char* tag) {
        std::printf("%-28s %10lld  %s%s\n", key_label(n.key).c_str(), static_cast<long long>(n.n_occ),
                    format_probs(n.probs).c_str(), tag);
    };
    for (const auto& l : p.leaves) row(l, "");
    for (const auto& n : p.internal) row(n, "  (expanded)");
    std::map<int, std::pair<int, std::int64_t>> per_order;
    for (const auto& l : p.leaves) {
        auto& e = per_order[l.key.order()];
        ++e.first;
        e.second += l.n_occ;
    }
    std::printf("leaves per order:\n");
    for (const auto& [order, e] : per_order) {
        std::printf("  order %d: %d leaves, %lld occurrences\n", order, e.first, static_cast<long long>(e.second));
    }
}

void inspect_counts(const CountTree& t) {
    std::printf("count tree: depth %d, %lld centers, mode %s\n", t.max_depth, static_cast<long long>(t.n_total),
                to_string(t.mode).c_str());
    std::printf("%-28s %10s  %-16s %s\n", "context", "n_occ", "counts", "Q");
    // Frame-class frequency per order, pooled over the lower frames.
    std::map<int, std::map<std::vector<std::uint16_t>, std::int64_t>> hist;
    for_each_node(t.root, [&](const CountNode& n) {
        std::string counts;
        std::vector<double> q;
        for (auto c : n.center_counts) {
            counts += (counts.empty() ? "" : " ") + std::to_string(c);
            q.push_back(n.n_occ ? static_cast<double>(c) / static_cast<double>(n.n_occ) : 0.0);
        }
        std::printf("%-28s %10lld  %-16s %s\n", key_label(n.key).c_str(), static_cast<long long>(n.n_occ),
                    counts.c_str(), format_probs(q).c_str());
        if (!n.key.is_root()) hist[n.key.order()][n.key.frames.back().payload] += n.n_occ;
    });
    for (const auto& [order, classes] : hist) {
        std::printf("order %d frame classes:\n", order);
        for (const auto& [payload, n] : classes) {
            std::string label;
            for (auto v : payload) label += (label.empty() ? "" : ",") + std::to_string(v);
            std::printf("  %-20s %.4f\n", label.c_str(),
                        static_cast<double>(n) / static_cast<double>(std::max<std::int64_t>(1, t.n_total)));
        }
    }
}

int run_inspect(const std::string& path, const std::string& format, RunManifest& m) {
    if (format != "table" && format != "dot") throw PcnError(ErrorCode::ConfigError, "format must be table or dot");
    const json j = read_json_file(path);
    m.add_input(path);
    const std::string kind = j.is_object() ? j.value("format", std::string{}) : std::string{};
    if (kind == "pcn") {
        const Pcn p = pcn_from_json(j);
        if (format == "dot") {
            std::fputs(pcn_to_dot(p).c_str(), stdout);
        } else {
            inspect_model(p);
        }
        return 0;
    }
    if (kind == "count_tree") {
        if (format == "dot") throw PcnError(ErrorCode::ConfigError, "dot output needs a fitted model");
        inspect_counts(count_tree_from_json(j));
        return 0;
    }
    throw PcnError(ErrorCode::ParseError, path + " is neither a model nor a count tree");
}

// ---------------------------------------------------------------- dispatch

int dispatch(const std::vector<std::string>& args);

int run_replay(const std::string& manifest_path) {
    const json mj = read_json_file(manifest_path);
    if (mj.value("format", std::string{}) != "run_manifest") {
        throw PcnError(ErrorCode::ParseError, manifest_path + " is not a run manifest");
    }
    const auto argv = mj.at("argv").get<std::vector<std::string>>();
    const auto recorded = mj.at("outputs").get<std::map<std::string, std::string>>();
    fs::current_path(mj.at("cwd").get<std::string>());
    const int rc = dispatch(argv);
    if (rc != 0) return rc;
    int differing = 0;
    for (const auto& [path, digest] : recorded) {
        const bool same = fs::exists(path) && sha256_file(path) == digest;
        std::printf("%s %s\n", same ? "same" : "DIFFERS", path.c_str());
        differing += same ? 0 : 1;
    }
    std::printf("%s\n", differing == 0 ? "REPLAY OK" : "REPLAY MISMATCH");
    return differing == 0 ? 0 : kExitInternal;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Probabilistic context neighborhoods on 2D lattices", "pcn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PCN_VERSION);
    Common common;

    FitArgs fa;
    auto* fit_cmd = app.add_subcommand("fit", "select a context tree for a grid");
    fit_cmd->add_option("--grid", fa.grid, "grid file (.csv or whitespace text)")->required();
    fit_cmd->add_option("--alphabet", fa.alphabet, "comma-separated symbol labels")->capture_default_str();
    fit_cmd->add_option("--mask", fa.mask, "token marking masked cells")->capture_default_str();
    fit_cmd->add_option("--mask-substitute", fa.mask_substitute, "label masked cells read as (default: first)");
    fit_cmd->add_option("--max-depth", fa.max_depth, "maximal neighborhood order D")->check(CLI::PositiveNumber);
    fit_cmd->add_option("--mode", fa.mode, "count or position")->capture_default_str();
    fit_cmd->add_option("--boundary", fa.boundary, "interior, mirror or buffer:<k>")->capture_default_str();
    fit_cmd->add_option("--penalty-n", fa.penalty_n, "centers or lattice")->capture_default_str();
    fit_cmd->add_option("--out-dir", fa.out_dir)->capture_default_str();
    fit_cmd->add_flag("--dot", fa.dot, "also write tree.dot");
    fit_cmd->add_flag("--dump-counts", fa.dump_counts, "also write counts.json");
    add_common(fit_cmd, common);

    SimArgs sa;
    auto* sim_cmd = app.add_subcommand("simulate", "sample a lattice from a model");
    sim_cmd->add_option("--pcn", sa.pcn, "model JSON")->required();
    sim_cmd->add_option("--size", sa.size, "side of a square lattice")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--rows", sa.rows)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--cols", sa.cols)->check(CLI::PositiveNumber);
    sim_cmd->add_option("--sweeps", sa.sweeps)->capture_default_str()->check(CLI::PositiveNumber);
    auto* sim_seed = sim_cmd->add_option("--seed", sa.seed, "RNG seed (generated and recorded if absent)");
    sim_cmd->add_option("--scan", sa.scan, "raster or random")->capture_default_str();
    sim_cmd->add_option("--update", sa.update, "heat-bath or metropolis")->capture_default_str();
    sim_cmd->add_option("--init", sa.init, "starting grid (masked cells stay masked)");
    sim_cmd->add_option("--mask", sa.mask)->capture_default_str();
    sim_cmd->add_option("--mask-substitute", sa.mask_substitute);
    sim_cmd->add_option("--out", sa.out, "output grid")->capture_default_str();
    sim_cmd->add_option("--trace", sa.trace, "convergence trace CSV");
    sim_cmd->add_option("--snapshot-every", sa.snapshot_every)->capture_default_str();
    sim_cmd->add_option("--threshold", sa.threshold, "stabilization threshold")->capture_default_str();
    add_common(sim_cmd, common);

    BootArgs ba;
    auto* boot_cmd = app.add_subcommand("bootstrap", "parametric bootstrap intervals for a model");
    boot_cmd->add_option("--pcn", ba.pcn, "model JSON")->required();
    boot_cmd->add_option("--B,--replicates", ba.replicates)->capture_default_str()->check(CLI::PositiveNumber);
    boot_cmd->add_option("--delta", ba.delta, "buffer width, must exceed the model depth")->required();
    boot_cmd->add_option("--size", ba.size, "core side")->check(CLI::PositiveNumber);
    boot_cmd->add_option("--rows", ba.rows)->check(CLI::PositiveNumber);
    boot_cmd->add_option("--cols", ba.cols)->check(CLI::PositiveNumber);
    boot_cmd->add_option("--sweeps", ba.sweeps)->capture_default_str()->check(CLI::PositiveNumber);
    auto* boot_seed = boot_cmd->add_option("--seed", ba.seed);
    boot_cmd->add_flag("--refit", ba.refit, "drop replicates whose refitted tree differs");
    boot_cmd->add_option("--start", ba.start, "starting grid, core or padded size");
    boot_cmd->add_option("--mask", ba.mask)->capture_default_str();
    boot_cmd->add_option("--mask-substitute", ba.mask_substitute);
    boot_cmd->add_option("--scan", ba.scan)->capture_default_str();
    boot_cmd->add_option("--update", ba.update)->capture_default_str();
    boot_cmd->add_option("--penalty-n", ba.penalty_n)->capture_default_str();
    boot_cmd->add_option("--out-dir", ba.out_dir)->capture_default_str();
    add_common(boot_cmd, common);

    OracleArgs oa;
    auto* oracle_cmd = app.add_subcommand("oracle", "compare pruning with exhaustive search");
    oracle_cmd->add_option("--grid", oa.grid)->required();
    oracle_cmd->add_option("--alphabet", oa.alphabet)->capture_default_str();
    oracle_cmd->add_option("--mask", oa.mask)->capture_default_str();
    oracle_cmd->add_option("--max-depth", oa.max_depth)->capture_default_str()->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--mode", oa.mode)->capture_default_str();
    oracle_cmd->add_option("--boundary", oa.boundary)->capture_default_str();
    oracle_cmd->add_option("--penalty-n", oa.penalty_n)->capture_default_str();
    oracle_cmd->add_option("--bound", oa.bound, "maximal number of candidates")->capture_default_str();
    add_common(oracle_cmd, common);

    std::string inspect_path;
    std::string inspect_format = "table";
    auto* inspect_cmd = app.add_subcommand("inspect", "print a model or count tree");
    inspect_cmd->add_option("path", inspect_path, "pcn.json or counts.json")->required();
    inspect_cmd->add_option("--format", inspect_format, "table or dot")->capture_default_str();
    add_common(inspect_cmd, common);

    std::string replay_manifest;
    auto* replay_cmd = app.add_subcommand("replay", "rerun a recorded command and compare outputs");
    replay_cmd->add_option("--manifest", replay_manifest)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        report_error("USAGE", e.what());
        return kExitUsage;
    }

    if (replay_cmd->parsed()) return run_replay(replay_manifest);

    CLI::App* sub = app.get_subcommands().front();
    RunManifest m(sub->get_name(), args);
    record_options(m, *sub);
    m.set_threads(common.threads);
    int rc = 0;
    fs::path manifest_path;
    if (fit_cmd->parsed()) {
        rc = run_fit(fa, common, m);
        manifest_path = fs::path(fa.out_dir) / "manifest.json";
    } else if (sim_cmd->parsed()) {
        rc = run_simulate(sa, sim_seed, m);
        manifest_path = sa.out + ".manifest.json";
    } else if (boot_cmd->parsed()) {
        rc = run_bootstrap(ba, common, boot_seed, m);
        manifest_path = fs::path(ba.out_dir) / "manifest.json";
    } else if (oracle_cmd->parsed()) {
        rc = run_oracle(oa, common, m);
        manifest_path = "oracle.manifest.json";
    } else if (inspect_cmd->parsed()) {
        rc = run_inspect(inspect_path, inspect_format, m);
        manifest_path = "inspect.manifest.json";
    }
    if (!common.manifest.empty()) manifest_path = common.manifest;
    m.write(manifest_path);
    return rc;
}

}  // namespace
}  // namespace pcn::cli

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        return pcn::cli::dispatch(args);
    } catch (const pcn::PcnError& e) {
        pcn::cli::report_error(std::string(pcn::error_name(e.code())), e.what());
        return pcn::cli::kExitUsage;
    } catch (const std::exception& e) {
        pcn::cli::report_error("INTERNAL", e.what());
        return pcn::cli::kExitInternal;
    }
}
