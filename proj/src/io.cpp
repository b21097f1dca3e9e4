#include "pcn/io.hpp"

#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "pcn/error.hpp"

namespace pcn {

using nlohmann::json;

namespace {

json node_to_json(const PcnNode& n) {
    return json{{"key", key_to_string(n.key)}, {"n_occ", n.n_occ}, {"counts", n.counts}, {"probs", n.probs}};
}

PcnNode node_from_json(const json& j, KeyMode mode, int alphabet_size) {
    PcnNode n;
    n.key = key_from_string(j.at("key").get<std::string>(), mode, alphabet_size);
    n.n_occ = j.value("n_occ", std::int64_t{0});
    if (j.contains("counts")) n.counts = j.at("counts").get<std::vector<std::int64_t>>();
    n.probs = j.at("probs").get<std::vector<double>>();
    return n;
}

void check_format(const json& j, const std::string& format) {
    if (!j.is_object() || j.value("format", std::string{}) != format) {
        throw PcnError(ErrorCode::ParseError, "expected a '" + format + "' document");
    }
    if (j.value("version", 0) != kFormatVersion) {
        throw PcnError(ErrorCode::ParseError, "unsupported " + format + " version");
    }
}

std::string format_prob(double p) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << p;
    return out.str();
}

}  // namespace

json pcn_to_json(const Pcn& pcn) {
    json leaves = json::array();
    for (const auto& l : pcn.leaves) leaves.push_back(node_to_json(l));
    json internal = json::array();
    for (const auto& n : pcn.internal) internal.push_back(node_to_json(n));
    return json{{"format", "pcn"},
                {"version", kFormatVersion},
                {"alphabet", pcn.alphabet.labels()},
                {"mode", to_string(pcn.mode)},
                {"depth", pcn.depth()},
                {"leaves", leaves},
                {"internal", internal}};
}

Pcn pcn_from_json(const json& j) {
    try {
        check_format(j, "pcn");
        Pcn pcn;
        pcn.alphabet = Alphabet(j.at("alphabet").get<std::vector<std::string>>());
        pcn.mode = parse_key_mode(j.at("mode").get<std::string>());
        for (const auto& l : j.at("leaves")) pcn.leaves.push_back(node_from_json(l, pcn.mode, pcn.alphabet.size()));
        if (j.contains("internal")) {
            for (const auto& n : j.at("internal")) {
                pcn.internal.push_back(node_from_json(n, pcn.mode, pcn.alphabet.size()));
            }
        }
        pcn.validate();
        return pcn;
    } catch (const json::exception& e) {
        throw PcnError(ErrorCode::ParseError, std::string("malformed model: ") + e.what());
    }
}

json pic_report_to_json(const PicReport& r) {
    return json{{"format", "pic_report"},   {"version", kFormatVersion},  {"tree_pic", r.tree_pic},
                {"tree_log_mpl", r.tree_log_mpl}, {"leaf_count", r.leaf_count}, {"penalty", r.penalty}};
}

PicReport pic_report_from_json(const json& j) {
    try {
        check_format(j, "pic_report");
        return PicReport{j.at("tree_pic").get<double>(), j.at("tree_log_mpl").get<double>(),
                         j.at("leaf_count").get<std::int64_t>(), j.at("penalty").get<double>()};
    } catch (const json::exception& e) {
        throw PcnError(ErrorCode::ParseError, std::string("malformed PIC report: ") + e.what());
    }
}

json count_tree_to_json(const CountTree& tree) {
    json nodes = json::array();
    for_each_node(tree.root, [&](const CountNode& n) {
        nodes.push_back(json{{"key", key_to_string(n.key)}, {"n_occ", n.n_occ}, {"center_counts", n.center_counts}});
    });
    return json{{"format", "count_tree"},
                {"version", kFormatVersion},
                {"alphabet", tree.alphabet.labels()},
                {"mode", to_string(tree.mode)},
                {"max_depth", tree.max_depth},
                {"n_total", tree.n_total},
                {"lattice_size", tree.lattice_size},
                {"nodes", nodes}};
}

CountTree count_tree_from_json(const json& j) {
    try {
        check_format(j, "count_tree");
        Alphabet alphabet(j.at("alphabet").get<std::vector<std::string>>());
        const KeyMode mode = parse_key_mode(j.at("mode").get<std::string>());
        CountTree tree = empty_count_tree(alphabet, j.at("max_depth").get<int>(), mode);
        tree.n_total = j.at("n_total").get<std::int64_t>();
        tree.lattice_size = j.value("lattice_size", tree.n_total);
        for (const auto& n : j.at("nodes")) {
            const ContextKey key = key_from_string(n.at("key").get<std::string>(), mode, alphabet.size());
            CountNode* node = &tree.root;
            for (const auto& f : key.frames) node = &node->child_for(f, alphabet.size());
            node->n_occ = n.at("n_occ").get<std::int64_t>();
            node->center_counts = n.at("center_counts").get<std::vector<std::int64_t>>();
            if (static_cast<int>(node->center_counts.size()) != alphabet.size()) {
                throw PcnError(ErrorCode::ParseError, "center_counts length differs from the alphabet");
            }
        }
        return tree;
    } catch (const json::exception& e) {
        throw PcnError(ErrorCode::ParseError, std::string("malformed count tree: ") + e.what());
    }
}

std::string pcn_to_dot(const Pcn& pcn) {
    // Collect every node on a root-to-leaf path, in canonical key order.
    std::map<ContextKey, const PcnNode*> nodes;
    for (const auto& l : pcn.leaves) {
        for (int j = 0; j < l.key.order(); ++j) nodes.emplace(l.key.prefix(j), nullptr);
        nodes[l.key] = &l;
    }
    std::map<ContextKey, int> ids;
    for (const auto& [k, _] : nodes) ids.emplace(k, static_cast<int>(ids.size()));

    std::ostringstream out;
    out << "digraph pcn {\n  node [shape=box, fontname=\"Helvetica\"];\n";
    for (const auto& [key, leaf] : nodes) {
        std::string label = key.is_root() ? "root" : key_to_string(key);
        if (leaf != nullptr) {
            label += "\\nQ=(";
            for (std::size_t a = 0; a < leaf->probs.size(); ++a) {
                if (a > 0) label += ", ";
                label += format_prob(leaf->probs[a]);
            }
            label += ")";
        }
        out << "  n" << ids.at(key) << " [label=\"" << label << "\"" << (leaf ? ", style=rounded" : "") << "];\n";
    }
    for (const auto& [key, _] : nodes) {
        if (key.is_root()) continue;
        out << "  n" << ids.at(key.prefix(key.order() - 1)) << " -> n" << ids.at(key) << ";\n";
    }
    out << "}\n";
    return out.str();
}

void write_ci_csv(std::ostream& out, const CiTable& table) {
    auto opt = [](const std::optional<double>& v) { return v ? format_prob(*v) : std::string("NA"); };
    out << "context,symbol,lower,median,upper,replicates,median_n_occ\n";
    for (const auto& r : table.rows) {
        out << '"' << key_to_string(r.key) << "\"," << table.alphabet.label(r.symbol) << ',' << opt(r.lower) << ','
            << opt(r.median) << ',' << opt(r.upper) << ',' << r.replicates_observed << ',' << r.median_n_occ << '\n';
    }
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
    out << "sweep";
    for (const auto& c : trace.classes) {
        out << ",class";
        for (auto v : c) out << '_' << v;
    }
    out << ",max_diff\n";
    out << std::setprecision(10);
    for (std::size_t k = 0; k < trace.frequencies.size(); ++k) {
        out << k;
        for (double f : trace.frequencies[k]) out << ',' << f;
        out << ',' << trace.max_diff[k] << '\n';
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw PcnError(ErrorCode::IoError, "cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw PcnError(ErrorCode::ParseError, path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw PcnError(ErrorCode::IoError, "cannot write " + path.string());
    out << text;
}

}  // namespace pcn
