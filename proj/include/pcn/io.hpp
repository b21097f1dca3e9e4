#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "pcn/bootstrap.hpp"
#include "pcn/counting.hpp"
#include "pcn/sampler.hpp"
#include "pcn/selection.hpp"

namespace pcn {

inline constexpr int kFormatVersion = 1;

nlohmann::json pcn_to_json(const Pcn& pcn);
/// Accepts hand-written models: n_occ and counts are optional per node.
Pcn pcn_from_json(const nlohmann::json& j);

nlohmann::json pic_report_to_json(const PicReport& report);
PicReport pic_report_from_json(const nlohmann::json& j);

/// Depth-first node list: key string, n_occ, center_counts.
nlohmann::json count_tree_to_json(const CountTree& tree);
CountTree count_tree_from_json(const nlohmann::json& j);

/// Root-down drawing of the model; leaves labelled with key and law.
std::string pcn_to_dot(const Pcn& pcn);

/// Columns: context,symbol,lower,median,upper,replicates,median_n_occ.
/// Absent bounds are written as NA.
void write_ci_csv(std::ostream& out, const CiTable& table);

/// Columns: sweep, one frequency column per first-frame class, max_diff.
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace pcn
