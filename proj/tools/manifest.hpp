#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace pcn::cli {

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Record of one command run: enough to rerun it and to check that the
/// rerun wrote the same bytes.
class RunManifest {
public:
    RunManifest(std::string command, std::vector<std::string> argv);

    void set_option(const std::string& name, nlohmann::json value) { options_[name] = std::move(value); }
    void set_seed(std::uint64_t seed, bool generated);
    void add_input(const std::filesystem::path& path) { inputs_.push_back(path); }
    void add_output(const std::filesystem::path& path) { outputs_.push_back(path); }
    void add_argument(std::string arg) { argv_.push_back(std::move(arg)); }
    void set_threads(int threads) { threads_ = threads; }

    nlohmann::json to_json() const;
    void write(const std::filesystem::path& path) const;

private:
    std::string command_;
    std::vector<std::string> argv_;
    nlohmann::json options_ = nlohmann::json::object();
    std::optional<std::uint64_t> seed_;
    bool seed_generated_ = false;
    int threads_ = 1;
    std::vector<std::filesystem::path> inputs_;
    std::vector<std::filesystem::path> outputs_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace pcn::cli
