#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "pcn/error.hpp"
#include "pcn/io.hpp"

#ifndef PCN_VERSION
#define PCN_VERSION "0.0.0"
#endif

namespace pcn::cli {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PcnError(ErrorCode::IoError, "cannot read " + path.string());
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md.data(), &len);
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

RunManifest::RunManifest(std::string command, std::vector<std::string> argv)
    : command_(std::move(command)), argv_(std::move(argv)), start_(std::chrono::steady_clock::now()) {}

void RunManifest::set_seed(std::uint64_t seed, bool generated) {
    seed_ = seed;
    seed_generated_ = generated;
    options_["seed"] = std::to_string(seed);
}

nlohmann::json RunManifest::to_json() const {
    auto digests = [](const std::vector<std::filesystem::path>& paths) {
        nlohmann::json out = nlohmann::json::object();
        for (const auto& p : paths) out[p.string()] = sha256_file(p);
        return out;
    };
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
    nlohmann::json j{{"format", "run_manifest"},
                     {"version", kFormatVersion},
                     {"tool", "pcn"},
                     {"tool_version", PCN_VERSION},
                     {"command", command_},
                     {"argv", argv_},
                     {"cwd", std::filesystem::current_path().string()},
                     {"options", options_},
                     {"threads", threads_},
                     {"inputs", digests(inputs_)},
                     {"outputs", digests(outputs_)},
                     {"duration_seconds", elapsed.count()}};
    if (seed_) {
        j["seed"] = *seed_;
        j["seed_generated"] = seed_generated_;
    } else {
        j["seed"] = nullptr;
    }
    return j;
}

void RunManifest::write(const std::filesystem::path& path) const { write_json_file(path, to_json()); }

}  // namespace pcn::cli
