#include "pcn/geometry.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pcn/error.hpp"

namespace pcn {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw PcnError(ErrorCode::CountOverflow, "configuration count exceeds 64 bits");
    }
    return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 acc = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        acc = acc * (n - i) / (i + 1);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            throw PcnError(ErrorCode::CountOverflow, "configuration count exceeds 64 bits");
        }
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t exp) {
    std::uint64_t out = 1;
    for (std::uint64_t i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

void enumerate_counts(std::vector<std::uint16_t>& current, std::size_t slot, int remaining,
                      std::vector<std::vector<std::uint16_t>>& out) {
    if (slot + 1 == current.size()) {
        current[slot] = static_cast<std::uint16_t>(remaining);
        out.push_back(current);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        current[slot] = static_cast<std::uint16_t>(v);
        enumerate_counts(current, slot + 1, remaining - v, out);
    }
}

std::size_t mix(std::size_t seed, std::size_t v) noexcept {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

std::string to_string(KeyMode mode) { return mode == KeyMode::Count ? "count" : "position"; }

KeyMode parse_key_mode(const std::string& text) {
    if (text == "count") return KeyMode::Count;
    if (text == "position") return KeyMode::Position;
    throw PcnError(ErrorCode::ConfigError, "mode must be 'count' or 'position', got '" + text + "'");
}

ContextKey ContextKey::prefix(int order) const {
    ContextKey out{mode, {}};
    out.frames.assign(frames.begin(), frames.begin() + order);
    return out;
}

ContextKey ContextKey::child(FrameKey frame) const {
    ContextKey out = *this;
    out.frames.push_back(std::move(frame));
    return out;
}

std::size_t FrameKeyHash::operator()(const FrameKey& key) const noexcept {
    std::size_t h = mix(static_cast<std::size_t>(key.order), static_cast<std::size_t>(key.mode));
    for (auto v : key.payload) h = mix(h, v);
    return h;
}

std::size_t ContextKeyHash::operator()(const ContextKey& key) const noexcept {
    std::size_t h = static_cast<std::size_t>(key.mode);
    FrameKeyHash fh;
    for (const auto& f : key.frames) h = mix(h, fh(f));
    return h;
}

std::vector<Offset> frame_offsets(int j) {
    std::vector<Offset> out;
    if (j < 1) return out;
    out.reserve(static_cast<std::size_t>(8 * j));
    for (int dc = -j; dc <= j; ++dc) out.push_back({-j, dc});
    for (int dr = -j + 1; dr <= j - 1; ++dr) {
        out.push_back({dr, -j});
        out.push_back({dr, j});
    }
    for (int dc = -j; dc <= j; ++dc) out.push_back({j, dc});
    return out;
}

std::int64_t neighborhood_size(int k) {
    return 4LL * k * k + 4LL * k;
}

std::uint64_t num_classes(int j, int alphabet_size, KeyMode mode) {
    if (j < 1 || alphabet_size < 2) {
        throw PcnError(ErrorCode::ConfigError, "num_classes needs j >= 1 and |A| >= 2");
    }
    const auto a = static_cast<std::uint64_t>(alphabet_size);
    if (mode == KeyMode::Count) return binomial(8ULL * j + a - 1, a - 1);
    return ipow(a, 8ULL * j);
}

std::uint64_t max_leaves(int depth, int alphabet_size, KeyMode mode) {
    if (depth < 1 || alphabet_size < 2) {
        throw PcnError(ErrorCode::ConfigError, "max_leaves needs depth >= 1 and |A| >= 2");
    }
    if (mode == KeyMode::Position) {
        return ipow(static_cast<std::uint64_t>(alphabet_size),
                    static_cast<std::uint64_t>(neighborhood_size(depth)));
    }
    std::uint64_t out = 1;
    for (int k = 1; k <= depth; ++k) out = checked_mul(out, num_classes(k, alphabet_size, mode));
    return out;
}

std::vector<std::vector<std::uint16_t>> count_classes(int j, int alphabet_size) {
    std::vector<std::vector<std::uint16_t>> out;
    std::vector<std::uint16_t> current(static_cast<std::size_t>(alphabet_size), 0);
    enumerate_counts(current, 0, 8 * j, out);
    return out;
}

const std::vector<Offset>& cached_frame_offsets(int j) {
    static const std::vector<std::vector<Offset>> table = [] {
        std::vector<std::vector<Offset>> t;
        for (int k = 0; k <= 16; ++k) t.push_back(frame_offsets(k));
        return t;
    }();
    if (j >= 0 && j < static_cast<int>(table.size())) return table[static_cast<std::size_t>(j)];
    thread_local std::vector<Offset> scratch;
    scratch = frame_offsets(j);
    return scratch;
}

FrameKey NeighborhoodReader::frame(Site site, int j, KeyMode mode) const {
    FrameKey key{j, mode, {}};
    const auto& offsets = cached_frame_offsets(j);
    if (mode == KeyMode::Count) {
        key.payload.assign(static_cast<std::size_t>(grid_->alphabet().size()), 0);
        for (const auto& o : offsets) ++key.payload[static_cast<std::size_t>(read(site.row + o.dr, site.col + o.dc))];
    } else {
        key.payload.reserve(offsets.size());
        for (const auto& o : offsets) {
            key.payload.push_back(static_cast<std::uint16_t>(read(site.row + o.dr, site.col + o.dc)));
        }
    }
    return key;
}

ContextKey extract_context(const Grid& grid, Site site, int depth, KeyMode mode,
                           const BoundaryPolicy& policy, Symbol mask_substitute) {
    if (!is_valid_center(grid, site, depth, policy)) {
        throw PcnError(ErrorCode::OutOfBounds, "site (" + std::to_string(site.row) + "," +
                                                   std::to_string(site.col) +
                                                   ") is not a valid center at depth " +
                                                   std::to_string(depth));
    }
    NeighborhoodReader reader(grid, policy, mask_substitute);
    ContextKey key = ContextKey::root(mode);
    for (int j = 1; j <= depth; ++j) key.frames.push_back(reader.frame(site, j, mode));
    return key;
}

bool is_suffix(const ContextKey& shorter, const ContextKey& longer) {
    if (shorter.mode != longer.mode) {
        throw PcnError(ErrorCode::ModeError, "cannot compare keys of different modes");
    }
    if (shorter.frames.size() > longer.frames.size()) return false;
    for (std::size_t i = 0; i < shorter.frames.size(); ++i) {
        if (shorter.frames[i] != longer.frames[i]) return false;
    }
    return true;
}

std::string key_to_string(const ContextKey& key) {
    std::ostringstream out;
    for (std::size_t i = 0; i < key.frames.size(); ++i) {
        if (i > 0) out << '|';
        const auto& f = key.frames[i];
        out << f.order << ':';
        const char sep = key.mode == KeyMode::Count ? ',' : ' ';
        for (std::size_t k = 0; k < f.payload.size(); ++k) {
            if (k > 0) out << sep;
            out << f.payload[k];
        }
    }
    return out.str();
}

ContextKey key_from_string(const std::string& text, KeyMode mode, int alphabet_size) {
    ContextKey key = ContextKey::root(mode);
    if (text.empty() || text == "root") return key;
    auto fail = [&](const std::string& why) {
        return PcnError(ErrorCode::ParseError, "bad context key '" + text + "': " + why);
    };
    std::stringstream frames(text);
    std::string part;
    while (std::getline(frames, part, '|')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) throw fail("missing ':'");
        int order = 0;
        try {
            order = std::stoi(part.substr(0, colon));
        } catch (const std::exception&) {
            throw fail("bad order");
        }
        if (order != key.order() + 1) throw fail("frame orders must run 1, 2, ...");
        FrameKey f{order, mode, {}};
        std::string body = part.substr(colon + 1);
        for (char& ch : body) {
            if (ch == ',') ch = ' ';
        }
        std::stringstream values(body);
        long v = 0;
        long sum = 0;
        while (values >> v) {
            if (v < 0 || v > 65535) throw fail("value out of range");
            f.payload.push_back(static_cast<std::uint16_t>(v));
            sum += v;
        }
        if (!values.eof()) throw fail("non-numeric value");
        if (mode == KeyMode::Count) {
            if (static_cast<int>(f.payload.size()) != alphabet_size || sum != 8L * order) {
                throw fail("count frame needs |A| entries summing to 8*order");
            }
        } else {
            if (static_cast<int>(f.payload.size()) != 8 * order) throw fail("position frame needs 8*order symbols");
            for (auto s : f.payload) {
                if (s >= alphabet_size) throw fail("symbol index outside alphabet");
            }
        }
        key.frames.push_back(std::move(f));
    }
    return key;
}

}  // namespace pcn
