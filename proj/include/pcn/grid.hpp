#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pcn {

using Symbol = std::int16_t;
inline constexpr Symbol kMasked = -1;

struct Site {
    int row = 0;
    int col = 0;
    friend bool operator==(const Site&, const Site&) = default;
};

/// Ordered set of distinct symbol labels. Index order is canonical for every
/// count vector and probability row downstream.
class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> symbols);

    /// Parses a comma-separated label list such as "white,black".
    static Alphabet parse(const std::string& csv);

    int size() const noexcept { return static_cast<int>(symbols_.size()); }
    const std::string& label(Symbol s) const { return symbols_.at(static_cast<std::size_t>(s)); }
    const std::vector<std::string>& labels() const noexcept { return symbols_; }
    std::optional<Symbol> index_of(const std::string& label) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

class Grid {
public:
    Grid() = default;
    Grid(int rows, int cols, Alphabet alphabet, Symbol fill = 0);
    Grid(int rows, int cols, Alphabet alphabet, std::vector<Symbol> cells);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const Alphabet& alphabet() const noexcept { return alphabet_; }
    const std::vector<Symbol>& cells() const noexcept { return cells_; }

    Symbol at(int r, int c) const { return cells_[index(r, c)]; }
    Symbol at(Site s) const { return at(s.row, s.col); }
    void set(int r, int c, Symbol v) { cells_[index(r, c)] = v; }
    bool masked(int r, int c) const { return at(r, c) == kMasked; }
    bool contains(int r, int c) const noexcept { return r >= 0 && c >= 0 && r < rows_ && c < cols_; }
    std::size_t masked_count() const;

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    std::size_t index(int r, int c) const noexcept {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    int cols_ = 0;
    Alphabet alphabet_;
    std::vector<Symbol> cells_;
};

/// How neighborhoods of sites near the lattice edge are resolved.
///   InteriorOnly: only sites whose full neighborhood lies inside the grid.
///   Mirror: out-of-range reads reflect about the edge (edge not repeated).
///   Buffer: the outer `margin` rings are context only; centers are the core.
struct BoundaryPolicy {
    enum class Mode { InteriorOnly, Mirror, Buffer };

    Mode mode = Mode::InteriorOnly;
    int margin = 0;

    static BoundaryPolicy interior_only() { return {Mode::InteriorOnly, 0}; }
    static BoundaryPolicy mirror() { return {Mode::Mirror, 0}; }
    static BoundaryPolicy buffer(int margin) { return {Mode::Buffer, margin}; }

    /// "interior", "mirror" or "buffer:<margin>".
    static BoundaryPolicy parse(const std::string& text);
    std::string to_string() const;

    friend bool operator==(const BoundaryPolicy&, const BoundaryPolicy&) = default;
};

enum class GridFormat { Text, Csv };

inline constexpr const char* kDefaultMaskToken = "NA";

Grid parse_grid(std::istream& in, GridFormat format, const Alphabet& alphabet,
                const std::optional<std::string>& mask_token = std::nullopt);
Grid load_grid(const std::filesystem::path& path, GridFormat format, const Alphabet& alphabet,
               const std::optional<std::string>& mask_token = std::nullopt);

void write_grid(std::ostream& out, const Grid& grid, GridFormat format,
                const std::string& mask_token = kDefaultMaskToken);
void save_grid(const std::filesystem::path& path, const Grid& grid, GridFormat format,
               const std::string& mask_token = kDefaultMaskToken);

/// Format guess from the extension: ".csv" is CSV, anything else text.
GridFormat format_for_path(const std::filesystem::path& path);

/// Reflects an out-of-range index back into [0, n). Valid while the overshoot
/// is at most n - 1.
inline int reflect_index(int i, int n) noexcept {
    if (i < 0) return -i;
    if (i >= n) return 2 * (n - 1) - i;
    return i;
}

Grid mirror_pad(const Grid& grid, int margin);

bool is_valid_center(const Grid& grid, Site site, int depth, const BoundaryPolicy& policy);

/// Row-major list of sites whose order-`depth` neighborhood can be read under
/// the policy. Masked sites are never centers.
std::vector<Site> valid_centers(const Grid& grid, int depth, const BoundaryPolicy& policy);

}  // namespace pcn
