#include "pcn/grid.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "pcn/error.hpp"

namespace pcn {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> tokens;
    std::string current;
    for (char ch : line) {
        if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\r') {
            if (!current.empty()) tokens.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) {
        throw PcnError(ErrorCode::ConfigError, "alphabet needs at least two symbols");
    }
    if (symbols_.size() > 255) {
        throw PcnError(ErrorCode::ConfigError, "alphabet larger than 255 symbols");
    }
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (s.empty()) throw PcnError(ErrorCode::ConfigError, "empty alphabet label");
        if (!seen.insert(s).second) {
            throw PcnError(ErrorCode::ConfigError, "duplicate alphabet label '" + s + "'");
        }
    }
}

Alphabet Alphabet::parse(const std::string& csv) {
    std::vector<std::string> labels;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) labels.push_back(item);
    return Alphabet(std::move(labels));
}

std::optional<Symbol> Alphabet::index_of(const std::string& label) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), label);
    if (it == symbols_.end()) return std::nullopt;
    return static_cast<Symbol>(it - symbols_.begin());
}

Grid::Grid(int rows, int cols, Alphabet alphabet, Symbol fill)
    : Grid(rows, cols, std::move(alphabet),
           std::vector<Symbol>(static_cast<std::size_t>(std::max(rows, 0)) *
                                   static_cast<std::size_t>(std::max(cols, 0)),
                               fill)) {}

Grid::Grid(int rows, int cols, Alphabet alphabet, std::vector<Symbol> cells)
    : rows_(rows), cols_(cols), alphabet_(std::move(alphabet)), cells_(std::move(cells)) {
    if (rows_ < 1 || cols_ < 1) {
        throw PcnError(ErrorCode::ShapeError, "grid must have at least one row and one column");
    }
    if (cells_.size() != static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_)) {
        throw PcnError(ErrorCode::ShapeError, "cell count does not match rows x cols");
    }
    for (Symbol s : cells_) {
        if (s != kMasked && (s < 0 || s >= alphabet_.size())) {
            throw PcnError(ErrorCode::ShapeError, "cell symbol outside the alphabet");
        }
    }
}

std::size_t Grid::masked_count() const {
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), kMasked));
}

BoundaryPolicy BoundaryPolicy::parse(const std::string& text) {
    if (text == "interior") return interior_only();
    if (text == "mirror") return mirror();
    if (text.rfind("buffer:", 0) == 0) {
        try {
            int margin = std::stoi(text.substr(7));
            if (margin >= 1) return buffer(margin);
        } catch (const std::exception&) {
        }
    }
    throw PcnError(ErrorCode::ConfigError,
                   "boundary must be 'interior', 'mirror' or 'buffer:<margin>', got '" + text + "'");
}

std::string BoundaryPolicy::to_string() const {
    switch (mode) {
        case Mode::InteriorOnly: return "interior";
        case Mode::Mirror: return "mirror";
        case Mode::Buffer: return "buffer:" + std::to_string(margin);
    }
    return "interior";
}

Grid parse_grid(std::istream& in, GridFormat /*format*/, const Alphabet& alphabet,
                const std::optional<std::string>& mask_token) {
    std::vector<Symbol> cells;
    int rows = 0;
    int cols = -1;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto tokens = split_tokens(line);
        if (tokens.empty()) continue;
        ++rows;
        if (cols < 0) {
            cols = static_cast<int>(tokens.size());
        } else if (static_cast<int>(tokens.size()) != cols) {
            throw PcnError(ErrorCode::ShapeError,
                           "row " + std::to_string(rows) + " has " + std::to_string(tokens.size()) +
                               " cells, expected " + std::to_string(cols));
        }
        for (std::size_t c = 0; c < tokens.size(); ++c) {
            const auto& tok = tokens[c];
            if (mask_token && tok == *mask_token) {
                cells.push_back(kMasked);
            } else if (auto idx = alphabet.index_of(tok)) {
                cells.push_back(*idx);
            } else {
                throw PcnError(ErrorCode::ParseError, "unknown token '" + tok + "' at (" +
                                                          std::to_string(rows) + "," +
                                                          std::to_string(c + 1) + ")");
            }
        }
    }
    if (rows == 0) throw PcnError(ErrorCode::EmptySample, "grid input has no rows");
    return Grid(rows, cols, alphabet, std::move(cells));
}

Grid load_grid(const std::filesystem::path& path, GridFormat format, const Alphabet& alphabet,
               const std::optional<std::string>& mask_token) {
    std::ifstream in(path);
    if (!in) throw PcnError(ErrorCode::IoError, "cannot open grid file " + path.string());
    return parse_grid(in, format, alphabet, mask_token);
}

void write_grid(std::ostream& out, const Grid& grid, GridFormat format, const std::string& mask_token) {
    const char sep = format == GridFormat::Csv ? ',' : ' ';
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (c > 0) out << sep;
            Symbol s = grid.at(r, c);
            out << (s == kMasked ? mask_token : grid.alphabet().label(s));
        }
        out << '\n';
    }
}

void save_grid(const std::filesystem::path& path, const Grid& grid, GridFormat format,
               const std::string& mask_token) {
    std::ofstream out(path);
    if (!out) throw PcnError(ErrorCode::IoError, "cannot write grid file " + path.string());
    write_grid(out, grid, format, mask_token);
}

GridFormat format_for_path(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? GridFormat::Csv : GridFormat::Text;
}

Grid mirror_pad(const Grid& grid, int margin) {
    if (margin < 1 || margin >= std::min(grid.rows(), grid.cols())) {
        throw PcnError(ErrorCode::MarginError,
                       "mirror margin " + std::to_string(margin) + " needs a grid of at least " +
                           std::to_string(margin + 1) + " cells per side");
    }
    const int rows = grid.rows() + 2 * margin;
    const int cols = grid.cols() + 2 * margin;
    Grid padded(rows, cols, grid.alphabet());
    for (int r = 0; r < rows; ++r) {
        const int sr = reflect_index(r - margin, grid.rows());
        for (int c = 0; c < cols; ++c) {
            padded.set(r, c, grid.at(sr, reflect_index(c - margin, grid.cols())));
        }
    }
    return padded;
}

bool is_valid_center(const Grid& grid, Site site, int depth, const BoundaryPolicy& policy) {
    if (!grid.contains(site.row, site.col) || grid.masked(site.row, site.col)) return false;
    auto inset = [&](int d) {
        return site.row >= d && site.col >= d && site.row < grid.rows() - d &&
               site.col < grid.cols() - d;
    };
    switch (policy.mode) {
        case BoundaryPolicy::Mode::InteriorOnly:
            return inset(depth);
        case BoundaryPolicy::Mode::Mirror:
            return depth < std::min(grid.rows(), grid.cols());
        case BoundaryPolicy::Mode::Buffer:
            return policy.margin >= depth && inset(policy.margin);
    }
    return false;
}

std::vector<Site> valid_centers(const Grid& grid, int depth, const BoundaryPolicy& policy) {
    std::vector<Site> out;
    for (int r = 0; r < grid.rows(); ++r) {
        for (int c = 0; c < grid.cols(); ++c) {
            if (is_valid_center(grid, {r, c}, depth, policy)) out.push_back({r, c});
        }
    }
    return out;
}

}  // namespace pcn
