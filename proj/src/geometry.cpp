#include "fractal_fdm/geometry.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>

#include "fractal_fdm/errors.hpp"

namespace fractal_fdm {

namespace {

constexpr int kUnsetLevel = -1;
std::atomic<int> g_level_override{kUnsetLevel};

int level_from_env() {
    const char* raw = std::getenv("FRACTAL_FDM_MAX_LEVEL");
    if (raw == nullptr) return kDefaultMaxLevel;
    std::string_view text(raw);
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return kDefaultMaxLevel;
    return std::clamp(value, 0, kHardMaxLevel);
}

// The second map turns by a quarter; the third is axis-aligned so that its
// start point f_3(P_0) = (1/4, 1/4) matches f_2(P_1) and its end point is (1/2, 1/4).
constexpr std::array<Similarity, 8> kMaps{{
    {0, 0, 0},
    {1, 1, 0},
    {0, 1, 1},
    {3, 2, 1},
    {3, 2, 0},
    {0, 2, -1},
    {1, 3, -1},
    {0, 3, 0},
}};

}  // namespace

int max_level() {
    int level = g_level_override.load(std::memory_order_relaxed);
    if (level != kUnsetLevel) return level;
    static const int env_level = level_from_env();
    return env_level;
}

void set_max_level(int level) {
    g_level_override.store(std::clamp(level, 0, kHardMaxLevel), std::memory_order_relaxed);
}

void require_level(int m) {
    if (m < 0) throw InvalidArgument("graph level must be non-negative, got " + std::to_string(m));
    if (m > max_level()) {
        throw ResourceLimit("graph level " + std::to_string(m) + " exceeds the cap of " +
                            std::to_string(max_level()) +
                            " (set FRACTAL_FDM_MAX_LEVEL to raise it)");
    }
}

std::uint64_t pow8(int m) {
    if (m < 0 || m > 20) throw InvalidArgument("8^m is only defined here for 0 <= m <= 20");
    return std::uint64_t{1} << (3 * m);
}

double pow64(int m) {
    if (m < 0) throw InvalidArgument("64^m requires m >= 0");
    return std::ldexp(1.0, 6 * m);
}

double distance(Point2 p, Point2 q) { return std::hypot(p.x - q.x, p.y - q.y); }

// ---------------------------------------------------------------------------

Word::Word(std::vector<int> letters) {
    letters_.reserve(letters.size());
    for (int letter : letters) {
        if (letter < 1 || letter > 8) {
            throw InvalidArgument("word letters must lie in 1..8, got " + std::to_string(letter));
        }
        letters_.push_back(static_cast<std::uint8_t>(letter));
    }
}

Word Word::parse(std::string_view digits) {
    std::vector<int> letters;
    letters.reserve(digits.size());
    for (char c : digits) {
        if (c < '1' || c > '8') {
            throw InvalidArgument("address digits must be 1..8, got '" + std::string(digits) + "'");
        }
        letters.push_back(c - '0');
    }
    return Word(std::move(letters));
}

Word Word::appended(int letter) const {
    if (letter < 1 || letter > 8) {
        throw InvalidArgument("word letters must lie in 1..8, got " + std::to_string(letter));
    }
    Word out = *this;
    out.letters_.push_back(static_cast<std::uint8_t>(letter));
    return out;
}

std::string Word::str() const {
    std::string out;
    out.reserve(letters_.size());
    for (auto letter : letters_) out.push_back(static_cast<char>('0' + letter));
    return out;
}

Point2 Similarity::operator()(Point2 p) const noexcept {
    Point2 r = p;
    switch (quarter_turns & 3) {
        case 1: r = {-p.y, p.x}; break;
        case 2: r = {-p.x, -p.y}; break;
        case 3: r = {p.y, -p.x}; break;
        default: break;
    }
    return {0.25 * (r.x + tx), 0.25 * (r.y + ty)};
}

const std::array<Similarity, 8>& minkowski_maps() noexcept { return kMaps; }

Point2 apply_map(int i, Point2 p) {
    if (i < 1 || i > 8) throw InvalidArgument("map index must lie in 1..8, got " + std::to_string(i));
    return kMaps[static_cast<std::size_t>(i - 1)](p);
}

Point2 apply_word(const Word& w, Point2 p) {
    auto letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) p = kMaps[*it - 1u](p);
    return p;
}

std::vector<Word> enumerate_words(int m) {
    require_level(m);
    const std::uint64_t count = pow8(m);
    std::vector<Word> words;
    words.reserve(count);
    std::vector<int> letters(static_cast<std::size_t>(m));
    for (std::uint64_t n = 0; n < count; ++n) {
        std::uint64_t rest = n;
        for (int pos = m - 1; pos >= 0; --pos) {
            letters[static_cast<std::size_t>(pos)] = static_cast<int>(rest & 7u) + 1;
            rest >>= 3;
        }
        words.emplace_back(letters);
    }
    return words;
}

std::optional<Word> canonical_address(int m, std::uint64_t index) {
    if (m < 0) throw InvalidArgument("graph level must be non-negative");
    if (index > pow8(m)) throw InvalidArgument("vertex index out of range for level " + std::to_string(m));
    if (index == 0) return std::nullopt;
    std::vector<int> letters(static_cast<std::size_t>(m));
    std::uint64_t rest = index - 1;
    for (int pos = m - 1; pos >= 0; --pos) {
        letters[static_cast<std::size_t>(pos)] = static_cast<int>(rest & 7u) + 1;
        rest >>= 3;
    }
    return Word(std::move(letters));
}

// ---------------------------------------------------------------------------

std::string Vertex::address_string() const { return address ? address->str() : "origin"; }

GraphApprox::GraphApprox(int level, std::vector<Point2> coords)
    : level_(level), coords_(std::move(coords)) {
    if (level_ < 0) throw InvalidArgument("graph level must be non-negative");
    if (coords_.size() != vertex_count(level_)) {
        throw InvalidArgument("a level-" + std::to_string(level_) + " graph needs " +
                              std::to_string(vertex_count(level_)) + " vertices");
    }
}

double GraphApprox::param(std::size_t i) const {
    return static_cast<double>(i) / static_cast<double>(pow8(level_));
}

int GraphApprox::degree(std::size_t i) const {
    if (i >= coords_.size()) throw InvalidArgument("vertex index out of range");
    return (i == 0 || i + 1 == coords_.size()) ? 1 : 2;
}

Vertex GraphApprox::vertex(std::size_t i) const {
    if (i >= coords_.size()) throw InvalidArgument("vertex index out of range");
    return Vertex{coords_[i], i, param(i), canonical_address(level_, i)};
}

GraphApprox build_graph(int m) {
    require_level(m);
    // V_m minus P_0 in lexicographic word order is f_1(W) ++ ... ++ f_8(W),
    // where W is V_{m-1} minus P_0 in the same order. Built in place: the
    // level-l chain occupies [1, 8^l], block 0 is overwritten last.
    std::vector<Point2> coords(vertex_count(m));
    coords[0] = kP0;
    coords[1] = kP1;
    std::size_t block = 1;
    for (int level = 1; level <= m; ++level) {
        for (std::size_t i = 7; i >= 1; --i) {
            const auto& f = kMaps[i];
            for (std::size_t j = 0; j < block; ++j) coords[1 + i * block + j] = f(coords[1 + j]);
        }
        for (std::size_t j = 0; j < block; ++j) coords[1 + j] = kMaps[0](coords[1 + j]);
        block *= 8;
    }
    return GraphApprox(m, std::move(coords));
}

}  // namespace fractal_fdm
