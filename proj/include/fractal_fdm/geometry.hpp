#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fractal_fdm {

// ---------------------------------------------------------------------------
// Level limits
// ---------------------------------------------------------------------------

inline constexpr int kDefaultMaxLevel = 8;
/// Upper bound any override is clamped to.
inline constexpr int kHardMaxLevel = 10;

/// Current level cap. Reads FRACTAL_FDM_MAX_LEVEL on first use unless
/// set_max_level() has been called.
int max_level();

/// Process-wide override of the level cap (clamped to [0, kHardMaxLevel]).
void set_max_level(int level);

/// Throws InvalidArgument for m < 0 and ResourceLimit for m > max_level().
void require_level(int m);

/// 8^m as an exact integer.
std::uint64_t pow8(int m);

/// 64^m; exact in double for every level below the hard cap.
double pow64(int m);

/// Number of vertices of the level-m chain, 8^m + 1.
inline std::size_t vertex_count(int m) { return static_cast<std::size_t>(pow8(m)) + 1; }

// ---------------------------------------------------------------------------
// Points, words and the eight similarities
// ---------------------------------------------------------------------------

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline constexpr Point2 kP0{0.0, 0.0};
inline constexpr Point2 kP1{1.0, 0.0};

double distance(Point2 p, Point2 q);

/// Address w in {1..8}^m. The empty word is the identity map.
class Word {
public:
    Word() = default;

    /// Throws InvalidArgument if any letter is outside 1..8.
    explicit Word(std::vector<int> letters);

    /// Parses a digit string such as "121". The empty string is the empty word.
    static Word parse(std::string_view digits);

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    std::span<const std::uint8_t> letters() const noexcept { return letters_; }

    /// Copy of this word with one more letter at the end.
    Word appended(int letter) const;

    /// Digit-string rendering, e.g. "121".
    std::string str() const;

    friend auto operator<=>(const Word&, const Word&) = default;
    friend bool operator==(const Word&, const Word&) = default;

private:
    std::vector<std::uint8_t> letters_;
};

/// One contraction of the Minkowski IFS: p -> (R p + t) / 4 with R a quarter turn.
struct Similarity {
    int quarter_turns = 0;  // counter-clockwise, in {0, 1, 3}
    int tx = 0;
    int ty = 0;

    Point2 operator()(Point2 p) const noexcept;
};

/// The eight maps f_1..f_8 (index 0 holds f_1).
const std::array<Similarity, 8>& minkowski_maps() noexcept;

/// f_i(p) for i in 1..8.
Point2 apply_map(int i, Point2 p);

/// f_{w_1} o f_{w_2} o ... o f_{w_m}(p).
Point2 apply_word(const Word& w, Point2 p);

/// All 8^m words of length m in lexicographic order.
std::vector<Word> enumerate_words(int m);

/// Canonical address of vertex `index` of the level-m chain: the word w with
/// vertex = f_w(P_1). Returns nullopt for index 0 (the origin P_0).
std::optional<Word> canonical_address(int m, std::uint64_t index);

// ---------------------------------------------------------------------------
// Graph approximation
// ---------------------------------------------------------------------------

struct Vertex {
    Point2 coords;
    std::uint64_t index = 0;
    double param = 0.0;            // index / 8^m
    std::optional<Word> address;   // empty for P_0

    /// Digit string of the address, or "origin" for P_0.
    std::string address_string() const;
};

/// Ordered level-m vertex chain V_m; the adjacency is the path i ~ i +/- 1.
class GraphApprox {
public:
    GraphApprox(int level, std::vector<Point2> coords);

    int level() const noexcept { return level_; }
    std::size_t size() const noexcept { return coords_.size(); }
    std::span<const Point2> coords() const noexcept { return coords_; }
    const Point2& operator[](std::size_t i) const { return coords_[i]; }

    /// Full vertex record, address derived from the index.
    Vertex vertex(std::size_t i) const;

    double param(std::size_t i) const;
    int degree(std::size_t i) const;
    std::array<std::size_t, 2> boundary() const noexcept { return {0, coords_.size() - 1}; }

private:
    int level_;
    std::vector<Point2> coords_;
};

/// V_m as [P_0] followed by f_w(P_1) for every word of length m, lexicographically.
GraphApprox build_graph(int m);

}  // namespace fractal_fdm
