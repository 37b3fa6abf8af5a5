#pragma once

// The one-dimensional bracket tiling C1 and its 2-adic shifts.
//
// Position x = (2i+1) 2^k carries a bracket of rank k whose direction is
// i mod 2 (0 = opening). The origin of the unshifted line is unranked and
// takes an external default bit.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "adictile/adic.hpp"

namespace adictile {

struct Bracket {
  int bit = 0;  // 0 = opening, 1 = closing
  Rank rank;

  // Even ranks render as braces, odd ranks as square brackets.
  bool brace_shape() const { return rank.ranked() && rank.value() % 2 == 0; }
  char glyph() const;

  friend bool operator==(const Bracket&, const Bracket&) = default;
};

// One element of the group acting on C1: x -> C1(x - shift), with the
// reflection reversing the default, the brackets and the sign of locations.
struct Line1D {
  Adic shift;
  int default_bit = 0;
  bool reflected = false;

  static Line1D identity(int precision = kDefaultPrecision) {
    return Line1D{Adic::zero(precision), 0, false};
  }
};

Bracket bracket_at(const Adic& x, const Line1D& line);
Bracket bracket_at(std::int64_t x, const Line1D& line);

// Closed interval [lo, hi] = [(4j+1) 2^k, (4j+3) 2^k] in line coordinates.
struct Domain1D {
  int rank = 0;
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t length() const { return hi - lo; }
  friend bool operator==(const Domain1D&, const Domain1D&) = default;
};

std::optional<Domain1D> domain_containing(std::int64_t y, int k, const Line1D& line);
// Children have rank k-1 and are centered on the parent's two borders.
std::pair<Domain1D, Domain1D> children(const Domain1D& d);
// Rank k-2: two inside the parent, one beyond each border; sorted by lo.
std::array<Domain1D, 4> grandchildren(const Domain1D& d);

struct RankReversal {
  int rank = 0;
  std::int64_t compared = 0;
  std::int64_t reversed = 0;
  double reversed_fraction() const {
    return compared == 0 ? 0.0 : static_cast<double>(reversed) / static_cast<double>(compared);
  }
};

struct ShiftDiffReport {
  int k = 0;
  std::int64_t i = 0;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  std::vector<RankReversal> per_rank;     // ranks 0..k-1
  std::vector<RankReversal> higher_rank;  // measured only, never asserted
  std::int64_t positions = 0;
  std::int64_t changed = 0;
  double changed_fraction = 0.0;
  double bound = 0.0;  // 2/2^k + 2^(k+2)/|window|

  bool holds() const;
};

// Compares C1 with its shift by (2i+1) 2^k on [lo, hi].
ShiftDiffReport remark1_report(int k, std::int64_t i, std::int64_t lo, std::int64_t hi);

struct BracketObservation {
  std::int64_t x = 0;
  Bracket bracket;
  bool unranked_flagged = false;
};

// Residue of the line's shift modulo 2^m recovered from observed brackets.
// A rank-r observation pins the shift modulo 2^(r+2). Reflection does not
// change brackets at ranked positions, so it plays no part here.
std::uint64_t decode_position(std::span<const BracketObservation> obs, int m);
// Contiguous window starting at x0.
std::uint64_t decode_position(std::span<const Bracket> window, std::int64_t x0, int m);

// Brackets of [lo, hi] split into one text row per rank (0..max_rank), two
// columns per position; the unranked position goes on a final row.
std::string render_by_rank(const Line1D& line, std::int64_t lo, std::int64_t hi, int max_rank);

}  // namespace adictile
