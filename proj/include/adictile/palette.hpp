#pragma once

// Crosses, tiles and +palettes.

#include <array>
#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adictile/edge.hpp"
#include "adictile/patch.hpp"
#include "adictile/tiling2d.hpp"

namespace adictile {

// Packed colors of the four edges at a vertex: north and south are V edges,
// east and west H edges.
struct Cross {
  enum Slot { N = 0, E = 1, S = 2, W = 3 };
  std::array<std::uint8_t, 4> c{};

  std::uint32_t key() const { return c[0] | (c[1] << 5) | (c[2] << 10) | (c[3] << 15); }
  static Cross from_key(std::uint32_t k);

  friend auto operator<=>(const Cross&, const Cross&) = default;
};

// Colors of the four sides of a unit square.
struct Tile {
  enum Side { Top = 0, Right = 1, Bottom = 2, Left = 3 };
  std::array<std::uint8_t, 4> c{};
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

Cross cross_at(const Patch& p, std::int64_t x, std::int64_t y);
// One cross per interior vertex, row-major.
std::vector<Cross> crosses_of(const Patch& p);

// Image of a cross under a reflection, with the color action applied.
Cross transform(const Cross& cr, const Sym& s, Alphabet alphabet);
Cross canonicalize(const Cross& cr, Alphabet alphabet);

enum class Provenance { Extracted, UserSupplied };

class PlusPalette {
 public:
  PlusPalette() : PlusPalette(Alphabet::Base) {}
  explicit PlusPalette(Alphabet alphabet, Provenance provenance = Provenance::UserSupplied);

  Alphabet alphabet() const { return alphabet_; }
  Provenance provenance() const { return provenance_; }
  void set_provenance(Provenance p) { provenance_ = p; }

  void insert(const Cross& cr);
  bool contains(const Cross& cr) const { return member_[cr.key()]; }
  std::size_t size() const { return crosses_.size(); }
  bool empty() const { return crosses_.empty(); }
  // Sorted, unique.
  const std::vector<Cross>& crosses() const { return crosses_; }

  // Canonical representatives of the reflection orbits, sorted.
  std::vector<Cross> orbit_representatives() const;
  std::size_t orbit_count() const { return orbit_representatives().size(); }
  bool closed_under_reflections() const;

  friend bool operator==(const PlusPalette& a, const PlusPalette& b) {
    return a.alphabet_ == b.alphabet_ && a.crosses_ == b.crosses_;
  }

 private:
  Alphabet alphabet_;
  Provenance provenance_;
  std::vector<Cross> crosses_;
  std::vector<bool> member_;
};

struct TilePalette {
  Alphabet alphabet = Alphabet::Base;
  std::vector<Tile> tiles;  // sorted, unique
  bool contains(const Tile& t) const;
};

// Rotating every edge a quarter turn about its center swaps the grid and its
// dual: the cross at a vertex becomes the tile around it.
TilePalette dualize(const PlusPalette& pp);
PlusPalette dualize(const TilePalette& tp);

// The dual of an open box: one tile per interior vertex of the box.
struct DualPatch {
  std::int64_t x0 = 0, y0 = 0;  // primal coordinates of tile (0,0)'s vertex
  std::int64_t cols = 0, rows = 0;
  Alphabet alphabet = Alphabet::Base;
  std::vector<std::uint8_t> horizontal;  // (rows+1) x cols, from primal V edges
  std::vector<std::uint8_t> vertical;    // rows x (cols+1), from primal H edges

  Tile tile(std::int64_t i, std::int64_t j) const;
};
DualPatch dual_patch(const Patch& p);

struct Violation {
  std::int64_t x = 0, y = 0;  // vertex (primal) coordinates
  Cross cross;
};

struct VerifyResult {
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
};

// Every interior cross must be in the palette; reports the first violation
// in row-major order. Bands of rows are checked in parallel when threads > 1.
VerifyResult verify(const Patch& p, const PlusPalette& pp, int threads = 1);
VerifyResult verify(const DualPatch& d, const TilePalette& tp);

struct PaletteExtraction {
  PlusPalette off_axis;
  PlusPalette axis;  // crosses seen at vertices on an axis line
  std::int64_t radius = 0;
  std::size_t poses = 0;

  std::size_t off_axis_orbits() const { return off_axis.orbit_count(); }
  // Axis crosses that never occur off the axes.
  std::vector<Cross> axis_only() const;
};

// Crosses of generate(pose, [-R,R]^2) over all given poses.
PaletteExtraction extract_plus_palette(const std::vector<Pose>& poses, std::int64_t radius,
                                       Alphabet alphabet = Alphabet::Base);

// The off-axis ce palette (from the identity pose at radius 64), cached.
const PlusPalette& ce_palette(Alphabet alphabet = Alphabet::Base);
// ce plus every cross of the four default central crosses.
const PlusPalette& ce_palette_with_axes(Alphabet alphabet = Alphabet::Base);

// Palette text: one cross per line as packed hex N E S W (one digit each for
// base, two for parity); '#' starts a comment; "# alphabet: NAME" selects
// the alphabet.
void write_palette(std::ostream& out, const PlusPalette& pp);
PlusPalette read_palette(std::istream& in);
PlusPalette load_palette(const std::string& path);

std::string cross_hex(const Cross& cr, Alphabet alphabet);

}  // namespace adictile
