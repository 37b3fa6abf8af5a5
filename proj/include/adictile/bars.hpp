#pragma once

// Bars (maximal monochromatic runs of boldness along a line), bends and
// passes, and the finite obstructions built from them.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "adictile/patch.hpp"

namespace adictile {

struct Bar {
  Orientation orientation = Orientation::V;
  std::int64_t line = 0;
  std::int64_t start = 0;  // along-coordinate of the first edge
  std::int64_t length = 0;
  bool bold = false;
  bool truncated = false;  // touches the box border
};

std::vector<Bar> bars_of(const Patch& p);

struct BarStats {
  // (bold, length) -> number of untruncated bars.
  std::map<std::pair<bool, std::int64_t>, std::int64_t> histogram;
  std::int64_t truncated_bars = 0;
  std::array<std::int64_t, 2> truncated_edges{};  // pale, bold
  std::array<std::int64_t, 2> edges{};            // pale, bold

  std::int64_t count(bool bold, std::int64_t length) const;
  double mean_untruncated_length(bool bold) const;
};

BarStats bar_histogram(const Patch& p);

enum class CrossKind { Bend, Pass, Other };

struct CrossStats {
  std::int64_t vertices = 0;
  std::int64_t bends = 0;
  std::int64_t passes = 0;
  std::int64_t other = 0;
  // Bends by bold arms: index (south bold ? 1 : 0) | (west bold ? 2 : 0).
  std::array<std::int64_t, 4> bend_orientations{};
  std::int64_t unoriented_bends = 0;  // both or neither arm bold on some axis
  // Consecutive bends along a line must alternate their bold arm.
  std::int64_t alternation_checks = 0;
  std::int64_t alternation_violations = 0;

  double bend_fraction() const {
    return vertices == 0 ? 0.0 : static_cast<double>(bends) / static_cast<double>(vertices);
  }
};

// Arrows point inward on all four arms at a bend, on exactly one at a pass.
CrossKind cross_kind(const Patch& p, std::int64_t x, std::int64_t y);
CrossStats classify_crosses(const Patch& p);

// Exhaustive search for a periodic coloring of the n x n torus in which
// every line is a cyclic sequence of bold runs from `bold` and pale runs
// from `pale`, and every vertex shows a palette cross. The projection keeps
// only some color bits of the crosses: Bold alone admits crossing bold
// bars and so loses the square structure; Full is the ce palette itself.
enum class TorusProjection : std::uint8_t { Bold = 2, BoldPointer = 6, Full = 7 };

struct TorusConfig {
  int n = 6;
  std::vector<int> bold{4};
  std::vector<int> pale{2};
  TorusProjection projection = TorusProjection::Full;
  bool with_axes = false;                // admit the central crosses too
  std::int64_t max_solutions = 1 << 20;  // stop counting here
};

struct TorusResult {
  TorusConfig config;
  std::int64_t line_patterns = 0;
  std::int64_t vertex_types = 0;
  std::int64_t nodes = 0;
  std::int64_t solutions = 0;
  bool capped = false;
  double elapsed_ms = 0.0;
  bool impossible() const { return solutions == 0 && !capped; }
};

TorusResult torus_search(const TorusConfig& cfg);
TorusResult torus_impossibility();
// Bold 4-bars and pale 4-bars on the 8-torus, boldness only.
TorusResult torus_control();

// Number of ways to split Z_n into disjoint pairs of points of equal parity.
std::int64_t parity_matchings(int n);

// Placement of a companion bold 2-bar relative to a bold vertical 2-bar:
// `across` lines to the side, shifted `along` edges.
struct BarOffset {
  int across = 0;
  int along = 0;
  friend auto operator<=>(const BarOffset&, const BarOffset&) = default;
};

// Offsets at which every untruncated bold 2-bar of the patches (with room
// around it) has a companion bold 2-bar, among |across| <= 2, |along| <= 4.
std::vector<BarOffset> calibrate_two_bar_neighborhood(const std::vector<Patch>& patches);

// The fixed neighborhood: companions on the lines two to either side.
const std::vector<BarOffset>& two_bar_neighborhood();

struct NeighborhoodResult {
  bool ok = true;
  std::optional<BarOffset> missing;
};

// The bar must be an untruncated bold 2-bar; throws MarginTooSmall when the
// companion sites or their flanks are outside the patch.
NeighborhoodResult two_bar_neighborhood_ok(const Patch& p, const Bar& bar);
NeighborhoodResult two_bar_neighborhood_ok(const Patch& p, const Bar& bar, const std::vector<BarOffset>& offsets);

}  // namespace adictile
