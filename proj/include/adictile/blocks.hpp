#pragma once

// k-block decomposition of boxes.
//
// A k-block is a 2^k square whose sides are monochromatic and which splits
// into four (k-1)-blocks sharing its center; unrolled, every dyadic
// sub-square side inside it is monochromatic. The segments from the center
// to the sides are its (k-1)-medians; the rest of the open block is its
// frame. A box is k-tiled when trimming a margin thinner than 2^k from each
// side leaves a union of k-blocks (open at the box border).

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "adictile/palette.hpp"
#include "adictile/patch.hpp"

namespace adictile {

// Two edges of one block side (or median) with different colors.
struct SegmentWitness {
  EdgeRef first;
  EdgeRef differing;
};

struct BlockDecomposition {
  int level = 0;
  std::int64_t offset_x = 0;  // block grid lines sit at offset + n 2^level
  std::int64_t offset_y = 0;
  Rect trimmed;
  std::vector<Rect> blocks;  // row-major
  std::vector<std::array<std::int64_t, 2>> other_offsets;  // further valid grids, if any

  bool unique() const { return other_offsets.empty(); }
  std::int64_t side() const { return std::int64_t{1} << level; }
};

struct DecomposeResult {
  std::optional<BlockDecomposition> decomposition;
  std::optional<SegmentWitness> witness;  // when no grid works, from the closest one
  bool ok() const { return decomposition.has_value(); }
};

// Pass a palette to enforce the verification precondition (NotVerified).
DecomposeResult decompose(const Patch& p, int k, const PlusPalette* palette = nullptr);

// First failing segment for the block grid at (offset_x, offset_y), or none.
std::optional<SegmentWitness> check_block_grid(const Patch& p, int k, std::int64_t offset_x,
                                               std::int64_t offset_y, std::int64_t* failures = nullptr);

struct TilednessReport {
  int k = 0;
  bool success = false;
  // Trimmed margins: left, right, bottom, top.
  std::array<std::int64_t, 4> margins{};
  std::optional<SegmentWitness> witness;
};

TilednessReport is_k_tiled(const Patch& p, int k, const PlusPalette* palette = nullptr);

struct Lemma1Report {
  int k = 0;
  std::int64_t offset_x = 0, offset_y = 0;
  std::int64_t border_segments = 0;
  std::int64_t full_blocks = 0;
  std::int64_t frame_occurrences = 0;
  bool clause_i = true;    // borders between blocks monochromatic
  bool clause_ii = true;   // frame patterns only inside blocks
  bool clause_iii = true;  // all blocks carry equal frames
  std::optional<SegmentWitness> border_witness;
  std::optional<std::array<std::int64_t, 2>> misplaced_frame;  // lower-left corner
  std::optional<std::array<std::int64_t, 2>> odd_block;        // lower-left corner

  bool holds() const { return clause_i && clause_ii && clause_iii; }
};

// Uses the unique decomposition at level k, or the explicitly given grid.
// Throws NotDecomposable when neither is available.
Lemma1Report check_lemma1(const Patch& p, int k,
                          std::optional<std::array<std::int64_t, 2>> offset = std::nullopt);

struct CorollaryReport {
  int k = 0;
  std::int64_t requested = 0;
  std::int64_t checked = 0;
  std::int64_t excluded_axes = 0;
  std::int64_t not_one_tiled = 0;  // hypothesis failed; skipped
  std::int64_t extended = 0;
  std::int64_t failed = 0;
  std::uint64_t seed = 0;

  bool holds() const { return failed == 0 && checked > 0; }
};

inline constexpr int kCorollaryMaxK = 4;

// Samples 2^k boxes of CE under random poses and checks that each occurs
// inside some (k+4)-block of CE.
CorollaryReport check_corollary(int k, std::int64_t samples, std::uint64_t seed = 1);

}  // namespace adictile
