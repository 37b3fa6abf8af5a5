#pragma once

// Exhaustive enumeration of palette-consistent open boxes.
//
// Crosses are placed at interior vertices in row-major order; each placement
// fixes the north and east edges (and the south/west edges on the first
// row/column) and is forward-checked against the neighbors it constrains.
// The search tree is cut at a fixed depth into shards, which workers claim
// one at a time; per-shard results are merged in shard order.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "adictile/palette.hpp"
#include "adictile/patch.hpp"

namespace adictile {

// Allowed codes of one edge, as a bit mask over the alphabet's code space.
struct EdgePin {
  EdgeRef edge;
  std::uint32_t allowed = 0;
};

struct ShardProgress {
  std::uint64_t shard = 0;
  std::uint64_t nodes = 0;
  std::uint64_t found = 0;
  std::uint64_t done = 0;
  std::uint64_t total = 0;
};

struct SearchConfig {
  int width = 2;
  int height = 2;
  Alphabet alphabet = Alphabet::Base;
  std::vector<EdgePin> pins;  // empty: open box
  bool symmetry_reduction = false;
  std::uint64_t max_nodes = 0;   // 0: unlimited
  std::uint64_t max_count = 0;   // 0: unlimited
  std::uint64_t max_shards = 0;  // stop after this many shards in this run
  int threads = 1;
  std::string checkpoint_path;
  int shard_depth = 3;
  std::string tag;  // names the visitor; part of the checkpoint fingerprint
  std::size_t max_witnesses = 8;
  std::function<void(const ShardProgress&)> on_progress;
};

struct SearchOutcome {
  std::uint64_t count = 0;
  bool exhausted = false;
  std::uint64_t violations = 0;
  std::vector<Patch> witnesses;
  std::uint64_t nodes = 0;
  std::uint64_t propagations = 0;
  std::uint64_t shards_total = 0;
  std::uint64_t shards_done = 0;
  std::uint64_t shards_resumed = 0;
  double elapsed_ms = 0.0;
  std::string note;
};

// Returns false when the box violates the property under test. Called
// concurrently from several workers when threads > 1.
using Visitor = std::function<bool(const Patch&)>;

// Boxes are the rect [0,width] x [0,height].
SearchOutcome enumerate_boxes(const PlusPalette& pp, const SearchConfig& cfg, const Visitor& visitor = {});

// Pins that force the mask of `bits` to equal `value` on one edge.
EdgePin pin_bits(const EdgeRef& e, Alphabet alphabet, std::uint8_t bits, std::uint8_t value);

struct RunOptions {
  int threads = 1;
  std::string checkpoint_path;
  std::uint64_t max_nodes = 0;
  std::uint64_t max_shards = 0;
  int shard_depth = 3;
  std::function<void(const ShardProgress&)> on_progress;
};

// Every consistent size x size box shows every color of the palette.
SearchOutcome check_no_skipped_colors(int size, Alphabet alphabet = Alphabet::Base, const RunOptions& opt = {});

// No consistent box holds a bold 3-bar away from its border.
SearchOutcome check_no_bold_three_bar(int size = 5, const RunOptions& opt = {});

// Every consistent box is 1-tiled, and (parity alphabet) pointers on odd
// lines reach odd crossing lines.
SearchOutcome check_parity_enforcement(int size, Alphabet alphabet = Alphabet::Parity, const RunOptions& opt = {});

// Every consistent box that is 1-tiled is also 2-tiled.
SearchOutcome check_one_tiled_is_two_tiled(int size, Alphabet alphabet = Alphabet::Parity,
                                           const RunOptions& opt = {});

// w x w boxes with a bold vertical 2-bar pinned at their center; each must
// have the two-bar neighborhood.
SearchOutcome levitsky_check(int w, const RunOptions& opt = {});

// Colors (packed codes) used by the palette's crosses.
std::vector<std::uint8_t> palette_colors(const PlusPalette& pp);

}  // namespace adictile
