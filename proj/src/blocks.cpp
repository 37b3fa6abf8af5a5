#include "adictile/blocks.hpp"

#include <bit>
#include <random>
#include <unordered_map>

#include "adictile/error.hpp"

namespace adictile {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Sides compare the ce bits only: the parity pointer alternates along even
// lines by construction.
constexpr std::uint8_t kSideMask = 0x7;

struct GridCheck {
  bool usable = false;
  Rect trimmed;
  std::int64_t failures = 0;
  std::optional<SegmentWitness> first;
};

Rect trim_to_grid(const Rect& r, std::int64_t side, std::int64_t ox, std::int64_t oy) {
  return Rect{r.x0 + floor_mod(ox - r.x0, side), r.y0 + floor_mod(oy - r.y0, side),
              r.x1 - floor_mod(r.x1 - ox, side), r.y1 - floor_mod(r.y1 - oy, side)};
}

// Checks one run of edges on a line for a single color.
void check_segment(const Patch& p, Orientation o, std::int64_t line, std::int64_t from, std::int64_t len,
                   GridCheck& out) {
  std::optional<EdgeRef> first;
  std::uint8_t code = 0;
  for (std::int64_t a = from; a < from + len; ++a) {
    const EdgeRef e = o == Orientation::V ? EdgeRef{o, line, a} : EdgeRef{o, a, line};
    if (!p.has(e)) continue;
    if (!first) {
      first = e;
      code = p.code(e) & kSideMask;
    } else if ((p.code(e) & kSideMask) != code) {
      if (out.failures++ == 0) out.first = SegmentWitness{*first, e};
      return;
    }
  }
}

GridCheck run_grid(const Patch& p, int k, std::int64_t ox, std::int64_t oy, bool stop_at_first) {
  GridCheck g;
  const std::int64_t side = std::int64_t{1} << k;
  const Rect& r = p.rect();
  g.trimmed = trim_to_grid(r, side, ox, oy);
  if (g.trimmed.width() < side || g.trimmed.height() < side) return g;
  g.usable = true;
  const Rect& t = g.trimmed;
  for (int pass = 0; pass < 2; ++pass) {
    const Orientation o = pass == 0 ? Orientation::V : Orientation::H;
    const std::int64_t lo = o == Orientation::V ? t.x0 : t.y0;
    const std::int64_t hi = o == Orientation::V ? t.x1 : t.y1;
    const std::int64_t alo = o == Orientation::V ? t.y0 : t.x0;
    const std::int64_t ahi = o == Orientation::V ? t.y1 : t.x1;
    const std::int64_t origin = o == Orientation::V ? ox : oy;
    for (std::int64_t line = lo + 1; line < hi; ++line) {
      const std::int64_t rel = line - origin;
      if (rel & 1) continue;
      const int level = rel == 0 ? k : std::min(k, std::countr_zero(static_cast<std::uint64_t>(rel)));
      const std::int64_t len = std::int64_t{1} << level;
      for (std::int64_t a = alo; a < ahi; a += len) {
        check_segment(p, o, line, a, len, g);
        if (stop_at_first && g.failures) return g;
      }
    }
  }
  return g;
}

std::vector<std::uint8_t> frame_of(const Patch& p, std::int64_t bx, std::int64_t by, std::int64_t side) {
  std::vector<std::uint8_t> out;
  const std::int64_t mid = side / 2;
  for (std::int64_t i = 1; i < side; ++i) {
    if (i == mid) continue;
    for (std::int64_t a = 0; a < side; ++a) {
      out.push_back(p.code(EdgeRef{Orientation::V, bx + i, by + a}));
      out.push_back(p.code(EdgeRef{Orientation::H, bx + a, by + i}));
    }
  }
  return out;
}

void require_verified(const Patch& p, const PlusPalette* palette) {
  if (palette && !verify(p, *palette).ok()) {
    throw Error(ErrorCode::NotVerified, "patch is not locally consistent with the palette");
  }
}

void require_level(int k) {
  if (k < 0 || k > 30) throw Error(ErrorCode::BadInput, "block level must be in [0,30]");
}

}  // namespace

std::optional<SegmentWitness> check_block_grid(const Patch& p, int k, std::int64_t offset_x,
                                               std::int64_t offset_y, std::int64_t* failures) {
  require_level(k);
  const GridCheck g = run_grid(p, k, offset_x, offset_y, failures == nullptr);
  if (failures) *failures = g.failures;
  return g.first;
}

DecomposeResult decompose(const Patch& p, int k, const PlusPalette* palette) {
  require_level(k);
  require_verified(p, palette);
  DecomposeResult res;
  const std::int64_t side = std::int64_t{1} << k;
  std::int64_t best_failures = -1;
  for (std::int64_t oy = 0; oy < side; ++oy) {
    for (std::int64_t ox = 0; ox < side; ++ox) {
      const GridCheck g = run_grid(p, k, ox, oy, false);
      if (!g.usable) continue;
      if (g.failures == 0) {
        if (res.decomposition) {
          res.decomposition->other_offsets.push_back({ox, oy});
          continue;
        }
        BlockDecomposition d;
        d.level = k;
        d.offset_x = ox;
        d.offset_y = oy;
        d.trimmed = g.trimmed;
        for (std::int64_t y = g.trimmed.y0; y < g.trimmed.y1; y += side)
          for (std::int64_t x = g.trimmed.x0; x < g.trimmed.x1; x += side)
            d.blocks.push_back(Rect{x, y, x + side, y + side});
        res.decomposition = std::move(d);
      } else if (best_failures < 0 || g.failures < best_failures) {
        best_failures = g.failures;
        res.witness = g.first;
      }
    }
  }
  if (res.decomposition) res.witness.reset();
  return res;
}

TilednessReport is_k_tiled(const Patch& p, int k, const PlusPalette* palette) {
  TilednessReport rep;
  rep.k = k;
  const DecomposeResult d = decompose(p, k, palette);
  if (!d.ok()) {
    rep.witness = d.witness;
    return rep;
  }
  const Rect& r = p.rect();
  const Rect& t = d.decomposition->trimmed;
  rep.success = true;
  rep.margins = {t.x0 - r.x0, r.x1 - t.x1, t.y0 - r.y0, r.y1 - t.y1};
  return rep;
}

Lemma1Report check_lemma1(const Patch& p, int k, std::optional<std::array<std::int64_t, 2>> offset) {
  require_level(k);
  Lemma1Report rep;
  rep.k = k;
  const std::int64_t side = std::int64_t{1} << k;
  if (offset) {
    rep.offset_x = floor_mod((*offset)[0], side);
    rep.offset_y = floor_mod((*offset)[1], side);
  } else {
    const DecomposeResult d = decompose(p, k);
    if (!d.ok()) throw Error(ErrorCode::NotDecomposable, "no k-block grid fits the patch");
    rep.offset_x = d.decomposition->offset_x;
    rep.offset_y = d.decomposition->offset_y;
  }
  const Rect t = trim_to_grid(p.rect(), side, rep.offset_x, rep.offset_y);
  if (t.width() < side || t.height() < side) {
    throw Error(ErrorCode::NotDecomposable, "patch holds no full block at this grid");
  }

  // (i) block sides only.
  GridCheck g;
  for (std::int64_t x = t.x0; x <= t.x1; x += side)
    for (std::int64_t y = t.y0; y < t.y1; y += side) {
      check_segment(p, Orientation::V, x, y, side, g);
      ++rep.border_segments;
    }
  for (std::int64_t y = t.y0; y <= t.y1; y += side)
    for (std::int64_t x = t.x0; x < t.x1; x += side) {
      check_segment(p, Orientation::H, y, x, side, g);
      ++rep.border_segments;
    }
  rep.clause_i = g.failures == 0;
  rep.border_witness = g.first;

  std::vector<std::pair<std::array<std::int64_t, 2>, std::vector<std::uint8_t>>> frames;
  for (std::int64_t y = t.y0; y < t.y1; y += side)
    for (std::int64_t x = t.x0; x < t.x1; x += side) frames.push_back({{x, y}, frame_of(p, x, y, side)});
  rep.full_blocks = static_cast<std::int64_t>(frames.size());
  if (k <= 1) return rep;  // frames are empty

  // (iii)
  const std::vector<std::uint8_t>& ref = frames.front().second;
  for (const auto& [corner, f] : frames) {
    if (f != ref) {
      rep.clause_iii = false;
      rep.odd_block = corner;
      break;
    }
  }

  // (ii)
  const Rect& r = p.rect();
  for (std::int64_t y = r.y0; y + side <= r.y1; ++y) {
    for (std::int64_t x = r.x0; x + side <= r.x1; ++x) {
      bool match = false;
      const std::vector<std::uint8_t> here = frame_of(p, x, y, side);
      for (const auto& fr : frames) {
        if (here == fr.second) {
          match = true;
          break;
        }
        if (rep.clause_iii) break;  // all frames equal
      }
      if (!match) continue;
      ++rep.frame_occurrences;
      if (floor_mod(x - rep.offset_x, side) != 0 || floor_mod(y - rep.offset_y, side) != 0) {
        if (rep.clause_ii) rep.misplaced_frame = std::array<std::int64_t, 2>{x, y};
        rep.clause_ii = false;
      }
    }
  }
  return rep;
}

namespace {

std::uint64_t window_hash(const Patch& p, std::int64_t x, std::int64_t y, std::int64_t side) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  for (std::int64_t i = 1; i < side; ++i)
    for (std::int64_t a = 0; a < side; ++a) {
      mix(p.code(EdgeRef{Orientation::V, x + i, y + a}));
      mix(p.code(EdgeRef{Orientation::H, x + a, y + i}));
    }
  return h;
}

bool window_equal(const Patch& a, std::int64_t ax, std::int64_t ay, const Patch& b, std::int64_t bx,
                  std::int64_t by, std::int64_t side) {
  for (std::int64_t i = 1; i < side; ++i)
    for (std::int64_t j = 0; j < side; ++j) {
      if (a.code(EdgeRef{Orientation::V, ax + i, ay + j}) != b.code(EdgeRef{Orientation::V, bx + i, by + j}))
        return false;
      if (a.code(EdgeRef{Orientation::H, ax + j, ay + i}) != b.code(EdgeRef{Orientation::H, bx + j, by + i}))
        return false;
    }
  return true;
}

bool touches_axis(const Rect& r, const Pose& pose) {
  for (std::int64_t x = r.x0 + 1; x < r.x1; ++x)
    if (on_axis(EdgeRef{Orientation::V, x, r.y0}, pose)) return true;
  for (std::int64_t y = r.y0 + 1; y < r.y1; ++y)
    if (on_axis(EdgeRef{Orientation::H, r.x0, y}, pose)) return true;
  return false;
}

}  // namespace

CorollaryReport check_corollary(int k, std::int64_t samples, std::uint64_t seed) {
  if (k < 0 || k > kCorollaryMaxK) {
    throw Error(ErrorCode::BadInput, "corollary level must be in [0," + std::to_string(kCorollaryMaxK) + "]");
  }
  CorollaryReport rep;
  rep.k = k;
  rep.requested = samples;
  rep.seed = seed;
  const std::int64_t side = std::int64_t{1} << k;
  const std::int64_t big = std::int64_t{1} << (k + 4);
  constexpr std::int64_t kBlocks = 4;

  // Every 2^k window lying inside some (k+4)-block of a CE region.
  const Patch region = generate(Pose::identity(), Rect{big, big, big * (kBlocks + 1), big * (kBlocks + 1)});
  std::unordered_map<std::uint64_t, std::array<std::int64_t, 2>> index;
  for (std::int64_t by = 1; by <= kBlocks; ++by)
    for (std::int64_t bx = 1; bx <= kBlocks; ++bx)
      for (std::int64_t y = by * big; y + side <= (by + 1) * big; ++y)
        for (std::int64_t x = bx * big; x + side <= (bx + 1) * big; ++x)
          index.try_emplace(window_hash(region, x, y, side), std::array<std::int64_t, 2>{x, y});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> place(-(std::int64_t{1} << 20), std::int64_t{1} << 20);
  for (std::int64_t s = 0; s < samples; ++s) {
    const Pose pose{Adic(rng(), kDefaultPrecision), Adic(rng(), kDefaultPrecision),
                    Sym::from_index(static_cast<int>(rng() % 8)), static_cast<int>(rng() & 1),
                    static_cast<int>(rng() & 1)};
    const std::int64_t px = place(rng);
    const std::int64_t py = place(rng);
    const Rect wide{px - side, py - side, px + 2 * side, py + 2 * side};
    if (touches_axis(wide, pose)) {
      ++rep.excluded_axes;
      continue;
    }
    const Patch w = generate(pose, wide);
    if (!is_k_tiled(w, 1).success) {
      ++rep.not_one_tiled;
      continue;
    }
    ++rep.checked;
    const auto it = index.find(window_hash(w, px, py, side));
    if (it != index.end() && window_equal(w, px, py, region, it->second[0], it->second[1], side)) {
      ++rep.extended;
    } else {
      ++rep.failed;
    }
  }
  return rep;
}

}  // namespace adictile
