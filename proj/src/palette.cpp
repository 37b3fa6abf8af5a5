#include "adictile/palette.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "adictile/error.hpp"

namespace adictile {

Cross Cross::from_key(std::uint32_t k) {
  Cross cr;
  for (int i = 0; i < 4; ++i) cr.c[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((k >> (5 * i)) & 31u);
  return cr;
}

Cross cross_at(const Patch& p, std::int64_t x, std::int64_t y) {
  Cross cr;
  cr.c[Cross::N] = p.code(EdgeRef{Orientation::V, x, y});
  cr.c[Cross::E] = p.code(EdgeRef{Orientation::H, x, y});
  cr.c[Cross::S] = p.code(EdgeRef{Orientation::V, x, y - 1});
  cr.c[Cross::W] = p.code(EdgeRef{Orientation::H, x - 1, y});
  return cr;
}

std::vector<Cross> crosses_of(const Patch& p) {
  std::vector<Cross> out;
  const Rect& r = p.rect();
  for (std::int64_t y = r.y0 + 1; y < r.y1; ++y)
    for (std::int64_t x = r.x0 + 1; x < r.x1; ++x) out.push_back(cross_at(p, x, y));
  return out;
}

namespace {

// Unit direction of each slot and the orientation of the edge in it.
constexpr std::array<std::array<int, 2>, 4> kSlotDir = {{{0, 1}, {1, 0}, {0, -1}, {-1, 0}}};

int slot_of(std::int64_t dx, std::int64_t dy) {
  for (int i = 0; i < 4; ++i) {
    if (kSlotDir[static_cast<std::size_t>(i)][0] == dx && kSlotDir[static_cast<std::size_t>(i)][1] == dy) return i;
  }
  return -1;
}

}  // namespace

Cross transform(const Cross& cr, const Sym& s, Alphabet alphabet) {
  Cross out;
  for (int i = 0; i < 4; ++i) {
    const auto& d = kSlotDir[static_cast<std::size_t>(i)];
    const Orientation o = d[0] == 0 ? Orientation::V : Orientation::H;
    const auto img = s.apply(d[0], d[1]);
    const EdgeColor c = s.act(EdgeColor::from_code(cr.c[static_cast<std::size_t>(i)], alphabet), o);
    out.c[static_cast<std::size_t>(slot_of(img[0], img[1]))] = encode(c, alphabet);
  }
  return out;
}

Cross canonicalize(const Cross& cr, Alphabet alphabet) {
  Cross best = cr;
  for (const Sym& s : Sym::all()) best = std::min(best, transform(cr, s, alphabet));
  return best;
}

PlusPalette::PlusPalette(Alphabet alphabet, Provenance provenance)
    : alphabet_(alphabet), provenance_(provenance), member_(std::size_t{1} << 20, false) {}

void PlusPalette::insert(const Cross& cr) {
  if (member_[cr.key()]) return;
  member_[cr.key()] = true;
  crosses_.insert(std::upper_bound(crosses_.begin(), crosses_.end(), cr), cr);
}

std::vector<Cross> PlusPalette::orbit_representatives() const {
  std::set<Cross> reps;
  for (const auto& cr : crosses_) reps.insert(canonicalize(cr, alphabet_));
  return {reps.begin(), reps.end()};
}

bool PlusPalette::closed_under_reflections() const {
  for (const auto& cr : crosses_) {
    for (const Sym& s : Sym::all()) {
      if (!contains(transform(cr, s, alphabet_))) return false;
    }
  }
  return true;
}

bool TilePalette::contains(const Tile& t) const { return std::binary_search(tiles.begin(), tiles.end(), t); }

TilePalette dualize(const PlusPalette& pp) {
  TilePalette tp;
  tp.alphabet = pp.alphabet();
  // N -> top, E -> right, S -> bottom, W -> left.
  for (const auto& cr : pp.crosses()) tp.tiles.push_back(Tile{cr.c});
  std::sort(tp.tiles.begin(), tp.tiles.end());
  tp.tiles.erase(std::unique(tp.tiles.begin(), tp.tiles.end()), tp.tiles.end());
  return tp;
}

PlusPalette dualize(const TilePalette& tp) {
  PlusPalette pp(tp.alphabet);
  for (const auto& t : tp.tiles) pp.insert(Cross{t.c});
  return pp;
}

Tile DualPatch::tile(std::int64_t i, std::int64_t j) const {
  Tile t;
  t.c[Tile::Top] = horizontal[static_cast<std::size_t>((j + 1) * cols + i)];
  t.c[Tile::Bottom] = horizontal[static_cast<std::size_t>(j * cols + i)];
  t.c[Tile::Left] = vertical[static_cast<std::size_t>(j * (cols + 1) + i)];
  t.c[Tile::Right] = vertical[static_cast<std::size_t>(j * (cols + 1) + i + 1)];
  return t;
}

DualPatch dual_patch(const Patch& p) {
  DualPatch d;
  const Rect& r = p.rect();
  d.alphabet = p.alphabet();
  d.x0 = r.x0 + 1;
  d.y0 = r.y0 + 1;
  d.cols = std::max<std::int64_t>(0, r.width() - 1);
  d.rows = std::max<std::int64_t>(0, r.height() - 1);
  if (d.cols == 0 || d.rows == 0) {
    d.cols = d.rows = 0;
    return d;
  }
  d.horizontal.resize(static_cast<std::size_t>((d.rows + 1) * d.cols));
  d.vertical.resize(static_cast<std::size_t>(d.rows * (d.cols + 1)));
  for (std::int64_t j = 0; j <= d.rows; ++j)
    for (std::int64_t i = 0; i < d.cols; ++i)
      d.horizontal[static_cast<std::size_t>(j * d.cols + i)] = p.code(EdgeRef{Orientation::V, r.x0 + 1 + i, r.y0 + j});
  for (std::int64_t j = 0; j < d.rows; ++j)
    for (std::int64_t i = 0; i <= d.cols; ++i)
      d.vertical[static_cast<std::size_t>(j * (d.cols + 1) + i)] = p.code(EdgeRef{Orientation::H, r.x0 + i, r.y0 + 1 + j});
  return d;
}

namespace {

std::optional<Violation> first_violation_in_rows(const Patch& p, const PlusPalette& pp, std::int64_t ya,
                                                 std::int64_t yb) {
  const Rect& r = p.rect();
  for (std::int64_t y = ya; y < yb; ++y) {
    for (std::int64_t x = r.x0 + 1; x < r.x1; ++x) {
      const Cross cr = cross_at(p, x, y);
      if (!pp.contains(cr)) return Violation{x, y, cr};
    }
  }
  return std::nullopt;
}

}  // namespace

VerifyResult verify(const Patch& p, const PlusPalette& pp, int threads) {
  if (p.alphabet() != pp.alphabet() && !p.rect().empty() && p.rect().width() > 1 && p.rect().height() > 1) {
    throw Error(ErrorCode::BadInput, "patch and palette alphabets differ");
  }
  const Rect& r = p.rect();
  const std::int64_t first = r.y0 + 1;
  const std::int64_t rows = std::max<std::int64_t>(0, r.y1 - first);
  if (threads <= 1 || rows < 2 * threads) return {first_violation_in_rows(p, pp, first, r.y1)};

  // Bands are contiguous, so the earliest band with a violation holds the
  // row-major first one.
  std::vector<std::optional<Violation>> found(static_cast<std::size_t>(threads));
  std::vector<std::thread> pool;
  const std::int64_t band = (rows + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const std::int64_t ya = first + t * band;
    const std::int64_t yb = std::min(r.y1, ya + band);
    pool.emplace_back([&, t, ya, yb] {
      if (ya < yb) found[static_cast<std::size_t>(t)] = first_violation_in_rows(p, pp, ya, yb);
    });
  }
  for (auto& th : pool) th.join();
  for (auto& f : found) {
    if (f) return {f};
  }
  return {};
}

VerifyResult verify(const DualPatch& d, const TilePalette& tp) {
  for (std::int64_t j = 0; j < d.rows; ++j) {
    for (std::int64_t i = 0; i < d.cols; ++i) {
      const Tile t = d.tile(i, j);
      if (!tp.contains(t)) return {Violation{d.x0 + i, d.y0 + j, Cross{t.c}}};
    }
  }
  return {};
}

std::vector<Cross> PaletteExtraction::axis_only() const {
  std::vector<Cross> out;
  for (const auto& cr : axis.crosses()) {
    if (!off_axis.contains(cr)) out.push_back(cr);
  }
  return out;
}

PaletteExtraction extract_plus_palette(const std::vector<Pose>& poses, std::int64_t radius, Alphabet alphabet) {
  if (radius < 16) throw Error(ErrorCode::BadInput, "radius must be at least 16");
  PaletteExtraction ex{PlusPalette(alphabet, Provenance::Extracted), PlusPalette(alphabet, Provenance::Extracted),
                       radius, poses.size()};
  const Rect rect{-radius, -radius, radius, radius};
  for (const Pose& pose : poses) {
    const Patch p = generate(pose, rect, alphabet);
    std::vector<char> v_axis, h_axis;
    for (std::int64_t x = rect.x0 + 1; x < rect.x1; ++x)
      v_axis.push_back(on_axis(EdgeRef{Orientation::V, x, 0}, pose) ? 1 : 0);
    for (std::int64_t y = rect.y0 + 1; y < rect.y1; ++y)
      h_axis.push_back(on_axis(EdgeRef{Orientation::H, 0, y}, pose) ? 1 : 0);
    for (std::int64_t y = rect.y0 + 1; y < rect.y1; ++y) {
      for (std::int64_t x = rect.x0 + 1; x < rect.x1; ++x) {
        const bool axis = v_axis[static_cast<std::size_t>(x - rect.x0 - 1)] || h_axis[static_cast<std::size_t>(y - rect.y0 - 1)];
        (axis ? ex.axis : ex.off_axis).insert(cross_at(p, x, y));
      }
    }
  }
  return ex;
}

namespace {

std::size_t alphabet_slot(Alphabet a) { return static_cast<std::size_t>(a); }

}  // namespace

const PlusPalette& ce_palette(Alphabet alphabet) {
  static std::once_flag flags[3];
  static PlusPalette cache[3];
  const std::size_t slot = alphabet_slot(alphabet);
  std::call_once(flags[slot], [&] {
    cache[slot] = extract_plus_palette({Pose::identity()}, 64, alphabet).off_axis;
  });
  return cache[slot];
}

const PlusPalette& ce_palette_with_axes(Alphabet alphabet) {
  static std::once_flag flags[3];
  static PlusPalette cache[3];
  const std::size_t slot = alphabet_slot(alphabet);
  std::call_once(flags[slot], [&] {
    std::vector<Pose> poses;
    for (int dx = 0; dx < 2; ++dx) {
      for (int dy = 0; dy < 2; ++dy) {
        Pose p = Pose::identity();
        p.default_x = dx;
        p.default_y = dy;
        poses.push_back(p);
      }
    }
    const PaletteExtraction ex = extract_plus_palette(poses, 64, alphabet);
    PlusPalette all = ex.off_axis;
    for (const auto& cr : ex.axis.crosses()) all.insert(cr);
    // Axis crosses of reflected poses.
    for (const auto& cr : ex.axis.crosses()) {
      for (const Sym& s : Sym::all()) all.insert(transform(cr, s, alphabet));
    }
    all.set_provenance(Provenance::Extracted);
    cache[slot] = all;
  });
  return cache[slot];
}

namespace {

int digits_for(Alphabet a) { return a == Alphabet::Parity ? 2 : 1; }

}  // namespace

std::string cross_hex(const Cross& cr, Alphabet alphabet) {
  static const char* kHex = "0123456789abcdef";
  std::string s;
  for (auto c : cr.c) {
    if (digits_for(alphabet) == 2) s += kHex[(c >> 4) & 0xf];
    s += kHex[c & 0xf];
  }
  return s;
}

void write_palette(std::ostream& out, const PlusPalette& pp) {
  out << "# alphabet: " << to_string(pp.alphabet()) << '\n';
  out << "# crosses: " << pp.size() << " (N E S W)\n";
  for (const auto& cr : pp.crosses()) out << cross_hex(cr, pp.alphabet()) << '\n';
}

PlusPalette read_palette(std::istream& in) {
  std::vector<std::string> rows;
  std::optional<Alphabet> alphabet;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      const std::string comment = line.substr(hash + 1);
      const auto tag = comment.find("alphabet:");
      if (tag != std::string::npos) {
        std::istringstream cs(comment.substr(tag + 9));
        std::string name;
        cs >> name;
        alphabet = alphabet_from_string(name);
      }
      line = line.substr(0, hash);
    }
    std::string compact;
    for (char c : line) {
      if (c != ' ' && c != '\t') compact += c;
    }
    if (!compact.empty()) rows.push_back(compact);
  }
  if (!alphabet) {
    alphabet = (!rows.empty() && rows.front().size() == 8) ? Alphabet::Parity : Alphabet::Base;
  }
  PlusPalette pp(*alphabet, Provenance::UserSupplied);
  const int digits = digits_for(*alphabet);
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != 4 * digits) throw Error(ErrorCode::BadInput, "bad palette line '" + r + "'");
    Cross cr;
    for (int i = 0; i < 4; ++i) {
      const int v = std::stoi(r.substr(static_cast<std::size_t>(i * digits), static_cast<std::size_t>(digits)), nullptr, 16);
      if (v >= alphabet_code_space(*alphabet)) throw Error(ErrorCode::BadInput, "color out of range in '" + r + "'");
      cr.c[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
    }
    pp.insert(cr);
  }
  return pp;
}

PlusPalette load_palette(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  return read_palette(in);
}

}  // namespace adictile
