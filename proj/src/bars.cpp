#include "adictile/bars.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "adictile/error.hpp"
#include "adictile/palette.hpp"

namespace adictile {

namespace {

EdgeRef edge_on(Orientation o, std::int64_t line, std::int64_t along) {
  return o == Orientation::V ? EdgeRef{o, line, along} : EdgeRef{o, along, line};
}

bool bold_at(const Patch& p, const EdgeRef& e) { return (p.code(e) & 2u) != 0; }

}  // namespace

std::vector<Bar> bars_of(const Patch& p) {
  std::vector<Bar> out;
  if (p.alphabet() == Alphabet::Bracket) throw Error(ErrorCode::BadInput, "bars need boldness");
  const Rect& r = p.rect();
  for (int pass = 0; pass < 2; ++pass) {
    const Orientation o = pass == 0 ? Orientation::V : Orientation::H;
    const std::int64_t lo = o == Orientation::V ? r.x0 : r.y0;
    const std::int64_t hi = o == Orientation::V ? r.x1 : r.y1;
    const std::int64_t alo = o == Orientation::V ? r.y0 : r.x0;
    const std::int64_t ahi = o == Orientation::V ? r.y1 : r.x1;
    for (std::int64_t line = lo + 1; line < hi; ++line) {
      std::int64_t a = alo;
      while (a < ahi) {
        const bool b = bold_at(p, edge_on(o, line, a));
        std::int64_t e = a + 1;
        while (e < ahi && bold_at(p, edge_on(o, line, e)) == b) ++e;
        out.push_back(Bar{o, line, a, e - a, b, a == alo || e == ahi});
        a = e;
      }
    }
  }
  return out;
}

std::int64_t BarStats::count(bool bold, std::int64_t length) const {
  const auto it = histogram.find({bold, length});
  return it == histogram.end() ? 0 : it->second;
}

double BarStats::mean_untruncated_length(bool bold) const {
  std::int64_t n = 0, total = 0;
  for (const auto& [key, c] : histogram) {
    if (key.first != bold) continue;
    n += c;
    total += c * key.second;
  }
  return n == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(n);
}

BarStats bar_histogram(const Patch& p) {
  BarStats st;
  for (const Bar& b : bars_of(p)) {
    st.edges[b.bold] += b.length;
    if (b.truncated) {
      ++st.truncated_bars;
      st.truncated_edges[b.bold] += b.length;
    } else {
      ++st.histogram[{b.bold, b.length}];
    }
  }
  return st;
}

CrossKind cross_kind(const Patch& p, std::int64_t x, std::int64_t y) {
  const Cross c = cross_at(p, x, y);
  auto pointer = [](std::uint8_t code) { return (code & 4u) ? 1 : -1; };
  const int inward = (pointer(c.c[Cross::N]) < 0) + (pointer(c.c[Cross::S]) > 0) +
                     (pointer(c.c[Cross::E]) < 0) + (pointer(c.c[Cross::W]) > 0);
  if (inward == 4) return CrossKind::Bend;
  if (inward == 1) return CrossKind::Pass;
  return CrossKind::Other;
}

CrossStats classify_crosses(const Patch& p) {
  if (p.alphabet() == Alphabet::Bracket) throw Error(ErrorCode::BadInput, "crosses need pointers");
  CrossStats st;
  const Rect& r = p.rect();
  // Last bend's bold arm per V line (south?) and per H line (west?).
  std::vector<int> last_v(static_cast<std::size_t>(std::max<std::int64_t>(r.width(), 0)), -1);
  for (std::int64_t y = r.y0 + 1; y < r.y1; ++y) {
    int last_h = -1;
    for (std::int64_t x = r.x0 + 1; x < r.x1; ++x) {
      ++st.vertices;
      const CrossKind kind = cross_kind(p, x, y);
      if (kind == CrossKind::Pass) ++st.passes;
      if (kind == CrossKind::Other) ++st.other;
      if (kind != CrossKind::Bend) continue;
      ++st.bends;
      const Cross c = cross_at(p, x, y);
      const bool n = c.c[Cross::N] & 2u, s = c.c[Cross::S] & 2u;
      const bool e = c.c[Cross::E] & 2u, w = c.c[Cross::W] & 2u;
      if (n == s || e == w) {
        ++st.unoriented_bends;
        continue;
      }
      ++st.bend_orientations[(s ? 1 : 0) | (w ? 2 : 0)];
      int& lv = last_v[static_cast<std::size_t>(x - r.x0)];
      if (lv >= 0) {
        ++st.alternation_checks;
        if (lv == static_cast<int>(s)) ++st.alternation_violations;
      }
      lv = s;
      if (last_h >= 0) {
        ++st.alternation_checks;
        if (last_h == static_cast<int>(w)) ++st.alternation_violations;
      }
      last_h = w;
    }
  }
  return st;
}

namespace {

// Bit i of a line pattern is the boldness of edge i.
bool cyclic_runs_ok(unsigned pattern, int n, const std::vector<int>& bold, const std::vector<int>& pale) {
  const unsigned full = (1u << n) - 1;
  if (pattern == 0 || pattern == full) return false;
  auto bit = [&](int i) { return (pattern >> (((i % n) + n) % n)) & 1u; };
  int start = 0;
  while (bit(start) == bit(start - 1)) ++start;
  int i = start;
  while (i < start + n) {
    const unsigned b = bit(i);
    int len = 0;
    while (len < n && bit(i + len) == b) ++len;
    const auto& allowed = b ? bold : pale;
    if (std::find(allowed.begin(), allowed.end(), len) == allowed.end()) return false;
    i += len;
  }
  return true;
}

}  // namespace

TorusResult torus_search(const TorusConfig& cfg) {
  const int n = cfg.n;
  if (n < 2 || n > 16) throw Error(ErrorCode::BadInput, "torus side must be in [2,16]");
  const auto t0 = std::chrono::steady_clock::now();
  TorusResult res;
  res.config = cfg;

  std::vector<unsigned> patterns;
  for (unsigned m = 0; m < (1u << n); ++m)
    if (cyclic_runs_ok(m, n, cfg.bold, cfg.pale)) patterns.push_back(m);
  res.line_patterns = static_cast<std::int64_t>(patterns.size());

  const auto proj = static_cast<std::uint8_t>(cfg.projection);
  std::set<std::array<std::uint8_t, 4>> types;
  const PlusPalette& pp = cfg.with_axes ? ce_palette_with_axes() : ce_palette();
  for (const Cross& c : pp.crosses())
    types.insert({static_cast<std::uint8_t>(c.c[0] & proj), static_cast<std::uint8_t>(c.c[1] & proj),
                  static_cast<std::uint8_t>(c.c[2] & proj), static_cast<std::uint8_t>(c.c[3] & proj)});
  const std::vector<std::array<std::uint8_t, 4>> crosses(types.begin(), types.end());
  res.vertex_types = static_cast<std::int64_t>(crosses.size());

  // v[x*n+y]: V edge (x,y); h[y*n+x]: H edge (x,y); -1 unassigned.
  std::vector<int> v(static_cast<std::size_t>(n * n), -1), h(static_cast<std::size_t>(n * n), -1);
  auto wrap = [n](int i) { return ((i % n) + n) % n; };
  auto vat = [&](int x, int y) -> int& { return v[static_cast<std::size_t>(wrap(x) * n + wrap(y))]; };
  auto hat = [&](int x, int y) -> int& { return h[static_cast<std::size_t>(wrap(y) * n + wrap(x))]; };
  // Some allowed pattern agrees with the assigned boldness of the line.
  auto line_ok = [&](const std::vector<int>& codes, int line) {
    unsigned mask = 0, val = 0;
    for (int a = 0; a < n; ++a) {
      const int c = codes[static_cast<std::size_t>(line * n + a)];
      if (c < 0) continue;
      mask |= 1u << a;
      if (c & 2) val |= 1u << a;
    }
    for (unsigned p : patterns)
      if (((p ^ val) & mask) == 0) return true;
    return false;
  };

  auto recurse = [&](auto&& self, int t) -> void {
    ++res.nodes;
    if (res.solutions >= cfg.max_solutions) {
      res.capped = true;
      return;
    }
    if (t == n * n) {
      ++res.solutions;
      return;
    }
    const int x = t % n, y = t / n;
    std::array<int*, 4> arms{&vat(x, y), &hat(x, y), &vat(x, y - 1), &hat(x - 1, y)};
    for (const auto& c : crosses) {
      bool fits = true;
      for (std::size_t i = 0; i < 4 && fits; ++i) fits = *arms[i] < 0 || *arms[i] == c[i];
      if (!fits) continue;
      std::array<int, 4> saved{};
      for (std::size_t i = 0; i < 4; ++i) {
        saved[i] = *arms[i];
        *arms[i] = c[i];
      }
      if (line_ok(v, x) && line_ok(h, y) && line_ok(h, wrap(y - 1)) && line_ok(v, wrap(x - 1))) self(self, t + 1);
      for (std::size_t i = 0; i < 4; ++i) *arms[i] = saved[i];
    }
  };
  recurse(recurse, 0);
  res.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

TorusResult torus_impossibility() { return torus_search(TorusConfig{}); }

TorusResult torus_control() {
  TorusConfig cfg;
  cfg.n = 8;
  cfg.bold = {4};
  cfg.pale = {4};
  cfg.projection = TorusProjection::Bold;
  cfg.max_solutions = 1000;
  return torus_search(cfg);
}

std::int64_t parity_matchings(int n) {
  if (n < 0 || n > 24) throw Error(ErrorCode::BadInput, "n must be in [0,24]");
  auto rec = [n](auto&& self, unsigned used) -> std::int64_t {
    int first = 0;
    while (first < n && (used >> first & 1u)) ++first;
    if (first == n) return 1;
    std::int64_t total = 0;
    for (int j = first + 2; j < n; j += 2)
      if (!(used >> j & 1u)) total += self(self, used | (1u << first) | (1u << j));
    return total;
  };
  return rec(rec, 0u);
}

namespace {

bool is_bold_two_bar(const Patch& p, Orientation o, std::int64_t line, std::int64_t s) {
  return bold_at(p, edge_on(o, line, s)) && bold_at(p, edge_on(o, line, s + 1)) &&
         !bold_at(p, edge_on(o, line, s - 1)) && !bold_at(p, edge_on(o, line, s + 2));
}

bool sites_present(const Patch& p, Orientation o, std::int64_t line, std::int64_t s) {
  return p.has(edge_on(o, line, s - 1)) && p.has(edge_on(o, line, s + 2));
}

}  // namespace

std::vector<BarOffset> calibrate_two_bar_neighborhood(const std::vector<Patch>& patches) {
  std::set<BarOffset> candidates;
  for (int across = -2; across <= 2; ++across)
    for (int along = -4; along <= 4; ++along)
      if (across != 0 || along != 0) candidates.insert({across, along});
  for (const Patch& p : patches) {
    for (const Bar& b : bars_of(p)) {
      if (!b.bold || b.truncated || b.length != 2) continue;
      bool room = true;
      for (const auto& c : candidates) room = room && sites_present(p, b.orientation, b.line + c.across, b.start + c.along);
      if (!room) continue;
      for (auto it = candidates.begin(); it != candidates.end();) {
        if (is_bold_two_bar(p, b.orientation, b.line + it->across, b.start + it->along)) {
          ++it;
        } else {
          it = candidates.erase(it);
        }
      }
    }
  }
  return {candidates.begin(), candidates.end()};
}

const std::vector<BarOffset>& two_bar_neighborhood() {
  static const std::vector<BarOffset> offsets{{-2, 0}, {2, 0}};
  return offsets;
}

NeighborhoodResult two_bar_neighborhood_ok(const Patch& p, const Bar& bar) {
  return two_bar_neighborhood_ok(p, bar, two_bar_neighborhood());
}

NeighborhoodResult two_bar_neighborhood_ok(const Patch& p, const Bar& bar, const std::vector<BarOffset>& offsets) {
  if (!sites_present(p, bar.orientation, bar.line, bar.start) ||
      !is_bold_two_bar(p, bar.orientation, bar.line, bar.start)) {
    throw Error(ErrorCode::BadInput, "not an untruncated bold 2-bar");
  }
  for (const auto& c : offsets) {
    if (!sites_present(p, bar.orientation, bar.line + c.across, bar.start + c.along)) {
      throw Error(ErrorCode::MarginTooSmall, "companion site outside the patch");
    }
  }
  NeighborhoodResult res;
  for (const auto& c : offsets) {
    if (!is_bold_two_bar(p, bar.orientation, bar.line + c.across, bar.start + c.along)) {
      res.ok = false;
      res.missing = c;
      break;
    }
  }
  return res;
}

}  // namespace adictile
