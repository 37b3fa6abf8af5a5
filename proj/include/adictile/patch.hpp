#pragma once

// A finite open window of edge colors.
//
// The rect [x0,x1] x [y0,y1] is a box of width x1-x0 tiles; edges on its
// border are absent. V edges live on lines x0 < x < x1 for y0 <= y < y1,
// H edges on lines y0 < y < y1 for x0 <= x < x1.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adictile/adic.hpp"
#include "adictile/edge.hpp"

namespace adictile {

std::uint8_t encode(const EdgeColor& c, Alphabet alphabet);

class Patch {
 public:
  Patch() = default;
  Patch(Rect rect, Alphabet alphabet);

  const Rect& rect() const { return rect_; }
  Alphabet alphabet() const { return alphabet_; }
  bool empty() const { return v_.empty() && h_.empty(); }
  std::size_t edge_count() const { return v_.size() + h_.size(); }

  bool has(const EdgeRef& e) const { return rect_.contains(e); }
  std::uint8_t code(const EdgeRef& e) const { return codes(e.orientation)[index(e)]; }
  EdgeColor color(const EdgeRef& e) const { return EdgeColor::from_code(code(e), alphabet_); }
  void set_code(const EdgeRef& e, std::uint8_t c) { codes(e.orientation)[index(e)] = c; }
  void set(const EdgeRef& e, const EdgeColor& c) { set_code(e, encode(c, alphabet_)); }

  // Raw storage, row-major by y then x.
  const std::vector<std::uint8_t>& v_codes() const { return v_; }
  const std::vector<std::uint8_t>& h_codes() const { return h_; }
  std::vector<std::uint8_t>& v_codes() { return v_; }
  std::vector<std::uint8_t>& h_codes() { return h_; }

  std::size_t index(const EdgeRef& e) const;

  template <typename F>
  void for_each_edge(F&& f) const {
    for (std::int64_t y = rect_.y0; y < rect_.y1; ++y)
      for (std::int64_t x = rect_.x0 + 1; x < rect_.x1; ++x) f(EdgeRef{Orientation::V, x, y});
    for (std::int64_t y = rect_.y0 + 1; y < rect_.y1; ++y)
      for (std::int64_t x = rect_.x0; x < rect_.x1; ++x) f(EdgeRef{Orientation::H, x, y});
  }

  // Optional rank of each V line (x0+1..x1-1) and H line (y0+1..y1-1),
  // filled in by the generator; used only for glyph shapes when rendering.
  std::vector<Rank> v_line_ranks;
  std::vector<Rank> h_line_ranks;

  // Equality compares geometry and colors, not annotations.
  friend bool operator==(const Patch& a, const Patch& b) {
    return a.rect_ == b.rect_ && a.alphabet_ == b.alphabet_ && a.v_ == b.v_ && a.h_ == b.h_;
  }

 private:
  std::vector<std::uint8_t>& codes(Orientation o) { return o == Orientation::V ? v_ : h_; }
  const std::vector<std::uint8_t>& codes(Orientation o) const { return o == Orientation::V ? v_ : h_; }

  Rect rect_;
  Alphabet alphabet_ = Alphabet::Base;
  std::vector<std::uint8_t> v_;
  std::vector<std::uint8_t> h_;
};

// Text format:
//   TILEPATCH v1 x0 y0 x1 y1 alphabet
//   one line per V-edge row (y0..y1-1), then one per H-edge row (y0+1..y1-1),
//   each edge a hex code: one digit for bracket/base, two for parity.
void write_patch(std::ostream& out, const Patch& p);
Patch read_patch(std::istream& in);
void save_patch(const std::string& path, const Patch& p);
Patch load_patch(const std::string& path);

}  // namespace adictile
