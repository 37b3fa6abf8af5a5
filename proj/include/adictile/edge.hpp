#pragma once

// Edges of the integer grid, their colors, and the 8-element reflection
// group acting on both.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace adictile {

enum class Orientation : std::uint8_t { V, H };

// V: the edge from (x,y) to (x,y+1). H: the edge from (x,y) to (x+1,y).
struct EdgeRef {
  Orientation orientation = Orientation::V;
  std::int64_t x = 0;
  std::int64_t y = 0;

  // Coordinate of the grid line carrying the edge, and the lower end of the
  // unit segment along that line.
  std::int64_t line() const { return orientation == Orientation::V ? x : y; }
  std::int64_t along() const { return orientation == Orientation::V ? y : x; }

  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

enum class Alphabet : std::uint8_t { Bracket, Base, Parity };

std::string_view to_string(Alphabet a);
Alphabet alphabet_from_string(std::string_view s);
// Number of distinct packed codes the alphabet can express.
int alphabet_code_space(Alphabet a);

// Packed code: bit0 bracket, bit1 bold, bit2 (pointer+1)/2; the parity
// extension adds bit3 = odd line and bit4 = (parity_pointer+1)/2 on even lines.
struct EdgeColor {
  std::uint8_t bracket = 0;
  std::uint8_t bold = 0;
  std::int8_t pointer = 1;  // +1 toward increasing orthogonal coordinate
  bool has_parity = false;
  std::uint8_t odd = 0;
  std::int8_t parity_pointer = 0;  // 0 on odd lines

  std::uint8_t code() const;
  static EdgeColor from_code(std::uint8_t code, Alphabet alphabet);

  friend bool operator==(const EdgeColor&, const EdgeColor&) = default;
};

// Element of the reflection group: optionally swap the coordinates, then
// negate x and/or y. Names: e x y xy d dx dy dxy.
class Sym {
 public:
  constexpr Sym() = default;
  constexpr Sym(bool swap, bool neg_x, bool neg_y)
      : code_(static_cast<std::uint8_t>((neg_x ? 1 : 0) | (neg_y ? 2 : 0) | (swap ? 4 : 0))) {}
  static constexpr Sym from_index(int i) { return Sym((i & 4) != 0, (i & 1) != 0, (i & 2) != 0); }
  static Sym from_name(std::string_view name);
  static constexpr Sym identity() { return Sym(); }
  static std::array<Sym, 8> all();

  constexpr bool swap() const { return (code_ & 4) != 0; }
  constexpr bool neg_x() const { return (code_ & 1) != 0; }
  constexpr bool neg_y() const { return (code_ & 2) != 0; }
  constexpr int index() const { return code_; }
  std::string name() const;

  // Whether the base x (resp. y) axis lands on a negated target axis.
  constexpr bool negates_base_x() const { return swap() ? neg_y() : neg_x(); }
  constexpr bool negates_base_y() const { return swap() ? neg_x() : neg_y(); }

  Sym operator*(const Sym& rhs) const;  // (a*b)(p) = a(b(p))
  Sym inverse() const;

  // Images of integer points and edges.
  std::array<std::int64_t, 2> apply(std::int64_t x, std::int64_t y) const;
  EdgeRef apply(const EdgeRef& e) const;
  // Color of the image edge given the color of the source edge.
  EdgeColor act(const EdgeColor& c, Orientation source) const;

  friend bool operator==(const Sym&, const Sym&) = default;

 private:
  std::uint8_t code_ = 0;
};

struct Rect {
  std::int64_t x0 = 0, y0 = 0, x1 = 0, y1 = 0;

  std::int64_t width() const { return x1 - x0; }
  std::int64_t height() const { return y1 - y0; }
  bool empty() const { return width() <= 0 || height() <= 0; }
  // Open-box membership: border edges are absent.
  bool contains(const EdgeRef& e) const;
  Rect image(const Sym& s) const;

  friend bool operator==(const Rect&, const Rect&) = default;
};

}  // namespace adictile
