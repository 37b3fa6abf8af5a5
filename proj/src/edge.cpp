#include "adictile/edge.hpp"

#include <algorithm>

#include "adictile/error.hpp"

namespace adictile {

std::string_view to_string(Alphabet a) {
  switch (a) {
    case Alphabet::Bracket: return "bracket";
    case Alphabet::Base: return "base";
    case Alphabet::Parity: return "parity";
  }
  return "base";
}

Alphabet alphabet_from_string(std::string_view s) {
  if (s == "bracket") return Alphabet::Bracket;
  if (s == "base") return Alphabet::Base;
  if (s == "parity") return Alphabet::Parity;
  throw Error(ErrorCode::BadInput, "unknown alphabet '" + std::string(s) + "'");
}

int alphabet_code_space(Alphabet a) {
  switch (a) {
    case Alphabet::Bracket: return 2;
    case Alphabet::Base: return 8;
    case Alphabet::Parity: return 32;
  }
  return 8;
}

std::uint8_t EdgeColor::code() const {
  auto c = static_cast<std::uint8_t>(bracket | (bold << 1) | ((pointer > 0 ? 1 : 0) << 2));
  if (has_parity) {
    c |= static_cast<std::uint8_t>(odd << 3);
    if (!odd && parity_pointer > 0) c |= 16;
  }
  return c;
}

EdgeColor EdgeColor::from_code(std::uint8_t code, Alphabet alphabet) {
  EdgeColor c;
  c.bracket = code & 1;
  if (alphabet == Alphabet::Bracket) {
    // Bracket-only colors carry no enforcement bits; keep the rest neutral.
    c.bold = 0;
    c.pointer = 1;
    return c;
  }
  c.bold = (code >> 1) & 1;
  c.pointer = (code & 4) ? 1 : -1;
  if (alphabet == Alphabet::Parity) {
    c.has_parity = true;
    c.odd = (code >> 3) & 1;
    c.parity_pointer = c.odd ? 0 : ((code & 16) ? 1 : -1);
  }
  return c;
}

namespace {

struct Matrix {
  int a, b, c, d;  // [[a b] [c d]]
};

Matrix to_matrix(const Sym& s) {
  const int sx = s.neg_x() ? -1 : 1;
  const int sy = s.neg_y() ? -1 : 1;
  if (s.swap()) return {0, sx, sy, 0};
  return {sx, 0, 0, sy};
}

Sym from_matrix(const Matrix& m) {
  if (m.a == 0) return Sym(true, m.b < 0, m.c < 0);
  return Sym(false, m.a < 0, m.d < 0);
}

const char* kNames[8] = {"e", "x", "y", "xy", "d", "dx", "dy", "dxy"};

}  // namespace

Sym Sym::from_name(std::string_view name) {
  for (int i = 0; i < 8; ++i) {
    if (name == kNames[i]) return from_index(i);
  }
  throw Error(ErrorCode::BadInput, "unknown symmetry '" + std::string(name) + "'");
}

std::string Sym::name() const { return kNames[index()]; }

std::array<Sym, 8> Sym::all() {
  std::array<Sym, 8> out;
  for (int i = 0; i < 8; ++i) out[static_cast<std::size_t>(i)] = from_index(i);
  return out;
}

Sym Sym::operator*(const Sym& rhs) const {
  const Matrix l = to_matrix(*this);
  const Matrix r = to_matrix(rhs);
  return from_matrix({l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d, l.c * r.a + l.d * r.c,
                      l.c * r.b + l.d * r.d});
}

Sym Sym::inverse() const {
  const Matrix m = to_matrix(*this);
  return from_matrix({m.a, m.c, m.b, m.d});  // orthogonal: inverse is transpose
}

std::array<std::int64_t, 2> Sym::apply(std::int64_t x, std::int64_t y) const {
  const Matrix m = to_matrix(*this);
  return {m.a * x + m.b * y, m.c * x + m.d * y};
}

EdgeRef Sym::apply(const EdgeRef& e) const {
  const auto p = apply(e.x, e.y);
  const auto q = e.orientation == Orientation::V ? apply(e.x, e.y + 1) : apply(e.x + 1, e.y);
  if (p[0] == q[0]) return EdgeRef{Orientation::V, p[0], std::min(p[1], q[1])};
  return EdgeRef{Orientation::H, std::min(p[0], q[0]), p[1]};
}

EdgeColor Sym::act(const EdgeColor& c, Orientation source) const {
  const bool line_negated = source == Orientation::V ? negates_base_x() : negates_base_y();
  const bool along_negated = source == Orientation::V ? negates_base_y() : negates_base_x();
  EdgeColor out = c;
  if (line_negated) out.bracket ^= 1;
  if (along_negated) {
    out.pointer = static_cast<std::int8_t>(-out.pointer);
    out.parity_pointer = static_cast<std::int8_t>(-out.parity_pointer);
  }
  return out;
}

bool Rect::contains(const EdgeRef& e) const {
  if (e.orientation == Orientation::V) return e.x > x0 && e.x < x1 && e.y >= y0 && e.y < y1;
  return e.y > y0 && e.y < y1 && e.x >= x0 && e.x < x1;
}

Rect Rect::image(const Sym& s) const {
  const auto a = s.apply(x0, y0);
  const auto b = s.apply(x1, y1);
  return Rect{std::min(a[0], b[0]), std::min(a[1], b[1]), std::max(a[0], b[0]), std::max(a[1], b[1])};
}

}  // namespace adictile
