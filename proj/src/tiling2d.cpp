#include "adictile/tiling2d.hpp"

#include <sstream>

#include "adictile/error.hpp"

namespace adictile {

Pose Pose::identity(int precision) {
  return Pose{Adic::zero(precision), Adic::zero(precision), Sym::identity(), 0, 0};
}

Pose Pose::shifted(std::int64_t dx, std::int64_t dy, Sym sym, int precision) {
  return Pose{Adic::from_int(dx, precision), Adic::from_int(dy, precision), sym, 0, 0};
}

namespace {

struct AdicPoint {
  Adic x;
  Adic y;
};

AdicPoint apply_linear(const Sym& s, const AdicPoint& p) {
  const Adic& a = s.swap() ? p.y : p.x;
  const Adic& b = s.swap() ? p.x : p.y;
  return AdicPoint{s.neg_x() ? -a : a, s.neg_y() ? -b : b};
}

EdgeColor base_color(const BaseEdge& b, const Pose& pose, Alphabet alphabet) {
  EdgeColor c;
  const Rank r = valuation(b.line);
  if (!r.ranked()) {
    // Default central cross: bold, pointing at the origin.
    c.bracket = static_cast<std::uint8_t>(b.orientation == Orientation::V ? pose.default_x : pose.default_y);
    c.bold = 1;
    c.pointer = b.along.to_int() >= 0 ? -1 : 1;
  } else {
    const int k = r.value();
    if (k + 1 >= b.line.precision()) {
      throw Error(ErrorCode::PrecisionExhausted, "line of rank " + std::to_string(k));
    }
    c.bracket = static_cast<std::uint8_t>(b.line.bit(k + 1));
    const std::uint64_t unit = std::uint64_t{1} << k;
    const std::uint64_t phase = b.along.residue(k + 2);
    c.bold = (phase >= unit && phase < 3 * unit) ? 1 : 0;
    // Rank-k lines sit at odd multiples of 2^k; the nearest one to the
    // midpoint is above exactly when the residue mod 2^(k+1) is below 2^k.
    c.pointer = b.along.residue(k + 1) < unit ? 1 : -1;
  }
  if (alphabet == Alphabet::Parity) {
    c.has_parity = true;
    c.odd = static_cast<std::uint8_t>(b.line.bit(0));
    // Point at the odd end of the edge.
    c.parity_pointer = c.odd ? 0 : (b.along.bit(0) ? -1 : 1);
  }
  return c;
}

}  // namespace

Pose operator*(const Sym& s, const Pose& p) {
  const AdicPoint t = apply_linear(s, {p.dx, p.dy});
  return Pose{t.x, t.y, s * p.sym, p.default_x, p.default_y};
}

Pose compose(const Pose& a, const Pose& b) {
  const AdicPoint t = apply_linear(a.sym, {b.dx, b.dy});
  return Pose{a.dx + t.x, a.dy + t.y, a.sym * b.sym, b.default_x, b.default_y};
}

BaseEdge base_edge(const EdgeRef& e, const Pose& pose) {
  const int n = pose.precision();
  const Sym inv = pose.sym.inverse();
  const AdicPoint p = apply_linear(inv, {Adic::from_int(e.x, n) - pose.dx, Adic::from_int(e.y, n) - pose.dy});
  const auto u = e.orientation == Orientation::V ? inv.apply(0, 1) : inv.apply(1, 0);
  if (u[0] == 0) {
    const Adic along = u[1] > 0 ? p.y : p.y - Adic::one(n);
    return BaseEdge{Orientation::V, p.x, along};
  }
  const Adic along = u[0] > 0 ? p.x : p.x - Adic::one(n);
  return BaseEdge{Orientation::H, p.y, along};
}

Rank line_rank(const EdgeRef& e, const Pose& pose) { return valuation(base_edge(e, pose).line); }

bool on_axis(const EdgeRef& e, const Pose& pose) { return base_edge(e, pose).line.is_zero(); }

EdgeColor ce_color(const EdgeRef& e, const Pose& pose, Alphabet alphabet) {
  const BaseEdge b = base_edge(e, pose);
  EdgeColor c = pose.sym.act(base_color(b, pose, alphabet), b.orientation);
  if (alphabet == Alphabet::Bracket) {
    c.bold = 0;
    c.pointer = 1;
  }
  return c;
}

Patch generate(const Pose& pose, const Rect& rect, Alphabet alphabet) {
  if (rect.empty()) throw Error(ErrorCode::BadInput, "empty rect");
  Patch p(rect, alphabet);
  p.for_each_edge([&](const EdgeRef& e) { p.set(e, ce_color(e, pose, alphabet)); });
  for (std::int64_t x = rect.x0 + 1; x < rect.x1; ++x) {
    p.v_line_ranks.push_back(line_rank(EdgeRef{Orientation::V, x, rect.y0}, pose));
  }
  for (std::int64_t y = rect.y0 + 1; y < rect.y1; ++y) {
    p.h_line_ranks.push_back(line_rank(EdgeRef{Orientation::H, rect.x0, y}, pose));
  }
  return p;
}

Patch apply_symmetry(const Patch& p, const Sym& s) {
  Patch out(p.rect().image(s), p.alphabet());
  p.for_each_edge([&](const EdgeRef& e) {
    EdgeColor c = s.act(p.color(e), e.orientation);
    out.set(s.apply(e), c);
  });
  // Line ranks follow their lines; negation reverses the order.
  const bool vx = !s.swap();
  auto remap = [](const std::vector<Rank>& src, bool reverse) {
    std::vector<Rank> dst(src.rbegin(), src.rend());
    return reverse ? dst : src;
  };
  if (!p.v_line_ranks.empty() || !p.h_line_ranks.empty()) {
    if (vx) {
      out.v_line_ranks = remap(p.v_line_ranks, s.neg_x());
      out.h_line_ranks = remap(p.h_line_ranks, s.neg_y());
    } else {
      out.h_line_ranks = remap(p.v_line_ranks, s.neg_y());
      out.v_line_ranks = remap(p.h_line_ranks, s.neg_x());
    }
  }
  return out;
}

Patch project(const Patch& p) {
  Patch out(p.rect(), Alphabet::Bracket);
  for (std::size_t i = 0; i < p.v_codes().size(); ++i) out.v_codes()[i] = p.v_codes()[i] & 1;
  for (std::size_t i = 0; i < p.h_codes().size(); ++i) out.h_codes()[i] = p.h_codes()[i] & 1;
  out.v_line_ranks = p.v_line_ranks;
  out.h_line_ranks = p.h_line_ranks;
  return out;
}

namespace {

char glyph(int bracket, const std::vector<Rank>& ranks, std::int64_t index) {
  if (index < 0 || static_cast<std::size_t>(index) >= ranks.size()) return bracket ? ')' : '(';
  const Rank r = ranks[static_cast<std::size_t>(index)];
  if (!r.ranked()) return bracket ? '>' : '<';
  if (r.value() % 2 == 0) return bracket ? '}' : '{';
  return bracket ? ']' : '[';
}

void rstrip_line(std::string& s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
}

std::string render_ascii(const Patch& p) {
  const Rect& r = p.rect();
  const bool has_bold = p.alphabet() != Alphabet::Bracket;
  std::string out;
  for (std::int64_t y = r.y1; y >= r.y0; --y) {
    std::string row;
    const bool interior = y > r.y0 && y < r.y1;
    for (std::int64_t x = r.x0; x <= r.x1; ++x) {
      const bool vertex_inside = interior && x > r.x0 && x < r.x1;
      row += vertex_inside ? "+ " : "  ";
      if (x == r.x1) break;
      if (interior) {
        const EdgeRef e{Orientation::H, x, y};
        const EdgeColor c = p.color(e);
        const char stroke = has_bold && c.bold ? '=' : '-';
        row += stroke;
        row += glyph(c.bracket, p.h_line_ranks, y - r.y0 - 1);
        row += stroke;
      } else {
        row += "   ";
      }
    }
    rstrip_line(row);
    out += row;
    out += '\n';
    if (y == r.y0) break;
    std::string tiles;
    for (std::int64_t x = r.x0; x <= r.x1; ++x) {
      if (x > r.x0 && x < r.x1) {
        const EdgeColor c = p.color(EdgeRef{Orientation::V, x, y - 1});
        const char g = glyph(c.bracket, p.v_line_ranks, x - r.x0 - 1);
        tiles += g;
        tiles += has_bold && c.bold ? g : ' ';
      } else {
        tiles += "  ";
      }
      if (x < r.x1) tiles += "   ";
    }
    rstrip_line(tiles);
    out += tiles;
    out += '\n';
  }
  return out;
}

std::string render_svg(const Patch& p, const std::vector<Rect>& overlay) {
  constexpr int kScale = 12;
  constexpr int kMargin = 6;
  const Rect& r = p.rect();
  const bool enhanced = p.alphabet() != Alphabet::Bracket;
  std::ostringstream s;
  const std::int64_t width = r.width() * kScale + 2 * kMargin;
  const std::int64_t height = r.height() * kScale + 2 * kMargin;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  auto px = [&](std::int64_t x) { return kMargin + (x - r.x0) * kScale; };
  auto py = [&](std::int64_t y) { return kMargin + (r.y1 - y) * kScale; };
  p.for_each_edge([&](const EdgeRef& e) {
    const EdgeColor c = p.color(e);
    const bool v = e.orientation == Orientation::V;
    const std::int64_t ax = px(e.x), ay = py(e.y);
    const std::int64_t bx = v ? ax : px(e.x + 1);
    const std::int64_t by = v ? py(e.y + 1) : ay;
    s << "<line x1=\"" << ax << "\" y1=\"" << ay << "\" x2=\"" << bx << "\" y2=\"" << by << "\" stroke=\""
      << (c.bracket ? "#d62728" : "#1f77b4") << "\" stroke-width=\"" << (enhanced && c.bold ? 3 : 1)
      << "\"/>\n";
    if (!enhanced) return;
    // Arrowhead at the midpoint, along the edge, in the pointer direction.
    const std::int64_t mx = (ax + bx) / 2, my = (ay + by) / 2;
    const int dir = c.pointer;
    if (v) {
      const std::int64_t tip = my - 3 * dir, back = my + dir;  // svg y grows downward
      s << "<polygon points=\"" << mx << ',' << tip << ' ' << mx - 2 << ',' << back << ' ' << mx + 2 << ','
        << back << "\" fill=\"#333\"/>\n";
    } else {
      const std::int64_t tip = mx + 3 * dir, back = mx - dir;
      s << "<polygon points=\"" << tip << ',' << my << ' ' << back << ',' << my - 2 << ' ' << back << ','
        << my + 2 << "\" fill=\"#333\"/>\n";
    }
  });
  for (const Rect& b : overlay) {
    s << "<rect x=\"" << px(b.x0) << "\" y=\"" << py(b.y1) << "\" width=\"" << b.width() * kScale << "\" height=\""
      << b.height() * kScale << "\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1\" stroke-dasharray=\"4 2\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace

std::string render(const Patch& p, RenderFormat format, std::int64_t area_limit, const std::vector<Rect>& overlay) {
  if (p.rect().empty()) return "";
  if (p.rect().width() * p.rect().height() > area_limit) {
    throw Error(ErrorCode::TooLarge, "patch area exceeds render limit");
  }
  return format == RenderFormat::Ascii ? render_ascii(p) : render_svg(p, overlay);
}

}  // namespace adictile
