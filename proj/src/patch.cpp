#include "adictile/patch.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "adictile/error.hpp"

namespace adictile {

std::uint8_t encode(const EdgeColor& c, Alphabet alphabet) {
  switch (alphabet) {
    case Alphabet::Bracket: return c.bracket & 1;
    case Alphabet::Base: return c.code() & 7;
    case Alphabet::Parity: {
      EdgeColor p = c;
      p.has_parity = true;
      return p.code();
    }
  }
  return 0;
}

Patch::Patch(Rect rect, Alphabet alphabet) : rect_(rect), alphabet_(alphabet) {
  if (rect.width() < 0 || rect.height() < 0) throw Error(ErrorCode::BadInput, "negative rect");
  const std::int64_t w = rect.width();
  const std::int64_t h = rect.height();
  if (w > 0 && h > 0) {
    v_.assign(static_cast<std::size_t>((w - 1) * h), 0);
    h_.assign(static_cast<std::size_t>(w * (h - 1)), 0);
  }
}

std::size_t Patch::index(const EdgeRef& e) const {
  const std::int64_t w = rect_.width();
  if (e.orientation == Orientation::V) {
    return static_cast<std::size_t>((e.y - rect_.y0) * (w - 1) + (e.x - rect_.x0 - 1));
  }
  return static_cast<std::size_t>((e.y - rect_.y0 - 1) * w + (e.x - rect_.x0));
}

namespace {

constexpr const char* kHex = "0123456789abcdef";

int digits_per_code(Alphabet a) { return a == Alphabet::Parity ? 2 : 1; }

void write_code(std::ostream& out, std::uint8_t c, int digits) {
  if (digits == 2) out << kHex[(c >> 4) & 0xf];
  out << kHex[c & 0xf];
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

void read_row(std::istream& in, std::vector<std::uint8_t>& dst, std::size_t offset, std::int64_t count,
              int digits, int limit) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::BadInput, "truncated patch file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (static_cast<std::int64_t>(line.size()) != count * digits) {
    throw Error(ErrorCode::BadInput, "row has " + std::to_string(line.size()) + " digits, expected " +
                                         std::to_string(count * digits));
  }
  for (std::int64_t i = 0; i < count; ++i) {
    int v = 0;
    for (int d = 0; d < digits; ++d) {
      const int h = hex_value(line[static_cast<std::size_t>(i * digits + d)]);
      if (h < 0) throw Error(ErrorCode::BadInput, "bad hex digit in patch row");
      v = v * 16 + h;
    }
    if (v >= limit) throw Error(ErrorCode::BadInput, "color code out of range for alphabet");
    dst[offset + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  }
}

}  // namespace

void write_patch(std::ostream& out, const Patch& p) {
  const Rect& r = p.rect();
  out << "TILEPATCH v1 " << r.x0 << ' ' << r.y0 << ' ' << r.x1 << ' ' << r.y1 << ' '
      << to_string(p.alphabet()) << '\n';
  if (r.empty()) return;
  const int digits = digits_per_code(p.alphabet());
  const std::int64_t w = r.width();
  for (std::int64_t y = 0; y < r.height(); ++y) {
    for (std::int64_t x = 0; x < w - 1; ++x) write_code(out, p.v_codes()[static_cast<std::size_t>(y * (w - 1) + x)], digits);
    out << '\n';
  }
  for (std::int64_t y = 0; y < r.height() - 1; ++y) {
    for (std::int64_t x = 0; x < w; ++x) write_code(out, p.h_codes()[static_cast<std::size_t>(y * w + x)], digits);
    out << '\n';
  }
}

Patch read_patch(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::BadInput, "empty patch file");
  std::istringstream hs(header);
  std::string magic, version, alpha;
  Rect r;
  hs >> magic >> version >> r.x0 >> r.y0 >> r.x1 >> r.y1 >> alpha;
  if (!hs || magic != "TILEPATCH" || version != "v1") throw Error(ErrorCode::BadInput, "bad patch header");
  Patch p(r, alphabet_from_string(alpha));
  if (r.empty()) return p;
  const int digits = digits_per_code(p.alphabet());
  const int limit = alphabet_code_space(p.alphabet());
  const std::int64_t w = r.width();
  for (std::int64_t y = 0; y < r.height(); ++y) {
    read_row(in, p.v_codes(), static_cast<std::size_t>(y * (w - 1)), w - 1, digits, limit);
  }
  for (std::int64_t y = 0; y < r.height() - 1; ++y) {
    read_row(in, p.h_codes(), static_cast<std::size_t>(y * w), w, digits, limit);
  }
  return p;
}

void save_patch(const std::string& path, const Patch& p) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
  write_patch(out, p);
}

Patch load_patch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  return read_patch(in);
}

}  // namespace adictile
