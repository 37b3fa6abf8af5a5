#include "adictile/coords1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adictile/error.hpp"

namespace adictile {

char Bracket::glyph() const {
  if (!rank.ranked()) return bit == 0 ? '<' : '>';
  if (brace_shape()) return bit == 0 ? '{' : '}';
  return bit == 0 ? '[' : ']';
}

Bracket bracket_at(const Adic& x, const Line1D& line) {
  const Adic u = line.reflected ? line.shift - x : x - line.shift;
  const int flip = line.reflected ? 1 : 0;
  const Rank r = valuation(u);
  if (!r.ranked()) return Bracket{line.default_bit ^ flip, Rank::unranked()};
  if (r.value() + 1 >= u.precision()) {
    throw Error(ErrorCode::PrecisionExhausted,
                "rank " + std::to_string(r.value()) + " at precision " + std::to_string(u.precision()));
  }
  return Bracket{u.bit(r.value() + 1) ^ flip, r};
}

Bracket bracket_at(std::int64_t x, const Line1D& line) {
  return bracket_at(Adic::from_int(x, line.shift.precision()), line);
}

std::optional<Domain1D> domain_containing(std::int64_t y, int k, const Line1D& line) {
  if (k < 0 || k + 2 > line.shift.precision()) {
    throw Error(ErrorCode::PrecisionExhausted, "domain rank " + std::to_string(k));
  }
  const Adic ya = Adic::from_int(y, line.shift.precision());
  const Adic u = line.reflected ? line.shift - ya : ya - line.shift;
  const std::int64_t unit = std::int64_t{1} << k;
  const auto phase = static_cast<std::int64_t>(u.residue(k + 2));
  if (phase < unit || phase > 3 * unit) return std::nullopt;
  // u sits at offset (phase - unit) from the domain's opening bracket.
  const std::int64_t from_open = phase - unit;
  if (!line.reflected) return Domain1D{k, y - from_open, y - from_open + 2 * unit};
  // Reflected: u = shift - y, so increasing u runs toward decreasing y.
  return Domain1D{k, y + from_open - 2 * unit, y + from_open};
}

std::pair<Domain1D, Domain1D> children(const Domain1D& d) {
  if (d.rank < 1) throw Error(ErrorCode::RankTooLow, "children of a rank-0 domain");
  const std::int64_t half = std::int64_t{1} << (d.rank - 1);
  return {Domain1D{d.rank - 1, d.lo - half, d.lo + half}, Domain1D{d.rank - 1, d.hi - half, d.hi + half}};
}

std::array<Domain1D, 4> grandchildren(const Domain1D& d) {
  if (d.rank < 2) throw Error(ErrorCode::RankTooLow, "grandchildren need rank >= 2");
  const auto [left, right] = children(d);
  const auto [a, b] = children(left);
  const auto [c, e] = children(right);
  return {a, b, c, e};
}

bool ShiftDiffReport::holds() const {
  for (const auto& r : per_rank) {
    if (r.compared == 0) return false;
    const double want = r.rank == k - 1 ? 1.0 : 0.0;
    if (r.reversed_fraction() != want) return false;
  }
  return changed_fraction <= bound;
}

ShiftDiffReport remark1_report(int k, std::int64_t i, std::int64_t lo, std::int64_t hi) {
  if (k < 1 || k > 40) throw Error(ErrorCode::BadInput, "k must be in [1,40]");
  if (hi - lo < (std::int64_t{1} << (k + 3))) {
    throw Error(ErrorCode::WindowTooSmall, "window must span at least 2^(k+3)");
  }
  ShiftDiffReport rep;
  rep.k = k;
  rep.i = i;
  rep.window_lo = lo;
  rep.window_hi = hi;
  const std::int64_t s = (2 * i + 1) * (std::int64_t{1} << k);
  const Line1D base = Line1D::identity();
  const Line1D shifted{Adic::from_int(s), 0, false};
  constexpr int kHigherSpan = 6;
  rep.per_rank.resize(static_cast<std::size_t>(k));
  rep.higher_rank.resize(kHigherSpan);
  for (int r = 0; r < k; ++r) rep.per_rank[static_cast<std::size_t>(r)].rank = r;
  for (int j = 0; j < kHigherSpan; ++j) rep.higher_rank[static_cast<std::size_t>(j)].rank = k + 1 + j;

  for (std::int64_t x = lo; x <= hi; ++x) {
    const Bracket a = bracket_at(x, base);
    const Bracket b = bracket_at(x, shifted);
    ++rep.positions;
    if (!(a == b)) ++rep.changed;
    if (a.rank.ranked() && b.rank.ranked() && a.rank == b.rank && a.rank.value() < k) {
      auto& slot = rep.per_rank[static_cast<std::size_t>(a.rank.value())];
      ++slot.compared;
      if (a.bit != b.bit) ++slot.reversed;
    }
    // Measured only: for shifted rank j > k, does digit j+1 of the location
    // disagree with the shifted bracket?
    if (b.rank.ranked() && b.rank.value() > k && b.rank.value() <= k + kHigherSpan && x != 0) {
      const int j = b.rank.value();
      auto& slot = rep.higher_rank[static_cast<std::size_t>(j - k - 1)];
      ++slot.compared;
      const int digit = static_cast<int>((static_cast<std::uint64_t>(x) >> (j + 1)) & 1u);
      if (digit != b.bit) ++slot.reversed;
    }
  }
  rep.changed_fraction = static_cast<double>(rep.changed) / static_cast<double>(rep.positions);
  rep.bound = std::ldexp(2.0, -k) + std::ldexp(1.0, k + 2) / static_cast<double>(hi - lo);
  return rep;
}

namespace {

struct Congruence {
  std::uint64_t value = 0;
  int width = 0;  // value is known modulo 2^width
};

std::uint64_t low_mask(int width) {
  return width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
}

}  // namespace

std::uint64_t decode_position(std::span<const BracketObservation> obs, int m) {
  if (m < 0 || m > 64) throw Error(ErrorCode::BadInput, "m must be in [0,64]");
  Congruence best;
  std::vector<Congruence> all;
  all.reserve(obs.size());
  for (const auto& o : obs) {
    Congruence c;
    const auto x = static_cast<std::uint64_t>(o.x);
    if (o.unranked_flagged || !o.bracket.rank.ranked()) {
      if (!o.unranked_flagged) continue;
      c = {x, 64};
    } else {
      const int r = o.bracket.rank.value();
      if (r >= 63) {
        c = {x - (std::uint64_t{1} << r), 63};
      } else {
        // x - s = 2^r + bit 2^(r+1)  (mod 2^(r+2))
        const std::uint64_t offset =
            (std::uint64_t{1} << r) + (static_cast<std::uint64_t>(o.bracket.bit) << (r + 1));
        c = {(x - offset) & low_mask(r + 2), r + 2};
      }
    }
    all.push_back(c);
    if (c.width > best.width) best = c;
  }
  for (const auto& c : all) {
    if (((c.value ^ best.value) & low_mask(c.width)) != 0) {
      throw Error(ErrorCode::Inconsistent, "observations disagree on the shift");
    }
  }
  if (best.width < m) {
    throw Error(ErrorCode::Ambiguous, "window pins only " + std::to_string(best.width) + " bits, " +
                                          std::to_string(m) + " requested");
  }
  return best.value & low_mask(m);
}

std::uint64_t decode_position(std::span<const Bracket> window, std::int64_t x0, int m) {
  std::vector<BracketObservation> obs;
  obs.reserve(window.size());
  for (std::size_t j = 0; j < window.size(); ++j) {
    obs.push_back(BracketObservation{x0 + static_cast<std::int64_t>(j), window[j], false});
  }
  return decode_position(obs, m);
}

std::string render_by_rank(const Line1D& line, std::int64_t lo, std::int64_t hi, int max_rank) {
  if (hi < lo) return "";
  const auto width = static_cast<std::size_t>(2 * (hi - lo + 1));
  std::vector<std::string> rows(static_cast<std::size_t>(max_rank + 2), std::string(width, ' '));
  bool any_unranked = false;
  for (std::int64_t x = lo; x <= hi; ++x) {
    const Bracket b = bracket_at(x, line);
    std::size_t row;
    if (!b.rank.ranked()) {
      row = rows.size() - 1;
      any_unranked = true;
    } else if (b.rank.value() <= max_rank) {
      row = static_cast<std::size_t>(b.rank.value());
    } else {
      continue;
    }
    rows[row][static_cast<std::size_t>(2 * (x - lo))] = b.glyph();
  }
  if (!any_unranked) rows.pop_back();
  std::string out;
  for (auto& r : rows) {
    while (!r.empty() && r.back() == ' ') r.pop_back();
    out += r;
    out += '\n';
  }
  return out;
}

}  // namespace adictile
