#include "adictile/decode2d.hpp"

#include <bit>

#include "adictile/coords1d.hpp"
#include "adictile/error.hpp"
#include "adictile/palette.hpp"

namespace adictile {

namespace {

EdgeRef edge_on(Orientation o, std::int64_t line, std::int64_t along) {
  return o == Orientation::V ? EdgeRef{o, line, along} : EdgeRef{o, along, line};
}

// Rank of a line from the spacing of its pointer reversals, when two or more
// reversals are visible.
std::optional<int> rank_from_pointers(const Patch& p, Orientation o, std::int64_t line) {
  const Rect& r = p.rect();
  const std::int64_t lo = o == Orientation::V ? r.y0 : r.x0;
  const std::int64_t hi = o == Orientation::V ? r.y1 : r.x1;
  std::vector<std::int64_t> flips;
  for (std::int64_t a = lo + 1; a < hi; ++a) {
    const bool prev = p.code(edge_on(o, line, a - 1)) & 4u;
    const bool cur = p.code(edge_on(o, line, a)) & 4u;
    if (prev != cur) flips.push_back(a);
  }
  if (flips.size() < 2) return std::nullopt;
  const std::int64_t run = flips[1] - flips[0];
  for (std::size_t i = 2; i < flips.size(); ++i) {
    if (flips[i] - flips[i - 1] != run) throw Error(ErrorCode::Inconsistent, "uneven pointer runs on a line");
  }
  if (!std::has_single_bit(static_cast<std::uint64_t>(run))) {
    throw Error(ErrorCode::Inconsistent, "pointer run is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(run));
}

struct AxisDecode {
  std::uint64_t residue = 0;
  int width = 0;
};

AxisDecode decode_axis(const Patch& p, Orientation o, int required) {
  const Rect& r = p.rect();
  const std::int64_t lo = o == Orientation::V ? r.x0 : r.y0;
  const std::int64_t hi = o == Orientation::V ? r.x1 : r.y1;
  const std::int64_t along0 = o == Orientation::V ? r.y0 : r.x0;
  std::vector<BracketObservation> obs;
  int width = 0;
  for (std::int64_t line = lo + 1; line < hi; ++line) {
    const auto rank = rank_from_pointers(p, o, line);
    if (!rank) continue;
    const int bit = p.code(edge_on(o, line, along0)) & 1u;
    obs.push_back(BracketObservation{line, Bracket{bit, Rank(*rank)}, false});
    width = std::max(width, std::min(64, *rank + 2));
  }
  decode_position(obs, required);  // throws Ambiguous or Inconsistent
  return AxisDecode{decode_position(obs, width), width};
}

// Edges whose line has rank <= max_rank under the pose.
std::pair<std::int64_t, std::int64_t> compare_low_ranks(const Patch& p, const Pose& pose, int max_rank) {
  std::int64_t checked = 0, matched = 0;
  p.for_each_edge([&](const EdgeRef& e) {
    const Rank r = line_rank(e, pose);
    if (!r.ranked() || r.value() > max_rank) return;
    ++checked;
    if (encode(ce_color(e, pose, p.alphabet()), p.alphabet()) == p.code(e)) ++matched;
  });
  return {checked, matched};
}

bool reproduces(const Patch& p, const Pose& pose) {
  bool same = true;
  p.for_each_edge([&](const EdgeRef& e) {
    if (same && encode(ce_color(e, pose, p.alphabet()), p.alphabet()) != p.code(e)) same = false;
  });
  return same;
}

}  // namespace

int required_residue_width(std::int64_t side) {
  if (side < 8) return 0;
  return std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(side))) - 1 - 3);
}

PoseEstimate infer_pose(const Patch& p) {
  if (p.alphabet() == Alphabet::Bracket) throw Error(ErrorCode::BadInput, "pose inference needs ce colors");
  const std::int64_t side = std::min(p.rect().width(), p.rect().height());
  const int required = required_residue_width(side);
  if (required == 0) throw Error(ErrorCode::Ambiguous, "window side below 8");
  if (!verify(p, ce_palette_with_axes(p.alphabet())).ok()) {
    throw Error(ErrorCode::NotVerified, "patch is not locally consistent with ce");
  }

  PoseEstimate est;
  // The central cross occurs nowhere else.
  const PlusPalette& off = ce_palette(p.alphabet());
  const Rect& r = p.rect();
  for (std::int64_t y = r.y0 + 1; y < r.y1 && !est.origin_visible; ++y)
    for (std::int64_t x = r.x0 + 1; x < r.x1; ++x) {
      const Cross c = cross_at(p, x, y);
      if (off.contains(c)) continue;
      if ((c.c[0] & c.c[1] & c.c[2] & c.c[3] & 2u) == 0) continue;
      est.origin_visible = true;
      est.dx_mod = static_cast<std::uint64_t>(x);
      est.dy_mod = static_cast<std::uint64_t>(y);
      est.m_x = est.m_y = 64;
      break;
    }

  if (est.origin_visible) {
    for (const Sym& s : Sym::all()) {
      for (int d = 0; d < 4; ++d) {
        const Pose pose{Adic(est.dx_mod, 64), Adic(est.dy_mod, 64), s, d & 1, d >> 1};
        if (!reproduces(p, pose)) continue;
        est.sym_candidates.push_back(s);
        est.candidate_defaults.push_back({d & 1, d >> 1});
        break;
      }
    }
    if (est.sym_candidates.empty()) throw Error(ErrorCode::Inconsistent, "no pose reproduces the window");
    est.checked_edges = static_cast<std::int64_t>(p.edge_count());
    est.consistency = 1.0;
    return est;
  }

  const AxisDecode ax = decode_axis(p, Orientation::V, required);
  const AxisDecode ay = decode_axis(p, Orientation::H, required);
  est.dx_mod = ax.residue;
  est.dy_mod = ay.residue;
  est.m_x = ax.width;
  est.m_y = ay.width;
  const int max_rank = std::min(est.m_x, est.m_y) - 2;
  double best = 0.0;
  for (const Sym& s : Sym::all()) {
    const Pose pose{Adic(est.dx_mod, 64), Adic(est.dy_mod, 64), s, 0, 0};
    const auto [checked, matched] = compare_low_ranks(p, pose, max_rank);
    const double score = checked == 0 ? 0.0 : static_cast<double>(matched) / static_cast<double>(checked);
    if (checked > 0 && matched == checked) {
      if (est.sym_candidates.empty()) est.checked_edges = checked;
      est.sym_candidates.push_back(s);
    }
    best = std::max(best, score);
  }
  est.consistency = best;
  if (est.sym_candidates.empty()) throw Error(ErrorCode::Inconsistent, "no reflection reproduces the window");
  return est;
}

Pose estimate_pose(const PoseEstimate& est, std::size_t candidate) {
  if (candidate >= est.sym_candidates.size()) throw Error(ErrorCode::BadInput, "no such candidate");
  Pose pose{Adic(est.dx_mod, 64), Adic(est.dy_mod, 64), est.sym_candidates[candidate], 0, 0};
  if (candidate < est.candidate_defaults.size()) {
    pose.default_x = est.candidate_defaults[candidate][0];
    pose.default_y = est.candidate_defaults[candidate][1];
  }
  return pose;
}

std::vector<std::array<std::int64_t, 2>> aperiodicity_check(const Patch& p, std::int64_t max_period) {
  const Rect& r = p.rect();
  if (max_period < 0 || 2 * max_period > std::min(r.width(), r.height())) {
    throw Error(ErrorCode::BadInput, "max_period must be at most half the window side");
  }
  std::vector<std::array<std::int64_t, 2>> survivors;
  for (std::int64_t vy = -max_period; vy <= max_period; ++vy) {
    for (std::int64_t vx = -max_period; vx <= max_period; ++vx) {
      if (vx == 0 && vy == 0) continue;
      bool periodic = true;
      std::int64_t pairs = 0;
      p.for_each_edge([&](const EdgeRef& e) {
        if (!periodic) return;
        const EdgeRef f{e.orientation, e.x + vx, e.y + vy};
        if (!p.has(f)) return;
        ++pairs;
        if (p.code(e) != p.code(f)) periodic = false;
      });
      if (periodic && pairs > 0) survivors.push_back({vx, vy});
    }
  }
  return survivors;
}

bool ConvergenceReport::ranks_settle() const {
  for (const auto& s : steps)
    if (s.changed > 0 && s.min_changed_rank < s.m - 2) return false;
  return true;
}

ConvergenceReport convergence_check(const Adic& ax, const Adic& ay, const Rect& rect) {
  if (ax.precision() != ay.precision()) throw Error(ErrorCode::PrecisionMismatch, "shift precisions differ");
  const int n = ax.precision();
  ConvergenceReport rep;
  rep.ax = ax;
  rep.ay = ay;
  rep.rect = rect;
  Patch prev = generate(Pose{Adic::zero(n), Adic::zero(n), Sym::identity(), 0, 0}, rect);
  // A line can reach rank m at step m, and its bracket reads bit m+1.
  for (int m = 1; m <= n - 2; ++m) {
    const Pose pose{ax.truncated(m), ay.truncated(m), Sym::identity(), 0, 0};
    Patch cur = generate(pose, rect);
    ConvergenceStep step;
    step.m = m;
    cur.for_each_edge([&](const EdgeRef& e) {
      if (cur.code(e) == prev.code(e)) return;
      ++step.changed;
      const Rank r = line_rank(e, pose);
      const int rank = r.ranked() ? r.value() : 64;
      if (step.min_changed_rank < 0 || rank < step.min_changed_rank) step.min_changed_rank = rank;
    });
    if (step.changed > 0) rep.stable_from = -1;
    if (step.changed == 0 && rep.stable_from < 0) rep.stable_from = m - 1;
    rep.steps.push_back(step);
    prev = std::move(cur);
  }
  if (!rep.steps.empty() && rep.steps.back().changed > 0) rep.stable_from = -1;
  return rep;
}

}  // namespace adictile
