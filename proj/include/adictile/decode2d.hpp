#pragma once

// Recovering the pose of a ce window, periods, and convergence of
// truncated shifts.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "adictile/adic.hpp"
#include "adictile/edge.hpp"
#include "adictile/patch.hpp"
#include "adictile/tiling2d.hpp"

namespace adictile {

struct PoseEstimate {
  std::uint64_t dx_mod = 0;  // dx modulo 2^m_x
  std::uint64_t dy_mod = 0;
  int m_x = 0;
  int m_y = 0;
  // Reflections that reproduce the window from the residues. Away from the
  // axes all eight do.
  std::vector<Sym> sym_candidates;
  // Axis defaults per candidate; filled only when the central cross is in
  // the window.
  std::vector<std::array<int, 2>> candidate_defaults;
  bool origin_visible = false;
  std::int64_t checked_edges = 0;
  double consistency = 0.0;  // fraction of checked edges reproduced
};

// Residue width the estimate must reach for a window of this side.
int required_residue_width(std::int64_t side);

// Throws NotVerified, Ambiguous (window too small), Inconsistent.
PoseEstimate infer_pose(const Patch& p);

// Pose with the estimate's residues as shifts and the given candidate.
Pose estimate_pose(const PoseEstimate& est, std::size_t candidate = 0);

// Nonzero v with |v|_inf <= max_period such that every edge e with e+v in
// the window has the color of e+v, and at least one such pair exists.
std::vector<std::array<std::int64_t, 2>> aperiodicity_check(const Patch& p, std::int64_t max_period);

struct ConvergenceStep {
  int m = 0;
  std::int64_t changed = 0;
  // Smallest line rank (under the step's pose) among changed edges; -1 when
  // nothing changed, 64 when only unranked lines changed.
  int min_changed_rank = -1;
};

struct ConvergenceReport {
  Adic ax, ay;
  Rect rect;
  std::vector<ConvergenceStep> steps;  // m = 1..precision-2
  int stable_from = -1;                // first m after which nothing changes
  // Every change at step m sits on a line of rank >= m-2.
  bool ranks_settle() const;
};

ConvergenceReport convergence_check(const Adic& ax, const Adic& ay, const Rect& rect);

}  // namespace adictile
