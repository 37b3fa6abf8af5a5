#include <doctest.h>

#include <algorithm>
#include <random>

#include "adictile/decode2d.hpp"
#include "adictile/error.hpp"
#include "adictile/palette.hpp"

using namespace adictile;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadInput;
}

bool has_sym(const PoseEstimate& e, Sym s) {
  return std::find(e.sym_candidates.begin(), e.sym_candidates.end(), s) != e.sym_candidates.end();
}

}  // namespace

TEST_CASE("residues of a shifted window") {
  const Pose pose = Pose::shifted(5, -3);
  const PoseEstimate e = infer_pose(generate(pose, Rect{0, 0, 64, 64}));
  CHECK(e.m_x >= 4);
  CHECK(e.m_y >= 4);
  CHECK(e.dx_mod % 16 == 5);
  CHECK(e.dy_mod % 16 == 13);
  CHECK(has_sym(e, Sym::identity()));
  CHECK(e.consistency == 1.0);
  CHECK_FALSE(e.origin_visible);
}

TEST_CASE("unshifted window has zero residues") {
  const PoseEstimate e = infer_pose(generate(Pose::identity(), Rect{1, 1, 65, 65}));
  CHECK(e.dx_mod == 0);
  CHECK(e.dy_mod == 0);
}

TEST_CASE("bad windows") {
  CHECK(code_of([] { infer_pose(generate(Pose::identity(), Rect{1, 1, 5, 5})); }) == ErrorCode::Ambiguous);
  CHECK(code_of([] { infer_pose(generate(Pose::identity(), Rect{1, 1, 65, 65}, Alphabet::Bracket)); }) ==
        ErrorCode::BadInput);
  Patch p = generate(Pose::identity(), Rect{1, 1, 65, 65});
  const EdgeRef e{Orientation::V, 20, 20};
  p.set_code(e, p.code(e) ^ 2u);
  CHECK(code_of([&] { infer_pose(p); }) == ErrorCode::NotVerified);
  CHECK(required_residue_width(7) == 0);
  CHECK(required_residue_width(64) == 3);
  CHECK(required_residue_width(1024) == 7);
}

TEST_CASE("random poses round-trip") {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 100; ++t) {
    const Pose pose{Adic(rng(), 64), Adic(rng(), 64), Sym::from_index(static_cast<int>(rng() % 8)), 0, 0};
    const std::int64_t side = 16 << (rng() % 3);
    const Rect r{0, 0, side, side};
    const Patch p = generate(pose, r);
    const PoseEstimate e = infer_pose(p);
    const int m = required_residue_width(side);
    CHECK(e.m_x >= m);
    CHECK(e.m_y >= m);
    // The window sees the tiling moved by sym(p) + t; residues are of t.
    CHECK(e.dx_mod % (1u << m) == pose.dx.residue(m));
    CHECK(e.dy_mod % (1u << m) == pose.dy.residue(m));
    CHECK(has_sym(e, pose.sym));
    // Reproduction on the checked ranks for every candidate.
    for (std::size_t c = 0; c < e.sym_candidates.size(); ++c) {
      const Pose q = estimate_pose(e, c);
      p.for_each_edge([&](const EdgeRef& x) {
        const Rank rk = line_rank(x, q);
        if (rk.ranked() && rk.value() <= std::min(e.m_x, e.m_y) - 2) CHECK(p.color(x) == ce_color(x, q));
      });
    }
  }
}

TEST_CASE("windows with the origin pin the pose exactly") {
  for (const Sym s : Sym::all()) {
    Pose pose = Pose::shifted(3, -7, s);
    pose.default_x = 1;
    const Rect r{-20, -20, 20, 20};
    const Patch p = generate(pose, r);
    const PoseEstimate e = infer_pose(p);
    CHECK(e.origin_visible);
    CHECK(e.dx_mod == 3);
    CHECK(e.dy_mod == Adic::from_int(-7).bits());
    REQUIRE(e.candidate_defaults.size() == e.sym_candidates.size());
    CHECK(has_sym(e, s));
    for (std::size_t c = 0; c < e.sym_candidates.size(); ++c) CHECK(generate(estimate_pose(e, c), r) == p);
  }
}

TEST_CASE("distinct residues give distinct windows") {
  std::mt19937_64 rng(52);
  for (int t = 0; t < 200; ++t) {
    const std::int64_t side = 16 << (rng() % 2);
    const int m = required_residue_width(side);
    const Pose a{Adic(rng(), 64), Adic(rng(), 64), Sym::identity(), 0, 0};
    Pose b = a;
    b.dx = b.dx + Adic(1 + rng() % ((1u << m) - 1), 64);
    const Rect r{0, 0, side, side};
    CHECK_FALSE(generate(a, r) == generate(b, r));
  }
}

TEST_CASE("no periods in CE") {
  CHECK(aperiodicity_check(generate(Pose::identity(), Rect{1, 1, 129, 129}), 32).empty());
  CHECK(aperiodicity_check(generate(Pose::shifted(77, 3), Rect{0, 0, 64, 64}, Alphabet::Parity), 16).empty());
  Patch flat(Rect{0, 0, 16, 16}, Alphabet::Base);
  CHECK(aperiodicity_check(flat, 4).size() == 80);
  CHECK_THROWS_AS(aperiodicity_check(flat, 9), Error);
}

TEST_CASE("truncated shifts converge") {
  const ConvergenceReport a = convergence_check(Adic::from_int(-1), Adic::zero(), Rect{-16, -16, 16, 16});
  CHECK(a.ranks_settle());
  CHECK(a.steps.size() == 62);
  for (const auto& s : a.steps)
    if (s.changed > 0) CHECK(s.min_changed_rank >= s.m - 2);
  CHECK(a.steps[3].changed > 0);

  const ConvergenceReport b = convergence_check(Adic::from_int(37), Adic::from_int(5), Rect{-16, -16, 16, 16});
  CHECK(b.stable_from == 6);
  CHECK(b.ranks_settle());
}
