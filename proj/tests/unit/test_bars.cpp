#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "adictile/bars.hpp"
#include "adictile/error.hpp"
#include "adictile/palette.hpp"
#include "adictile/tiling2d.hpp"

using namespace adictile;

namespace {

// Perfect matchings of Z_n into pairs of equal parity, by recursion.
std::int64_t brute_matchings(int n) {
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<std::int64_t()> rec = [&]() -> std::int64_t {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[static_cast<std::size_t>(i)]) {
        first = i;
        break;
      }
    if (first < 0) return 1;
    used[static_cast<std::size_t>(first)] = true;
    std::int64_t total = 0;
    for (int j = first + 1; j < n; ++j) {
      if (used[static_cast<std::size_t>(j)] || (j - first) % 2 != 0) continue;
      used[static_cast<std::size_t>(j)] = true;
      total += rec();
      used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
    return total;
  };
  return rec();
}

// Inward pointers at a vertex, read directly from the four arms.
int inward(const Patch& p, std::int64_t x, std::int64_t y) {
  int n = 0;
  n += p.color(EdgeRef{Orientation::V, x, y}).pointer < 0;
  n += p.color(EdgeRef{Orientation::V, x, y - 1}).pointer > 0;
  n += p.color(EdgeRef{Orientation::H, x, y}).pointer < 0;
  n += p.color(EdgeRef{Orientation::H, x - 1, y}).pointer > 0;
  return n;
}

}  // namespace

TEST_CASE("bar facts on a large window") {
  const Patch p = generate(Pose::identity(), Rect{8, 8, 264, 264});
  const BarStats s = bar_histogram(p);
  CHECK(s.count(true, 3) == 0);
  CHECK(s.count(true, 1) == 0);
  CHECK(s.count(false, 1) == 0);
  CHECK(s.count(true, 2) > 0);
  CHECK(std::abs(s.mean_untruncated_length(true) - 3.0) <= 0.2);
  CHECK(std::abs(s.mean_untruncated_length(false) - 3.0) <= 0.2);

  std::array<std::int64_t, 2> total{};
  for (const auto& [key, n] : s.histogram) total[key.first ? 1 : 0] += key.second * n;
  CHECK(total[0] + s.truncated_edges[0] == s.edges[0]);
  CHECK(total[1] + s.truncated_edges[1] == s.edges[1]);

  std::int64_t edges = 0;
  p.for_each_edge([&](const EdgeRef&) { ++edges; });
  CHECK(s.edges[0] + s.edges[1] == edges);
}

TEST_CASE("bars of a short line") {
  const Patch p = generate(Pose::identity(), Rect{0, 0, 2, 12});
  const auto bars = bars_of(p);
  std::int64_t covered = 0;
  for (const Bar& b : bars) {
    if (b.orientation == Orientation::H) {
      CHECK(b.length <= 2);
      continue;
    }
    CHECK(b.line == 1);
    covered += b.length;
    CHECK(b.truncated == (b.start == 0 || b.start + b.length == 12));
  }
  CHECK(covered == 12);
}

TEST_CASE("bends and passes") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 10; ++t) {
    const Pose pose{Adic(rng(), 64), Adic(rng(), 64), Sym::from_index(static_cast<int>(rng() % 8)), 0, 0};
    const Patch p = generate(pose, Rect{0, 0, 40, 40});
    for (std::int64_t y = 1; y < 40; ++y)
      for (std::int64_t x = 1; x < 40; ++x) {
        const int n = inward(p, x, y);
        const CrossKind k = cross_kind(p, x, y);
        CHECK(k == (n == 4 ? CrossKind::Bend : n == 1 ? CrossKind::Pass : CrossKind::Other));
        CHECK(k != CrossKind::Other);
      }
  }
}

TEST_CASE("a third of crosses are bends") {
  for (const std::int64_t n : {32, 64, 128, 256}) {
    const CrossStats s = classify_crosses(generate(Pose::identity(), Rect{8, 8, 8 + n, 8 + n}));
    CHECK(s.other == 0);
    CHECK(std::abs(s.bend_fraction() - 1.0 / 3.0) <= 8.0 / static_cast<double>(n));
    const auto [lo, hi] = std::minmax_element(s.bend_orientations.begin(), s.bend_orientations.end());
    CHECK(*hi - *lo <= 2 * n);
    CHECK(s.alternation_violations == 0);
  }
  const CrossStats one = classify_crosses(generate(Pose::identity(), Rect{4, 4, 6, 6}));
  CHECK(one.vertices == 1);
  CHECK((one.bend_fraction() == 0.0 || one.bend_fraction() == 1.0));
}

TEST_CASE("the 6-torus admits no bar coloring") {
  const TorusResult r = torus_impossibility();
  CHECK(r.solutions == 0);
  CHECK_FALSE(r.capped);
  CHECK(r.impossible());
  CHECK(r.nodes > 0);
  CHECK(torus_search(r.config).nodes == r.nodes);
}

TEST_CASE("relaxed torus controls have solutions") {
  const TorusResult c = torus_control();
  CHECK(c.solutions > 0);
  TorusConfig bold_only;
  bold_only.projection = TorusProjection::Bold;
  CHECK(torus_search(bold_only).solutions > 0);
}

TEST_CASE("equal-parity pairings of Z_n") {
  for (int n = 2; n <= 12; n += 2) CHECK(parity_matchings(n) == brute_matchings(n));
  CHECK(parity_matchings(6) == 0);
  CHECK(parity_matchings(8) == 9);
}

TEST_CASE("two-bar neighborhood") {
  std::vector<Patch> patches;
  for (const auto& [sx, sy] : {std::pair{0, 0}, std::pair{3, 5}, std::pair{-11, 7}})
    patches.push_back(generate(Pose::shifted(400 + sx, 400 + sy), Rect{0, 0, 96, 96}));
  const auto calibrated = calibrate_two_bar_neighborhood(patches);
  for (const BarOffset& o : two_bar_neighborhood())
    CHECK(std::find(calibrated.begin(), calibrated.end(), o) != calibrated.end());

  const Patch p = generate(Pose::identity(), Rect{8, 8, 264, 264});
  std::int64_t checked = 0, margin = 0;
  const Bar* sample = nullptr;
  const auto bars = bars_of(p);
  for (const Bar& b : bars) {
    if (!b.bold || b.length != 2 || b.truncated) continue;
    bool ok = false;
    try {
      ok = two_bar_neighborhood_ok(p, b).ok;
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::MarginTooSmall);
      ++margin;
      continue;
    }
    CHECK(ok);
    ++checked;
    if (!sample && b.orientation == Orientation::V) sample = &b;
  }
  CHECK(checked > 1000);
  CHECK(margin > 0);

  REQUIRE(sample);
  Patch q = p;
  const EdgeRef e{Orientation::V, sample->line + 2, sample->start};
  q.set_code(e, q.code(e) ^ 2u);
  const NeighborhoodResult r = two_bar_neighborhood_ok(q, *sample);
  CHECK_FALSE(r.ok);
  REQUIRE(r.missing);
  CHECK(r.missing->across == 2);

  Bar fake = *sample;
  fake.start += 1;
  CHECK_THROWS_AS(two_bar_neighborhood_ok(p, fake), Error);
}
