#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "../oracles.hpp"
#include "adictile/coords1d.hpp"
#include "adictile/error.hpp"
#include "adictile/tiling2d.hpp"

using namespace adictile;

namespace {

void check_against_word(const EdgeRef& e, const Pose& pose, std::int64_t sx, std::int64_t sy) {
  const std::int64_t line = (e.orientation == Orientation::V ? e.x - sx : e.y - sy);
  const std::int64_t along = (e.orientation == Orientation::V ? e.y - sy : e.x - sx);
  const oracle::Word w = oracle::ce_word(line, along);
  const EdgeColor c = ce_color(e, pose);
  CHECK(c.bracket == w.bracket);
  CHECK(c.bold == w.bold);
  CHECK(c.pointer == w.pointer);
}

}  // namespace

TEST_CASE("ce colors of a few edges") {
  const Pose id = Pose::identity();
  CHECK(ce_color(EdgeRef{Orientation::V, 1, 1}, id).bold == 1);
  CHECK(ce_color(EdgeRef{Orientation::V, 1, 3}, id).bold == 0);
  CHECK(ce_color(EdgeRef{Orientation::V, 2, 0}, id).pointer == +1);
}

TEST_CASE("ce colors match the word definitions") {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 20000) {
    const std::int64_t sx = static_cast<std::int64_t>(rng() % 4001) - 2000;
    const std::int64_t sy = static_cast<std::int64_t>(rng() % 4001) - 2000;
    const EdgeRef e{rng() & 1 ? Orientation::V : Orientation::H, static_cast<std::int64_t>(rng() % 200001) - 100000,
                    static_cast<std::int64_t>(rng() % 200001) - 100000};
    if ((e.orientation == Orientation::V ? e.x - sx : e.y - sy) == 0) continue;
    check_against_word(e, Pose::shifted(sx, sy), sx, sy);
    ++tested;
  }
}

TEST_CASE("generated window around one vertex") {
  const Patch p = generate(Pose::identity(), Rect{1, 1, 3, 3});
  CHECK(p.edge_count() == 4);
  for (const EdgeRef e : {EdgeRef{Orientation::V, 2, 1}, EdgeRef{Orientation::V, 2, 2}, EdgeRef{Orientation::H, 1, 2},
                          EdgeRef{Orientation::H, 2, 2}}) {
    REQUIRE(p.has(e));
    const oracle::Word w = oracle::ce_word(e.line(), e.along());
    CHECK(p.color(e) == EdgeColor{static_cast<std::uint8_t>(w.bracket), static_cast<std::uint8_t>(w.bold),
                                  static_cast<std::int8_t>(w.pointer)});
  }
}

TEST_CASE("a strip one tile wide holds only crossing edges") {
  const Patch p = generate(Pose::identity(), Rect{3, 0, 4, 6});
  CHECK(p.v_codes().empty());
  CHECK(p.h_codes().size() == 5);
}

TEST_CASE("integer shifts translate the tiling") {
  const Rect r{-20, -20, 20, 20};
  for (const auto& [sx, sy] : {std::pair{2, 0}, std::pair{-7, 13}, std::pair{64, -5}}) {
    const Pose pose = Pose::shifted(sx, sy);
    const Patch p = generate(pose, r);
    p.for_each_edge([&](const EdgeRef& e) {
      const EdgeRef src{e.orientation, e.x - sx, e.y - sy};
      if (on_axis(src, Pose::identity())) return;
      CHECK(p.code(e) == encode(ce_color(src, Pose::identity()), Alphabet::Base));
    });
  }
}

TEST_CASE("reflections commute with generation") {
  std::mt19937_64 rng(12);
  const Rect r{-8, -5, 8, 11};
  for (const Sym s : Sym::all()) {
    for (int t = 0; t < 4; ++t) {
      Pose pose{Adic(rng(), 64), Adic(rng(), 64), Sym::from_index(static_cast<int>(rng() % 8)),
                static_cast<int>(rng() & 1), static_cast<int>(rng() & 1)};
      if (t == 0) pose = Pose::identity();
      const Patch a = apply_symmetry(generate(pose, r), s);
      const Patch b = generate(s * pose, r.image(s));
      CHECK(a == b);
    }
  }
}

TEST_CASE("color equivariance on sampled edges") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 10000; ++t) {
    const Pose pose{Adic(rng(), 64), Adic(rng(), 64), Sym::from_index(static_cast<int>(rng() % 8)),
                    static_cast<int>(rng() & 1), static_cast<int>(rng() & 1)};
    const Sym s = Sym::from_index(static_cast<int>(rng() % 8));
    const EdgeRef e{rng() & 1 ? Orientation::V : Orientation::H, static_cast<std::int64_t>(rng() % 2001) - 1000,
                    static_cast<std::int64_t>(rng() % 2001) - 1000};
    CHECK(ce_color(s.apply(e), s * pose) == s.act(ce_color(e, pose), e.orientation));
  }
}

TEST_CASE("symmetry action is a group action on patches") {
  const Patch p = generate(Pose::shifted(3, -2), Rect{-6, -6, 10, 10});
  CHECK(apply_symmetry(p, Sym::identity()) == p);
  const Sym x = Sym::from_name("x");
  CHECK(apply_symmetry(apply_symmetry(p, x), x) == p);
  for (const Sym a : Sym::all())
    for (const Sym b : Sym::all()) CHECK(apply_symmetry(apply_symmetry(p, b), a) == apply_symmetry(p, a * b));
}

TEST_CASE("projection keeps brackets") {
  const Rect r{-10, -10, 30, 30};
  const Patch p = generate(Pose::identity(), r);
  const Patch f = project(p);
  CHECK(f.alphabet() == Alphabet::Bracket);
  CHECK(f.rect() == r);
  CHECK(project(f) == f);
  const Line1D id = Line1D::identity();
  f.for_each_edge([&](const EdgeRef& e) { CHECK(f.code(e) == bracket_at(e.line(), id).bit); });
}

TEST_CASE("eight colors in the bulk") {
  const Patch p = generate(Pose::identity(), Rect{1, 1, 257, 257});
  std::set<std::uint8_t> colors;
  p.for_each_edge([&](const EdgeRef& e) { colors.insert(p.code(e)); });
  CHECK(colors.size() == 8);
}

TEST_CASE("bold runs on a rank-k line have length 2^(k+1)") {
  const Pose id = Pose::identity();
  for (std::int64_t x = 1; x <= 40; ++x) {
    const int k = oracle::rank(x);
    std::int64_t run = 0;
    std::vector<std::int64_t> runs;
    for (std::int64_t y = 1; y < 2000; ++y) {
      if (ce_color(EdgeRef{Orientation::V, x, y}, id).bold) {
        ++run;
      } else if (run > 0) {
        runs.push_back(run);
        run = 0;
      }
    }
    for (std::size_t i = 1; i < runs.size(); ++i) CHECK(runs[i] == (std::int64_t{2} << k));
  }
}

TEST_CASE("truncated shifts fix low-rank edges") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    const Adic ax(rng(), 64), ay(rng(), 64);
    const int m = 3 + static_cast<int>(rng() % 10);
    const Pose full{ax, ay, Sym::identity(), 0, 0};
    const Pose cut{ax.truncated(m), ay.truncated(m), Sym::identity(), 0, 0};
    const Rect r{-20, -20, 20, 20};
    const Patch a = generate(full, r), b = generate(cut, r);
    a.for_each_edge([&](const EdgeRef& e) {
      const Rank rk = line_rank(e, cut);
      if (rk.ranked() && rk.value() < m - 2) CHECK(a.code(e) == b.code(e));
    });
  }
}

TEST_CASE("axis defaults") {
  Pose pose = Pose::identity();
  pose.default_x = 1;
  const EdgeColor c = ce_color(EdgeRef{Orientation::V, 0, 5}, pose);
  CHECK(c.bracket == 1);
  CHECK(c.bold == 1);
  CHECK(c.pointer == -1);
  CHECK(ce_color(EdgeRef{Orientation::V, 0, -5}, pose).pointer == +1);
}

TEST_CASE("parity extension") {
  const Pose id = Pose::identity();
  const EdgeColor odd = ce_color(EdgeRef{Orientation::V, 3, 4}, id, Alphabet::Parity);
  CHECK(odd.has_parity);
  CHECK(odd.odd == 1);
  CHECK(odd.parity_pointer == 0);
  const EdgeColor even = ce_color(EdgeRef{Orientation::V, 2, 4}, id, Alphabet::Parity);
  CHECK(even.odd == 0);
  CHECK(even.parity_pointer == +1);
  CHECK(ce_color(EdgeRef{Orientation::V, 2, 5}, id, Alphabet::Parity).parity_pointer == -1);
}

TEST_CASE("patch files round-trip") {
  for (const Alphabet a : {Alphabet::Bracket, Alphabet::Base, Alphabet::Parity}) {
    const Patch p = generate(Pose::shifted(5, -3, Sym::from_name("d")), Rect{-3, 2, 9, 7}, a);
    std::stringstream s;
    write_patch(s, p);
    CHECK(s.str().rfind("TILEPATCH v1 -3 2 9 7 ", 0) == 0);
    CHECK(read_patch(s) == p);
  }
  std::stringstream bad("TILEPATCH v2 0 0 1 1 base\n");
  CHECK_THROWS_AS(read_patch(bad), Error);
}

TEST_CASE("rendering") {
  CHECK(render(Patch(Rect{0, 0, 0, 0}, Alphabet::Base), RenderFormat::Ascii).empty());
  const std::string row = render(generate(Pose::identity(), Rect{0, 0, 9, 1}, Alphabet::Bracket), RenderFormat::Ascii);
  std::string glyphs;
  for (const char c : row)
    if (c != ' ' && c != '\n') glyphs += c;
  CHECK(glyphs == "{[}{{]}[");

  const Patch p = generate(Pose::identity(), Rect{0, 0, 16, 16});
  const std::string a = render(p, RenderFormat::Svg), b = render(p, RenderFormat::Svg);
  CHECK(a == b);
  CHECK(a.find("stroke-width=\"3\"") != std::string::npos);
  CHECK(a.find("stroke-width=\"1\"") != std::string::npos);
  CHECK(a.find("<polygon") != std::string::npos);
  CHECK_THROWS_AS(render(generate(Pose::identity(), Rect{0, 0, 64, 64}), RenderFormat::Svg, 100), Error);
}
