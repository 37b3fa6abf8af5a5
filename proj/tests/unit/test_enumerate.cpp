#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <map>
#include <mutex>
#include <set>

#include "../oracles.hpp"
#include "adictile/enumerate.hpp"
#include "adictile/error.hpp"
#include "adictile/tiling2d.hpp"

using namespace adictile;

namespace {

SearchConfig box(int w, int h, Alphabet a = Alphabet::Base) {
  SearchConfig cfg;
  cfg.width = w;
  cfg.height = h;
  cfg.alphabet = a;
  return cfg;
}

std::vector<std::uint8_t> codes(const Patch& p) {
  std::vector<std::uint8_t> out = p.v_codes();
  out.insert(out.end(), p.h_codes().begin(), p.h_codes().end());
  return out;
}

// Least code vector over the orbit of a square box, moved back to the origin.
std::vector<std::uint8_t> orbit_key(const Patch& p) {
  std::vector<std::uint8_t> best;
  for (const Sym s : Sym::all()) {
    const Patch q = apply_symmetry(p, s);
    Patch moved(Rect{0, 0, q.rect().width(), q.rect().height()}, q.alphabet());
    q.for_each_edge([&](const EdgeRef& e) {
      moved.set_code(EdgeRef{e.orientation, e.x - q.rect().x0, e.y - q.rect().y0}, q.code(e));
    });
    const auto c = codes(moved);
    if (best.empty() || c < best) best = c;
  }
  return best;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / (std::string("adictile_") + name)).string();
}

}  // namespace

TEST_CASE("counts agree with generate-and-test") {
  CHECK(enumerate_boxes(ce_palette(), box(2, 2)).count == oracle::naive_box_count(ce_palette(), 2, 2));
  CHECK(enumerate_boxes(ce_palette(), box(2, 3)).count == oracle::naive_box_count(ce_palette(), 2, 3));
  CHECK(enumerate_boxes(ce_palette(), box(3, 2)).count == oracle::naive_box_count(ce_palette(), 3, 2));
  const PlusPalette& par = ce_palette(Alphabet::Parity);
  CHECK(enumerate_boxes(par, box(2, 2, Alphabet::Parity)).count == oracle::naive_box_count(par, 2, 2));
}

TEST_CASE("known box counts") {
  CHECK(enumerate_boxes(ce_palette(), box(2, 2)).count == 52);
  CHECK(enumerate_boxes(ce_palette(), box(2, 3)).count == 288);
  CHECK(enumerate_boxes(ce_palette(), box(3, 3)).count == 926);
  CHECK(enumerate_boxes(ce_palette(), box(4, 4)).count == 6600);
  CHECK(enumerate_boxes(ce_palette(Alphabet::Parity), box(3, 3, Alphabet::Parity)).count == 512);
}

TEST_CASE("empty palette") {
  const PlusPalette empty(Alphabet::Base);
  for (int n = 2; n <= 4; ++n) CHECK(enumerate_boxes(empty, box(n, n)).count == 0);
  CHECK_THROWS_AS(enumerate_boxes(ce_palette(), box(1, 3)), Error);
}

TEST_CASE("every visited box verifies and is visited once") {
  std::set<std::vector<std::uint8_t>> seen;
  std::int64_t dup = 0;
  const SearchOutcome o = enumerate_boxes(ce_palette(), box(3, 4), [&](const Patch& p) {
    CHECK(verify(p, ce_palette()).ok());
    if (!seen.insert(codes(p)).second) ++dup;
    return true;
  });
  CHECK(o.exhausted);
  CHECK(dup == 0);
  CHECK(seen.size() == o.count);
}

TEST_CASE("single-thread visit order is deterministic") {
  std::vector<std::vector<std::uint8_t>> a, b;
  enumerate_boxes(ce_palette(), box(3, 3), [&](const Patch& p) {
    a.push_back(codes(p));
    return true;
  });
  enumerate_boxes(ce_palette(), box(3, 3), [&](const Patch& p) {
    b.push_back(codes(p));
    return true;
  });
  CHECK(a == b);
}

TEST_CASE("thread count does not change results") {
  for (const int n : {3, 4, 5}) {
    SearchConfig one = box(n, n), many = box(n, n);
    many.threads = 4;
    const auto a = enumerate_boxes(ce_palette(), one), b = enumerate_boxes(ce_palette(), many);
    CHECK(a.count == b.count);
    CHECK(a.nodes == b.nodes);
  }
  RunOptions one, many;
  many.threads = 3;
  const auto a = check_no_skipped_colors(4, Alphabet::Base, one);
  const auto b = check_no_skipped_colors(4, Alphabet::Base, many);
  CHECK(a.count == b.count);
  CHECK(a.violations == b.violations);
}

TEST_CASE("symmetry reduction counts orbits") {
  for (const int n : {2, 3}) {
    std::set<std::vector<std::uint8_t>> orbits;
    enumerate_boxes(ce_palette(), box(n, n), [&](const Patch& p) {
      orbits.insert(orbit_key(p));
      return true;
    });
    SearchConfig cfg = box(n, n);
    cfg.symmetry_reduction = true;
    CHECK(enumerate_boxes(ce_palette(), cfg).count == orbits.size());
  }
}

TEST_CASE("pins restrict edges") {
  const EdgeRef e{Orientation::V, 1, 1};
  for (std::uint8_t c = 0; c < 8; ++c) {
    std::uint64_t expect = 0;
    enumerate_boxes(ce_palette(), box(3, 3), [&](const Patch& p) {
      expect += p.code(e) == c;
      return true;
    });
    SearchConfig cfg = box(3, 3);
    cfg.pins.push_back(EdgePin{e, 1u << c});
    CHECK(enumerate_boxes(ce_palette(), cfg).count == expect);
  }
  const EdgePin bold = pin_bits(e, Alphabet::Base, 2, 2);
  for (std::uint8_t c = 0; c < 8; ++c) CHECK(((bold.allowed >> c) & 1u) == ((c & 2u) != 0));
}

TEST_CASE("budgets") {
  SearchConfig cfg = box(4, 4);
  cfg.max_count = 100;
  const auto o = enumerate_boxes(ce_palette(), cfg);
  CHECK_FALSE(o.exhausted);
  CHECK(o.count >= 100);
  cfg.max_count = 0;
  cfg.max_nodes = 50;
  CHECK_FALSE(enumerate_boxes(ce_palette(), cfg).exhausted);
}

TEST_CASE("checkpoint resume gives the same counts") {
  const std::string path = temp_path("resume.ck");
  std::remove(path.c_str());
  const SearchOutcome straight = levitsky_check(6);

  RunOptions opt;
  opt.checkpoint_path = path;
  opt.max_shards = straight.shards_total / 3;
  const SearchOutcome part = levitsky_check(6, opt);
  CHECK_FALSE(part.exhausted);
  CHECK(part.shards_done == opt.max_shards);

  opt.max_shards = 0;
  opt.threads = 2;
  const SearchOutcome rest = levitsky_check(6, opt);
  CHECK(rest.exhausted);
  CHECK(rest.shards_resumed == part.shards_done);
  CHECK(rest.count == straight.count);
  CHECK(rest.violations == straight.violations);

  // A checkpoint of another search is refused.
  CHECK_THROWS_AS(check_no_skipped_colors(4, Alphabet::Base, opt), Error);
  std::remove(path.c_str());
}

TEST_CASE("progress reports cover every shard") {
  std::mutex mu;
  std::set<std::uint64_t> shards;
  RunOptions opt;
  opt.threads = 2;
  opt.on_progress = [&](const ShardProgress& p) {
    std::lock_guard lock(mu);
    shards.insert(p.shard);
  };
  const SearchOutcome o = check_no_bold_three_bar(5, opt);
  CHECK(shards.size() == o.shards_total);
}

TEST_CASE("property checks at small sizes") {
  const SearchOutcome colors2 = check_no_skipped_colors(2);
  CHECK(colors2.exhausted);
  CHECK(colors2.violations > 0);
  CHECK_FALSE(colors2.witnesses.empty());
  CHECK(check_no_skipped_colors(6).violations == 0);

  const SearchOutcome bold3 = check_no_bold_three_bar(5);
  CHECK(bold3.exhausted);
  CHECK(bold3.violations == 0);

  const SearchOutcome parity = check_parity_enforcement(6);
  CHECK(parity.exhausted);
  CHECK(parity.violations == 0);

  const SearchOutcome lemma2 = check_one_tiled_is_two_tiled(8);
  CHECK(lemma2.exhausted);
  CHECK(lemma2.violations == 0);

  CHECK(palette_colors(ce_palette()).size() == 8);
  CHECK(palette_colors(ce_palette(Alphabet::Parity)).size() == 24);
}

TEST_CASE("levitsky at the smallest radius") {
  const SearchOutcome a = levitsky_check(6);
  CHECK(a.exhausted);
  CHECK(a.count > 0);
  RunOptions opt;
  opt.threads = 4;
  const SearchOutcome b = levitsky_check(6, opt);
  CHECK(a.count == b.count);
  CHECK(a.violations == b.violations);
  CHECK_THROWS_AS(levitsky_check(5), Error);
}
