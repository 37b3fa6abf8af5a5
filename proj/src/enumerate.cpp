#include "adictile/enumerate.hpp"

#include <array>
#include <atomic>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "adictile/bars.hpp"
#include "adictile/blocks.hpp"
#include "adictile/error.hpp"

namespace adictile {

namespace {

using Clock = std::chrono::steady_clock;

constexpr char kMagic[8] = {'T', 'L', 'S', 'H', 'A', 'R', 'D', '1'};
constexpr std::uint32_t kCheckpointVersion = 1;

struct Position {
  int n, e, s, w;  // edge slots
  bool known_s, known_w;
  int right_s = -1;  // slot south of the right neighbor, or -1
  bool has_right = false, has_up = false;
};

struct ShardResult {
  std::uint64_t count = 0, violations = 0, nodes = 0, propagations = 0;
  std::vector<Patch> witnesses;
  bool done = false;
};

class Fnv {
 public:
  void add(const void* data, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h_ ^= b[i];
      h_ *= 1099511628211ull;
    }
  }
  template <typename T>
  void add(const T& v) {
    add(&v, sizeof v);
  }
  std::uint64_t value() const { return h_; }

 private:
  std::uint64_t h_ = 1469598103934665603ull;
};

class Engine {
 public:
  Engine(const PlusPalette& pp, const SearchConfig& cfg, const Visitor& visitor)
      : cfg_(cfg), visitor_(visitor), w_(cfg.width), h_(cfg.height) {
    if (w_ < 2 || h_ < 2) throw Error(ErrorCode::BadInput, "boxes must be at least 2x2");
    if (pp.alphabet() != cfg.alphabet) throw Error(ErrorCode::BadInput, "palette and search alphabets differ");
    if (cfg.symmetry_reduction && !cfg.pins.empty()) {
      throw Error(ErrorCode::BadInput, "symmetry reduction needs an open box");
    }
    nv_ = (w_ - 1) * h_;
    nh_ = w_ * (h_ - 1);
    positions_ = (w_ - 1) * (h_ - 1);
    build_tables(pp);
    build_positions();
    build_pins();
    if (cfg.symmetry_reduction) build_symmetries();
  }

  SearchOutcome run();

 private:
  int v_slot(std::int64_t x, std::int64_t y) const { return static_cast<int>(y * (w_ - 1) + (x - 1)); }
  int h_slot(std::int64_t x, std::int64_t y) const { return nv_ + static_cast<int>((y - 1) * w_ + x); }
  int slot_of(const EdgeRef& e) const {
    return e.orientation == Orientation::V ? v_slot(e.x, e.y) : h_slot(e.x, e.y);
  }

  void build_tables(const PlusPalette& pp);
  void build_positions();
  void build_pins();
  void build_symmetries();
  std::uint64_t fingerprint() const;

  struct Worker {
    std::vector<std::uint8_t> codes;
    std::vector<std::uint16_t> prefix;
    ShardResult* result = nullptr;
    std::uint64_t unflushed = 0;
    bool collect = false;
    int collect_depth = 0;
    std::vector<std::vector<std::uint16_t>>* sink = nullptr;
  };

  const std::vector<std::uint16_t>& candidates(const Worker& wk, const Position& p) const {
    if (p.known_s && p.known_w) return by_sw_[wk.codes[p.s] * 32u + wk.codes[p.w]];
    if (p.known_s) return by_s_[wk.codes[p.s]];
    if (p.known_w) return by_w_[wk.codes[p.w]];
    return all_;
  }
  bool admissible(const Worker& wk, const Position& p, const std::array<std::uint8_t, 4>& c,
                  std::uint64_t& props) const;
  void assign(Worker& wk, const Position& p, const std::array<std::uint8_t, 4>& c) const {
    wk.codes[p.n] = c[0];
    wk.codes[p.e] = c[1];
    if (!p.known_s) wk.codes[p.s] = c[2];
    if (!p.known_w) wk.codes[p.w] = c[3];
  }
  void search(Worker& wk, int t);
  void leaf(Worker& wk);
  bool canonical(const std::vector<std::uint8_t>& codes) const;
  bool flush(Worker& wk);

  void load_checkpoint(std::vector<ShardResult>& results, std::uint64_t& resumed) const;
  void save_checkpoint(const std::vector<ShardResult>& results) const;

  const SearchConfig& cfg_;
  const Visitor& visitor_;
  int w_, h_;
  int nv_ = 0, nh_ = 0, positions_ = 0;
  std::vector<std::array<std::uint8_t, 4>> crosses_;
  std::vector<std::uint32_t> keys_;
  std::vector<std::vector<std::uint16_t>> by_sw_, by_s_, by_w_;
  std::vector<std::uint16_t> all_;
  std::vector<std::uint8_t> has_sw_, has_s_, has_w_;
  std::vector<Position> pos_;
  std::vector<std::uint32_t> allowed_;
  // Per non-identity symmetry: source slot of each target slot, and the
  // color action per source orientation.
  std::vector<std::vector<int>> sym_src_;
  std::vector<std::array<std::array<std::uint8_t, 32>, 2>> sym_act_;

  std::atomic<bool> stop_{false};
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<std::uint64_t> leaves_{0};
};

void Engine::build_tables(const PlusPalette& pp) {
  by_sw_.assign(1024, {});
  by_s_.assign(32, {});
  by_w_.assign(32, {});
  has_sw_.assign(1024, 0);
  has_s_.assign(32, 0);
  has_w_.assign(32, 0);
  for (const Cross& c : pp.crosses()) {
    const auto idx = static_cast<std::uint16_t>(crosses_.size());
    crosses_.push_back(c.c);
    keys_.push_back(c.key());
    const unsigned s = c.c[Cross::S], w = c.c[Cross::W];
    by_sw_[s * 32 + w].push_back(idx);
    by_s_[s].push_back(idx);
    by_w_[w].push_back(idx);
    all_.push_back(idx);
    has_sw_[s * 32 + w] = 1;
    has_s_[s] = 1;
    has_w_[w] = 1;
  }
}

void Engine::build_positions() {
  for (int t = 0; t < positions_; ++t) {
    const int i = 1 + t % (w_ - 1);
    const int j = 1 + t / (w_ - 1);
    Position p{};
    p.n = v_slot(i, j);
    p.s = v_slot(i, j - 1);
    p.e = h_slot(i, j);
    p.w = h_slot(i - 1, j);
    p.known_s = j > 1;
    p.known_w = i > 1;
    p.has_right = i + 1 <= w_ - 1;
    if (p.has_right && j > 1) p.right_s = v_slot(i + 1, j - 1);
    p.has_up = j + 1 <= h_ - 1;
    pos_.push_back(p);
  }
}

void Engine::build_pins() {
  allowed_.assign(static_cast<std::size_t>(nv_ + nh_), ~std::uint32_t{0});
  const Rect box{0, 0, w_, h_};
  for (const EdgePin& pin : cfg_.pins) {
    if (!box.contains(pin.edge)) throw Error(ErrorCode::BadInput, "pinned edge outside the box");
    allowed_[static_cast<std::size_t>(slot_of(pin.edge))] &= pin.allowed;
  }
}

void Engine::build_symmetries() {
  const Rect box{0, 0, w_, h_};
  for (const Sym& s : Sym::all()) {
    if (s == Sym::identity()) continue;
    if (s.swap() && w_ != h_) continue;
    const Rect img = box.image(s);
    std::vector<int> src(static_cast<std::size_t>(nv_ + nh_), -1);
    Patch probe(box, cfg_.alphabet);
    probe.for_each_edge([&](const EdgeRef& e) {
      EdgeRef f = s.apply(e);
      f.x -= img.x0;
      f.y -= img.y0;
      src[static_cast<std::size_t>(slot_of(f))] = slot_of(e);
    });
    std::array<std::array<std::uint8_t, 32>, 2> act{};
    const int space = alphabet_code_space(cfg_.alphabet);
    for (int o = 0; o < 2; ++o)
      for (int c = 0; c < space; ++c) {
        const EdgeColor col = EdgeColor::from_code(static_cast<std::uint8_t>(c), cfg_.alphabet);
        act[static_cast<std::size_t>(o)][static_cast<std::size_t>(c)] =
            encode(s.act(col, o == 0 ? Orientation::V : Orientation::H), cfg_.alphabet);
      }
    sym_src_.push_back(std::move(src));
    sym_act_.push_back(act);
  }
}

bool Engine::canonical(const std::vector<std::uint8_t>& codes) const {
  for (std::size_t k = 0; k < sym_src_.size(); ++k) {
    const auto& src = sym_src_[k];
    const auto& act = sym_act_[k];
    for (std::size_t j = 0; j < codes.size(); ++j) {
      const int from = src[j];
      const std::uint8_t a = act[from < nv_ ? 0 : 1][codes[static_cast<std::size_t>(from)]];
      if (a < codes[j]) return false;
      if (a > codes[j]) break;
    }
  }
  return true;
}

bool Engine::admissible(const Worker& wk, const Position& p, const std::array<std::uint8_t, 4>& c,
                        std::uint64_t& props) const {
  if (!(allowed_[static_cast<std::size_t>(p.n)] >> c[0] & 1u)) return false;
  if (!(allowed_[static_cast<std::size_t>(p.e)] >> c[1] & 1u)) return false;
  if (!p.known_s && !(allowed_[static_cast<std::size_t>(p.s)] >> c[2] & 1u)) return false;
  if (!p.known_w && !(allowed_[static_cast<std::size_t>(p.w)] >> c[3] & 1u)) return false;
  if (p.has_right) {
    ++props;
    if (p.right_s >= 0) {
      if (!has_sw_[wk.codes[static_cast<std::size_t>(p.right_s)] * 32u + c[1]]) return false;
    } else if (!has_w_[c[1]]) {
      return false;
    }
  }
  if (p.has_up) {
    ++props;
    if (!has_s_[c[0]]) return false;
  }
  return true;
}

bool Engine::flush(Worker& wk) {
  const std::uint64_t total = nodes_.fetch_add(wk.unflushed) + wk.unflushed;
  wk.unflushed = 0;
  if (cfg_.max_nodes && total >= cfg_.max_nodes) stop_ = true;
  return !stop_;
}

void Engine::leaf(Worker& wk) {
  if (!sym_src_.empty() && !canonical(wk.codes)) return;
  ShardResult& r = *wk.result;
  ++r.count;
  if (visitor_) {
    Patch p(Rect{0, 0, w_, h_}, cfg_.alphabet);
    std::memcpy(p.v_codes().data(), wk.codes.data(), static_cast<std::size_t>(nv_));
    std::memcpy(p.h_codes().data(), wk.codes.data() + nv_, static_cast<std::size_t>(nh_));
    if (!visitor_(p)) {
      ++r.violations;
      if (r.witnesses.size() < cfg_.max_witnesses) r.witnesses.push_back(std::move(p));
    }
  }
  if (cfg_.max_count && leaves_.fetch_add(1) + 1 >= cfg_.max_count) stop_ = true;
}

void Engine::search(Worker& wk, int t) {
  if (stop_) return;
  ++wk.result->nodes;
  if (++wk.unflushed >= 4096 && !flush(wk)) return;
  if (wk.collect && t == wk.collect_depth) {
    wk.sink->push_back(wk.prefix);
    return;
  }
  if (t == positions_) {
    leaf(wk);
    return;
  }
  const Position& p = pos_[static_cast<std::size_t>(t)];
  for (std::uint16_t idx : candidates(wk, p)) {
    const auto& c = crosses_[idx];
    if (!admissible(wk, p, c, wk.result->propagations)) continue;
    assign(wk, p, c);
    if (wk.collect) wk.prefix.push_back(idx);
    search(wk, t + 1);
    if (wk.collect) wk.prefix.pop_back();
    if (stop_) return;
  }
}

std::uint64_t Engine::fingerprint() const {
  Fnv f;
  f.add(kCheckpointVersion);
  f.add(w_);
  f.add(h_);
  f.add(static_cast<int>(cfg_.alphabet));
  f.add(cfg_.symmetry_reduction);
  f.add(cfg_.shard_depth);
  f.add(cfg_.tag.data(), cfg_.tag.size());
  for (std::uint32_t k : keys_) f.add(k);
  for (std::uint32_t a : allowed_) f.add(a);
  return f.value();
}

void Engine::load_checkpoint(std::vector<ShardResult>& results, std::uint64_t& resumed) const {
  std::ifstream in(cfg_.checkpoint_path, std::ios::binary);
  if (!in) return;
  char magic[8];
  std::uint32_t version = 0;
  std::uint64_t fp = 0, total = 0;
  in.read(magic, 8);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&fp), sizeof fp);
  in.read(reinterpret_cast<char*>(&total), sizeof total);
  if (!in || std::memcmp(magic, kMagic, 8) != 0 || version != kCheckpointVersion) {
    throw Error(ErrorCode::BadInput, "not a shard checkpoint: " + cfg_.checkpoint_path);
  }
  if (fp != fingerprint() || total != results.size()) {
    throw Error(ErrorCode::BadInput, "checkpoint belongs to a different search: " + cfg_.checkpoint_path);
  }
  std::vector<unsigned char> bitmap((total + 7) / 8);
  in.read(reinterpret_cast<char*>(bitmap.data()), static_cast<std::streamsize>(bitmap.size()));
  for (std::uint64_t s = 0; s < total; ++s) {
    std::uint64_t rec[4];
    in.read(reinterpret_cast<char*>(rec), sizeof rec);
    if (!in) throw Error(ErrorCode::BadInput, "truncated checkpoint: " + cfg_.checkpoint_path);
    if (bitmap[s / 8] >> (s % 8) & 1u) {
      results[s] = ShardResult{rec[0], rec[1], rec[2], rec[3], {}, true};
      ++resumed;
    }
  }
}

void Engine::save_checkpoint(const std::vector<ShardResult>& results) const {
  const std::string tmp = cfg_.checkpoint_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::BadInput, "cannot write checkpoint: " + tmp);
    const std::uint64_t fp = fingerprint();
    const std::uint64_t total = results.size();
    out.write(kMagic, 8);
    out.write(reinterpret_cast<const char*>(&kCheckpointVersion), sizeof kCheckpointVersion);
    out.write(reinterpret_cast<const char*>(&fp), sizeof fp);
    out.write(reinterpret_cast<const char*>(&total), sizeof total);
    std::vector<unsigned char> bitmap((total + 7) / 8, 0);
    for (std::uint64_t s = 0; s < total; ++s)
      if (results[s].done) bitmap[s / 8] |= static_cast<unsigned char>(1u << (s % 8));
    out.write(reinterpret_cast<const char*>(bitmap.data()), static_cast<std::streamsize>(bitmap.size()));
    for (const ShardResult& r : results) {
      const std::uint64_t rec[4] = {r.done ? r.count : 0, r.done ? r.violations : 0, r.done ? r.nodes : 0,
                                    r.done ? r.propagations : 0};
      out.write(reinterpret_cast<const char*>(rec), sizeof rec);
    }
  }
  std::filesystem::rename(tmp, cfg_.checkpoint_path);
}

SearchOutcome Engine::run() {
  const auto t0 = Clock::now();
  SearchOutcome out;
  const int depth = std::max(0, std::min(cfg_.shard_depth, positions_));

  // Shard prefixes, in search order.
  std::vector<std::vector<std::uint16_t>> prefixes;
  {
    ShardResult scratch;
    Worker wk;
    wk.codes.assign(static_cast<std::size_t>(nv_ + nh_), 0);
    wk.collect_depth = depth;
    wk.result = &scratch;
    wk.collect = true;
    wk.sink = &prefixes;
    if (depth == 0) {
      prefixes.emplace_back();
    } else {
      search(wk, 0);
    }
    out.nodes += scratch.nodes;
    out.propagations += scratch.propagations;
    nodes_ = 0;
  }

  std::vector<ShardResult> results(prefixes.size());
  if (!cfg_.checkpoint_path.empty()) load_checkpoint(results, out.shards_resumed);
  out.shards_total = prefixes.size();

  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> finished_this_run{0};
  std::uint64_t done_count = out.shards_resumed;
  std::mutex mu;
  auto last_save = Clock::now();

  auto work = [&]() {
    Worker wk;
    wk.codes.assign(static_cast<std::size_t>(nv_ + nh_), 0);
    while (!stop_) {
      const std::uint64_t s = next.fetch_add(1);
      if (s >= prefixes.size()) break;
      if (results[s].done) continue;
      ShardResult r;
      wk.result = &r;
      const auto& pre = prefixes[s];
      for (std::size_t t = 0; t < pre.size(); ++t) assign(wk, pos_[t], crosses_[pre[t]]);
      search(wk, depth);
      flush(wk);
      std::lock_guard<std::mutex> lock(mu);
      if (stop_) {
        results[s] = std::move(r);  // partial
        break;
      }
      r.done = true;
      results[s] = std::move(r);
      ++done_count;
      if (cfg_.on_progress) {
        cfg_.on_progress(ShardProgress{s, results[s].nodes, results[s].count, done_count, prefixes.size()});
      }
      if (!cfg_.checkpoint_path.empty() && Clock::now() - last_save > std::chrono::milliseconds(500)) {
        save_checkpoint(results);
        last_save = Clock::now();
      }
      if (cfg_.max_shards && finished_this_run.fetch_add(1) + 1 >= cfg_.max_shards) stop_ = true;
    }
  };

  const int threads = std::max(1, cfg_.threads);
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (!cfg_.checkpoint_path.empty()) save_checkpoint(results);

  out.exhausted = true;
  for (const ShardResult& r : results) {
    out.count += r.count;
    out.violations += r.violations;
    out.nodes += r.nodes;
    out.propagations += r.propagations;
    if (r.done) {
      ++out.shards_done;
    } else {
      out.exhausted = false;
    }
    for (const Patch& p : r.witnesses)
      if (out.witnesses.size() < cfg_.max_witnesses) out.witnesses.push_back(p);
  }
  if (out.shards_resumed) out.note = "witnesses of resumed shards are not stored in the checkpoint";
  out.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return out;
}

}  // namespace

SearchOutcome enumerate_boxes(const PlusPalette& pp, const SearchConfig& cfg, const Visitor& visitor) {
  Engine engine(pp, cfg, visitor);
  return engine.run();
}

EdgePin pin_bits(const EdgeRef& e, Alphabet alphabet, std::uint8_t bits, std::uint8_t value) {
  EdgePin pin{e, 0};
  for (int c = 0; c < alphabet_code_space(alphabet); ++c)
    if ((c & bits) == (value & bits)) pin.allowed |= 1u << c;
  return pin;
}

std::vector<std::uint8_t> palette_colors(const PlusPalette& pp) {
  std::array<bool, 32> seen{};
  for (const Cross& c : pp.crosses())
    for (std::uint8_t code : c.c) seen[code] = true;
  std::vector<std::uint8_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(static_cast<std::uint8_t>(i));
  return out;
}

namespace {

SearchConfig config_for(int w, int h, Alphabet alphabet, const RunOptions& opt, std::string tag) {
  SearchConfig cfg;
  cfg.width = w;
  cfg.height = h;
  cfg.alphabet = alphabet;
  cfg.threads = opt.threads;
  cfg.checkpoint_path = opt.checkpoint_path;
  cfg.max_nodes = opt.max_nodes;
  cfg.max_shards = opt.max_shards;
  cfg.shard_depth = opt.shard_depth;
  cfg.on_progress = opt.on_progress;
  cfg.tag = std::move(tag);
  return cfg;
}

}  // namespace

SearchOutcome check_no_skipped_colors(int size, Alphabet alphabet, const RunOptions& opt) {
  const PlusPalette& pp = ce_palette(alphabet);
  const std::vector<std::uint8_t> colors = palette_colors(pp);
  const Visitor visitor = [&colors](const Patch& p) {
    std::array<bool, 32> seen{};
    for (std::uint8_t c : p.v_codes()) seen[c] = true;
    for (std::uint8_t c : p.h_codes()) seen[c] = true;
    for (std::uint8_t c : colors)
      if (!seen[c]) return false;
    return true;
  };
  return enumerate_boxes(pp, config_for(size, size, alphabet, opt, "no-skipped-colors"), visitor);
}

SearchOutcome check_no_bold_three_bar(int size, const RunOptions& opt) {
  // Both neighboring parallel lines must be in the box too: the argument
  // runs through the tiles on either side of the middle link.
  const Visitor visitor = [](const Patch& p) {
    const Rect& r = p.rect();
    for (const Bar& b : bars_of(p)) {
      if (!b.bold || b.truncated || b.length != 3) continue;
      const std::int64_t lo = b.orientation == Orientation::V ? r.x0 : r.y0;
      const std::int64_t hi = b.orientation == Orientation::V ? r.x1 : r.y1;
      if (b.line - 1 > lo && b.line + 1 < hi) return false;
    }
    return true;
  };
  return enumerate_boxes(ce_palette(), config_for(size, size, Alphabet::Base, opt, "no-bold-3-bar"), visitor);
}

namespace {

// On odd lines, the vertex an edge points to lies on an odd crossing line.
bool odd_pointers_reach_odd_lines(const Patch& p) {
  bool ok = true;
  p.for_each_edge([&](const EdgeRef& e) {
    if (!ok) return;
    const EdgeColor c = p.color(e);
    if (!c.odd) return;
    const std::int64_t target = e.along() + (c.pointer > 0 ? 1 : 0);
    // Any present edge of the crossing line carries its parity.
    const EdgeRef probe = e.orientation == Orientation::V ? EdgeRef{Orientation::H, e.x, target}
                                                          : EdgeRef{Orientation::V, target, e.y};
    EdgeRef alt = probe;
    if (e.orientation == Orientation::V) {
      alt.x -= 1;
    } else {
      alt.y -= 1;
    }
    const EdgeRef* crossing = p.has(probe) ? &probe : p.has(alt) ? &alt : nullptr;
    if (crossing && !p.color(*crossing).odd) ok = false;
  });
  return ok;
}

}  // namespace

SearchOutcome check_parity_enforcement(int size, Alphabet alphabet, const RunOptions& opt) {
  const Visitor visitor = [alphabet](const Patch& p) {
    if (!is_k_tiled(p, 1).success) return false;
    return alphabet != Alphabet::Parity || odd_pointers_reach_odd_lines(p);
  };
  return enumerate_boxes(ce_palette(alphabet), config_for(size, size, alphabet, opt, "parity-enforcement"),
                         visitor);
}

SearchOutcome check_one_tiled_is_two_tiled(int size, Alphabet alphabet, const RunOptions& opt) {
  const Visitor visitor = [](const Patch& p) { return !is_k_tiled(p, 1).success || is_k_tiled(p, 2).success; };
  return enumerate_boxes(ce_palette(alphabet), config_for(size, size, alphabet, opt, "one-tiled-is-two-tiled"),
                         visitor);
}

SearchOutcome levitsky_check(int w, const RunOptions& opt) {
  if (w < 6 || w > 12) throw Error(ErrorCode::BadInput, "levitsky radius must be in [6,12]");
  // Bold edges y = c-1, c on the line x = c, pale just outside.
  const std::int64_t c = w / 2;
  SearchConfig cfg = config_for(w, w, Alphabet::Base, opt, "levitsky");
  for (std::int64_t y = c - 2; y <= c + 1; ++y) {
    const bool bold = y == c - 1 || y == c;
    cfg.pins.push_back(pin_bits(EdgeRef{Orientation::V, c, y}, Alphabet::Base, 2, bold ? 2 : 0));
  }
  const Bar bar{Orientation::V, c, c - 1, 2, true, false};
  const Visitor visitor = [bar](const Patch& p) { return two_bar_neighborhood_ok(p, bar).ok; };
  return enumerate_boxes(ce_palette(), cfg, visitor);
}

}  // namespace adictile
