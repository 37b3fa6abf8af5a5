#include "adictile/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <random>

#include "adictile/error.hpp"
#include "adictile/report_json.hpp"

namespace adictile {

namespace {

struct PoseFlags {
  std::string shift_x = "0x0";
  std::string shift_y = "0x0";
  int precision = kDefaultPrecision;
  std::string sym = "e";
  int default_x = 0;
  int default_y = 0;

  Pose pose() const {
    return Pose{Adic::from_hex(shift_x, precision), Adic::from_hex(shift_y, precision), Sym::from_name(sym),
                default_x, default_y};
  }
};

void add_pose_flags(CLI::App* cmd, PoseFlags& f) {
  cmd->add_option("--shift-x", f.shift_x, "2-adic shift along x, hexadecimal");
  cmd->add_option("--shift-y", f.shift_y, "2-adic shift along y, hexadecimal");
  cmd->add_option("--precision", f.precision, "bits of the shifts")->check(CLI::Range(1, 64));
  cmd->add_option("--sym", f.sym, "reflection")->check(CLI::IsMember({"e", "x", "y", "xy", "d", "dx", "dy", "dxy"}));
  cmd->add_option("--default-x", f.default_x, "bracket of the vertical axis")->check(CLI::Range(0, 1));
  cmd->add_option("--default-y", f.default_y, "bracket of the horizontal axis")->check(CLI::Range(0, 1));
}

template <std::size_t N>
std::array<std::int64_t, N> parse_ints(const std::string& text, const char* what) {
  std::array<std::int64_t, N> v{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t end = text.find(',', pos);
    if ((i + 1 < N) != (end != std::string::npos)) throw Error(ErrorCode::BadInput, what);
    const std::string part = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    try {
      std::size_t used = 0;
      v[i] = std::stoll(part, &used);
      if (used != part.size()) throw Error(ErrorCode::BadInput, what);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::BadInput, what);
    }
    pos = end + 1;
  }
  return v;
}

Rect parse_rect(const std::string& text) {
  const auto v = parse_ints<4>(text, "--rect takes x0,y0,x1,y1");
  const Rect r{v[0], v[1], v[2], v[3]};
  if (r.empty()) throw Error(ErrorCode::BadInput, "--rect is empty");
  return r;
}

const PlusPalette& named_palette(const std::string& name, Alphabet alphabet, PlusPalette& storage) {
  if (name == "ce") return ce_palette(alphabet);
  if (name == "ce-axes") return ce_palette_with_axes(alphabet);
  storage = load_palette(name);
  if (storage.alphabet() != alphabet) throw Error(ErrorCode::BadInput, "palette and patch alphabets differ");
  return storage;
}

void strip_timing(Json& j) {
  if (j.is_object()) {
    j.erase("elapsed_ms");
    for (auto& [key, value] : j.items()) strip_timing(value);
  } else if (j.is_array()) {
    for (auto& value : j) strip_timing(value);
  }
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  bool pretty = false;
  bool timing = false;
  bool quiet = false;

  void emit(Json j) {
    if (!timing) strip_timing(j);
    if (!pretty) {
      out_ << j.dump() << '\n';
      return;
    }
    for (const auto& [key, value] : j.items()) {
      out_ << std::left << std::setw(24) << key << ' ' << (value.is_string() ? value.get<std::string>() : value.dump())
           << '\n';
    }
    out_ << '\n';
  }

  std::function<void(const ShardProgress&)> progress(const std::string& command) {
    if (quiet) return {};
    return [this, command](const ShardProgress& p) {
      std::lock_guard lock(mu_);
      const auto now = std::chrono::steady_clock::now();
      if (p.done != p.total && now - last_ < std::chrono::milliseconds(250)) return;
      last_ = now;
      err_ << Json{{"command", command}, {"progress", to_json(p)}}.dump() << '\n';
    };
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::mutex mu_;
  std::chrono::steady_clock::time_point last_{};
};

void merge(Json& into, Json body) {
  for (auto& [key, value] : body.items()) into[key] = std::move(value);
}

Json tagged(const char* command, Json body) {
  Json j{{"command", command}};
  merge(j, std::move(body));
  return j;
}

int search_exit(const SearchOutcome& o) {
  if (o.violations > 0) return kExitViolated;
  return o.exhausted ? kExitOk : kExitBudget;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"2-adic aperiodic tilings: generation, verification, enumeration and decoding", "adictile"};
  app.require_subcommand(1);
  app.fallthrough();
  Emitter em(out, err);
  app.add_flag("--pretty", em.pretty, "human-readable tables instead of JSON lines");
  app.add_flag("--timing", em.timing, "include elapsed_ms fields");
  app.add_flag("--quiet", em.quiet, "no progress lines on stderr");

  PoseFlags pf;
  std::string rect_text;
  std::string alphabet_text = "base";
  std::string out_path;
  std::string input;
  const auto alphabet_check = CLI::IsMember({"bracket", "base", "parity"});

  auto* gen = app.add_subcommand("gen", "generate a window of a posed tiling and save it");
  add_pose_flags(gen, pf);
  gen->add_option("--rect", rect_text, "x0,y0,x1,y1")->required();
  gen->add_option("--alphabet", alphabet_text)->check(alphabet_check);
  gen->add_option("--out", out_path, "patch file")->required();

  std::string format = "ascii";
  std::int64_t render_limit = 1 << 20;
  auto* render_cmd = app.add_subcommand("render", "draw a patch file or a generated window");
  render_cmd->add_option("input", input, "patch file; generated from the pose flags when absent");
  add_pose_flags(render_cmd, pf);
  render_cmd->add_option("--rect", rect_text, "x0,y0,x1,y1");
  render_cmd->add_option("--alphabet", alphabet_text)->check(alphabet_check);
  render_cmd->add_option("--format", format)->check(CLI::IsMember({"ascii", "svg"}));
  render_cmd->add_option("--out", out_path, "output file")->required();
  render_cmd->add_option("--limit", render_limit, "largest window area");
  int overlay_level = -1;
  render_cmd->add_option("--blocks", overlay_level, "overlay the k-block grid (svg)")->check(CLI::Range(0, 12));

  std::int64_t radius = 256;
  std::int64_t samples = 0;
  std::uint64_t seed = 1;
  auto* palette_cmd = app.add_subcommand("palette", "extract the +palette of generated windows");
  add_pose_flags(palette_cmd, pf);
  palette_cmd->add_option("--radius", radius, "windows are [-R,R]^2")->check(CLI::Range(16, 4096));
  palette_cmd->add_option("--alphabet", alphabet_text)->check(alphabet_check);
  palette_cmd->add_option("--samples", samples, "extra random poses");
  palette_cmd->add_option("--seed", seed);
  palette_cmd->add_option("--out", out_path, "palette file of the off-axis crosses");

  std::string palette_name = "ce";
  auto* verify_cmd = app.add_subcommand("verify", "check every cross of a patch against a palette");
  verify_cmd->add_option("input", input, "patch file")->required();
  verify_cmd->add_option("--palette", palette_name, "ce, ce-axes or a palette file");

  int width = 2, height = 2, size = 0;
  std::string check = "count";
  int threads = 1;
  std::string checkpoint;
  std::uint64_t max_count = 0, max_nodes = 0, max_shards = 0;
  int shard_depth = 3;
  bool symmetry = false;
  auto* enum_cmd = app.add_subcommand("enum", "enumerate palette-consistent open boxes");
  enum_cmd->add_option("--size", size, "square box side; overrides --width/--height");
  enum_cmd->add_option("--width", width);
  enum_cmd->add_option("--height", height);
  enum_cmd->add_option("--alphabet", alphabet_text)->check(alphabet_check);
  enum_cmd->add_option("--palette", palette_name, "ce, ce-axes or a palette file (count only)");
  enum_cmd->add_option("--check", check, "property checked on every box")
      ->check(CLI::IsMember({"count", "colors", "bold3", "parity", "lemma2"}));
  enum_cmd->add_flag("--symmetry", symmetry, "count boxes up to reflection (count only)");
  enum_cmd->add_option("--threads", threads)->check(CLI::Range(1, 256));
  enum_cmd->add_option("--checkpoint", checkpoint);
  enum_cmd->add_option("--max-count", max_count, "stop after this many boxes (count only)");
  enum_cmd->add_option("--max-nodes", max_nodes);
  enum_cmd->add_option("--max-shards", max_shards, "stop after this many shards in this run");
  enum_cmd->add_option("--shard-depth", shard_depth)->check(CLI::Range(1, 8));

  auto* stats_cmd = app.add_subcommand("stats", "bar lengths and bend/pass counts");
  stats_cmd->add_option("input", input, "patch file; generated from the pose flags when absent");
  add_pose_flags(stats_cmd, pf);
  stats_cmd->add_option("--rect", rect_text, "x0,y0,x1,y1 (default: 256x256 off the axes)");

  int torus_n = 6;
  std::vector<int> bold_runs{4}, pale_runs{2};
  std::string projection = "full";
  bool with_axes = false, control = false;
  std::int64_t max_solutions = 1 << 20;
  auto* torus_cmd = app.add_subcommand("torus", "exhaustive search for periodic bar colorings of a torus");
  torus_cmd->add_option("--n", torus_n)->check(CLI::Range(2, 16));
  torus_cmd->add_option("--bold", bold_runs, "allowed bold run lengths")->delimiter(',');
  torus_cmd->add_option("--pale", pale_runs, "allowed pale run lengths")->delimiter(',');
  torus_cmd->add_option("--projection", projection)->check(CLI::IsMember({"full", "bold", "bold-pointer"}));
  torus_cmd->add_flag("--with-axes", with_axes, "admit the central crosses");
  torus_cmd->add_option("--max-solutions", max_solutions);
  torus_cmd->add_flag("--control", control, "8-torus, bold 4 and pale 4, boldness only");

  int lev_radius = 6;
  auto* lev_cmd = app.add_subcommand("levitsky", "two-bar neighborhood of a pinned bold 2-bar in every box");
  lev_cmd->add_option("--radius", lev_radius, "box side")->check(CLI::Range(6, 12));
  lev_cmd->add_option("--threads", threads)->check(CLI::Range(1, 256));
  lev_cmd->add_option("--checkpoint", checkpoint);
  lev_cmd->add_option("--max-nodes", max_nodes);
  lev_cmd->add_option("--max-shards", max_shards, "stop after this many shards in this run");
  lev_cmd->add_option("--shard-depth", shard_depth)->check(CLI::Range(1, 8));

  std::int64_t max_period = 0;
  bool converge = false;
  auto* decode_cmd = app.add_subcommand("decode", "recover shift residues and reflection from a window");
  decode_cmd->add_option("input", input, "patch file; generated from the pose flags when absent");
  add_pose_flags(decode_cmd, pf);
  decode_cmd->add_option("--rect", rect_text, "x0,y0,x1,y1 (default 0,0,64,64)");
  decode_cmd->add_option("--alphabet", alphabet_text)->check(alphabet_check);
  decode_cmd->add_option("--periods", max_period, "also test translations up to this length");
  decode_cmd->add_flag("--converge", converge, "windows of truncated shifts instead of decoding");

  std::vector<int> ks{1};
  std::vector<std::int64_t> is{0};
  std::int64_t lo = 0, length = 0;
  auto* remark_cmd = app.add_subcommand("remark1", "bracket changes under a shift of valuation k");
  remark_cmd->add_option("--k", ks, "valuations")->delimiter(',');
  remark_cmd->add_option("--i", is, "odd parts are 2i+1")->delimiter(',');
  remark_cmd->add_option("--lo", lo, "window start");
  remark_cmd->add_option("--length", length, "window length (default 2^(k+6))");

  int k = 2;
  std::string offset_text;
  auto* lemma_cmd = app.add_subcommand("lemma", "k-block decomposition, k-tiledness and the block lemma");
  lemma_cmd->add_option("input", input, "patch file; generated from the pose flags when absent");
  add_pose_flags(lemma_cmd, pf);
  lemma_cmd->add_option("--rect", rect_text, "x0,y0,x1,y1 (default 0,0,64,64)");
  lemma_cmd->add_option("--alphabet", alphabet_text)->check(alphabet_check);
  lemma_cmd->add_option("--k", k)->check(CLI::Range(0, 12));
  lemma_cmd->add_option("--offset", offset_text, "ox,oy block grid offset");

  std::int64_t cor_samples = 2000;
  auto* cor_cmd = app.add_subcommand("corollary", "sampled boxes extend to a larger block");
  cor_cmd->add_option("--k", k)->check(CLI::Range(0, kCorollaryMaxK));
  cor_cmd->add_option("--samples", cor_samples);
  cor_cmd->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  const Alphabet alphabet = alphabet_from_string(alphabet_text);
  auto window = [&](const Rect& fallback) {
    if (!input.empty()) return load_patch(input);
    return generate(pf.pose(), rect_text.empty() ? fallback : parse_rect(rect_text), alphabet);
  };
  const char* name = app.get_subcommands().front()->get_name().c_str();

  try {
    if (*gen) {
      const Pose pose = pf.pose();
      const Patch p = generate(pose, parse_rect(rect_text), alphabet);
      save_patch(out_path, p);
      em.emit(tagged(name, {{"rect", to_json(p.rect())},
                            {"pose", to_json(pose)},
                            {"alphabet", std::string(to_string(alphabet))},
                            {"edges", p.edge_count()},
                            {"out", out_path}}));
      return kExitOk;
    }

    if (*render_cmd) {
      if (input.empty() && rect_text.empty()) throw Error(ErrorCode::BadInput, "render needs a patch file or --rect");
      const Patch p = window({});
      std::vector<Rect> overlay;
      if (overlay_level >= 0) {
        const DecomposeResult d = decompose(p, overlay_level);
        if (!d.ok()) throw Error(ErrorCode::NotDecomposable, "no block grid at the requested level");
        overlay = d.decomposition->blocks;
      }
      const std::string text =
          render(p, format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii, render_limit, overlay);
      std::ofstream f(out_path, std::ios::binary);
      if (!f || !(f << text)) throw Error(ErrorCode::BadInput, "cannot write " + out_path);
      em.emit(tagged(name, {{"rect", to_json(p.rect())}, {"format", format}, {"bytes", text.size()}, {"out", out_path}}));
      return kExitOk;
    }

    if (*palette_cmd) {
      std::vector<Pose> poses{pf.pose()};
      std::mt19937_64 rng(seed);
      for (std::int64_t s = 0; s < samples; ++s) {
        poses.push_back(Pose{Adic(rng(), 64), Adic(rng(), 64), Sym::from_index(static_cast<int>(rng() % 8)),
                             static_cast<int>(rng() & 1), static_cast<int>(rng() & 1)});
      }
      const PaletteExtraction ex = extract_plus_palette(poses, radius, alphabet);
      if (!out_path.empty()) {
        std::ofstream f(out_path);
        write_palette(f, ex.off_axis);
        if (!f) throw Error(ErrorCode::BadInput, "cannot write " + out_path);
      }
      Json j = tagged(name, to_json(ex));
      j["seed"] = seed;
      em.emit(std::move(j));
      return kExitOk;
    }

    if (*verify_cmd) {
      const Patch p = load_patch(input);
      PlusPalette storage;
      const PlusPalette& pp = named_palette(palette_name, p.alphabet(), storage);
      const VerifyResult v = verify(p, pp);
      em.emit(tagged(name, {{"input", input}, {"palette", palette_name}, {"result", to_json(v, p.alphabet())}}));
      return v.ok() ? kExitOk : kExitViolated;
    }

    if (*enum_cmd) {
      if (size > 0) width = height = size;
      RunOptions opt;
      opt.threads = threads;
      opt.checkpoint_path = checkpoint;
      opt.max_nodes = max_nodes;
      opt.max_shards = max_shards;
      opt.shard_depth = shard_depth;
      opt.on_progress = em.progress(name);
      SearchOutcome o;
      if (check == "count") {
        PlusPalette storage;
        SearchConfig cfg;
        cfg.width = width;
        cfg.height = height;
        cfg.alphabet = alphabet;
        cfg.symmetry_reduction = symmetry;
        cfg.max_nodes = max_nodes;
        cfg.max_count = max_count;
        cfg.max_shards = max_shards;
        cfg.threads = threads;
        cfg.checkpoint_path = checkpoint;
        cfg.shard_depth = shard_depth;
        cfg.tag = "count:" + palette_name;
        cfg.on_progress = opt.on_progress;
        o = enumerate_boxes(named_palette(palette_name, alphabet, storage), cfg);
      } else {
        if (width != height) throw Error(ErrorCode::BadInput, "property checks take square boxes; use --size");
        if (check == "colors") o = check_no_skipped_colors(width, alphabet, opt);
        if (check == "bold3") o = check_no_bold_three_bar(width, opt);
        if (check == "parity") o = check_parity_enforcement(width, alphabet, opt);
        if (check == "lemma2") o = check_one_tiled_is_two_tiled(width, alphabet, opt);
      }
      Json j = tagged(name, {{"check", check},
                             {"width", width},
                             {"height", height},
                             {"alphabet", std::string(to_string(alphabet))},
                             {"threads", threads}});
      merge(j, to_json(o));
      em.emit(std::move(j));
      return search_exit(o);
    }

    if (*stats_cmd) {
      const Patch p = window(Rect{8, 8, 264, 264});
      const BarStats bs = bar_histogram(p);
      const CrossStats cs = classify_crosses(p);
      em.emit(tagged(name, {{"rect", to_json(p.rect())},
                            {"bars", to_json(bs)},
                            {"crosses", to_json(cs)},
                            {"one_bars", bs.count(false, 1) + bs.count(true, 1)},
                            {"bold_two_bars", bs.count(true, 2)},
                            {"bold_three_bars", bs.count(true, 3)}}));
      return kExitOk;
    }

    if (*torus_cmd) {
      TorusConfig cfg;
      if (control) {
        cfg = torus_control().config;
      } else {
        cfg.n = torus_n;
        cfg.bold = bold_runs;
        cfg.pale = pale_runs;
        cfg.projection = projection == "bold"           ? TorusProjection::Bold
                         : projection == "bold-pointer" ? TorusProjection::BoldPointer
                                                        : TorusProjection::Full;
        cfg.with_axes = with_axes;
        cfg.max_solutions = max_solutions;
      }
      const TorusResult r = torus_search(cfg);
      Json j = tagged(name, to_json(r));
      j["zn"] = cfg.n;
      j["matchings"] = parity_matchings(cfg.n);
      j["impossible"] = r.impossible();
      em.emit(std::move(j));
      if (control) return r.solutions > 0 ? kExitOk : kExitViolated;
      if (r.capped) return kExitBudget;
      return r.solutions == 0 ? kExitOk : kExitViolated;
    }

    if (*lev_cmd) {
      RunOptions opt;
      opt.threads = threads;
      opt.checkpoint_path = checkpoint;
      opt.max_nodes = max_nodes;
      opt.max_shards = max_shards;
      opt.shard_depth = shard_depth;
      opt.on_progress = em.progress(name);
      const SearchOutcome o = levitsky_check(lev_radius, opt);
      Json j = tagged(name, {{"radius", lev_radius}, {"threads", threads}});
      merge(j, to_json(o));
      em.emit(std::move(j));
      return search_exit(o);
    }

    if (*decode_cmd) {
      if (converge) {
        const Pose pose = pf.pose();
        const Rect r = rect_text.empty() ? Rect{-16, -16, 16, 16} : parse_rect(rect_text);
        const ConvergenceReport rep = convergence_check(pose.dx, pose.dy, r);
        em.emit(tagged(name, to_json(rep)));
        return rep.ranks_settle() ? kExitOk : kExitViolated;
      }
      const Patch p = window(Rect{0, 0, 64, 64});
      Json j = tagged(name, {{"rect", to_json(p.rect())}});
      merge(j, to_json(infer_pose(p)));
      int code = kExitOk;
      if (max_period > 0) {
        Json periods = Json::array();
        for (const auto& v : aperiodicity_check(p, max_period)) periods.push_back(Json::array({v[0], v[1]}));
        if (!periods.empty()) code = kExitViolated;
        j["max_period"] = max_period;
        j["periods"] = std::move(periods);
      }
      em.emit(std::move(j));
      return code;
    }

    if (*remark_cmd) {
      bool all = true;
      for (const int kk : ks) {
        if (kk < 1 || kk > 40) throw Error(ErrorCode::BadInput, "--k must lie in 1..40");
        for (const std::int64_t i : is) {
          const std::int64_t len = length > 0 ? length : std::int64_t{1} << (kk + 6);
          const ShiftDiffReport rep = remark1_report(kk, i, lo, lo + len);
          all = all && rep.holds();
          em.emit(tagged(name, to_json(rep)));
        }
      }
      return all ? kExitOk : kExitViolated;
    }

    if (*lemma_cmd) {
      const Patch p = window(Rect{0, 0, 64, 64});
      std::optional<std::array<std::int64_t, 2>> offset;
      if (!offset_text.empty()) {
        offset = parse_ints<2>(offset_text, "--offset takes ox,oy");
      }
      const DecomposeResult d = decompose(p, k);
      const TilednessReport t = is_k_tiled(p, k);
      Json j = tagged(name, {{"rect", to_json(p.rect())},
                             {"k", k},
                             {"decomposition", d.ok() ? to_json(*d.decomposition) : Json(nullptr)},
                             {"decomposition_witness", d.witness ? to_json(*d.witness) : Json(nullptr)},
                             {"tiled", to_json(t)}});
      if (!d.ok() && !offset) {
        j["lemma1"] = nullptr;
        em.emit(std::move(j));
        return kExitViolated;
      }
      const Lemma1Report l = check_lemma1(p, k, offset);
      j["lemma1"] = to_json(l);
      em.emit(std::move(j));
      return l.holds() ? kExitOk : kExitViolated;
    }

    if (*cor_cmd) {
      const CorollaryReport r = check_corollary(k, cor_samples, seed);
      em.emit(tagged(name, to_json(r)));
      return r.holds() ? kExitOk : kExitViolated;
    }
  } catch (const Error& e) {
    em.emit(Json{{"command", name}, {"error", to_string(e.code())}, {"message", e.what()}});
    return e.code() == ErrorCode::BadInput ? kExitUsage : kExitViolated;
  } catch (const std::exception& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace adictile
