#include "adictile/report_json.hpp"

#include <cstdio>

namespace adictile {

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
  return v ? to_json(*v) : Json(nullptr);
}

Json pair_json(const std::optional<std::array<std::int64_t, 2>>& v) {
  return v ? Json::array({(*v)[0], (*v)[1]}) : Json(nullptr);
}

Json reversals(const std::vector<RankReversal>& rs) {
  Json out = Json::array();
  for (const auto& r : rs) {
    out.push_back({{"rank", r.rank},
                   {"compared", r.compared},
                   {"reversed", r.reversed},
                   {"reversed_fraction", r.reversed_fraction()}});
  }
  return out;
}

std::string hex_residue(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

Json to_json(const Adic& a) { return {{"value", a.to_hex()}, {"precision", a.precision()}}; }

Json to_json(const EdgeRef& e) {
  return {{"o", e.orientation == Orientation::V ? "V" : "H"}, {"x", e.x}, {"y", e.y}};
}

Json to_json(const Rect& r) { return Json::array({r.x0, r.y0, r.x1, r.y1}); }

Json to_json(const Pose& p) {
  return {{"dx", p.dx.to_hex()},
          {"dy", p.dy.to_hex()},
          {"precision", p.precision()},
          {"sym", p.sym.name()},
          {"default_x", p.default_x},
          {"default_y", p.default_y}};
}

Json to_json(const Cross& c, Alphabet alphabet) { return cross_hex(c, alphabet); }

Json to_json(const VerifyResult& v, Alphabet alphabet) {
  Json j{{"ok", v.ok()}};
  if (v.violation) {
    j["violation"] = {{"x", v.violation->x}, {"y", v.violation->y}, {"cross", to_json(v.violation->cross, alphabet)}};
  }
  return j;
}

Json to_json(const PaletteExtraction& x) {
  const Alphabet a = x.off_axis.alphabet();
  Json reps = Json::array();
  for (const auto& c : x.off_axis.orbit_representatives()) reps.push_back(to_json(c, a));
  Json axis_only = Json::array();
  for (const auto& c : x.axis_only()) axis_only.push_back(to_json(c, a));
  return {{"radius", x.radius},
          {"poses", x.poses},
          {"alphabet", std::string(to_string(a))},
          {"off_axis_crosses", x.off_axis.size()},
          {"off_axis_orbits", x.off_axis_orbits()},
          {"axis_crosses", x.axis.size()},
          {"orbit_representatives", reps},
          {"axis_only", axis_only}};
}

Json to_json(const ShiftDiffReport& r) {
  return {{"k", r.k},
          {"i", r.i},
          {"window", Json::array({r.window_lo, r.window_hi})},
          {"per_rank", reversals(r.per_rank)},
          {"higher_rank", reversals(r.higher_rank)},
          {"positions", r.positions},
          {"changed", r.changed},
          {"changed_fraction", r.changed_fraction},
          {"bound", r.bound},
          {"holds", r.holds()}};
}

Json to_json(const SegmentWitness& w) { return {{"first", to_json(w.first)}, {"differing", to_json(w.differing)}}; }

Json to_json(const BlockDecomposition& d) {
  Json others = Json::array();
  for (const auto& o : d.other_offsets) others.push_back(Json::array({o[0], o[1]}));
  return {{"level", d.level},
          {"offset", Json::array({d.offset_x, d.offset_y})},
          {"trimmed", to_json(d.trimmed)},
          {"blocks", d.blocks.size()},
          {"unique", d.unique()},
          {"other_offsets", others}};
}

Json to_json(const TilednessReport& r) {
  return {{"k", r.k},
          {"success", r.success},
          {"margins", Json::array({r.margins[0], r.margins[1], r.margins[2], r.margins[3]})},
          {"witness", opt(r.witness)}};
}

Json to_json(const Lemma1Report& r) {
  return {{"k", r.k},
          {"offset", Json::array({r.offset_x, r.offset_y})},
          {"border_segments", r.border_segments},
          {"full_blocks", r.full_blocks},
          {"frame_occurrences", r.frame_occurrences},
          {"clause_i", r.clause_i},
          {"clause_ii", r.clause_ii},
          {"clause_iii", r.clause_iii},
          {"holds", r.holds()},
          {"border_witness", opt(r.border_witness)},
          {"misplaced_frame", pair_json(r.misplaced_frame)},
          {"odd_block", pair_json(r.odd_block)}};
}

Json to_json(const CorollaryReport& r) {
  return {{"k", r.k},
          {"requested", r.requested},
          {"checked", r.checked},
          {"excluded_axes", r.excluded_axes},
          {"not_one_tiled", r.not_one_tiled},
          {"extended", r.extended},
          {"failed", r.failed},
          {"seed", r.seed},
          {"holds", r.holds()}};
}

Json to_json(const Bar& b) {
  return {{"o", b.orientation == Orientation::V ? "V" : "H"},
          {"line", b.line},
          {"start", b.start},
          {"length", b.length},
          {"bold", b.bold},
          {"truncated", b.truncated}};
}

Json to_json(const BarStats& s) {
  Json hist = Json::array();
  for (const auto& [key, n] : s.histogram) hist.push_back({{"bold", key.first}, {"length", key.second}, {"count", n}});
  return {{"histogram", hist},
          {"truncated_bars", s.truncated_bars},
          {"edges", {{"pale", s.edges[0]}, {"bold", s.edges[1]}}},
          {"truncated_edges", {{"pale", s.truncated_edges[0]}, {"bold", s.truncated_edges[1]}}},
          {"mean_length", {{"pale", s.mean_untruncated_length(false)}, {"bold", s.mean_untruncated_length(true)}}}};
}

Json to_json(const CrossStats& s) {
  return {{"vertices", s.vertices},
          {"bends", s.bends},
          {"passes", s.passes},
          {"other", s.other},
          {"bend_fraction", s.bend_fraction()},
          {"bend_orientations", Json::array({s.bend_orientations[0], s.bend_orientations[1], s.bend_orientations[2],
                                             s.bend_orientations[3]})},
          {"unoriented_bends", s.unoriented_bends},
          {"alternation_checks", s.alternation_checks},
          {"alternation_violations", s.alternation_violations}};
}

Json to_json(const TorusResult& r) {
  const char* proj = r.config.projection == TorusProjection::Bold          ? "bold"
                     : r.config.projection == TorusProjection::BoldPointer ? "bold+pointer"
                                                                           : "full";
  return {{"n", r.config.n},
          {"bold", r.config.bold},
          {"pale", r.config.pale},
          {"projection", proj},
          {"with_axes", r.config.with_axes},
          {"line_patterns", r.line_patterns},
          {"vertex_types", r.vertex_types},
          {"nodes", r.nodes},
          {"solutions", r.solutions},
          {"capped", r.capped},
          {"elapsed_ms", r.elapsed_ms}};
}

Json to_json(const SearchOutcome& o) {
  return {{"count", o.count},
          {"exhausted", o.exhausted},
          {"violations", o.violations},
          {"witnesses", o.witnesses.size()},
          {"nodes", o.nodes},
          {"propagations", o.propagations},
          {"shards_total", o.shards_total},
          {"shards_done", o.shards_done},
          {"shards_resumed", o.shards_resumed},
          {"elapsed_ms", o.elapsed_ms},
          {"note", o.note}};
}

Json to_json(const ShardProgress& p) {
  return {{"shard", p.shard}, {"nodes", p.nodes}, {"found", p.found}, {"done", p.done}, {"total", p.total}};
}

Json to_json(const PoseEstimate& e) {
  Json syms = Json::array();
  for (const auto& s : e.sym_candidates) syms.push_back(s.name());
  Json defaults = Json::array();
  for (const auto& d : e.candidate_defaults) defaults.push_back(Json::array({d[0], d[1]}));
  return {{"dx_mod", hex_residue(e.dx_mod)},
          {"dy_mod", hex_residue(e.dy_mod)},
          {"m_x", e.m_x},
          {"m_y", e.m_y},
          {"sym_candidates", syms},
          {"defaults", defaults},
          {"origin_visible", e.origin_visible},
          {"checked_edges", e.checked_edges},
          {"consistency", e.consistency}};
}

Json to_json(const ConvergenceReport& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"m", s.m}, {"changed", s.changed}, {"min_changed_rank", s.min_changed_rank}});
  }
  return {{"ax", r.ax.to_hex()},
          {"ay", r.ay.to_hex()},
          {"precision", r.ax.precision()},
          {"rect", to_json(r.rect)},
          {"steps", steps},
          {"stable_from", r.stable_from},
          {"ranks_settle", r.ranks_settle()}};
}

}  // namespace adictile
