#pragma once

// JSON forms of the library's reports.

#include <json.hpp>

#include "adictile/bars.hpp"
#include "adictile/blocks.hpp"
#include "adictile/coords1d.hpp"
#include "adictile/decode2d.hpp"
#include "adictile/enumerate.hpp"
#include "adictile/palette.hpp"
#include "adictile/tiling2d.hpp"

namespace adictile {

using Json = nlohmann::ordered_json;

Json to_json(const Adic& a);
Json to_json(const EdgeRef& e);
Json to_json(const Rect& r);
Json to_json(const Pose& p);
Json to_json(const Cross& c, Alphabet alphabet);
Json to_json(const VerifyResult& v, Alphabet alphabet);
Json to_json(const PaletteExtraction& x);
Json to_json(const ShiftDiffReport& r);
Json to_json(const SegmentWitness& w);
Json to_json(const BlockDecomposition& d);
Json to_json(const TilednessReport& r);
Json to_json(const Lemma1Report& r);
Json to_json(const CorollaryReport& r);
Json to_json(const Bar& b);
Json to_json(const BarStats& s);
Json to_json(const CrossStats& s);
Json to_json(const TorusResult& r);
Json to_json(const SearchOutcome& o);
Json to_json(const ShardProgress& p);
Json to_json(const PoseEstimate& e);
Json to_json(const ConvergenceReport& r);

}  // namespace adictile
