#pragma once

// The central tiling C and its enhancement CE.
//
// Every edge carries the bracket of its own line coordinate. CE adds a
// boldness bit (the edge lies on the border of the intersection of a
// vertical and a horizontal domain of equal rank) and a pointer toward the
// nearest orthogonal line of the same rank. The unranked axes take the
// colors of a configurable default central cross.

#include <cstdint>
#include <string>

#include "adictile/adic.hpp"
#include "adictile/edge.hpp"
#include "adictile/patch.hpp"

namespace adictile {

// The affine map p -> sym(p) + (dx, dy) applied to CE with the given axis
// defaults. Reflections act on shifts: s * (t, r) = (s(t), s r).
struct Pose {
  Adic dx;
  Adic dy;
  Sym sym;
  int default_x = 0;  // bracket of the unranked vertical axis
  int default_y = 0;  // bracket of the unranked horizontal axis

  static Pose identity(int precision = kDefaultPrecision);
  static Pose shifted(std::int64_t dx, std::int64_t dy, Sym sym = {}, int precision = kDefaultPrecision);

  int precision() const { return dx.precision(); }
  friend bool operator==(const Pose&, const Pose&) = default;
};

Pose operator*(const Sym& s, const Pose& p);
// Affine composition (a then applied after b); defaults come from b.
Pose compose(const Pose& a, const Pose& b);

// Edge of the untransformed CE that lands on e under the pose.
struct BaseEdge {
  Orientation orientation;
  Adic line;
  Adic along;
};
BaseEdge base_edge(const EdgeRef& e, const Pose& pose);

// Rank of the line carrying e, measured in the untransformed tiling.
Rank line_rank(const EdgeRef& e, const Pose& pose);
bool on_axis(const EdgeRef& e, const Pose& pose);

EdgeColor ce_color(const EdgeRef& e, const Pose& pose, Alphabet alphabet = Alphabet::Base);
Patch generate(const Pose& pose, const Rect& rect, Alphabet alphabet = Alphabet::Base);

Patch apply_symmetry(const Patch& p, const Sym& s);
// Keeps the bracket bit only (the map onto the first color component).
Patch project(const Patch& p);

enum class RenderFormat { Ascii, Svg };
inline constexpr std::int64_t kDefaultRenderLimit = 1 << 20;
// Overlay squares (block grids) are drawn in svg only.
std::string render(const Patch& p, RenderFormat format, std::int64_t area_limit = kDefaultRenderLimit,
                   const std::vector<Rect>& overlay = {});

}  // namespace adictile
