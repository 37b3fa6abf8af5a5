// Thin bindings. Reports cross the boundary as JSON text; the Python
// package turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "adictile/bars.hpp"
#include "adictile/blocks.hpp"
#include "adictile/cli.hpp"
#include "adictile/coords1d.hpp"
#include "adictile/decode2d.hpp"
#include "adictile/enumerate.hpp"
#include "adictile/error.hpp"
#include "adictile/palette.hpp"
#include "adictile/report_json.hpp"
#include "adictile/tiling2d.hpp"

namespace py = pybind11;
using namespace adictile;

namespace {

using Box = std::array<std::int64_t, 4>;

Rect rect_of(const Box& b) { return Rect{b[0], b[1], b[2], b[3]}; }

// Shifts are Python ints, reduced mod 2^precision.
Adic adic_of(const py::int_& v, int precision) {
  const py::int_ mask((py::int_(1).attr("__lshift__")(precision)).attr("__sub__")(1));
  return Adic(v.attr("__and__")(mask).cast<std::uint64_t>(), precision);
}

Pose pose_of(const py::int_& dx, const py::int_& dy, const std::string& sym, int default_x, int default_y,
             int precision) {
  return Pose{adic_of(dx, precision), adic_of(dy, precision), Sym::from_name(sym), default_x, default_y};
}

const PlusPalette& palette_named(const std::string& name, Alphabet a) {
  if (name == "ce") return ce_palette(a);
  if (name == "ce-axes") return ce_palette_with_axes(a);
  throw Error(ErrorCode::BadInput, "palette must be ce or ce-axes");
}

EdgeRef edge_of(const std::string& o, std::int64_t x, std::int64_t y) {
  if (o != "V" && o != "H") throw Error(ErrorCode::BadInput, "orientation must be V or H");
  return EdgeRef{o == "V" ? Orientation::V : Orientation::H, x, y};
}

}  // namespace

PYBIND11_MODULE(_adictile, m) {
  m.doc() = "ce tilings, palettes and exhaustive checks";

  static py::exception<Error> error(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<Patch>(m, "Patch")
      .def_property_readonly("rect", [](const Patch& p) {
        return Box{p.rect().x0, p.rect().y0, p.rect().x1, p.rect().y1};
      })
      .def_property_readonly("alphabet", [](const Patch& p) { return std::string(to_string(p.alphabet())); })
      .def("__len__", &Patch::edge_count)
      .def("code", [](const Patch& p, const std::string& o, std::int64_t x, std::int64_t y) {
        const EdgeRef e = edge_of(o, x, y);
        if (!p.has(e)) throw py::index_error("edge outside the window");
        return p.code(e);
      }, py::arg("orientation"), py::arg("x"), py::arg("y"))
      .def("set_code", [](Patch& p, const std::string& o, std::int64_t x, std::int64_t y, std::uint8_t c) {
        const EdgeRef e = edge_of(o, x, y);
        if (!p.has(e)) throw py::index_error("edge outside the window");
        p.set_code(e, c);
      }, py::arg("orientation"), py::arg("x"), py::arg("y"), py::arg("code"))
      .def("to_text", [](const Patch& p) {
        std::ostringstream s;
        write_patch(s, p);
        return s.str();
      })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream s(text);
        return read_patch(s);
      })
      .def("__eq__", [](const Patch& a, const Patch& b) { return a == b; });

  m.def("generate", [](const Box& rect, const py::int_& dx, const py::int_& dy, const std::string& sym,
                       const std::string& alphabet, int default_x, int default_y, int precision) {
    return generate(pose_of(dx, dy, sym, default_x, default_y, precision), rect_of(rect),
                    alphabet_from_string(alphabet));
  }, py::arg("rect"), py::arg("dx") = 0, py::arg("dy") = 0, py::arg("sym") = "e", py::arg("alphabet") = "base",
        py::arg("default_x") = 0, py::arg("default_y") = 0, py::arg("precision") = kDefaultPrecision);

  m.def("render", [](const Patch& p, const std::string& format) {
    return render(p, format == "svg" ? RenderFormat::Svg : RenderFormat::Ascii);
  }, py::arg("patch"), py::arg("format") = "ascii");

  m.def("verify_json", [](const Patch& p, const std::string& palette) {
    return to_json(verify(p, palette_named(palette, p.alphabet())), p.alphabet()).dump();
  }, py::arg("patch"), py::arg("palette") = "ce");

  m.def("palette_json", [](std::int64_t radius, const std::string& alphabet) {
    return to_json(extract_plus_palette({Pose::identity()}, radius, alphabet_from_string(alphabet))).dump();
  }, py::arg("radius") = 256, py::arg("alphabet") = "base");

  m.def("infer_pose_json", [](const Patch& p) { return to_json(infer_pose(p)).dump(); }, py::arg("patch"));

  m.def("aperiodicity", &aperiodicity_check, py::arg("patch"), py::arg("max_period"));

  m.def("bars_json", [](const Patch& p) { return to_json(bar_histogram(p)).dump(); }, py::arg("patch"));
  m.def("crosses_json", [](const Patch& p) { return to_json(classify_crosses(p)).dump(); }, py::arg("patch"));

  m.def("lemma1_json", [](const Patch& p, int k) { return to_json(check_lemma1(p, k)).dump(); }, py::arg("patch"),
        py::arg("k"));

  m.def("remark1_json", [](int k, std::int64_t i, std::int64_t lo, std::int64_t hi) {
    return to_json(remark1_report(k, i, lo, hi)).dump();
  }, py::arg("k"), py::arg("i"), py::arg("lo"), py::arg("hi"));

  m.def("torus_json", [] { return to_json(torus_impossibility()).dump(); });
  m.def("parity_matchings", &parity_matchings, py::arg("n"));

  m.def("count_boxes", [](int width, int height, const std::string& alphabet, bool symmetry, int threads) {
    SearchConfig cfg;
    cfg.width = width;
    cfg.height = height;
    cfg.alphabet = alphabet_from_string(alphabet);
    cfg.symmetry_reduction = symmetry;
    cfg.threads = threads;
    py::gil_scoped_release release;
    return enumerate_boxes(ce_palette(cfg.alphabet), cfg).count;
  }, py::arg("width"), py::arg("height"), py::arg("alphabet") = "base", py::arg("symmetry") = false,
        py::arg("threads") = 1);

  m.def("levitsky_json", [](int w, int threads) {
    RunOptions opt;
    opt.threads = threads;
    py::gil_scoped_release release;
    return to_json(levitsky_check(w, opt)).dump();
  }, py::arg("w"), py::arg("threads") = 1);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"adictile"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
