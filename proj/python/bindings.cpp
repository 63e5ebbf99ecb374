// Python face of the library: the command cores, returning the same JSON and
// CSV text the CLI prints.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subdivlab/analysis.hpp"
#include "subdivlab/corpus.hpp"
#include "subdivlab/engine.hpp"

namespace py = pybind11;
namespace sl = subdivlab;

namespace {

std::string analyze(const std::string& spec, bool is_example, const std::string& params,
                    std::optional<int> order) {
  sl::Mask mask = sl::mask_from_spec(spec, is_example, params);
  return sl::dump_json(sl::analyze_report(mask, order));
}

std::string subdivide(const std::string& spec, bool is_example, const std::string& params,
                      int deriv, int level, const std::optional<std::string>& window) {
  sl::Mask mask = sl::mask_from_spec(spec, is_example, params);
  sl::derivative_guard(mask, deriv);
  sl::Jet filter = sl::ensure_filter(mask, deriv);
  std::optional<sl::Rat> win;
  if (window) {
    sl::GaussRat w = sl::eval_expr(*window, sl::parse_params(params));
    if (!w.is_real() || w.re <= 0) throw sl::ParseError("window must be a positive rational");
    win = w.re;
  }
  return sl::samples_csv(
      sl::limit_function_samples(mask, filter, sl::delta_id(mask.r), deriv, level, win));
}

std::string rates(const std::string& spec, bool is_example, const std::string& params,
                  const std::string& u, int levels, int tail, std::optional<int> deriv) {
  sl::Mask mask = sl::mask_from_spec(spec, is_example, params);
  sl::Seq vec(mask.r, 1);
  std::optional<int> jtag;
  bool found = false;
  if (is_example) {
    // Vector names recorded with the example resolve directly.
    sl::LoadedExample ex = sl::load_example(spec, params);
    if (ex.doc.at("expect").contains("vectors"))
      for (const sl::Json& vj : ex.doc.at("expect").at("vectors"))
        if (vj.at("name").get<std::string>() == u) {
          vec = sl::parse_uvec(vj, mask.r, ex.params, &jtag);
          found = true;
        }
  }
  if (!found) vec = sl::parse_uvec(sl::load_json_text(u), mask.r, sl::parse_params(params), &jtag);
  if (deriv) jtag = deriv;
  return sl::rates_csv(mask, vec, jtag, levels, tail);
}

std::vector<std::pair<bool, std::string>> corpus_run(const std::string& id,
                                                     const std::string& params, int levels) {
  std::vector<std::pair<bool, std::string>> out;
  for (const sl::CheckLine& ln : sl::run_example_checks(id, params, levels))
    out.emplace_back(ln.pass, ln.text);
  return out;
}

std::string design(int lo, int hi, int r, int order, const std::string& filter_json,
                   const std::string& center, const std::vector<int>& signs,
                   const std::string& params_text) {
  sl::ParamMap params = sl::parse_params(params_text);
  sl::Jet filter = sl::parse_filter(sl::load_json_text(filter_json), r, params);
  std::optional<sl::Symmetry> sym;
  if (!signs.empty()) {
    sl::Symmetry s;
    sl::GaussRat c = sl::eval_expr(center.empty() ? "0" : center, params);
    if (!c.is_real()) throw sl::ParseError("symmetry center must be real");
    s.center = c.re;
    for (int sg : signs) {
      if (sg != 1 && sg != -1) throw sl::ParseError("symmetry signs must be +-1");
      s.signs.push_back(sg);
    }
    if (static_cast<int>(s.signs.size()) != r) throw sl::ParseError("need r symmetry signs");
    sym = std::move(s);
  }
  return sl::dump_json(sl::family_to_json(sl::design_mask(lo, hi, r, sym, order, filter), order));
}

}  // namespace

PYBIND11_MODULE(_subdivlab, m) {
  m.doc() = "vector subdivision schemes with matrix masks: exact rational core";

  py::register_exception<sl::SubdivError>(m, "SubdivError", PyExc_RuntimeError);
  py::register_exception<sl::ParseError>(m, "ParseError", PyExc_ValueError);

  m.def("corpus_ids", &sl::corpus_ids, "ids of the built-in examples");
  m.def(
      "corpus_text", [](const std::string& id) { return std::string(sl::corpus_text(id)); },
      py::arg("id"), "raw JSON text of a built-in example");
  m.def("analyze", &analyze, py::arg("spec"), py::arg("is_example") = false,
        py::arg("params") = "", py::arg("order") = std::optional<int>{},
        "full analysis report as JSON text; spec is a mask file path or an example id");
  m.def("subdivide", &subdivide, py::arg("spec"), py::arg("is_example") = false,
        py::arg("params") = "", py::arg("deriv") = 0, py::arg("level") = 4,
        py::arg("window") = std::optional<std::string>{},
        "exact limit-function samples on the level-n dyadic grid, as CSV text");
  m.def("rates", &rates, py::arg("spec"), py::arg("is_example") = false, py::arg("params") = "",
        py::arg("u") = "", py::arg("levels") = 10, py::arg("tail") = 5,
        py::arg("deriv") = std::optional<int>{},
        "error curve E_u(n) as CSV text; u is a recorded vector name (with is_example) or a "
        "JSON uvec document");
  m.def("corpus_run", &corpus_run, py::arg("id"), py::arg("params") = "", py::arg("levels") = 10,
        "run an example's recorded checks; returns [(passed, text), ...]");
  m.def("design", &design, py::arg("lo"), py::arg("hi"), py::arg("r"), py::arg("order"),
        py::arg("filter_json"), py::arg("center") = "", py::arg("signs") = std::vector<int>{},
        py::arg("params") = "",
        "solve for the mask family with the given sum rules, as JSON text");
}
