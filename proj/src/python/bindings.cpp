#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qva/characters.hpp"
#include "qva/mlde.hpp"
#include "qva/serialization.hpp"
#include "qva/uea.hpp"

namespace py = pybind11;
using namespace qva;

namespace {

MLDEGroup group_of(const std::string& s) {
  if (s == "Gamma0_2") return MLDEGroup::Gamma0_2;
  if (s == "full_SL2Z") return MLDEGroup::FullSL2Z;
  throw std::invalid_argument("unknown group '" + s + "'");
}

Gen gen_of(char c) {
  switch (c) {
    case 'e':
      return Gen::E;
    case 'h':
      return Gen::H;
    case 'f':
      return Gen::F;
  }
  throw std::invalid_argument(std::string("unknown generator '") + c + "'");
}

std::vector<ModeOp> raising_of(const std::vector<std::pair<std::string, long>>& ops) {
  std::vector<ModeOp> out;
  for (const auto& [g, m] : ops) {
    if (g.size() != 1) throw std::invalid_argument("generator must be e, h, or f");
    out.push_back({gen_of(g[0]), m});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact q-series characters, differential operators, and fusion rules";

  py::register_exception<MathError>(m, "MathError");

  m.def(
      "eta",
      [](const std::string& trunc, long scale) {
        return puiseux_to_json(dedekind_eta(parse_rat(trunc), scale)).dump();
      },
      py::arg("trunc"), py::arg("scale") = 1,
      "Dedekind eta series of q^scale as a JSON string");

  m.def(
      "sl2_boundary_char",
      [](long u, long j, const std::string& flow, const std::string& trunc) {
        Specialization s;
        s.trunc = parse_rat(trunc);
        s.limit("y", Rat(1));
        s.limit("z", Rat(2));
        CharExpr e = build_sl2_boundary_char(u, j);
        Rat ell = parse_rat(flow);
        if (ell != 0) e = e.flowed(sl2_flow(ell));
        return puiseux_to_json(e.evaluate(s)).dump();
      },
      py::arg("u"), py::arg("j"), py::arg("flow") = "0", py::arg("trunc") = "8",
      "boundary-level character, flowed and specialized to y = z = 1");

  m.def(
      "mlde_verify",
      [](const std::string& op_json, const std::string& series_json, const std::string& through) {
        MLDEOp op = mlde_from_json(Json::parse(op_json));
        Puiseux f = puiseux_from_json(Json::parse(series_json));
        return mlde_verify(op, f, parse_rat(through));
      },
      py::arg("op"), py::arg("series"), py::arg("through"));

  m.def(
      "mlde_fit",
      [](const std::vector<std::string>& series, int order, const std::string& group) {
        std::vector<Puiseux> sols;
        for (const auto& s : series) sols.push_back(puiseux_from_json(Json::parse(s)));
        return mlde_to_json(mlde_fit(sols, order, group_of(group))).dump();
      },
      py::arg("series"), py::arg("order"), py::arg("group") = "Gamma0_2");

  m.def(
      "fusion_table",
      [](long p, long q) {
        Level l(p, q);
        std::vector<std::pair<std::pair<ModuleLabel, ModuleLabel>, FusionResult>> pairs;
        for (const auto& a : admissible_labels(l, Convention::HW))
          for (const auto& b : admissible_labels(l, Convention::HW))
            pairs.push_back({{{ModuleKind::HW, a}, {ModuleKind::HW, b}}, fuse_hw_hw(l, a, b)});
        for (const auto& a : admissible_labels(l, Convention::Twisted))
          for (const auto& b : admissible_labels(l, Convention::Twisted))
            pairs.push_back(
                {{{ModuleKind::TwHW, a}, {ModuleKind::TwHW, b}}, fuse_hw_twisted(l, a, b)});
        return fusion_table_to_json(l, pairs).dump();
      },
      py::arg("p"), py::arg("q"), "untwisted and twisted fusion tables at level -2 + p/q");

  m.def(
      "zhu_roots",
      [](long p, long q) {
        std::vector<std::string> out;
        for (const Rat& r : twisted_zhu_roots(Level(p, q))) out.push_back(rat_str(r));
        return out;
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "is_singular",
      [](const std::string& expr, const std::string& level, const std::string& hw,
         const std::vector<std::pair<std::string, long>>& raising, bool vacuum) {
        return is_singular(parse_pbw(expr), parse_rat(level), parse_rat(hw), raising_of(raising),
                           vacuum ? ModuleType::Vacuum : ModuleType::Verma);
      },
      py::arg("expr"), py::arg("level"), py::arg("hw") = "0",
      py::arg("raising") = std::vector<std::pair<std::string, long>>{{"e", 0}, {"f", 1}},
      py::arg("vacuum") = false);

  m.def(
      "zhu_image",
      [](const std::string& expr, long p, long q) {
        std::vector<std::string> out;
        for (const Rat& c : zhu_twisted_image(parse_pbw(expr), Level(p, q)))
          out.push_back(rat_str(c));
        return out;
      },
      py::arg("expr"), py::arg("p") = 2, py::arg("q") = 3,
      "coefficients of the half-twisted Zhu image, low degree first");
}
