#include "qva/serialization.hpp"

#include <stdexcept>

namespace qva {

Json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  return parse_rat(j.get<std::string>());
}

Json cyc_to_json(const Cyc& c) {
  Cyc r = c.reduced();
  if (r.is_rational()) return rat_to_json(r.to_rational());
  Json coeffs = Json::array();
  for (const auto& x : r.coeffs()) coeffs.push_back(rat_to_json(x));
  return Json{{"order", r.order()}, {"coeffs", coeffs}};
}

Cyc cyc_from_json(const Json& j) {
  if (!j.is_object()) return Cyc(rat_from_json(j));
  std::vector<Rat> coeffs;
  for (const auto& x : j.at("coeffs")) coeffs.push_back(rat_from_json(x));
  return Cyc(j.at("order").get<int>(), std::move(coeffs));
}

Json puiseux_to_json(const Puiseux& p) {
  Json terms = Json::array();
  long m = p.ram();
  for (const auto& [e, c] : p.terms()) {
    Rat num = e * Rat(m);
    if (!is_integer(num)) throw MathError("puiseux_to_json: exponent off lattice");
    terms.push_back(Json::array({std::to_string(to_long(num)), cyc_to_json(c)}));
  }
  return Json{{"ram", m}, {"trunc", rat_to_json(p.trunc())}, {"terms", terms}};
}

Puiseux puiseux_from_json(const Json& j) {
  long m = j.at("ram").get<long>();
  Rat trunc = rat_from_json(j.at("trunc"));
  Puiseux p(trunc);
  for (const auto& t : j.at("terms")) {
    Rat num = parse_rat(t.at(0).get<std::string>());
    p += Puiseux::monomial(cyc_from_json(t.at(1)), num / Rat(m), trunc);
  }
  return p;
}

Json varmono_to_json(const VarMono& m) {
  Json vars = Json::object();
  for (const auto& [v, e] : m.vars) vars[v] = rat_to_json(e);
  Json out = Json::object();
  if (m.coef != 1) out["coef"] = rat_to_json(m.coef);
  if (m.turns != 0) out["turns"] = rat_to_json(m.turns);
  if (m.qexp != 0) out["q"] = rat_to_json(m.qexp);
  if (!vars.empty()) out["vars"] = vars;
  return out;
}

VarMono varmono_from_json(const Json& j) {
  VarMono m;
  if (j.contains("coef")) m.coef = rat_from_json(j.at("coef"));
  if (j.contains("turns")) m.turns = rat_from_json(j.at("turns"));
  if (j.contains("q")) m.qexp = rat_from_json(j.at("q"));
  if (j.contains("vars"))
    for (const auto& [v, e] : j.at("vars").items()) m.vars[v] = rat_from_json(e);
  return m;
}

Json charexpr_to_json(const CharExpr& e) {
  const auto& n = e.node();
  using K = CharExpr::Kind;
  switch (n.kind) {
    case K::Eta:
      return Json{{"kind", "eta"}, {"scale", n.scale}};
    case K::Theta:
      return Json{{"kind", "theta"},
                  {"index", n.idx},
                  {"nome_power", n.u},
                  {"arg", varmono_to_json(n.arg)}};
    case K::ClassicalTheta:
      return Json{{"kind", "classical_theta"}, {"m", n.idx}, {"arg", varmono_to_json(n.arg)}};
    case K::TwistedE:
      return Json{{"kind", "twisted_e"},
                  {"weight", n.idx},
                  {"lambda", rat_to_json(n.lambda)},
                  {"arg", varmono_to_json(n.arg)}};
    case K::Literal:
      return Json{{"kind", "literal"}, {"series", puiseux_to_json(n.lit)}};
    case K::Mono:
      return Json{{"kind", "mono"}, {"value", varmono_to_json(n.arg)}};
    case K::Sum: {
      Json parts = Json::array();
      for (size_t i = 0; i < n.kids.size(); ++i)
        parts.push_back(Json{{"weight", cyc_to_json(n.weights[i])},
                             {"term", charexpr_to_json(n.kids[i])}});
      return Json{{"kind", "sum"}, {"parts", parts}};
    }
    case K::Product: {
      Json parts = Json::array();
      for (const auto& k : n.kids) parts.push_back(charexpr_to_json(k));
      return Json{{"kind", "product"}, {"parts", parts}};
    }
    case K::Quotient:
      return Json{{"kind", "quotient"},
                  {"num", charexpr_to_json(n.kids[0])},
                  {"den", charexpr_to_json(n.kids[1])}};
    case K::Pow:
      return Json{{"kind", "pow"}, {"base", charexpr_to_json(n.kids[0])}, {"exp", n.pw}};
  }
  throw std::logic_error("charexpr_to_json: unknown node kind");
}

CharExpr charexpr_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "eta") return CharExpr::eta(j.at("scale").get<long>());
  if (kind == "theta")
    return CharExpr::theta(j.at("index").get<int>(), varmono_from_json(j.at("arg")),
                           j.at("nome_power").get<long>());
  if (kind == "classical_theta")
    return CharExpr::classical(j.at("m").get<int>(), varmono_from_json(j.at("arg")));
  if (kind == "twisted_e")
    return CharExpr::twisted_e(j.at("weight").get<int>(), rat_from_json(j.at("lambda")),
                               varmono_from_json(j.at("arg")));
  if (kind == "literal") return CharExpr::literal(puiseux_from_json(j.at("series")));
  if (kind == "mono") return CharExpr::mono(varmono_from_json(j.at("value")));
  if (kind == "sum") {
    std::vector<std::pair<Cyc, CharExpr>> parts;
    for (const auto& p : j.at("parts"))
      parts.emplace_back(cyc_from_json(p.at("weight")), charexpr_from_json(p.at("term")));
    return CharExpr::sum(std::move(parts));
  }
  if (kind == "product") {
    std::vector<CharExpr> parts;
    for (const auto& p : j.at("parts")) parts.push_back(charexpr_from_json(p));
    return CharExpr::product(std::move(parts));
  }
  if (kind == "quotient")
    return CharExpr::quotient(charexpr_from_json(j.at("num")), charexpr_from_json(j.at("den")));
  if (kind == "pow")
    return CharExpr::pow(charexpr_from_json(j.at("base")), j.at("exp").get<long>());
  throw std::invalid_argument("charexpr_from_json: unknown kind '" + kind + "'");
}

static std::string group_name(MLDEGroup g) {
  return g == MLDEGroup::FullSL2Z ? "full_SL2Z" : "Gamma0_2";
}

static MLDEGroup group_from_name(const std::string& s) {
  if (s == "full_SL2Z") return MLDEGroup::FullSL2Z;
  if (s == "Gamma0_2") return MLDEGroup::Gamma0_2;
  throw std::invalid_argument("unknown modular group '" + s + "'");
}

BasisForm basis_form_from_name(MLDEGroup g, const std::string& name) {
  for (int r = 1; r <= 16; ++r)
    for (const auto& b : weight_basis(g, r))
      if (b.name() == name) return b;
  throw std::invalid_argument("unknown basis form '" + name + "'");
}

Json mlde_to_json(const MLDEOp& op) {
  Json coeffs = Json::array();
  for (int r = 1; r <= op.order; ++r)
    for (const auto& [w, b] : op.coeffs[static_cast<size_t>(r - 1)])
      coeffs.push_back(Json{{"at", op.order - r},
                            {"basis", b.name()},
                            {"weight", rat_to_json(w)}});
  return Json{{"order", op.order}, {"group", group_name(op.group)}, {"coeffs", coeffs}};
}

MLDEOp mlde_from_json(const Json& j) {
  MLDEOp op;
  op.order = j.at("order").get<int>();
  op.group = group_from_name(j.at("group").get<std::string>());
  op.coeffs.resize(static_cast<size_t>(op.order));
  for (const auto& c : j.at("coeffs")) {
    int r = op.order - c.at("at").get<int>();
    if (r < 1 || r > op.order)
      throw std::invalid_argument("mlde_from_json: coefficient order out of range");
    op.coeffs[static_cast<size_t>(r - 1)].emplace_back(
        rat_from_json(c.at("weight")),
        basis_form_from_name(op.group, c.at("basis").get<std::string>()));
  }
  return op;
}

Json fusion_table_to_json(
    const Level& lvl,
    const std::vector<std::pair<std::pair<ModuleLabel, ModuleLabel>, FusionResult>>& pairs) {
  Json out;
  out["level"] = Json{{"p", lvl.p}, {"q", lvl.q}};
  Json jp = Json::array();
  for (const auto& [ab, res] : pairs) {
    Json summands = Json::array();
    for (const auto& s : res.summands) summands.push_back(s.str(lvl));
    jp.push_back(Json{{"a", ab.first.str(lvl)}, {"b", ab.second.str(lvl)}, {"result", summands}});
  }
  out["pairs"] = jp;
  return out;
}

}  // namespace qva
