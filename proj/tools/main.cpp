#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qva/serialization.hpp"
#include "qva/uea.hpp"

using namespace qva;

namespace {

// ---------------------------------------------------------------------------
// Small input parsers.

// Variable values: "1" (take the limit toward 1 along a generic direction),
// or a monomial like "q^1/2", "e(1/3)", "e(1/3)*q^-1/2".
QMono parse_value(const std::string& s, long limit_direction) {
  if (s == "1") return QMono{1, 0, 0, Rat(limit_direction)};
  QMono m;
  size_t pos = 0;
  auto skip = [&](char c) {
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  };
  auto read_rat = [&]() {
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/'))
      ++pos;
    if (pos == start) throw CLI::ValidationError("value", "expected a rational in '" + s + "'");
    return parse_rat(s.substr(start, pos - start));
  };
  if (pos < s.size() && s[pos] == 'e') {
    ++pos;
    if (!skip('(')) throw CLI::ValidationError("value", "expected e(<turns>) in '" + s + "'");
    m.turns = frac_part(read_rat());
    if (!skip(')')) throw CLI::ValidationError("value", "expected ')' in '" + s + "'");
    skip('*');
  }
  if (pos < s.size() && s[pos] == 'q') {
    ++pos;
    if (!skip('^')) throw CLI::ValidationError("value", "expected q^<rat> in '" + s + "'");
    m.qexp = read_rat();
  }
  if (pos != s.size()) throw CLI::ValidationError("value", "trailing junk in '" + s + "'");
  return m;
}

// PBW vectors: "<terms> |hw: level=-4/3, j=-2/3>" or "<terms> |vac: level=-4/3>".
struct VectorInput {
  PBWElement v;
  Rat level;
  Rat hw = 0;
  ModuleType type = ModuleType::Verma;
};

VectorInput parse_vector_text(const std::string& text) {
  size_t bar = text.find('|');
  if (bar == std::string::npos)
    throw CLI::ValidationError("vector", "missing |...> ket with the level");
  VectorInput in;
  in.v = parse_pbw(text.substr(0, bar));
  std::string ket = text.substr(bar + 1);
  if (auto gt = ket.find('>'); gt != std::string::npos) ket.resize(gt);
  auto grab = [&](const std::string& key) -> std::string {
    size_t at = ket.find(key + "=");
    if (at == std::string::npos)
      throw CLI::ValidationError("vector", "ket is missing '" + key + "='");
    size_t start = at + key.size() + 1, end = start;
    while (end < ket.size() && ket[end] != ',' && !std::isspace(static_cast<unsigned char>(ket[end])))
      ++end;
    return ket.substr(start, end - start);
  };
  in.level = parse_rat(grab("level"));
  if (ket.find("vac") != std::string::npos) {
    in.type = ModuleType::Vacuum;
  } else {
    in.hw = parse_rat(grab("j"));
  }
  return in;
}

std::vector<ModeOp> parse_raising(const std::string& s) {
  std::vector<ModeOp> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    size_t lb = tok.find('['), rb = tok.find(']');
    if (tok.empty() || lb == std::string::npos || rb == std::string::npos)
      throw CLI::ValidationError("raising", "expected entries like e[0],f[1]");
    Gen g = tok[0] == 'e' ? Gen::E : tok[0] == 'f' ? Gen::F : Gen::H;
    out.push_back({g, std::stol(tok.substr(lb + 1, rb - lb - 1))});
  }
  return out;
}

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("file", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------
// Shared output helpers.

struct Options {
  Rat trunc = 24;
  int eps_degree = 4;
  bool pretty = false;
};

void emit_series(const Options& opt, const Puiseux& p) {
  if (opt.pretty)
    std::cout << p.str() << "\n";
  else
    std::cout << puiseux_to_json(p).dump() << "\n";
}

// ---------------------------------------------------------------------------
// Character construction shared by `char`, `mlde-fit --family`, `mlde-verify`.

struct CharRequest {
  std::string family;  // sl2-boundary | sl2-half | sl3-boundary | d4 | bp
  long u = 3;
  long j = 0;
  std::string which;
  std::string flow;
  std::string y = "1";
  std::vector<std::string> z;
};

std::vector<std::string> family_vars(const std::string& family) {
  if (family == "sl3-boundary") return {"y", "z1", "z2"};
  if (family == "d4") return {"y", "z1", "z2", "z3", "z4"};
  return {"y", "z"};
}

CharExpr build_char(const CharRequest& r) {
  CharExpr e = CharExpr::literal(bp_flowed_char());
  if (r.family == "sl2-boundary") {
    e = build_sl2_boundary_char(r.u, r.j);
    if (!r.flow.empty()) e = e.flowed(sl2_flow(parse_rat(r.flow)));
  } else if (r.family == "sl2-half") {
    Sl2HalfModule w;
    if (r.which == "L0")
      w = Sl2HalfModule::L0;
    else if (r.which == "L1")
      w = Sl2HalfModule::L1;
    else if (r.which == "D1/2")
      w = Sl2HalfModule::DplusHalf;
    else if (r.which == "D3/2")
      w = Sl2HalfModule::DplusThreeHalf;
    else
      throw CLI::ValidationError("--which", "expected L0|L1|D1/2|D3/2");
    e = build_sl2_half_char(w);
    if (!r.flow.empty()) e = e.flowed(sl2_flow(parse_rat(r.flow)));
  } else if (r.family == "sl3-boundary") {
    Sl3Module w;
    if (r.which == "vac")
      w = Sl3Module::Vac;
    else if (r.which == "L1")
      w = Sl3Module::L1;
    else if (r.which == "L2")
      w = Sl3Module::L2;
    else if (r.which == "rho-half")
      w = Sl3Module::RhoHalf;
    else
      throw CLI::ValidationError("--which", "expected vac|L1|L2|rho-half");
    e = build_sl3_boundary_char(w);
    if (r.flow == "half-lambda1")
      e = e.flowed(a2_flow_half_lambda1());
    else if (r.flow == "third-rho")
      e = e.flowed(a2_flow_third_rho());
    else if (!r.flow.empty())
      throw CLI::ValidationError("--flow", "expected half-lambda1|third-rho");
  } else if (r.family == "d4") {
    D4Module w;
    if (r.which == "vac")
      w = D4Module::Vac;
    else if (r.which == "L1")
      w = D4Module::L1;
    else if (r.which == "L3")
      w = D4Module::L3;
    else if (r.which == "L4")
      w = D4Module::L4;
    else if (r.which == "Lmid")
      w = D4Module::Lmid;
    else
      throw CLI::ValidationError("--which", "expected vac|L1|L3|L4|Lmid");
    e = build_d4_char(w);
    if (r.flow == "lambda1")
      e = e.flowed(d4_flow(1));
    else if (r.flow == "lambda3")
      e = e.flowed(d4_flow(3));
    else if (r.flow == "lambda4")
      e = e.flowed(d4_flow(4));
    else if (r.flow == "minus-half-lambda2")
      e = e.flowed(d4_flow_minus_half_lambda2());
    else if (!r.flow.empty())
      throw CLI::ValidationError("--flow", "expected lambda1|lambda3|lambda4|minus-half-lambda2");
  } else if (r.family != "bp") {
    throw CLI::ValidationError("--family", "unknown family '" + r.family + "'");
  }
  return e;
}

Puiseux evaluate_char(const CharRequest& r, const Options& opt) {
  if (r.family == "bp") return bp_flowed_char();
  CharExpr e = build_char(r);
  Specialization s;
  s.trunc = opt.trunc;
  s.eps_degree = opt.eps_degree;
  auto vars = family_vars(r.family);
  // Distinct generic limit directions per variable.
  static const long dirs[] = {1, 2, 3, 5, 7};
  std::vector<std::string> vals;
  vals.push_back(r.y);
  for (size_t i = 1; i < vars.size(); ++i)
    vals.push_back(i - 1 < r.z.size() ? r.z[i - 1] : "1");
  for (size_t i = 0; i < vars.size(); ++i)
    s.set(vars[i], parse_value(vals[i], dirs[i % 5]));
  return e.evaluate(s);
}

// The independent sigma^{-1/2}-flowed characters at y = z = 1 for the
// boundary level -2 + 2/u (labels j and u-1-j coincide there).
std::vector<Puiseux> twisted_family(long u, const Options& opt) {
  std::vector<Puiseux> out;
  for (long j = 0; 2 * j <= u - 1; ++j) {
    CharRequest r;
    r.family = "sl2-boundary";
    r.u = u;
    r.j = j;
    r.flow = "-1/2";
    out.push_back(evaluate_char(r, opt));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fusion label plumbing.

ModuleKind kind_from_name(const std::string& s) {
  if (s == "hw") return ModuleKind::HW;
  if (s == "contra") return ModuleKind::Contra;
  if (s == "tw-hw") return ModuleKind::TwHW;
  if (s == "tw-contra") return ModuleKind::TwContra;
  throw CLI::ValidationError("kind", "expected hw|contra|tw-hw|tw-contra");
}

ModuleLabel label_from_cli(const Level& lvl, const std::string& kind, const std::string& j) {
  ModuleKind k = kind_from_name(kind);
  Convention conv = (k == ModuleKind::TwHW || k == ModuleKind::TwContra) ? Convention::Twisted
                                                                         : Convention::HW;
  return {k, label_from_weight(lvl, parse_rat(j), conv)};
}

FusionResult fuse_any(const Level& lvl, const ModuleLabel& a, const ModuleLabel& b) {
  if (a.kind == ModuleKind::HW && b.kind == ModuleKind::HW)
    return fuse_hw_hw(lvl, a.weight, b.weight);
  if (a.kind == ModuleKind::TwHW && b.kind == ModuleKind::TwHW)
    return fuse_hw_twisted(lvl, a.weight, b.weight);
  return fuse_contra(lvl, a, b);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact q-series and fusion computations for admissible-level affine algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opt;
  std::string trunc_str = "24";
  app.add_option("--trunc", trunc_str, "q-expansion truncation order")->capture_default_str();
  app.add_option("--eps-degree", opt.eps_degree, "window size for limits toward 1")
      ->capture_default_str();
  app.add_flag("--pretty", opt.pretty, "human-readable output instead of JSON");

  // --- eta ---------------------------------------------------------------
  auto* c_eta = app.add_subcommand("eta", "Dedekind eta as a q-series");
  long eta_scale = 1;
  c_eta->add_option("--scale", eta_scale, "evaluate eta(scale * tau)")->capture_default_str();

  // --- theta -------------------------------------------------------------
  auto* c_theta = app.add_subcommand("theta", "Jacobi theta_i of a monomial argument");
  int theta_idx = 3;
  long theta_u = 1;
  std::string theta_arg = "q^0";
  bool theta_product = false;
  c_theta->add_option("--index", theta_idx, "theta index 1..4")->capture_default_str();
  c_theta->add_option("--arg", theta_arg, "argument monomial, e.g. q^1/2 or e(1/3)*q^-1/2")
      ->capture_default_str();
  c_theta->add_option("--nome-power", theta_u, "use q^u as the elliptic nome")
      ->capture_default_str();
  c_theta->add_flag("--product", theta_product, "use the triple-product form");

  // --- eisenstein ----------------------------------------------------------
  auto* c_eis = app.add_subcommand("eisenstein", "(twisted) Eisenstein series");
  int eis_k = 2;
  std::string eis_lambda, eis_theta;
  c_eis->add_option("--k", eis_k, "weight")->capture_default_str();
  c_eis->add_option("--lambda", eis_lambda, "twist phase parameter in [0,1)");
  c_eis->add_option("--theta", eis_theta, "twist monomial, e.g. q^1/2");

  // --- char ----------------------------------------------------------------
  auto* c_char = app.add_subcommand("char", "evaluate a module character");
  CharRequest req;
  c_char->add_option("--family", req.family, "sl2-boundary|sl2-half|sl3-boundary|d4|bp")
      ->required();
  c_char->add_option("--u", req.u, "boundary-level parameter (sl2-boundary)");
  c_char->add_option("--j", req.j, "module label (sl2-boundary)");
  c_char->add_option("--which", req.which, "module name for the other families");
  c_char->add_option("--flow", req.flow, "spectral flow amount or name");
  c_char->add_option("--y", req.y, "value for y (1 requests the limit)")->capture_default_str();
  c_char->add_option("--z", req.z, "values for z / z1..z4 (default 1 = limit)");
  bool char_expr = false;
  c_char->add_flag("--expr", char_expr, "emit the expression tree instead of evaluating");

  // --- mlde-verify -----------------------------------------------------------
  auto* c_ver = app.add_subcommand("mlde-verify", "check that an operator annihilates a series");
  std::string ver_op, ver_series, ver_through;
  CharRequest ver_req;
  long ver_family_u = 0;
  c_ver->add_option("--operator", ver_op, "operator JSON file ('-' for stdin)")->required();
  c_ver->add_option("--series", ver_series, "series JSON file ('-' for stdin)");
  c_ver->add_option("--family-u", ver_family_u,
                    "verify against every flowed boundary character at this u");
  c_ver->add_option("--through", ver_through, "check terms below this exponent");

  // --- mlde-fit -------------------------------------------------------------
  auto* c_fit = app.add_subcommand("mlde-fit", "fit the monic operator killing the solutions");
  int fit_order = 2;
  std::string fit_group = "gamma0-2";
  std::vector<std::string> fit_series;
  std::string fit_family;
  long fit_u = 0;
  c_fit->add_option("--order", fit_order, "operator order")->required();
  c_fit->add_option("--group", fit_group, "gamma0-2 | sl2z")->capture_default_str();
  c_fit->add_option("--series", fit_series, "series JSON files");
  c_fit->add_option("--family", fit_family, "built-in solution family: sl2-boundary-twisted");
  c_fit->add_option("--u", fit_u, "family parameter");

  // --- fusion ----------------------------------------------------------------
  auto* c_fus = app.add_subcommand("fusion", "fusion products at level -2 + p/q");
  long fus_p = 2, fus_q = 3;
  bool fus_all = false;
  std::string fus_a, fus_b, fus_a_kind = "hw", fus_b_kind = "hw";
  c_fus->add_option("--p", fus_p)->required();
  c_fus->add_option("--q", fus_q)->required();
  c_fus->add_flag("--all", fus_all, "emit the full table (untwisted and twisted, with zeros)");
  c_fus->add_option("--a", fus_a, "weight of the first module");
  c_fus->add_option("--b", fus_b, "weight of the second module");
  c_fus->add_option("--a-kind", fus_a_kind, "hw|contra|tw-hw|tw-contra")->capture_default_str();
  c_fus->add_option("--b-kind", fus_b_kind, "hw|contra|tw-hw|tw-contra")->capture_default_str();

  // --- zhu ---------------------------------------------------------------------
  auto* c_zhu = app.add_subcommand("zhu", "roots cutting out the half-twisted Zhu algebra");
  long zhu_p = 2, zhu_q = 3;
  c_zhu->add_option("--p", zhu_p)->required();
  c_zhu->add_option("--q", zhu_q)->required();

  // --- singular-check -----------------------------------------------------------
  auto* c_sing = app.add_subcommand("singular-check", "test a PBW vector for singularity");
  std::string sing_file, sing_vector, sing_raising;
  c_sing->add_option("file", sing_file, "vector text file ('-' for stdin)");
  c_sing->add_option("--vector", sing_vector, "vector text inline");
  c_sing->add_option("--raising", sing_raising,
                     "raising set like e[0],f[1] (default e[0],f[1]; vacuum: e[1],h[1],f[1])");

  // --- zhu-image -------------------------------------------------------------------
  auto* c_img = app.add_subcommand("zhu-image", "half-twisted Zhu image of a weight-0 vector");
  std::string img_file, img_vector;
  long img_p = 2, img_q = 3;
  c_img->add_option("file", img_file, "vector text file ('-' for stdin)");
  c_img->add_option("--vector", img_vector, "vector text inline");
  c_img->add_option("--p", img_p)->capture_default_str();
  c_img->add_option("--q", img_q)->capture_default_str();

  try {
    app.parse(argc, argv);
    opt.trunc = parse_rat(trunc_str);

    if (*c_eta) {
      emit_series(opt, dedekind_eta(opt.trunc, eta_scale));
    } else if (*c_theta) {
      QMono arg = parse_value(theta_arg, 1);
      Puiseux p = theta_product ? jacobi_theta_product(theta_idx, arg, theta_u, opt.trunc)
                                : jacobi_theta_q(theta_idx, arg, theta_u, opt.trunc);
      emit_series(opt, p);
    } else if (*c_eis) {
      if (eis_lambda.empty() && eis_theta.empty()) {
        emit_series(opt, eisenstein(eis_k, opt.trunc));
      } else {
        Rat lambda = eis_lambda.empty() ? Rat(0) : parse_rat(eis_lambda);
        QMono th = eis_theta.empty() ? QMono::one() : parse_value(eis_theta, 1);
        emit_series(opt, twisted_eisenstein(eis_k, lambda, th, opt.trunc).limit());
      }
    } else if (*c_char) {
      if (char_expr)
        std::cout << charexpr_to_json(build_char(req)).dump(opt.pretty ? 2 : -1) << "\n";
      else
        emit_series(opt, evaluate_char(req, opt));
    } else if (*c_ver) {
      MLDEOp op = mlde_from_json(Json::parse(read_source(ver_op)));
      std::vector<Puiseux> series;
      if (!ver_series.empty()) series.push_back(puiseux_from_json(Json::parse(read_source(ver_series))));
      if (ver_family_u > 0)
        for (auto& s : twisted_family(ver_family_u, opt)) series.push_back(s);
      if (series.empty())
        throw CLI::ValidationError("mlde-verify", "need --series or --family-u");
      bool ok = true;
      Json checked = Json::array();
      for (const auto& s : series) {
        Rat through =
            ver_through.empty() ? mlde_apply(op, s).trunc() : parse_rat(ver_through);
        bool one = mlde_verify(op, s, through);
        ok = ok && one;
        checked.push_back(Json{{"through", rat_str(through)}, {"annihilates", one}});
      }
      std::cout << Json{{"annihilates", ok}, {"checked", checked}}.dump() << "\n";
    } else if (*c_fit) {
      std::vector<Puiseux> sols;
      for (const auto& f : fit_series) sols.push_back(puiseux_from_json(Json::parse(read_source(f))));
      if (fit_family == "sl2-boundary-twisted") {
        if (fit_u < 3) throw CLI::ValidationError("--u", "need --u >= 3 with this family");
        for (auto& s : twisted_family(fit_u, opt)) sols.push_back(s);
      } else if (!fit_family.empty()) {
        throw CLI::ValidationError("--family", "unknown family '" + fit_family + "'");
      }
      if (sols.empty()) throw CLI::ValidationError("mlde-fit", "no solution series given");
      MLDEGroup g = fit_group == "sl2z" ? MLDEGroup::FullSL2Z : MLDEGroup::Gamma0_2;
      std::cout << mlde_to_json(mlde_fit(sols, fit_order, g)).dump(opt.pretty ? 2 : -1) << "\n";
    } else if (*c_fus) {
      Level lvl(fus_p, fus_q);
      std::vector<std::pair<std::pair<ModuleLabel, ModuleLabel>, FusionResult>> pairs;
      if (fus_all) {
        for (const auto& a : admissible_labels(lvl, Convention::HW))
          for (const auto& b : admissible_labels(lvl, Convention::HW))
            pairs.push_back({{{ModuleKind::HW, a}, {ModuleKind::HW, b}}, fuse_hw_hw(lvl, a, b)});
        for (const auto& a : admissible_labels(lvl, Convention::Twisted))
          for (const auto& b : admissible_labels(lvl, Convention::Twisted))
            pairs.push_back(
                {{{ModuleKind::TwHW, a}, {ModuleKind::TwHW, b}}, fuse_hw_twisted(lvl, a, b)});
      } else {
        if (fus_a.empty() || fus_b.empty())
          throw CLI::ValidationError("fusion", "need --all or both --a and --b");
        ModuleLabel a = label_from_cli(lvl, fus_a_kind, fus_a);
        ModuleLabel b = label_from_cli(lvl, fus_b_kind, fus_b);
        pairs.push_back({{a, b}, fuse_any(lvl, a, b)});
      }
      if (opt.pretty) {
        for (const auto& [ab, res] : pairs)
          std::cout << ab.first.str(lvl) << " x " << ab.second.str(lvl) << " = "
                    << (res.summands.empty() ? "0" : res.str(lvl)) << "\n";
      } else {
        std::cout << fusion_table_to_json(lvl, pairs).dump() << "\n";
      }
    } else if (*c_zhu) {
      Level lvl(zhu_p, zhu_q);
      Json roots = Json::array();
      for (const auto& r : twisted_zhu_roots(lvl)) roots.push_back(rat_str(r));
      std::cout << Json{{"roots", roots}}.dump() << "\n";
    } else if (*c_sing) {
      std::string text = !sing_vector.empty() ? sing_vector : read_source(sing_file);
      VectorInput in = parse_vector_text(text);
      std::vector<ModeOp> raising =
          !sing_raising.empty() ? parse_raising(sing_raising)
          : in.type == ModuleType::Vacuum
              ? std::vector<ModeOp>{{Gen::E, 1}, {Gen::H, 1}, {Gen::F, 1}}
              : std::vector<ModeOp>{{Gen::E, 0}, {Gen::F, 1}};
      bool ok = is_singular(in.v, in.level, in.hw, raising, in.type);
      std::cout << Json{{"singular", ok}}.dump() << "\n";
    } else if (*c_img) {
      std::string text = !img_vector.empty() ? img_vector : read_source(img_file);
      VectorInput in = parse_vector_text(text);
      Level lvl(img_p, img_q);
      if (in.level != lvl.ell())
        throw CLI::ValidationError("zhu-image", "ket level does not match --p/--q");
      auto coeffs = zhu_twisted_image(in.v, lvl);
      if (opt.pretty) {
        bool first = true;
        for (size_t k = coeffs.size(); k-- > 0;) {
          if (coeffs[k] == 0) continue;
          std::cout << (first ? "" : " + ") << "(" << rat_str(coeffs[k]) << ")x^" << k;
          first = false;
        }
        std::cout << (first ? "0\n" : "\n");
      } else {
        Json out = Json::array();
        for (const auto& c : coeffs) out.push_back(rat_str(c));
        std::cout << Json{{"coeffs", out}}.dump() << "\n";
      }
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "math error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
}
