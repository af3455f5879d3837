#include "qva/characters.hpp"

#include <sstream>

namespace qva {

VarMono VarMono::operator*(const VarMono& o) const {
  VarMono m;
  m.coef = coef * o.coef;
  m.turns = frac_part(turns + o.turns);
  m.qexp = qexp + o.qexp;
  m.vars = vars;
  for (const auto& [v, e] : o.vars) {
    Rat& x = m.vars[v];
    x += e;
    if (x == 0) m.vars.erase(v);
  }
  return m;
}

VarMono VarMono::pow(const Rat& r) const {
  VarMono m;
  Rat c = coef < 0 ? -coef : coef;
  auto cr = pow_rat_exact(c, r);
  if (!cr) throw MathError("VarMono::pow: coefficient has no exact rational power");
  m.coef = *cr;
  Rat t = turns + (coef < 0 ? Rat(1, 2) : Rat(0));
  m.turns = frac_part(t * r);
  m.qexp = qexp * r;
  for (const auto& [v, e] : vars) {
    Rat x = e * r;
    if (x != 0) m.vars[v] = x;
  }
  return m;
}

std::string VarMono::str() const {
  std::ostringstream os;
  os << rat_str(coef);
  if (turns != 0) os << "*e(" << rat_str(turns) << ")";
  if (qexp != 0) os << "*q^(" << rat_str(qexp) << ")";
  for (const auto& [v, e] : vars) os << "*" << v << "^(" << rat_str(e) << ")";
  return os.str();
}

VarMono FlowData::substituted(const VarMono& m) const {
  VarMono out = m;
  // z_i -> z_i q^{shift_i} on the original z exponents.
  for (const auto& [v, s] : shift) {
    auto it = m.vars.find(v);
    if (it != m.vars.end()) out.qexp += it->second * s;
  }
  // y -> y * y_image.
  auto ity = m.vars.find("y");
  if (ity != m.vars.end()) {
    Rat a = ity->second;
    out.qexp += a * y_image.qexp;
    for (const auto& [v, e] : y_image.vars) {
      Rat& x = out.vars[v];
      x += a * e;
      if (x == 0) out.vars.erase(v);
    }
  }
  return out;
}

FlowData sl2_flow(const Rat& ell) {
  FlowData f;
  f.y_image = VarMono::var("z", ell) * VarMono::q_power(ell * ell / 4);
  f.shift["z"] = ell / 2;
  return f;
}

FlowData a2_flow_half_lambda1() {
  FlowData f;
  f.y_image = VarMono::var("z1", Rat(1, 3)) * VarMono::var("z2", Rat(1, 6)) *
              VarMono::q_power(Rat(1, 12));
  f.shift["z1"] = Rat(1, 2);
  return f;
}

FlowData a2_flow_third_rho() {
  FlowData f;
  f.y_image = VarMono::var("z1", Rat(1, 3)) * VarMono::var("z2", Rat(1, 3)) *
              VarMono::q_power(Rat(1, 9));
  f.shift["z1"] = Rat(1, 3);
  f.shift["z2"] = Rat(1, 3);
  return f;
}

FlowData d4_flow(int i) {
  FlowData f;
  Rat h(1, 2);
  switch (i) {
    case 1:
      f.y_image = VarMono::var("z1") * VarMono::var("z2") * VarMono::var("z3", h) *
                  VarMono::var("z4", h) * VarMono::q_power(h);
      f.shift["z1"] = 1;
      break;
    case 3:
      f.y_image = VarMono::var("z1", h) * VarMono::var("z2") * VarMono::var("z3") *
                  VarMono::var("z4", h) * VarMono::q_power(h);
      f.shift["z3"] = 1;
      break;
    case 4:
      f.y_image = VarMono::var("z1", h) * VarMono::var("z2") * VarMono::var("z3", h) *
                  VarMono::var("z4") * VarMono::q_power(h);
      f.shift["z4"] = 1;
      break;
    default:
      throw std::invalid_argument("d4_flow: direction must be 1, 3 or 4");
  }
  return f;
}

FlowData d4_flow_minus_half_lambda2() {
  FlowData f;
  Rat h(1, 2);
  f.y_image = VarMono::var("z1", h) * VarMono::var("z2") * VarMono::var("z3", h) *
              VarMono::var("z4", h) * VarMono::q_power(Rat(1, 4));
  f.shift["z2"] = Rat(-1, 2);
  return f;
}

// --- CharExpr -------------------------------------------------------------

namespace {

std::shared_ptr<const CharExpr::Node> make_node(CharExpr::Node n) {
  return std::make_shared<const CharExpr::Node>(std::move(n));
}

QMono substituted_value(const VarMono& m, const Specialization& s) {
  QMono out{m.coef, m.turns, m.qexp, 0};
  for (const auto& [v, e] : m.vars) {
    auto it = s.assign.find(v);
    if (it == s.assign.end())
      throw std::invalid_argument("evaluate: unbound variable " + v);
    out = out * it->second.pow(e);
  }
  return out;
}

}  // namespace

CharExpr CharExpr::eta(long scale) {
  Node n;
  n.kind = Kind::Eta;
  n.scale = scale;
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::theta(int idx, const VarMono& arg, long u) {
  Node n;
  n.kind = Kind::Theta;
  n.idx = idx;
  n.arg = arg;
  n.u = u;
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::classical(int m, const VarMono& arg) {
  Node n;
  n.kind = Kind::ClassicalTheta;
  n.idx = m;
  n.arg = arg;
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::twisted_e(int k, const Rat& lambda, const VarMono& arg) {
  Node n;
  n.kind = Kind::TwistedE;
  n.idx = k;
  n.lambda = lambda;
  n.arg = arg;
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::literal(const Puiseux& p) {
  Node n;
  n.kind = Kind::Literal;
  n.lit = p;
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::mono(const VarMono& m) {
  Node n;
  n.kind = Kind::Mono;
  n.arg = m;
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::sum(std::vector<std::pair<Cyc, CharExpr>> parts) {
  Node n;
  n.kind = Kind::Sum;
  for (auto& [w, e] : parts) {
    n.weights.push_back(w);
    n.kids.push_back(e);
  }
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::product(std::vector<CharExpr> parts) {
  Node n;
  n.kind = Kind::Product;
  n.kids = std::move(parts);
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::quotient(CharExpr num, CharExpr den) {
  Node n;
  n.kind = Kind::Quotient;
  n.kids = {std::move(num), std::move(den)};
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::pow(CharExpr base, long p) {
  Node n;
  n.kind = Kind::Pow;
  n.pw = p;
  n.kids = {std::move(base)};
  return CharExpr(make_node(std::move(n)));
}

CharExpr CharExpr::flowed(const FlowData& f) const {
  Node n = *n_;
  switch (n.kind) {
    case Kind::Theta:
    case Kind::ClassicalTheta:
    case Kind::TwistedE:
    case Kind::Mono:
      n.arg = f.substituted(n.arg);
      break;
    case Kind::Eta:
    case Kind::Literal:
      break;
    case Kind::Sum:
    case Kind::Product:
    case Kind::Quotient:
    case Kind::Pow:
      for (auto& k : n.kids) k = k.flowed(f);
      break;
  }
  return CharExpr(make_node(std::move(n)));
}

EpsPoly CharExpr::eval_eps(const Specialization& s, const Rat& T, int w) const {
  const Node& n = *n_;
  switch (n.kind) {
    case Kind::Eta:
      return EpsPoly::from_series(dedekind_eta(T, n.scale), w);
    case Kind::Theta:
      return jacobi_theta(n.idx, substituted_value(n.arg, s), n.u, T, w);
    case Kind::ClassicalTheta:
      return classical_theta(n.idx, 2, substituted_value(n.arg, s), T, w);
    case Kind::TwistedE:
      return twisted_eisenstein(n.idx, n.lambda, substituted_value(n.arg, s), T, w);
    case Kind::Literal:
      return EpsPoly::from_series(n.lit.truncated(T), w);
    case Kind::Mono:
      return EpsPoly::from_mono(substituted_value(n.arg, s), w);
    case Kind::Sum: {
      EpsPoly acc = EpsPoly::zero(w);
      for (size_t i = 0; i < n.kids.size(); ++i)
        acc += n.kids[i].eval_eps(s, T, w).scaled(n.weights[i]);
      return acc;
    }
    case Kind::Product: {
      EpsPoly acc = EpsPoly::from_series(Puiseux::from_rat(1), w);
      for (const auto& k : n.kids) acc *= k.eval_eps(s, T, w);
      return acc;
    }
    case Kind::Quotient:
      return n.kids[0].eval_eps(s, T, w) * n.kids[1].eval_eps(s, T, w).inverted();
    case Kind::Pow:
      return n.kids[0].eval_eps(s, T, w).pow_int(n.pw);
  }
  throw std::logic_error("CharExpr::eval_eps: bad node");
}

Puiseux CharExpr::evaluate(const Specialization& s) const {
  int w = s.needs_limit() ? s.eps_degree + 1 : 1;
  Rat pad = 8;
  for (int attempt = 0; attempt < 10; ++attempt) {
    try {
      Puiseux r = eval_eps(s, s.trunc + pad, w).limit();
      if (r.trunc() >= s.trunc) return r.truncated(s.trunc);
      pad *= 2;
    } catch (const MathError& e) {
      // A too-small eps window is repairable; a genuine pole is not.
      if (std::string(e.what()).find("window") != std::string::npos && w < 64)
        w += 6;
      else
        throw;
    }
  }
  throw MathError("CharExpr::evaluate: could not reach the requested truncation");
}

// --- Weight data ----------------------------------------------------------

WeightDim flowed_weight_dim(long u, long j) {
  if (u < 3 || u % 2 == 0 || j < 0 || j >= u)
    throw std::invalid_argument("flowed_weight_dim: bad (u, j)");
  return {rat(u - 2 * j - 1, u), rat(1 + 4 * j * (1 + j - u) - u, 8 * u)};
}

WeightDim general_admissible_weight_dim(long p, long q, long i, long j) {
  if (p < 2 || q < 1 || gcd_long(p, q) != 1 || i < 1 || i > p - 1 || j < 0 || j > q - 1)
    throw std::invalid_argument("general_admissible_weight_dim: bad parameters");
  Rat k = Rat(-2) + rat(p, q);
  Rat t = k + 2;  // = p/q
  Rat label = Rat(i) - 1 - t * Rat(j) - k / 2;
  Rat d = Rat(i) - t * Rat(j);
  Rat dim = (Rat(4) + k - 4 * Rat(i) + 4 * t * Rat(j) + 4 * (Rat(-1) + d * d) / t) / 16;
  return {label, dim};
}

// --- Character builders ---------------------------------------------------

CharExpr build_sl2_boundary_char(long u, long j) {
  if (u < 3 || u % 2 == 0) throw std::invalid_argument("sl2 boundary: u must be odd >= 3");
  if (j < 0 || j >= u) throw std::invalid_argument("sl2 boundary: j must lie in [0, u-1]");
  Rat k = Rat(-2) + rat(2, u);
  VarMono pref = VarMono::var("y", k) * VarMono::var("z", rat(-2 * j, u)) *
                 VarMono::q_power(rat(j * j, 2 * u));
  VarMono z2 = VarMono::var("z", 2);
  VarMono num_arg = z2 * VarMono::q_power(Rat(-j));
  return CharExpr::product(
      {CharExpr::mono(pref),
       CharExpr::quotient(CharExpr::theta(1, num_arg, u), CharExpr::theta(1, z2, 1))});
}

CharExpr build_sl2_half_char(Sl2HalfModule which) {
  VarMono z = VarMono::var("z");
  VarMono pref = VarMono::var("y", Rat(-1, 2));
  pref.coef = Rat(1, 2);
  auto part = [&](int idx) {
    return CharExpr::quotient(CharExpr::eta(), CharExpr::theta(idx, z, 1));
  };
  Cyc one = Cyc::one();
  Cyc minus_i = Cyc::from_turns(Rat(3, 4));
  std::vector<std::pair<Cyc, CharExpr>> parts;
  switch (which) {
    case Sl2HalfModule::L0:
      parts = {{one, part(4)}, {one, part(3)}};
      break;
    case Sl2HalfModule::L1:
      parts = {{one, part(4)}, {-one, part(3)}};
      break;
    case Sl2HalfModule::DplusHalf:
      parts = {{minus_i, part(1)}, {one, part(2)}};
      break;
    case Sl2HalfModule::DplusThreeHalf:
      parts = {{minus_i, part(1)}, {-one, part(2)}};
      break;
  }
  return CharExpr::product({CharExpr::mono(pref), CharExpr::sum(std::move(parts))});
}

CharExpr build_sl3_boundary_char(Sl3Module which) {
  VarMono z1 = VarMono::var("z1"), z2 = VarMono::var("z2");
  VarMono z12 = z1 * z2;
  // (eta(2 tau)/eta(tau))^{-1}
  CharExpr eta_ratio = CharExpr::quotient(CharExpr::eta(1), CharExpr::eta(2));
  CharExpr den = CharExpr::product({CharExpr::theta(1, z1, 1), CharExpr::theta(1, z2, 1),
                                    CharExpr::theta(1, z12, 1)});
  VarMono pref = VarMono::var("y", Rat(-3, 2));
  std::vector<CharExpr> num;
  switch (which) {
    case Sl3Module::Vac:
      num = {CharExpr::theta(1, z1, 2), CharExpr::theta(1, z2, 2),
             CharExpr::theta(1, z12, 2)};
      break;
    case Sl3Module::L1:
      pref.coef = -1;
      num = {CharExpr::theta(1, z2, 2), CharExpr::theta(4, z1, 2),
             CharExpr::theta(4, z12, 2)};
      break;
    case Sl3Module::L2:
      pref.coef = -1;
      num = {CharExpr::theta(1, z1, 2), CharExpr::theta(4, z12, 2),
             CharExpr::theta(4, z2, 2)};
      break;
    case Sl3Module::RhoHalf: {
      pref = pref * VarMono::var("z1", Rat(3, 2)) * VarMono::var("z2", Rat(3, 2)) *
             VarMono::q_power(Rat(3, 2));
      VarMono q1 = VarMono::q_power(Rat(-1));
      num = {CharExpr::theta(1, z2.inverse() * q1, 2),
             CharExpr::theta(1, z1.inverse() * q1, 2),
             CharExpr::theta(1, z12.inverse() * q1 * q1, 2)};
      break;
    }
  }
  return CharExpr::product({CharExpr::mono(pref), eta_ratio,
                            CharExpr::quotient(CharExpr::product(std::move(num)), den)});
}

namespace {

VarMono d4_z(int i, const Rat& e = 1) { return VarMono::var("z" + std::to_string(i), e); }

// Schur-index part of the d4 vacuum character (y-free).
CharExpr d4_index_expr() {
  Rat h(1, 2);
  VarMono A1 = d4_z(1, h) * d4_z(2) * d4_z(3, h) * d4_z(4, h);
  VarMono A2 = d4_z(1, h);
  VarMono A3 = d4_z(4, h);
  VarMono A4 = d4_z(3, h);
  std::vector<std::pair<Cyc, CharExpr>> brackets;
  for (int mask = 0; mask < 16; ++mask) {
    int a[4];
    int sgn = 1;
    for (int b = 0; b < 4; ++b) {
      a[b] = (mask >> b) & 1 ? 1 : -1;
      sgn *= a[b];
    }
    VarMono arg = A1.pow(a[0]) * A2.pow(a[1]) * A3.pow(a[2]) * A4.pow(a[3]);
    brackets.emplace_back(Cyc(rat(sgn, 2)), CharExpr::twisted_e(2, 0, arg));
  }
  CharExpr den = CharExpr::product(
      {CharExpr::theta(1, d4_z(1) * d4_z(2, 2) * d4_z(3) * d4_z(4), 1),
       CharExpr::theta(1, d4_z(1), 1), CharExpr::theta(1, d4_z(4), 1),
       CharExpr::theta(1, d4_z(3), 1)});
  return CharExpr::quotient(
      CharExpr::product({CharExpr::pow(CharExpr::eta(), 2), CharExpr::sum(std::move(brackets))}),
      den);
}

VarMono d4_m(int i) {
  Rat h(1, 2);
  switch (i) {
    case 1: return d4_z(1) * d4_z(2) * d4_z(3, h) * d4_z(4, h);
    case 2: return d4_z(2) * d4_z(3, h) * d4_z(4, h);
    case 3: return d4_z(3, h) * d4_z(4, h);
    case 4: return d4_z(3, h) * d4_z(4, -h);
    default: throw std::invalid_argument("d4_m: index must be 1..4");
  }
}

}  // namespace

CharExpr build_Rj(int j) {
  if (j < 1 || j > 4) throw std::invalid_argument("build_Rj: j must be 1..4");
  VarMono mj = d4_m(j);
  // -i/2: the displayed constant is i/2 in the vartheta_11 convention; the
  // odd count of theta_1 = -vartheta_11 factors (one up, six down) flips it.
  VarMono i_half;
  i_half.coef = Rat(1, 2);
  i_half.turns = Rat(3, 4);
  std::vector<CharExpr> dens;
  for (int l = 1; l <= 4; ++l) {
    if (l == j) continue;
    VarMono ml = d4_m(l);
    dens.push_back(CharExpr::theta(1, mj * ml, 1));
    dens.push_back(CharExpr::theta(1, mj * ml.inverse(), 1));
  }
  return CharExpr::quotient(
      CharExpr::product({CharExpr::mono(i_half), CharExpr::pow(CharExpr::eta(), 5),
                         CharExpr::theta(1, mj.pow(2), 1)}),
      CharExpr::product(std::move(dens)));
}

CharExpr build_d4_char(D4Module which) {
  CharExpr I = d4_index_expr();
  Cyc one = Cyc::one();
  CharExpr y2 = CharExpr::mono(VarMono::var("y", -2));
  std::vector<std::pair<Cyc, CharExpr>> combo;
  switch (which) {
    case D4Module::Vac:
      combo = {{one, I}};
      break;
    case D4Module::L1:
      combo = {{one, I}, {Cyc(Rat(-2)), build_Rj(1)}};
      break;
    case D4Module::L3:
      combo = {{one, I}, {-one, build_Rj(1)}, {-one, build_Rj(2)},
               {-one, build_Rj(3)}, {-one, build_Rj(4)}};
      break;
    case D4Module::L4:
      combo = {{one, I}, {-one, build_Rj(1)}, {-one, build_Rj(2)},
               {-one, build_Rj(3)}, {one, build_Rj(4)}};
      break;
    case D4Module::Lmid:
      combo = {{Cyc(Rat(-2)), I}, {Cyc(Rat(2)), build_Rj(1)}, {Cyc(Rat(2)), build_Rj(2)}};
      break;
  }
  return CharExpr::product({y2, CharExpr::sum(std::move(combo))});
}

Puiseux bp_flowed_char() {
  Rat base(1, 6);
  Rat T = base + 6;
  long c[6] = {1, 4, 10, 24, 51, 100};
  Puiseux r = Puiseux::zero(T);
  for (long n = 0; n < 6; ++n)
    r += Puiseux::monomial(Cyc(Rat(c[n])), base + n, T);
  return r;
}

}  // namespace qva
