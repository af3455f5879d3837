#include "qva/uea.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qva {

namespace {

// Normal order: modes ascending, ties f < h < e.
bool op_less(const ModeOp& a, const ModeOp& b) {
  if (a.m != b.m) return a.m < b.m;
  return a.g < b.g;
}

// [x, y] in sl2: coefficient and resulting generator (coef 0 = trivial).
std::pair<long, Gen> sl2_bracket(Gen x, Gen y) {
  if (x == Gen::E && y == Gen::F) return {1, Gen::H};
  if (x == Gen::F && y == Gen::E) return {-1, Gen::H};
  if (x == Gen::H && y == Gen::E) return {2, Gen::E};
  if (x == Gen::E && y == Gen::H) return {-2, Gen::E};
  if (x == Gen::H && y == Gen::F) return {-2, Gen::F};
  if (x == Gen::F && y == Gen::H) return {2, Gen::F};
  return {0, Gen::H};
}

// Invariant form: <e,f> = <f,e> = 1, <h,h> = 2.
long sl2_form(Gen x, Gen y) {
  if ((x == Gen::E && y == Gen::F) || (x == Gen::F && y == Gen::E)) return 1;
  if (x == Gen::H && y == Gen::H) return 2;
  return 0;
}

void add_term(PBWElement& out, const ModeMonomial& m, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = out.try_emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

// Normal-order `word * coef` applied to the highest-weight symbol and
// accumulate into `out`.
void straighten(ModeMonomial word, Rat coef, const Rat& level, const Rat& hw,
                ModuleType type, PBWElement& out) {
  std::vector<std::pair<ModeMonomial, Rat>> stack;
  stack.emplace_back(std::move(word), std::move(coef));
  while (!stack.empty()) {
    auto [w, c] = std::move(stack.back());
    stack.pop_back();
    // Find the first adjacent inversion.
    size_t inv = w.size();
    for (size_t i = 0; i + 1 < w.size(); ++i)
      if (op_less(w[i + 1], w[i])) {
        inv = i;
        break;
      }
    if (inv < w.size()) {
      ModeOp A = w[inv], B = w[inv + 1];
      ModeMonomial swapped = w;
      std::swap(swapped[inv], swapped[inv + 1]);
      stack.emplace_back(std::move(swapped), c);
      auto [bc, bg] = sl2_bracket(A.g, B.g);
      if (bc != 0) {
        ModeMonomial shorter;
        shorter.reserve(w.size() - 1);
        shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(inv));
        shorter.push_back({bg, A.m + B.m});
        shorter.insert(shorter.end(), w.begin() + static_cast<long>(inv) + 2, w.end());
        stack.emplace_back(std::move(shorter), c * Rat(bc));
      }
      if (A.m + B.m == 0 && A.m != 0) {
        long f = sl2_form(A.g, B.g);
        if (f != 0) {
          ModeMonomial shorter;
          shorter.reserve(w.size() - 2);
          shorter.insert(shorter.end(), w.begin(), w.begin() + static_cast<long>(inv));
          shorter.insert(shorter.end(), w.begin() + static_cast<long>(inv) + 2, w.end());
          stack.emplace_back(std::move(shorter), c * Rat(A.m * f) * level);
        }
      }
      continue;
    }
    // Sorted: act on the highest-weight symbol from the right.
    bool dead = false;
    while (!w.empty()) {
      ModeOp last = w.back();
      if (last.m < 0) break;
      if (last.m > 0 || type == ModuleType::Vacuum) {
        dead = true;
        break;
      }
      if (last.g == Gen::E) {
        dead = true;
        break;
      }
      if (last.g == Gen::F) break;  // f_(0) survives on a Verma
      c *= hw;                      // h_(0)
      w.pop_back();
    }
    if (!dead) add_term(out, w, c);
  }
}

Rat binom_half(long k) {
  Rat b = 1;
  for (long j = 0; j < k; ++j) b *= (rat(1, 2) - Rat(j)) / Rat(j + 1);
  return b;
}

}  // namespace

PBWElement apply_mode(Gen g, long n, const PBWElement& v, const Rat& level,
                      const Rat& hw, ModuleType type) {
  PBWElement out;
  for (const auto& [m, c] : v) {
    ModeMonomial w;
    w.reserve(m.size() + 1);
    w.push_back({g, n});
    w.insert(w.end(), m.begin(), m.end());
    straighten(std::move(w), c, level, hw, type, out);
  }
  return out;
}

long monomial_weight(const ModeMonomial& m) {
  long w = 0;
  for (const auto& op : m) w += op.g == Gen::E ? 2 : op.g == Gen::F ? -2 : 0;
  return w;
}

long monomial_depth(const ModeMonomial& m) {
  long d = 0;
  for (const auto& op : m) d -= op.m;
  return d;
}

PBWElement pbw_scaled(const PBWElement& v, const Rat& c) {
  PBWElement out;
  if (c == 0) return out;
  for (const auto& [m, x] : v) out.emplace(m, x * c);
  return out;
}

PBWElement pbw_add(const PBWElement& a, const PBWElement& b) {
  PBWElement out = a;
  for (const auto& [m, c] : b) add_term(out, m, c);
  return out;
}

bool is_singular(const PBWElement& v, const Rat& level, const Rat& hw,
                 const std::vector<ModeOp>& raising, ModuleType type) {
  if (v.empty()) throw std::invalid_argument("is_singular: zero vector");
  long w0 = monomial_weight(v.begin()->first);
  long d0 = monomial_depth(v.begin()->first);
  for (const auto& [m, c] : v)
    if (monomial_weight(m) != w0 || monomial_depth(m) != d0)
      throw std::invalid_argument("is_singular: input is not homogeneous");
  for (const auto& op : raising)
    if (!apply_mode(op.g, op.m, v, level, hw, type).empty()) return false;
  return true;
}

std::vector<Rat> zhu_twisted_image(const PBWElement& v, const Level& lvl) {
  const Rat level = lvl.ell();
  for (const auto& [m, c] : v)
    if (monomial_weight(m) != 0)
      throw MathError("zhu_twisted_image: input must have h-weight zero");
  PBWElement work;
  for (const auto& [m, c] : v)
    straighten(ModeMonomial(m), c, level, 0, ModuleType::Vacuum, work);

  std::map<size_t, Rat> poly;
  long budget = 500000;
  while (!work.empty()) {
    if (--budget <= 0) throw MathError("zhu_twisted_image: rewrite budget exhausted");
    auto it = work.begin();
    ModeMonomial m = it->first;
    Rat c = it->second;
    work.erase(it);

    bool pure = true;
    for (const auto& op : m)
      if (op.g != Gen::H || op.m != -1) {
        pure = false;
        break;
      }
    if (pure) {
      Rat& slot = poly[m.size()];
      slot += c;
      if (slot == 0) poly.erase(m.size());
      continue;
    }

    const ModeOp lead = m.front();
    const ModeMonomial rest(m.begin() + 1, m.end());
    if (lead.g == Gen::H) {
      if (lead.m > -2) throw MathError("zhu_twisted_image: unexpected monomial shape");
      // Weight-one relation: h_(-n) ~ -h_(-n+1) for n >= 2.
      ModeMonomial w;
      w.reserve(m.size());
      w.push_back({Gen::H, lead.m + 1});
      w.insert(w.end(), rest.begin(), rest.end());
      straighten(std::move(w), -c, level, 0, ModuleType::Vacuum, work);
    } else {
      // Charged relation: u_(m0) ~ -sum_{k>=1} binom(1/2,k) u_(m0+k).
      long d = monomial_depth(rest);
      for (long k = 1; lead.m + k <= d; ++k) {
        ModeMonomial w;
        w.reserve(m.size());
        w.push_back({lead.g, lead.m + k});
        w.insert(w.end(), rest.begin(), rest.end());
        straighten(std::move(w), -c * binom_half(k), level, 0, ModuleType::Vacuum, work);
      }
    }
  }
  if (poly.empty()) return {};
  std::vector<Rat> out(poly.rbegin()->first + 1, Rat(0));
  for (const auto& [e, c] : poly) out[e] = c;
  return out;
}

// ---- PBW text ----

PBWElement parse_pbw(const std::string& text) {
  PBWElement out;
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s += ch;
  size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("parse_pbw: " + why + " at position " + std::to_string(i));
  };
  auto read_rat = [&]() -> Rat {
    size_t start = i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    while (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    if (i == start || (i == start + 1 && !isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected a rational number");
    return parse_rat(s.substr(start, i - start));
  };
  while (i < s.size()) {
    Rat sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') {
      sign = -1;
      ++i;
    }
    Rat coef = 1;
    bool have_coef = false;
    if (i < s.size() && s[i] == '(') {
      ++i;
      coef = read_rat();
      if (i >= s.size() || s[i] != ')') fail("expected ')'");
      ++i;
      have_coef = true;
    } else if (i < s.size() && (isdigit(static_cast<unsigned char>(s[i])))) {
      coef = read_rat();
      have_coef = true;
    }
    if (have_coef && i < s.size() && s[i] == '*') ++i;
    ModeMonomial m;
    while (i < s.size() && (s[i] == 'e' || s[i] == 'f' || s[i] == 'h')) {
      Gen g = s[i] == 'e' ? Gen::E : s[i] == 'f' ? Gen::F : Gen::H;
      ++i;
      if (i >= s.size() || s[i] != '[') fail("expected '['");
      ++i;
      Rat mode = read_rat();
      if (!is_integer(mode)) fail("mode must be an integer");
      if (i >= s.size() || s[i] != ']') fail("expected ']'");
      ++i;
      m.push_back({g, to_long(mode)});
    }
    if (m.empty() && !have_coef) fail("empty term");
    add_term(out, m, sign * coef);
  }
  return out;
}

std::string pbw_str(const PBWElement& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rat_str(c) << ")";
    for (const auto& op : m)
      os << '*' << (op.g == Gen::E ? 'e' : op.g == Gen::F ? 'f' : 'h') << "[" << op.m
         << "]";
    if (m.empty()) os << "*1";
  }
  return os.str();
}

// ---- U(L0) ----

namespace {

void ul0_add(UL0Element& out, const std::array<long, 3>& k, const Rat& c) {
  if (c == 0) return;
  auto [it, fresh] = out.try_emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

UL0Element ul0_scaled(const UL0Element& v, const Rat& c) {
  UL0Element out;
  if (c == 0) return out;
  for (const auto& [k, x] : v) out.emplace(k, x * c);
  return out;
}

UL0Element ul0_sum(const UL0Element& a, const UL0Element& b) {
  UL0Element out = a;
  for (const auto& [k, c] : b) ul0_add(out, k, c);
  return out;
}

UL0Element mul_tplus(const UL0Element& v) {
  UL0Element out;
  for (const auto& [k, c] : v) ul0_add(out, {k[0], k[1], k[2] + 1}, c);
  return out;
}

UL0Element mul_t0(const UL0Element& v) {
  // T_+^d T_0 = (T_0 + 2d) T_+^d.
  UL0Element out;
  for (const auto& [k, c] : v) {
    ul0_add(out, {k[0], k[1] + 1, k[2]}, c);
    ul0_add(out, {k[0], k[1], k[2]}, c * Rat(2 * k[2]));
  }
  return out;
}

UL0Element mul_tminus(const UL0Element& v) {
  // T_-^a T_0^b T_+^d T_- = T_-^{a+1}(T_0+2)^b T_+^d
  //                         + d T_-^a T_0^{b+1} T_+^{d-1}
  //                         + d(d-1) T_-^a T_0^b T_+^{d-1}.
  UL0Element out;
  for (const auto& [k, c] : v) {
    const long a = k[0], b = k[1], d = k[2];
    Rat binom = 1;
    for (long j = b; j >= 0; --j) {
      // coefficient of T_0^j in (T_0+2)^b is C(b,j) 2^{b-j}
      Rat coeff = binom;
      for (long i = 0; i < b - j; ++i) coeff *= 2;
      ul0_add(out, {a + 1, j, d}, c * coeff);
      binom = binom * Rat(j) / Rat(b - j + 1);
    }
    if (d > 0) {
      ul0_add(out, {a, b + 1, d - 1}, c * Rat(d));
      ul0_add(out, {a, b, d - 1}, c * Rat(d * (d - 1)));
    }
  }
  return out;
}

// X * G_alpha with G_alpha = T_- T_+ - alpha T_0 + alpha(alpha+1).
UL0Element mul_G(const UL0Element& v, const Rat& alpha) {
  UL0Element out = mul_tplus(mul_tminus(v));
  out = ul0_sum(out, ul0_scaled(mul_t0(v), -alpha));
  return ul0_sum(out, ul0_scaled(v, alpha * (alpha + 1)));
}

void ul0_check_params(long a, long b, long d, long n, long kappa, const Level& lvl) {
  if (a < 0 || b < 0 || d < 0 || a > 4 || b > 4 || d > 4)
    throw std::invalid_argument("ul0: a,b,d must lie in 0..4");
  if (n < 1 || n > lvl.p - 1 || kappa < 1 || kappa > lvl.q || n > 4 || kappa > 4)
    throw std::invalid_argument("ul0: n,kappa out of range");
}

}  // namespace

std::string ul0_str(const UL0Element& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rat_str(c) << ")";
    if (k[0]) os << "*T-^" << k[0];
    if (k[1]) os << "*T0^" << k[1];
    if (k[2]) os << "*T+^" << k[2];
  }
  return os.str();
}

UL0Element ul0_mod_tminus(const UL0Element& v) {
  UL0Element out;
  for (const auto& [k, c] : v)
    if (k[0] == 0) out.emplace(k, c);
  return out;
}

UL0Element ul0_reduce(long a, long b, long d, long n, long kappa, const Level& lvl,
                      int which) {
  ul0_check_params(a, b, d, n, kappa, lvl);
  const Rat t = lvl.t();
  UL0Element x{{{a, b, d}, Rat(1)}};
  if (which == 1) {
    for (long r = 1; r <= n; ++r)
      for (long s = 1; s <= kappa - 1; ++s) x = mul_G(x, -Rat(r) - Rat(s) * t);
    for (long i = 0; i < n; ++i) x = mul_tplus(x);
  } else if (which == 2) {
    for (long r = 0; r <= lvl.p - n - 1; ++r)
      for (long s = 1; s <= lvl.q - kappa; ++s) x = mul_G(x, Rat(r) + Rat(s) * t);
    for (long i = 0; i < lvl.p - n; ++i) x = mul_tminus(x);
  } else {
    throw std::invalid_argument("ul0_reduce: which must be 1 or 2");
  }
  return x;
}

UL0Element ul0_closed_form(long a, long b, long d, long n, long kappa, const Level& lvl,
                           int which) {
  ul0_check_params(a, b, d, n, kappa, lvl);
  const Rat t = lvl.t();
  auto mul_linear = [](const UL0Element& v, const Rat& sc, const Rat& cst) {
    // v * (sc*T_0 + cst)
    return ul0_sum(ul0_scaled(mul_t0(v), sc), ul0_scaled(v, cst));
  };
  if (which == 1) {
    UL0Element x{{{a, 0, 0}, Rat(1)}};
    for (long r = 1; r <= n; ++r)
      for (long s = 1; s <= kappa - 1; ++s) {
        Rat c = Rat(r) + Rat(s) * t + Rat(d);
        x = ul0_scaled(mul_linear(x, 1, c - 1), c);
      }
    for (long i = 0; i < b; ++i) x = mul_t0(x);
    for (long i = 0; i < n + d; ++i) x = mul_tplus(x);
    return x;
  }
  if (which != 2) throw std::invalid_argument("ul0_closed_form: which must be 1 or 2");
  if (d < lvl.p - n) {
    UL0Element x{{{a + lvl.p - n - d, 0, 0}, Rat(1)}};
    for (long i = 0; i < b; ++i) x = mul_linear(x, 1, Rat(2 * (lvl.p - n - d)));
    for (long r = 0; r <= lvl.p - n - 1; ++r)
      for (long s = 1; s <= lvl.q - kappa; ++s)
        x = mul_G(x, Rat(r) + Rat(s) * t - Rat(lvl.p) + Rat(n));
    for (long i = 1; i <= d; ++i) x = mul_G(x, Rat(-i - lvl.p + n + d));
    return x;
  }
  const long m = d - (lvl.p - n);
  UL0Element x{{{a, 0, 0}, Rat(1)}};
  for (long r = 1; r <= lvl.p - n; ++r)
    for (long s = 0; s <= lvl.q - kappa; ++s) {
      Rat c = Rat(s) * t - Rat(m) - Rat(r);
      x = ul0_scaled(mul_linear(x, -1, c + 1), c);
    }
  for (long i = 0; i < b; ++i) x = mul_t0(x);
  for (long i = 0; i < m; ++i) x = mul_tplus(x);
  return x;
}

}  // namespace qva
