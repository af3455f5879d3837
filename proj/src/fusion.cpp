#include "qva/fusion.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qva {

Level::Level(long p_, long q_) : p(p_), q(q_) {
  if (p < 2 || q < 1 || gcd_long(p, q) != 1)
    throw std::invalid_argument("Level: need p >= 2, q >= 1, gcd(p,q) = 1");
}

Rat AdmLabel::weight(const Level& lvl) const {
  Rat base = conv == Convention::HW ? Rat(n - 1) : Rat(n);
  return base - Rat(kappa - 1) * lvl.t();
}

bool AdmLabel::valid(const Level& lvl) const {
  if (kappa < 1 || kappa > lvl.q) return false;
  return conv == Convention::HW ? (n >= 1 && n <= lvl.p - 1)
                                : (n >= 0 && n <= lvl.p - 2);
}

std::vector<AdmLabel> admissible_labels(const Level& lvl, Convention conv) {
  std::vector<AdmLabel> out;
  long lo = conv == Convention::HW ? 1 : 0;
  long hi = conv == Convention::HW ? lvl.p - 1 : lvl.p - 2;
  for (long n = lo; n <= hi; ++n)
    for (long k = 1; k <= lvl.q; ++k) out.push_back({n, k, conv});
  return out;
}

AdmLabel label_from_weight(const Level& lvl, const Rat& j, Convention conv) {
  // j = base - (kappa-1) p/q with integer base determines kappa uniquely
  // in 1..q because gcd(p,q) = 1.
  for (long k = 1; k <= lvl.q; ++k) {
    Rat base = j + Rat(k - 1) * lvl.t();
    if (!is_integer(base)) continue;
    long b = to_long(base);
    AdmLabel lab{conv == Convention::HW ? b + 1 : b, k, conv};
    if (lab.valid(lvl)) return lab;
    break;  // the integer solution is unique; out of range means inadmissible
  }
  throw std::invalid_argument("label_from_weight: " + rat_str(j) +
                              " is not an admissible weight here");
}

bool weight_is_admissible(const Level& lvl, const Rat& j, Convention conv) {
  try {
    label_from_weight(lvl, j, conv);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

std::string ModuleLabel::str(const Level& lvl) const {
  std::ostringstream os;
  std::string core = "L(" + rat_str(lvl.ell()) + "," + rat_str(weight.weight(lvl)) + ")";
  switch (kind) {
    case ModuleKind::HW: os << core; break;
    case ModuleKind::Contra: os << core << "*"; break;
    case ModuleKind::TwHW: os << "s[-1/2](" << core << ")"; break;
    case ModuleKind::TwContra: os << "s[+1/2](" << core << "*)"; break;
  }
  return os.str();
}

static bool label_less(const ModuleLabel& a, const ModuleLabel& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.weight.conv != b.weight.conv) return a.weight.conv < b.weight.conv;
  if (a.weight.n != b.weight.n) return a.weight.n < b.weight.n;
  return a.weight.kappa < b.weight.kappa;
}

void FusionResult::add(const ModuleLabel& m) {
  summands.insert(std::upper_bound(summands.begin(), summands.end(), m, label_less), m);
}

std::string FusionResult::str(const Level& lvl) const {
  if (summands.empty()) return "0";
  std::string s;
  for (size_t i = 0; i < summands.size(); ++i) {
    if (i) s += " + ";
    s += summands[i].str(lvl);
  }
  return s;
}

std::vector<Rat> twisted_zhu_roots(const Level& lvl) {
  std::vector<Rat> roots;
  for (long r = 0; r <= lvl.p - 2; ++r)
    for (long s = 0; s <= lvl.q - 1; ++s)
      roots.push_back(Rat(r) - Rat(s) * lvl.t() - lvl.ell() / 2);
  std::sort(roots.begin(), roots.end(), [](const Rat& a, const Rat& b) { return a > b; });
  return roots;
}

// Shared summation range of the range-type rules, in hw-style n indices.
static std::pair<long, long> fusion_range(const Level& lvl, long n1, long n2) {
  return {std::max(0L, n1 + n2 - lvl.p), std::min(n1 - 1, n2 - 1)};
}

FusionResult fuse_hw_hw(const Level& lvl, const AdmLabel& j1, const AdmLabel& j2) {
  if (j1.conv != Convention::HW || j2.conv != Convention::HW)
    throw std::invalid_argument("fuse_hw_hw: hw-convention labels required");
  FusionResult out;
  auto [lo, hi] = fusion_range(lvl, j1.n, j2.n);
  for (long i = lo; i <= hi; ++i)
    out.add({ModuleKind::HW, {j1.n + j2.n - 1 - 2 * i, j1.kappa + j2.kappa - 1, Convention::HW}});
  return out;
}

FusionResult fuse_hw_twisted(const Level& lvl, const AdmLabel& j1, const AdmLabel& j2) {
  if (j1.conv != Convention::Twisted || j2.conv != Convention::Twisted)
    throw std::invalid_argument("fuse_hw_twisted: twisted-convention labels required");
  FusionResult out;
  if (!(0 <= j2.kappa - 1 && j2.kappa - 1 <= lvl.q - j1.kappa)) return out;
  auto [lo, hi] = fusion_range(lvl, j1.hw_n(), j2.hw_n());
  for (long i = lo; i <= hi; ++i)
    out.add({ModuleKind::TwHW,
             {j1.n + j2.n - 2 * i, j1.kappa + j2.kappa - 1, Convention::Twisted}});
  return out;
}

// Single-summand contragredient rule: the product is L(-j1+j2) when that
// weight is admissible, (L(j1-j2))* when the opposite difference is, and
// zero otherwise. The first branch wins on overlap (only j1 = j2 = 0).
static FusionResult difference_rule(const Level& lvl, const Rat& j1, const Rat& j2,
                                    ModuleKind plain_kind, Convention plain_conv,
                                    ModuleKind dual_kind, Convention dual_conv) {
  FusionResult out;
  if (weight_is_admissible(lvl, j2 - j1, plain_conv))
    out.add({plain_kind, label_from_weight(lvl, j2 - j1, plain_conv)});
  else if (weight_is_admissible(lvl, j1 - j2, dual_conv))
    out.add({dual_kind, label_from_weight(lvl, j1 - j2, dual_conv)});
  return out;
}

// Range-type contragredient rule with the kappa condition.
static FusionResult contra_range_rule(const Level& lvl, const AdmLabel& a,
                                      const AdmLabel& b, ModuleKind kind) {
  FusionResult out;
  if (!(0 <= b.kappa - 1 && b.kappa - 1 <= lvl.q - a.kappa)) return out;
  auto [lo, hi] = fusion_range(lvl, a.hw_n(), b.hw_n());
  for (long i = lo; i <= hi; ++i)
    out.add({kind, label_from_weight(lvl, a.weight(lvl) + b.weight(lvl) - 2 * Rat(i),
                                     Convention::HW)});
  return out;
}

FusionResult fuse_contra(const Level& lvl, const ModuleLabel& a, const ModuleLabel& b) {
  using K = ModuleKind;
  const Rat ja = a.weight.weight(lvl), jb = b.weight.weight(lvl);
  if (a.kind == K::Contra && b.kind == K::HW)
    return difference_rule(lvl, ja, jb, K::HW, Convention::HW, K::Contra, Convention::HW);
  if (a.kind == K::HW && b.kind == K::Contra)
    return difference_rule(lvl, jb, ja, K::HW, Convention::HW, K::Contra, Convention::HW);
  if (a.kind == K::Contra && b.kind == K::Contra)
    return contra_range_rule(lvl, a.weight, b.weight, K::Contra);
  if (a.kind == K::Contra && b.kind == K::TwContra)
    return contra_range_rule(lvl, a.weight, b.weight, K::TwContra);
  if (a.kind == K::Contra && b.kind == K::TwHW)
    return difference_rule(lvl, ja, jb, K::TwHW, Convention::Twisted, K::TwContra,
                           Convention::HW);
  if (a.kind == K::HW && b.kind == K::TwContra)
    return difference_rule(lvl, jb, ja, K::TwHW, Convention::Twisted, K::TwContra,
                           Convention::HW);
  throw std::invalid_argument("fuse_contra: no rule for this kind pair");
}

FusionResult bimodule_oracle(const Level& lvl, const AdmLabel& j1, const AdmLabel& j2,
                             OracleKind kind) {
  const long n1 = j1.hw_n(), k1 = j1.kappa;
  const Rat w1 = j1.weight(lvl), w2 = j2.weight(lvl);
  FusionResult out;
  for (long i = 0; i < n1; ++i) {
    // Product of the linear factors of the bimodule relation at degree i,
    // evaluated at the second module's extremal eigenvalue.
    Rat prod = 1;
    for (long r = 0; r <= lvl.p - n1 - 1; ++r)
      for (long s = 0; s <= lvl.q - k1; ++s) {
        Rat st = Rat(s) * lvl.t();
        Rat f = w2 - Rat(r + i) + st;
        prod *= kind == OracleKind::Contra ? Rat(-f) : f;
      }
    if (prod != 0) continue;  // y^i is killed; no summand
    Rat w = w1 + w2 - 2 * Rat(i);
    switch (kind) {
      case OracleKind::Twisted:
        out.add({ModuleKind::TwHW, label_from_weight(lvl, w, Convention::Twisted)});
        break;
      case OracleKind::Contra:
        out.add({ModuleKind::Contra, label_from_weight(lvl, w, Convention::HW)});
        break;
      case OracleKind::HW:
        out.add({ModuleKind::HW, label_from_weight(lvl, w, Convention::HW)});
        break;
    }
  }
  return out;
}

VerlindeData verlinde_check() {
  const Level lvl(2, 3);
  VerlindeData out;

  // The three modules in display order: weights 0, -2/3, -4/3.
  std::vector<AdmLabel> tw;
  for (long k = 1; k <= 3; ++k) tw.push_back({0, k, Convention::Twisted});

  for (int m = 0; m < 3; ++m) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) out.closed_form[m][i][j] = Cyc::zero();
    for (int i = 0; i < 3; ++i) {
      FusionResult r = fuse_hw_twisted(lvl, tw[static_cast<size_t>(m)],
                                       tw[static_cast<size_t>(i)]);
      for (const auto& s : r.summands)
        for (int j = 0; j < 3; ++j)
          if (s.weight.weight(lvl) == tw[static_cast<size_t>(j)].weight(lvl))
            out.closed_form[m][i][j] += Cyc::one();
    }
  }

  // S-matrix over Q(zeta_12): sqrt(3) = zeta + zeta^{-1}, e^{2pi i/3} = zeta^4.
  const Cyc z = Cyc::root_of_unity(12, 1);
  const Cyc s3 = (z + z.pow(-1)) * rat(1, 3);
  const Cyc w = Cyc::root_of_unity(12, 4), wb = Cyc::root_of_unity(12, 8);
  const Cyc one = Cyc::one();
  Cyc S[3][3] = {{-one, one, -one}, {one, -wb, w}, {-one, w, -wb}};
  for (auto& row : S)
    for (auto& e : row) e *= s3;

  // Exact 3x3 inverse by Gauss-Jordan.
  Cyc A[3][6];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      A[r][c] = S[r][c];
      A[r][c + 3] = r == c ? Cyc::one() : Cyc::zero();
    }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    while (piv < 3 && A[piv][col].is_zero()) ++piv;
    if (piv == 3) throw MathError("verlinde_check: singular S-matrix");
    for (int c = 0; c < 6; ++c) std::swap(A[col][c], A[piv][c]);
    Cyc inv = A[col][col].inverse();
    for (int c = 0; c < 6; ++c) A[col][c] *= inv;
    for (int r = 0; r < 3; ++r) {
      if (r == col || A[r][col].is_zero()) continue;
      Cyc f = A[r][col];
      for (int c = 0; c < 6; ++c) A[r][c] -= f * A[col][c];
    }
  }
  Cyc Sinv[3][3];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) Sinv[r][c] = A[r][c + 3];

  // N_{mi}^j = sum_mu S[m][mu] S[i][mu] Sinv[mu][j] / S[0][mu].
  for (int m = 0; m < 3; ++m)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Cyc acc = Cyc::zero();
        for (int mu = 0; mu < 3; ++mu)
          acc += S[m][mu] * S[i][mu] * Sinv[mu][j] * S[0][mu].inverse();
        out.verlinde[m][i][j] = acc.reduced();
      }
  return out;
}

}  // namespace qva
