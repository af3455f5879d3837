#pragma once

#include <array>
#include <string>
#include <vector>

#include "qva/cyclotomic.hpp"

namespace qva {

/// Admissible sl2 level -2 + p/q with gcd(p,q)=1, p >= 2.
struct Level {
  long p = 2, q = 1;

  Level() = default;
  Level(long p_, long q_);
  Rat t() const { return rat(p, q); }
  Rat ell() const { return Rat(-2) + t(); }
};

/// Which weight formula an (n, kappa) pair uses:
///   HW:      j = n - 1 - (kappa - 1) t, 1 <= n <= p-1, 1 <= kappa <= q,
///   Twisted: j = n     - (kappa - 1) t, 0 <= n <= p-2, 1 <= kappa <= q.
enum class Convention { HW, Twisted };

struct AdmLabel {
  long n = 1;
  long kappa = 1;
  Convention conv = Convention::HW;

  Rat weight(const Level& lvl) const;
  /// The HW-style n index (twisted labels sit one lower).
  long hw_n() const { return conv == Convention::HW ? n : n + 1; }
  bool valid(const Level& lvl) const;

  bool operator==(const AdmLabel& o) const = default;
};

/// All admissible labels of the given convention at this level.
std::vector<AdmLabel> admissible_labels(const Level& lvl, Convention conv);
/// The label with the given weight, or throws std::invalid_argument.
AdmLabel label_from_weight(const Level& lvl, const Rat& j, Convention conv);
/// Whether some label of the given convention has this weight.
bool weight_is_admissible(const Level& lvl, const Rat& j, Convention conv);

/// The four module families appearing in the fusion theorems.
enum class ModuleKind {
  HW,        // L(l, j)
  Contra,    // (L(l, j))*
  TwHW,      // sigma^{-1/2}(L(l, j)), twisted-convention label
  TwContra,  // sigma^{+1/2}((L(l, j))*)
};

struct ModuleLabel {
  ModuleKind kind = ModuleKind::HW;
  AdmLabel weight;

  std::string str(const Level& lvl) const;
  bool operator==(const ModuleLabel& o) const = default;
};

/// A fusion product: a multiset of simple summands (empty = zero).
struct FusionResult {
  std::vector<ModuleLabel> summands;  // kept sorted

  void add(const ModuleLabel& m);
  bool operator==(const FusionResult& o) const { return summands == o.summands; }
  std::string str(const Level& lvl) const;
};

/// Roots {r - s t - l/2 : 0 <= r <= p-2, 0 <= s <= q-1} of the polynomial
/// cutting out the sigma-twisted Zhu algebra, sorted descending.
std::vector<Rat> twisted_zhu_roots(const Level& lvl);

/// L(l,j1) x L(l,j2) (both hw labels).
FusionResult fuse_hw_hw(const Level& lvl, const AdmLabel& j1, const AdmLabel& j2);

/// L(l,j1) x sigma^{-1/2}(L(l,j2)) (both twisted labels). Zero unless
/// 0 <= kappa2 - 1 <= q - kappa1.
FusionResult fuse_hw_twisted(const Level& lvl, const AdmLabel& j1, const AdmLabel& j2);

/// The contragredient-side rules. Covered kind pairs: Contra x HW,
/// HW x Contra, Contra x Contra, Contra x TwContra, Contra x TwHW,
/// HW x TwContra; anything else throws std::invalid_argument.
FusionResult fuse_contra(const Level& lvl, const ModuleLabel& a, const ModuleLabel& b);

enum class OracleKind { Twisted, Contra, HW };

/// Brute-force fusion from the explicit Zhu bimodule quotient: for each
/// i in [0, n1-1] evaluate the product of linear factors exactly over Q and
/// keep the basis vectors y^i it fails to kill.
FusionResult bimodule_oracle(const Level& lvl, const AdmLabel& j1, const AdmLabel& j2,
                             OracleKind kind);

/// 3x3 integer fusion matrices (N_i)_{jk} indexed by the three k = -4/3
/// modules {vacuum, j=-2/3, j=-4/3}.
using FusionMatrix = std::array<std::array<Cyc, 3>, 3>;
struct VerlindeData {
  std::array<FusionMatrix, 3> closed_form;
  std::array<FusionMatrix, 3> verlinde;
};

/// Closed-form twisted fusion matrices at (2,3) next to the Verlinde-formula
/// matrices computed from the S-matrix over Q(zeta_12) with the contraction
/// N_{ij}^k = sum_m S_im S_jm (S^-1)_mk / S_0m.
VerlindeData verlinde_check();

}  // namespace qva
