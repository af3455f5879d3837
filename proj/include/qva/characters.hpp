#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qva/modforms.hpp"

namespace qva {

/// Monomial coef * e^{2 pi i turns} * q^{qexp} * prod_v v^{vars[v]} in the
/// formal variables of a character expression (y and the z_i).
struct VarMono {
  Rat coef = 1;
  Rat turns = 0;
  Rat qexp = 0;
  std::map<std::string, Rat> vars;

  static VarMono one() { return {}; }
  static VarMono var(const std::string& name, const Rat& e = 1) {
    VarMono m;
    if (e != 0) m.vars[name] = e;
    return m;
  }
  static VarMono q_power(const Rat& e) {
    VarMono m;
    m.qexp = e;
    return m;
  }

  VarMono operator*(const VarMono& o) const;
  VarMono pow(const Rat& r) const;
  VarMono inverse() const { return pow(-1); }

  std::string str() const;
};

/// Spectral-flow substitution, applied simultaneously:
///   y   -> y * y_image   (a monomial in the z_i and q),
///   z_i -> z_i * q^{shift[z_i]}.
struct FlowData {
  VarMono y_image;  // must not mention y; coef 1, turns 0
  std::map<std::string, Rat> shift;

  /// The image of a variable monomial under this substitution.
  VarMono substituted(const VarMono& m) const;
};

/// sl2 flow sigma^ell: y -> y z^ell q^{ell^2/4}, z -> z q^{ell/2}.
FlowData sl2_flow(const Rat& ell);
/// sl3 flow along (1/2) of the first fundamental coweight.
FlowData a2_flow_half_lambda1();
/// sl3 flow along (1/3) of the sum of both fundamental coweights.
FlowData a2_flow_third_rho();
/// d4 flow along the i-th fundamental coweight, i in {1,3,4}.
FlowData d4_flow(int i);
/// d4 flow along -(1/2) of the second fundamental coweight.
FlowData d4_flow_minus_half_lambda2();

/// Variable assignment for evaluation. Each variable maps to a monomial
/// value; a z -> 1 limit is requested by assigning (1+eps)^{c} with a generic
/// nonzero direction c.
struct Specialization {
  std::map<std::string, QMono> assign;
  Rat trunc = 24;
  int eps_degree = 4;

  Specialization& set(const std::string& v, const QMono& m) {
    assign[v] = m;
    return *this;
  }
  /// Assign v = (1+eps)^c, requesting the limit v -> 1.
  Specialization& limit(const std::string& v, const Rat& c) {
    assign[v] = QMono{1, 0, 0, c};
    return *this;
  }
  bool needs_limit() const {
    for (const auto& [v, m] : assign)
      if (m.epspow != 0) return true;
    return false;
  }
};

/// Immutable symbolic character expression: eta/theta/Eisenstein atoms with
/// monomial arguments, combined by sums, products, quotients and powers.
class CharExpr {
 public:
  enum class Kind {
    Eta,             // eta(scale * tau)
    Theta,           // jacobi theta idx, nome q^u
    ClassicalTheta,  // Theta_{m,2}
    TwistedE,        // E_k[e^{2 pi i lambda}; arg]
    Literal,         // fixed Puiseux series
    Mono,            // variable monomial
    Sum,             // weighted sum
    Product,
    Quotient,  // kids[0] / kids[1]
    Pow        // kids[0] ^ pw
  };
  struct Node {
    Kind kind;
    long scale = 1;  // Eta
    int idx = 0;     // Theta index / ClassicalTheta m / TwistedE weight
    long u = 1;      // Theta nome exponent
    Rat lambda = 0;  // TwistedE phase parameter in [0,1)
    VarMono arg;     // atom argument or Mono value
    Puiseux lit;     // Literal
    long pw = 1;     // Pow exponent
    std::vector<Cyc> weights;    // Sum
    std::vector<CharExpr> kids;  // Sum/Product/Quotient/Pow
  };

  static CharExpr eta(long scale = 1);
  static CharExpr theta(int idx, const VarMono& arg, long u = 1);
  static CharExpr classical(int m, const VarMono& arg);
  static CharExpr twisted_e(int k, const Rat& lambda, const VarMono& arg);
  static CharExpr literal(const Puiseux& p);
  static CharExpr mono(const VarMono& m);
  static CharExpr sum(std::vector<std::pair<Cyc, CharExpr>> parts);
  static CharExpr product(std::vector<CharExpr> parts);
  static CharExpr quotient(CharExpr num, CharExpr den);
  static CharExpr pow(CharExpr base, long n);

  const Node& node() const { return *n_; }

  /// Apply a spectral-flow substitution to every monomial in the tree.
  CharExpr flowed(const FlowData& f) const;

  /// One evaluation pass at q-truncation T with eps window w.
  EpsPoly eval_eps(const Specialization& s, const Rat& T, int w) const;

  /// Evaluate to a Puiseux series exact through s.trunc, taking eps -> 0
  /// limits where requested. Retries internally with more q/eps headroom;
  /// throws MathError on a genuine pole.
  Puiseux evaluate(const Specialization& s) const;

 private:
  explicit CharExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const Node> n_;
};

/// Flowed Dynkin label and conformal dimension of the sigma^{-1/2} image of
/// the boundary-level module with label j (level -2 + 2/u).
struct WeightDim {
  Rat label;
  Rat dim;
};
WeightDim flowed_weight_dim(long u, long j);
/// Same data at a general admissible level -2 + p/q, module indices (i, j).
WeightDim general_admissible_weight_dim(long p, long q, long i, long j);

/// ch[L(Lambda_{k,j})](y,z,q) at boundary level k = -2 + 2/u, u odd.
CharExpr build_sl2_boundary_char(long u, long j);

enum class Sl2HalfModule { L0, L1, DplusHalf, DplusThreeHalf };
/// The four level -1/2 highest-weight characters.
CharExpr build_sl2_half_char(Sl2HalfModule which);

enum class Sl3Module { Vac, L1, L2, RhoHalf };
/// The four sl3 boundary-level (k = -3/2) characters in (y, z1, z2, q).
CharExpr build_sl3_boundary_char(Sl3Module which);

enum class D4Module { Vac, L1, L3, L4, Lmid };
/// The five d4 level -2 characters in (y, z1..z4, q), built from the
/// Eisenstein-bracket vacuum expression and the R_j combinations.
CharExpr build_d4_char(D4Module which);
/// The residue function R_j (j in 1..4), y-free.
CharExpr build_Rj(int j);

/// Stored q-series character of the flowed Bershadsky-Polyakov module at
/// k = -9/4: q^{1/6}(1 + 4q + 10q^2 + 24q^3 + 51q^4 + 100q^5 + O(q^6)).
Puiseux bp_flowed_char();

}  // namespace qva
