#pragma once

#include <vector>

#include "qva/puiseux.hpp"

namespace qva {

/// Monomial value coef * e^{2 pi i turns} * q^{qexp} * (1+eps)^{epspow}.
/// coef is kept positive; signs live in turns. eps is the deformation
/// parameter used to take z -> 1 limits of character specializations.
struct QMono {
  Rat coef = 1;
  Rat turns = 0;  // in [0,1)
  Rat qexp = 0;
  Rat epspow = 0;

  static QMono one() { return {}; }
  static QMono q_power(const Rat& e) { return {1, 0, e, 0}; }

  QMono normalized() const {
    QMono m = *this;
    if (m.coef == 0) throw std::invalid_argument("QMono: zero coefficient");
    if (m.coef < 0) {
      m.coef = -m.coef;
      m.turns += Rat(1, 2);
    }
    m.turns = frac_part(m.turns);
    return m;
  }

  QMono operator*(const QMono& o) const {
    QMono m{coef * o.coef, frac_part(turns + o.turns), qexp + o.qexp, epspow + o.epspow};
    return m;
  }

  QMono inverse() const {
    return {Rat(1) / coef, frac_part(-turns), -qexp, -epspow};
  }

  /// Raise to a rational power; requires the positive part of the
  /// coefficient to have an exact root.
  QMono pow(const Rat& r) const {
    auto c = pow_rat_exact(coef, r);
    if (!c) throw MathError("QMono::pow: coefficient has no exact rational root");
    return {*c, frac_part(turns * r), qexp * r, epspow * r};
  }

  /// Phase (coefficient and root of unity) as a cyclotomic number.
  Cyc phase() const { return Cyc::from_turns(turns) * coef; }

  bool is_unit() const { return coef == 1 && turns == 0 && qexp == 0 && epspow == 0; }
  bool is_q_trivial() const { return qexp == 0 && epspow == 0; }
};

/// Truncated Laurent expansion in eps with Puiseux-series coefficients:
/// sum_k c_[k] eps^{ofs_+k}, exact modulo eps^{ofs_ + c_.size()}. Used to
/// evaluate character expressions whose factors have poles at z = 1 that
/// cancel in the full expression.
class EpsPoly {
 public:
  /// Zero, known modulo eps^{precision}.
  static EpsPoly zero(int precision) { return EpsPoly(precision, {}); }
  /// Embed an eps-independent series with window size w.
  static EpsPoly from_series(const Puiseux& p, int w);
  /// Embed a monomial, expanding (1+eps)^epspow binomially to window w; the
  /// q-part is exact through q_trunc.
  static EpsPoly from_mono(const QMono& m, int w, const Rat& q_trunc = inf_trunc());

  int ofs() const { return ofs_; }
  int precision() const { return ofs_ + static_cast<int>(c_.size()); }
  const std::vector<Puiseux>& coeffs() const { return c_; }
  /// Coefficient of eps^k (exact zero below ofs, throws at or above precision).
  Puiseux at(int k) const;

  EpsPoly operator-() const;
  EpsPoly operator+(const EpsPoly& o) const;
  EpsPoly operator-(const EpsPoly& o) const;
  EpsPoly operator*(const EpsPoly& o) const;
  EpsPoly& operator+=(const EpsPoly& o) { return *this = *this + o; }
  EpsPoly& operator*=(const EpsPoly& o) { return *this = *this * o; }

  EpsPoly scaled(const Cyc& c) const;
  EpsPoly inverted() const;
  EpsPoly pow_int(long n) const;

  /// The eps -> 0 limit. Throws on a genuine pole or when the window does
  /// not reach eps^0.
  Puiseux limit() const;

  bool known_zero() const { return c_.empty(); }

 private:
  EpsPoly(int ofs, std::vector<Puiseux> c) : ofs_(ofs), c_(std::move(c)) { normalize(); }

  int ofs_;
  std::vector<Puiseux> c_;

  void normalize();
};

}  // namespace qva
