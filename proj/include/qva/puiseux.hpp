#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qva/cyclotomic.hpp"
#include "qva/rat.hpp"

namespace qva {

/// Truncation sentinel for exact (polynomial) data. Any real truncation used
/// by the library is far below this.
inline Rat inf_trunc() { return Rat(1000000000L); }

/// Truncated Puiseux series in q with cyclotomic coefficients. Exponents are
/// stored as integer numerators over a common ramification ram(); terms with
/// exponent >= trunc() are unknown and never stored. Every operation
/// propagates the pessimistic truncation of its inputs.
class Puiseux {
 public:
  Puiseux() : ram_(1), trunc_(inf_trunc()) {}
  explicit Puiseux(const Rat& trunc) : ram_(1), trunc_(trunc) {}

  static Puiseux zero(const Rat& trunc = inf_trunc()) { return Puiseux(trunc); }
  static Puiseux monomial(const Cyc& c, const Rat& exp, const Rat& trunc = inf_trunc());
  static Puiseux from_rat(const Rat& r, const Rat& trunc = inf_trunc()) {
    return monomial(Cyc(r), 0, trunc);
  }

  long ram() const { return ram_; }
  const Rat& trunc() const { return trunc_; }
  bool known_zero() const { return t_.empty(); }
  size_t term_count() const { return t_.size(); }

  /// Leading term, or nullopt when no term is known below trunc().
  std::optional<std::pair<Rat, Cyc>> leading() const;
  /// Valuation; equals trunc() for a series with no known terms.
  Rat val() const;
  /// Coefficient at exponent e; throws MathError when e >= trunc().
  Cyc coefficient(const Rat& e) const;
  std::vector<std::pair<Rat, Cyc>> terms() const;

  Puiseux operator-() const;
  Puiseux operator+(const Puiseux& o) const;
  Puiseux operator-(const Puiseux& o) const;
  Puiseux operator*(const Puiseux& o) const;
  Puiseux& operator+=(const Puiseux& o) { return *this = *this + o; }
  Puiseux& operator-=(const Puiseux& o) { return *this = *this - o; }
  Puiseux& operator*=(const Puiseux& o) { return *this = *this * o; }

  Puiseux scaled(const Cyc& c) const;
  Puiseux scaled(const Rat& r) const { return scaled(Cyc(r)); }
  /// Multiply by the monomial c*q^e.
  Puiseux shifted(const Cyc& c, const Rat& e) const;

  /// Multiplicative inverse. The input truncation must be finite; the result
  /// is exact through trunc() - 2*val().
  Puiseux inverted() const;
  Puiseux pow_int(long n) const;

  /// Substitute q -> q^u for rational u > 0.
  Puiseux scale_exponents(const Rat& u) const;
  /// q d/dq.
  Puiseux qderiv() const;

  /// Copy with truncation lowered to min(trunc(), T).
  Puiseux truncated(const Rat& T) const;

  /// True when all stored coefficients are rational numbers.
  bool all_rational() const;
  /// Copy with every coefficient reduced to order 1 where possible (keeps
  /// later arithmetic on the fast rational path). Throws if some coefficient
  /// is genuinely irrational.
  Puiseux rationalized() const;

  /// Terms below min(trunc) agree.
  static bool agree(const Puiseux& a, const Puiseux& b);

  std::string str() const;

 private:
  long ram_;
  std::map<long long, Cyc> t_;
  Rat trunc_;

  Puiseux rebased(long m) const;
  void insert_term(long long key, const Cyc& c);
  void prune();
  friend class EpsPoly;
};

inline Puiseux operator*(const Rat& r, const Puiseux& p) { return p.scaled(r); }

}  // namespace qva
