#pragma once

#include <vector>

#include "qva/rat.hpp"

namespace qva {

/// Element of the cyclotomic field Q(zeta_N), stored as a polynomial in
/// zeta_N of degree < phi(N), reduced modulo the N-th cyclotomic polynomial.
/// The representation is canonical for a fixed N, so equality at equal order
/// is coefficient-wise; mixed orders compare after lifting to the lcm.
class Cyc {
 public:
  Cyc() : order_(1), c_(1, Rat(0)) {}
  explicit Cyc(const Rat& r) : order_(1), c_(1, r) {}
  Cyc(int order, std::vector<Rat> coeffs);

  static Cyc zero() { return Cyc(); }
  static Cyc one() { return Cyc(Rat(1)); }
  /// zeta_n^k.
  static Cyc root_of_unity(long n, long k);
  /// e^{2*pi*i*t} for rational t.
  static Cyc from_turns(const Rat& t);

  int order() const { return order_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Throws if not rational.
  Rat to_rational() const;

  /// Re-express in Q(zeta_m); m must be a multiple of order().
  Cyc lifted(int m) const;
  /// Smallest-order representation with the same value (drops to order 1
  /// when rational; otherwise only strips unused prime factors cheaply).
  Cyc reduced() const;

  Cyc operator-() const;
  Cyc operator+(const Cyc& o) const;
  Cyc operator-(const Cyc& o) const;
  Cyc operator*(const Cyc& o) const;
  Cyc operator/(const Cyc& o) const;
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  Cyc operator*(const Rat& r) const;
  Cyc inverse() const;
  Cyc pow(long e) const;
  /// Complex conjugate (zeta -> zeta^{-1}).
  Cyc conj() const;

  bool operator==(const Cyc& o) const;
  bool operator!=(const Cyc& o) const { return !(*this == o); }

  std::string str() const;

 private:
  int order_;
  std::vector<Rat> c_;  // size == deg Phi_order

  void normalize_trailing();
};

/// Coefficients of the N-th cyclotomic polynomial (ascending, monic), cached.
const std::vector<Rat>& cyclotomic_poly(int n);

inline Cyc operator*(const Rat& r, const Cyc& c) { return c * r; }

}  // namespace qva
