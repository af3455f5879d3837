#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qva {

/// Exact rational scalar. GMP keeps values canonical (reduced, positive
/// denominator) after every canonicalize().
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator");
  r.canonicalize();
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
  if (!is_integer(r)) throw std::invalid_argument("to_long: not an integer");
  if (!r.get_num().fits_slong_p()) throw std::overflow_error("to_long: overflow");
  return r.get_num().get_si();
}

/// Largest integer <= r.
inline Rat rat_floor(const Rat& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return Rat(q);
}

/// r mod 1, in [0,1).
inline Rat frac_part(const Rat& r) { return r - rat_floor(r); }

inline Rat pow_int(const Rat& base, long e) {
  if (e == 0) return 1;
  if (base == 0 && e < 0) throw std::domain_error("pow_int: 0^negative");
  mpz_class n, d;
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(n.get_mpz_t(), base.get_num().get_mpz_t(), a);
  mpz_pow_ui(d.get_mpz_t(), base.get_den().get_mpz_t(), a);
  Rat r = (e > 0) ? Rat(n, d) : Rat(d, n);
  r.canonicalize();
  return r;
}

/// base^e for rational e; base must be positive and the root exact.
inline std::optional<Rat> pow_rat_exact(const Rat& base, const Rat& e) {
  if (base <= 0) return std::nullopt;
  if (base == 1) return Rat(1);
  if (is_integer(e)) return pow_int(base, to_long(e));
  unsigned long b = e.get_den().get_ui();
  mpz_class rn, rd;
  if (!mpz_root(rn.get_mpz_t(), base.get_num().get_mpz_t(), b)) return std::nullopt;
  if (!mpz_root(rd.get_mpz_t(), base.get_den().get_mpz_t(), b)) return std::nullopt;
  Rat root(rn, rd);
  root.canonicalize();
  return pow_int(root, to_long(e * Rat(e.get_den())));
}

/// Generalized binomial coefficient C(a, k) for rational a.
inline Rat binom(const Rat& a, long k) {
  if (k < 0) return 0;
  Rat r = 1;
  for (long i = 0; i < k; ++i) r *= (a - i) / Rat(i + 1);
  return r;
}

inline long lcm_long(long a, long b) {
  mpz_class r;
  mpz_class A(a), B(b);
  mpz_lcm(r.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  if (!r.fits_slong_p()) throw std::overflow_error("lcm overflow");
  return r.get_si();
}

inline long gcd_long(long a, long b) {
  mpz_class r, A(a), B(b);
  mpz_gcd(r.get_mpz_t(), A.get_mpz_t(), B.get_mpz_t());
  return r.get_si();
}

/// Error type for well-defined mathematical failure modes (poles, singular
/// systems, insufficient expansion depth), as opposed to usage errors.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qva
