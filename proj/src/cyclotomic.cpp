#include "qva/cyclotomic.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <sstream>

namespace qva {

namespace {

using Poly = std::vector<Rat>;  // ascending coefficients

void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of polynomials over Q; remainder must vanish.
Poly poly_divexact(Poly num, const Poly& den) {
  Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
  while (num.size() >= den.size() && !num.empty()) {
    Rat c = num.back() / den.back();
    size_t shift = num.size() - den.size();
    q[shift] = c;
    for (size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
    poly_trim(num);
  }
  if (!num.empty()) throw std::logic_error("poly_divexact: nonzero remainder");
  return q;
}

// Remainder of p modulo the monic polynomial m.
Poly poly_mod(Poly p, const Poly& m) {
  while (p.size() >= m.size()) {
    Rat c = p.back() / m.back();
    size_t shift = p.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) p[shift + i] -= c * m[i];
    poly_trim(p);
  }
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

// Extended gcd: returns (g, s) with s*a == g mod m, g constant when
// gcd(a, m) == 1 (true whenever m is irreducible and a != 0 mod m).
std::pair<Poly, Poly> poly_half_xgcd(Poly a, Poly m) {
  Poly r0 = std::move(m), r1 = std::move(a);
  Poly s0 = {}, s1 = {Rat(1)};
  poly_trim(r0);
  poly_trim(r1);
  while (!r1.empty()) {
    // r0 = q*r1 + r2
    Poly q(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0, Rat(0));
    Poly r2 = r0;
    while (r2.size() >= r1.size() && !r2.empty()) {
      Rat c = r2.back() / r1.back();
      size_t shift = r2.size() - r1.size();
      q[shift] += c;
      for (size_t i = 0; i < r1.size(); ++i) r2[shift + i] -= c * r1[i];
      poly_trim(r2);
    }
    Poly s2 = s0;
    Poly qs1 = poly_mul(q, s1);
    if (s2.size() < qs1.size()) s2.resize(qs1.size(), Rat(0));
    for (size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
    poly_trim(s2);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {r0, s0};
}

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace

const std::vector<Rat>& cyclotomic_poly(int n) {
  static std::map<int, Poly> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
  std::function<const Poly&(int)> get = [&](int m) -> const Poly& {
    auto jt = cache.find(m);
    if (jt != cache.end()) return jt->second;
    Poly num(m + 1, Rat(0));
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d)
      if (m % d == 0) num = poly_divexact(num, get(d));
    return cache.emplace(m, std::move(num)).first->second;
  };
  return get(n);
}

Cyc::Cyc(int order, std::vector<Rat> coeffs) : order_(order), c_(std::move(coeffs)) {
  if (order_ < 1) throw std::invalid_argument("Cyc: order must be positive");
  size_t deg = cyclotomic_poly(order_).size() - 1;
  if (c_.size() > deg) {
    Poly r = poly_mod(c_, cyclotomic_poly(order_));
    c_ = std::move(r);
  }
  c_.resize(deg, Rat(0));
}

Cyc Cyc::root_of_unity(long n, long k) {
  if (n < 1) throw std::invalid_argument("root_of_unity: order must be positive");
  k %= n;
  if (k < 0) k += n;
  long g = gcd_long(n, k == 0 ? n : k);
  n /= g;
  k /= g;
  Poly p(static_cast<size_t>(k) + 1, Rat(0));
  p[k] = 1;
  return Cyc(static_cast<int>(n), std::move(p));
}

Cyc Cyc::from_turns(const Rat& t) {
  Rat f = frac_part(t);
  return root_of_unity(f.get_den().get_si(), f.get_num().get_si());
}

bool Cyc::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool Cyc::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

Rat Cyc::to_rational() const {
  if (!is_rational()) throw MathError("Cyc: value is not rational");
  return c_[0];
}

Cyc Cyc::lifted(int m) const {
  if (m == order_) return *this;
  if (m % order_ != 0) throw std::invalid_argument("Cyc::lifted: order must divide target");
  long step = m / order_;
  Poly p(static_cast<size_t>(c_.size() - 1) * step + 1, Rat(0));
  for (size_t i = 0; i < c_.size(); ++i) p[i * step] = c_[i];
  return Cyc(m, std::move(p));
}

Cyc Cyc::reduced() const {
  if (is_rational()) return Cyc(c_[0]);
  return *this;
}

void Cyc::normalize_trailing() {}

Cyc Cyc::operator-() const {
  Cyc r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Cyc Cyc::operator+(const Cyc& o) const {
  int m = static_cast<int>(lcm_long(order_, o.order_));
  Cyc a = lifted(m), b = o.lifted(m);
  for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
  return a;
}

Cyc Cyc::operator-(const Cyc& o) const { return *this + (-o); }

Cyc Cyc::operator*(const Cyc& o) const {
  // Fast path: both rational.
  if (order_ == 1 && o.order_ == 1) return Cyc(c_[0] * o.c_[0]);
  int m = static_cast<int>(lcm_long(order_, o.order_));
  Cyc a = lifted(m), b = o.lifted(m);
  return Cyc(m, poly_mul(a.c_, b.c_));
}

Cyc Cyc::operator*(const Rat& r) const {
  Cyc a = *this;
  for (auto& x : a.c_) x *= r;
  return a;
}

Cyc Cyc::inverse() const {
  if (is_zero()) throw MathError("Cyc: division by zero");
  if (order_ == 1) return Cyc(Rat(1) / c_[0]);
  Poly a = c_;
  poly_trim(a);
  auto [g, s] = poly_half_xgcd(a, cyclotomic_poly(order_));
  if (g.size() != 1) throw std::logic_error("Cyc::inverse: gcd not constant");
  Rat inv = Rat(1) / g[0];
  for (auto& x : s) x *= inv;
  return Cyc(order_, std::move(s));
}

Cyc Cyc::operator/(const Cyc& o) const { return *this * o.inverse(); }

Cyc Cyc::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Cyc r = one(), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Cyc Cyc::conj() const {
  if (order_ == 1) return *this;
  Poly p(static_cast<size_t>(order_), Rat(0));
  Cyc r = zero();
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    r += root_of_unity(order_, -static_cast<long>(i)).lifted(order_) * c_[i];
  }
  return r;
}

bool Cyc::operator==(const Cyc& o) const {
  int m = static_cast<int>(lcm_long(order_, o.order_));
  Cyc a = lifted(m), b = o.lifted(m);
  return a.c_ == b.c_;
}

std::string Cyc::str() const {
  if (is_rational()) return rat_str(c_[0]);
  std::ostringstream os;
  os << "zeta" << order_ << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ",";
    os << rat_str(c_[i]);
  }
  os << "]";
  return os.str();
}

}  // namespace qva
