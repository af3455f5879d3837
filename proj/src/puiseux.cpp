#include "qva/puiseux.hpp"

#include <algorithm>
#include <sstream>

namespace qva {

Puiseux Puiseux::monomial(const Cyc& c, const Rat& exp, const Rat& trunc) {
  Puiseux p(trunc);
  p.ram_ = exp.get_den().get_si();
  if (!c.is_zero() && exp < trunc) p.t_[exp.get_num().get_si()] = c;
  return p;
}

std::optional<std::pair<Rat, Cyc>> Puiseux::leading() const {
  if (t_.empty()) return std::nullopt;
  auto it = t_.begin();
  return std::make_pair(rat(it->first, ram_), it->second);
}

Rat Puiseux::val() const {
  auto l = leading();
  return l ? l->first : trunc_;
}

Cyc Puiseux::coefficient(const Rat& e) const {
  if (e >= trunc_) throw MathError("Puiseux: coefficient above truncation");
  Rat scaled = e * Rat(ram_);
  if (!is_integer(scaled)) return Cyc::zero();
  auto it = t_.find(to_long(scaled));
  return it == t_.end() ? Cyc::zero() : it->second;
}

std::vector<std::pair<Rat, Cyc>> Puiseux::terms() const {
  std::vector<std::pair<Rat, Cyc>> out;
  out.reserve(t_.size());
  for (const auto& [k, c] : t_) out.emplace_back(rat(k, ram_), c);
  return out;
}

Puiseux Puiseux::rebased(long m) const {
  if (m == ram_) return *this;
  if (m % ram_ != 0) throw std::invalid_argument("Puiseux::rebased: bad target");
  Puiseux p(trunc_);
  p.ram_ = m;
  long f = m / ram_;
  for (const auto& [k, c] : t_) p.t_[k * f] = c;
  return p;
}

void Puiseux::insert_term(long long key, const Cyc& c) {
  if (rat(static_cast<long>(key), ram_) >= trunc_) return;
  auto [it, fresh] = t_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  } else if (c.is_zero()) {
    t_.erase(it);
  }
}

void Puiseux::prune() {
  for (auto it = t_.begin(); it != t_.end();) {
    if (it->second.is_zero() || rat(static_cast<long>(it->first), ram_) >= trunc_)
      it = t_.erase(it);
    else
      ++it;
  }
}

Puiseux Puiseux::operator-() const {
  Puiseux p = *this;
  for (auto& [k, c] : p.t_) c = -c;
  return p;
}

Puiseux Puiseux::operator+(const Puiseux& o) const {
  long m = lcm_long(ram_, o.ram_);
  Puiseux a = rebased(m), b = o.rebased(m);
  a.trunc_ = std::min(trunc_, o.trunc_);
  for (const auto& [k, c] : b.t_) a.insert_term(k, c);
  a.prune();
  return a;
}

Puiseux Puiseux::operator-(const Puiseux& o) const { return *this + (-o); }

Puiseux Puiseux::operator*(const Puiseux& o) const {
  long m = lcm_long(ram_, o.ram_);
  Puiseux a = rebased(m), b = o.rebased(m);
  Puiseux r(std::min(trunc_ + o.val(), o.trunc_ + val()));
  r.ram_ = m;
  for (const auto& [ka, ca] : a.t_)
    for (const auto& [kb, cb] : b.t_) {
      long long k = ka + kb;
      if (rat(static_cast<long>(k), m) >= r.trunc_) break;  // b ascending
      r.insert_term(k, ca * cb);
    }
  return r;
}

Puiseux Puiseux::scaled(const Cyc& c) const {
  if (c.is_zero()) return zero(trunc_);
  Puiseux p = *this;
  for (auto& [k, x] : p.t_) x *= c;
  p.prune();
  return p;
}

Puiseux Puiseux::shifted(const Cyc& c, const Rat& e) const {
  return *this * monomial(c, e);
}

Puiseux Puiseux::inverted() const {
  if (t_.empty()) throw MathError("Puiseux: inverting a series with no known terms");
  long long v = t_.begin()->first;
  const Cyc c0inv = t_.begin()->second.inverse();
  // Step lattice of the val-stripped series.
  long long step = 0;
  for (const auto& [k, c] : t_) step = gcd_long(step, k - v);
  if (step == 0) {
    // Single monomial; exact when the input is.
    Rat t = trunc_ >= inf_trunc() ? inf_trunc()
                                  : trunc_ - 2 * rat(static_cast<long>(v), ram_);
    return monomial(c0inv, rat(static_cast<long>(-v), ram_), t);
  }
  if (trunc_ >= inf_trunc())
    throw std::invalid_argument("Puiseux::inverted: set a finite truncation first");
  // h = q^v / f has valuation 0, lives on the step lattice, and is exact
  // through trunc - v; the result q^{-v} h is exact through trunc - 2v.
  Rat h_trunc = trunc_ - rat(v, ram_);
  long long n_steps = 0;
  while (rat(static_cast<long>(n_steps * step), ram_) < h_trunc) ++n_steps;
  std::vector<Cyc> a(static_cast<size_t>(n_steps), Cyc::zero());
  for (const auto& [k, c] : t_) {
    long long idx = (k - v) / step;
    if (idx < n_steps) a[static_cast<size_t>(idx)] = c;
  }
  std::vector<Cyc> b(static_cast<size_t>(n_steps), Cyc::zero());
  b[0] = c0inv;
  for (long long n = 1; n < n_steps; ++n) {
    Cyc acc = Cyc::zero();
    for (long long j = 1; j <= n; ++j) {
      if (a[static_cast<size_t>(j)].is_zero()) continue;
      acc += a[static_cast<size_t>(j)] * b[static_cast<size_t>(n - j)];
    }
    b[static_cast<size_t>(n)] = -(acc * c0inv);
  }
  Puiseux r(trunc_ - 2 * rat(v, ram_));
  r.ram_ = ram_;
  for (long long n = 0; n < n_steps; ++n) {
    if (b[static_cast<size_t>(n)].is_zero()) continue;
    r.insert_term(n * step - v, b[static_cast<size_t>(n)]);
  }
  return r;
}

Puiseux Puiseux::pow_int(long n) const {
  if (n < 0) return inverted().pow_int(-n);
  if (n == 0) return monomial(Cyc::one(), 0);
  Puiseux r = *this, b = *this;
  --n;
  while (n > 0) {
    if (n & 1) r = r * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return r;
}

Puiseux Puiseux::scale_exponents(const Rat& u) const {
  if (u <= 0) throw std::invalid_argument("scale_exponents: u must be positive");
  Puiseux r(trunc_ >= inf_trunc() ? inf_trunc() : trunc_ * u);
  long un = u.get_num().get_si();
  long ud = u.get_den().get_si();
  r.ram_ = ram_ * ud;
  for (const auto& [k, c] : t_) r.t_[k * un] = c;
  return r;
}

Puiseux Puiseux::qderiv() const {
  Puiseux r(trunc_);
  r.ram_ = ram_;
  for (const auto& [k, c] : t_) {
    Cyc d = c * rat(k, ram_);
    if (!d.is_zero()) r.t_[k] = d;
  }
  return r;
}

Puiseux Puiseux::truncated(const Rat& T) const {
  Puiseux r = *this;
  r.trunc_ = std::min(trunc_, T);
  r.prune();
  return r;
}

bool Puiseux::all_rational() const {
  for (const auto& [k, c] : t_)
    if (!c.is_rational()) return false;
  return true;
}

Puiseux Puiseux::rationalized() const {
  Puiseux r = *this;
  for (auto& [k, c] : r.t_) c = Cyc(c.to_rational());
  return r;
}

bool Puiseux::agree(const Puiseux& a, const Puiseux& b) {
  Rat T = std::min(a.trunc_, b.trunc_);
  Puiseux d = (a - b).truncated(T);
  return d.known_zero();
}

std::string Puiseux::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*q^(" << rat_str(rat(k, ram_)) << ")";
  }
  if (first) os << "0";
  if (trunc_ < inf_trunc()) os << " + O(q^(" << rat_str(trunc_) << "))";
  return os.str();
}

}  // namespace qva
