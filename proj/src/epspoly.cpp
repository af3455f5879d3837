#include "qva/epspoly.hpp"

#include <algorithm>

namespace qva {

void EpsPoly::normalize() {
  size_t drop = 0;
  while (drop < c_.size() && c_[drop].known_zero()) ++drop;
  if (drop > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(drop));
    ofs_ += static_cast<int>(drop);
  }
}

EpsPoly EpsPoly::from_series(const Puiseux& p, int w) {
  std::vector<Puiseux> c(static_cast<size_t>(w), Puiseux::zero());
  if (w > 0) c[0] = p;
  return EpsPoly(0, std::move(c));
}

EpsPoly EpsPoly::from_mono(const QMono& mono, int w, const Rat& q_trunc) {
  QMono m = mono.normalized();
  Puiseux base = Puiseux::monomial(m.phase(), m.qexp, q_trunc);
  std::vector<Puiseux> c;
  c.reserve(static_cast<size_t>(w));
  for (int k = 0; k < w; ++k) {
    Rat b = binom(m.epspow, k);
    c.push_back(b == 0 ? Puiseux::zero(q_trunc) : base.scaled(b));
  }
  return EpsPoly(0, std::move(c));
}

Puiseux EpsPoly::at(int k) const {
  if (k >= precision()) throw MathError("EpsPoly: coefficient above eps precision");
  if (k < ofs_) return Puiseux::zero();
  return c_[static_cast<size_t>(k - ofs_)];
}

EpsPoly EpsPoly::operator-() const {
  EpsPoly r = *this;
  for (auto& p : r.c_) p = -p;
  return r;
}

EpsPoly EpsPoly::operator+(const EpsPoly& o) const {
  int hi = std::min(precision(), o.precision());
  int lo = std::min(c_.empty() ? hi : ofs_, o.c_.empty() ? hi : o.ofs_);
  std::vector<Puiseux> c;
  for (int k = lo; k < hi; ++k) {
    Puiseux s = Puiseux::zero();
    if (k >= ofs_ && k < precision()) s += c_[static_cast<size_t>(k - ofs_)];
    if (k >= o.ofs_ && k < o.precision()) s += o.c_[static_cast<size_t>(k - o.ofs_)];
    c.push_back(std::move(s));
  }
  return EpsPoly(lo, std::move(c));
}

EpsPoly EpsPoly::operator-(const EpsPoly& o) const { return *this + (-o); }

EpsPoly EpsPoly::operator*(const EpsPoly& o) const {
  int vA = ofs_, vB = o.ofs_;
  int hi = std::min(precision() + vB, o.precision() + vA);
  if (c_.empty() || o.c_.empty()) return zero(hi);
  int lo = vA + vB;
  std::vector<Puiseux> c(static_cast<size_t>(hi - lo), Puiseux::zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].known_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      int k = static_cast<int>(i + j);
      if (lo + k >= hi) break;
      if (o.c_[j].known_zero()) continue;
      c[static_cast<size_t>(k)] += c_[i] * o.c_[j];
    }
  }
  return EpsPoly(lo, std::move(c));
}

EpsPoly EpsPoly::scaled(const Cyc& s) const {
  EpsPoly r = *this;
  for (auto& p : r.c_) p = p.scaled(s);
  return r;
}

EpsPoly EpsPoly::inverted() const {
  if (c_.empty()) throw MathError("EpsPoly: inverting zero");
  size_t L = c_.size();
  Puiseux d0inv = c_[0].inverted();
  std::vector<Puiseux> b(L, Puiseux::zero());
  b[0] = d0inv;
  for (size_t n = 1; n < L; ++n) {
    Puiseux acc = Puiseux::zero();
    for (size_t j = 1; j <= n; ++j) {
      if (c_[j].known_zero()) continue;
      acc += c_[j] * b[n - j];
    }
    b[n] = -(acc * d0inv);
  }
  return EpsPoly(-ofs_, std::move(b));
}

EpsPoly EpsPoly::pow_int(long n) const {
  if (n < 0) return inverted().pow_int(-n);
  if (n == 0) return from_series(Puiseux::from_rat(1), static_cast<int>(c_.size()) + ofs_);
  EpsPoly r = *this, base = *this;
  --n;
  while (n > 0) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return r;
}

Puiseux EpsPoly::limit() const {
  if (precision() <= 0)
    throw MathError("EpsPoly: eps window does not reach eps^0; raise --eps-degree");
  if (c_.empty()) return Puiseux::zero();
  if (ofs_ < 0)
    throw MathError("EpsPoly: pole at eps = 0; the specialization limit diverges");
  if (ofs_ > 0) return Puiseux::zero();
  return c_[0];
}

}  // namespace qva
