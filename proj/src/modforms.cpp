#include "qva/modforms.hpp"

#include <cmath>
#include <mutex>
#include <vector>

namespace qva {

namespace {

Rat factorial(int n) {
  Rat r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace

Rat bernoulli_number(int k) {
  static std::vector<Rat> cache = {Rat(1)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  for (int m = static_cast<int>(cache.size()); m <= k; ++m) {
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    Rat acc = 0;
    for (int j = 0; j < m; ++j) acc += binom(Rat(m + 1), j) * cache[static_cast<size_t>(j)];
    cache.push_back(-acc / Rat(m + 1));
  }
  return cache[static_cast<size_t>(k)];
}

Rat bernoulli_poly(int k, const Rat& x) {
  Rat acc = 0;
  for (int j = 0; j <= k; ++j)
    acc += binom(Rat(k), j) * bernoulli_number(j) * pow_int(x, k - j);
  return acc;
}

Puiseux dedekind_eta(const Rat& T, long scale) {
  // Euler's pentagonal number theorem.
  Puiseux r = Puiseux::zero(T);
  Rat pref = Rat(scale) / 24;
  for (long k = 0;; ++k) {
    bool any = false;
    for (long sgn : {1L, -1L}) {
      long n = sgn * k;
      if (k == 0 && sgn < 0) continue;
      Rat e = pref + Rat(scale) * Rat(n * (3 * n - 1), 2);
      if (e < T) {
        any = true;
        r += Puiseux::monomial(Cyc(Rat((k % 2 == 0) ? 1 : -1)), e, T);
      }
    }
    if (!any && k > 0) break;
  }
  return r;
}

EpsPoly jacobi_theta(int idx, const QMono& arg0, long u, const Rat& T, int w) {
  if (idx < 1 || idx > 4) throw std::invalid_argument("jacobi_theta: index must be 1..4");
  if (u < 1) throw std::invalid_argument("jacobi_theta: modulus exponent must be positive");
  QMono arg = arg0.normalized();
  const bool half = (idx == 1 || idx == 2);
  const Rat s = arg.qexp;
  double sd = std::fabs(rat_double(s));
  double Td = std::max(1.0, rat_double(T));
  long N = static_cast<long>(std::ceil((sd + std::sqrt(sd * sd + 2.0 * u * Td)) /
                                       static_cast<double>(u))) +
           4;
  EpsPoly acc = EpsPoly::zero(w);
  bool nonempty = false;
  for (long n = -N; n <= N; ++n) {
    Rat x = half ? Rat(2 * n + 1, 2) : Rat(n);
    Rat wq = Rat(u) * x * x / 2;
    Rat exp_total = x * s + wq;
    if (exp_total >= T) continue;
    Rat extra_turns = 0;
    if (idx == 4) extra_turns = Rat(n, 2);          // (-1)^n
    if (idx == 1) extra_turns = Rat(2 * n + 1, 4);  // e^{pi i (n + 1/2)}
    QMono term = arg.pow(x) * QMono{1, extra_turns, wq, 0};
    acc += EpsPoly::from_mono(term, w, T);
    nonempty = true;
  }
  (void)nonempty;
  return acc + EpsPoly::from_series(Puiseux::zero(T), w);
}

Puiseux jacobi_theta_q(int idx, const QMono& arg, long u, const Rat& T) {
  if (arg.epspow != 0)
    throw std::invalid_argument("jacobi_theta_q: argument must not carry an eps power");
  return jacobi_theta(idx, arg, u, T, 1).limit();
}

Puiseux jacobi_theta_product(int idx, const QMono& arg0, long u, const Rat& T) {
  if (idx < 1 || idx > 4) throw std::invalid_argument("jacobi_theta_product: bad index");
  QMono arg = arg0.normalized();
  if (arg.epspow != 0)
    throw std::invalid_argument("jacobi_theta_product: argument must not carry eps");
  const Rat s = arg.qexp;
  double sd = std::fabs(rat_double(s));
  long N = static_cast<long>(std::ceil((rat_double(T) + sd) / static_cast<double>(u))) + 4;

  // Factor list: (1 + phase * q^exp) per entry, plus a monomial prefactor.
  struct Factor {
    Cyc phase;
    Rat exp;
  };
  std::vector<Factor> factors;
  Cyc zp = arg.phase();
  Cyc zm = zp.inverse();
  QMono pref = QMono::one();
  for (long n = 1; n <= N; ++n) factors.push_back({Cyc(Rat(-1)), Rat(u * n)});
  switch (idx) {
    case 3:
      for (long n = 1; n <= N; ++n) {
        Rat e = Rat(u) * Rat(2 * n - 1, 2);
        factors.push_back({zp, e + s});
        factors.push_back({zm, e - s});
      }
      break;
    case 4:
      for (long n = 1; n <= N; ++n) {
        Rat e = Rat(u) * Rat(2 * n - 1, 2);
        factors.push_back({-zp, e + s});
        factors.push_back({-zm, e - s});
      }
      break;
    case 2:
    case 1: {
      Cyc sign = (idx == 2) ? Cyc::one() : -Cyc::one();
      for (long n = 1; n <= N; ++n) {
        factors.push_back({sign * zp, Rat(u * n) + s});
        factors.push_back({sign * zm, Rat(u * (n - 1)) - s});
      }
      pref = arg.pow(Rat(1, 2)) * QMono{1, 0, Rat(u, 8), 0};
      if (idx == 1) pref = pref * QMono{1, Rat(1, 4), 0, 0};  // overall factor i
      break;
    }
    default:
      break;
  }

  Rat slack = 0;
  for (const auto& f : factors)
    if (f.exp < 0) slack -= f.exp;
  Puiseux acc = Puiseux::monomial(pref.phase(), pref.qexp, T + slack);
  for (const auto& f : factors) {
    Puiseux binfac = Puiseux::monomial(Cyc::one(), 0) + Puiseux::monomial(f.phase, f.exp);
    acc = acc * binfac;
    if (acc.known_zero()) break;
  }
  return acc.truncated(T);
}

EpsPoly classical_theta(int m, int n, const QMono& arg0, const Rat& T, int w) {
  if (n != 2) throw std::invalid_argument("classical_theta: only the n = 2 lattice is supported");
  if (m < -1 || m > 2) throw std::invalid_argument("classical_theta: m must be in {-1,0,1,2}");
  QMono arg = arg0.normalized();
  const Rat s = arg.qexp;
  double sd = std::fabs(rat_double(s));
  double Td = std::max(1.0, rat_double(T));
  long N = static_cast<long>(std::ceil(sd + std::sqrt(sd * sd + Td))) + 4;
  EpsPoly acc = EpsPoly::zero(w);
  for (long n = -N; n <= N; ++n) {
    Rat x = Rat(n) + Rat(m, 4);
    Rat e = 2 * x;          // z exponent
    Rat wq = 2 * x * x;     // q exponent
    if (e * s + wq >= T) continue;
    QMono term = arg.pow(e) * QMono{1, 0, wq, 0};
    acc += EpsPoly::from_mono(term, w, T);
  }
  return acc + EpsPoly::from_series(Puiseux::zero(T), w);
}

Puiseux eisenstein(int k, const Rat& T) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("eisenstein: weight must be even >= 2");
  Puiseux r = Puiseux::monomial(Cyc(-bernoulli_number(k) / factorial(k)), 0, T);
  Rat pref = Rat(2) / factorial(k - 1);
  long Tl = static_cast<long>(std::ceil(rat_double(T)));
  std::vector<Rat> sigma(static_cast<size_t>(Tl) + 1, Rat(0));
  for (long n = 1; n <= Tl; ++n) {
    Rat nk = pow_int(Rat(n), k - 1);
    for (long mlt = n; mlt <= Tl; mlt += n) sigma[static_cast<size_t>(mlt)] += nk;
  }
  for (long mlt = 1; mlt <= Tl; ++mlt) {
    if (Rat(mlt) >= T || sigma[static_cast<size_t>(mlt)] == 0) continue;
    r += Puiseux::monomial(Cyc(pref * sigma[static_cast<size_t>(mlt)]), Rat(mlt), T);
  }
  return r;
}

namespace {

// coef * x/(1-x) for a monomial x, as a truncated eps/q expansion.
EpsPoly geometric_term(const QMono& mu0, const Rat& coef, const Rat& T, int w) {
  QMono mu = mu0.normalized();
  const Rat e = mu.qexp;
  if (e > 0) {
    EpsPoly acc = EpsPoly::zero(w);
    for (long n = 1; Rat(n) * e < T; ++n)
      acc += EpsPoly::from_mono(mu.pow(Rat(n)), w, T).scaled(Cyc(coef));
    return acc + EpsPoly::from_series(Puiseux::zero(T), w);
  }
  if (e < 0) {
    // x/(1-x) = -1/(1-x^{-1}) = -sum_{n>=0} x^{-n}
    EpsPoly acc = EpsPoly::zero(w);
    for (long n = 0; Rat(n) * (-e) < T; ++n)
      acc += EpsPoly::from_mono(mu.pow(Rat(-n)), w, T).scaled(Cyc(-coef));
    return acc + EpsPoly::from_series(Puiseux::zero(T), w);
  }
  // q-independent: x = phase * (1+eps)^p.
  if (mu.coef == 1 && mu.turns == 0 && mu.epspow == 0)
    throw MathError("twisted_eisenstein: pole (argument monomial equals 1)");
  EpsPoly num = EpsPoly::from_mono(mu, w, T);
  EpsPoly den = EpsPoly::from_mono(QMono::one(), w, T) - num;
  return num.scaled(Cyc(coef)) * den.inverted();
}

}  // namespace

EpsPoly twisted_eisenstein(int k, const Rat& lambda, const QMono& theta0, const Rat& T,
                           int w) {
  if (k < 1) throw std::invalid_argument("twisted_eisenstein: weight must be >= 1");
  if (lambda < 0 || lambda >= 1)
    throw std::invalid_argument("twisted_eisenstein: lambda must lie in [0,1)");
  QMono theta = theta0.normalized();
  const Rat s = theta.qexp;
  Rat invfac = Rat(1) / factorial(k - 1);
  EpsPoly acc =
      EpsPoly::from_series(Puiseux::monomial(Cyc(-bernoulli_poly(k, lambda) / factorial(k)),
                                             0, T),
                           w);
  const bool untwisted = (lambda == 0 && theta.is_unit() && theta.coef == 1);
  // sum'_{r>=0} (r+lambda)^{k-1} G(theta^{-1} q^{r+lambda})
  for (long r = 0;; ++r) {
    Rat shift = Rat(r) + lambda;
    if (shift - s >= T && shift >= T) break;
    if (r == 0 && untwisted) continue;
    Rat c = pow_int(shift, k - 1) * invfac;
    if (c == 0) continue;
    QMono mu = theta.inverse() * QMono::q_power(shift);
    acc += geometric_term(mu, c, T, w);
  }
  // ((-1)^k) sum_{r>=1} (r-lambda)^{k-1} G(theta q^{r-lambda})
  Rat sgn = (k % 2 == 0) ? Rat(1) : Rat(-1);
  for (long r = 1;; ++r) {
    Rat shift = Rat(r) - lambda;
    if (shift + s >= T && shift >= T) break;
    Rat c = sgn * pow_int(shift, k - 1) * invfac;
    if (c == 0) continue;
    QMono mu = theta * QMono::q_power(shift);
    acc += geometric_term(mu, c, T, w);
  }
  return acc;
}

Puiseux theta_bar(int r, int s, const Rat& T) {
  if (r < 0 || s < 0) throw std::invalid_argument("theta_bar: indices must be >= 0");
  Puiseux t2 = jacobi_theta_q(2, QMono::one(), 1, T);
  Puiseux t3 = jacobi_theta_q(3, QMono::one(), 1, T);
  Puiseux a = t2.pow_int(4L * r) * t3.pow_int(4L * s);
  Puiseux b = t2.pow_int(4L * s) * t3.pow_int(4L * r);
  return (a + b).truncated(T);
}

}  // namespace qva
