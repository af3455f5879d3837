#pragma once

#include "qva/epspoly.hpp"

namespace qva {

/// Bernoulli number B_k (B_1 = -1/2 convention).
Rat bernoulli_number(int k);
/// Bernoulli polynomial B_k(x).
Rat bernoulli_poly(int k, const Rat& x);

/// eta(scale * tau) = q^{scale/24} prod (1 - q^{scale n}), truncated at T.
Puiseux dedekind_eta(const Rat& T, long scale = 1);

/// Jacobi theta_i (i in 1..4) of argument z = arg with elliptic nome q^u,
/// via the defining sum. The eps window w carries (1+eps)^* powers of the
/// argument through z -> 1 limits.
EpsPoly jacobi_theta(int idx, const QMono& arg, long u, const Rat& T, int w = 1);
/// Sum form with a plain series result (argument must have epspow == 0).
Puiseux jacobi_theta_q(int idx, const QMono& arg, long u, const Rat& T);
/// Triple-product form of the same function; used to cross-check the sum.
Puiseux jacobi_theta_product(int idx, const QMono& arg, long u, const Rat& T);

/// Theta_{m,n}(z; q) = sum_j z^{n(j+m/(2n))} q^{n(j+m/(2n))^2}; only the
/// n = 2 lattice with m in {-1,0,1,2} is supported.
EpsPoly classical_theta(int m, int n, const QMono& arg, const Rat& T, int w = 1);

/// Eisenstein series normalized as
///   E_k = -B_k/k! + (2/(k-1)!) sum_{n>=1} n^{k-1} q^n / (1 - q^n),
/// so E_2 = -1/12 + 2q + 6q^2 + 8q^3 + ...
Puiseux eisenstein(int k, const Rat& T);

/// Twisted Eisenstein series E_k[phi; theta] with phi = e^{2 pi i lambda},
/// lambda in [0,1), and theta a monomial (phase, q-power, eps-power):
///   -B_k(lambda)/k! + (1/(k-1)!) sum'_{r>=0} (r+lambda)^{k-1} G(theta^{-1} q^{r+lambda})
///                   + ((-1)^k/(k-1)!) sum_{r>=1} (r-lambda)^{k-1} G(theta q^{r-lambda})
/// with G(x) = x/(1-x); the primed sum omits r = 0 when phi = theta = 1.
EpsPoly twisted_eisenstein(int k, const Rat& lambda, const QMono& theta, const Rat& T,
                           int w = 1);

/// Nullwert combination theta2^{4r} theta3^{4s} + theta2^{4s} theta3^{4r};
/// for r + s = k these span the weight-2k forms on Gamma^0(2).
Puiseux theta_bar(int r, int s, const Rat& T);

}  // namespace qva
