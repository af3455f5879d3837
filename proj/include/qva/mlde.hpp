#pragma once

#include <string>
#include <vector>

#include "qva/modforms.hpp"

namespace qva {

/// Serre derivative of weight w: q df/dq + w * E_2 * f. The input must carry
/// a finite truncation (E_2 is expanded to the same order).
Puiseux serre_derivative(const Puiseux& f, const Rat& w);

/// D^{(k)} = serre_derivative at weight 2k-2 composed down to weight 0.
Puiseux d_power(const Puiseux& f, int k);

enum class MLDEGroup { FullSL2Z, Gamma0_2 };

/// A weight-2r coefficient basis form: Theta_bar(i, j) with i + j = r for
/// Gamma0(2), E4^a E6^b with 4a + 6b = 2r for the full modular group.
struct BasisForm {
  MLDEGroup group;
  int i = 0, j = 0;  // Theta_bar indices
  int a = 0, b = 0;  // Eisenstein exponents

  std::string name() const;
  Puiseux series(const Rat& T) const;
  bool operator==(const BasisForm& o) const = default;
};

/// All basis forms of weight 2r for the given group (may be empty).
std::vector<BasisForm> weight_basis(MLDEGroup g, int r);

/// Monic modular differential operator
///   D^{(order)} + sum_{r=1}^{order} f_r D^{(order-r)},
/// where f_r is a rational combination of weight-2r basis forms.
struct MLDEOp {
  int order = 1;
  MLDEGroup group = MLDEGroup::Gamma0_2;
  /// coeffs[r-1] holds the combination multiplying D^{(order-r)}.
  std::vector<std::vector<std::pair<Rat, BasisForm>>> coeffs;

  Puiseux coefficient_series(int r, const Rat& T) const;
};

/// Apply the operator; truncation propagates from f.
Puiseux mlde_apply(const MLDEOp& op, const Puiseux& f);

/// True iff mlde_apply(op, f) has no nonzero term below `through`. Throws
/// MathError when the result is not known that far.
bool mlde_verify(const MLDEOp& op, const Puiseux& f, const Rat& through);

/// Fit the unique monic operator annihilating every solution, solving the
/// exact linear system over the rationals. Throws MathError when the system
/// is underdetermined or inconsistent.
MLDEOp mlde_fit(const std::vector<Puiseux>& solutions, int order, MLDEGroup group);

}  // namespace qva
