#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qva/fusion.hpp"

namespace qva {

/// Affine sl2 generators, in normal-form tie-break order f < h < e.
enum class Gen { F = 0, H = 1, E = 2 };

/// One mode operator g_(m).
struct ModeOp {
  Gen g = Gen::H;
  long m = 0;
  auto operator<=>(const ModeOp&) const = default;
};

/// PBW monomial applied to a highest-weight symbol, written left to right
/// with modes ascending (most negative leftmost), ties f < h < e.
using ModeMonomial = std::vector<ModeOp>;

/// Rational combination of normal-form monomials.
using PBWElement = std::map<ModeMonomial, Rat>;

enum class ModuleType {
  Verma,   // strictly negative modes plus f_(0) survive
  Vacuum,  // strictly negative modes only
};

/// Parse "(-1/3)*e[-1]h[-1] + f[0]" style text. Monomials are kept as the
/// literal operator words written; the engine straightens them on use.
PBWElement parse_pbw(const std::string& text);
std::string pbw_str(const PBWElement& v);

PBWElement pbw_scaled(const PBWElement& v, const Rat& c);
PBWElement pbw_add(const PBWElement& a, const PBWElement& b);

/// Left-multiply by g_(n) and return the normal form: commutators
/// [x_m, y_n] = [x,y]_(m+n) + m delta_{m+n,0} <x,y> K with <e,f> = 1,
/// <h,h> = 2, K acting by `level`, h_(0) by `hw`, and nonnegative modes
/// annihilating the highest-weight symbol as the module type dictates.
PBWElement apply_mode(Gen g, long n, const PBWElement& v, const Rat& level,
                      const Rat& hw, ModuleType type = ModuleType::Verma);

/// Signed h_(0)-weight added by the monomial's generators (e:+2, f:-2).
long monomial_weight(const ModeMonomial& m);
/// Depth: minus the sum of mode indices.
long monomial_depth(const ModeMonomial& m);

/// True iff every raising operator kills v. Throws std::invalid_argument
/// when v is not homogeneous in weight and depth.
bool is_singular(const PBWElement& v, const Rat& level, const Rat& hw,
                 const std::vector<ModeOp>& raising,
                 ModuleType type = ModuleType::Verma);

/// Image of a weight-zero vacuum-module element in the half-twisted Zhu
/// algebra, as a polynomial in the h_(-1) class: charged modes are pushed up
/// by the (1+z)^{1/2} binomial relations, h modes below -1 by the weight-one
/// relation h_(-n) ~ -h_(-n+1), until only powers of h_(-1) remain.
/// Returns ascending coefficients. Throws MathError on nonzero weight or
/// when the rewrite budget is exhausted.
std::vector<Rat> zhu_twisted_image(const PBWElement& v, const Level& lvl);

/// Normal-form element of U(L0): monomials T_-^a T_0^b T_+^d.
using UL0Element = std::map<std::array<long, 3>, Rat>;

std::string ul0_str(const UL0Element& v);
/// Drop the monomials lying in the left ideal T_- U(L0) (a >= 1).
UL0Element ul0_mod_tminus(const UL0Element& v);

/// T_-^a T_0^b T_+^d * P(E_i(n,kappa)) for i in {1,2}, fully normal-ordered
/// with [T_0,T_+] = -2T_+, [T_0,T_-] = 2T_-, [T_+,T_-] = T_0.
/// Parameters are capped at 4 (throws std::invalid_argument beyond).
UL0Element ul0_reduce(long a, long b, long d, long n, long kappa,
                      const Level& lvl, int which);

/// The matching closed forms: for which == 1 the product
/// T_-^a prod (r+st+d)(T_0+r+st+d-1) T_0^b T_+^{n+d}; for which == 2 either
/// the exact T_-^{a+p-n-d} form (d < p-n) or the prod (st-m-r)(-T_0+...) form
/// (d = m+p-n). The first and third hold modulo T_- U(L0), the second exactly.
UL0Element ul0_closed_form(long a, long b, long d, long n, long kappa,
                           const Level& lvl, int which);

}  // namespace qva
