#pragma once

#include <string>

#include "json.hpp"
#include "qva/characters.hpp"
#include "qva/fusion.hpp"
#include "qva/mlde.hpp"

namespace qva {

using Json = nlohmann::json;

/// Rationals serialize as "p/q" strings, cyclotomics as
/// {"order": N, "coeffs": ["p/q", ...]} (plain string when rational).
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json cyc_to_json(const Cyc& c);
Cyc cyc_from_json(const Json& j);

/// {"ram": M, "trunc": "T", "terms": [["num", coeff], ...]} with exponent
/// numerators over the ramification M, ascending.
Json puiseux_to_json(const Puiseux& p);
Puiseux puiseux_from_json(const Json& j);

Json varmono_to_json(const VarMono& m);
VarMono varmono_from_json(const Json& j);

/// Expression tree with one {"kind": ...} object per node. Round-trips
/// bit-exactly: from(to(e)) evaluates identically to e.
Json charexpr_to_json(const CharExpr& e);
CharExpr charexpr_from_json(const Json& j);

/// {"order": k, "group": "full_SL2Z"|"Gamma0_2",
///  "coeffs": [{"at": k-r, "basis": "Theta(i,j)"|"E4^aE6^b", "weight": "p/q"}]}
Json mlde_to_json(const MLDEOp& op);
MLDEOp mlde_from_json(const Json& j);

/// Parse a basis-form name as printed by BasisForm::name().
BasisForm basis_form_from_name(MLDEGroup g, const std::string& name);

/// {"level": {"p":..,"q":..}, "pairs":[{"a":..,"b":..,"result":[..]}]} with
/// module labels rendered by ModuleLabel::str.
Json fusion_table_to_json(
    const Level& lvl,
    const std::vector<std::pair<std::pair<ModuleLabel, ModuleLabel>, FusionResult>>& pairs);

}  // namespace qva
