"""Exact q-series characters, modular differential operators, and fusion rules.

The heavy lifting lives in the compiled extension ``qva._core``; everything it
returns is either a plain python value or a JSON string (q-series use the
``{"ram", "trunc", "terms"}`` schema, operators the ``{"order", "group",
"coeffs"}`` schema).
"""

import json as _json

from ._core import (  # noqa: F401
    MathError,
    eta,
    fusion_table,
    is_singular,
    mlde_fit,
    mlde_verify,
    sl2_boundary_char,
    zhu_image,
    zhu_roots,
)


def series_terms(series_json):
    """Decode a q-series JSON string into a list of (exponent, coefficient)
    pairs with exponents as ``Fraction`` and rational coefficients as strings."""
    from fractions import Fraction

    data = _json.loads(series_json)
    ram = data["ram"]
    return [(Fraction(int(num), ram), coef) for num, coef in data["terms"]]
