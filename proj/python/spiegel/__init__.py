"""Reflection-theorem checks for Carlitz cyclotomic function fields."""

import json

from ._core import SpiegelError, genus
from ._core import run_json as _run_json
from ._core import zeta as _zeta

__all__ = ["SpiegelError", "genus", "run", "zeta"]


def run(q, p_poly, *, seed=1, probes=100, norm_bound=0):
    """Run the full pipeline; returns (report dict, exit code)."""
    text, code = _run_json(q, p_poly, seed, probes, norm_bound)
    return json.loads(text), code


def zeta(q, p_poly):
    """Zeta numerator coefficients a_0..a_2g and P(1)."""
    coeffs, h, verified = _zeta(q, p_poly)
    return [int(c) for c in coeffs], int(h), verified
