"""Capacity of online adversarial channels as a function of power and delay.

    omniscient (and any 0-delay jammer)    (1 - 2p)^+
    additive, d > 0                         1 - p
    overwrite                               1 - p        if p <= d, p < 1/2
                                            1 - 2p + d   if d <  p < 1/2
                                            0            if p >= 1/2
    jam-or-listen variants                  same as the unrestricted model

At ``p == d`` both overwrite branches give ``1 - p``.
"""

from __future__ import annotations

from fractions import Fraction

from .params import as_fraction

MODELS = ("omniscient", "additive", "overwrite", "jl_additive", "jl_overwrite")


def capacity_exact(model: str, p, d=0) -> Fraction:
    p = as_fraction(p)
    d = as_fraction(d)
    if not (0 <= p <= 1 and 0 <= d <= 1):
        raise ValueError("p and d must lie in [0, 1]")
    if model.startswith("jl_"):
        model = model[3:]
    if model == "omniscient" or (model in ("additive", "overwrite") and d == 0):
        return max(1 - 2 * p, Fraction(0))
    if model == "additive":
        return 1 - p
    if model == "overwrite":
        if p >= Fraction(1, 2):
            return Fraction(0)
        if p <= d:
            return 1 - p
        return 1 - 2 * p + d
    raise ValueError(f"unknown model {model!r}; expected one of {MODELS}")


def capacity(model: str, p, d=0) -> float:
    return float(capacity_exact(model, p, d))
