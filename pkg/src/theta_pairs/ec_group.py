"""Chord-and-tangent arithmetic on Y^2 = X^3 + a*X + b over the rationals.

All operations validate their operands against the curve equation and raise
NotOnCurve otherwise.  Set CHECK_CLOSURE = True (test builds do) to also
assert that every computed sum lands back on the curve.
"""

from __future__ import annotations

from .curve_model import CurveConfig, ECPoint, ECValue, INFINITY, NotOnCurve, ec_contains

CHECK_CLOSURE = False


def _require(cfg: CurveConfig, p: ECValue) -> None:
    if not ec_contains(cfg, p):
        # coordinates can be huge; keep the message value-free
        raise NotOnCurve("operand does not satisfy the curve equation")


def neg(cfg: CurveConfig, p: ECValue) -> ECValue:
    _require(cfg, p)
    if p is INFINITY:
        return INFINITY
    return ECPoint(p.X, -p.Y)


def _add_raw(cfg: CurveConfig, p: ECValue, q: ECValue) -> ECValue:
    if p is INFINITY:
        return q
    if q is INFINITY:
        return p
    if p.X == q.X:
        if p.Y == -q.Y:
            return INFINITY
        # p == q: tangent slope
        m = (3 * p.X * p.X + cfg.a) / (2 * p.Y)
    else:
        m = (q.Y - p.Y) / (q.X - p.X)
    x3 = m * m - p.X - q.X
    y3 = m * (p.X - x3) - p.Y
    out = ECPoint(x3, y3)
    if CHECK_CLOSURE:
        assert ec_contains(cfg, out), "group law left the curve"
    return out


def add(cfg: CurveConfig, p: ECValue, q: ECValue) -> ECValue:
    _require(cfg, p)
    _require(cfg, q)
    return _add_raw(cfg, p, q)


def scalar_mul(cfg: CurveConfig, n: int, p: ECValue) -> ECValue:
    """[n]p by double-and-add; n may be negative or zero."""
    _require(cfg, p)
    if n < 0:
        n, p = -n, neg(cfg, p)
    acc: ECValue = INFINITY
    base = p
    while n:
        if n & 1:
            acc = _add_raw(cfg, acc, base)
        n >>= 1
        if n:
            base = _add_raw(cfg, base, base)
    return acc


def is_torsion(cfg: CurveConfig, p: ECValue) -> bool:
    """True iff p has finite order.

    Rational torsion has order at most 12, so checking [2]p .. [12]p for the
    identity decides the question.
    """
    _require(cfg, p)
    if p is INFINITY:
        return True
    acc: ECValue = p
    for _ in range(2, 13):
        acc = _add_raw(cfg, acc, p)
        if acc is INFINITY:
            return True
    return False
