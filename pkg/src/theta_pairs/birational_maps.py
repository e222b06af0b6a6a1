"""Coordinate transforms between the plane cubic and its Weierstrass model.

`to_jacobian` sends the node (0, 0) to INFINITY and is undefined exactly on
the line l*x = k*y (the blown-down direction); `from_jacobian` is its inverse
and is undefined where its common denominator D vanishes.  Both raise
ExceptionalPoint at their respective bad loci instead of guessing.

The composite from_jacobian(to_jacobian(p)) is the identity away from the bad
loci, and both directions preserve the respective curve equations; the test
suite exercises this on batches of chord-and-tangent generated points.

Widely circulated formulas for this transform drop a factor of l in the
forward Y-coordinate and a global sign in the inverse; the versions here are
the algebraically consistent ones (the roundtrip identity forces both fixes).
"""

from __future__ import annotations

from fractions import Fraction

from . import ec_group
from .curve_model import (
    CurveConfig,
    ECPoint,
    ECValue,
    HolmPoint,
    INFINITY,
    NotOnCurve,
    ec_contains,
    holm_contains,
    nine_points,
)


class ExceptionalPoint(ValueError):
    """The transform is undefined at this point (blown-down locus)."""


class DegeneratePoint(ValueError):
    """The node (0, 0) bounds no triangle and carries no area data."""


_ORIGIN = HolmPoint(Fraction(0), Fraction(0))


def to_jacobian(cfg: CurveConfig, p: HolmPoint) -> ECValue:
    """Weierstrass image of a plane-curve point; (0, 0) maps to INFINITY."""
    if not holm_contains(cfg, p):
        # operands can be thousands of digits; keep messages value-free
        raise NotOnCurve("point does not satisfy the plane-curve equation")
    x, y = Fraction(p.x), Fraction(p.y)
    if x == 0 and y == 0:
        return INFINITY
    k, l, beta = cfg.k, cfg.l, cfg.beta
    t = l * x - k * y
    if t == 0:
        raise ExceptionalPoint("point lies on the blown-down line l*x = k*y")
    b2 = beta * beta
    num_x = k * l * (
        -3 * l * y
        + k * (3 * x + 6 * beta - (3 * x + 4 * y) * b2 - 6 * beta * b2)
        + l * beta * (-6 + 4 * x * beta + 3 * beta * (y + 2 * beta))
    )
    X = num_x / (3 * t)
    num_y = (
        k * l * (x - y) * (1 + 2 * (x + y) * beta + 3 * b2)
        - l * l * x * (beta * (x + beta) - 1)
        + k * k * y * (beta * (y + beta) - 1)
    )
    Y = -k * (k - l) * l * (b2 - 1) * num_y / (t * t)
    return ECPoint(X, Y)


def from_jacobian(cfg: CurveConfig, q: ECValue) -> HolmPoint:
    """Plane-curve point under the inverse transform; INFINITY maps to (0, 0)."""
    if not ec_contains(cfg, q):
        raise NotOnCurve("point does not satisfy the curve equation")
    if q is INFINITY:
        return _ORIGIN
    k, l, beta = cfg.k, cfg.l, cfg.beta
    X, Y = Fraction(q.X), Fraction(q.Y)
    b2 = beta * beta
    w = (
        9 * k * k * (b2 - 1) ** 2
        + 9 * l * l * (b2 - 1) ** 2
        - 2 * k * l * (9 + 5 * b2 * (b2 - 6))
    )
    d = 9 * (k + l) * (b2 - 1) * Y + beta * (
        k * l * w - 6 * k * l * (3 + 5 * b2) * X + 18 * X * X
    )
    if d == 0:
        raise ExceptionalPoint("inverse-transform denominator vanishes here")
    xn = 3 * k * (b2 - 1) * (
        l * (2 * k * k * b2 * (b2 - 1) + 3 * l * l * (b2 - 1) ** 2 + k * l * (3 + 16 * b2 - 3 * b2 * b2))
        + 6 * beta * Y
        - 3 * (k + l - (k - 3 * l) * b2) * X
    )
    yn = 3 * l * (b2 - 1) * (
        k * (2 * l * l * b2 * (b2 - 1) + 3 * k * k * (b2 - 1) ** 2 + k * l * (3 + 16 * b2 - 3 * b2 * b2))
        + 6 * beta * Y
        - 3 * (k + l + (3 * k - l) * b2) * X
    )
    return HolmPoint(-xn / d, -yn / d)


def _from_jacobian_beta0(cfg: CurveConfig, q: ECValue) -> HolmPoint:
    # Independent closed form valid only for beta = 0 (used as a cross-check):
    # x = k(X - l^2)/Y, y = l(X - k^2)/Y.
    if q is INFINITY:
        return _ORIGIN
    if q.Y == 0:
        raise ExceptionalPoint("inverse-transform denominator vanishes here")
    k, l = cfg.k, cfg.l
    return HolmPoint(k * (q.X - l * l) / q.Y, l * (q.X - k * k) / q.Y)


def areas(cfg: CurveConfig, p: HolmPoint) -> tuple[Fraction, Fraction]:
    """(A_x, A_y) = (x((x+beta)^2 - 1)/r, y((y+beta)^2 - 1)/r).

    These are the normalized triangle areas attached to the two coordinates;
    the curve equation is exactly the statement l*A_x = k*A_y.
    """
    x, y = Fraction(p.x), Fraction(p.y)
    if x == 0 and y == 0:
        raise DegeneratePoint("the node (0, 0) has no attached triangles")
    beta, r = cfg.beta, cfg.angle.r
    ax = x * ((x + beta) ** 2 - 1) / r
    ay = y * ((y + beta) ** 2 - 1) / r
    return ax, ay


def tangent_point_image(cfg: CurveConfig) -> ECValue:
    """Weierstrass point corresponding to the distinguished plane point
    tangent_point_p0 (which the raw transform cannot reach because it sits on
    the l*x = k*y line).

    Resolving the indeterminacy along the curve identifies it with the sum of
    the images of the grid points (0, -beta+1) and (0, -beta-1); for beta = 0
    those are opposite and the image is INFINITY, matching the fact that the
    distinguished point degenerates to the node.
    """
    imgs = {e.name: e.ec for e in nine_points(cfg)}
    return ec_group.add(cfg, imgs["P2"], imgs["P8"])
