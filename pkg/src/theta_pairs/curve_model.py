"""Curve data for a fixed angle and a fixed side ratio.

An angle with rational cosine is stored as the reduced pair (s, r) with
cos = s/r and beta = s/r in (-1, 1).  A configuration joins the angle with a
coprime pair (k, l) of distinct square-free positive integers; the interesting
plane curve is

    l * x * (x + beta - 1) * (x + beta + 1) = k * y * (y + beta - 1) * (y + beta + 1)

and its Jacobian is the short Weierstrass curve Y^2 = X^3 + a*X + b with the
coefficients computed in `make_config`.  The correspondence sends the node
(0, 0) to the point at infinity.

Points are exact: `HolmPoint` and `ECPoint` carry Fractions, and `INFINITY`
is the (unique) identity of the Weierstrass group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Union

from .exact_arith import Rational, factorize, is_squarefree


class AngleOutOfRange(ValueError):
    """cos = s/r must have 0 < r and |s| < r."""


class NotReduced(ValueError):
    """The pair (s, r) must be in lowest terms."""


class EqualRatio(ValueError):
    """k = l degenerates the curve; the two triangle families coincide."""


class NotCoprime(ValueError):
    """k and l must be coprime."""


class NotSquarefree(ValueError):
    """k and l must be square-free positive integers."""


class NotOnCurve(ValueError):
    """A group-law operand failed the Weierstrass equation check."""


class _PointAtInfinity:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _PointAtInfinity()


class HolmPoint(NamedTuple):
    x: Fraction
    y: Fraction


class ECPoint(NamedTuple):
    X: Fraction
    Y: Fraction


ECValue = Union[ECPoint, _PointAtInfinity]


@dataclass(frozen=True)
class Angle:
    s: int
    r: int

    @property
    def beta(self) -> Fraction:
        return Fraction(self.s, self.r)


def make_angle(s: int, r: int) -> Angle:
    """Validated angle from the reduced cosine s/r.

    >>> make_angle(1, 2).beta
    Fraction(1, 2)
    >>> make_angle(0, 1).beta
    Fraction(0, 1)
    """
    if r < 1 or abs(s) >= r:
        raise AngleOutOfRange(f"need |s| < r and r >= 1, got s={s} r={r}")
    if gcd(abs(s), r) != 1:
        raise NotReduced(f"cos = {s}/{r} is not in lowest terms")
    return Angle(s, r)


@dataclass(frozen=True)
class CurveConfig:
    k: int
    l: int
    angle: Angle
    a: Fraction = field(compare=False)
    b: Fraction = field(compare=False)
    ratio_primes: tuple[int, ...] = field(compare=False)

    @property
    def beta(self) -> Fraction:
        return self.angle.beta


def make_config(k: int, l: int, angle: Angle) -> CurveConfig:
    """Validated configuration; computes the Weierstrass coefficients.

    >>> cfg = make_config(1, 2, make_angle(1, 2))
    >>> (cfg.a, cfg.b)
    (Fraction(-169, 12), Fraction(610, 27))
    """
    if k == l:
        raise EqualRatio("k and l must differ")
    if k < 1 or l < 1 or not is_squarefree(k) or not is_squarefree(l):
        raise NotSquarefree(f"k={k}, l={l} must be square-free positive integers")
    if gcd(k, l) != 1:
        raise NotCoprime(f"gcd({k}, {l}) != 1")
    beta = angle.beta
    b2 = beta * beta
    a = -Fraction(1, 3) * k * k * l * l * (3 + b2) ** 2
    b = Fraction(1, 27) * k * k * l * l * (
        2 * k * l * b2 * (b2 - 9) ** 2
        + 27 * k * k * (b2 - 1) ** 2
        + 27 * l * l * (b2 - 1) ** 2
    )
    primes = tuple(sorted(factorize(k * l)))
    cfg = CurveConfig(k, l, angle, a, b, primes)
    assert discriminant(cfg) != 0
    return cfg


def discriminant(cfg: CurveConfig) -> Fraction:
    """-16(4a^3 + 27b^2); nonzero for every valid configuration.

    >>> discriminant(make_config(1, 2, make_angle(0, 1)))
    Fraction(-62208, 1)
    """
    return -16 * (4 * cfg.a ** 3 + 27 * cfg.b ** 2)


def j_invariant(cfg: CurveConfig) -> Fraction:
    """>>> j_invariant(make_config(1, 2, make_angle(0, 1)))
    Fraction(-3072, 1)
    """
    return -110592 * cfg.a ** 3 / discriminant(cfg)


def holm_contains(cfg: CurveConfig, p: HolmPoint) -> bool:
    beta = cfg.beta
    x, y = Fraction(p.x), Fraction(p.y)
    lhs = cfg.l * x * (x + beta - 1) * (x + beta + 1)
    rhs = cfg.k * y * (y + beta - 1) * (y + beta + 1)
    return lhs == rhs


def ec_contains(cfg: CurveConfig, q: ECValue) -> bool:
    if q is INFINITY:
        return True
    X, Y = Fraction(q.X), Fraction(q.Y)
    return Y * Y == X ** 3 + cfg.a * X + cfg.b


class NinePointEntry(NamedTuple):
    name: str
    holm: HolmPoint
    ec: ECValue
    corrected: bool


def nine_points(cfg: CurveConfig) -> list[NinePointEntry]:
    """The grid points {-beta-1, 0, -beta+1}^2 of the plane curve with their
    Weierstrass images, in row-major order P1..P9.

    P5 = (0, 0) is the node and maps to INFINITY.  The printed image usually
    quoted for P1 drops a factor of l in the Y-coordinate; the entry here
    carries the on-curve value and is flagged `corrected`.
    """
    k, l, beta = cfg.k, cfg.l, cfg.beta
    lo, mid, hi = -beta - 1, Fraction(0), -beta + 1
    third = Fraction(1, 3)
    b2 = beta * beta

    def E(X: Rational, Y: Rational) -> ECPoint:
        return ECPoint(Fraction(X), Fraction(Y))

    entries = [
        NinePointEntry(
            "P1",
            HolmPoint(lo, hi),
            E(third * k * l * (3 + b2), k * (k - l) * l * (b2 - 1)),
            True,
        ),
        NinePointEntry(
            "P2",
            HolmPoint(mid, hi),
            E(
                third * l * (3 * l * (1 + beta) ** 2 - 2 * k * beta * (3 + beta)),
                (k - l) * l * (1 + beta) * (k * (beta - 1) - l * (1 + beta) ** 2),
            ),
            False,
        ),
        NinePointEntry(
            "P3",
            HolmPoint(hi, hi),
            E(third * k * l * (-3 + (beta - 6) * beta), k * l * (k + l) * (b2 - 1)),
            False,
        ),
        NinePointEntry(
            "P4",
            HolmPoint(lo, mid),
            E(
                third * k * (3 * k * (beta - 1) ** 2 - 2 * l * (beta - 3) * beta),
                k * (k - l) * (beta - 1) * (l + k * (beta - 1) ** 2 + l * beta),
            ),
            False,
        ),
        NinePointEntry("P5", HolmPoint(mid, mid), INFINITY, False),
        NinePointEntry(
            "P6",
            HolmPoint(hi, mid),
            E(
                third * k * (3 * k * (1 + beta) ** 2 - 2 * l * beta * (3 + beta)),
                k * (k - l) * (1 + beta) * (l - l * beta + k * (1 + beta) ** 2),
            ),
            False,
        ),
        NinePointEntry(
            "P7",
            HolmPoint(lo, lo),
            E(third * k * l * (-3 + beta * (6 + beta)), -k * l * (k + l) * (b2 - 1)),
            False,
        ),
        NinePointEntry(
            "P8",
            HolmPoint(mid, lo),
            E(
                third * l * (3 * l * (beta - 1) ** 2 - 2 * k * (beta - 3) * beta),
                -(k - l) * l * (beta - 1) * (l * (beta - 1) ** 2 + k * (1 + beta)),
            ),
            False,
        ),
        NinePointEntry(
            "P9",
            HolmPoint(hi, lo),
            E(third * k * l * (3 + b2), -k * (k - l) * l * (b2 - 1)),
            False,
        ),
    ]
    return entries


def tangent_point_p0(cfg: CurveConfig) -> HolmPoint:
    """The distinguished plane point (-2k*beta/(k+l), -2l*beta/(k+l)).

    It always satisfies l*x = k*y, so the coordinate transform to the
    Weierstrass curve is undefined at it; see tangent_point_image for the
    point it corresponds to after resolving the indeterminacy.

    >>> tangent_point_p0(make_config(1, 2, make_angle(1, 2)))
    HolmPoint(x=Fraction(-1, 3), y=Fraction(-2, 3))
    """
    k, l, beta = cfg.k, cfg.l, cfg.beta
    return HolmPoint(Fraction(-2 * k * beta, k + l), Fraction(-2 * l * beta, k + l))
