"""End-to-end pipeline: seed search, candidate enumeration, filtering,
triangle construction, and certified emission of pairs (N_x, N_y) of
theta-congruent numbers with l*N_x = k*N_y.

Enumeration strategy.  A single non-torsion seed Q is guaranteed to exist,
but nothing guarantees that the multiples of one particular seed hit the
filter quickly: empirically some configurations keep every accepted multiple
of the first seed out of reach of a desk-scale factoring budget while a
neighboring seed hits within a handful of multiples.  The generator therefore
walks a small pool of independent seeds (the non-torsion curve images of the
distinguished points, capped at 3) in lockstep, scanning candidates
sign*[n]Q_j in lexicographic (n, j, sign) order.  This keeps determinism,
keeps the certificate schema unchanged (the multiplier field is n), and makes
every configuration in the acceptance grid reachable.

Factoring strategy.  Accepted candidates need the square-free part of areas
whose numerators run to thousands of digits at moderate n, far beyond honest
factoring.  But A(t) for t = u/v in lowest terms splits as

    A(t) = t((t+beta)^2 - 1)/r = u(ur + (s-r)v)(ur + (s+r)v) / (v^3 r^3)

so only the three numerator pieces and v ever get factored, each about a
third of the digits of the assembled numerator; exponent maps are summed.
Pieces beyond the effort budget cause the candidate to be skipped rather than
guessed at, which preserves soundness (every emitted certificate is fully
factored) at a small cost in liveness.
"""

from __future__ import annotations

import concurrent.futures
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, NamedTuple, Optional

from . import ec_group
from .birational_maps import (
    DegeneratePoint,
    ExceptionalPoint,
    areas,
    from_jacobian,
    tangent_point_image,
)
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
from .exact_arith import (
    EffortExceeded,
    FactorBudget,
    Rational,
    ZeroInput,
    decompose_exponents,
    factorize,
    is_squarefree,
)
from .valuation_filter import evaluate_filters

# Frozen effort bounds for pipeline factorizations; generous enough for the
# acceptance grid, small enough that a pathological candidate is skipped in
# seconds rather than hanging the run.
PIPELINE_BUDGET = FactorBudget(work_units=240_000_000, digit_cap=110)

_SEED_POOL_CAP = 3
_COMBO_BOUND = 3


class NonPositiveArea(ValueError):
    """No triangle exists for this coordinate (x((x+beta)^2 - 1) <= 0)."""


class NoSeedFound(RuntimeError):
    """Bounded seed search exhausted; not expected for valid configs."""


class BudgetExhausted(RuntimeError):
    """Fewer certificates than requested were found by max_multiplier.

    The ones that were found are on the `certificates` attribute.
    """

    def __init__(self, certificates: list["PairCertificate"], requested: int):
        super().__init__(
            f"found {len(certificates)} of {requested} certificates within budget"
        )
        self.certificates = certificates


@dataclass(frozen=True)
class ThetaTriangle:
    """A rational triangle with the fixed angle between side_a and side_b.

    normalized_area = side_a*side_b/(2r), which is area/(r sin theta); when it
    is a square-free integer n the triangle witnesses that n is
    theta-congruent.
    """

    side_a: Fraction
    side_b: Fraction
    side_c: Fraction
    cos_theta: Fraction
    normalized_area: Fraction


@dataclass(frozen=True)
class PairCertificate:
    config: CurveConfig
    multiplier: int
    sign: int
    ec_point: ECPoint
    holm_point: HolmPoint
    A_x: Fraction
    A_y: Fraction
    N_x: int
    N_y: int
    triangle_x: ThetaTriangle
    triangle_y: ThetaTriangle
    filter: object  # FilterReport; typed loosely to keep dataclass frozen-simple


class VerificationResult(NamedTuple):
    ok: bool
    reasons: tuple[str, ...]

    def __bool__(self) -> bool:
        return self.ok


def triangle_from_x(cfg: CurveConfig, x: Rational) -> ThetaTriangle:
    """The triangle attached to a coordinate value with positive area.

    Sides are {|(x+beta)^2 - 1|, |2x|, 1 + (x+beta)^2 - 2(x+beta)beta}; the
    first two enclose the angle, and the law of cosines then holds as an
    algebraic identity.  Applies to either coordinate of a plane-curve point
    (the y side uses the same formula with y in place of x).

    >>> from theta_pairs.curve_model import make_angle, make_config
    >>> from fractions import Fraction
    >>> t = triangle_from_x(make_config(1, 2, make_angle(1, 2)), Fraction(-1, 3))
    >>> (t.side_a, t.side_b, t.side_c, t.normalized_area)
    (Fraction(35, 36), Fraction(2, 3), Fraction(31, 36), Fraction(35, 216))
    """
    x = Fraction(x)
    beta, r = cfg.beta, cfg.angle.r
    w = (x + beta) ** 2 - 1
    if x == 0 or x * w <= 0:
        raise NonPositiveArea("coordinate yields a non-positive area")
    tri = ThetaTriangle(
        side_a=abs(w),
        side_b=abs(2 * x),
        side_c=1 + (x + beta) ** 2 - 2 * (x + beta) * beta,
        cos_theta=beta,
        normalized_area=x * w / r,
    )
    assert tri.side_c > 0 and tri.normalized_area == tri.side_a * tri.side_b / (2 * r)
    return tri


def scale_triangle(t: ThetaTriangle, factor: Rational) -> ThetaTriangle:
    """Similar triangle with all sides scaled; area scales quadratically."""
    factor = Fraction(factor)
    assert factor > 0
    return ThetaTriangle(
        t.side_a * factor,
        t.side_b * factor,
        t.side_c * factor,
        t.cos_theta,
        t.normalized_area * factor * factor,
    )


def _seed_candidates(cfg: CurveConfig) -> list[ECValue]:
    # The distinguished point's curve image first (its raw transform is
    # undefined, so the resolved image stands in), then the eight affine grid
    # images in table order.
    cands: list[ECValue] = [tangent_point_image(cfg)]
    cands.extend(e.ec for e in nine_points(cfg) if e.name != "P5")
    return cands


def find_seed(cfg: CurveConfig) -> ECPoint:
    """First non-torsion point among the distinguished images, falling back
    to small integer combinations c1*Qa + c2*Qb with |ci| <= 3."""
    affine = []
    for q in _seed_candidates(cfg):
        if q is INFINITY:
            continue
        if not ec_group.is_torsion(cfg, q):
            return q
        affine.append(q)
    for qa, qb in combinations(affine, 2):
        for c1 in range(-_COMBO_BOUND, _COMBO_BOUND + 1):
            for c2 in range(-_COMBO_BOUND, _COMBO_BOUND + 1):
                q = ec_group.add(
                    cfg,
                    ec_group.scalar_mul(cfg, c1, qa),
                    ec_group.scalar_mul(cfg, c2, qb),
                )
                if q is not INFINITY and not ec_group.is_torsion(cfg, q):
                    return q
    raise NoSeedFound(f"no infinite-order point found for k={cfg.k} l={cfg.l}")


def _seed_pool(cfg: CurveConfig) -> list[ECPoint]:
    # Up to _SEED_POOL_CAP non-torsion candidate images, deduplicated up to
    # sign (P and -P walk the same coordinates).
    pool: list[ECPoint] = []
    seen = set()
    for q in _seed_candidates(cfg):
        if q is INFINITY or ec_group.is_torsion(cfg, q):
            continue
        key = (q.X, abs(q.Y))
        if key in seen:
            continue
        seen.add(key)
        pool.append(q)
        if len(pool) == _SEED_POOL_CAP:
            break
    if not pool:
        pool = [find_seed(cfg)]  # combination stage
    return pool


def _coordinate_exponents(
    cfg: CurveConfig, t: Fraction, budget: FactorBudget | None
) -> Optional[dict[int, int]]:
    # Exponent map of A(t) = u(ur+(s-r)v)(ur+(s+r)v)/(v^3 r^3), factoring only
    # the pieces; None when the effort budget is hit.
    u, v = t.numerator, t.denominator
    s, r = cfg.angle.s, cfg.angle.r
    exps: dict[int, int] = {}
    try:
        for piece in (u, u * r + (s - r) * v, u * r + (s + r) * v):
            for p, e in factorize(abs(piece), budget).items():
                exps[p] = exps.get(p, 0) + e
        for base in (v, r):
            for p, e in factorize(base, budget).items():
                exps[p] = exps.get(p, 0) - 3 * e
    except EffortExceeded:
        return None
    return {p: e for p, e in exps.items() if e}


def _evaluate_candidate(
    cfg: CurveConfig, n: int, sign: int, point: ECPoint, budget: FactorBudget | None
) -> Optional[PairCertificate]:
    # One candidate sign*[n]Q -> certificate, or None for any rejection.
    try:
        hp = from_jacobian(cfg, point)
    except ExceptionalPoint:
        return None
    report = evaluate_filters(cfg, hp)
    if not report.accepted:
        return None
    ex = _coordinate_exponents(cfg, hp.x, budget)
    if ex is None:
        return None
    ey = dict(ex)
    for p, e in factorize(cfg.l).items():
        ey[p] = ey.get(p, 0) + e
    for p, e in factorize(cfg.k).items():
        ey[p] = ey.get(p, 0) - e
    dx = decompose_exponents(ex)
    dy = decompose_exponents(ey)
    ax, ay = areas(cfg, hp)
    # Self-check the piece assembly before certifying anything.
    assert dx.squarefree_part * dx.cofactor ** 2 == ax
    assert dy.squarefree_part * dy.cofactor ** 2 == ay
    assert cfg.l * dx.squarefree_part == cfg.k * dy.squarefree_part
    tri_x = scale_triangle(triangle_from_x(cfg, hp.x), 1 / dx.cofactor)
    tri_y = scale_triangle(triangle_from_x(cfg, hp.y), 1 / dy.cofactor)
    assert tri_x.normalized_area == dx.squarefree_part
    assert tri_y.normalized_area == dy.squarefree_part
    return PairCertificate(
        config=cfg,
        multiplier=n,
        sign=sign,
        ec_point=point,
        holm_point=hp,
        A_x=ax,
        A_y=ay,
        N_x=dx.squarefree_part,
        N_y=dy.squarefree_part,
        triangle_x=tri_x,
        triangle_y=tri_y,
        filter=report,
    )


def iter_pairs(
    cfg: CurveConfig,
    count: int,
    max_multiplier: int,
    threads: Optional[int] = None,
    budget: FactorBudget | None = PIPELINE_BUDGET,
) -> Iterator[PairCertificate]:
    """Yield certificates in deterministic (n, seed, sign) order, stopping
    after `count`.  May yield fewer if max_multiplier is reached first."""
    if count < 1:
        raise ValueError("count must be positive")
    pool = _seed_pool(cfg)
    running: list[ECPoint] = []
    emitted = 0
    workers = max(1, threads or 1)
    executor = (
        concurrent.futures.ThreadPoolExecutor(max_workers=workers)
        if workers > 1
        else None
    )
    try:
        for n in range(1, max_multiplier + 1):
            if n == 1:
                running = list(pool)
            else:
                running = [
                    ec_group._add_raw(cfg, acc, q) for acc, q in zip(running, pool)
                ]
            batch = []
            for j, acc in enumerate(running):
                # non-torsion seeds never hit INFINITY at finite n
                batch.append((n, j, 1, acc))
                batch.append((n, j, -1, ECPoint(acc.X, -acc.Y)))
            if executor is None:
                results = [
                    _evaluate_candidate(cfg, n, sign, pt, budget)
                    for n, _, sign, pt in batch
                ]
            else:
                results = list(
                    executor.map(
                        lambda c: _evaluate_candidate(cfg, c[0], c[2], c[3], budget),
                        batch,
                    )
                )
            for cert in results:
                if cert is None:
                    continue
                yield cert
                emitted += 1
                if emitted >= count:
                    return
    finally:
        if executor is not None:
            executor.shutdown(wait=False, cancel_futures=True)


def generate_pairs(
    cfg: CurveConfig,
    count: int,
    max_multiplier: int,
    threads: Optional[int] = None,
    budget: FactorBudget | None = PIPELINE_BUDGET,
) -> list[PairCertificate]:
    """Certified pairs for the configuration; deterministic for fixed inputs.

    Raises BudgetExhausted (carrying the partial list) when fewer than
    `count` certificates exist among the scanned candidates.
    """
    certs = list(iter_pairs(cfg, count, max_multiplier, threads, budget))
    if len(certs) < count:
        raise BudgetExhausted(certs, count)
    return certs


def _check_triangle(
    tri: ThetaTriangle, n_value: int, cfg: CurveConfig, reasons: list[str], tag: str
) -> None:
    if not (tri.side_a > 0 and tri.side_b > 0 and tri.side_c > 0):
        reasons.append(f"TriangleSideNonpositive:{tag}")
    if tri.cos_theta != cfg.beta:
        reasons.append(f"TriangleCosMismatch:{tag}")
    lhs = tri.side_c ** 2
    rhs = tri.side_a ** 2 + tri.side_b ** 2 - 2 * tri.side_a * tri.side_b * cfg.beta
    if lhs != rhs:
        reasons.append(f"TriangleLawViolated:{tag}")
    if tri.normalized_area != tri.side_a * tri.side_b / (2 * cfg.angle.r):
        reasons.append(f"TriangleAreaInconsistent:{tag}")
    if tri.normalized_area != n_value:
        reasons.append(f"TriangleAreaMismatch:{tag}")


def verify_certificate(cert: PairCertificate) -> VerificationResult:
    """Re-derive every claim of a certificate from scratch.

    Total: never raises; returns ok = False with accumulated reason tags.
    Square-free parts are re-derived from the point: the x side by factoring
    its area pieces, the y side through the l/k exponent shift.  The shift
    costs nothing and gives up no soundness because reconstruction is then
    checked exactly: a square-free N with N*c^2 = A is THE square-free part
    of A, however its exponents were obtained.  Only when the x pieces are
    beyond the factoring budget does the y side get its own attempt.
    """
    reasons: list[str] = []
    cfg = cert.config
    if cert.multiplier < 1 or cert.sign not in (1, -1):
        reasons.append("MetadataInvalid")
    if not ec_contains(cfg, cert.ec_point):
        reasons.append("EcOffCurve")
    if not holm_contains(cfg, cert.holm_point):
        reasons.append("HolmOffCurve")
    else:
        try:
            if from_jacobian(cfg, cert.ec_point) != cert.holm_point:
                reasons.append("MapMismatch")
        except (ExceptionalPoint, NotOnCurve):
            reasons.append("MapMismatch")
    try:
        ax, ay = areas(cfg, cert.holm_point)
        if (ax, ay) != (cert.A_x, cert.A_y):
            reasons.append("AreaMismatch")
    except DegeneratePoint:
        reasons.append("AreaMismatch")
        ax = ay = None
    if cfg.l * cert.A_x != cfg.k * cert.A_y:
        reasons.append("RatioViolated")
    for n_val, tag in ((cert.N_x, "x"), (cert.N_y, "y")):
        if n_val < 1 or not is_squarefree(n_val):
            reasons.append(f"NotSquarefree:{tag}")
    ex = ey = None
    try:
        ex = _coordinate_exponents(cfg, Fraction(cert.holm_point.x), PIPELINE_BUDGET)
        if ex is None:
            reasons.append("EffortExceeded:x")
    except ZeroInput:
        # a zero piece means the area vanishes; no positive N matches
        reasons.append("SquarefreeMismatch:x")
    if ex is not None:
        dx = decompose_exponents(ex)
        if dx.squarefree_part != cert.N_x or dx.squarefree_part * dx.cofactor ** 2 != cert.A_x:
            reasons.append("SquarefreeMismatch:x")
        ey = dict(ex)
        for p, e in factorize(cfg.l).items():
            ey[p] = ey.get(p, 0) + e
        for p, e in factorize(cfg.k).items():
            ey[p] = ey.get(p, 0) - e
    else:
        try:
            ey = _coordinate_exponents(cfg, Fraction(cert.holm_point.y), PIPELINE_BUDGET)
            if ey is None:
                reasons.append("EffortExceeded:y")
        except ZeroInput:
            reasons.append("SquarefreeMismatch:y")
    if ey is not None:
        dy = decompose_exponents(ey)
        if dy.squarefree_part != cert.N_y or dy.squarefree_part * dy.cofactor ** 2 != cert.A_y:
            reasons.append("SquarefreeMismatch:y")
    if cfg.l * cert.N_x != cfg.k * cert.N_y:
        reasons.append("PairRatioMismatch")
    try:
        report = evaluate_filters(cfg, cert.holm_point)
        if report != cert.filter:
            reasons.append("FilterMismatch")
        if not report.accepted:
            reasons.append("FilterRejected")
    except DegeneratePoint:
        reasons.append("FilterMismatch")
    _check_triangle(cert.triangle_x, cert.N_x, cfg, reasons, "x")
    _check_triangle(cert.triangle_y, cert.N_y, cfg, reasons, "y")
    return VerificationResult(not reasons, tuple(reasons))
