"""Exact rational arithmetic helpers: p-adic valuations, deterministic integer
factorization, and square-free decomposition of positive rationals.

Everything in here is exact. Rationals are `fractions.Fraction`, valuations are
plain ints except for the value at 0, which is `INFINITY` (= `math.inf`).

The factor engine is deterministic: trial division against a fixed sieve,
perfect-power peeling, a Pollard p-1 stage on large composites (bases 2 then
3, fixed smoothness bounds), Brent's cycle-finding rho with polynomial
constants c = 1, 2, 3, ... tried in order from the fixed start x0 = 2, and an
elliptic-curve stage (Montgomery curves over a fixed Suyama parameter
sequence sigma = 6, 7, 8, ...) for the mid-size factors rho cannot reach.  No
randomness, so repeated runs agree bit for bit.  Callers that cannot afford
an unbounded factorization pass a `FactorBudget`; exceeding it raises
`EffortExceeded` rather than returning a wrong answer.
"""

from __future__ import annotations

import functools
import itertools
import math
from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

try:
    # Same arithmetic, much faster big-int ops; the factorization walk and
    # its results are identical with or without it.
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

INFINITY = math.inf

Valuation = Union[int, float]
Rational = Union[int, Fraction]


class NonPrimeModulus(ValueError):
    """ord_p was asked for a modulus that is not prime."""


class ZeroInput(ValueError):
    """factorize(0) has no meaning."""


class NonPositiveInput(ValueError):
    """square-free decomposition needs a strictly positive argument."""


class EffortExceeded(RuntimeError):
    """A bounded factorization ran out of budget before finishing."""


@dataclass(frozen=True)
class FactorBudget:
    """Effort bound for one `factorize` call.

    work_units counts modular multiplications across the p-1, rho, and curve
    stages of the call; digit_cap rejects inputs outright once they exceed
    that many decimal digits (a number that large is not going to split in
    time anyway).  The default covers the full escalation schedule once.
    """

    work_units: int = 240_000_000
    digit_cap: int = 110


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """q = squarefree_part * cofactor**2 with squarefree_part a positive
    square-free integer and cofactor a positive rational."""

    squarefree_part: int
    cofactor: Fraction


_TRIAL_BOUND = 1_000_000

# p-1 smoothness bounds: stage 1 collects every prime power up to _PM1_B1,
# stage 2 allows one extra prime up to _PM1_B2.  Below _PM1_CUTOFF the
# smallest factor is already within comfortable rho range, so the p-1 pass
# would only add overhead.
_PM1_B1 = 1_000_000
_PM1_B2 = 10_000_000
_PM1_CUTOFF = 10 ** 26

# rho gets this many steps before the curve stage takes over; enough for
# factors to ~2e14 in expectation, beyond which curves are the better spend.
_RHO_SLICE = 24_000_000

# Escalating (B1, B2, curves) schedule for the elliptic-curve stage, sized
# for the 15..21 digit factors that rho cannot reach.  Fixed, so the whole
# engine stays deterministic.
_ECM_TIERS = ((11_000, 1_100_000, 60), (50_000, 5_000_000, 120))

# Smallest composite that is a strong pseudoprime to all twelve bases below is
# > 3.3e24, so the test is exact for anything we trial-divide first.
_MR_BASES_SMALL = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_BASES_LARGE_COUNT = 50

_sieve_primes: list[int] | None = None
_stage2_primes: list[int] | None = None


def _small_primes() -> list[int]:
    global _sieve_primes
    if _sieve_primes is None:
        flags = bytearray([1]) * (_TRIAL_BOUND + 1)
        flags[0] = flags[1] = 0
        for i in range(2, math.isqrt(_TRIAL_BOUND) + 1):
            if flags[i]:
                flags[i * i :: i] = bytes(len(flags[i * i :: i]))
        _sieve_primes = [i for i, f in enumerate(flags) if f]
    return _sieve_primes


def _pm1_stage2_primes() -> list[int]:
    # Primes in (_PM1_B1, _PM1_B2], sieved once and kept for the process.
    global _stage2_primes
    if _stage2_primes is None:
        flags = bytearray([1]) * (_PM1_B2 + 1)
        flags[0] = flags[1] = 0
        for i in range(2, math.isqrt(_PM1_B2) + 1):
            if flags[i]:
                flags[i * i :: i] = bytes(len(flags[i * i :: i]))
        _stage2_primes = [i for i in range(_PM1_B1 + 1, _PM1_B2 + 1) if flags[i]]
    return _stage2_primes


def _mr_witness(n: int, a: int) -> bool:
    # True if a witnesses compositeness of odd n > 2.
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x in (1, n - 1):
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_probable_prime(n: int) -> bool:
    """Deterministic below 3.3e24; above that, 50 fixed prime bases.

    >>> is_probable_prime(2**61 - 1)
    True
    >>> is_probable_prime(2**61 + 1)
    False
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < _MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES_SMALL
    else:
        bases = tuple(itertools.islice(iter(_small_primes()), _MR_BASES_LARGE_COUNT))
    return not any(_mr_witness(n, a % n) for a in bases if a % n)


def _iroot(n: int, k: int) -> int:
    # floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on ints.
    if n < 2 or k == 1:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_power(n: int) -> tuple[int, int] | None:
    # (root, exponent>1) if n is a perfect power, else None.
    for k in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if (1 << k) > n:
            break
        r = _iroot(n, k)
        if r ** k == n:
            return r, k
    return None


class _Meter:
    __slots__ = ("left",)

    def __init__(self, limit: int | None):
        self.left = limit

    def spend(self, cost: int) -> None:
        if self.left is None:
            return
        self.left -= cost
        if self.left < 0:
            raise EffortExceeded("factorization budget exhausted")


def _brent_rho(n: int, meter: _Meter, cap: int | None = None) -> int | None:
    # Proper factor of odd composite n (no prime factor < _TRIAL_BOUND,
    # not a perfect power).  Deterministic: x0 = 2, c = 1, 2, 3, ...
    # With a cap, gives up after that many steps (returns None) so the
    # caller can hand the composite to a different method.
    n = _mpz(n)
    spent = 0
    for c in itertools.count(1):
        y, r, q = _mpz(2), 1, _mpz(1)
        g, x, ys = 1, y, y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            meter.spend(r)
            spent += r
            k = 0
            while k < r and g == 1:
                ys = y
                m = min(512, r - k)
                for _ in range(m):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                meter.spend(m)
                spent += m
                g = math.gcd(int(q), int(n))
                k += m
                if cap is not None and spent > cap and g == 1:
                    return None
            r <<= 1
        if g == int(n):
            # Batch overshot; rewind one step at a time.
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                meter.spend(1)
                g = math.gcd(int(abs(x - ys)), int(n))
        if g != int(n):
            return g
        # Walk found the trivial cycle; retry with the next constant.


def _pm1_power(p: int) -> int:
    # Largest power of p not exceeding the stage-1 bound.
    pe = p
    while pe * p <= _PM1_B1:
        pe *= p
    return pe


def _pm1_attempt(n, nn: int, base: int, meter: _Meter) -> int | None:
    # One p-1 pass at a fixed base.  Returns a proper factor, None on a
    # clean miss, or 0 when every factor crossed at the same step (the one
    # situation where a different base is worth paying for).
    g = _mpz(base)
    ckpt = g
    primes = _small_primes()
    for lo in range(0, len(primes), 4096):
        block = primes[lo : lo + 4096]
        cost = 0
        for p in block:
            pe = _pm1_power(p)
            g = pow(g, pe, n)
            cost += pe.bit_length()
        meter.spend(cost)
        d = math.gcd(int(g) - 1, nn)
        if d == 1:
            ckpt = g
            continue
        if d < nn:
            return d
        # gcd jumped straight to n somewhere in this block: replay it prime
        # by prime from the last clean checkpoint and split at the crossover.
        meter.spend(cost)
        g = ckpt
        for p in block:
            g = pow(g, _pm1_power(p), n)
            d = math.gcd(int(g) - 1, nn)
            if d > 1:
                return d if d < nn else 0
        return 0  # not reachable: the block end repeats the forward gcd

    # Stage 2: allow one prime q in (_PM1_B1, _PM1_B2] on top of the smooth
    # part, walking consecutive primes by multiplying cached powers g^gap.
    s2 = _pm1_stage2_primes()
    h = g
    c = pow(h, s2[0], n)
    meter.spend(2 * s2[0].bit_length())
    d = math.gcd(int(c) - 1, nn)
    if d == nn:
        return 0
    if d > 1:
        return d
    gaps = {}
    acc = _mpz(1)
    ck_c, ck_prev, ck_i = c, s2[0], 1
    prev = s2[0]
    i = 1
    while i < len(s2):
        stop = min(i + 4096, len(s2))
        cost = 0
        for q in s2[i:stop]:
            gap = q - prev
            t = gaps.get(gap)
            if t is None:
                t = pow(h, gap, n)
                gaps[gap] = t
                cost += 2 * gap.bit_length()
            c = c * t % n
            acc = acc * (c - 1) % n
            prev = q
        meter.spend(cost + 2 * (stop - i))
        d = math.gcd(int(acc), nn)
        if d == 1:
            ck_c, ck_prev, ck_i = c, prev, stop
            i = stop
            continue
        if d < nn:
            return d
        # Same collapse handling as stage 1, on the product accumulator.
        meter.spend(2 * (stop - ck_i))
        c, prev = ck_c, ck_prev
        for q in s2[ck_i:stop]:
            c = c * gaps[q - prev] % n
            d = math.gcd(int(c) - 1, nn)
            if d > 1:
                return d if d < nn else 0
            prev = q
        return 0
    return None


def _pollard_pm1(n: int, meter: _Meter) -> int | None:
    # Catches factors whose p-1 is smooth, which rho has no hope of reaching
    # once they pass ~14 digits.  Base 3 is only tried after an inseparable
    # collapse at base 2; a clean miss at one base is a miss at any base.
    nn = int(n)
    n = _mpz(n)
    d = _pm1_attempt(n, nn, 2, meter)
    if d == 0:
        d = _pm1_attempt(n, nn, 3, meter)
    return d or None


def _mont_double(x, z, a24, n):
    # 5 modular multiplications, XZ coordinates only.
    u = x + z
    u = u * u % n
    v = x - z
    v = v * v % n
    w = u - v
    return u * v % n, w * (v + a24 * w) % n


def _mont_add(x1, z1, x2, z2, dx, dz, n):
    # P1 + P2 given their difference (dx, dz); 6 modular multiplications.
    u = (x1 - z1) * (x2 + z2) % n
    v = (x1 + z1) * (x2 - z2) % n
    s = u + v
    t = u - v
    return dz * s * s % n, dx * t * t % n


def _mont_ladder(k: int, x, z, a24, n):
    # [k](x:z) for k >= 1 by the Montgomery ladder; 11 mults per bit.
    qx, qz = x, z
    rx, rz = _mont_double(x, z, a24, n)
    for bit in bin(k)[3:]:
        if bit == "1":
            qx, qz = _mont_add(rx, rz, qx, qz, x, z, n)
            rx, rz = _mont_double(rx, rz, a24, n)
        else:
            rx, rz = _mont_add(qx, qz, rx, rz, x, z, n)
            qx, qz = _mont_double(qx, qz, a24, n)
    return qx, qz


_ecm_plans: dict[tuple[int, int], tuple] = {}


def _ecm_plan(B1: int, B2: int) -> tuple:
    # Everything about a tier that does not depend on n or the curve: the
    # stage-1 prime powers, the stage-2 window/offset table, and the meter
    # cost of one curve through each stage.
    plan = _ecm_plans.get((B1, B2))
    if plan is not None:
        return plan
    powers = []
    for p in _small_primes():
        if p > B1:
            break
        pe = p
        while pe * p <= B1:
            pe *= p
        powers.append(pe)
    stage1_cost = sum(11 * max(pe.bit_length() - 1, 1) for pe in powers)
    D = min(math.isqrt(B2), B1 // 2 - 1)
    primes = _small_primes() + _pm1_stage2_primes()
    windows = []
    for r in range(B1 + 2 * D, B2 + 2 * D, 4 * D):
        lo = bisect_left(primes, r - 2 * D)
        hi = bisect_left(primes, r + 2 * D)
        windows.append(tuple(sorted({abs(q - r) >> 1 for q in primes[lo:hi]})))
    stage2_cost = (
        6 * D  # odd-multiple table
        + 33 * (B1 + 2 * D).bit_length()  # three ladders for W, T, R
        + sum(7 + 3 * len(w) for w in windows)
    )
    plan = (B1, powers, D, windows, stage1_cost, stage2_cost)
    _ecm_plans[(B1, B2)] = plan
    return plan


def _ecm_curve(n, nn: int, sigma: int, plan, meter: _Meter) -> int | None:
    # One Suyama curve through both stages; factor or None.
    B1, powers, D, windows, stage1_cost, stage2_cost = plan
    u = _mpz(sigma * sigma - 5) % n
    v = _mpz(4 * sigma) % n
    u3 = u * u % n * u % n
    denom = 16 * u3 * v % n
    try:
        inv = pow(denom, -1, n)
    except ValueError:
        g = math.gcd(int(denom), nn)
        return g if 1 < g < nn else None
    w = v - u
    a24 = w * w % n * w % n * (3 * u + v) % n * inv % n
    x, z = u3, v * v % n * v % n

    meter.spend(stage1_cost)
    for pe in powers:
        x, z = _mont_ladder(pe, x, z, a24, n)
    g = math.gcd(int(z), nn)
    if g != 1:
        return g if g < nn else None

    meter.spend(stage2_cost)
    # Odd multiples S[d] = [2d+1]Q and their x*z products.
    q2x, q2z = _mont_double(x, z, a24, n)
    S = [(x, z), _mont_add(q2x, q2z, x, z, x, z, n)]
    beta = [x * z % n, S[1][0] * S[1][1] % n]
    for d in range(2, D):
        sx, sz = _mont_add(S[d - 1][0], S[d - 1][1], q2x, q2z, *S[d - 2], n)
        S.append((sx, sz))
        beta.append(sx * sz % n)
    g = _mpz(1)
    wx, wz = _mont_ladder(4 * D, x, z, a24, n)
    tx, tz = _mont_ladder(B1 - 2 * D, x, z, a24, n)
    rx, rz = _mont_ladder(B1 + 2 * D, x, z, a24, n)
    for deltas in windows:
        alpha = rx * rz % n
        for d in deltas:
            f = (rx - S[d][0]) * (rz + S[d][1]) % n - alpha + beta[d]
            g = g * f % n
        (tx, tz), (rx, rz) = (rx, rz), _mont_add(rx, rz, wx, wz, tx, tz, n)
    g = math.gcd(int(g), nn)
    return g if 1 < g < nn else None


def _ecm(n: int, meter: _Meter) -> int | None:
    # The escalating curve schedule; deterministic because sigma just counts
    # up.  None means the whole schedule missed (caller decides what's next).
    nn = int(n)
    n = _mpz(n)
    sigma = 6
    for B1, B2, curves in _ECM_TIERS:
        plan = _ecm_plan(B1, B2)
        for _ in range(curves):
            d = _ecm_curve(n, nn, sigma, plan, meter)
            sigma += 1
            if d is not None:
                return d
    return None


def factorize(n: int, budget: FactorBudget | None = None) -> dict[int, int]:
    """Full prime factorization of a positive integer as {prime: exponent}.

    >>> factorize(7560) == {2: 3, 3: 3, 5: 1, 7: 1}
    True
    >>> factorize(1)
    {}

    Raises ZeroInput for 0, NonPositiveInput for negatives, and
    EffortExceeded when a budget runs out before the factorization completes.

    Completed results are memoized per (n, budget), so re-verifying a batch
    of certificates does not repeat the expensive splits.  Failures are not
    memoized; a bounded call behaves the same on a warm and a cold cache.
    """
    if n == 0:
        raise ZeroInput("cannot factor 0")
    if n < 0:
        raise NonPositiveInput("cannot factor a negative integer")
    if budget is not None and n >= 10 ** budget.digit_cap:
        raise EffortExceeded(f"input exceeds {budget.digit_cap} digit cap")
    return dict(_factorize_inner(n, budget))


@functools.lru_cache(maxsize=4096)
def _factorize_inner(n: int, budget: FactorBudget | None) -> tuple[tuple[int, int], ...]:
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    if n == 1:
        return tuple(sorted(out.items()))
    meter = _Meter(budget.work_units if budget else None)
    stack: list[tuple[int, int]] = [(n, 1)]
    while stack:
        m, mult = stack.pop()
        if m == 1:
            continue
        if is_probable_prime(m):
            out[m] = out.get(m, 0) + mult
            continue
        pp = _perfect_power(m)
        if pp is not None:
            stack.append((pp[0], mult * pp[1]))
            continue
        d = _pollard_pm1(m, meter) if m > _PM1_CUTOFF else None
        if d is None:
            d = _brent_rho(m, meter, _RHO_SLICE)
        if d is None:
            d = _ecm(m, meter)
        if d is None:
            # Schedule exhausted with budget to spare: rho is the only
            # method guaranteed to terminate eventually, so let it run.
            d = _brent_rho(m, meter)
        stack.append((d, mult))
        stack.append((m // d, mult))
    return tuple(sorted(out.items()))


def ord_p(q: Rational, p: int) -> Valuation:
    """p-adic valuation of a rational; ord_p(0) = INFINITY.

    >>> ord_p(Fraction(35, 216), 2)
    -3
    >>> ord_p(0, 5)
    inf
    """
    if not is_probable_prime(p):
        raise NonPrimeModulus(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        return INFINITY

    def vp(m: int) -> int:
        m = abs(m)
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        return v

    return vp(q.numerator) - vp(q.denominator)


def decompose_exponents(exps: dict[int, int]) -> SquarefreeDecomposition:
    """Build a decomposition from a prime -> exponent map of a positive
    rational.  Exponents may be negative (denominator primes)."""
    kernel = 1
    cof = Fraction(1)
    for p, e in exps.items():
        if e & 1:
            kernel *= p
        half = (e - (e & 1)) // 2
        cof *= Fraction(p) ** half
    return SquarefreeDecomposition(kernel, cof)


def squarefree_part(q: Rational, budget: FactorBudget | None = None) -> SquarefreeDecomposition:
    """Split a positive rational as q = N * c**2, N a square-free integer.

    N is the square-free kernel of numerator * denominator.

    >>> d = squarefree_part(Fraction(35, 216))
    >>> (d.squarefree_part, d.cofactor)
    (210, Fraction(1, 36))
    """
    q = Fraction(q)
    if q <= 0:
        raise NonPositiveInput("square-free decomposition needs q > 0")
    exps = dict(factorize(q.numerator, budget))
    for p, e in factorize(q.denominator, budget).items():
        exps[p] = exps.get(p, 0) - e
    return decompose_exponents(exps)


def is_squarefree(n: int, budget: FactorBudget | None = None) -> bool:
    if n < 1:
        raise NonPositiveInput("square-free test needs n >= 1")
    return all(e == 1 for e in factorize(n, budget).values())


def format_rational(q: Rational) -> str:
    """`num/den` in lowest terms; integers print without the slash."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(s: str) -> Fraction:
    """Inverse of format_rational.  Accepts `n` and `num/den` forms."""
    s = s.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_valuation(v: Valuation) -> Union[int, str]:
    return "inf" if v == INFINITY else int(v)


def parse_valuation(v: Union[int, str]) -> Valuation:
    if v == "inf":
        return INFINITY
    return int(v)
