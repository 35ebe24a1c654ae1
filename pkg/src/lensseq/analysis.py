"""Closed forms: characteristic constant, Binet representation, reciprocal
sums, periodicity and the five symmetric families.

Reciprocal sums use the exact telescoping quantity

    X[n] = (b[n+1] - b[n-1]) / (-beta * b[n]),

which satisfies X[n+1] - X[n] = 1/b[n] + 1/b[n+1] and tends to
+-sqrt(alpha^2 - 4)/(-beta) at the two ends.  (X[n] is also the centre of chain
circle n in :func:`lensseq.geometry.chain_layout`.)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import LensConstants, Seed, constants_from_seed, extend, generate
from .errors import ComplexLambda, DegenerateAlpha, DivergentSum, OutOfRange, ZeroDenominatorTerm
from .exactnum import QuadExt, as_quad, as_rational, quad_sqrt
from .geometry import LensGeometry, lens_params
from .underground import UndergroundSymbol, symbol_to_seed


@dataclass(frozen=True)
class BinetForm:
    """b[n] = w lam^n + w_conj lam_conj^n + gamma."""

    w: QuadExt
    w_conj: QuadExt
    lam: QuadExt
    lam_conj: QuadExt
    gamma: Fraction
    discriminant: int


def char_constant(alpha) -> QuadExt:
    """lambda = (alpha + sqrt(alpha^2 - 4)) / 2."""
    alpha = as_rational(alpha)
    disc = alpha * alpha - 4
    if disc < 0:
        raise ComplexLambda(f"alpha = {alpha}: no real characteristic constant")
    return (alpha + quad_sqrt(disc)) / 2


def binet_form(s: Seed) -> BinetForm:
    """Binet data with (a, b, c) = (b[-1], b[0], b[1])."""
    k = constants_from_seed(s)
    al, be = k.alpha, k.beta
    if al in (2, -2):
        raise DegenerateAlpha(f"alpha = {al}: Binet form undefined")
    disc = al * al - 4
    if disc < 0:
        raise ComplexLambda(f"alpha = {al}: roots are complex")
    a, b, c = s.as_tuple()
    r = quad_sqrt(disc)
    A = (a - 2 * b + c) / (2 * (al - 2))
    B = (c - a) / (2 * disc)
    # w and its conjugate are built explicitly so that a square
    # discriminant (r rational) still gives the right pair
    w, w_conj = A + B * r, A - B * r
    lam, lam_conj = (al + r) / 2, (al - r) / 2
    gamma = -be / (al - 2)
    return BinetForm(as_quad(w), as_quad(w_conj), as_quad(lam), as_quad(lam_conj), gamma, r.discriminant)


def binet_eval(bf: BinetForm, n: int) -> Fraction:
    val = bf.w * bf.lam ** n + bf.w_conj * bf.lam_conj ** n + bf.gamma
    return as_rational(as_quad(val))


def tail_quantity(window_or_triple, k: LensConstants) -> Fraction:
    """X = (b[n+1] - b[n-1]) / (-beta b[n]) for a triple (b[n-1], b[n], b[n+1])."""
    a, b, c = (as_rational(x) for x in window_or_triple)
    if b == 0:
        raise ZeroDenominatorTerm("tail quantity needs b[n] != 0")
    return (c - a) / (-k.beta * b)


def _limit_x(k: LensConstants) -> QuadExt:
    if k.alpha < 2:
        raise DivergentSum(f"alpha = {k.alpha} < 2: the reciprocal series does not converge")
    if k.beta == 0:
        raise DivergentSum("beta = 0: the closed form is undefined")
    return quad_sqrt(k.alpha * k.alpha - 4) / (-k.beta)


def reciprocal_sum(k: LensConstants, mode: str = "bilateral_closed_form", N: int | None = None, seed: Seed | None = None):
    """Sum of 1/b[n].

    ``bilateral_closed_form``: exact sum over all n, sqrt(alpha^2-4)/(-beta).
    ``partial_numeric``: float sum over the 2N+1 terms b[-N] .. b[N] of ``seed``.
    """
    if mode == "bilateral_closed_form":
        return _limit_x(k)
    if mode == "partial_numeric":
        if seed is None or N is None:
            raise ValueError("partial_numeric needs a seed and N")
        if k.alpha < 2:
            raise DivergentSum(f"alpha = {k.alpha} < 2")
        return float(partial_sum(seed, N))
    raise ValueError(f"unknown mode {mode!r}")


def partial_sum(seed: Seed, N: int, center: int = 0) -> Fraction:
    """Exact sum of 1/b[n] for n in center-N .. center+N."""
    lo, hi = center - N, center + N
    w = extend(seed, max(0, hi - 1), max(0, -1 - lo))
    total = Fraction(0)
    for n in range(lo, hi + 1):
        t = w.term(n)
        if t == 0:
            raise ZeroDenominatorTerm(f"b[{n}] = 0")
        total += 1 / t
    return total


def one_tail_sum(seed: Seed, start: int = 0) -> QuadExt:
    """Exact sum of 1/b[n] for n >= start: (X_inf - X[start] + 1/b[start]) / 2."""
    k = constants_from_seed(seed)
    x_inf = _limit_x(k)
    w = extend(seed, max(0, start), max(0, -start))
    trip = (w.term(start - 1), w.term(start), w.term(start + 1))
    if any(t == 0 for i, t in w.items() if i >= start):
        raise ZeroDenominatorTerm("the tail contains a zero term")
    return (x_inf - tail_quantity(trip, k) + 1 / trip[1]) / 2


def detect_period(s: Seed, max_period: int = 12) -> int | None:
    """Smallest p <= max_period with b[n+p] = b[n] over a window of 3p terms."""
    k = constants_from_seed(s)
    need = 3 * max_period + 3
    w = generate((s.a, s.b), -1, k, need, 0).terms
    for p in range(1, max_period + 1):
        if all(w[i + p] == w[i] for i in range(3 * p)):
            return p
    return None


def general_binet_check(a, b, c, omega, N: int) -> bool:
    """x[n] = a w^n + b w^-n + c obeys x[n+2] = (w + 1/w) x[n+1] - x[n] + c(2 - w - 1/w)."""
    a, b, c, omega = (as_quad(v) for v in (a, b, c, omega))
    if not omega:
        raise ZeroDivisionError("omega must be nonzero")
    t = omega + 1 / omega

    def x(n):
        return a * omega ** n + b * omega ** (-n) + c

    return all(x(n + 2) == t * x(n + 1) - x(n) + c * (2 - t) for n in range(N + 1))


def ratio_error(seed: Seed, n: int) -> float:
    """|b[n+1]/b[n] - lambda| for the term at index n."""
    k = constants_from_seed(seed)
    w = extend(seed, n + 1, 0)
    lam = float(char_constant(k.alpha))
    return abs(float(w.term(n + 1) / w.term(n)) - lam)


# -- the five symmetric families ---------------------------------------------------

FAMILY_MIN_N = {1: 2, 2: 2, 3: 3, 4: 4, 5: 4}


def _family_seed(fid: int, n: int) -> tuple[Seed, int, UndergroundSymbol]:
    """Seed (b[-1], b[0], b[1]), first index of the summed tail, closed-form symbol."""
    if fid == 1:
        return Seed(n, 1, n), 0, UndergroundSymbol(n + 1, 1, 1, n + 1)
    if fid == 2:
        return Seed(1, 1, n), 0, UndergroundSymbol(2, 1, 1, n + 1)
    if fid == 3:
        return Seed(2, 2, n), 0, UndergroundSymbol(1, 2, 1, n + 2)
    if fid == 4:
        return Seed(n, -1, n), 1, UndergroundSymbol(n - 1, 1, -1, n - 1)
    return Seed(0, 1, n), 0, UndergroundSymbol(1, 1, 1, n + 1)


def _family_closed(fid: int, n: int) -> dict:
    """Closed forms written directly in terms of n."""
    Q = Fraction
    if fid == 1:
        root = quad_sqrt((n + 3) * (n - 1))
        return {
            "alpha": Q((n + 1) ** 2 - 2),
            "beta": Q(1 - n * n),
            "R": Q(n + 1, n - 1),
            "L": 2 * quad_sqrt(Q(n + 3, n - 1)),
            "relative_delta": as_quad(Q(4, n + 1)),
            "lambda": (n * n + 2 * n - 1 + (n + 1) * root) / 2,
            "w": as_quad(Q(1, n + 3)),
            "gamma": Q(n + 1, n + 3),
            "tail_sum": Q(1, 2) + quad_sqrt(Q(n + 3, n - 1)) / 2,
        }
    if fid == 2:
        return {
            "alpha": Q(2 * n),
            "beta": Q(1 - n),
            "R": Q(2 * (n + 1), n - 1),
            "L": 4 * quad_sqrt(Q(n + 1, n - 1)),
            "relative_delta": 4 * quad_sqrt(Q(1, 2 * (n + 1))),
            "lambda": n + quad_sqrt(n * n - 1),
            "w": (1 + quad_sqrt(Q(n - 1, n + 1))) / 4,
            "gamma": Q(1, 2),
            "tail_sum": quad_sqrt(Q(n + 1, n - 1)),
        }
    if fid == 3:
        return {
            "alpha": Q(n),
            "beta": Q(2 - n),
            "R": Q(n + 2, n - 2),
            "L": 2 * quad_sqrt(Q(n + 2, n - 2)),
            "relative_delta": 4 * quad_sqrt(Q(1, n + 2)),
            "lambda": (n + quad_sqrt(n * n - 4)) / 2,
            "w": (1 + quad_sqrt(Q(n - 2, n + 2))) / 2,
            "gamma": Q(1),
            "tail_sum": quad_sqrt(Q(n + 2, n - 2)) / 2,
        }
    if fid == 4:
        root = quad_sqrt((n - 3) * (n + 1))
        return {
            "alpha": Q((n - 1) ** 2 - 2),
            "beta": Q(n * n - 1),
            "R": -Q(n - 1, n + 1),
            "L": -2 * quad_sqrt(Q(n - 3, n + 1)),
            "relative_delta": as_quad(Q(4, n - 1)),
            "lambda": (n * n - 2 * n - 1 + (n - 1) * root) / 2,
            "w": as_quad(Q(1, n - 3)),
            "gamma": -Q(n - 1, n - 3),
            "tail_sum": (1 - quad_sqrt(Q(n - 3, n + 1))) / 2,
        }
    root = quad_sqrt((n + 1) * (n - 3))
    return {
        "alpha": Q(n - 1),
        "beta": Q(1),
        "R": Q(-(n + 1)),
        "L": -2 * root,
        "relative_delta": 4 * quad_sqrt(Q(1, n + 1)),
        "lambda": (n - 1 + root) / 2,
        "w": (Q(n - 2, n - 3) + n / root) / 2,
        "gamma": -Q(1, n - 3),
        "tail_sum": (n + 1 - root) / 2,
    }


@dataclass(frozen=True)
class AppendixFamily:
    family_id: int
    n: int
    seed: Seed
    symbol: UndergroundSymbol
    constants: LensConstants
    geometry: LensGeometry
    binet: BinetForm
    tail_start: int
    tail_sum: QuadExt
    closed: dict = field(compare=False, repr=False)

    def general(self) -> dict:
        """The same quantities computed by the general-purpose operations."""
        g = self.geometry
        return {
            "alpha": self.constants.alpha,
            "beta": self.constants.beta,
            "R": g.R,
            "L": g.L,
            "relative_delta": g.relative_delta,
            "lambda": char_constant(self.constants.alpha),
            "w": self.binet.w,
            "gamma": self.binet.gamma,
            "tail_sum": self.tail_sum,
        }

    def mismatches(self) -> dict:
        """Quantities where the closed form and the general path differ."""
        gen = self.general()
        return {key: (self.closed[key], gen[key]) for key in self.closed if as_quad(self.closed[key]) != as_quad(gen[key])}

    def symbol_ok(self) -> bool:
        return symbol_to_seed(self.symbol) == self.seed


def appendix_family(family_id: int, n: int) -> AppendixFamily:
    """Family ``family_id`` (1..5) at parameter ``n`` with both computation paths.

    Seeds, as (b[-1], b[0], b[1]): 1 -> (n,1,n), 2 -> (1,1,n), 3 -> (2,2,n),
    4 -> (n,-1,n), 5 -> (0,1,n).  The tail sum starts at index 1 for family 4
    and at index 0 otherwise.
    """
    if family_id not in FAMILY_MIN_N:
        raise OutOfRange(f"family id {family_id} not in 1..5")
    if n < FAMILY_MIN_N[family_id]:
        raise OutOfRange(f"family {family_id} needs n >= {FAMILY_MIN_N[family_id]}")
    seed, start, symbol = _family_seed(family_id, n)
    k = constants_from_seed(seed)
    return AppendixFamily(
        family_id=family_id,
        n=n,
        seed=seed,
        symbol=symbol,
        constants=k,
        geometry=lens_params(k),
        binet=binet_form(seed),
        tail_start=start,
        tail_sum=one_tail_sum(seed, start),
        closed=_family_closed(family_id, n),
    )
