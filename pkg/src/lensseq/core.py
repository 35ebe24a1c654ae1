"""Seeds, the invariants alpha and beta, and bilateral sequence generation.

A lens sequence obeys ``b[n] = alpha*b[n-1] - b[n-2] + beta``.  Any three
consecutive terms (a, b, c) with b != 0 fix the pair (alpha, beta).  Terms are
indexed so that the seed sits at indices -1, 0, 1 (``b[0]`` is the middle
seed term).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AllZero,
    NonSquareDiscriminant,
    NotLensSequence,
    ZeroDenominatorTerm,
    ZeroMiddleTerm,
)
from .exactnum import as_rational

NONLINEAR_VARIANTS = (
    "three_step_alpha",
    "three_step_beta",
    "four_step_beta",
    "four_step_alpha",
    "two_step_sqrt",
)


@dataclass(frozen=True)
class Seed:
    """Three consecutive terms ``(a, b, c)``.

    A zero middle term is allowed so that degenerate symbol seeds can be
    represented; operations that need ``b != 0`` raise :class:`ZeroMiddleTerm`.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def of(cls, values: Iterable) -> "Seed":
        a, b, c = values
        return cls(a, b, c)

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c)

    def is_integral(self) -> bool:
        return all(t.denominator == 1 for t in self.as_tuple())

    def scaled(self, m) -> "Seed":
        m = as_rational(m)
        return Seed(self.a * m, self.b * m, self.c * m)

    def reversed(self) -> "Seed":
        return Seed(self.c, self.b, self.a)


@dataclass(frozen=True)
class LensConstants:
    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_rational(self.alpha))
        object.__setattr__(self, "beta", as_rational(self.beta))


@dataclass(frozen=True)
class SequenceWindow:
    """A contiguous stretch of a bilateral sequence.

    ``origin_index`` is the sequence index of ``terms[0]``; index 0 is the
    middle term of the seed the window was generated from.
    """

    origin_index: int
    terms: tuple[Fraction, ...]
    constants: LensConstants | None = field(default=None, compare=True)

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(as_rational(t) for t in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def last_index(self) -> int:
        return self.origin_index + len(self.terms) - 1

    def indices(self) -> range:
        return range(self.origin_index, self.origin_index + len(self.terms))

    def term(self, n: int) -> Fraction:
        i = n - self.origin_index
        if not 0 <= i < len(self.terms):
            raise IndexError(f"index {n} outside window {self.origin_index}..{self.last_index}")
        return self.terms[i]

    def items(self):
        return zip(self.indices(), self.terms)

    def is_integral(self) -> bool:
        return all(t.denominator == 1 for t in self.terms)

    def as_ints(self) -> list[int]:
        if not self.is_integral():
            raise ValueError("window has non-integer terms")
        return [t.numerator for t in self.terms]

    def slice(self, start: int, stop: int) -> "SequenceWindow":
        """Sub-window covering sequence indices ``start`` .. ``stop - 1``."""
        i, j = start - self.origin_index, stop - self.origin_index
        if i < 0 or j > len(self.terms) or i > j:
            raise IndexError("slice outside window")
        return SequenceWindow(start, self.terms[i:j], self.constants)

    def shifted(self, offset: int) -> "SequenceWindow":
        return SequenceWindow(self.origin_index + offset, self.terms, self.constants)


def constants_from_seed(s: Seed) -> LensConstants:
    """alpha = (ab+bc+ca)/b^2 - 1 and beta = (b^2 - ac)/b."""
    a, b, c = s.as_tuple()
    if b == 0:
        raise ZeroMiddleTerm(f"middle term of seed {a}, {b}, {c} is zero")
    alpha = (a * b + b * c + c * a) / (b * b) - 1
    beta = (b * b - a * c) / b
    return LensConstants(alpha, beta)


def _forward(prev2, prev1, k: LensConstants, count: int) -> list[Fraction]:
    out = []
    for _ in range(count):
        nxt = k.alpha * prev1 - prev2 + k.beta
        out.append(nxt)
        prev2, prev1 = prev1, nxt
    return out


def generate(pair: Sequence, first_index: int, k: LensConstants, n_forward: int, n_backward: int) -> SequenceWindow:
    """Extend two consecutive terms (at ``first_index``, ``first_index+1``) both ways."""
    if n_forward < 0 or n_backward < 0:
        raise ValueError("extension counts must be non-negative")
    x0, x1 = (as_rational(t) for t in pair)
    fwd = _forward(x0, x1, k, n_forward)
    # backward: b[n-2] = alpha*b[n-1] - b[n] + beta, i.e. the same map read in reverse
    bwd = _forward(x1, x0, k, n_backward)
    terms = list(reversed(bwd)) + [x0, x1] + fwd
    return SequenceWindow(first_index - n_backward, tuple(terms), k)


def extend(s: Seed, n_forward: int = 0, n_backward: int = 0) -> SequenceWindow:
    """The seed plus ``n_forward`` later and ``n_backward`` earlier terms."""
    k = constants_from_seed(s)
    w = generate((s.a, s.b), -1, k, n_forward + 1, n_backward)
    return w


def window_constants(window: SequenceWindow) -> LensConstants:
    """Constants from the first interior triple with a nonzero middle term."""
    t = window.terms
    for i in range(1, len(t) - 1):
        if t[i] != 0:
            return constants_from_seed(Seed(t[i - 1], t[i], t[i + 1]))
    raise ZeroMiddleTerm("no consecutive triple with a nonzero middle term")


def recurrence_residuals(window: SequenceWindow, k: LensConstants | None = None) -> list[tuple[int, Fraction]]:
    """Indices n where b[n] - alpha*b[n-1] + b[n-2] - beta is nonzero."""
    k = k or window.constants or window_constants(window)
    t = window.terms
    bad = []
    for i in range(2, len(t)):
        r = t[i] - k.alpha * t[i - 1] + t[i - 2] - k.beta
        if r:
            bad.append((window.origin_index + i, r))
    return bad


def is_lens_window(window: SequenceWindow, k: LensConstants | None = None) -> bool:
    return not recurrence_residuals(window, k)


def compatibility_check(a, b, k: LensConstants) -> bool:
    """a^2 + b^2 == alpha*a*b + beta*(a+b)."""
    a, b = as_rational(a), as_rational(b)
    return a * a + b * b == k.alpha * a * b + k.beta * (a + b)


def compatibility_failures(window: SequenceWindow, k: LensConstants | None = None) -> list[int]:
    """Indices n such that the pair (b[n], b[n+1]) is not compatible."""
    k = k or window.constants or window_constants(window)
    t = window.terms
    return [window.origin_index + i for i in range(len(t) - 1) if not compatibility_check(t[i], t[i + 1], k)]


def four_term_check(window: SequenceWindow) -> bool:
    """b[n] = (alpha+1)(b[n-1] - b[n-2]) + b[n-3] at every interior n."""
    t = window.terms
    if len(t) < 4:
        raise ValueError("four_term_check needs at least four terms")
    try:
        k = window.constants or window_constants(window)
    except ZeroMiddleTerm:
        # the all-zero window satisfies every homogeneous relation
        if not any(t):
            return True
        raise
    m = k.alpha + 1
    return all(t[i] == m * (t[i - 1] - t[i - 2]) + t[i - 3] for i in range(3, len(t)))


def alpha_from_four(b_prev, b0, b1, b2) -> Fraction:
    """alpha recovered from four consecutive terms as b[-1]/b[0] + b[2]/b[1]."""
    b_prev, b0, b1, b2 = (as_rational(x) for x in (b_prev, b0, b1, b2))
    if b0 == 0 or b1 == 0:
        raise ZeroDenominatorTerm("alpha_from_four divides by b0 and b1")
    return b_prev / b0 + b2 / b1


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _div(num: Fraction, den: Fraction, what: str) -> Fraction:
    if den == 0:
        raise ZeroDenominatorTerm(f"{what}: zero denominator")
    return num / den


def extend_nonlinear(s: Seed, variant: str, n: int) -> SequenceWindow:
    """Forward extension by one of the nonlinear recurrences.

    The result covers the same indices as ``extend(s, n, 0)`` and must agree
    with it; the variants exist as independent cross-checks.
    """
    if variant not in NONLINEAR_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    k = constants_from_seed(s)
    al, be = k.alpha, k.beta
    t = list(s.as_tuple())
    for _ in range(n):
        x, y, z = t[-3], t[-2], t[-1]
        if variant == "three_step_beta":
            # b[n]^2 - b[n+1] b[n-1] = beta b[n]
            nxt = _div(z * (z - be), y, variant)
        elif variant == "three_step_alpha":
            # b[n-1] b[n] + b[n+1] (b[n-1] + b[n]) = (alpha+1) b[n]^2
            nxt = _div((al + 1) * z * z - y * z, y + z, variant)
        elif variant == "four_step_beta":
            nxt = _div((z - be) * (y - be), x, variant)
        elif variant == "four_step_alpha":
            # alpha = b[n-1]/b[n] + b[n+2]/b[n+1]
            nxt = z * (al - _div(x, y, variant))
        else:
            disc = (al * al - 4) * z * z + 2 * (al + 2) * be * z + be * be
            root = _rational_sqrt(disc)
            if root is None:
                raise NonSquareDiscriminant(f"discriminant {disc} is not a rational square")
            cands = ((al * z + be + root) / 2, (al * z + be - root) / 2)
            # one root is the previous term; the other continues the sequence
            nxt = cands[1] if cands[0] == y else cands[0]
        t.append(nxt)
    return SequenceWindow(-1, tuple(t), k)


def gcd_triple(s: Seed) -> int:
    if not s.is_integral():
        raise ValueError("gcd_triple needs an integer seed")
    a, b, c = (int(x) for x in s.as_tuple())
    g = math.gcd(a, b, c)
    if g == 0:
        raise AllZero("all three terms are zero")
    return g


def window_gcd(window: SequenceWindow) -> int:
    """Common gcd of a window's consecutive triples (constant along the sequence)."""
    vals = window.as_ints()
    g = math.gcd(*vals)
    if g == 0:
        raise AllZero("window is identically zero")
    return g


def window_from_terms(terms: Sequence, origin_index: int = 0) -> SequenceWindow:
    """Wrap raw terms, attaching constants when they form a lens window."""
    w = SequenceWindow(origin_index, tuple(terms))
    if len(w) < 3:
        return w
    k = window_constants(w)
    if recurrence_residuals(w, k):
        raise NotLensSequence("terms do not follow a single lens recurrence")
    return SequenceWindow(origin_index, w.terms, k)
