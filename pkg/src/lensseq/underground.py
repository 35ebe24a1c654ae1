"""Underground sequences: integer factorizations ``b[n] = f[n-1] * f[n]``.

A symbol ``^s(p,q)^k`` generates ``f`` from ``f[0] = p, f[1] = q`` with
``f[n] = k f[n-1] - f[n-2]`` for even ``n`` and ``s f[n-1] - f[n-2]`` for odd
``n``.  Its lens seed sits at symbol indices 0, 1, 2, i.e.
``((sp - q)p, pq, q(kq - p))``.

Windows carry their own index convention: an :class:`UndergroundWindow` stores
the coefficient used at even indices as ``k`` and at odd indices as ``s``.
Shifting the index origin by an odd amount swaps the two.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    LensConstants,
    Seed,
    SequenceWindow,
    constants_from_seed,
    extend,
    window_gcd,
)
from .errors import (
    DegenerateSeed,
    NotIntegral,
    NotLensSequence,
    NotPrimitive,
    ParseError,
)
from .exactnum import as_rational


@dataclass(frozen=True)
class UndergroundSymbol:
    s: int
    p: int
    q: int
    k: int

    @property
    def is_degenerate(self) -> bool:
        """True when the seed's middle term ``pq`` vanishes."""
        return self.p * self.q == 0

    def __str__(self) -> str:
        return f"^{self.s}({self.p},{self.q})^{self.k}"


@dataclass(frozen=True)
class Label:
    a: int
    b: int
    k: int

    def __str__(self) -> str:
        return f"[{self.a},{self.b};{self.k}]"


@dataclass(frozen=True)
class UndergroundWindow:
    origin_index: int
    terms: tuple[int, ...]
    s: int
    k: int

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    @property
    def last_index(self) -> int:
        return self.origin_index + len(self.terms) - 1

    def indices(self) -> range:
        return range(self.origin_index, self.origin_index + len(self.terms))

    def term(self, n: int) -> int:
        i = n - self.origin_index
        if not 0 <= i < len(self.terms):
            raise IndexError(f"index {n} outside window")
        return self.terms[i]

    def coefficient(self, n: int) -> int:
        """The multiplier that produces ``f[n]`` from ``f[n-1]``."""
        return self.k if n % 2 == 0 else self.s

    def negated(self) -> "UndergroundWindow":
        return UndergroundWindow(self.origin_index, tuple(-x for x in self.terms), self.s, self.k)

    def shifted(self, offset: int) -> "UndergroundWindow":
        s, k = (self.k, self.s) if offset % 2 else (self.s, self.k)
        return UndergroundWindow(self.origin_index + offset, self.terms, s, k)

    def symbol_at(self, n: int) -> UndergroundSymbol:
        """The symbol whose f[0], f[1] are this window's f[n], f[n+1]."""
        s, k = (self.s, self.k) if n % 2 == 0 else (self.k, self.s)
        return UndergroundSymbol(s, self.term(n), self.term(n + 1), k)


# -- symbols, labels and their seeds ------------------------------------------


def symbol_to_seed(sym: UndergroundSymbol) -> Seed:
    s, p, q, k = sym.s, sym.p, sym.q, sym.k
    return Seed((s * p - q) * p, p * q, q * (k * q - p))


def symbol_constants(sym: UndergroundSymbol) -> LensConstants:
    """alpha = ks - 2 and beta = kq^2 + sp^2 - ks*pq."""
    s, p, q, k = sym.s, sym.p, sym.q, sym.k
    return LensConstants(k * s - 2, k * q * q + s * p * p - k * s * p * q)


def seed_to_symbol(seed: Seed) -> UndergroundSymbol:
    """Symbol with f[0] = gcd(a, b) > 0 and f[1] = b / f[0]."""
    if not seed.is_integral():
        raise NotIntegral("seed has non-integer terms")
    a, b, c = (int(x) for x in seed.as_tuple())
    if b == 0:
        raise DegenerateSeed("seed middle term is zero")
    if math.gcd(a, b, c) != 1:
        raise NotPrimitive(f"gcd of ({a}, {b}, {c}) is {math.gcd(a, b, c)}")
    if not integrality_criterion_2(seed):
        raise NotIntegral(f"({a}, {b}, {c}) does not seed an integer sequence")
    p = math.gcd(a, b)
    q = b // p
    return UndergroundSymbol((a + b) // (p * p), p, q, (b + c) // (q * q))


def label_to_symbol(lab: Label) -> UndergroundSymbol:
    return UndergroundSymbol(lab.a + lab.b, 1, lab.b, lab.k)


def symbol_to_label(sym: UndergroundSymbol) -> Label | None:
    """Inverse of :func:`label_to_symbol`; ``None`` unless ``p = +-1``."""
    if sym.p == 1:
        return Label(sym.s - sym.q, sym.q, sym.k)
    if sym.p == -1:
        return Label(sym.s + sym.q, -sym.q, sym.k)
    return None


def label_to_seed(lab: Label) -> Seed:
    return Seed(lab.a, lab.b, lab.b * (lab.b * lab.k - 1))


def label_constants(lab: Label) -> LensConstants:
    """alpha = (a+b)k - 2 and beta = (a+b) - abk."""
    a, b, k = lab.a, lab.b, lab.k
    return LensConstants((a + b) * k - 2, (a + b) - a * b * k)


def primitivity_of_symbol(sym: UndergroundSymbol) -> bool:
    return math.gcd(sym.p, sym.q) == 1 and math.gcd(sym.p, sym.k) == 1 and math.gcd(sym.s, sym.q) == 1


def shift_symbol(sym: UndergroundSymbol, m: int = 1) -> UndergroundSymbol:
    """Re-centre the symbol ``m`` steps along its underground sequence."""
    s, p, q, k = sym.s, sym.p, sym.q, sym.k
    for _ in range(abs(m)):
        if m > 0:
            s, p, q, k = k, q, k * q - p, s
        else:
            s, p, q, k = k, s * p - q, p, s
    return UndergroundSymbol(s, p, q, k)


def reverse_symbol(sym: UndergroundSymbol) -> UndergroundSymbol:
    """Symbol of the index-reversed underground sequence (f[n] -> f[-n])."""
    return UndergroundSymbol(sym.s, sym.p, sym.s * sym.p - sym.q, sym.k)


def negate_symbol(sym: UndergroundSymbol) -> UndergroundSymbol:
    return UndergroundSymbol(sym.s, -sym.p, -sym.q, sym.k)


def same_lens_sequence(x: Seed, y: Seed, span: int = 40) -> bool:
    """Whether two seeds generate one bilateral sequence up to shift and reversal."""
    kx, ky = constants_from_seed(x), constants_from_seed(y)
    if kx != ky:
        return False
    w = extend(y, span, span).terms
    t = x.as_tuple()
    r = tuple(reversed(t))
    return any(w[i : i + 3] in (t, r) for i in range(len(w) - 2))


def symbols_equivalent(a: UndergroundSymbol, b: UndergroundSymbol, span: int = 40) -> bool:
    """Same lens sequence up to index shift, reversal and the sign of f."""
    sa, sb = _nondegenerate_seed(a), _nondegenerate_seed(b)
    return same_lens_sequence(sa, sb, span)


def _nondegenerate_seed(sym: UndergroundSymbol) -> Seed:
    for m in range(4):
        seed = symbol_to_seed(shift_symbol(sym, m))
        if seed.b != 0:
            return seed
    raise DegenerateSeed(f"{sym} has no seed with nonzero middle term")


# -- underground windows ------------------------------------------------------


def underground_extend(sym: UndergroundSymbol, n_forward: int = 0, n_backward: int = 0) -> UndergroundWindow:
    """f[0] = p, f[1] = q plus ``n_forward`` later and ``n_backward`` earlier terms."""
    if n_forward < 0 or n_backward < 0:
        raise ValueError("extension counts must be non-negative")
    s, k = sym.s, sym.k
    f = {0: sym.p, 1: sym.q}
    for n in range(2, 2 + n_forward):
        c = k if n % 2 == 0 else s
        f[n] = c * f[n - 1] - f[n - 2]
    for n in range(-1, -1 - n_backward, -1):
        # f[n+2] = c(n+2) f[n+1] - f[n]
        c = k if (n + 2) % 2 == 0 else s
        f[n] = c * f[n + 1] - f[n + 2]
    lo = -n_backward
    return UndergroundWindow(lo, tuple(f[i] for i in range(lo, 2 + n_forward)), s, k)


def underground_constants(f: UndergroundWindow) -> LensConstants:
    """Constants of the lens sequence built from ``f`` (from any adjacent pair)."""
    if len(f) < 2:
        raise ValueError("need two consecutive underground terms")
    sym = f.symbol_at(f.origin_index)
    return symbol_constants(sym)


def lens_from_underground(f: UndergroundWindow) -> SequenceWindow:
    """b[n] = f[n-1] * f[n]."""
    t = f.terms
    b = tuple(Fraction(t[i - 1] * t[i]) for i in range(1, len(t)))
    return SequenceWindow(f.origin_index + 1, b, underground_constants(f))


def _sign_normalize(f: UndergroundWindow) -> UndergroundWindow:
    # the largest |f| (latest index on ties) is made positive
    best = None
    for i, x in enumerate(f.terms):
        if x != 0 and (best is None or abs(x) >= abs(f.terms[best])):
            best = i
    if best is not None and f.terms[best] < 0:
        return f.negated()
    return f


def factorize(b: SequenceWindow) -> UndergroundWindow:
    """Integer ``f`` with ``b[n] = f[n-1] f[n]`` over the window, sign-normalized.

    The f-window starts one index before ``b`` and is one term longer.
    """
    if len(b) < 3:
        raise ValueError("factorize needs at least three terms")
    if not b.is_integral():
        raise NotIntegral("window has non-integer terms")
    g = window_gcd(b)
    if g != 1:
        raise NotPrimitive(f"window has common divisor {g}")
    t = b.terms
    j = next((i for i in range(1, len(t) - 1) if t[i] != 0), None)
    if j is None:
        raise DegenerateSeed("no interior nonzero term to anchor the factorization")
    sym = seed_to_symbol(Seed(t[j - 1], t[j], t[j + 1]))
    # symbol index m sits at window index m + shift
    shift = b.origin_index + j - 1
    lo, hi = b.origin_index - 1, b.last_index
    base = underground_extend(sym, max(0, hi - shift - 1), max(0, shift - lo))
    f = base.shifted(shift)
    f = UndergroundWindow(lo, tuple(f.term(n) for n in range(lo, hi + 1)), f.s, f.k)
    if lens_from_underground(f).terms != t:
        raise NotLensSequence("window is not a single lens sequence")
    return _sign_normalize(f)


def factorize_scaled(b: SequenceWindow) -> tuple[int, UndergroundWindow]:
    """Divide out the common gcd ``g`` first; returns ``(g, f)`` with ``b = g * f[n-1] f[n]``."""
    if not b.is_integral():
        raise NotIntegral("window has non-integer terms")
    g = window_gcd(b)
    reduced = SequenceWindow(b.origin_index, tuple(x / g for x in b.terms))
    return g, factorize(reduced)


# -- integrality ----------------------------------------------------------------


def _int_seed(seed: Seed) -> tuple[int, int, int]:
    if not seed.is_integral():
        raise NotIntegral("criteria apply to integer seeds")
    a, b, c = (int(x) for x in seed.as_tuple())
    if b == 0:
        raise DegenerateSeed("criteria need a nonzero middle term")
    return a, b, c


def integrality_criterion_1(seed: Seed) -> bool:
    """Sufficient condition: b | ac and b^2 | ab + bc + ca."""
    a, b, c = _int_seed(seed)
    return (a * c) % b == 0 and (a * b + b * c + c * a) % (b * b) == 0


def integrality_criterion_2(seed: Seed) -> bool:
    """Necessary and sufficient condition for an integer lens sequence."""
    a, b, c = _int_seed(seed)
    g = math.gcd(a, b, c)
    gab, gbc = math.gcd(a, b), math.gcd(b, c)
    return (
        gab * gbc == abs(b) * g
        and ((a + b) * g) % (gab * gab) == 0
        and ((b + c) * g) % (gbc * gbc) == 0
    )


# -- structural identities -----------------------------------------------------


def square_sum_check(b: SequenceWindow, f: UndergroundWindow) -> bool:
    """b[n] + b[n+1] = c * f[n]^2 where c is the coefficient producing f[n+1]."""
    for n in b.indices():
        if n + 1 > b.last_index or not (f.origin_index <= n - 1 and n + 1 <= f.last_index):
            continue
        if b.term(n) + b.term(n + 1) != f.coefficient(n + 1) * f.term(n) ** 2:
            return False
    return True


def determinant_check(f: UndergroundWindow, beta) -> bool:
    """f[n+3] f[n] - f[n+1] f[n+2] = -beta along the window."""
    t = f.terms
    if len(t) < 4:
        raise ValueError("determinant_check needs four terms")
    beta = as_rational(beta)
    return all(t[i + 3] * t[i] - t[i + 1] * t[i + 2] == -beta for i in range(len(t) - 3))


def determinant_invariant(f: UndergroundWindow) -> list[int]:
    """The values f[n+3] f[n] - f[n+1] f[n+2] (constant for a true underground)."""
    t = f.terms
    return [t[i + 3] * t[i] - t[i + 1] * t[i + 2] for i in range(len(t) - 3)]


def eigen_check(b: SequenceWindow, f: UndergroundWindow, beta) -> bool:
    """[[b(n+1), b(n+2)], [b(n-1), b(n)]] (f(n+1), -f(n-1)) = beta (f(n+1), -f(n-1))."""
    beta = as_rational(beta)
    checked = 0
    for n in b.indices():
        need_b = (n - 1, n + 2)
        need_f = (n - 1, n + 1)
        if need_b[0] < b.origin_index or need_b[1] > b.last_index:
            continue
        if need_f[0] < f.origin_index or need_f[1] > f.last_index:
            continue
        v1, v2 = f.term(n + 1), -f.term(n - 1)
        r1 = b.term(n + 1) * v1 + b.term(n + 2) * v2
        r2 = b.term(n - 1) * v1 + b.term(n) * v2
        if r1 != beta * v1 or r2 != beta * v2:
            return False
        checked += 1
    if checked == 0:
        raise ValueError("windows too short or misaligned for eigen_check")
    return True


def f_recurrence_check(f: UndergroundWindow, alpha) -> bool:
    """f[n+2] + f[n-2] = alpha f[n]."""
    alpha = as_rational(alpha)
    t = f.terms
    return all(t[i + 2] + t[i - 2] == alpha * t[i] for i in range(2, len(t) - 2))


# -- text forms -------------------------------------------------------------------

_INT = r"\s*([+-]?\d+)\s*"
_SYMBOL_RE = re.compile(rf"^\s*\^{_INT}\({_INT},{_INT}\)\s*\^{_INT}$")
_LABEL_RE = re.compile(rf"^\s*\[{_INT},{_INT};{_INT}\]\s*$")


def parse_symbol(text: str) -> UndergroundSymbol:
    m = _SYMBOL_RE.match(text)
    if not m:
        raise ParseError(f"not a symbol ^s(p,q)^k: {text!r}")
    s, p, q, k = (int(g) for g in m.groups())
    return UndergroundSymbol(s, p, q, k)


def parse_label(text: str) -> Label:
    m = _LABEL_RE.match(text)
    if not m:
        raise ParseError(f"not a label [a,b;k]: {text!r}")
    a, b, k = (int(g) for g in m.groups())
    return Label(a, b, k)
