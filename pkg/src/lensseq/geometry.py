"""Lens geometry: lens circles, Pedoe products, exact chain layouts and a
floating-point tangency oracle.

Conventions.  The two lens circles have signed curvature ``A = 1/R`` with
``R = (alpha + 2)/(-beta)`` and centres ``(0, +h)``, ``(0, -h)`` where
``h^2 = 4R^2/(alpha + 2)``.  Chain circles sit on the x-axis.  Radii are
signed (``1/curvature``) everywhere, so a negative ``R`` realizes the diverging
lens of an outer chain without a separate formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import LensConstants, Seed, SequenceWindow, constants_from_seed, window_constants
from .errors import (
    DegenerateK,
    DegenerateSeed,
    NegativeRadicand,
    NotRenderable,
    SingularConfiguration,
)
from .exactnum import QuadExt, as_rational, quad_sqrt, quad_to_float


class LensClass(str, Enum):
    FORMAL = "formal"
    PERIODIC = "periodic"
    TANGENT_BOUNDARY = "tangent_boundary"
    CONVERGING_INNER = "converging_inner"
    DIVERGING_OUTER = "diverging_outer"


@dataclass(frozen=True)
class Circle:
    """A circle by signed curvature and centre.  Values may be exact or float."""

    curvature: object
    center_x: object = 0
    center_y: object = 0

    def __post_init__(self):
        if self.curvature == 0:
            raise ValueError("lines (zero curvature) are not circles here")

    @property
    def is_exact(self) -> bool:
        return not any(isinstance(v, float) for v in (self.curvature, self.center_x, self.center_y))

    @property
    def radius(self):
        if self.is_exact:
            return 1 / as_rational(self.curvature)
        return 1.0 / float(self.curvature)

    def to_float(self) -> "Circle":
        return Circle(_f(self.curvature), _f(self.center_x), _f(self.center_y))

    def mirrored(self) -> "Circle":
        """Reflection in the y-axis."""
        return Circle(self.curvature, -self.center_x, self.center_y)

    def translated(self, dx, dy=0) -> "Circle":
        return Circle(self.curvature, self.center_x + dx, self.center_y + dy)


def _f(v) -> float:
    if isinstance(v, float):
        return v
    if isinstance(v, QuadExt):
        return quad_to_float(v)
    return float(v)


@dataclass(frozen=True)
class LensGeometry:
    """Lens data derived from (alpha, beta).  ``None`` fields are undefined; see ``absent``."""

    alpha: Fraction
    beta: Fraction
    R: Fraction | None
    K: Fraction | None
    L: QuadExt | None
    delta: QuadExt | None
    lens_class: LensClass
    absent: tuple[tuple[str, str], ...] = ()

    @property
    def A(self) -> Fraction | None:
        """Signed curvature of each lens circle."""
        return None if self.R is None else 1 / self.R

    @property
    def relative_delta(self) -> QuadExt | None:
        """delta / R = 4 / sqrt(alpha + 2)."""
        return None if self.delta is None else self.delta / self.R


def pedoe_product(c1: Circle, c2: Circle):
    """(d^2 - r1^2 - r2^2) / (2 r1 r2) with signed radii.

    Exact circles give an exact result (Fraction, or QuadExt when the squared
    distance is irrational); otherwise a float.
    """
    if c1.is_exact and c2.is_exact:
        r1, r2 = c1.radius, c2.radius
        dx = c1.center_x - c2.center_x
        dy = c1.center_y - c2.center_y
        d2 = dx * dx + dy * dy
        val = (d2 - r1 * r1 - r2 * r2) / (2 * r1 * r2)
        if isinstance(val, QuadExt) and val.is_rational:
            return val.rational_part
        return as_rational(val) if not isinstance(val, QuadExt) else val
    a, b = c1.to_float(), c2.to_float()
    r1, r2 = a.radius, b.radius
    d2 = (a.center_x - b.center_x) ** 2 + (a.center_y - b.center_y) ** 2
    return (d2 - r1 * r1 - r2 * r2) / (2 * r1 * r2)


def classify(alpha, seq_sample: SequenceWindow | Sequence | None = None, beta=None) -> LensClass:
    """Lens type from alpha; for alpha > 2 the chain side comes from beta or the sample.

    An outer chain shows a non-positive term (one negative entry or a pair of
    zeros) or a positive beta.
    """
    alpha = as_rational(alpha)
    if alpha < -2:
        return LensClass.FORMAL
    if alpha < 2:
        return LensClass.PERIODIC
    if alpha == 2:
        return LensClass.TANGENT_BOUNDARY
    terms = []
    if seq_sample is not None:
        terms = list(seq_sample.terms if isinstance(seq_sample, SequenceWindow) else seq_sample)
        if beta is None and isinstance(seq_sample, SequenceWindow):
            try:
                beta = (seq_sample.constants or window_constants(seq_sample)).beta
            except ValueError:
                beta = None
    outer = any(as_rational(t) < 0 for t in terms)
    outer = outer or any(terms[i] == 0 and terms[i + 1] == 0 for i in range(len(terms) - 1))
    if beta is not None and as_rational(beta) > 0:
        outer = True
    return LensClass.DIVERGING_OUTER if outer else LensClass.CONVERGING_INNER


def lens_params(k: LensConstants) -> LensGeometry:
    """R = (alpha+2)/(-beta), K = (6-alpha)/(2+alpha), L = 2R sqrt((alpha-2)/(alpha+2)),
    delta = 4R/sqrt(alpha+2)."""
    al, be = k.alpha, k.beta
    absent = []
    R = K = L = delta = None
    if al == -2:
        absent.append(("R", "alpha = -2: lens circles degenerate"))
        absent.append(("K", "alpha = -2: division by zero"))
    else:
        K = (6 - al) / (2 + al)
        if be == 0:
            absent.append(("R", "beta = 0: lens circles are lines"))
        else:
            R = (al + 2) / (-be)
    if R is None:
        absent.append(("L", "R undefined"))
        absent.append(("delta", "R undefined"))
    else:
        if al >= 2:
            L = 2 * R * quad_sqrt((al - 2) / (al + 2))
        else:
            absent.append(("L", "alpha < 2: no real lens length"))
        if al > -2:
            delta = 4 * R * quad_sqrt(1 / (al + 2))
        else:
            absent.append(("delta", "alpha < -2: no real separation"))
    return LensGeometry(al, be, R, K, L, delta, classify(al, None, be), tuple(absent))


def K_from_seed(s: Seed) -> Fraction:
    """K = 8b^2 / ((a+b)(b+c)) - 1."""
    a, b, c = s.as_tuple()
    den = (a + b) * (b + c)
    if den == 0:
        raise DegenerateSeed("(a+b)(b+c) vanishes")
    return 8 * b * b / den - 1


def next_curvature_numeric(x: float, A: float, K: float, branch: str = "plus", tol: float = 1e-9) -> float:
    """Curvature of a chain circle tangent to circle ``x`` inside the lens.

    y = ((3-K)x - 4A +- 2 sqrt(2(1-K)x^2 - 8Ax + 4A^2)) / (1+K)
    """
    x, A, K = float(x), float(A), float(K)
    if K == -1:
        raise DegenerateK("K = -1")
    rad = 2 * (1 - K) * x * x - 8 * A * x + 4 * A * A
    if rad < 0:
        scale = max(2 * abs(1 - K) * x * x, 8 * abs(A * x), 4 * A * A, 1.0)
        if rad < -tol * scale:
            raise NegativeRadicand(f"radicand {rad} < 0")
        rad = 0.0
    root = 2 * math.sqrt(rad)
    base = (3 - K) * x - 4 * A
    if branch == "plus":
        return (base + root) / (1 + K)
    if branch == "minus":
        return (base - root) / (1 + K)
    raise ValueError(f"unknown branch {branch!r}")


def oracle_chain(seed: Seed, steps: int) -> list[float]:
    """Iterate the tangency formula forward from (b0, b1) in double precision.

    Returns ``steps`` terms b2, b3, ...; at each step the root farther from the
    previous term is kept (the other root is the previous circle).
    """
    k = constants_from_seed(seed)
    if k.alpha == -2:
        raise DegenerateK("alpha = -2")
    A = float(-k.beta / (k.alpha + 2))
    K = float((6 - k.alpha) / (2 + k.alpha))
    prev, cur = float(seed.b), float(seed.c)
    out = []
    for _ in range(steps):
        yp = next_curvature_numeric(cur, A, K, "plus")
        ym = next_curvature_numeric(cur, A, K, "minus")
        nxt = yp if abs(yp - prev) >= abs(ym - prev) else ym
        out.append(nxt)
        prev, cur = cur, nxt
    return out


@dataclass(frozen=True)
class ChainLayout:
    lens: tuple[Circle, Circle]
    chain: tuple[Circle, ...]
    origin_index: int
    geometry: LensGeometry

    def circles(self) -> list[Circle]:
        """Lens circles first, then the chain by index."""
        return [*self.lens, *self.chain]

    def chain_circle(self, n: int) -> Circle:
        return self.chain[n - self.origin_index]


def chain_layout(b: SequenceWindow, g: LensGeometry | None = None) -> ChainLayout:
    """Exact positions of the chain circles and the two lens circles.

    Chain circle n is centred at x = (b[n+1] - b[n-1]) / (-beta b[n]), a
    rational number; consecutive centres differ by 1/b[n] + 1/b[n+1].
    """
    k = b.constants or window_constants(b)
    g = g or lens_params(k)
    if g.lens_class in (LensClass.FORMAL, LensClass.PERIODIC):
        raise NotRenderable(f"{g.lens_class.value} lens has no real circle chain")
    if g.R is None:
        raise NotRenderable("lens circles are undefined (beta = 0)")
    if any(t == 0 for t in b.terms):
        raise NotRenderable("window contains a zero curvature (a line)")
    al, be = k.alpha, k.beta
    t = list(b.terms)
    if len(t) < 2:
        raise ValueError("need at least two terms to lay out a chain")
    before = al * t[0] - t[1] + be
    after = al * t[-1] - t[-2] + be
    ext = [before, *t, after]
    chain = []
    for i in range(1, len(ext) - 1):
        x = (ext[i + 1] - ext[i - 1]) / (-be * ext[i])
        chain.append(Circle(ext[i], x, Fraction(0)))
    h = quad_sqrt(4 * g.R * g.R / (al + 2))
    A = 1 / g.R
    lens = (Circle(A, Fraction(0), h), Circle(A, Fraction(0), -h))
    return ChainLayout(lens, tuple(chain), b.origin_index, g)


def config_matrix(circles: Sequence[Circle]) -> list[list]:
    n = len(circles)
    return [[pedoe_product(circles[i], circles[j]) for j in range(n)] for i in range(n)]


def _exact_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise SingularConfiguration("configuration matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [row[n:] for row in a]


def config_matrix_residual(circles: Sequence[Circle], exact: bool | None = None) -> float:
    """|b^T f^{-1} b| for four circles with configuration matrix f.

    Exact circles whose Pedoe products are all rational use exact inversion;
    otherwise numpy in double precision, with |det f| > 1e-12 required.
    """
    if len(circles) != 4:
        raise ValueError("need exactly four circles")
    m = config_matrix(circles) if exact is not False else None
    if exact is not False and all(c.is_exact for c in circles) and all(
        isinstance(v, Fraction) for row in m for v in row
    ):
        inv = _exact_inverse(m)
        bvec = [as_rational(c.curvature) for c in circles]
        val = sum(bvec[i] * inv[i][j] * bvec[j] for i in range(4) for j in range(4))
        return abs(float(val))
    fc = [c.to_float() for c in circles]
    fm = np.array([[pedoe_product(a, b) for b in fc] for a in fc], dtype=float)
    if abs(np.linalg.det(fm)) <= 1e-12:
        raise SingularConfiguration("configuration matrix is (numerically) singular")
    bvec = np.array([c.curvature for c in fc], dtype=float)
    return float(abs(bvec @ np.linalg.solve(fm, bvec)))


def layout_quadruples(layout: ChainLayout) -> list[tuple[int, list[Circle]]]:
    """(lens circle, b[n-1], b[n], b[n+1]) for every interior n of the layout."""
    out = []
    ch = layout.chain
    for i in range(1, len(ch) - 1):
        out.append((layout.origin_index + i, [layout.lens[0], ch[i - 1], ch[i], ch[i + 1]]))
    return out


def tangency_residuals(layout: ChainLayout) -> dict[str, float]:
    """Worst relative tangency errors of a layout, evaluated in floats."""
    worst_chain = 0.0
    ch = [c.to_float() for c in layout.chain]
    for a, b in zip(ch, ch[1:]):
        want = abs(a.radius + b.radius)
        got = abs(b.center_x - a.center_x)
        worst_chain = max(worst_chain, abs(got - want) / max(abs(want), 1e-300))
    worst_lens = 0.0
    for lc in layout.lens:
        l = lc.to_float()
        for c in ch:
            # signed tangency: Pedoe product of lens and chain circle is -1
            worst_lens = max(worst_lens, abs(pedoe_product(l, c) + 1))
    return {"chain": worst_chain, "lens": worst_lens}
