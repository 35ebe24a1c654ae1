"""Batch verification of a window against every invariant the package knows.

Checks run in a fixed order; each yields ``pass``, ``fail`` or ``skip`` (when
it does not apply to the window, e.g. Binet checks at alpha = +-2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import analysis, core, geometry, underground
from .core import LensConstants, Seed, SequenceWindow
from .errors import LensError


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class VerificationReport:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def add(self, name: str, status, detail: str = "") -> None:
        if isinstance(status, bool):
            status = "pass" if status else "fail"
        self.checks.append(CheckResult(name, status, detail))

    def get(self, name: str) -> CheckResult:
        return next(c for c in self.checks if c.name == name)

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


def _interior_seeds(w: SequenceWindow):
    t = w.terms
    for i in range(1, len(t) - 1):
        if t[i] != 0:
            yield w.origin_index + i, Seed(t[i - 1], t[i], t[i + 1])


def verify_window(w: SequenceWindow, k: LensConstants | None = None, oracle_steps: int = 15) -> VerificationReport:
    """Run all applicable checks on ``w`` (constants from ``k`` or the window)."""
    rep = VerificationReport()
    k = k or w.constants or core.window_constants(w)
    rep.add("constants", "pass", f"alpha={k.alpha} beta={k.beta}")

    bad = core.recurrence_residuals(w, k)
    rep.add("recurrence", not bad, f"first failing index {bad[0][0]}" if bad else "")

    moved = [n for n, s in _interior_seeds(w) if core.constants_from_seed(s) != k]
    rep.add("translation_invariance", not moved, f"first differing index {moved[0]}" if moved else "")

    incompatible = core.compatibility_failures(w, k)
    rep.add("compatibility", not incompatible, f"pair at index {incompatible[0]}" if incompatible else "")

    if len(w) >= 4:
        kw = SequenceWindow(w.origin_index, w.terms, k)
        rep.add("four_term", core.four_term_check(kw))
        t = w.terms
        quads = [(t[i], t[i + 1], t[i + 2], t[i + 3]) for i in range(len(t) - 3) if t[i + 1] and t[i + 2]]
        rep.add("alpha_from_four", all(core.alpha_from_four(*q) == k.alpha for q in quads) if quads else "skip")
    else:
        rep.add("four_term", "skip", "fewer than four terms")
        rep.add("alpha_from_four", "skip", "fewer than four terms")

    if bad:
        # the remaining checks assume a genuine lens window
        return rep

    first = next(_interior_seeds(w), None)
    seed = first[1] if first else None
    start = first[0] - 1 if first else None
    for variant in core.NONLINEAR_VARIANTS:
        if seed is None:
            rep.add(f"nonlinear_{variant}", "skip", "no seed")
            continue
        n = w.last_index - (start + 2)
        try:
            alt = core.extend_nonlinear(seed, variant, n)
        except LensError as exc:
            rep.add(f"nonlinear_{variant}", "skip", type(exc).__name__)
            continue
        rep.add(f"nonlinear_{variant}", alt.terms == w.terms[start - w.origin_index :])

    _integrality_checks(rep, w, seed)
    _underground_checks(rep, w, k, start)
    _binet_checks(rep, w, k, seed, start)
    _geometry_checks(rep, w, k, seed, start, oracle_steps)
    return rep


def _integrality_checks(rep, w, seed):
    if seed is None or not seed.is_integral():
        rep.add("integrality_criteria", "skip", "seed not integral")
        return
    c1 = underground.integrality_criterion_1(seed)
    c2 = underground.integrality_criterion_2(seed)
    integral = w.is_integral()
    ok = (not c1 or c2) and (integral or not c2)
    rep.add("integrality_criteria", ok, f"criterion_1={c1} criterion_2={c2} window_integral={integral}")


def _underground_checks(rep, w, k, start):
    names = ("underground_roundtrip", "underground_gcd", "square_sum", "determinant", "eigen", "underground_recurrence")
    if not w.is_integral() or not any(w.terms):
        for n in names:
            rep.add(n, "skip", "window not integral")
        return
    try:
        g, f = underground.factorize_scaled(w)
    except LensError as exc:
        for n in names:
            rep.add(n, "fail" if n == names[0] else "skip", type(exc).__name__)
        return
    prim = SequenceWindow(w.origin_index, tuple(t / g for t in w.terms), LensConstants(k.alpha, k.beta / g))
    back = underground.lens_from_underground(f)
    # b(n) = f(n-1) f(n): the symbol of the seed starting at b(m) is read at f index m;
    # prefer the conventional seed position (b(-1), b(0), b(1)) when it is in the window
    at = -1 if f.origin_index <= -1 and w.origin_index <= -1 < w.last_index - 1 else start
    if at is None:
        at = f.origin_index
    sym = f.symbol_at(at)
    rep.add(names[0], back.terms == prim.terms, f"g={g} symbol={sym} at index {at}")
    pt = prim.as_ints()
    gcd_ok = all(abs(f.term(n)) == math.gcd(pt[i], pt[i + 1]) for i, n in enumerate(prim.indices()) if i + 1 < len(pt))
    rep.add(names[1], gcd_ok)
    rep.add(names[2], underground.square_sum_check(prim, f))
    rep.add(names[3], underground.determinant_check(f, prim.constants.beta) if len(f) >= 4 else "skip")
    try:
        rep.add(names[4], underground.eigen_check(prim, f, prim.constants.beta))
    except ValueError:
        rep.add(names[4], "skip", "window too short")
    rep.add(names[5], underground.f_recurrence_check(f, k.alpha))


def _binet_checks(rep, w, k, seed, start):
    if seed is None or k.alpha * k.alpha <= 4:
        rep.add("binet", "skip", "alpha^2 <= 4")
        return
    bf = analysis.binet_form(seed)
    # the seed's middle term is index start + 1
    ok = all(analysis.binet_eval(bf, n - (start + 1)) == t for n, t in w.items())
    rep.add("binet", ok)


def _geometry_checks(rep, w, k, seed, start, oracle_steps):
    g = geometry.lens_params(k)
    rep.add("lens_relation", g.R is None or g.alpha + g.R * g.beta == -2)
    try:
        layout = geometry.chain_layout(SequenceWindow(w.origin_index, w.terms, k), g)
    except LensError as exc:
        rep.add("layout_tangency", "skip", type(exc).__name__)
        rep.add("configuration_residual", "skip", type(exc).__name__)
        rep.add("oracle_agreement", "skip", type(exc).__name__)
        return
    h = layout.lens[0].center_y
    tangent = all(c.center_x ** 2 + h * h == (g.R - c.radius) ** 2 for c in layout.chain)
    steps = list(zip(layout.chain, layout.chain[1:]))
    tangent = tangent and all(abs(b.center_x - a.center_x) == abs(a.radius + b.radius) for a, b in steps)
    rep.add("layout_tangency", tangent)
    quads = geometry.layout_quadruples(layout)
    if quads:
        worst = max(geometry.config_matrix_residual(q) for _, q in quads)
        rep.add("configuration_residual", worst < 1e-9, f"max residual {worst:.3e}")
    else:
        rep.add("configuration_residual", "skip", "fewer than three chain circles")
    # iterate the float oracle only along the growing branch: from the smallest interior term
    m = max((-abs(s.b), n) for n, s in _interior_seeds(w))[1]
    n_steps = min(oracle_steps, w.last_index - (m + 1))
    if n_steps <= 0:
        rep.add("oracle_agreement", "skip", "no forward terms")
        return
    approx = geometry.oracle_chain(Seed(w.term(m - 1), w.term(m), w.term(m + 1)), n_steps)
    exact = [w.term(m + 2 + i) for i in range(n_steps)]
    err = max(abs(a - float(e)) / max(abs(float(e)), 1.0) for a, e in zip(approx, exact))
    rep.add("oracle_agreement", err < 1e-9, f"max relative error {err:.3e}")
