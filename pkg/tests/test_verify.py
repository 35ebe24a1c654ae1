from __future__ import annotations

from fractions import Fraction as F

import pytest

from corpus import FORMAL, NONSYMMETRIC, PERIODIC, SYMMETRIC
from lensseq.core import LensConstants, Seed, SequenceWindow, extend
from lensseq.verify import verify_window

ALL_SEEDS = [r[1] for r in SYMMETRIC + NONSYMMETRIC + FORMAL] + [r[1] for r in PERIODIC]


def _window(seed, n=20):
    m = n - 3
    return extend(Seed(*seed), m - m // 2, m // 2)


@pytest.mark.parametrize("seed", ALL_SEEDS)
def test_corpus_windows_verify(seed):
    rep = verify_window(_window(seed))
    assert rep.ok, [c for c in rep.checks if c.status == "fail"]


def test_vesica_runs_every_check():
    rep = verify_window(_window((3, 1, 3)))
    assert rep.ok
    assert all(c.status == "pass" for c in rep.checks)
    names = [c.name for c in rep.checks]
    assert names[:4] == ["constants", "recurrence", "translation_invariance", "compatibility"]
    assert "oracle_agreement" in names and "eigen" in names


def test_symbol_reported_at_seed():
    rep = verify_window(_window((15, 35, 161)))
    assert "symbol=^2(5,7)^4" in rep.get("underground_roundtrip").detail


def test_tampered_window():
    rep = verify_window(SequenceWindow(0, (F(1), F(3), F(34))), LensConstants(14, -8))
    assert not rep.ok
    assert rep.get("compatibility").status == "fail"
    assert rep.get("compatibility").detail == "pair at index 1"
    assert rep.get("recurrence").detail == "first failing index 2"


def test_tampered_long_window():
    t = list(extend(Seed(3, 1, 3), 6).terms)
    t[4] += 1
    rep = verify_window(SequenceWindow(-1, tuple(t)))
    assert rep.get("recurrence").status == "fail"
    assert rep.get("compatibility").status == "fail"


def test_skips_are_not_failures():
    rep = verify_window(_window((-1, 3, 15)))
    assert rep.ok
    assert rep.get("binet").status == "skip"
    rep = verify_window(extend(Seed(F(1, 2), 1, 2), 6))
    assert rep.ok and rep.get("underground_roundtrip").status == "skip"


def test_report_json_order_is_fixed():
    a = verify_window(_window((2, 1, 2))).to_json()
    b = verify_window(_window((2, 1, 2))).to_json()
    assert a == b and a["ok"] is True
