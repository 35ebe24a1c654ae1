"""Typed errors raised across the package.

Every error derives from :class:`LensError`, itself a ``ValueError``, so callers
can catch the whole family at once.  The CLI maps them onto exit codes.
"""

from __future__ import annotations


class LensError(ValueError):
    """Base class for domain errors."""


class ZeroMiddleTerm(LensError):
    pass


class ZeroDenominatorTerm(LensError):
    pass


class NonSquareDiscriminant(LensError):
    pass


class AllZero(LensError):
    pass


class MixedDiscriminant(LensError):
    pass


class NotPrimitive(LensError):
    pass


class NotIntegral(LensError):
    pass


class NotLensSequence(LensError):
    """A window whose terms do not obey a single lens recurrence."""


class NegativeRadicand(LensError):
    pass


class DegenerateK(LensError):
    pass


class DegenerateSeed(LensError):
    pass


class SingularConfiguration(LensError):
    pass


class NotRenderable(LensError):
    pass


class ComplexLambda(LensError):
    pass


class DegenerateAlpha(LensError):
    pass


class DivergentSum(LensError):
    pass


class OutOfRange(LensError):
    pass


class ParseError(LensError):
    pass


class NonIntegerSequence(LensError):
    pass
