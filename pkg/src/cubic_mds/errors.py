"""Shared exception types.

Kept in one place so callers can catch everything the package raises on
purpose without fishing through individual modules.
"""


class PoleError(ArithmeticError):
    """An evaluation landed on (or within 1e-13 of) a pole.

    Raised instead of returning inf/nan so that sweeps over grids of
    s-values fail loudly at the offending point.
    """


class OracleScaleError(ValueError):
    """A brute-force oracle was asked to run beyond its documented scale.

    The exhaustive counters exist to check the closed formulas, not to
    compute with; past their stated limits they would silently take
    minutes, so they refuse instead.
    """
