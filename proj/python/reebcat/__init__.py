"""R-graphs, their smoothings and interleavings, with exact rational values.

Values go in as ``Fraction``, ``int``, decimal strings or ``"p/q"`` strings and
come back as ``Fraction``.
"""

from fractions import Fraction

from . import _reebcat
from ._reebcat import Graph, ParseError, ResourceLimitError, Smoothing, fork, is_isomorphic, reeb

__all__ = [
    "Graph",
    "ParseError",
    "ResourceLimitError",
    "Smoothing",
    "check_interleave",
    "components",
    "criticals",
    "distance",
    "fork",
    "is_isomorphic",
    "line",
    "loop",
    "point",
    "reeb",
    "smooth",
]


def _q(x):
    if isinstance(x, float):
        x = Fraction(x)
    return str(x)


def criticals(g):
    return [Fraction(v) for v in g.criticals()]


def line(a, b):
    return _reebcat.line(_q(a), _q(b))


def loop(a, b):
    return _reebcat.loop(_q(a), _q(b))


def point(a):
    return _reebcat.point(_q(a))


def smooth(g, epsilon, algo="sweep"):
    return _reebcat.smooth(g, _q(epsilon), algo)


def components(g, lo=None, hi=None):
    """Components over the open interval (lo, hi); None is infinite."""
    return _reebcat.components(g, None if lo is None else _q(lo), None if hi is None else _q(hi))


def check_interleave(f, g, epsilon, alpha, beta):
    """Returns (ok, diagnostic) for maps given as morphism documents."""
    return _reebcat.check_interleave(f, g, _q(epsilon), alpha, beta)


def distance(f, g, tol, budget=None):
    """Bracket [lower, upper] on the interleaving distance, as a dict."""
    args = (f, g, _q(tol)) if budget is None else (f, g, _q(tol), budget)
    out = _reebcat.distance(*args)
    for key in ("lower", "upper"):
        if out[key] is not None:
            out[key] = Fraction(out[key])
    out["transcript"] = [(Fraction(e), status, nodes) for e, status, nodes in out["transcript"]]
    return out
