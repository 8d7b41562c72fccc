"""Exit-time and exit-location pseudo-distributions of pseudo-Brownian motion.

Thin wrapper over the compiled core. Exact rational results cross the
boundary as strings; the helpers here convert them to fractions.Fraction.
"""

from fractions import Fraction

from ._core import (  # noqa: F401
    __version__,
    exit_density,
    hermite_coefficients,
    joint_total_mass,
    laplace_eval,
    roots,
    survival,
    verify,
)
from . import _core


def _frac(s):
    return Fraction(s)


def ruin(n, a, b, x):
    """Ruin pseudo-probabilities (H_0^-(x), H_0^+(x)) as exact Fractions."""
    lo, hi = _core.ruin(n, str(a), str(b), str(x))
    return _frac(lo), _frac(hi)


def moment(n, a, b, x, p):
    """Pseudo-moment E_x[(X_tau)^p] as an exact Fraction."""
    return _frac(_core.moment(n, str(a), str(b), str(x), p))


def overshoot_moment(n, a, b, x, p):
    """E_x[(X_tau - b)^p 1{upper exit first}] as an exact Fraction."""
    return _frac(_core.overshoot_moment(n, str(a), str(b), str(x), p))


def hermite_basis(n, a, b):
    """Both Hermite families as lists of Fraction coefficient lists."""
    minus, plus = hermite_coefficients(n, str(a), str(b))
    conv = lambda fam: [[_frac(c) for c in poly] for poly in fam]  # noqa: E731
    return conv(minus), conv(plus)
