"""Indicial roots and defect of the linearised operator on one root line bundle.

A root subbundle with line-bundle degree ``d`` and deformation parameter
``t`` has indicial roots

    lambda = +-sqrt(j^2 + j|d| + (t d / 2)^2),   j >= 0,

with j = 0 only when d != 0. Roots are kept as (sign, lambda^2) with lambda^2
rational, so every comparison is exact.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

logger = logging.getLogger(__name__)


class NonFredholmWeightError(ValueError): pass
class OutsideWindowError(ValueError): pass
class DegenerateNullityError(ValueError): pass


def _check_t(t):
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"deformation parameter t={t} outside [0, 1]")
    return t


def lambda_squared(j, d, t):
    return Fraction(j * j + j * abs(d)) + (Fraction(t) * d / 2) ** 2


@dataclass(frozen=True)
class IndicialRoot:
    j: int
    d: int
    t: Fraction
    sign: int
    lambda_sq: Fraction
    # both sign branches meet at lambda = 0 (t = 0, j = 0, d != 0)
    coincident: bool = False

    @property
    def value(self):
        return self.sign * sympy.sqrt(sympy.Rational(self.lambda_sq.numerator, self.lambda_sq.denominator))

    @property
    def sort_key(self):
        return (self.sign, self.sign * self.lambda_sq)


def bspec(d, t, lambda_max):
    """All indicial roots with |lambda| <= lambda_max, sorted by lambda."""
    t = _check_t(t)
    lambda_max = Fraction(lambda_max)
    if lambda_max <= 0:
        raise ValueError("lambda_max must be positive")
    bound = lambda_max ** 2
    roots = []
    j = 0 if d != 0 else 1
    while True:
        lsq = lambda_squared(j, d, t)
        if lsq > bound:
            break
        if lsq == 0:
            roots.append(IndicialRoot(j, d, t, 1, lsq, coincident=True))
        else:
            roots.append(IndicialRoot(j, d, t, -1, lsq))
            roots.append(IndicialRoot(j, d, t, 1, lsq))
        j += 1
    roots.sort(key=lambda root: root.sort_key)
    return roots


def j0_nullity(d, t, sign):
    """Dimension of the kernel of the indicial operator at lambda = sign*t|d|/2."""
    t = _check_t(t)
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if t == 0:
        raise DegenerateNullityError("at t = 0 both j = 0 roots merge at lambda = 0; no per-sign split")
    if d == 0:
        return 0
    return abs(d) if sign == -1 else 0


def defect_region(d, t, delta):
    """Per-copy defect at weight delta, in the window |delta| < 1.

    It is -|d|/2 to the right of the line delta = -t|d|/2 and +|d|/2 to its
    left; crossing the line leftwards adds |d|. The weight delta = +t|d|/2 is
    admissible for t > 0 because the indicial operator has no kernel there.
    """
    t = _check_t(t)
    delta = Fraction(delta)
    if abs(delta) >= 1:
        raise OutsideWindowError(f"weight {delta} outside the window (-1, 1)")
    if d == 0:
        return Fraction(0)
    line = t * abs(d) / 2
    # the kernel at +t|d|/2 is trivial for t > 0, so only -t|d|/2 blocks the weight
    if delta == -line:
        raise NonFredholmWeightError(f"weight {delta} sits on an indicial root for d={d}, t={t}")
    half = Fraction(abs(d), 2)
    return -half if delta > -line else half


def dirac_sphere_specsq(d, jmax):
    """Eigenvalues j(j+|d|) of D^-D^+ on the degree-d bundle over the sphere."""
    if jmax < 0:
        raise ValueError("jmax must be nonnegative")
    start = 0 if d > 0 else 1
    return [(j, j * (j + abs(d))) for j in range(start, jmax + 1)]


def defect_grid(d, ts, deltas):
    """Rows (d, t, delta, defect) for a (t, delta) sweep, skipping weights on a line."""
    rows = []
    for t in sorted(Fraction(x) for x in ts):
        for delta in sorted(Fraction(x) for x in deltas):
            try:
                rows.append((d, t, delta, defect_region(d, t, delta)))
            except NonFredholmWeightError:
                logger.debug("skipping on-line weight d=%s t=%s delta=%s", d, t, delta)
    return rows
