"""Dimension of the framed moduli space, computed three independent ways.

* scattering + defect: the Callias-type index of the roots with i alpha(mu) > 0
  plus the b-calculus defect of the roots with alpha(mu) = 0;
* 2 * sum over R+ of i alpha(kappa);
* 4 * sum of the adapted charges i w_j(kappa).

All three must agree; a disagreement is a bug and raises RouteMismatchError.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

from modules import indicial
from modules.masscharge import breaking_report, charge_report
from modules.rootsys import pairing, positive_system

logger = logging.getLogger(__name__)

# the complexified spinor bundle carries two copies of each root line bundle
COPIES_PER_ROOT = 2


class RouteMismatchError(ArithmeticError): pass


@dataclass(frozen=True)
class IndexBreakdown:
    scattering: int
    defect: int
    total: int
    via_positive_system: int
    via_weights: int
    empty_flag: bool


def _kernel_degrees(pair):
    """Degrees i alpha(kappa) of the roots with alpha(mu) = 0."""
    rs = pair.rs
    return [pairing(rs, alpha, pair.kappa) for alpha in rs.roots if pairing(rs, alpha, pair.mu) == 0]


def scattering_index(pair):
    rs = pair.rs
    total = Fraction(0)
    for alpha in rs.roots:
        if pairing(rs, alpha, pair.mu) > 0:
            total += pairing(rs, alpha, pair.kappa)
    return int(2 * total)


def bundle_defect(pair, t, delta):
    """Whole-bundle defect at deformation t and weight delta."""
    return sum(
        (COPIES_PER_ROOT * indicial.defect_region(int(d), t, delta) for d in _kernel_degrees(pair)),
        Fraction(0),
    )


def defect_total(pair):
    closed_form = -2 * sum(d for d in _kernel_degrees(pair) if d > 0)
    from_regions = bundle_defect(pair, 1, Fraction(1, 2))
    if closed_form != from_regions:
        raise RouteMismatchError(f"defect {closed_form} disagrees with indicial regions {from_regions}")
    return int(closed_form)


def self_adjoint_jump(pair):
    """Jump of the defect across delta = 0 at t = 0."""
    return int(COPIES_PER_ROOT * sum(abs(d) for d in _kernel_degrees(pair)))


def defect_sweep(pair, ts, deltas):
    """Rows (t, delta, defect) of the whole-bundle defect; on-line weights are skipped."""
    rows = []
    for t in sorted(Fraction(x) for x in ts):
        for delta in sorted(Fraction(x) for x in deltas):
            try:
                rows.append((t, delta, bundle_defect(pair, t, delta)))
            except indicial.NonFredholmWeightError:
                continue
    return rows


def moduli_dimension(pair, tiebreak=None):
    rs = pair.rs
    scattering = scattering_index(pair)
    defect = defect_total(pair)
    total = scattering + defect

    ps = positive_system(rs, pair.mu, pair.kappa, tiebreak)
    via_positive_system = int(2 * sum((pairing(rs, alpha, pair.kappa) for alpha in ps.positive_roots), Fraction(0)))
    via_weights = 4 * charge_report(pair, ps).total

    logger.debug("routes: scattering=%d defect=%d positive-system=%d weights=%d",
                 scattering, defect, via_positive_system, via_weights)
    if not total == via_positive_system == via_weights:
        raise RouteMismatchError(
            f"dimension routes disagree: scattering+defect={total}, "
            f"positive system={via_positive_system}, weights={via_weights}")
    if total % 4:
        raise RouteMismatchError(f"dimension {total} is not a multiple of 4")

    empty = total < 0
    if empty:
        logger.warning("negative index %d: the moduli space is empty", total)
    return IndexBreakdown(scattering, defect, total, via_positive_system, via_weights, empty)


def stratum_dimension(pair, tiebreak=None):
    """Fibre dimension plus the dimension of the framing base."""
    return moduli_dimension(pair, tiebreak).total + breaking_report(pair).base_dim
