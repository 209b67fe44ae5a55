"""Mass/charge pairs: integrality, symmetry breaking and labelled charges."""
import enum
import logging
from dataclasses import dataclass

from modules.exact import express_in_columns, is_integral
from modules.rootsys import Basis, RootSystem, coroot, pairing

logger = logging.getLogger(__name__)


class IntegralityError(ValueError): pass


class ChargeKind(enum.Enum):
    MAGNETIC = "Magnetic"
    HOLOMORPHIC = "Holomorphic"


@dataclass(frozen=True)
class MassChargePair:
    rs: RootSystem
    mu: object
    kappa: object


def check_integrality(rs, kappa):
    """exp(2 pi kappa) = 1; for simply connected groups this is membership of
    the coroot lattice, i.e. integer coroot coordinates."""
    if kappa.basis is not Basis.COROOT:
        raise ValueError("integrality is checked on coroot-basis charges")
    return is_integral(kappa.coeffs)


def make_pair(rs, mu, kappa):
    if mu.basis is not Basis.COWEIGHT:
        raise ValueError("mass must be given in the fundamental-coweight basis")
    if kappa.basis is not Basis.COROOT:
        raise ValueError("charge must be given in the simple-coroot basis")
    for name, element in (("mass", mu), ("charge", kappa)):
        if len(element.coeffs) != rs.rank:
            raise ValueError(f"{name} has {len(element.coeffs)} coordinates, rank is {rs.rank}")
    if not check_integrality(rs, kappa):
        raise IntegralityError(f"charge {tuple(map(str, kappa.coeffs))} is not in the coroot lattice")
    return MassChargePair(rs, mu, kappa)


@dataclass(frozen=True)
class ChargeEntry:
    index: int
    value: int
    kind: ChargeKind
    root: tuple


@dataclass(frozen=True)
class ChargeReport:
    entries: tuple
    adapted_base: tuple
    raw_coordinates: tuple

    @property
    def magnetic(self):
        return tuple(e for e in self.entries if e.kind is ChargeKind.MAGNETIC)

    @property
    def holomorphic(self):
        return tuple(e for e in self.entries if e.kind is ChargeKind.HOLOMORPHIC)

    @property
    def total(self):
        return sum(e.value for e in self.entries)


def charge_report(pair, ps):
    """Charges i w_j(kappa) for the fundamental weights of the adapted base.

    They are the coordinates of kappa in the coroot basis of the adapted
    simple roots. Negative values are reported, not rejected.
    """
    rs, mu, kappa = pair.rs, pair.mu, pair.kappa
    if not check_integrality(rs, kappa):
        raise IntegralityError("charge report needs an integral charge")
    coroots = [coroot(rs, beta) for beta in ps.base]
    coefficients = express_in_columns(coroots, kappa.coeffs)
    entries = []
    for index, (beta, value) in enumerate(zip(ps.base, coefficients)):
        if value.denominator != 1:
            raise ArithmeticError(f"adapted charge {value} for {beta} is not an integer")
        kind = ChargeKind.MAGNETIC if pairing(rs, beta, mu) != 0 else ChargeKind.HOLOMORPHIC
        entries.append(ChargeEntry(index, int(value), kind, beta))
    return ChargeReport(tuple(entries), ps.base, tuple(int(k) for k in kappa.coeffs))


@dataclass(frozen=True)
class BreakingReport:
    centralizer_mu_dim: int
    stabilizer_mu_kappa_dim: int
    base_dim: int
    root_counts: tuple

    @property
    def maximal(self):
        """Maximal symmetry breaking: no root vanishes on the mass."""
        return self.root_counts[1] == 0


def breaking_report(pair):
    rs = pair.rs
    mu_positive = mu_zero = mu_zero_kappa_nonzero = 0
    for alpha in rs.roots:
        m = pairing(rs, alpha, pair.mu)
        if m > 0:
            mu_positive += 1
        elif m == 0:
            mu_zero += 1
            if pairing(rs, alpha, pair.kappa) != 0:
                mu_zero_kappa_nonzero += 1
    centralizer = rs.rank + mu_zero
    stabilizer = rs.rank + mu_zero - mu_zero_kappa_nonzero
    return BreakingReport(
        centralizer_mu_dim=centralizer,
        stabilizer_mu_kappa_dim=stabilizer,
        base_dim=centralizer - stabilizer,
        root_counts=(mu_positive, mu_zero, mu_zero_kappa_nonzero),
    )
