"""Root systems of semisimple Lie algebras, with exact arithmetic.

Conventions:

* roots are integer vectors in the fixed simple-root basis;
* ``cartan[i][j] = <alpha_j, alpha_i^vee>`` (Bourbaki labelling of the diagrams);
* masses live in the fundamental-coweight basis, ``<alpha_j, omega_i^vee> = delta_ij``;
* charges live in the simple-coroot basis, ``<alpha_j, alpha_i^vee> = cartan[i][j]``.
"""
import enum
import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from modules.exact import ParseError, express_in_columns

logger = logging.getLogger(__name__)

SERIES = "ABCDEFG"

# Root counts of the simple types, used as a sanity check after closure
_ROOT_COUNT = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n * n,
    "C": lambda n: 2 * n * n,
    "D": lambda n: 2 * n * (n - 1),
    "E": lambda n: {6: 72, 7: 126, 8: 240}[n],
    "F": lambda n: 48,
    "G": lambda n: 12,
}


class InvalidGroupError(ParseError): pass
class NonGenericTiebreakError(ValueError): pass


class Basis(enum.Enum):
    COWEIGHT = "coweight"
    COROOT = "coroot"


@dataclass(frozen=True)
class SimpleType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in SERIES:
            raise InvalidGroupError(f"unknown series {self.series!r}")
        n = self.rank
        valid = {
            "A": n >= 1,
            "B": n >= 2,
            "C": n >= 3,
            "D": n >= 4,
            "E": n in (6, 7, 8),
            "F": n == 4,
            "G": n == 2,
        }[self.series]
        if not valid:
            raise InvalidGroupError(f"{self.series}{n} is not a canonical simple type")

    def __str__(self):
        return f"{self.series}{self.rank}"


def parse_group(spec):
    """Parses ``"A2,G2"`` style group strings (case-insensitive)."""
    if not isinstance(spec, str) or not spec.strip():
        raise InvalidGroupError("empty group specification", 0)
    components = []
    offset = 0
    for token in spec.split(","):
        lead = len(token) - len(token.lstrip())
        word = token.strip().upper()
        match = re.fullmatch(r"([A-Z])(\d+)", word)
        if not match:
            raise InvalidGroupError(f"bad group token {token.strip()!r}", offset + lead)
        try:
            components.append(SimpleType(match.group(1), int(match.group(2))))
        except InvalidGroupError as e:
            raise InvalidGroupError(e.message, offset + lead) from None
        offset += len(token) + 1
    return tuple(components)


def cartan_matrix(simple_type):
    """Cartan matrix of a single simple type as a numpy int array."""
    series, rank = simple_type.series, simple_type.rank
    A = 2 * np.eye(rank, dtype=int)
    if rank == 1:
        return A
    if series in "ABCD":
        A[range(rank - 1), range(1, rank)] = -1
        A[range(1, rank), range(rank - 1)] = -1
    if series == "B":
        # alpha_n is short
        A[-1, -2] = -2
    elif series == "C":
        # alpha_n is long
        A[-2, -1] = -2
    elif series == "D":
        # alpha_n hangs off alpha_{n-2}, not alpha_{n-1}
        A[-2, -1] = A[-1, -2] = 0
        A[-3, -1] = A[-1, -3] = -1
    elif series == "E":
        # 1-3-4-5-6(-7-8) with 2 attached to 4
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)]:
            if j <= rank:
                A[i - 1, j - 1] = A[j - 1, i - 1] = -1
    elif series == "F":
        A[0, 1] = A[1, 0] = -1
        A[1, 2] = -1
        A[2, 1] = -2
        A[2, 3] = A[3, 2] = -1
    elif series == "G":
        A[0, 1] = -3
        A[1, 0] = -1
    return A


def _positive_roots(cartan):
    """Positive roots by climbing simple-root strings one height at a time."""
    n = len(cartan)
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    roots = set(simple)
    layer = list(simple)
    while layer:
        next_layer = []
        for beta in layer:
            for i in range(n):
                p = 0
                down = list(beta)
                down[i] -= 1
                while tuple(down) in roots:
                    p += 1
                    down[i] -= 1
                q = p - sum(beta[j] * cartan[i][j] for j in range(n))
                if q > 0:
                    up = list(beta)
                    up[i] += 1
                    up = tuple(up)
                    if up not in roots:
                        roots.add(up)
                        next_layer.append(up)
        layer = next_layer
    return roots


@dataclass(frozen=True)
class CartanElement:
    basis: Basis
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    def __add__(self, other):
        if other.basis != self.basis:
            raise ValueError("cannot add Cartan elements given in different bases")
        return CartanElement(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CartanElement(self.basis, tuple(-c for c in self.coeffs))


def cartan_element(basis, coeffs, rank=None):
    element = CartanElement(Basis(basis), coeffs)
    if rank is not None and len(element.coeffs) != rank:
        raise ValueError(f"expected {rank} {element.basis.value} coordinates, got {len(element.coeffs)}")
    return element


@dataclass(frozen=True)
class RootSystem:
    components: tuple
    cartan: tuple
    roots: tuple
    _root_set: frozenset = field(repr=False, compare=False, default=frozenset())

    @property
    def rank(self):
        return len(self.cartan)

    @property
    def label(self):
        return ",".join(str(c) for c in self.components)

    @cached_property
    def symmetrizer(self):
        """d_i = (alpha_i, alpha_i)/2 with d_i cartan[i][j] symmetric; each
        component is normalised so that its first simple root has d = 1."""
        n = self.rank
        d = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if j != i and self.cartan[i][j] and d[j] is None:
                        d[j] = d[i] * self.cartan[i][j] / self.cartan[j][i]
                        stack.append(j)
        return tuple(d)

    def __contains__(self, coords):
        return tuple(coords) in self._root_set


@lru_cache(maxsize=64)
def _build(components):
    blocks = [cartan_matrix(c) for c in components]
    n = sum(b.shape[0] for b in blocks)
    cartan = np.zeros((n, n), dtype=int)
    roots = []
    offset = 0
    for component, block in zip(components, blocks):
        size = block.shape[0]
        cartan[offset:offset + size, offset:offset + size] = block
        positive = _positive_roots(block.tolist())
        if len(positive) * 2 != _ROOT_COUNT[component.series](component.rank):
            raise ArithmeticError(f"root closure for {component} produced {2 * len(positive)} roots")
        for root in positive:
            padded = (0,) * offset + root + (0,) * (n - offset - size)
            roots.append(padded)
            roots.append(tuple(-x for x in padded))
        offset += size
    roots.sort()
    cartan_rows = tuple(tuple(int(x) for x in row) for row in cartan)
    logger.debug("built root system %s: rank %d, %d roots",
                 ",".join(map(str, components)), n, len(roots))
    return RootSystem(tuple(components), cartan_rows, tuple(roots), frozenset(roots))


def build_root_system(components):
    if isinstance(components, str):
        components = parse_group(components)
    components = tuple(components)
    if not components:
        raise InvalidGroupError("a root system needs at least one simple component")
    for c in components:
        if not isinstance(c, SimpleType):
            raise InvalidGroupError(f"not a simple type: {c!r}")
    return _build(components)


def lie_algebra_dimension(rs):
    return rs.rank + len(rs.roots)


def pairing(rs, alpha, h):
    """The real number i*alpha(h) for a root given in simple-root coordinates."""
    if h.basis is Basis.COWEIGHT:
        return sum((n * m for n, m in zip(alpha, h.coeffs)), Fraction(0))
    total = Fraction(0)
    for i, k in enumerate(h.coeffs):
        if k:
            row = rs.cartan[i]
            total += k * sum(row[j] * n for j, n in enumerate(alpha) if n)
    return total


def inner_product(rs, alpha, beta):
    """Invariant form on roots, (alpha_i, alpha_j) = d_i cartan[i][j]."""
    d = rs.symmetrizer
    total = Fraction(0)
    for i, a in enumerate(alpha):
        if a:
            total += a * d[i] * sum(rs.cartan[i][j] * b for j, b in enumerate(beta) if b)
    return total


def coroot(rs, alpha):
    """alpha^vee in simple-coroot coordinates."""
    d = rs.symmetrizer
    scale = 2 / inner_product(rs, alpha, alpha)
    return tuple(scale * n * d[i] for i, n in enumerate(alpha))


def simple_reflection(rs, i, h):
    """Action of s_i on a Cartan element, in the element's own basis."""
    coeffs = list(h.coeffs)
    if h.basis is Basis.COWEIGHT:
        m_i = coeffs[i]
        coeffs = [m - m_i * rs.cartan[i][j] for j, m in enumerate(coeffs)]
    else:
        simple = tuple(int(k == i) for k in range(rs.rank))
        coeffs[i] -= pairing(rs, simple, h)
    return CartanElement(h.basis, tuple(coeffs))


def default_tiebreak(rank):
    return tuple(Fraction(1, 2 ** k) for k in range(rank))


@dataclass(frozen=True)
class PositiveSystem:
    positive_roots: tuple
    base: tuple
    tiebreak: tuple


def positive_system(rs, mu, kappa, tiebreak=None):
    """Positive roots ordered by (i alpha(mu), -i alpha(kappa), <alpha, tiebreak>).

    The base is the set of indecomposable positive roots, listed in
    decreasing lexicographic order of their coordinates, so that a dominant
    generic mass returns the defining simple roots in their usual order.
    """
    if mu.basis is not Basis.COWEIGHT or kappa.basis is not Basis.COROOT:
        raise ValueError("mass must be in the coweight basis and charge in the coroot basis")
    if tiebreak is None:
        tiebreak = default_tiebreak(rs.rank)
    tiebreak = tuple(Fraction(t) for t in tiebreak)
    if len(tiebreak) != rs.rank:
        raise ValueError(f"tiebreak needs {rs.rank} entries, got {len(tiebreak)}")

    positive = []
    for alpha in rs.roots:
        key = (
            pairing(rs, alpha, mu),
            -pairing(rs, alpha, kappa),
            sum((n * t for n, t in zip(alpha, tiebreak)), Fraction(0)),
        )
        if key == (0, 0, 0):
            raise NonGenericTiebreakError(
                f"tiebreak {tiebreak} does not separate root {alpha}; supply another one")
        if key > (0, 0, 0):
            positive.append(alpha)

    positive_set = set(positive)
    base = []
    for alpha in positive:
        decomposable = any(
            tuple(a - b for a, b in zip(alpha, beta)) in positive_set
            for beta in positive if beta != alpha
        )
        if not decomposable:
            base.append(alpha)
    base.sort(reverse=True)
    if len(base) != rs.rank:
        raise ArithmeticError(f"extracted {len(base)} simple roots for rank {rs.rank}")
    logger.debug("positive system: base %s (tiebreak %s)", base, tiebreak)
    return PositiveSystem(tuple(sorted(positive)), tuple(base), tiebreak)


def expand_in_base(rs, ps, alpha):
    """Coefficients of ``alpha`` in the adapted base (exact)."""
    return express_in_columns(ps.base, alpha)
