"""Shared builders for the test suite."""
from fractions import Fraction

from modules.masscharge import make_pair
from modules.rootsys import Basis, CartanElement, SimpleType, build_root_system

SIMPLE_TYPES = (
    [SimpleType("A", n) for n in range(1, 9)]
    + [SimpleType("B", n) for n in range(2, 9)]
    + [SimpleType("C", n) for n in range(3, 9)]
    + [SimpleType("D", n) for n in range(4, 9)]
    + [SimpleType("E", n) for n in (6, 7, 8)]
    + [SimpleType("F", 4), SimpleType("G", 2)]
)

# classical root counts, written out independently of the library's own table
ROOT_COUNTS = {
    "A": lambda n: n * (n + 1),
    "B": lambda n: 2 * n ** 2,
    "C": lambda n: 2 * n ** 2,
    "D": lambda n: 2 * n * (n - 1),
    "E": {6: 72, 7: 126, 8: 240}.get,
    "F": lambda n: 48,
    "G": lambda n: 12,
}

# mass coordinates lean towards 0 so that non-maximal breaking is common
MASS_VALUES = [Fraction(0)] * 4 + [Fraction(v) for v in (1, -1, 2, -3)] + [Fraction(1, 2), Fraction(-2, 3)]


def su3_pair(charge):
    """su(3) with mass diag(-i,-i,2i) up to the Weyl group: i alpha_1(mu)=0, i alpha_2(mu)=3."""
    rs = build_root_system("A2")
    return make_pair(rs, CartanElement(Basis.COWEIGHT, (0, 3)), CartanElement(Basis.COROOT, charge))


def random_group(rng):
    if rng.random() < 0.7:
        return (rng.choice(SIMPLE_TYPES),)
    small = [t for t in SIMPLE_TYPES if t.rank <= 4]
    return tuple(rng.choice(small) for _ in range(rng.choice((2, 3))))


def random_pair(rng, components=None):
    rs = build_root_system(components or random_group(rng))
    mu = CartanElement(Basis.COWEIGHT, [rng.choice(MASS_VALUES) for _ in range(rs.rank)])
    kappa = CartanElement(Basis.COROOT, [rng.randint(-3, 3) for _ in range(rs.rank)])
    return make_pair(rs, mu, kappa)


def reflection_closure(cartan):
    """All roots as the orbit of the simple roots under simple reflections."""
    n = len(cartan)
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        beta = frontier.pop()
        for i in range(n):
            c = sum(beta[j] * cartan[i][j] for j in range(n))
            image = list(beta)
            image[i] -= c
            image = tuple(image)
            if image not in roots:
                roots.add(image)
                frontier.append(image)
    return roots
