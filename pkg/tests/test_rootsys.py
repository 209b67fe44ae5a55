from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from modules.exact import is_integral
from modules.rootsys import (
    Basis,
    CartanElement,
    InvalidGroupError,
    NonGenericTiebreakError,
    SimpleType,
    build_root_system,
    cartan_element,
    coroot,
    expand_in_base,
    inner_product,
    lie_algebra_dimension,
    pairing,
    parse_group,
    positive_system,
    simple_reflection,
)
from tests.helpers import MASS_VALUES, ROOT_COUNTS, SIMPLE_TYPES, reflection_closure

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


def coweight(*coeffs):
    return CartanElement(Basis.COWEIGHT, coeffs)


def coroot_element(*coeffs):
    return CartanElement(Basis.COROOT, coeffs)


class TestParsing:
    def test_group_string_is_case_insensitive(self):
        assert parse_group("a2, g2") == (SimpleType("A", 2), SimpleType("G", 2))

    @pytest.mark.parametrize("spec", ["D3", "B1", "C2", "E5", "F3", "G3", "A0", "H2"])
    def test_non_canonical_types_are_rejected(self, spec):
        with pytest.raises(InvalidGroupError):
            parse_group(spec)

    def test_error_carries_token_position(self):
        with pytest.raises(InvalidGroupError) as info:
            parse_group("A2,B1")
        assert info.value.position == 3

    def test_garbage_token(self):
        with pytest.raises(InvalidGroupError) as info:
            parse_group("A2, x")
        assert info.value.position == 4


class TestBuild:
    def test_a1(self):
        rs = build_root_system([SimpleType("A", 1)])
        assert rs.roots == ((-1,), (1,))
        assert rs.cartan == ((2,),)

    def test_a2(self):
        rs = build_root_system("A2")
        assert rs.cartan == ((2, -1), (-1, 2))
        assert set(rs.roots) == {(1, 0), (0, 1), (1, 1), (-1, 0), (0, -1), (-1, -1)}

    @pytest.mark.parametrize("spec, cartan", [
        ("B2", ((2, -1), (-2, 2))),
        ("C3", ((2, -1, 0), (-1, 2, -2), (0, -1, 2))),
        ("G2", ((2, -3), (-1, 2))),
    ])
    def test_non_simply_laced_conventions(self, spec, cartan):
        assert build_root_system(spec).cartan == cartan

    def test_e8_has_240_roots(self):
        assert len(build_root_system("E8").roots) == 240

    def test_roots_are_sorted(self):
        rs = build_root_system("B3")
        assert list(rs.roots) == sorted(rs.roots)

    @pytest.mark.parametrize("simple_type", SIMPLE_TYPES, ids=str)
    def test_matches_reflection_closure_and_table(self, simple_type):
        rs = build_root_system([simple_type])
        assert set(rs.roots) == reflection_closure(rs.cartan)
        assert len(rs.roots) == ROOT_COUNTS[simple_type.series](simple_type.rank)

    @pytest.mark.parametrize("simple_type", SIMPLE_TYPES, ids=str)
    def test_cartan_and_root_invariants(self, simple_type):
        rs = build_root_system([simple_type])
        n = rs.rank
        for i in range(n):
            assert rs.cartan[i][i] == 2
            for j in range(n):
                if i != j:
                    assert rs.cartan[i][j] <= 0
                    assert (rs.cartan[i][j] == 0) == (rs.cartan[j][i] == 0)
        for root in rs.roots:
            assert any(root)
            assert all(x >= 0 for x in root) or all(x <= 0 for x in root)
            assert tuple(-x for x in root) in rs

    def test_product_is_block_diagonal(self):
        rs = build_root_system("A1,G2")
        assert rs.cartan == ((2, 0, 0), (0, 2, -3), (0, -1, 2))
        assert len(rs.roots) == 2 + 12
        for root in rs.roots:
            assert not (root[0] and any(root[1:]))

    def test_lie_algebra_dimension(self):
        assert lie_algebra_dimension(build_root_system("A2")) == 8
        assert lie_algebra_dimension(build_root_system("E8")) == 248


class TestPairing:
    def test_coroot_self_pairing(self):
        rs = build_root_system("A1")
        assert pairing(rs, (1,), coroot_element(1)) == 2

    def test_kronecker_on_coweights(self):
        rs = build_root_system("A2")
        assert pairing(rs, (1, 1), coweight(0, 1)) == 1

    def test_matrix_pairing_on_coroots(self):
        rs = build_root_system("A2")
        assert pairing(rs, (1, 1), coroot_element(2, 1)) == 3

    @settings(max_examples=60, deadline=None)
    @given(st.sampled_from(["A3", "B3", "G2", "F4"]), st.data())
    def test_bilinear_and_odd(self, spec, data):
        rs = build_root_system(spec)
        vector = st.lists(rationals, min_size=rs.rank, max_size=rs.rank)
        basis = data.draw(st.sampled_from(list(Basis)))
        h1 = CartanElement(basis, data.draw(vector))
        h2 = CartanElement(basis, data.draw(vector))
        alpha = data.draw(st.sampled_from(rs.roots))
        minus_alpha = tuple(-x for x in alpha)
        assert pairing(rs, alpha, h1 + h2) == pairing(rs, alpha, h1) + pairing(rs, alpha, h2)
        assert pairing(rs, minus_alpha, h1) == -pairing(rs, alpha, h1)

    @pytest.mark.parametrize("spec", ["B3", "C4", "F4", "G2"])
    def test_coroots_are_integral_and_pair_to_two(self, spec):
        rs = build_root_system(spec)
        for alpha in rs.roots:
            alpha_vee = coroot(rs, alpha)
            assert is_integral(alpha_vee)
            assert pairing(rs, alpha, CartanElement(Basis.COROOT, alpha_vee)) == 2


class TestPositiveSystem:
    def test_a1(self):
        rs = build_root_system("A1")
        ps = positive_system(rs, coweight(1), coroot_element(1))
        assert ps.positive_roots == ((1,),)
        assert ps.base == ((1,),)

    def test_dominant_generic_mass_recovers_simple_roots(self):
        rs = build_root_system("E6")
        ps = positive_system(rs, coweight(*[1] * 6), coroot_element(*[-2, 0, 1, 3, 0, 1]))
        assert ps.base == tuple(tuple(int(k == i) for k in range(6)) for i in range(6))

    def test_charge_breaks_ties_left_by_the_mass(self):
        rs = build_root_system("A2")
        ps = positive_system(rs, coweight(0, 3), coroot_element(0, 2))
        # alpha_1 has alpha(mu) = 0 and i alpha_1(kappa) = -2 < 0
        assert (1, 0) in ps.positive_roots
        assert ps.base == ((1, 0), (0, 1))

    def test_non_generic_tiebreak_is_rejected(self):
        rs = build_root_system("A2")
        with pytest.raises(NonGenericTiebreakError):
            positive_system(rs, coweight(0, 0), coroot_element(0, 0), tiebreak=(1, -1))

    def test_zero_mass_and_charge_fall_back_on_tiebreak(self):
        rs = build_root_system("B3")
        ps = positive_system(rs, coweight(0, 0, 0), coroot_element(0, 0, 0))
        assert all(all(x >= 0 for x in alpha) for alpha in ps.positive_roots)

    def test_random_positive_systems_satisfy_invariants(self, rng):
        for _ in range(200):
            simple_type = rng.choice(SIMPLE_TYPES)
            rs = build_root_system([simple_type])
            mu = coweight(*[rng.choice(MASS_VALUES) for _ in range(rs.rank)])
            kappa = coroot_element(*[rng.randint(-3, 3) for _ in range(rs.rank)])
            ps = positive_system(rs, mu, kappa)
            positive = set(ps.positive_roots)

            assert 2 * len(positive) == len(rs.roots)
            for alpha in rs.roots:
                assert (alpha in positive) != (tuple(-x for x in alpha) in positive)
            for alpha in positive:
                for beta in positive:
                    total = tuple(a + b for a, b in zip(alpha, beta))
                    if total in rs:
                        assert total in positive

            assert len(ps.base) == rs.rank
            for alpha in ps.positive_roots:
                coefficients = expand_in_base(rs, ps, alpha)
                assert all(c >= 0 and c.denominator == 1 for c in coefficients)


class TestReflections:
    def test_reflection_is_an_involution(self):
        rs = build_root_system("G2")
        mu = coweight(Fraction(1, 2), -3)
        kappa = coroot_element(2, -1)
        for i in range(rs.rank):
            assert simple_reflection(rs, i, simple_reflection(rs, i, mu)) == mu
            assert simple_reflection(rs, i, simple_reflection(rs, i, kappa)) == kappa

    def test_reflection_permutes_pairings(self):
        rs = build_root_system("B3")
        mu = coweight(1, Fraction(-1, 3), 2)
        kappa = coroot_element(1, 0, -2)
        for i in range(rs.rank):
            for h in (mu, kappa):
                before = sorted(pairing(rs, alpha, h) for alpha in rs.roots)
                after = sorted(pairing(rs, alpha, simple_reflection(rs, i, h)) for alpha in rs.roots)
                assert before == after


class TestElements:
    def test_cartan_element_checks_rank(self):
        h = cartan_element("coweight", ["1/2", 3], rank=2)
        assert h.coeffs == (Fraction(1, 2), 3)
        with pytest.raises(ValueError):
            cartan_element("coroot", [1, 2, 3], rank=2)
        with pytest.raises(ValueError):
            cartan_element("weight", [1])

    def test_bases_do_not_mix(self):
        with pytest.raises(ValueError):
            coweight(1) + coroot_element(1)

    def test_label_and_symmetrizer(self):
        rs = build_root_system("b3, g2")
        assert rs.label == "B3,G2"
        assert rs.symmetrizer == (1, 1, Fraction(1, 2), 1, 3)

    def test_inner_product_lengths(self):
        rs = build_root_system("G2")
        assert inner_product(rs, (1, 0), (1, 0)) == 2
        assert inner_product(rs, (0, 1), (0, 1)) == 6
        assert inner_product(rs, (1, 0), (0, 1)) == -3
