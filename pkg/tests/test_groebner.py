import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jaclink.groebner import (
    GroebnerError,
    is_groebner_basis,
    is_reduced,
    normal_form,
    reduced_groebner_basis,
    s_polynomial,
)
from jaclink.oracle import in_ideal_degree, quotient_dim
from jaclink.polyring import RingContext, RingMismatchError, random_form

from strategies import random_ideal, standard_monomial_count


def gb(ring, *texts):
    return reduced_groebner_basis([ring.parse(t) for t in texts], ring)


class TestNormalForm:
    def test_divisible(self, R2):
        assert normal_form(R2.parse("x^2"), gb(R2, "x")).is_zero()

    def test_irreducible(self, R2):
        f = R2.parse("y^3")
        assert normal_form(f, gb(R2, "x^2", "x*y")) == f

    def test_member_matches_oracle(self, R2):
        gens = [R2.parse("x^2 + y^2"), R2.parse("x*y")]
        f = R2.parse("x^2*y + y^3")
        # frozen from the Macaulay-matrix membership oracle
        assert in_ideal_degree(f, gens) is True
        assert normal_form(f, reduced_groebner_basis(gens)).is_zero()

    def test_ring_mismatch(self, R2, R3):
        with pytest.raises(RingMismatchError):
            normal_form(R3.parse("x"), gb(R2, "x"))


class TestReducedBasis:
    def test_monomial_ideal(self, R2):
        assert [str(g) for g in gb(R2, "x^2", "x*y")] == ["x*y", "x^2"]

    def test_one_s_pair(self, R2):
        G = gb(R2, "x^2 + y^2", "x*y")
        assert {str(g) for g in G} == {"x^2 + y^2", "x*y", "y^3"}
        # oracle: the quotient dies in degree 3, matching the standard monomials
        gens = [R2.parse("x^2 + y^2"), R2.parse("x*y")]
        assert [quotient_dim(gens, k) for k in range(5)] == [1, 2, 1, 0, 0]
        assert [standard_monomial_count(G, k) for k in range(5)] == [1, 2, 1, 0, 0]

    def test_principal(self, R3):
        assert [str(g) for g in gb(R3, "x")] == ["x"]

    def test_monic_and_sorted(self, R3):
        G = gb(R3, "3*x^2 + y*z", "5*y^2")
        assert is_reduced(G)
        lms = G.leading_monomials()
        key = R3.key
        assert sorted(lms, key=key, reverse=True) == lms

    def test_unit(self, R3):
        G = reduced_groebner_basis([R3.parse("x"), R3.one()], R3)
        assert G.is_unit()

    def test_all_zero(self, R3):
        with pytest.raises(GroebnerError):
            reduced_groebner_basis([R3.parse("x") - R3.parse("x")], R3)

    def test_over_q(self, R3q):
        G = gb(R3q, "2*x^2 + 3*y^2", "x*y - 1/2*z^2")
        assert is_groebner_basis(G) and is_reduced(G)

    def test_s_polynomial(self, R2):
        s = s_polynomial(R2.parse("x^2 + y^2"), R2.parse("x*y"))
        assert s == R2.parse("y^3")


SEEDS = range(25)


@pytest.mark.parametrize("seed", SEEDS)
def test_buchberger_criterion(seed):
    ring, gens = random_ideal(seed)
    G = reduced_groebner_basis(gens, ring)
    assert is_groebner_basis(G)
    assert is_reduced(G)


@pytest.mark.parametrize("seed", SEEDS)
def test_permutation_invariance(seed):
    ring, gens = random_ideal(seed)
    G = reduced_groebner_basis(gens, ring)
    shuffled = list(gens)
    random.Random(seed + 1000).shuffle(shuffled)
    scaled = [g.scale(i + 2) for i, g in enumerate(reversed(gens))]
    assert reduced_groebner_basis(shuffled, ring).basis == G.basis
    assert reduced_groebner_basis(scaled, ring).basis == G.basis


@pytest.mark.parametrize("seed", SEEDS)
def test_criteria_do_not_change_basis(seed):
    ring, gens = random_ideal(seed)
    a = reduced_groebner_basis(gens, ring, criteria=True)
    b = reduced_groebner_basis(gens, ring, criteria=False)
    assert a.basis == b.basis


@pytest.mark.parametrize("seed", SEEDS)
def test_standard_monomials_match_oracle(seed):
    ring, gens = random_ideal(seed)
    G = reduced_groebner_basis(gens, ring)
    top = max(g.degree for g in gens) + ring.num_vars + 2
    for k in range(top + 1):
        assert standard_monomial_count(G, k) == quotient_dim(gens, k), k


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_membership_soundness(seed):
    ring, gens = random_ideal(seed)
    rng = random.Random(seed)
    G = reduced_groebner_basis(gens, ring)
    d = max(g.degree for g in gens) + rng.randint(0, 2)
    f = None
    for g in gens:
        term = random_form(ring, d - g.degree, rng) * g
        f = term if f is None else f + term
    assert normal_form(f, G).is_zero()
    assert in_ideal_degree(f, gens)


def test_grlex_basis(R3):
    ring = R3.with_order("grlex")
    G = reduced_groebner_basis([ring.parse("x*z - y^2"), ring.parse("x*y - z^2")], ring)
    assert is_groebner_basis(G) and is_reduced(G)
    gens = [ring.parse("x*z - y^2"), ring.parse("x*y - z^2")]
    for k in range(7):
        assert standard_monomial_count(G, k) == quotient_dim(gens, k)


def test_characteristic_independence_of_small_example():
    for p in (0, 7, 32003):
        ring = RingContext(("x", "y"), p)
        G = gb(ring, "x^2 + y^2", "x*y")
        assert len(G) == 3
