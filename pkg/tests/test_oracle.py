import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jaclink.oracle import (
    DegreewiseOracle,
    Echelon,
    OracleError,
    colon_dim,
    degreewise_saturation_dim,
    in_ideal_degree,
    macaulay_dim,
    macaulay_matrix,
    quotient_dim,
)
from jaclink.polyring import RingContext

from conftest import CORPUS
from jaclink.problem import load_problem


def P(ring, *texts):
    return [ring.parse(t) for t in texts]


class TestMacaulay:
    def test_principal(self, R3):
        assert macaulay_dim(P(R3, "x"), 2) == 3
        assert quotient_dim(P(R3, "x"), 2) == 3

    def test_three_points(self, R3):
        M = macaulay_matrix(P(R3, "y*z", "x*z", "x*y"), 2)
        assert len(M.rows) == 3 and len(M.columns) == 6
        assert M.rank() == 3

    def test_one_s_pair(self, R2):
        gens = P(R2, "x^2 + y^2", "x*y")
        assert macaulay_dim(gens, 3) == 4
        assert quotient_dim(gens, 3) == 0

    def test_dense(self, R2):
        M = macaulay_matrix(P(R2, "x - y"), 1)
        assert M.dense() == [[1, R2.field(-1)]]

    def test_negative_degree(self, R3):
        assert macaulay_dim(P(R3, "x"), -1) == 0

    def test_no_generators(self):
        with pytest.raises(OracleError):
            macaulay_matrix([], 2)

    def test_membership(self, R2):
        gens = P(R2, "x^2 + y^2", "x*y")
        assert in_ideal_degree(R2.parse("x^2*y + y^3"), gens)
        assert not in_ideal_degree(R2.parse("x^2"), gens)


class TestSaturation:
    def test_examples(self, R2, R3):
        assert degreewise_saturation_dim(P(R2, "x^2", "x*y"), 1, 4) == 1
        three = P(R3, "x*y", "x*z", "y*z")
        for k in range(6):
            assert degreewise_saturation_dim(three, k, 5) == macaulay_dim(three, k)
        assert degreewise_saturation_dim(P(R3, "x", "y", "z"), 0, 3) == 1

    def test_plateau(self, R3):
        # x^2 * x^N lies in (x^3, y^3, z^3) for N = 1, but y^2 * x only for N = 3
        gens = P(R3, "x^3", "y^3", "z^3")
        assert degreewise_saturation_dim(gens, 0, 2) == 1
        assert degreewise_saturation_dim(gens, 2, 2) == 6

    def test_beyond_bound(self, R3):
        with pytest.raises(OracleError):
            degreewise_saturation_dim(P(R3, "x"), 5, 3)

    def test_shared_cache(self, R2):
        oracle = DegreewiseOracle(P(R2, "x^2", "x*y"))
        a = degreewise_saturation_dim(None, 1, 4, oracle=oracle)
        assert a == 1
        assert oracle.colon_power_dim(1, 0) == 0


class TestColonDim:
    def test_example(self, R3):
        I, J = P(R3, "x^2", "y"), P(R3, "x", "y")
        assert [colon_dim(I, J, k) for k in range(4)] == [0, 2, 5, 9]

    def test_zero_divisor(self, R3):
        with pytest.raises(OracleError):
            colon_dim(P(R3, "x"), [R3.parse("x") - R3.parse("x")], 1)


def test_echelon_rank_and_reduce():
    fld = RingContext(("x", "y"), 7).field
    e = Echelon(fld)
    assert e.insert({0: 1, 1: 2})
    assert e.insert({0: 2, 2: 1})
    assert not e.insert({0: 3, 1: 6})
    assert e.rank == 2
    assert e.reduce({0: 1, 1: 2}) == {}


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.stem)
def test_rank_same_over_q_and_fp(path):
    """Corpus ranks agree over QQ and F_32003 (no bad primes in the corpus)."""
    fp = load_problem(path)
    q = load_problem(path, {"char": 0})
    gp, gq = fp.generators(), q.generators()
    top = max(g.degree for g in gp if g) + 3
    assert [macaulay_dim(gp, k) for k in range(top)] == [macaulay_dim(gq, k) for k in range(top)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)),
                min_size=1, max_size=4))
def test_monomial_ideal_counts(exps):
    """For a monomial ideal dim (S/I)_k counts monomials avoided by the generators."""
    ring = RingContext(("x", "y", "z"))
    gens = [ring.monomial(e) for e in exps]
    from jaclink.polyring import monomial_divides, monomials_of_degree
    for k in range(7):
        expect = sum(1 for m in monomials_of_degree(3, k)
                     if not any(monomial_divides(e, m) for e in exps))
        assert quotient_dim(gens, k) == expect
