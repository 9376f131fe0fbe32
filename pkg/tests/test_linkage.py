import pytest

from jaclink.ideals import Ideal, colon, degree_of, ideal_equal, ideal_sum, krull_dim
from jaclink.linkage import (
    JacobianWarning,
    PreconditionError,
    ReportOptions,
    check_self_duality,
    degree_additivity_check,
    extract_regular_sequence,
    full_report,
    gherardelli_injectivity_check,
    jacobian_generators,
    jacobian_ideal,
    linked_ideal,
    local_cohomology_h0,
    main_sequence_table,
    run_pipeline,
    self_duality_check,
    socle_degree,
    verify_linkage_involution,
    verify_main_sequence,
)
from jaclink.oracle import colon_dim, degreewise_saturation_dim, macaulay_dim
from jaclink.polyring import RingContext
from jaclink.report import ERROR, FAIL, PASS, SKIPPED
from jaclink.ideals import GradedDims, ideal_dim


def P(ring, *texts):
    return [ring.parse(t) for t in texts]


class TestJacobian:
    def test_examples(self, R3):
        assert jacobian_ideal(R3.parse("x^3 + y^3 + z^3")) == Ideal(R3, P(R3, "x^2", "y^2", "z^2"))
        assert [str(g) for g in jacobian_generators(R3.parse("x*y*z"))] == ["y*z", "x*z", "x*y"]
        assert [str(g) for g in jacobian_generators(R3.parse("x^3 - y^2*z"))] == \
            ["3*x^2", "-2*y*z", "-y^2"]

    def test_warnings(self, R3):
        with pytest.warns(JacobianWarning, match="does not depend on z"):
            jacobian_generators(R3.parse("x^3 + y^3"))
        r = RingContext(("x", "y", "z"), 3)
        with pytest.warns(JacobianWarning, match="divides the degree"):
            jacobian_generators(r.parse("x^3 + y^3 + z^3 + x*y*z"))

    def test_degree_too_low(self, R3):
        with pytest.raises(PreconditionError):
            jacobian_generators(R3.parse("x + y"))


class TestSocleDegree:
    def test_examples(self):
        assert socle_degree([2, 2, 2], 2) == 3
        assert socle_degree([3, 3, 3, 3], 3) == 8
        assert socle_degree([1, 1, 1], 2) == 0

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            socle_degree([2, 2], 2)


class TestRegularSequence:
    def test_triangle_needs_recombination(self, R3):
        gens = P(R3, "y*z", "x*z", "x*y")
        # the raw pair (xz, xy) shares the line x = 0
        assert krull_dim(Ideal(R3, gens[1:])) == 2
        q = extract_regular_sequence(gens, distinguished=0, seed=0)
        assert q.attempts >= 1
        assert krull_dim(q.cci_J) == 1
        assert ideal_equal(ideal_sum(Ideal(R3, [q.f0]), q.cci_J), Ideal(R3, gens))
        assert [g.degree for g in q.ci_gens] == [2, 2]

    def test_fermat_unmodified(self, R3):
        gens = jacobian_generators(R3.parse("x^3 + y^3 + z^3"))
        q = extract_regular_sequence(gens, distinguished=0)
        assert q.attempts == 0
        assert [str(g) for g in q.ci_gens] == ["3*y^2", "3*z^2"]
        assert (q.tau, q.sigma) == (1, 3)

    def test_seed_determinism(self, R3):
        gens = P(R3, "y*z", "x*z", "x*y")
        a = extract_regular_sequence(gens, 0, seed=7)
        b = extract_regular_sequence(gens, 0, seed=7)
        assert a.ci_gens == b.ci_gens and a.attempts == b.attempts

    def test_dimension_precondition(self, R3):
        with pytest.raises(PreconditionError, match="not isolated"):
            extract_regular_sequence(P(R3, "x^2", "x*y", "x*z"))

    def test_arity(self, R3):
        with pytest.raises(PreconditionError):
            extract_regular_sequence(P(R3, "x", "y"))

    def test_mixed_degrees_keep_order(self, R3):
        gens = P(R3, "x^2", "x*y + y^2", "y^3 + x*z^2")
        q = extract_regular_sequence(gens)
        assert q.degrees == (2, 2, 3)
        assert q.sigma == 4

    def test_over_q(self, R3q):
        gens = P(R3q, "y*z", "x*z", "x*y")
        q = extract_regular_sequence(gens, 0, seed=3)
        assert krull_dim(q.cci_J) == 1


class TestH0:
    def test_fermat_cubic(self, R3):
        q = extract_regular_sequence(jacobian_generators(R3.parse("x^3 + y^3 + z^3")))
        h = local_cohomology_h0(q)
        assert h.values(0, 5) == [1, 3, 3, 1, 0, 0]

    def test_triangle_is_zero(self, R3):
        gens = P(R3, "y*z", "x*z", "x*y")
        q = extract_regular_sequence(gens)
        assert local_cohomology_h0(q).support() == []
        # oracle: the Jacobian ideal is already saturated
        for k in range(6):
            assert degreewise_saturation_dim(gens, k, 5) == macaulay_dim(gens, k)

    def test_linear_forms(self, R3):
        q = extract_regular_sequence(P(R3, "x", "y", "z"))
        h = local_cohomology_h0(q)
        assert h.as_pairs()[0] == [0, 1] and h.support() == [0]
        assert q.sigma == 0 and check_self_duality(h, 0)


class TestSelfDuality:
    def test_examples(self):
        assert check_self_duality({0: 1, 1: 3, 2: 3, 3: 1}, 3)
        assert check_self_duality({0: 1}, 0)
        res = check_self_duality({0: 1, 1: 2}, 1)
        assert not res and res.witness == 0 and (res.lhs, res.rhs) == (1, 2)

    def test_outside_support(self):
        res = check_self_duality(GradedDims({2: 1}, 5, 0), 3)
        assert not res and res.witness == 1


class TestLinkedIdeal:
    def test_point_linked_to_itself(self, R3):
        gens = P(R3, "x*z", "x^2", "y")
        q = extract_regular_sequence(gens, distinguished=0)
        assert q.cci_J == Ideal(R3, P(R3, "x^2", "y"))
        link = linked_ideal(q)
        assert link.i_sat == Ideal(R3, P(R3, "x", "y"))
        assert link.k_prime == Ideal(R3, P(R3, "x", "y"))
        J = [R3.parse("y"), R3.parse("x^2")]
        for k in range(5):
            assert ideal_dim(link.k_prime, k) == colon_dim(J, P(R3, "x", "y"), k)
        assert verify_linkage_involution(link).ok

    def test_smooth_degenerate(self, R3):
        q = extract_regular_sequence(jacobian_generators(R3.parse("x^3 + y^3 + z^3")))
        link = linked_ideal(q)
        assert link.i_sat.is_unit()
        assert link.k_prime == q.cci_J
        assert colon(q.cci_J, link.k_prime).is_unit()
        assert degree_additivity_check(link).status == SKIPPED

    def test_triangle_degrees(self, R3):
        q = extract_regular_sequence(P(R3, "y*z", "x*z", "x*y"), 0)
        link = linked_ideal(q)
        assert degree_of(link.J) == 4
        assert degree_of(link.i_sat) == 3
        assert degree_of(link.k_prime) == 1
        check = degree_additivity_check(link)
        assert check.ok and check.data == {"gamma": 4, "delta": 3, "theta": 1}


class TestMainSequence:
    def test_fermat(self, R3):
        link = run_pipeline(R3.parse("x^3 + y^3 + z^3"))
        assert verify_main_sequence(link).ok
        # below d0 the identity is dim I_j = dim J_j
        for j, lhs, rhs in main_sequence_table(link):
            if j < 2:
                assert lhs == rhs == 0

    def test_triangle(self, R3):
        link = run_pipeline(R3.parse("x*y*z"))
        assert verify_main_sequence(link).ok

    def test_detects_wrong_k(self, R3):
        link = run_pipeline(R3.parse("x*y*z"))
        link.k_prime = link.J
        res = verify_main_sequence(link)
        assert res.status == FAIL
        w = res.witnesses[0]
        assert w["lhs"] != w["rhs"]


class TestInjectivity:
    def test_smooth(self, R3):
        assert gherardelli_injectivity_check(run_pipeline(R3.parse("x^3 + y^3 + z^3"))).ok

    def test_triangle(self, R3):
        assert gherardelli_injectivity_check(run_pipeline(R3.parse("x*y*z"))).ok

    def test_negative_control(self, R3):
        link = run_pipeline(R3.parse("x*y*z"))
        res = gherardelli_injectivity_check(link, k_prime=link.J)
        assert res.status == FAIL
        w = res.witnesses[0]
        assert w["lhs"] > w["rhs"] and "element" in w


class TestFullReport:
    def test_triangle(self, R3):
        rep = full_report(R3.parse("x*y*z"))
        assert rep.passed and rep.h0 == []

    def test_fermat(self, R3):
        rep = full_report(R3.parse("x^3 + y^3 + z^3"))
        assert rep.passed
        assert rep.h0 == [[0, 1], [1, 3], [2, 3], [3, 1]]
        assert rep.sigma == 3

    def test_generators_path(self, R3):
        rep = full_report(P(R3, "x", "y", "z"))
        assert rep.passed and rep.h0 == [[0, 1]] and rep.sigma == 0

    def test_error_marks_stage(self, R3):
        rep = full_report(P(R3, "x^2", "x*y", "x*z"))
        assert rep.check("dim_proj").status == ERROR
        assert rep.check("regular_sequence").status == SKIPPED
        assert rep.has_errors

    def test_seed_determinism(self, R3):
        a = full_report(R3.parse("x*y*z"), ReportOptions(seed=11))
        b = full_report(R3.parse("x*y*z"), ReportOptions(seed=11))
        assert a.to_json() == b.to_json()

    def test_oracle_stage(self, R3):
        rep = full_report(R3.parse("x^3 - y^2*z"), ReportOptions(oracle=True))
        assert rep.check("oracle_agreement").status == PASS
        assert rep.passed

    def test_failed_checks_carry_witnesses(self, R3):
        link = run_pipeline(R3.parse("x^3 - y^2*z"))
        link.h0 = GradedDims({0: 1}, link.bound, 0)
        res = self_duality_check(link)
        assert res.status == FAIL
        assert res.witnesses[0]["degree"] == 0
