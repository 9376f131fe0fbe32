"""Jacobian ideals, linkage through a complete intersection, and the checks.

Notation follows the usual liaison setup: I = (f_0, f_1, ..., f_n) with
dim Proj S/I <= 0, J = (f_1, ..., f_n) a complete intersection after a
triangular recombination, I^s the saturation of I and K' = (J : I^s).
The dualizing module of T = S/J is never built; it enters only through
the shift tau = sum_{i>=1} d_i - n - 1.
"""

from __future__ import annotations

import random
import time
import warnings
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .ideals import (
    GradedDims,
    Ideal,
    colon,
    default_bound,
    degree_of,
    hilbert_series,
    ideal_dim,
    ideal_equal,
    ideal_sum,
    krull_dim,
    saturate,
)
from .polyring import (
    Polynomial,
    RingContext,
    monomials_of_degree,
    partial_derivative,
)
from .report import ERROR, FAIL, PASS, SKIPPED, CheckResult, VerificationReport

MAX_ATTEMPTS = 32


class LinkageError(RuntimeError):
    pass


class PreconditionError(ValueError):
    pass


class H0SupportError(RuntimeError):
    pass


class JacobianWarning(UserWarning):
    pass


# -- Jacobian ideals ----------------------------------------------------------

def jacobian_generators(f: Polynomial) -> list:
    """All n+1 partial derivatives of f, zero ones included."""
    if f.is_zero():
        raise PreconditionError("the zero polynomial has no Jacobian ideal")
    d = f.degree
    if d < 2:
        raise PreconditionError(f"need degree >= 2, got {d}")
    p = f.ring.characteristic
    if p and d % p == 0:
        warnings.warn(f"characteristic {p} divides the degree {d}; the Euler relation "
                      "fails and f need not lie in its Jacobian ideal", JacobianWarning)
    partials = [partial_derivative(f, i) for i in range(f.ring.num_vars)]
    zero = [f.ring.variable_names[i] for i, g in enumerate(partials) if g.is_zero()]
    if zero:
        warnings.warn(f"f does not depend on {', '.join(zero)} (cone-like input)",
                      JacobianWarning)
    return partials


def jacobian_ideal(f: Polynomial) -> Ideal:
    """(df/dx_0, ..., df/dx_n)."""
    return Ideal(f.ring, jacobian_generators(f))


def socle_degree(degrees: Sequence[int], n: int) -> int:
    """sum d_i - n - 1 for n+1 generator degrees."""
    if len(degrees) != n + 1:
        raise ValueError(f"expected {n + 1} degrees, got {len(degrees)}")
    if any(d < 1 for d in degrees):
        raise ValueError("generator degrees must be positive")
    return sum(degrees) - n - 1


# -- regular sequence extraction --------------------------------------------

@dataclass(frozen=True)
class QuasiCI:
    """I = (f_0, J) with J generated by a certified regular sequence."""

    ideal_I: Ideal
    f0: Polynomial
    ci_gens: tuple  # f_1', ..., f_n'
    degrees: tuple  # (d_0, d_1, ..., d_n) aligned with (f0,) + ci_gens
    distinguished: int  # index of f_0 in the original generator list
    cci_J: Ideal
    attempts: int  # 0 when the original generators were already regular
    seed: int

    @property
    def ring(self) -> RingContext:
        return self.ideal_I.ring

    @property
    def n(self) -> int:
        return self.ring.num_vars - 1

    @property
    def tau(self) -> int:
        return sum(self.degrees[1:]) - self.n - 1

    @property
    def sigma(self) -> int:
        return self.tau + self.degrees[0]


def _as_generator_list(I, degrees):
    if isinstance(I, Ideal):
        gens = list(I.generators)
        ring = I.ring
    else:
        gens = list(I)
        if not gens:
            raise PreconditionError("no generators")
        ring = gens[0].ring
    if degrees is None:
        if any(g.is_zero() for g in gens):
            raise PreconditionError("degrees must be given for zero generators")
        degrees = [g.degree for g in gens]
    degrees = list(degrees)
    if len(gens) != ring.num_vars:
        raise PreconditionError(
            f"need n+1 = {ring.num_vars} generators, got {len(gens)}")
    for g, d in zip(gens, degrees):
        if not g.is_zero() and g.degree != d:
            raise PreconditionError(f"generator {g} does not have degree {d}")
    return ring, gens, degrees


def default_distinguished(gens: Sequence[Polynomial], degrees: Sequence[int]) -> int:
    """An index of minimal degree, preferring a zero generator."""
    lowest = min(degrees)
    candidates = [i for i, d in enumerate(degrees) if d == lowest]
    for i in candidates:
        if gens[i].is_zero():
            return i
    return candidates[0]


def _random_coefficient(rng: random.Random, ring: RingContext):
    p = ring.characteristic
    if p:
        return rng.randrange(p)
    return rng.randint(-9, 9)


def _is_complete_intersection(gens: Sequence[Polynomial], ring: RingContext) -> bool:
    nonzero = [g for g in gens if not g.is_zero()]
    if len(nonzero) != ring.num_vars - 1:
        return False
    J = Ideal(ring, nonzero)
    if J.is_unit():
        return False
    return krull_dim(J) == 1


def extract_regular_sequence(I, distinguished: int | None = None, seed: int = 0,
                             degrees: Sequence[int] | None = None,
                             max_attempts: int = MAX_ATTEMPTS) -> QuasiCI:
    """Split I into f_0 and a complete intersection J of the remaining degrees.

    The remaining generators, ordered by degree, are first tried as they
    are.  Otherwise each f_i is replaced by f_i + sum c * m * f_j over the
    earlier generators f_j (f_0 included) with random field coefficients c;
    the change is unitriangular, so (f_0, J) = I.  Each attempt is
    certified by dim S/J = 1.
    """
    ring, gens, degrees = _as_generator_list(I, degrees)
    full = Ideal(ring, gens)
    if full.is_unit():
        raise PreconditionError("the ideal is the unit ideal")
    if krull_dim(full) > 1:
        raise PreconditionError(
            f"dim Proj S/I = {krull_dim(full) - 1} > 0; singularities are not isolated")
    if distinguished is None:
        distinguished = default_distinguished(gens, degrees)
    if not 0 <= distinguished < len(gens):
        raise PreconditionError(f"distinguished index {distinguished} out of range")

    f0 = gens[distinguished]
    rest = sorted((i for i in range(len(gens)) if i != distinguished),
                  key=lambda i: (degrees[i], i))
    rest_degrees = tuple(degrees[i] for i in rest)

    chosen = [gens[i] for i in rest]
    attempts = 0
    if not _is_complete_intersection(chosen, ring):
        rng = random.Random(seed)
        while True:
            attempts += 1
            if attempts > max_attempts:
                raise PreconditionError(
                    f"no regular sequence found in {max_attempts} attempts (seed {seed})")
            chosen = []
            earlier = [(f0, degrees[distinguished])]
            for i in rest:
                fi, di = gens[i], degrees[i]
                new = fi
                for fj, dj in earlier:
                    if fj.is_zero() or dj > di:
                        continue
                    for m in monomials_of_degree(ring.num_vars, di - dj, ring.order):
                        c = _random_coefficient(rng, ring)
                        if c:
                            new = new + fj.mul_term(m, c)
                chosen.append(new)
                earlier.append((fi, di))
            if _is_complete_intersection(chosen, ring):
                break

    J = Ideal(ring, chosen)
    if not ideal_equal(ideal_sum(Ideal(ring, [f0]), J), full):
        raise LinkageError("recombination changed the ideal")
    return QuasiCI(full, f0, tuple(chosen), (degrees[distinguished],) + rest_degrees,
                   distinguished, J, attempts, seed)


# -- local cohomology -------------------------------------------------------

def _series_difference(num_a, num_b):
    n = max(len(num_a), len(num_b))
    a = list(num_a) + [0] * (n - len(num_a))
    b = list(num_b) + [0] * (n - len(num_b))
    return [x - y for x, y in zip(a, b)]


def _divide_by_one_minus_t(q, times):
    for _ in range(times):
        while q and q[-1] == 0:
            q.pop()
        if not q:
            return q
        if sum(q) != 0:
            return None
        r, acc = [], 0
        for a in q[:-1]:
            acc += a
            r.append(acc)
        q = r
    while q and q[-1] == 0:
        q.pop()
    return q


def h0_table(I: Ideal, i_sat: Ideal, bound: int) -> GradedDims:
    """dim (I^s / I)_k for k = 0..bound, from the two Hilbert series."""
    n = I.ring.num_vars
    diff = _series_difference(hilbert_series(I).numerator,
                              hilbert_series(i_sat).numerator)
    poly = _divide_by_one_minus_t(diff, n)
    if poly is None:
        raise H0SupportError("I^s / I is not of finite length")
    if any(c < 0 for c in poly):
        raise H0SupportError(f"negative local cohomology dimensions {poly}")
    top = len(poly) - 1
    if top > bound:
        raise H0SupportError(
            f"H^0 is nonzero in degree {top} beyond the bound {bound}; "
            f"rerun with --bound {top}")
    table = {k: (poly[k] if k < len(poly) else 0) for k in range(bound + 1)}
    return GradedDims(table, bound, eventually_constant=0)


def local_cohomology_h0(quasi: QuasiCI, bound: int | None = None,
                        i_sat: Ideal | None = None) -> GradedDims:
    """The Hilbert function of H^0 = I^s / I."""
    if bound is None:
        bound = default_bound(quasi.sigma, quasi.degrees, quasi.ring.num_vars)
    if i_sat is None:
        i_sat = saturate(quasi.ideal_I)
    return h0_table(quasi.ideal_I, i_sat, bound)


@dataclass(frozen=True)
class DualityResult:
    ok: bool
    witness: int | None = None
    lhs: int | None = None
    rhs: int | None = None

    def __bool__(self):
        return self.ok


def check_self_duality(h, sigma: int) -> DualityResult:
    """h(k) == h(sigma - k) for every k; on failure the least offending k."""
    if not isinstance(h, GradedDims):
        table = dict(h)
        h = GradedDims(table, max(table, default=0), eventually_constant=0)
    support = h.support()
    degrees = sorted(set(support) | {sigma - k for k in support})
    for k in degrees:
        a, b = h(k), h(sigma - k)
        if a != b:
            return DualityResult(False, k, a, b)
    return DualityResult(True)


# -- linkage ------------------------------------------------------------------

@dataclass
class LinkageData:
    quasi: QuasiCI
    i_sat: Ideal
    k_prime: Ideal
    tau: int
    sigma: int
    h0: GradedDims
    bound: int
    saturation_index: int = 0
    involution: Ideal | None = None

    @property
    def J(self) -> Ideal:
        return self.quasi.cci_J

    @property
    def ring(self) -> RingContext:
        return self.quasi.ring


def linked_ideal(quasi: QuasiCI, bound: int | None = None) -> LinkageData:
    """Compute I^s, K' = (J : I^s) and confirm (J : K') = I^s."""
    ring = quasi.ring
    J = quasi.cci_J
    if bound is None:
        bound = default_bound(quasi.sigma, quasi.degrees, ring.num_vars)
    sat = saturate(quasi.ideal_I, with_index=True)
    i_sat = sat.ideal
    if not i_sat.contains_ideal(J):
        raise LinkageError("J is not contained in the saturation")
    k_prime = colon(J, i_sat)
    if not k_prime.contains_ideal(J):
        raise LinkageError("J is not contained in K'")
    back = colon(J, k_prime)
    if not ideal_equal(back, i_sat):
        raise LinkageError(
            "linkage involution failed: (J : K') = "
            f"{[str(g) for g in back.gb]} but I^s = {[str(g) for g in i_sat.gb]}")
    h0 = h0_table(quasi.ideal_I, i_sat, bound)
    return LinkageData(quasi, i_sat, k_prime, quasi.tau, quasi.sigma, h0, bound,
                       sat.index, back)


def verify_linkage_involution(link: LinkageData) -> CheckResult:
    t = time.perf_counter()
    back = link.involution if link.involution is not None else colon(link.J, link.k_prime)
    ok = ideal_equal(back, link.i_sat)
    witnesses = []
    if not ok:
        for j in range(link.bound + 1):
            a, b = ideal_dim(back, j), ideal_dim(link.i_sat, j)
            if a != b:
                witnesses.append({"degree": j, "lhs": a, "rhs": b})
                break
        if not witnesses:
            witnesses.append({"degree": None, "lhs": [str(g) for g in back.gb],
                              "rhs": [str(g) for g in link.i_sat.gb]})
    return CheckResult("linkage_involution", PASS if ok else FAIL, witnesses,
                       "(J : (J : I^s)) = I^s",
                       {"k_prime": [str(g) for g in link.k_prime.gb],
                        "i_sat": [str(g) for g in link.i_sat.gb]},
                       time.perf_counter() - t)


def main_sequence_table(link: LinkageData) -> list:
    """Rows (j, dim I_j - dim J_j, dim S_{j-d0} - dim K'_{j-d0}) for j = 0..bound."""
    I, J, K = link.quasi.ideal_I, link.J, link.k_prime
    d0 = link.quasi.degrees[0]
    n = link.ring.num_vars
    rows = []
    for j in range(link.bound + 1):
        lhs = ideal_dim(I, j) - ideal_dim(J, j)
        e = j - d0
        rhs = (comb(e + n - 1, n - 1) - ideal_dim(K, e)) if e >= 0 else 0
        rows.append((j, lhs, rhs))
    return rows


def verify_main_sequence(link: LinkageData) -> CheckResult:
    """Graded pieces of 0 -> B[tau-d0] -> Hom(B, Omega_T) -> H^0[tau] -> 0."""
    t = time.perf_counter()
    rows = main_sequence_table(link)
    witnesses = [{"degree": j, "lhs": a, "rhs": b} for j, a, b in rows if a != b]
    return CheckResult("main_sequence", FAIL if witnesses else PASS, witnesses,
                       f"dim I_j - dim J_j = dim B_(j-d0) for j <= {link.bound}",
                       {"rows": [list(r) for r in rows]}, time.perf_counter() - t)


def gherardelli_injectivity_check(link: LinkageData, k_prime: Ideal | None = None) -> CheckResult:
    """(J : f_0) contained in K', i.e. f_0 : B[-d0] -> Hom_T(B, T) is injective.

    ``k_prime`` overrides the linked ideal (used for negative controls).
    """
    t = time.perf_counter()
    K = link.k_prime if k_prime is None else k_prime
    ring = link.ring
    f0 = link.quasi.f0
    if f0.is_zero():
        quotient = Ideal.unit(ring)
    else:
        quotient = colon(link.J, Ideal(ring, [f0]))
    witnesses = []
    for g in quotient.gb:
        if not K.contains(g):
            d = g.degree
            both = ideal_sum(K, quotient)
            witnesses.append({"degree": d, "lhs": ideal_dim(both, d),
                              "rhs": ideal_dim(K, d), "element": str(g)})
            break
    return CheckResult("gherardelli_injectivity", FAIL if witnesses else PASS, witnesses,
                       "(J : f0) in K'",
                       {"colon_J_f0": [str(g) for g in quotient.gb]},
                       time.perf_counter() - t)


def scheme_degree(I: Ideal) -> int:
    """Degree of Proj S/I for dim S/I <= 1; the empty scheme has degree 0."""
    if I.is_unit() or krull_dim(I) == 0:
        return 0
    return degree_of(I)


def degree_additivity_check(link: LinkageData) -> CheckResult:
    """deg Gamma = deg Delta + deg Theta for the linked finite schemes."""
    t = time.perf_counter()
    if link.i_sat.is_unit():
        return CheckResult("degree_additivity", SKIPPED, [],
                           "I^s = (1): Delta is empty", {}, time.perf_counter() - t)
    gamma = scheme_degree(link.J)
    delta = scheme_degree(link.i_sat)
    theta = scheme_degree(link.k_prime)
    ok = gamma == delta + theta
    witnesses = [] if ok else [{"degree": None, "lhs": gamma, "rhs": delta + theta}]
    return CheckResult("degree_additivity", PASS if ok else FAIL, witnesses,
                       f"{gamma} = {delta} + {theta}",
                       {"gamma": gamma, "delta": delta, "theta": theta},
                       time.perf_counter() - t)


def self_duality_check(link: LinkageData) -> CheckResult:
    t = time.perf_counter()
    res = check_self_duality(link.h0, link.sigma)
    witnesses = [] if res.ok else [{"degree": res.witness, "lhs": res.lhs, "rhs": res.rhs,
                                    "mirror": link.sigma - res.witness}]
    return CheckResult("self_duality", PASS if res.ok else FAIL, witnesses,
                       f"h(k) = h({link.sigma} - k)",
                       {"h0": link.h0.as_pairs()}, time.perf_counter() - t)


def support_check(link: LinkageData) -> CheckResult:
    t = time.perf_counter()
    bad = [k for k in link.h0.support() if k < 0 or k > link.sigma]
    witnesses = [{"degree": k, "lhs": link.h0(k), "rhs": 0} for k in bad]
    return CheckResult("h0_support", FAIL if bad else PASS, witnesses,
                       f"support in [0, {link.sigma}]", {}, time.perf_counter() - t)


def oracle_agreement_check(link: LinkageData) -> CheckResult:
    """Every Groebner-derived dimension against the Macaulay-matrix oracle."""
    from .oracle import DegreewiseOracle, degreewise_saturation_dim

    t = time.perf_counter()
    witnesses = []
    compared = 0
    named = [("I", link.quasi.ideal_I), ("J", link.J), ("I_sat", link.i_sat),
             ("K_prime", link.k_prime)]
    oracles = {}
    for name, ideal in named:
        if ideal.is_unit():
            gens = [link.ring.one()]
        else:
            gens = list(ideal.generators)
        oracles[name] = DegreewiseOracle(gens)
        for k in range(link.bound + 1):
            a, b = ideal_dim(ideal, k), oracles[name].dim(k)
            compared += 1
            if a != b:
                witnesses.append({"ideal": name, "degree": k, "lhs": a, "rhs": b})
    for k in range(link.bound + 1):
        a = ideal_dim(link.i_sat, k)
        b = degreewise_saturation_dim(None, k, link.bound, oracle=oracles["I"])
        compared += 1
        if a != b:
            witnesses.append({"ideal": "saturation", "degree": k, "lhs": a, "rhs": b})
    return CheckResult("oracle_agreement", FAIL if witnesses else PASS, witnesses,
                       f"{compared} dimensions compared", {"compared": compared},
                       time.perf_counter() - t)


# -- full pipeline ------------------------------------------------------------

@dataclass
class ReportOptions:
    distinguished: int | None = None
    seed: int = 0
    bound: int | None = None
    oracle: bool = False


def _ring_info(ring: RingContext) -> dict:
    return {"characteristic": ring.characteristic,
            "variables": list(ring.variable_names),
            "order": ring.order,
            "description": ring.describe()}


def full_report(f_or_gens, options: ReportOptions | None = None) -> VerificationReport:
    """Run every stage; a stage that raises is marked ``error`` and the rest skipped."""
    options = options or ReportOptions()
    if isinstance(f_or_gens, Polynomial):
        f = f_or_gens
        ring = f.ring
        inp = {"mode": "hypersurface", "f": str(f)}
    else:
        f = None
        gens = list(f_or_gens)
        ring = gens[0].ring
        inp = {"mode": "generators", "generators": [str(g) for g in gens]}
    report = VerificationReport(inp, _ring_info(ring))
    stages = ["jacobian", "dim_proj", "regular_sequence", "linkage_involution",
              "h0_support", "self_duality", "main_sequence", "gherardelli_injectivity",
              "degree_additivity"]
    if options.oracle:
        stages.append("oracle_agreement")
    if f is None:
        stages.remove("jacobian")

    def abort(stage, exc, started):
        report.add(CheckResult(stage, ERROR, [], f"{type(exc).__name__}: {exc}",
                               elapsed=time.perf_counter() - started))
        for rest in stages[stages.index(stage) + 1:]:
            report.add(CheckResult(rest, SKIPPED, [], f"not run: {stage} failed"))
        return report

    degrees = None
    if f is not None:
        t = time.perf_counter()
        try:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                gens = jacobian_generators(f)
            degrees = [f.degree - 1] * ring.num_vars
        except Exception as exc:  # noqa: BLE001 - reported, not swallowed
            return abort("jacobian", exc, t)
        inp["generators"] = [str(g) for g in gens]
        report.add(CheckResult("jacobian", PASS, [],
                               "; ".join(str(w.message) for w in caught),
                               {"generators": inp["generators"]},
                               time.perf_counter() - t))
    if degrees is None:
        degrees = [g.degree for g in gens]
    inp["degrees"] = degrees

    t = time.perf_counter()
    try:
        if len(gens) != ring.num_vars:
            raise PreconditionError(
                f"need n+1 = {ring.num_vars} generators, got {len(gens)}")
        I = Ideal(ring, gens)
        dim = krull_dim(I) if not I.is_unit() else 0
        if dim > 1:
            raise PreconditionError(f"dim Proj S/I = {dim - 1} > 0")
    except Exception as exc:  # noqa: BLE001
        return abort("dim_proj", exc, t)
    report.add(CheckResult("dim_proj", PASS, [], f"dim Proj S/I = {dim - 1}",
                           {"krull_dim": dim}, time.perf_counter() - t))

    t = time.perf_counter()
    try:
        quasi = extract_regular_sequence(gens, options.distinguished, options.seed,
                                         degrees=degrees)
    except Exception as exc:  # noqa: BLE001
        return abort("regular_sequence", exc, t)
    inp["distinguished"] = quasi.distinguished
    inp["seed"] = options.seed
    report.tau, report.sigma = quasi.tau, quasi.sigma
    report.add(CheckResult("regular_sequence", PASS, [],
                           f"{quasi.attempts} recombination attempt(s)",
                           {"f0": str(quasi.f0),
                            "J": [str(g) for g in quasi.ci_gens],
                            "attempts": quasi.attempts},
                           time.perf_counter() - t))

    bound = options.bound
    if bound is None:
        bound = default_bound(quasi.sigma, quasi.degrees, ring.num_vars)
    report.bound = bound

    t = time.perf_counter()
    try:
        link = linked_ideal(quasi, bound)
    except LinkageError as exc:
        report.add(CheckResult("linkage_involution", FAIL,
                               [{"degree": None, "lhs": str(exc), "rhs": "I^s"}],
                               str(exc), elapsed=time.perf_counter() - t))
        for rest in stages[stages.index("linkage_involution") + 1:]:
            report.add(CheckResult(rest, SKIPPED, [], "not run: linkage failed"))
        return report
    except Exception as exc:  # noqa: BLE001
        return abort("linkage_involution", exc, t)
    involution = verify_linkage_involution(link)
    involution.elapsed += time.perf_counter() - t
    report.add(involution)
    report.h0 = [[k, v] for k, v in link.h0.as_pairs() if v]

    report.add(support_check(link))
    report.add(self_duality_check(link))
    report.add(verify_main_sequence(link))
    report.add(gherardelli_injectivity_check(link))
    report.add(degree_additivity_check(link))
    if options.oracle:
        report.add(oracle_agreement_check(link))
    return report


def run_pipeline(f_or_gens, options: ReportOptions | None = None):
    """Like :func:`full_report` but also hands back the LinkageData (or None)."""
    options = options or ReportOptions()
    if isinstance(f_or_gens, Polynomial):
        gens = jacobian_generators(f_or_gens)
        degrees = [f_or_gens.degree - 1] * f_or_gens.ring.num_vars
    else:
        gens = list(f_or_gens)
        degrees = [g.degree for g in gens]
    quasi = extract_regular_sequence(gens, options.distinguished, options.seed,
                                     degrees=degrees)
    return linked_ideal(quasi, options.bound)
