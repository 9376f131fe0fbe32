"""Homogeneous ideals: sums, intersections, colons, saturation, Hilbert data.

Intersections use one auxiliary variable ``t`` of weight zero:
``I & J = (t*I + (1 - t)*J)`` restricted to the original ring.  With ``t``
of weight zero both generator families stay homogeneous, so the Groebner
engine never sees an inhomogeneous input.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .groebner import GroebnerBasis, normal_form, reduced_groebner_basis
from .polyring import (
    Polynomial,
    RingContext,
    RingMismatchError,
    as_polynomials,
    monomial_divides,
)

log = logging.getLogger(__name__)


class IdealError(ValueError):
    pass


class Ideal:
    """An ideal of a polynomial ring, given by homogeneous generators.

    The reduced Groebner basis is computed on first use and cached; the
    cache is filled at most once even with concurrent readers.
    """

    __slots__ = ("ring", "generators", "_gb", "_lock", "_hs")

    def __init__(self, ring: RingContext, generators: Iterable = ()):
        self.ring = ring
        gens = as_polynomials(ring, generators)
        self.generators = tuple(g for g in gens if g.terms)
        self._gb = None
        self._hs = None
        self._lock = threading.Lock()

    @classmethod
    def from_basis(cls, gb: GroebnerBasis) -> "Ideal":
        ideal = cls(gb.ring, gb.basis)
        ideal._gb = gb
        return ideal

    @classmethod
    def unit(cls, ring: RingContext) -> "Ideal":
        return cls(ring, [ring.one()])

    @classmethod
    def irrelevant(cls, ring: RingContext) -> "Ideal":
        return cls(ring, ring.gens())

    @property
    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            with self._lock:
                if self._gb is None:
                    if self.generators:
                        self._gb = reduced_groebner_basis(self.generators, self.ring)
                    else:
                        self._gb = GroebnerBasis(self.ring, ())
        return self._gb

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return self.gb.is_unit()

    def contains(self, f: Polynomial) -> bool:
        if f.ring != self.ring:
            raise RingMismatchError("membership test across rings")
        return normal_form(f, self.gb).is_zero()

    def contains_ideal(self, other: "Ideal") -> bool:
        _check_same_ring(self, other)
        return all(self.contains(g) for g in other.generators)

    def degrees(self) -> list:
        return [g.degree for g in self.generators]

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return ideal_equal(self, other)

    __hash__ = None

    def __str__(self):
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def _check_same_ring(I: Ideal, J: Ideal):
    if I.ring != J.ring:
        raise RingMismatchError(f"{I.ring.describe()} vs {J.ring.describe()}")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    return Ideal(I.ring, I.generators + J.generators)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """True iff the reduced Groebner bases coincide."""
    _check_same_ring(I, J)
    return I.gb.basis == J.gb.basis


def intersection(I: Ideal, J: Ideal) -> Ideal:
    _check_same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal(I.ring)
    ring = I.ring
    E = ring.elimination_ring()
    t = E.var(E.num_vars - 1)
    one_minus_t = E.one() - t
    gens = [t * g.embed(E) for g in I.generators]
    gens += [one_minus_t * g.embed(E) for g in J.generators]
    gb = reduced_groebner_basis(gens, E)
    kept = [g.project(ring) for g in gb.basis if not any(m[-1] for m, _ in g.terms)]
    return Ideal(ring, kept)


def _colon_by_element(I: Ideal, g: Polynomial) -> Ideal:
    ring = I.ring
    if g.is_constant():
        return Ideal(ring, I.generators)
    if I.is_zero():
        return Ideal(ring)
    if I.is_unit():
        return Ideal.unit(ring)
    meet = intersection(I, Ideal(ring, [g]))
    return Ideal(ring, [h.divexact(g) for h in meet.gb.basis])


def colon(I: Ideal, J: Ideal) -> Ideal:
    """(I : J) = {f : f*J in I}, intersected over the generators of J."""
    _check_same_ring(I, J)
    if J.is_zero():
        raise IdealError("colon by the zero ideal")
    result = None
    # the reduced basis of J generates J; it is usually the shorter list
    for g in J.gb.basis:
        part = _colon_by_element(I, g)
        result = part if result is None else intersection(result, part)
        if result.is_zero():
            break
    return Ideal.from_basis(result.gb)


@dataclass
class SaturationResult:
    ideal: Ideal
    index: int  # number of colon steps that enlarged the ideal
    was_unit: bool = False


def saturate(I: Ideal, with_index: bool = False):
    """The saturation of I with respect to the irrelevant ideal.

    Iterates I <- (I : S_+) until the reduced basis stops changing.  A unit
    ideal is returned unchanged (and flagged in the log and the index form).
    """
    ring = I.ring
    if I.is_unit():
        log.warning("saturate: the unit ideal is already saturated")
        res = SaturationResult(Ideal.from_basis(I.gb), 0, was_unit=True)
        return res if with_index else res.ideal
    irrelevant = Ideal.irrelevant(ring)
    current = Ideal.from_basis(I.gb)
    steps = 0
    while True:
        nxt = colon(current, irrelevant)
        if ideal_equal(nxt, current):
            break
        current = nxt
        steps += 1
    res = SaturationResult(current, steps)
    return res if with_index else res.ideal


# -- Hilbert series ---------------------------------------------------------

def _poly_add(a: list, b: list, shift: int = 0, sign: int = 1) -> list:
    n = max(len(a), len(b) + shift)
    out = a + [0] * (n - len(a))
    for i, c in enumerate(b):
        out[i + shift] += sign * c
    while out and out[-1] == 0:
        out.pop()
    return out


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _minimalize(monos) -> list:
    monos = sorted(set(monos), key=sum)
    out: list = []
    for m in monos:
        if not any(monomial_divides(g, m) for g in out):
            out.append(m)
    return out


def _monomial_numerator(monos: list) -> list:
    """Numerator N(t) of the Hilbert series of S/(monos), by pivot splitting."""
    monos = _minimalize(monos)
    if not monos:
        return [1]
    if any(sum(m) == 0 for m in monos):
        return []
    # base case: pairwise coprime generators form a regular sequence
    n = len(monos[0])
    support_count = [0] * n
    for m in monos:
        for i, e in enumerate(m):
            if e:
                support_count[i] += 1
    if max(support_count) <= 1:
        num = [1]
        for m in monos:
            num = _poly_mul(num, [1] + [0] * (sum(m) - 1) + [-1])
        return num
    # pivot on a variable of a mixed generator; x_var^e is then outside M
    # (minimality) and M : x_var^e strictly shrinks that generator
    mixed = [m for m in monos if sum(1 for e in m if e) > 1]
    candidates = {i for m in mixed for i, e in enumerate(m) if e}
    var = max(sorted(candidates), key=lambda i: support_count[i])
    e = min(m[var] for m in mixed if m[var])
    pivot = tuple(e if i == var else 0 for i in range(n))
    with_pivot = monos + [pivot]
    quotient = [tuple(max(a - b, 0) for a, b in zip(m, pivot)) for m in monos]
    # HS(S/M) = HS(S/(M + p)) + t^deg(p) * HS(S/(M : p))
    return _poly_add(_monomial_numerator(with_pivot), _monomial_numerator(quotient), shift=e)


@dataclass(frozen=True)
class HilbertSeries:
    """sum_k dim (S/I)_k t^k = numerator(t) / (1 - t)^num_vars."""

    numerator: tuple
    num_vars: int

    def coefficient(self, k: int) -> int:
        if k < 0:
            return 0
        n = self.num_vars
        return sum(c * comb(k - i + n - 1, n - 1)
                   for i, c in enumerate(self.numerator) if i <= k)

    def reduced(self):
        """(Q, c) with numerator = (1 - t)^c * Q and Q(1) != 0."""
        q = list(self.numerator)
        c = 0
        if not q:
            raise IdealError("Hilbert series of the zero module")
        while sum(q) == 0:
            # synthetic division by (1 - t): q = (1 - t) * r, r_i = sum_{j<=i} q_j
            r = []
            acc = 0
            for a in q[:-1]:
                acc += a
                r.append(acc)
            q = r
            c += 1
        return q, c

    def __str__(self):
        parts = []
        for i, c in enumerate(self.numerator):
            if c:
                parts.append(f"{c:+d}" + (f"*t^{i}" if i else ""))
        return ("".join(parts).lstrip("+") or "0") + f" / (1-t)^{self.num_vars}"


def leading_monomial_ideal(I: Ideal) -> list:
    return [g.lm for g in I.gb.basis]


def hilbert_series(I: Ideal) -> HilbertSeries:
    if I._hs is None:
        if I.ring.weights is not None:
            raise IdealError("Hilbert series needs the standard grading")
        I._hs = HilbertSeries(tuple(_monomial_numerator(leading_monomial_ideal(I))),
                              I.ring.num_vars)
    return I._hs


def hilbert_function(I: Ideal, k: int) -> int:
    """dim_K (S/I)_k."""
    return hilbert_series(I).coefficient(k)


def ideal_dim(I: Ideal, k: int) -> int:
    """dim_K I_k."""
    if k < 0:
        return 0
    return comb(k + I.ring.num_vars - 1, I.ring.num_vars - 1) - hilbert_function(I, k)


def krull_dim(I: Ideal) -> int:
    """Krull dimension of S/I (dim Proj is one less)."""
    hs = hilbert_series(I)
    if not hs.numerator:
        raise IdealError("Krull dimension of S/(1) is undefined")
    _, c = hs.reduced()
    return I.ring.num_vars - c


def degree_of(I: Ideal) -> int:
    """Degree of the finite projective scheme cut out by I (dim S/I = 1).

    Read from Q(1) where N(t) = (1-t)^(n) Q(t); Q(1) is unchanged by
    saturation, so I need not be saturated.
    """
    hs = hilbert_series(I)
    if not hs.numerator:
        raise IdealError("degree of the empty scheme")
    q, c = hs.reduced()
    if I.ring.num_vars - c != 1:
        raise IdealError(f"degree_of needs dim S/I = 1, got {I.ring.num_vars - c}")
    return sum(q)


@dataclass
class GradedDims:
    """A finite Hilbert-function table; degrees beyond ``bound`` take ``eventually_constant``."""

    table: dict
    bound: int
    eventually_constant: int | None = None

    def __post_init__(self):
        for k, v in self.table.items():
            if k > self.bound:
                raise ValueError(f"degree {k} beyond bound {self.bound}")
            if v < 0:
                raise ValueError(f"negative dimension {v} at degree {k}")

    def __call__(self, k: int) -> int:
        if k in self.table:
            return self.table[k]
        if k > self.bound and self.eventually_constant is not None:
            return self.eventually_constant
        if k < 0:
            return 0
        if k > self.bound:
            raise KeyError(f"degree {k} beyond the computed bound {self.bound}")
        return 0

    def support(self) -> list:
        return sorted(k for k, v in self.table.items() if v)

    def values(self, lo: int = 0, hi: int | None = None) -> list:
        hi = self.bound if hi is None else hi
        return [self(k) for k in range(lo, hi + 1)]

    def as_pairs(self) -> list:
        return [[k, self.table[k]] for k in sorted(self.table)]

    def total(self) -> int:
        return sum(self.table.values())


def hilbert_table(I: Ideal, bound: int) -> GradedDims:
    hs = hilbert_series(I)
    table = {k: hs.coefficient(k) for k in range(bound + 1)}
    eventually = None
    if hs.numerator:
        q, c = hs.reduced()
        if I.ring.num_vars - c <= 1:
            eventually = sum(q) if I.ring.num_vars - c == 1 else 0
    return GradedDims(table, bound, eventually)


def default_bound(sigma: int, degrees: Sequence[int], num_vars: int) -> int:
    return max([sigma] + list(degrees)) + num_vars + 2
