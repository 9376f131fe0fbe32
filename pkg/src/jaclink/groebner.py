"""Normal forms and reduced Groebner bases (Buchberger, normal strategy).

Input is homogeneous, so pairs are processed in increasing degree and the
basis is built degree by degree.  Useless pairs are discarded with the
Gebauer-Moeller installation of Buchberger's product and chain criteria.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from .polyring import (
    Polynomial,
    RingContext,
    RingMismatchError,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
    monomial_quotient,
)


class GroebnerError(ValueError):
    pass


def _reduce_terms(terms, reducers, ring: RingContext):
    """Fully reduce a term list by monic ``reducers`` = [(lm, tail), ...].

    Returns the remainder as a list of terms in descending order.
    """
    fld = ring.field
    key = ring.key
    acc = dict(terms)
    heap = [(key(m), m) for m in acc]
    heapq.heapify(heap)
    rem = []
    while heap:
        m = heapq.heappop(heap)[1]
        c = acc.pop(m, None)
        if c is None:
            continue
        for lm, tail in reducers:
            if all(a <= b for a, b in zip(lm, m)):
                q = tuple(b - a for a, b in zip(lm, m))
                for tm, tc in tail:
                    mm = tuple(x + y for x, y in zip(tm, q))
                    old = acc.get(mm)
                    if old is None:
                        acc[mm] = fld.neg(fld.mul(c, tc))
                        heapq.heappush(heap, (key(mm), mm))
                    else:
                        v = fld.submul(old, c, tc)
                        if v == 0:
                            del acc[mm]
                        else:
                            acc[mm] = v
                break
        else:
            rem.append((m, c))
    return rem


def _monic_terms(terms, fld):
    inv = fld.inv(terms[0][1])
    if inv == 1:
        return tuple(terms)
    return tuple((m, fld.mul(c, inv)) for m, c in terms)


def _spoly_terms(f_terms, g_terms, ring):
    """S-polynomial of two monic term lists, leading terms already cancelled."""
    fld = ring.field
    lcm = monomial_lcm(f_terms[0][0], g_terms[0][0])
    qf = monomial_quotient(lcm, f_terms[0][0])
    qg = monomial_quotient(lcm, g_terms[0][0])
    acc = {}
    for m, c in f_terms[1:]:
        acc[monomial_mul(m, qf)] = c
    for m, c in g_terms[1:]:
        mm = monomial_mul(m, qg)
        v = fld.sub(acc.get(mm, 0), c)
        if v == 0:
            acc.pop(mm, None)
        else:
            acc[mm] = v
    return list(acc.items())


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    """lcm/LT(f) * f - lcm/LT(g) * g."""
    if f.ring != g.ring:
        raise RingMismatchError("S-polynomial across rings")
    ring = f.ring
    lcm = monomial_lcm(f.lm, g.lm)
    a = f.mul_term(monomial_quotient(lcm, f.lm), ring.field.inv(f.lc))
    b = g.mul_term(monomial_quotient(lcm, g.lm), ring.field.inv(g.lc))
    return a - b


@dataclass(frozen=True)
class GroebnerBasis:
    """A reduced Groebner basis: monic, auto-reduced, ascending leading monomials."""

    ring: RingContext
    basis: tuple

    def __iter__(self):
        return iter(self.basis)

    def __len__(self):
        return len(self.basis)

    @property
    def order(self) -> str:
        return self.ring.order

    def leading_monomials(self) -> list:
        return [g.lm for g in self.basis]

    def _reducers(self):
        return [(g.lm, g.terms[1:]) for g in self.basis]

    def is_unit(self) -> bool:
        return len(self.basis) == 1 and self.basis[0].is_constant()

    def normal_form(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """The remainder of ``f`` on division by ``G``; no term is divisible by any lm(G)."""
    if f.ring != G.ring:
        raise RingMismatchError(
            f"polynomial in {f.ring.describe()}, basis in {G.ring.describe()}")
    if not f.terms:
        return f
    rem = _reduce_terms(f.terms, G._reducers(), f.ring)
    return Polynomial._from_sorted(f.ring, tuple(rem), f.degree if rem else None)


def _buchberger(polys: Sequence[Polynomial], ring: RingContext, criteria: bool = True):
    fld = ring.field
    key = ring.key
    deg = ring.degree_of_monomial

    basis: list = []  # every element ever added, as monic term tuples
    lms: list = []
    active: list = []  # indices forming the current minimal basis
    pairs: set = set()
    queue: list = []  # (degree, order key, tag, payload)
    counter = 0

    for f in polys:
        if f.terms:
            heapq.heappush(queue, (f.degree, key(f.lm), counter, ("input", f.terms)))
            counter += 1

    def push_pair(i, j):
        nonlocal counter
        lcm = monomial_lcm(lms[i], lms[j])
        pairs.add((i, j))
        heapq.heappush(queue, (deg(lcm), key(lcm), counter, ("pair", (i, j))))
        counter += 1

    def update(h):
        lm_h = lms[h]
        new = [(g, monomial_lcm(lms[g], lm_h)) for g in active]
        if criteria:
            # chain criterion among the new pairs, product criterion kept last
            kept = []
            for idx, (g, lcm) in enumerate(new):
                coprime = lcm == monomial_mul(lms[g], lm_h)
                if coprime:
                    kept.append((g, lcm, True))
                    continue
                dominated = False
                for idx2, (g2, lcm2) in enumerate(new):
                    if idx2 == idx:
                        continue
                    if monomial_divides(lcm2, lcm) and (lcm2 != lcm or idx2 < idx):
                        dominated = True
                        break
                if not dominated:
                    kept.append((g, lcm, False))
            # a coprime pair whose lcm is shared by another pair removes both
            final = []
            for g, lcm, coprime in kept:
                if coprime:
                    continue
                final.append(g)
            # prune old pairs through the new leading monomial
            for (i, j) in list(pairs):
                lij = monomial_lcm(lms[i], lms[j])
                if (monomial_divides(lm_h, lij)
                        and monomial_lcm(lms[i], lm_h) != lij
                        and monomial_lcm(lms[j], lm_h) != lij):
                    pairs.discard((i, j))
            for g in final:
                push_pair(g, h)
        else:
            for g, _ in new:
                push_pair(g, h)
        active[:] = [g for g in active if not monomial_divides(lm_h, lms[g])] + [h]

    while queue:
        _, _, _, (kind, payload) = heapq.heappop(queue)
        if kind == "pair":
            if payload not in pairs:
                continue
            pairs.discard(payload)
            i, j = payload
            terms = _spoly_terms(basis[i], basis[j], ring)
        else:
            terms = payload
        if not terms:
            continue
        reducers = [(lms[g], basis[g][1:]) for g in active]
        rem = _reduce_terms(terms, reducers, ring)
        if not rem:
            continue
        h = len(basis)
        basis.append(_monic_terms(rem, fld))
        lms.append(rem[0][0])
        update(h)

    return [basis[g] for g in active]


def _interreduce(elements, ring):
    """Turn a minimal basis (monic term tuples) into the reduced one."""
    elements = sorted(elements, key=lambda t: ring.key(t[0][0]), reverse=True)
    out = []
    for idx, g in enumerate(elements):
        others = [(h[0][0], h[1:]) for j, h in enumerate(elements) if j != idx]
        tail = _reduce_terms(g[1:], others, ring)
        out.append((g[0],) + tuple(tail))
    return out


def reduced_groebner_basis(gens: Iterable[Polynomial], ring: RingContext | None = None,
                           criteria: bool = True) -> GroebnerBasis:
    """The reduced Groebner basis of the ideal generated by ``gens``.

    ``criteria=False`` disables the product/chain pair criteria; the result
    is the same basis, only slower to reach.
    """
    gens = list(gens)
    if ring is None:
        if not gens:
            raise GroebnerError("no generators and no ring")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatchError("generators from different rings")
    nonzero = [g for g in gens if g.terms]
    if not nonzero:
        raise GroebnerError("all generators are zero")
    minimal = _buchberger(nonzero, ring, criteria=criteria)
    reduced = _interreduce(minimal, ring)
    polys = tuple(Polynomial._from_sorted(ring, t, ring.degree_of_monomial(t[0][0]))
                  for t in reduced)
    return GroebnerBasis(ring, polys)


def is_groebner_basis(G: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    elems = list(G.basis)
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if not normal_form(s_polynomial(elems[i], elems[j]), G).is_zero():
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    fld = G.ring.field
    lms = G.leading_monomials()
    for i, g in enumerate(G.basis):
        if g.lc != fld.one:
            return False
        for j, lm in enumerate(lms):
            if i != j and any(monomial_divides(lm, m) for m, _ in g.terms):
                return False
    return True
