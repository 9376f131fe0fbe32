"""Dense-style linear algebra cross-check for graded dimensions.

Nothing here touches the Groebner code: the degree-k piece of an ideal is the
row space of its Macaulay matrix, and saturation is probed degree by degree
as the solution space of ``x_i^N f in I`` for all ``i``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .polyring import Polynomial, monomial_mul, monomials_of_degree


class OracleError(RuntimeError):
    pass


@dataclass
class MacaulayMatrix:
    degree: int
    columns: list  # degree-k monomials, descending in the ring order
    rows: list  # sparse rows {column index: coefficient}
    field: object

    def dense(self) -> list:
        zero = self.field.zero
        out = []
        for r in self.rows:
            row = [zero] * len(self.columns)
            for j, c in r.items():
                row[j] = c
            out.append(row)
        return out

    def rank(self) -> int:
        ech = Echelon(self.field)
        for r in self.rows:
            ech.insert(r)
        return ech.rank


class Echelon:
    """Incremental row echelon form; each stored row has pivot entry 1."""

    def __init__(self, field):
        self.field = field
        self.rows: dict = {}
        self.pivots: list = []

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        fld = self.field
        vec = {j: c for j, c in vec.items() if c != 0}
        if not vec:
            return vec
        lo = min(vec)
        start = bisect.bisect_left(self.pivots, lo)
        for p in self.pivots[start:]:
            a = vec.get(p)
            if not a:
                continue
            for j, c in self.rows[p].items():
                v = fld.submul(vec.get(j, fld.zero), a, c)
                if v == 0:
                    vec.pop(j, None)
                else:
                    vec[j] = v
        return vec

    def insert(self, vec: dict) -> bool:
        """Add a row; return True when it enlarged the row space."""
        vec = self.reduce(vec)
        if not vec:
            return False
        fld = self.field
        p = min(vec)
        inv = fld.inv(vec[p])
        row = {j: fld.mul(c, inv) for j, c in vec.items()}
        self.rows[p] = row
        bisect.insort(self.pivots, p)
        return True


def macaulay_matrix(gens: Sequence[Polynomial], k: int) -> MacaulayMatrix:
    """Rows m*g for every generator g and every monomial m of degree k - deg g."""
    if not gens:
        raise OracleError("no generators")
    ring = gens[0].ring
    n = ring.num_vars
    columns = monomials_of_degree(n, k, ring.order)
    index = {m: j for j, m in enumerate(columns)}
    rows = []
    for g in gens:
        if not g.terms or g.degree > k:
            continue
        for m in monomials_of_degree(n, k - g.degree, ring.order):
            rows.append({index[monomial_mul(t, m)]: c for t, c in g.terms})
    return MacaulayMatrix(k, columns, rows, ring.field)


def macaulay_dim(gens: Sequence[Polynomial], k: int) -> int:
    """dim_K I_k as the rank of the degree-k Macaulay matrix."""
    if k < 0:
        return 0
    return macaulay_matrix(gens, k).rank()


def quotient_dim(gens: Sequence[Polynomial], k: int) -> int:
    """dim_K (S/I)_k = #monomials of degree k - rank."""
    if k < 0:
        return 0
    n = gens[0].ring.num_vars
    return comb(k + n - 1, n - 1) - macaulay_dim(gens, k)


def in_ideal_degree(f: Polynomial, gens: Sequence[Polynomial]) -> bool:
    """Membership of a form f in I_{deg f}, by a rank comparison."""
    if not f.terms:
        return True
    M = macaulay_matrix(gens, f.degree)
    ech = Echelon(M.field)
    for r in M.rows:
        ech.insert(r)
    index = {m: j for j, m in enumerate(M.columns)}
    return not ech.reduce({index[m]: c for m, c in f.terms})


class DegreewiseOracle:
    """Caches the echelon form of I_D per degree D for one generator set."""

    def __init__(self, gens: Sequence[Polynomial]):
        gens = [g for g in gens if g.terms]
        if not gens:
            raise OracleError("no generators")
        self.gens = gens
        self.ring = gens[0].ring
        self._echelons: dict = {}
        self._columns: dict = {}

    def columns(self, D: int) -> dict:
        if D not in self._columns:
            monos = monomials_of_degree(self.ring.num_vars, D, self.ring.order)
            self._columns[D] = {m: j for j, m in enumerate(monos)}
        return self._columns[D]

    def echelon(self, D: int) -> Echelon:
        if D not in self._echelons:
            M = macaulay_matrix(self.gens, D)
            ech = Echelon(M.field)
            for r in M.rows:
                ech.insert(r)
            self._echelons[D] = ech
        return self._echelons[D]

    def dim(self, k: int) -> int:
        return self.echelon(k).rank if k >= 0 else 0

    def colon_power_dim(self, k: int, N: int) -> int:
        """dim of {f in S_k : x_i^N f in I for every i}."""
        if N == 0:
            return self.dim(k)
        ring = self.ring
        n = ring.num_vars
        fld = ring.field
        D = k + N
        ech = self.echelon(D)
        cols = self.columns(D)
        width = len(cols)
        powers = [tuple(N if j == i else 0 for j in range(n)) for i in range(n)]
        image = Echelon(fld)
        monos_k = monomials_of_degree(n, k, ring.order)
        for m in monos_k:
            vec = {}
            for i, xp in enumerate(powers):
                red = ech.reduce({cols[monomial_mul(m, xp)]: fld.one})
                for j, c in red.items():
                    vec[i * width + j] = c
            image.insert(vec)
        return len(monos_k) - image.rank


def degreewise_saturation_dim(gens: Sequence[Polynomial], k: int, bound: int,
                              padding: int | None = None, patience: int = 2,
                              oracle: DegreewiseOracle | None = None) -> int:
    """dim_K (I^sat)_k without Groebner bases.

    Walks N = 0, 1, ... while k + N <= max(bound, k) + padding.  The value
    is non-decreasing in N; it is accepted once it fills S_k, or at the end
    of the walk if the last ``patience`` steps agree.  Plateaus are possible
    (x^3 in (x^3, y^3, z^3) needs N = 3), hence no early exit on a plateau.
    """
    if k > bound:
        raise OracleError(f"degree {k} exceeds bound {bound}")
    if k < 0:
        return 0
    oracle = oracle or DegreewiseOracle(gens)
    n = oracle.ring.num_vars
    padding = n if padding is None else padding
    full = comb(k + n - 1, n - 1)
    limit = max(bound, k) + padding
    history = []
    for N in range(0, limit - k + 1):
        value = oracle.colon_power_dim(k, N)
        if value == full:
            return value
        history.append(value)
    tail = history[-(patience + 1):]
    if len(set(tail)) != 1:
        raise OracleError(
            f"saturation dimension in degree {k} did not stabilise by degree {limit}: "
            f"{history}")
    return history[-1]


def colon_dim(gens_i: Sequence[Polynomial], gens_j: Sequence[Polynomial], k: int) -> int:
    """dim_K (I : J)_k = dim {f in S_k : f*g in I for every generator g of J}."""
    if k < 0:
        return 0
    gens_j = [g for g in gens_j if g.terms]
    if not gens_j:
        raise OracleError("colon by the zero ideal")
    oracle = DegreewiseOracle(gens_i)
    ring = oracle.ring
    fld = ring.field
    monos_k = monomials_of_degree(ring.num_vars, k, ring.order)
    blocks = []
    offset = 0
    for g in gens_j:
        D = k + g.degree
        blocks.append((g, oracle.echelon(D), oracle.columns(D), offset))
        offset += len(oracle.columns(D))
    image = Echelon(fld)
    for m in monos_k:
        vec = {}
        for g, ech, cols, off in blocks:
            red = ech.reduce({cols[monomial_mul(t, m)]: c for t, c in g.terms})
            for j, c in red.items():
                vec[off + j] = c
        image.insert(vec)
    return len(monos_k) - image.rank
