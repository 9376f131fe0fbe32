"""Sparse homogeneous polynomials over an exact field.

Monomials are plain tuples of exponents.  A :class:`RingContext` fixes the
variables, the coefficient field and the monomial order; every
:class:`Polynomial` is homogeneous with respect to the ring's grading and
keeps its terms sorted strictly descending in the ring's order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from dataclasses import field as dc_field
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from .field import NotInvertibleError, make_field

DEFAULT_CHARACTERISTIC = 32003

Monomial = tuple  # tuple[int, ...]

ORDERS = ("grevlex", "grlex")
_INTERNAL_ORDERS = ORDERS + ("elim",)


class PolynomialError(ValueError):
    pass


class ParseError(PolynomialError):
    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text
        self.bare_message = message


class NonHomogeneousError(PolynomialError):
    pass


class ZeroPolynomialError(PolynomialError):
    pass


class RingMismatchError(PolynomialError):
    pass


def order_key(order: str, weights: tuple | None = None) -> Callable[[Monomial], tuple]:
    """Sort key under which smaller keys are LARGER monomials.

    ``sorted(monos, key=order_key(o))`` lists monomials in descending order,
    and a min-heap pops the largest monomial first.
    """
    if order == "grevlex":
        if weights is None:
            return lambda m: (-sum(m), m[::-1])
        return lambda m: (-sum(w * e for w, e in zip(weights, m)), m[::-1])
    if order == "grlex":
        if weights is None:
            return lambda m: (-sum(m), tuple(-e for e in m))
        return lambda m: (-sum(w * e for w, e in zip(weights, m)), tuple(-e for e in m))
    if order == "elim":
        # block order: the last variable (weight 0) dominates, grevlex on the rest
        return lambda m: (-sum(m[:-1]), -m[-1], m[-2::-1])
    raise ValueError(f"unknown monomial order {order!r}")


def compare_monomials(a: Monomial, b: Monomial, order: str = "grevlex") -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise RingMismatchError("monomials live in different rings")
    if a == b:
        return 0
    key = order_key(order)
    return 1 if key(a) < key(b) else -1


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_quotient(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomials_of_degree(num_vars: int, k: int, order: str = "grevlex") -> list:
    """All exponent vectors of total degree ``k``, descending in ``order``."""
    if k < 0:
        return []
    monos = []
    for combo in combinations_with_replacement(range(num_vars), k):
        e = [0] * num_vars
        for i in combo:
            e[i] += 1
        monos.append(tuple(e))
    monos.sort(key=order_key(order))
    return monos


@dataclass(frozen=True)
class RingContext:
    """The polynomial ring K[x_0, ..., x_n] with a fixed monomial order."""

    variable_names: tuple
    characteristic: int = DEFAULT_CHARACTERISTIC
    order: str = "grevlex"
    weights: tuple | None = None
    field: object = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.variable_names)
        object.__setattr__(self, "variable_names", names)
        if len(names) < 2:
            raise ValueError("need at least two variables")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", name):
                raise ValueError(f"invalid variable name {name!r}")
        if self.order not in _INTERNAL_ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        if self.weights is not None:
            w = tuple(self.weights)
            if len(w) != len(names) or any(x < 0 for x in w):
                raise ValueError("bad weight vector")
            object.__setattr__(self, "weights", None if all(x == 1 for x in w) else w)
        object.__setattr__(self, "field", make_field(self.characteristic))

    @property
    def num_vars(self) -> int:
        return len(self.variable_names)

    @cached_property
    def key(self) -> Callable[[Monomial], tuple]:
        return order_key(self.order, self.weights)

    def degree_of_monomial(self, m: Monomial) -> int:
        if self.weights is None:
            return sum(m)
        return sum(w * e for w, e in zip(self.weights, m))

    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.num_vars: 1})

    def var(self, i) -> "Polynomial":
        if isinstance(i, str):
            i = self.variable_names.index(i)
        e = [0] * self.num_vars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list:
        return [self.var(i) for i in range(self.num_vars)]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {tuple(exps): coeff})

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def with_order(self, order: str) -> "RingContext":
        return RingContext(self.variable_names, self.characteristic, order, self.weights)

    def elimination_ring(self, name: str = "t_elim") -> "RingContext":
        """This ring plus one extra weight-0 variable that dominates the order."""
        while name in self.variable_names:
            name += "_"
        return RingContext(self.variable_names + (name,), self.characteristic, "elim",
                           (1,) * self.num_vars + (0,))

    def describe(self) -> str:
        k = "QQ" if self.characteristic == 0 else f"F_{self.characteristic}"
        return f"{k}[{', '.join(self.variable_names)}] ({self.order})"


class Polynomial:
    """A homogeneous polynomial; immutable.

    ``terms`` is a tuple of ``(exponents, coefficient)`` pairs in strictly
    descending monomial order with no zero coefficients.
    """

    __slots__ = ("ring", "terms", "degree", "_hash")

    def __init__(self, ring: RingContext, terms=None):
        fld = ring.field
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                m = tuple(m)
                if len(m) != ring.num_vars:
                    raise RingMismatchError(f"monomial {m} has wrong length")
                c = fld(c)
                if m in acc:
                    c = fld.add(acc[m], c)
                acc[m] = c
        items = sorted(((m, c) for m, c in acc.items() if c != 0),
                       key=lambda t: ring.key(t[0]))
        self._init(ring, tuple(items))

    def _init(self, ring, terms, degree=None):
        self.ring = ring
        self.terms = terms
        if degree is None and terms:
            degs = {ring.degree_of_monomial(m) for m, _ in terms}
            if len(degs) > 1:
                raise NonHomogeneousError(
                    f"polynomial has terms of degrees {sorted(degs)}")
            degree = degs.pop()
        self.degree = degree if terms else None
        self._hash = None

    @classmethod
    def _from_sorted(cls, ring, terms, degree=None):
        """Trusted constructor: ``terms`` already canonical."""
        obj = cls.__new__(cls)
        obj._init(ring, terms, degree)
        return obj

    @classmethod
    def zero(cls, ring):
        return cls._from_sorted(ring, ())

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    @property
    def lm(self) -> Monomial:
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    def monomials(self) -> list:
        return [m for m, _ in self.terms]

    def coefficient(self, m: Monomial):
        for mm, c in self.terms:
            if mm == m:
                return c
        return self.ring.field.zero

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_constant(self) -> bool:
        return bool(self.terms) and self.degree == 0 and not any(self.lm)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other):
        if other.ring != self.ring:
            raise RingMismatchError(
                f"{other.ring.describe()} vs {self.ring.describe()}")

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            self._check_ring(other)
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial.zero(self.ring)
            return Polynomial(self.ring, {(0,) * self.ring.num_vars: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        if other.degree != self.degree:
            raise NonHomogeneousError(
                f"adding forms of degrees {self.degree} and {other.degree}")
        fld = self.ring.field
        acc = dict(self.terms)
        for m, c in other.terms:
            v = fld.add(acc.get(m, 0), c)
            if v == 0:
                acc.pop(m, None)
            else:
                acc[m] = v
        items = sorted(acc.items(), key=lambda t: self.ring.key(t[0]))
        return Polynomial._from_sorted(self.ring, tuple(items), self.degree)

    __radd__ = __add__

    def __neg__(self):
        fld = self.ring.field
        return Polynomial._from_sorted(
            self.ring, tuple((m, fld.neg(c)) for m, c in self.terms), self.degree)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        fld = self.ring.field
        c = fld(c)
        if c == 0:
            return Polynomial.zero(self.ring)
        return Polynomial._from_sorted(
            self.ring, tuple((m, fld.mul(a, c)) for m, a in self.terms), self.degree)

    def mul_term(self, mono: Monomial, coeff=1):
        """Multiply by the single term ``coeff * x^mono``."""
        fld = self.ring.field
        coeff = fld(coeff)
        if coeff == 0 or not self.terms:
            return Polynomial.zero(self.ring)
        # multiplying by a monomial preserves the order of terms
        terms = tuple((monomial_mul(m, mono), fld.mul(c, coeff)) for m, c in self.terms)
        return Polynomial._from_sorted(
            self.ring, terms, self.degree + self.ring.degree_of_monomial(mono))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        if not self.terms or not other.terms:
            return Polynomial.zero(self.ring)
        fld = self.ring.field
        acc: dict = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = monomial_mul(m1, m2)
                acc[m] = fld.add(acc.get(m, 0), fld.mul(c1, c2))
        items = sorted(((m, c) for m, c in acc.items() if c != 0),
                       key=lambda t: self.ring.key(t[0]))
        return Polynomial._from_sorted(self.ring, tuple(items),
                                       self.degree + other.degree if items else None)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc))

    def divexact(self, g: "Polynomial") -> "Polynomial":
        """Quotient ``self / g``; raises if ``g`` does not divide ``self``."""
        self._check_ring(g)
        if not g.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        fld = self.ring.field
        inv_lc = fld.inv(g.lc)
        rem = self
        quotient: list = []
        while rem.terms:
            m, c = rem.terms[0]
            if not monomial_divides(g.lm, m):
                raise PolynomialError("inexact polynomial division")
            q = monomial_quotient(m, g.lm)
            qc = fld.mul(c, inv_lc)
            quotient.append((q, qc))
            rem = rem - g.mul_term(q, qc)
        return Polynomial._from_sorted(self.ring, tuple(quotient))

    def embed(self, target: RingContext) -> "Polynomial":
        """Map into a ring with extra trailing variables."""
        pad = (0,) * (target.num_vars - self.ring.num_vars)
        return Polynomial(target, {m + pad: c for m, c in self.terms})

    def project(self, target: RingContext) -> "Polynomial":
        """Drop trailing variables (which must not occur)."""
        n = target.num_vars
        if any(any(m[n:]) for m, _ in self.terms):
            raise PolynomialError("polynomial involves eliminated variables")
        return Polynomial(target, {m[:n]: c for m, c in self.terms})

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_monomial(m: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    fld = f.ring.field
    names = f.ring.variable_names
    out = []
    for i, (m, c) in enumerate(f.terms):
        text = fld.to_text(c)
        negative = text.startswith("-")
        if negative:
            text = text[1:]
        mono = format_monomial(m, names)
        if not mono:
            body = text
        elif text == "1":
            body = mono
        else:
            body = f"{text}*{mono}"
        if i == 0:
            out.append(("-" if negative else "") + body)
        else:
            out.append((" - " if negative else " + ") + body)
    return "".join(out)


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    """The partial derivative of ``f`` with respect to ``x_i``."""
    ring = f.ring
    if not 0 <= i < ring.num_vars:
        raise IndexError(f"variable index {i} out of range")
    fld = ring.field
    terms = []
    for m, c in f.terms:
        e = m[i]
        if e == 0:
            continue
        c2 = fld.mul(c, fld(e))
        if c2 == 0:
            continue
        mm = m[:i] + (e - 1,) + m[i + 1:]
        terms.append((mm, c2))
    # dividing by x_i preserves the monomial order, so terms stay sorted
    if not terms:
        return Polynomial.zero(ring)
    return Polynomial._from_sorted(ring, tuple(terms))


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over the polynomial grammar.

    Values are raw dicts {exponents: coefficient}; homogeneity is only
    checked on the final result.
    """

    def __init__(self, text: str, ring: RingContext):
        self.text = text
        self.ring = ring
        self.fld = ring.field
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(ring.variable_names)}
        self.zero_mono = (0,) * ring.num_vars

    def peek(self):
        return self.tokens[self.i]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, tok[2], self.text)

    def expect(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            self.error(f"expected {op!r}")
        self.advance()

    def parse(self) -> dict:
        value = self.expr()
        if self.peek()[0] != "end":
            self.error("unexpected token")
        return value

    def expr(self) -> dict:
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.advance()
            sign = -1 if tok[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = self._scale(value, -1)
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.advance()
                rhs = self.term()
                value = self._add(value, rhs, 1 if tok[1] == "+" else -1)
            else:
                return value

    def term(self) -> dict:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.advance()
            value = self._mul(value, self.factor())
        return value

    def factor(self) -> dict:
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok[0] != "int":
                self.error("expected a non-negative integer exponent")
            self.advance()
            result = {self.zero_mono: self.fld.one}
            for _ in range(exp_tok[1]):
                result = self._mul(result, base)
            return result
        return base

    def atom(self) -> dict:
        tok = self.peek()
        kind, value, _ = tok
        if kind == "int":
            self.advance()
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.advance()
                den = self.peek()
                if den[0] != "int":
                    self.error("expected an integer denominator")
                self.advance()
                if den[1] == 0:
                    self.error("zero denominator", den)
                try:
                    c = self.fld(Fraction(value, den[1]))
                except NotInvertibleError as exc:
                    raise ParseError(str(exc), den[2], self.text) from None
            else:
                c = self.fld(value)
            return {self.zero_mono: c} if c != 0 else {}
        if kind == "var":
            if value not in self.index:
                self.error(f"unknown variable {value!r}")
            self.advance()
            e = [0] * self.ring.num_vars
            e[self.index[value]] = 1
            return {tuple(e): self.fld.one}
        if kind == "op" and value == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            self.error("unexpected end of input")
        self.error(f"unexpected token {value!r}")

    def _add(self, a, b, sign):
        out = dict(a)
        fld = self.fld
        for m, c in b.items():
            v = fld.add(out.get(m, fld.zero), c) if sign > 0 else fld.sub(out.get(m, fld.zero), c)
            if v == 0:
                out.pop(m, None)
            else:
                out[m] = v
        return out

    def _scale(self, a, s):
        fld = self.fld
        return {m: fld.mul(c, fld(s)) for m, c in a.items()}

    def _mul(self, a, b):
        fld = self.fld
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = monomial_mul(m1, m2)
                out[m] = fld.add(out.get(m, fld.zero), fld.mul(c1, c2))
        return {m: c for m, c in out.items() if c != 0}


def parse_polynomial(text: str, ring: RingContext, allow_zero: bool = False) -> Polynomial:
    """Parse ``text`` into a canonical homogeneous polynomial of ``ring``.

    Raises :class:`ParseError` (with the offending position) on bad syntax or
    unknown variables, :class:`NonHomogeneousError` for mixed degrees and
    :class:`ZeroPolynomialError` when the value vanishes in the field, unless
    ``allow_zero`` is set.
    """
    raw = _Parser(text, ring).parse()
    if not raw and not allow_zero:
        raise ZeroPolynomialError(
            f"{text.strip()!r} is zero over {ring.describe()}; "
            "the zero polynomial is not a valid generator")
    return Polynomial(ring, raw)


def euler_sum(f: Polynomial) -> Polynomial:
    """sum_i x_i * df/dx_i."""
    ring = f.ring
    total = Polynomial.zero(ring)
    for i in range(ring.num_vars):
        d = partial_derivative(f, i)
        if d:
            e = [0] * ring.num_vars
            e[i] = 1
            total = total + d.mul_term(tuple(e))
    return total


def random_form(ring: RingContext, degree: int, rng, density: float = 0.5,
                coeff_range: int = 5) -> Polynomial:
    """A random homogeneous form; used by tests and the recombination step."""
    fld = ring.field
    terms = {}
    for m in monomials_of_degree(ring.num_vars, degree, ring.order):
        if rng.random() < density:
            c = rng.randint(-coeff_range, coeff_range)
            if fld(c) != 0:
                terms[m] = c
    if not terms:
        m = monomials_of_degree(ring.num_vars, degree, ring.order)[0]
        terms[m] = 1
    return Polynomial(ring, terms)


def as_polynomials(ring: RingContext, items: Iterable) -> list:
    out = []
    for it in items:
        if isinstance(it, Polynomial):
            if it.ring != ring:
                raise RingMismatchError("generator from a different ring")
            out.append(it)
        else:
            out.append(parse_polynomial(str(it), ring))
    return out
