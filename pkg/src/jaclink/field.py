"""Exact coefficient fields: prime fields F_p and the rationals."""

from __future__ import annotations

from fractions import Fraction


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class NotInvertibleError(ZeroDivisionError):
    """A denominator vanishes in the coefficient field."""


class PrimeField:
    """F_p with elements stored as canonical ints in [0, p)."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    zero = 0
    one = 1

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            num, den = value.numerator, value.denominator
            if den % self.p == 0:
                raise NotInvertibleError(
                    f"denominator {den} is not invertible mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise NotInvertibleError("division by zero in F_%d" % self.p)
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def submul(self, a, b, c):
        """Return a - b*c."""
        return (a - b * c) % self.p

    def to_text(self, a) -> str:
        # symmetric representative reads better for small negatives
        if a > self.p // 2:
            return str(a - self.p)
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """Q with elements stored as Fractions in lowest terms."""

    __slots__ = ()

    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def neg(a):
        return -a

    @staticmethod
    def inv(a):
        if a == 0:
            raise NotInvertibleError("division by zero in Q")
        return 1 / a

    @staticmethod
    def div(a, b):
        if b == 0:
            raise NotInvertibleError("division by zero in Q")
        return a / b

    @staticmethod
    def submul(a, b, c):
        return a - b * c

    @staticmethod
    def to_text(a) -> str:
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "RationalField()"


def make_field(characteristic: int):
    if characteristic == 0:
        return RationalField()
    return PrimeField(characteristic)
