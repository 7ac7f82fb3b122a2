"""Exact (partial) star semirings.

Values are plain Python objects: naturals are ``int``, the point at infinity
is the singleton :data:`INF`, and the initial iteration semiring adds
:class:`StarPow` and :data:`STARSTAR`.  A :class:`Semiring` descriptor carries
the operations, so the same value ``3`` can live in N, N_inf or a quotient.
"""
from __future__ import annotations

import functools
import operator
from dataclasses import dataclass
from typing import Callable, Iterable

from .errors import NotInStarDomain

__all__ = [
    "INF", "StarPow", "STARSTAR", "Semiring", "N", "NINF", "BOOL", "INITIAL",
    "quotient", "one_star_semiring", "OneStarSemiring", "combine", "star",
    "quotient_to_k", "collapse_initial", "Morphism", "semiring_from_name",
]


@functools.total_ordering
class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("inf")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


@functools.total_ordering
@dataclass(frozen=True)
class StarPow:
    """The element (1*)^p of the initial iteration semiring, p >= 1."""

    p: int

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("StarPow exponent must be >= 1")

    def __repr__(self):
        return f"1*^{self.p}"

    def __lt__(self, other):
        return _initial_rank(self) < _initial_rank(other)


@functools.total_ordering
class _StarStar:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "1**"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("1**")

    def __lt__(self, other):
        return _initial_rank(self) < _initial_rank(other)

    def __reduce__(self):
        return (_StarStar, ())


STARSTAR = _StarStar()


def _initial_rank(x):
    if isinstance(x, StarPow):
        return (1, x.p)
    if x is STARSTAR:
        return (2, 0)
    return (0, x)


def _is_nat(x):
    return type(x) is int and x >= 0


class Semiring:
    """Descriptor for a semiring with an optional partial star.

    ``in_domain`` is the star domain; it is an ideal in every subclass.
    """

    name = "semiring"
    zero = 0
    one = 1
    total_star = True
    commutative = True

    def add(self, x, y):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def star(self, x):
        raise NotImplementedError

    def in_domain(self, x):
        return True

    def contains(self, x):
        raise NotImplementedError

    def from_int(self, n: int):
        """Image of the natural n under the unique morphism from N."""
        raise NotImplementedError

    def leq(self, x, y):
        """Natural order (coincides with the sum order on these carriers)."""
        raise NotImplementedError

    def elements(self):
        """A finite carrier, or a representative finite sample for infinite ones."""
        raise NotImplementedError

    def render(self, x) -> str:
        return repr(x)

    def parse(self, text: str):
        text = text.strip()
        if text == "inf":
            value = INF
        else:
            value = int(text)
        value = self.from_int(value) if type(value) is int else value
        if not self.contains(value):
            raise ValueError(f"{text!r} is not an element of {self.name}")
        return value

    def sum(self, xs: Iterable):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def product(self, xs: Iterable):
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def is_zero(self, x):
        return x == self.zero

    def _key(self):
        return (type(self).__name__,)

    def __eq__(self, other):
        return self is other or (isinstance(other, Semiring) and self._key() == other._key())

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return self.name


class NaturalSemiring(Semiring):
    """N with star defined only on the ideal {0}."""

    name = "N"
    total_star = False
    add = staticmethod(operator.add)
    mul = staticmethod(operator.mul)

    def star(self, x):
        if x != 0:
            raise NotInStarDomain(f"{x}* is undefined in N")
        return 1

    def in_domain(self, x):
        return x == 0

    def contains(self, x):
        return _is_nat(x)

    def from_int(self, n):
        return n

    def leq(self, x, y):
        return x <= y

    def elements(self):
        return [0, 1, 2, 3]

    def render(self, x):
        return str(x)

    def parse(self, text):
        if text.strip() == "inf":
            raise ValueError("inf is not an element of N")
        return super().parse(text)


class ExtendedNaturalSemiring(Semiring):
    """N completed with INF; 0* = 1 and n* = INF for n != 0."""

    name = "Ninf"

    @staticmethod
    def add(x, y):
        if x is INF or y is INF:
            return INF
        return x + y

    @staticmethod
    def mul(x, y):
        if x == 0 or y == 0:
            return 0
        if x is INF or y is INF:
            return INF
        return x * y

    def star(self, x):
        return 1 if x == 0 else INF

    def contains(self, x):
        return x is INF or _is_nat(x)

    def from_int(self, n):
        return n

    def leq(self, x, y):
        return y is INF or (x is not INF and x <= y)

    def elements(self):
        return [0, 1, 2, 3, INF]

    def render(self, x):
        return "inf" if x is INF else str(x)


class BooleanSemiring(Semiring):
    name = "Bool"

    @staticmethod
    def add(x, y):
        return x | y

    @staticmethod
    def mul(x, y):
        return x & y

    def star(self, x):
        return 1

    def contains(self, x):
        return x in (0, 1) and type(x) is int

    def from_int(self, n):
        return 1 if n else 0

    def leq(self, x, y):
        return x <= y

    def elements(self):
        return [0, 1]

    def render(self, x):
        return str(x)

    def parse(self, text):
        if text.strip() == "inf":
            return 1
        return super().parse(text)


class QuotientSemiring(Semiring):
    """N_inf with every value >= k collapsed onto k; 1* = k."""

    total_star = True

    def __init__(self, k: int):
        if k < 1:
            raise ValueError("modulus must be >= 1")
        self.k = k
        self.name = f"k:{k}"

    def add(self, x, y):
        return min(x + y, self.k)

    def mul(self, x, y):
        return min(x * y, self.k)

    def star(self, x):
        return 1 if x == 0 else self.k

    def contains(self, x):
        return type(x) is int and 0 <= x <= self.k

    def from_int(self, n):
        return min(n, self.k)

    def leq(self, x, y):
        return x <= y

    def elements(self):
        return list(range(self.k + 1))

    def render(self, x):
        return str(x)

    def parse(self, text):
        text = text.strip()
        if text == "inf":
            return self.k
        return super().parse(text)

    def _key(self):
        return ("QuotientSemiring", self.k)


class InitialIterationSemiring(Semiring):
    """0 < 1 < 2 < ... < 1* < (1*)^2 < ... < 1**.

    Integers add and multiply as usual; once an operand is at least 1* the sum
    is the maximum.  A positive integer n times (1*)^p is (1*)^p, because
    n(1*)^p = (1*)^p + ... + (1*)^p.
    """

    name = "Initial"

    @staticmethod
    def add(x, y):
        if type(x) is int and type(y) is int:
            return x + y
        return x if _initial_rank(x) >= _initial_rank(y) else y

    @staticmethod
    def mul(x, y):
        if x == 0 or y == 0:
            return 0
        if x is STARSTAR or y is STARSTAR:
            return STARSTAR
        if type(x) is int and type(y) is int:
            return x * y
        if type(x) is int:
            return y
        if type(y) is int:
            return x
        return StarPow(x.p + y.p)

    def star(self, x):
        if x == 0:
            return 1
        if x == 1:
            return StarPow(1)
        return STARSTAR

    def contains(self, x):
        return _is_nat(x) or isinstance(x, StarPow) or x is STARSTAR

    def from_int(self, n):
        return n

    def leq(self, x, y):
        return _initial_rank(x) <= _initial_rank(y)

    def elements(self):
        return [0, 1, 2, 3, 4, StarPow(1), StarPow(2), StarPow(3), StarPow(4), STARSTAR]

    def render(self, x):
        if isinstance(x, StarPow):
            return "1*" if x.p == 1 else f"1*^{x.p}"
        return repr(x)

    def parse(self, text):
        text = text.strip()
        if text == "1**":
            return STARSTAR
        if text == "1*":
            return StarPow(1)
        if text.startswith("1*^"):
            return StarPow(int(text[3:]))
        return super().parse(text)


class OneStarSemiring(Semiring):
    """The semiring 1*A = {1*a} with unit 1* and star x -> 1*x*.

    ``embed`` is the surjective *-morphism a -> 1*a from the inner semiring.
    """

    total_star = True

    def __init__(self, inner: Semiring):
        if not inner.total_star or inner == INITIAL:
            raise ValueError(f"1*A construction needs Ninf, Bool or a quotient, not {inner}")
        self.inner = inner
        self.name = f"1*{inner.name}"
        self.one = inner.star(inner.one)
        self.zero = inner.zero

    def embed(self, a):
        return self.inner.mul(self.one, a)

    def add(self, x, y):
        return self.inner.add(x, y)

    def mul(self, x, y):
        return self.inner.mul(x, y)

    def star(self, x):
        return self.inner.mul(self.one, self.inner.star(x))

    def contains(self, x):
        return self.inner.contains(x) and self.embed(x) == x

    def from_int(self, n):
        return self.embed(self.inner.from_int(n))

    def leq(self, x, y):
        return self.inner.leq(x, y)

    def elements(self):
        seen = []
        for a in self.inner.elements():
            v = self.embed(a)
            if v not in seen:
                seen.append(v)
        return seen

    def render(self, x):
        return self.inner.render(x)

    def parse(self, text):
        value = self.inner.parse(text)
        if not self.contains(value):
            raise ValueError(f"{text!r} is not in {self.name}")
        return value

    def _key(self):
        return ("OneStarSemiring", self.inner._key())


N = NaturalSemiring()
NINF = ExtendedNaturalSemiring()
BOOL = BooleanSemiring()
INITIAL = InitialIterationSemiring()


@functools.lru_cache(maxsize=None)
def quotient(k: int) -> QuotientSemiring:
    return QuotientSemiring(k)


def one_star_semiring(inner: Semiring) -> OneStarSemiring:
    if inner == N:
        raise ValueError("1* is undefined in N; the 1*A construction is unsupported")
    return OneStarSemiring(inner)


def semiring_from_name(name: str) -> Semiring:
    """Parse the command-line spelling: n, ninf, bool, init, k:<int>."""
    key = name.strip().lower()
    table = {"n": N, "ninf": NINF, "bool": BOOL, "b": BOOL, "init": INITIAL, "initial": INITIAL}
    if key in table:
        return table[key]
    if key.startswith("k:"):
        return quotient(int(key[2:]))
    raise ValueError(f"unknown semiring {name!r}")


def _check_member(S, x):
    if not S.contains(x):
        raise TypeError(f"{x!r} is not an element of {S.name}")


def combine(S: Semiring, op: str, x, y):
    """Checked ``add``/``mul`` of two elements of S."""
    _check_member(S, x)
    _check_member(S, y)
    if op == "add":
        return S.add(x, y)
    if op == "mul":
        return S.mul(x, y)
    raise ValueError(f"unknown operation {op!r}")


def star(S: Semiring, a):
    _check_member(S, a)
    if not S.in_domain(a):
        raise NotInStarDomain(f"{S.render(a)} is outside the star domain of {S.name}")
    return S.star(a)


def quotient_to_k(k: int, a):
    """The *-morphism N_inf -> k: min(a, k), with INF sent to k."""
    if k < 1:
        raise ValueError("modulus must be >= 1")
    return k if a is INF else min(a, k)


def collapse_initial(x):
    """Initial iteration semiring -> N_inf, identifying 1* with 1**."""
    return x if type(x) is int else INF


@dataclass(frozen=True)
class Morphism:
    source: Semiring
    target: Semiring
    fn: Callable
    name: str = "h"

    def __call__(self, x):
        return self.fn(x)

    @classmethod
    def identity(cls, S):
        return cls(S, S, lambda x: x, "id")

    @classmethod
    def quotient(cls, k, source=NINF):
        return cls(source, quotient(k), functools.partial(quotient_to_k, k), f"quotient_to_{k}")

    @classmethod
    def collapse(cls):
        return cls(INITIAL, NINF, collapse_initial, "collapse")

    @classmethod
    def embed(cls):
        return cls(N, NINF, lambda x: x, "embed")

    @classmethod
    def support(cls, source=NINF):
        return cls(source, BOOL, lambda x: 0 if source.is_zero(x) else 1, "support")
