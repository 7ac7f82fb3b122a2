"""Formal power series over a finite alphabet, truncated at an explicit bound.

Words are Python strings of single-letter symbols.  A series stores only its
nonzero coefficients.  ``bound=None`` marks a polynomial: finite support and
no truncation.
"""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Mapping

from .errors import NotAMorphismExtension, NotInStarDomain, OutOfWindow
from .semiring import INF, N, NINF, Morphism, Semiring

__all__ = [
    "TruncatedSeries", "Polynomial", "series_combine", "series_star", "coefficient",
    "split_finite_infinite", "map_coefficients", "decompose_by_value",
    "polynomial_eval", "SeriesSemiring", "words", "length_lex_key",
]

EPS = ""


def words(alphabet, max_len: int):
    """All words over ``alphabet`` of length <= max_len in length-lex order."""
    for n in range(max_len + 1):
        for w in itertools.product(alphabet, repeat=n):
            yield "".join(w)


def length_lex_key(alphabet):
    index = {a: i for i, a in enumerate(alphabet)}
    return lambda w: (len(w), [index[c] for c in w])


def _min_bound(b1, b2):
    if b1 is None:
        return b2
    if b2 is None:
        return b1
    return min(b1, b2)


class TruncatedSeries:
    __slots__ = ("semiring", "alphabet", "bound", "coeffs", "_hash")

    def __init__(self, semiring: Semiring, alphabet: Iterable[str], bound: int | None,
                 coeffs: Mapping[str, object] | None = None):
        self.semiring = semiring
        self.alphabet = tuple(alphabet)
        self.bound = bound
        if bound is not None and bound < 0:
            raise ValueError("truncation bound must be >= 0")
        letters = set(self.alphabet)
        clean = {}
        for w, c in (coeffs or {}).items():
            if any(ch not in letters for ch in w):
                raise ValueError(f"word {w!r} uses letters outside {self.alphabet}")
            if bound is not None and len(w) > bound:
                continue
            if not semiring.is_zero(c):
                clean[w] = c
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, semiring, alphabet, bound, coeffs):
        s = cls.__new__(cls)
        s.semiring, s.alphabet, s.bound, s.coeffs, s._hash = semiring, alphabet, bound, coeffs, None
        return s

    @classmethod
    def constant(cls, S, alphabet, bound, c):
        return cls(S, alphabet, bound, {EPS: c})

    @classmethod
    def letter(cls, S, alphabet, bound, a, c=None):
        return cls(S, alphabet, bound, {a: S.one if c is None else c})

    @classmethod
    def zero(cls, S, alphabet, bound):
        return cls(S, alphabet, bound, {})

    @property
    def is_proper(self):
        return EPS not in self.coeffs

    @property
    def support(self):
        return set(self.coeffs)

    def __getitem__(self, w):
        return coefficient(self, w)

    def items(self):
        """Nonzero coefficients in length-lex order."""
        key = length_lex_key(self.alphabet)
        return sorted(self.coeffs.items(), key=lambda kv: key(kv[0]))

    def with_bound(self, bound):
        return TruncatedSeries(self.semiring, self.alphabet, bound, self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.semiring == other.semiring
                and self.alphabet == other.alphabet and self.bound == other.bound
                and self.coeffs == other.coeffs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.semiring, self.alphabet, self.bound, frozenset(self.coeffs.items())))
        return self._hash

    def __add__(self, other):
        return series_combine("add", self, other)

    def __mul__(self, other):
        return series_combine("mul", self, other)

    def render(self, compact=False) -> str:
        sep = ":" if compact else ": "
        r = self.semiring.render
        return "{" + ", ".join(f"{w or 'ε'}{sep}{r(c)}" for w, c in self.items()) + "}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"TruncatedSeries({self.semiring.name}, L={self.bound}, {self.render()})"

    def to_json(self):
        return json.dumps({w or "ε": self.semiring.render(c) for w, c in self.items()},
                          ensure_ascii=False)


def Polynomial(semiring, alphabet, coeffs=None):
    """A series with finite support and no truncation bound."""
    return TruncatedSeries(semiring, alphabet, None, coeffs)


def _check_compatible(s, t):
    if s.alphabet != t.alphabet:
        raise ValueError(f"alphabet mismatch: {s.alphabet} vs {t.alphabet}")
    if s.semiring != t.semiring:
        raise TypeError(f"semiring mismatch: {s.semiring} vs {t.semiring}")


def _add(s, t, bound):
    S = s.semiring
    out = {w: c for w, c in s.coeffs.items() if bound is None or len(w) <= bound}
    for w, c in t.coeffs.items():
        if bound is not None and len(w) > bound:
            continue
        if w in out:
            v = S.add(out[w], c)
            if S.is_zero(v):
                del out[w]
            else:
                out[w] = v
        else:
            out[w] = c
    return out


def _mul(s, t, bound):
    S = s.semiring
    add, mul, is_zero = S.add, S.mul, S.is_zero
    by_len = {}
    for v, c in t.coeffs.items():
        by_len.setdefault(len(v), []).append((v, c))
    lens = sorted(by_len)
    out = {}
    get = out.get
    for u, cu in s.coeffs.items():
        room = None if bound is None else bound - len(u)
        for n in lens:
            if room is not None and n > room:
                break
            for v, cv in by_len[n]:
                p = mul(cu, cv)
                if is_zero(p):
                    continue
                w = u + v
                prev = get(w)
                out[w] = p if prev is None else add(prev, p)
    return {w: c for w, c in out.items() if not is_zero(c)}


def series_combine(op: str, s: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """Pointwise sum or Cauchy product; the result bound is the smaller bound."""
    _check_compatible(s, t)
    bound = _min_bound(s.bound, t.bound)
    if op == "add":
        coeffs = _add(s, t, bound)
    elif op == "mul":
        coeffs = _mul(s, t, bound)
    else:
        raise ValueError(f"unknown operation {op!r}")
    return TruncatedSeries._raw(s.semiring, s.alphabet, bound, coeffs)


def _scale(c, s, left=True):
    S = s.semiring
    out = {}
    for w, x in s.coeffs.items():
        v = S.mul(c, x) if left else S.mul(x, c)
        if not S.is_zero(v):
            out[w] = v
    return TruncatedSeries._raw(S, s.alphabet, s.bound, out)


def _proper_star(s):
    # s^n has no word shorter than n, so bound + 1 Horner steps are exact.
    S, L = s.semiring, s.bound
    one = TruncatedSeries._raw(S, s.alphabet, L, {EPS: S.one})
    y = one
    for _ in range(L):
        y = series_combine("add", series_combine("mul", s, y), one)
    return y


def series_star(s: TruncatedSeries) -> TruncatedSeries:
    """Star of a truncated series.

    Proper series: the sum of powers up to the bound.  Otherwise
    s = s0 + r with s0 the constant term and s* = (s0* r)* s0*, which needs a
    star on the coefficient semiring.
    """
    if s.bound is None:
        raise ValueError("star needs a truncation bound")
    if s.is_proper:
        return _proper_star(s)
    S = s.semiring
    s0 = s.coeffs[EPS]
    if not S.in_domain(s0):
        raise NotInStarDomain(f"constant term {S.render(s0)} is outside the star domain of {S.name}")
    s0_star = S.star(s0)
    r = TruncatedSeries._raw(S, s.alphabet, s.bound, {w: c for w, c in s.coeffs.items() if w})
    inner = _proper_star(_scale(s0_star, r))
    return _scale(s0_star, inner, left=False)


def coefficient(s: TruncatedSeries, w: str):
    if s.bound is not None and len(w) > s.bound:
        raise OutOfWindow(f"|{w}| = {len(w)} exceeds truncation bound {s.bound}")
    return s.coeffs.get(w, s.semiring.zero)


def split_finite_infinite(s: TruncatedSeries):
    """Split an N_inf series into its finite part (over N) and its INF part."""
    if s.semiring != NINF:
        raise TypeError("split_finite_infinite expects a series over Ninf")
    fin = {w: c for w, c in s.coeffs.items() if c is not INF}
    inf = {w: c for w, c in s.coeffs.items() if c is INF}
    return (TruncatedSeries._raw(N, s.alphabet, s.bound, fin),
            TruncatedSeries._raw(NINF, s.alphabet, s.bound, inf))


def map_coefficients(s: TruncatedSeries, h: Morphism) -> TruncatedSeries:
    if h.source != s.semiring:
        raise TypeError(f"morphism source {h.source} does not match series semiring {s.semiring}")
    return TruncatedSeries(h.target, s.alphabet, s.bound, {w: h(c) for w, c in s.coeffs.items()})


def decompose_by_value(s: TruncatedSeries, k: int) -> list:
    """Parts s_0..s_k with s_i (i < k) holding coefficients equal to i and
    s_k holding those >= k.  s_0 is always zero since zeros are not stored."""
    if k < 1:
        raise ValueError("modulus must be >= 1")
    parts = [dict() for _ in range(k + 1)]
    for w, c in s.coeffs.items():
        parts[min(c, k)][w] = c
    return [TruncatedSeries._raw(s.semiring, s.alphabet, s.bound, p) for p in parts]


def polynomial_eval(p: TruncatedSeries, hS, h: Mapping[str, object], target: Semiring):
    """Evaluate a polynomial under coefficient map ``hS`` and letter map ``h``.

    Raises NotAMorphismExtension when a coefficient image fails to commute
    with a letter image in a non-commutative target.
    """
    images = {w: hS(c) for w, c in p.coeffs.items()}
    if not target.commutative:
        letters = {a for w in p.coeffs for a in w}
        for w, x in images.items():
            for a in letters:
                ha = h[a]
                if target.mul(x, ha) != target.mul(ha, x):
                    raise NotAMorphismExtension(f"image of coefficient of {w or 'ε'} does not commute with image of {a}")
    acc = target.zero
    for w, _ in p.items():
        term = images[w]
        for a in w:
            term = target.mul(term, h[a])
        acc = target.add(acc, term)
    return acc


class SeriesSemiring(Semiring):
    """Truncated series as a semiring; star is total iff the coefficients' is."""

    commutative = False

    def __init__(self, coeff: Semiring, alphabet, bound: int):
        self.coeff = coeff
        self.alphabet = tuple(alphabet)
        self.bound = bound
        self.total_star = coeff.total_star
        self.name = f"{coeff.name}<<{''.join(self.alphabet)}>>_{bound}"
        self.zero = TruncatedSeries.zero(coeff, self.alphabet, bound)
        self.one = TruncatedSeries.constant(coeff, self.alphabet, bound, coeff.one)

    def add(self, x, y):
        return series_combine("add", x, y)

    def mul(self, x, y):
        return series_combine("mul", x, y)

    def star(self, x):
        return series_star(x)

    def is_zero(self, x):
        return not x.coeffs

    def in_domain(self, x):
        return self.total_star or x.is_proper

    def contains(self, x):
        return (isinstance(x, TruncatedSeries) and x.semiring == self.coeff
                and x.alphabet == self.alphabet and x.bound == self.bound)

    def from_int(self, n):
        return TruncatedSeries.constant(self.coeff, self.alphabet, self.bound, self.coeff.from_int(n))

    def lift(self, c):
        return TruncatedSeries.constant(self.coeff, self.alphabet, self.bound, c)

    def letter(self, a):
        return TruncatedSeries.letter(self.coeff, self.alphabet, self.bound, a)

    def leq(self, x, y):
        """Pointwise coefficient order."""
        leq, zero = self.coeff.leq, self.coeff.zero
        return all(leq(c, y.coeffs.get(w, zero)) for w, c in x.coeffs.items())

    def render(self, x):
        return x.render()

    def _key(self):
        return ("SeriesSemiring", self.coeff._key(), self.alphabet, self.bound)
