"""Rational expression terms: AST, parser, printer, evaluation, normal forms.

Grammar::

    expr := sum
    sum  := prod ('+' prod)*
    prod := star ('.'? star)*
    star := atom '*'*
    atom := '0' | '1' | nat | 'inf' | letter | '(' expr ')'
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NotInStarDomain, TermSyntaxError
from .semiring import INF, NINF, Semiring
from .series import TruncatedSeries, series_combine, series_star

__all__ = [
    "Term", "Zero", "One", "NatConst", "InfConst", "Letter", "Sum", "Prod", "Star", "Plus",
    "ZERO", "ONE", "INF_CONST", "nat", "add", "mul", "plus", "parse_term", "to_text",
    "eval_term", "is_ideal", "const_value", "letters_of", "NormalForm", "normalize",
    "normalize_disjoint", "TermAlgebra", "TERMS",
]


class Term:
    """Immutable AST node with structural equality and a cached hash."""

    __slots__ = ("_h",)
    children: tuple = ()

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other) or self._h != other._h:
            return False
        return self._fields() == other._fields()

    def __hash__(self):
        return self._h

    def _fields(self):
        return self.children

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(map(repr, self._fields()))})"


class Zero(Term):
    __slots__ = ()

    def __init__(self):
        self._h = hash("0")


class One(Term):
    __slots__ = ()

    def __init__(self):
        self._h = hash("1")


class InfConst(Term):
    """Sugar for 1*."""

    __slots__ = ()

    def __init__(self):
        self._h = hash("inf")


class NatConst(Term):
    """Sugar for 1 + ... + 1 (n >= 2)."""

    __slots__ = ("n",)

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("NatConst holds n >= 2; use Zero/One or nat()")
        self.n = n
        self._h = hash(("n", n))

    def _fields(self):
        return (self.n,)


class Letter(Term):
    __slots__ = ("a",)

    def __init__(self, a: str):
        self.a = a
        self._h = hash(("l", a))

    def _fields(self):
        return (self.a,)


class _Binary(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left, self.right = left, right
        self._h = hash((type(self).__name__, left._h, right._h))

    @property
    def children(self):
        return (self.left, self.right)


class Sum(_Binary):
    __slots__ = ()


class Prod(_Binary):
    __slots__ = ()


class _Unary(Term):
    __slots__ = ("arg",)

    def __init__(self, arg: Term):
        self.arg = arg
        self._h = hash((type(self).__name__, arg._h))

    @property
    def children(self):
        return (self.arg,)


class Star(_Unary):
    __slots__ = ()


class Plus(_Unary):
    """Sugar for t.t*, kept so ideal terms are recognisable syntactically."""

    __slots__ = ()


ZERO, ONE, INF_CONST = Zero(), One(), InfConst()


def nat(c) -> Term:
    if c is INF:
        return INF_CONST
    if c == 0:
        return ZERO
    if c == 1:
        return ONE
    return NatConst(c)


# Smart constructors applying only the 0/1 unit laws.

def add(x: Term, y: Term) -> Term:
    if isinstance(x, Zero):
        return y
    if isinstance(y, Zero):
        return x
    return Sum(x, y)


def mul(x: Term, y: Term) -> Term:
    if isinstance(x, Zero) or isinstance(y, Zero):
        return ZERO
    if isinstance(x, One):
        return y
    if isinstance(y, One):
        return x
    return Prod(x, y)


def plus(x: Term) -> Term:
    return ZERO if isinstance(x, Zero) else Plus(x)


def sum_terms(ts) -> Term:
    acc = ZERO
    for t in ts:
        acc = add(acc, t)
    return acc


# ---------------------------------------------------------------- parsing

class _Parser:
    def __init__(self, text, alphabet, allow_inf):
        self.text = text
        self.alphabet = set(alphabet) if alphabet is not None else None
        self.allow_inf = allow_inf
        self.tokens = list(self._lex())
        self.i = 0

    def _lex(self):
        text, i = self.text, 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                yield ("nat", int(text[i:j]), i)
                i = j
            elif text.startswith("inf", i):
                yield ("inf", None, i)
                i += 3
            elif ch in "+.*()":
                yield (ch, None, i)
                i += 1
            elif "a" <= ch <= "z":
                if self.alphabet is not None and ch not in self.alphabet:
                    raise TermSyntaxError(f"unknown letter {ch!r}", i)
                yield ("letter", ch, i)
                i += 1
            else:
                raise TermSyntaxError(f"unexpected character {ch!r}", i)
        yield ("end", None, len(text))

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise TermSyntaxError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        t = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise TermSyntaxError(f"unexpected {tok[0]!r}", tok[2])
        return t

    def sum(self):
        t = self.prod()
        while self.peek()[0] == "+":
            self.take()
            t = Sum(t, self.prod())
        return t

    def prod(self):
        t = self.star()
        while True:
            kind = self.peek()[0]
            if kind == ".":
                self.take()
            elif kind not in ("nat", "inf", "letter", "("):
                return t
            t = Prod(t, self.star())

    def star(self):
        t = self.atom()
        while self.peek()[0] == "*":
            self.take()
            t = Star(t)
        return t

    def atom(self):
        kind, val, pos = self.take()
        if kind == "nat":
            return nat(val)
        if kind == "inf":
            if not self.allow_inf:
                raise TermSyntaxError("'inf' is only accepted over Ninf", pos)
            return INF_CONST
        if kind == "letter":
            return Letter(val)
        if kind == "(":
            t = self.sum()
            self.take(")")
            return t
        raise TermSyntaxError(f"unexpected {kind!r}", pos)


def parse_term(text: str, alphabet=None, allow_inf: bool = True) -> Term:
    return _Parser(text, alphabet, allow_inf).parse()


# ---------------------------------------------------------------- printing

_SUM, _PROD, _STAR = 0, 1, 2


def to_text(t: Term) -> str:
    """Render with minimal parentheses.  Plus(s) is written as s.s*."""
    return _fmt(t, _SUM)


def _fmt(t, ctx):
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, NatConst):
        return str(t.n)
    if isinstance(t, InfConst):
        return "inf"
    if isinstance(t, Letter):
        return t.a
    if isinstance(t, Sum):
        s, level = f"{_fmt(t.left, _SUM)}+{_fmt(t.right, _PROD)}", _SUM
    elif isinstance(t, Prod):
        s, level = f"{_fmt(t.left, _PROD)}.{_fmt(t.right, _STAR)}", _PROD
    elif isinstance(t, Star):
        s, level = _fmt(t.arg, _STAR) + "*", _STAR
    elif isinstance(t, Plus):
        s, level = f"{_fmt(t.arg, _PROD)}.{_fmt(t.arg, _STAR)}*", _PROD
    else:
        raise TypeError(t)
    return f"({s})" if level < ctx else s


def letters_of(t: Term) -> set:
    out, seen, stack = set(), set(), [t]
    while stack:
        x = stack.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        if isinstance(x, Letter):
            out.add(x.a)
        stack.extend(x.children)
    return out


# ---------------------------------------------------------------- evaluation

def eval_term(t: Term, S: Semiring, alphabet, bound: int) -> TruncatedSeries:
    """Evaluate t to a series over S truncated at ``bound``."""
    alphabet = tuple(alphabet)
    memo = {}
    one = TruncatedSeries.constant(S, alphabet, bound, S.one)

    def ev(x):
        key = id(x)
        if key in memo:
            return memo[key][1]
        if isinstance(x, Zero):
            r = TruncatedSeries.zero(S, alphabet, bound)
        elif isinstance(x, One):
            r = one
        elif isinstance(x, NatConst):
            r = TruncatedSeries.constant(S, alphabet, bound, S.from_int(x.n))
        elif isinstance(x, InfConst):
            if not S.in_domain(S.one):
                raise NotInStarDomain(f"inf (= 1*) is outside the star domain of {S.name}")
            r = TruncatedSeries.constant(S, alphabet, bound, S.star(S.one))
        elif isinstance(x, Letter):
            if x.a not in alphabet:
                raise ValueError(f"letter {x.a!r} not in alphabet {alphabet}")
            r = TruncatedSeries.letter(S, alphabet, bound, x.a)
        elif isinstance(x, Sum):
            r = series_combine("add", ev(x.left), ev(x.right))
        elif isinstance(x, Prod):
            r = series_combine("mul", ev(x.left), ev(x.right))
        elif isinstance(x, Plus):
            s = ev(x.arg)
            r = series_combine("mul", s, _star_of(s, x))
        elif isinstance(x, Star):
            r = _star_of(ev(x.arg), x)
        else:
            raise TypeError(x)
        memo[key] = (x, r)
        return r

    return ev(t)


def _star_of(s, node):
    try:
        return series_star(s)
    except NotInStarDomain as exc:
        text = to_text(node)
        if len(text) > 60:
            text = text[:57] + "..."
        raise NotInStarDomain(f"star outside domain in subterm {text}: {exc}") from None


def const_value(t: Term):
    """Value in N_inf of a letter-free term, or None when t has letters."""
    memo = {}

    def ev(x):
        key = id(x)
        if key in memo:
            return memo[key][1]
        if isinstance(x, Zero):
            r = 0
        elif isinstance(x, One):
            r = 1
        elif isinstance(x, NatConst):
            r = x.n
        elif isinstance(x, InfConst):
            r = INF
        elif isinstance(x, Letter):
            r = None
        elif isinstance(x, (Sum, Prod)):
            a, b = ev(x.left), ev(x.right)
            r = None if a is None or b is None else (NINF.add(a, b) if isinstance(x, Sum) else NINF.mul(a, b))
        elif isinstance(x, Star):
            a = ev(x.arg)
            r = None if a is None else NINF.star(a)
        elif isinstance(x, Plus):
            a = ev(x.arg)
            r = None if a is None else NINF.mul(a, NINF.star(a))
        else:
            raise TypeError(x)
        memo[key] = (x, r)
        return r

    return ev(t)


def is_ideal(t: Term) -> bool:
    """Membership in the least class containing 0 and the letters, closed
    under +, under products with ideal terms or N-constants, and under s+."""
    memo = {}

    def nat_const(x):
        v = const_value(x)
        return v is not None and v is not INF

    def ideal(x):
        key = id(x)
        if key in memo:
            return memo[key][1]
        if isinstance(x, (Zero, Letter)):
            r = True
        elif isinstance(x, Sum):
            r = ideal(x.left) and ideal(x.right)
        elif isinstance(x, Plus):
            r = ideal(x.arg)
        elif isinstance(x, Prod):
            l, rt = x.left, x.right
            if isinstance(rt, Star) and rt.arg == l or isinstance(l, Star) and l.arg == rt:
                base = l if isinstance(rt, Star) else rt
                r = ideal(base)
            else:
                r = False
            if not r:
                r = ((ideal(l) and (ideal(rt) or nat_const(rt)))
                     or (ideal(rt) and nat_const(l)))
        else:
            r = False
        memo[key] = (x, r)
        return r

    return ideal(t)


# ---------------------------------------------------------------- normal forms

@dataclass(frozen=True)
class NormalForm:
    """tc + t0 + 1*.tinf with tc in N and t0 ideal; tinf ideal when tc != 0."""

    tc: int
    t0: Term
    tinf: Term

    def to_term(self) -> Term:
        return add(add(nat(self.tc), self.t0), mul(Star(ONE), self.tinf))

    def __str__(self):
        return f"tc={self.tc}, t0={to_text(self.t0)}, tinf={to_text(self.tinf)}"


def _triple_sum(p, s):
    return (NINF.add(p[0], s[0]), add(p[1], s[1]), add(p[2], s[2]))


def _scaled(c, t, left=True):
    """c.t for a finite constant c (keeps the result ideal when t is)."""
    return mul(nat(c), t) if left else mul(t, nat(c))


def _triple_prod(p, s):
    pc, p0, pi = p
    sc, s0, si = s
    c = NINF.mul(pc, sc)
    t0 = ZERO
    extra = []
    # finite part: pc.s0 + p0.sc + p0.s0; an infinite constant moves its
    # product to the 1* part
    if pc is INF:
        extra.append(s0)
    else:
        t0 = add(t0, _scaled(pc, s0))
    if sc is INF:
        extra.append(p0)
    else:
        t0 = add(t0, _scaled(sc, p0, left=False))
    t0 = add(t0, mul(p0, s0))
    # 1*((pc + p0)s_inf + p_inf(sc + s0) + p_inf s_inf), with 1*.1* = 1*
    ti = add(si if pc is INF else _scaled(pc, si), mul(p0, si))
    ti = add(ti, pi if sc is INF else _scaled(sc, pi, left=False))
    ti = add(ti, mul(pi, s0))
    ti = add(ti, mul(pi, si))
    for e in extra:
        ti = add(ti, e)
    return (c, t0, ti)


def _triple_star(s):
    sc, s0, si = s
    u = add(s0, si)
    if sc == 0:
        # 1 + s0+ + 1*(s0 + s_inf)* s_inf s0*, the last factor expanded as
        # z + z.s0+ with z = s_inf + (s0 + s_inf)+ s_inf so it stays ideal
        z = add(si, mul(plus(u), si))
        return (1, plus(s0), add(z, mul(z, plus(s0))))
    # (n + a)* = 1*a*, and 1*(s0 + s_inf)* = 1* + 1*(s0 + s_inf)+
    return (INF, ZERO, plus(u))


def _normalize_triple(t: Term):
    memo = {}

    def nf(x):
        key = id(x)
        if key in memo:
            return memo[key][1]
        if isinstance(x, Zero):
            r = (0, ZERO, ZERO)
        elif isinstance(x, One):
            r = (1, ZERO, ZERO)
        elif isinstance(x, NatConst):
            r = (x.n, ZERO, ZERO)
        elif isinstance(x, InfConst):
            r = (INF, ZERO, ZERO)
        elif isinstance(x, Letter):
            r = (0, x, ZERO)
        elif isinstance(x, Sum):
            r = _triple_sum(nf(x.left), nf(x.right))
        elif isinstance(x, Prod):
            r = _triple_prod(nf(x.left), nf(x.right))
        elif isinstance(x, Star):
            r = _triple_star(nf(x.arg))
        elif isinstance(x, Plus):
            a = nf(x.arg)
            r = _triple_prod(a, _triple_star(a))
        else:
            raise TypeError(x)
        memo[key] = (x, r)
        return r

    return nf(t)


def normalize(t: Term) -> NormalForm:
    """Equivalent form tc + t0 + 1*tinf by structural recursion.

    Internally the constant may be INF (= 1*); it is folded into the 1* part
    as 1*(1 + tinf) on the way out, leaving tc = 0.
    """
    c, t0, ti = _normalize_triple(t)
    if c is INF:
        return NormalForm(0, t0, add(ONE, ti))
    return NormalForm(c, t0, ti)


def normalize_disjoint(t: Term, alphabet) -> NormalForm:
    """normalize, then drop from t0 every word in the support of tinf."""
    from .automata.compile import automaton_to_term, compile_term
    from .automata.dfa import dfa_is_empty, restrict_to_dfa, support_dfa
    from .semiring import N

    form = normalize(t)
    if isinstance(form.t0, Zero) or isinstance(form.tinf, Zero):
        return form
    alphabet = tuple(alphabet)
    R = support_dfa(compile_term(form.tinf, alphabet, NINF))
    M0 = compile_term(form.t0, alphabet, N)
    if dfa_is_empty(support_dfa(restrict_to_dfa(M0, R, "keep"))):
        return form
    kept = restrict_to_dfa(M0, R, "remove")
    if dfa_is_empty(support_dfa(kept)):
        return NormalForm(form.tc, ZERO, form.tinf)
    inner = normalize(automaton_to_term(kept))
    if inner.tc != 0 or not isinstance(inner.tinf, Zero):
        raise AssertionError("restriction of an ideal series must normalise to an ideal term")
    return NormalForm(form.tc, inner.t0, form.tinf)


class TermAlgebra(Semiring):
    """Terms as a (free, symbolic) star semiring for matrix computations."""

    name = "Term"
    zero = ZERO
    one = ONE
    total_star = True
    commutative = False

    def add(self, x, y):
        return add(x, y)

    def mul(self, x, y):
        return mul(x, y)

    def star(self, x):
        return ONE if isinstance(x, Zero) else Star(x)

    def is_zero(self, x):
        return isinstance(x, Zero)

    def contains(self, x):
        return isinstance(x, Term)

    def from_int(self, n):
        return nat(n)

    def render(self, x):
        return to_text(x)


TERMS = TermAlgebra()
