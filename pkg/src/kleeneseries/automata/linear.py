"""Morphic images of automata and solutions of x = sx + r."""
from __future__ import annotations

from ..matrix import Matrix, mat_mul, mat_star
from ..semiring import INF, N, NINF, Semiring
from ..series import TruncatedSeries, series_combine, series_star
from .core import WeightedAutomaton


def morphic_image(M: WeightedAutomaton, target: Semiring, h: dict):
    """(alpha h)(A h)*(beta h) in ``target`` for an automaton over N.

    Weights go through the unique morphism from N; each transition entry
    becomes sum over letters of weight * h(letter).
    """
    if M.semiring != N:
        raise ValueError("morphic_image expects an automaton over N")
    n = M.dim
    if n == 0:
        return target.zero
    lift = target.from_int

    def entry(i, j):
        return target.sum(target.mul(lift(M.trans[a][i][j]), h[a])
                          for a in M.alphabet if M.trans[a][i][j])

    A = Matrix.build(target, n, n, entry)
    alpha = Matrix(target, 1, n, tuple(lift(x) for x in M.alpha))
    beta = Matrix(target, n, 1, tuple(lift(x) for x in M.beta))
    return mat_mul(mat_mul(alpha, mat_star(A)), beta).entries[0]


def _split_constant(s):
    c = s.coeffs.get("", s.semiring.zero)
    proper = TruncatedSeries(s.semiring, s.alphabet, s.bound, {w: x for w, x in s.coeffs.items() if w})
    return c, proper


def _scalar(c, s):
    return TruncatedSeries(s.semiring, s.alphabet, s.bound, {w: s.semiring.mul(c, x) for w, x in s.coeffs.items()})


def solve_linear(s: TruncatedSeries, r: TruncatedSeries, t: TruncatedSeries) -> TruncatedSeries:
    """A solution of x = sx + r over N_inf, parametrised by t.

    With k the constant term of s and s0 its proper part:
    k = 0 gives the unique solution s*r; k = 1 gives s*r + 1*s0+ t + t;
    k >= 2 (or INF) gives s*(r + t).
    """
    for x in (s, r, t):
        if x.semiring != NINF:
            raise ValueError("solve_linear works over Ninf")
    k, s0 = _split_constant(s)
    least = series_combine("mul", series_star(s), r)
    if k == 0:
        return least
    if k == 1:
        s0_plus = series_combine("mul", s0, series_star(s0))
        extra = _scalar(INF, series_combine("mul", s0_plus, t))
        return series_combine("add", series_combine("add", least, extra), t)
    return series_combine("mul", series_star(s), series_combine("add", r, t))
