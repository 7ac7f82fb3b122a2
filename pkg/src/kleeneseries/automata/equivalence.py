"""Deciding equality of behaviors over N and N_inf."""
from __future__ import annotations

from collections import deque
from fractions import Fraction

from ..semiring import INF, N, NINF
from ..terms import Term, normalize_disjoint
from .compile import automaton_to_term, compile_term
from .core import WeightedAutomaton
from .dfa import dfa_difference, support_dfa


def _reduce(basis, v):
    """Reduce v against an echelon basis {pivot: row}; returns the remainder."""
    v = list(v)
    for pivot, row in basis:
        c = v[pivot]
        if c:
            f = c / row[pivot]
            v = [x - f * y for x, y in zip(v, row)]
    return v


def n_difference(M1: WeightedAutomaton, M2: WeightedAutomaton):
    """A word on which two N-automata differ, or None when |M1| = |M2|.

    Works in Q: the forward vectors (alpha1 A1_w, alpha2 A2_w) are explored
    breadth-first and kept only when linearly independent of those already
    seen, so every explored word has length < m + n.  The behaviors agree iff
    (beta1, -beta2) annihilates every kept vector, i.e. iff they agree on all
    words of length <= m + n - 1.
    """
    if M1.alphabet != M2.alphabet:
        raise ValueError("alphabet mismatch")
    for M in (M1, M2):
        if M.semiring != N:
            raise ValueError("n_difference needs automata over N")
    m, n = M1.dim, M2.dim
    size = m + n
    final = [Fraction(x) for x in M1.beta] + [-Fraction(x) for x in M2.beta]
    trans = {}
    for a in M1.alphabet:
        T = [[0] * size for _ in range(size)]
        for i in range(m):
            for j in range(m):
                T[i][j] = M1.trans[a][i][j]
        for i in range(n):
            for j in range(n):
                T[m + i][m + j] = M2.trans[a][i][j]
        trans[a] = T
    start = [Fraction(x) for x in M1.alpha] + [Fraction(x) for x in M2.alpha]
    basis = []
    queue = deque()

    def consider(v, w):
        r = _reduce(basis, v)
        pivot = next((i for i, x in enumerate(r) if x), None)
        if pivot is None:
            return None
        basis.append((pivot, r))
        if sum(x * y for x, y in zip(v, final)):
            return w
        queue.append((v, w))
        return None

    hit = consider(start, "")
    while hit is None and queue:
        v, w = queue.popleft()
        for a in M1.alphabet:
            T = trans[a]
            u = [sum(v[i] * T[i][j] for i in range(size) if v[i]) for j in range(size)]
            hit = consider(u, w + a)
            if hit is not None:
                break
    return hit


def difference(t1: Term, t2: Term, S, alphabet):
    """A word where |t1| and |t2| differ, or None when they are equal.

    Over N both terms are compiled and compared with :func:`n_difference`.
    Over N_inf both are brought to support-disjoint normal form
    tc + t0 + 1*tinf; then the supports of tinf are compared as regular
    languages, the constants exactly, and the ideal parts t0 over N.
    """
    alphabet = tuple(alphabet)
    if S == N:
        return n_difference(compile_term(t1, alphabet, N), compile_term(t2, alphabet, N))
    if S != NINF:
        raise ValueError("equivalence is decided over N or Ninf")
    f1, f2 = normalize_disjoint(t1, alphabet), normalize_disjoint(t2, alphabet)
    R1 = support_dfa(compile_term(f1.tinf, alphabet, NINF))
    R2 = support_dfa(compile_term(f2.tinf, alphabet, NINF))
    w = dfa_difference(R1, R2)
    if w is not None:
        return w
    if f1.tc != f2.tc:
        return ""
    return n_difference(compile_term(f1.t0, alphabet, N), compile_term(f2.t0, alphabet, N))


def equivalent(t1: Term, t2: Term, S, alphabet) -> bool:
    return difference(t1, t2, S, alphabet) is None


def automata_difference(M1: WeightedAutomaton, M2: WeightedAutomaton):
    if M1.alphabet != M2.alphabet:
        raise ValueError("alphabet mismatch")
    if M1.semiring == N and M2.semiring == N:
        return n_difference(M1, M2)
    return difference(automaton_to_term(M1), automaton_to_term(M2), NINF, M1.alphabet)


def has_infinite_weight(M: WeightedAutomaton) -> bool:
    return any(x is INF for x in M._weights())
