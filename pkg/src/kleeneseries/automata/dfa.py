"""Support languages of N / N_inf automata as complete DFAs."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import WeightedAutomaton, trim


@dataclass(frozen=True)
class SupportDFA:
    alphabet: tuple
    n_states: int
    start: int
    accepting: frozenset
    delta: dict  # (state, letter) -> state, total

    def step(self, q, a):
        return self.delta[(q, a)]

    def accepts(self, word: str) -> bool:
        q = self.start
        for a in word:
            q = self.delta[(q, a)]
        return q in self.accepting


def support_dfa(M: WeightedAutomaton) -> SupportDFA:
    """Subset construction on the Boolean image of M.

    N and N_inf have no zero divisors and no additive inverses, so a word is
    in the support of |M| exactly when some path labelled by it has nonzero
    weight.
    """
    S, n = M.semiring, M.dim
    nz = lambda x: not S.is_zero(x)
    succ = {a: [frozenset(j for j in range(n) if nz(M.trans[a][i][j])) for i in range(n)]
            for a in M.alphabet}
    final = {i for i in range(n) if nz(M.beta[i])}
    start = frozenset(i for i in range(n) if nz(M.alpha[i]))
    index = {start: 0}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        X = queue.popleft()
        for a in M.alphabet:
            Y = frozenset().union(*(succ[a][i] for i in X)) if X else frozenset()
            if Y not in index:
                index[Y] = len(order)
                order.append(Y)
                queue.append(Y)
            delta[(index[X], a)] = index[Y]
    accepting = frozenset(index[X] for X in order if X & final)
    return SupportDFA(M.alphabet, len(order), 0, accepting, delta)


def dfa_is_empty(D: SupportDFA) -> bool:
    return dfa_shortest_word(D) is None


def dfa_shortest_word(D: SupportDFA):
    """Shortest accepted word (length-lex least), or None."""
    seen = {D.start: ""}
    queue = deque([D.start])
    while queue:
        q = queue.popleft()
        if q in D.accepting:
            return seen[q]
        for a in D.alphabet:
            r = D.delta[(q, a)]
            if r not in seen:
                seen[r] = seen[q] + a
                queue.append(r)
    return None


def dfa_difference(D1: SupportDFA, D2: SupportDFA):
    """Shortest word accepted by exactly one of the DFAs, or None if the
    languages agree.  Product construction with breadth-first reachability."""
    if D1.alphabet != D2.alphabet:
        raise ValueError("alphabet mismatch")
    start = (D1.start, D2.start)
    seen = {start: ""}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if (p in D1.accepting) != (q in D2.accepting):
            return seen[(p, q)]
        for a in D1.alphabet:
            nxt = (D1.delta[(p, a)], D2.delta[(q, a)])
            if nxt not in seen:
                seen[nxt] = seen[(p, q)] + a
                queue.append(nxt)
    return None


def dfa_equivalent(D1: SupportDFA, D2: SupportDFA) -> bool:
    return dfa_difference(D1, D2) is None


def restrict_to_dfa(M: WeightedAutomaton, D: SupportDFA, mode: str = "keep") -> WeightedAutomaton:
    """Product automaton keeping (mode='keep') or removing (mode='remove')
    the words accepted by D; other coefficients become 0."""
    if mode not in ("keep", "remove"):
        raise ValueError("mode must be 'keep' or 'remove'")
    if tuple(D.alphabet) != tuple(M.alphabet):
        raise ValueError("alphabet mismatch")
    S, n, q = M.semiring, M.dim, D.n_states
    z = S.zero
    size = n * q
    idx = lambda i, p: i * q + p
    alpha = [z] * size
    for i in range(n):
        alpha[idx(i, D.start)] = M.alpha[i]
    beta = [z] * size
    keep = mode == "keep"
    for i in range(n):
        for p in range(q):
            if (p in D.accepting) == keep:
                beta[idx(i, p)] = M.beta[i]
    trans = {}
    for a in M.alphabet:
        rows = [[z] * size for _ in range(size)]
        m = M.trans[a]
        for i in range(n):
            for j in range(n):
                w = m[i][j]
                if S.is_zero(w):
                    continue
                for p in range(q):
                    rows[idx(i, p)][idx(j, D.delta[(p, a)])] = w
        trans[a] = rows
    return trim(WeightedAutomaton.make(S, M.alphabet, alpha, beta, trans))
