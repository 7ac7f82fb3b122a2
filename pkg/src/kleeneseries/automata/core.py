"""Weighted automata (alpha, A, beta) with letter-indexed transition matrices."""
from __future__ import annotations

import json
from dataclasses import dataclass

from ..matrix import Matrix
from ..semiring import INF, N, NINF, Semiring
from ..series import TruncatedSeries


@dataclass(frozen=True)
class WeightedAutomaton:
    """Automaton of dimension ``dim`` over N or N_inf.

    ``trans[a][i][j]`` is the coefficient of letter a in entry (i, j) of the
    transition matrix, so every transition entry is a letter-linear
    combination with no constant term.
    """

    semiring: Semiring
    alphabet: tuple
    alpha: tuple
    beta: tuple
    trans: dict

    def __post_init__(self):
        n = len(self.alpha)
        if len(self.beta) != n:
            raise ValueError("alpha and beta lengths differ")
        if set(self.trans) != set(self.alphabet):
            raise ValueError("transition letters must match the alphabet")
        for a, m in self.trans.items():
            if len(m) != n or any(len(r) != n for r in m):
                raise ValueError(f"transition matrix for {a!r} is not {n}x{n}")
        S = self.semiring
        for x in self._weights():
            if not S.contains(x):
                raise ValueError(f"weight {x!r} is not in {S.name}")

    def _weights(self):
        yield from self.alpha
        yield from self.beta
        for m in self.trans.values():
            for r in m:
                yield from r

    @property
    def dim(self):
        return len(self.alpha)

    @classmethod
    def make(cls, S, alphabet, alpha, beta, trans):
        alphabet = tuple(alphabet)
        n = len(alpha)
        full = {a: tuple(tuple(r) for r in trans.get(a, [[S.zero] * n for _ in range(n)]))
                for a in alphabet}
        return cls(S, alphabet, tuple(alpha), tuple(beta), full)

    @classmethod
    def empty(cls, S, alphabet):
        return cls.make(S, alphabet, (), (), {})

    def alpha_matrix(self, S=None):
        return Matrix(S or self.semiring, 1, self.dim, self.alpha)

    def beta_matrix(self, S=None):
        return Matrix(S or self.semiring, self.dim, 1, self.beta)

    def trans_matrix(self, a, S=None):
        return Matrix.from_rows(S or self.semiring, self.trans[a], cols=self.dim)

    def with_semiring(self, S):
        return WeightedAutomaton(S, self.alphabet, self.alpha, self.beta, self.trans)

    def to_json(self) -> str:
        r = self.semiring.render
        return json.dumps({
            "dim": self.dim,
            "alphabet": list(self.alphabet),
            "alpha": [r(x) for x in self.alpha],
            "beta": [r(x) for x in self.beta],
            "trans": {a: [[r(x) for x in row] for row in self.trans[a]] for a in self.alphabet},
        })

    @classmethod
    def from_json(cls, text, semiring: Semiring | None = None):
        data = json.loads(text) if isinstance(text, str) else text
        raw = [data["alpha"], data["beta"]] + list(data["trans"].values())
        if semiring is None:
            flat = json.dumps(raw)
            semiring = NINF if '"inf"' in flat else N
        p = lambda x: semiring.parse(str(x))
        n = data["dim"]
        alpha = [p(x) for x in data["alpha"]]
        beta = [p(x) for x in data["beta"]]
        if len(alpha) != n:
            raise ValueError("dim does not match alpha")
        trans = {a: [[p(x) for x in row] for row in m] for a, m in data["trans"].items()}
        return cls.make(semiring, data["alphabet"], alpha, beta, trans)


def behavior_coefficients(M: WeightedAutomaton, L: int) -> TruncatedSeries:
    """Coefficients of alpha A* beta on all words of length <= L."""
    S, n = M.semiring, M.dim
    add, mul, is_zero, zero = S.add, S.mul, S.is_zero, S.zero
    beta = M.beta
    out = {}
    level = [("", M.alpha)]
    for length in range(L + 1):
        nxt = []
        for w, v in level:
            c = zero
            for i in range(n):
                if not is_zero(v[i]) and not is_zero(beta[i]):
                    c = add(c, mul(v[i], beta[i]))
            if not is_zero(c):
                out[w] = c
            if length == L:
                continue
            live = [(i, x) for i, x in enumerate(v) if not is_zero(x)]
            if not live:
                continue
            for a in M.alphabet:
                m = M.trans[a]
                u = [zero] * n
                for i, x in live:
                    row = m[i]
                    for j in range(n):
                        y = row[j]
                        if not is_zero(y):
                            u[j] = add(u[j], mul(x, y))
                nxt.append((w + a, u))
        level = nxt
    return TruncatedSeries(S, M.alphabet, L, out)


def trim(M: WeightedAutomaton) -> WeightedAutomaton:
    """Drop states that are not both accessible and co-accessible."""
    S, n = M.semiring, M.dim
    succ = [set() for _ in range(n)]
    for m in M.trans.values():
        for i in range(n):
            for j in range(n):
                if not S.is_zero(m[i][j]):
                    succ[i].add(j)
    pred = [set() for _ in range(n)]
    for i in range(n):
        for j in succ[i]:
            pred[j].add(i)

    def reach(start, edges):
        seen, stack = set(start), list(start)
        while stack:
            i = stack.pop()
            for j in edges[i]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return seen

    acc = reach([i for i in range(n) if not S.is_zero(M.alpha[i])], succ)
    coacc = reach([i for i in range(n) if not S.is_zero(M.beta[i])], pred)
    keep = sorted(acc & coacc)
    if len(keep) == n:
        return M
    return WeightedAutomaton.make(
        S, M.alphabet,
        [M.alpha[i] for i in keep], [M.beta[i] for i in keep],
        {a: [[m[i][j] for j in keep] for i in keep] for a, m in M.trans.items()})


def weight_to_str(x):
    return "inf" if x is INF else str(x)
