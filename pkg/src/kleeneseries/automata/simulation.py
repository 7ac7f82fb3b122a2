"""Functional simulations, dual simulations and atomistic refinement."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import PremiseViolated, SearchBudgetExceeded
from ..matrix import Matrix, functional, is_functional, functional_map, mat_mul, row_couple
from ..semiring import N, Semiring
from ..series import Polynomial, SeriesSemiring
from .core import WeightedAutomaton


@dataclass(frozen=True)
class SimulationWitness:
    rho: tuple          # the function {0..m-1} -> {0..n-1}
    direction: str      # "forward" or "dual"

    def matrix(self, n, S=N):
        return functional(self.rho, n, S)


def _as_map(rho, n):
    if isinstance(rho, Matrix):
        if rho.cols != n:
            raise ValueError(f"rho has {rho.cols} columns, expected {n}")
        return functional_map(rho)
    return tuple(rho)


def check_simulation(M: WeightedAutomaton, Nb: WeightedAutomaton, rho, direction="forward") -> bool:
    """Do alpha.rho = gamma, A.rho = rho.B (every letter) and rho.delta = beta hold
    (forward), or gamma.rho^T = alpha, B.rho^T = rho^T.A and rho^T.beta = delta (dual)?"""
    if M.semiring != Nb.semiring or M.alphabet != Nb.alphabet:
        raise ValueError("automata over different semirings or alphabets")
    m, n = M.dim, Nb.dim
    f = _as_map(rho, n)
    if len(f) != m:
        raise ValueError(f"rho has {len(f)} rows, expected {m}")
    S = M.semiring
    R = functional(f, n, S)
    RT = R.T
    if direction == "forward":
        if mat_mul(M.alpha_matrix(), R) != Nb.alpha_matrix():
            return False
        if mat_mul(R, Nb.beta_matrix()) != M.beta_matrix():
            return False
        return all(mat_mul(M.trans_matrix(a), R) == mat_mul(R, Nb.trans_matrix(a)) for a in M.alphabet)
    if direction == "dual":
        if mat_mul(Nb.alpha_matrix(), RT) != M.alpha_matrix():
            return False
        if mat_mul(RT, M.beta_matrix()) != Nb.beta_matrix():
            return False
        return all(mat_mul(Nb.trans_matrix(a), RT) == mat_mul(RT, M.trans_matrix(a)) for a in M.alphabet)
    raise ValueError(f"unknown direction {direction!r}")


def search_simulation(M: WeightedAutomaton, Nb: WeightedAutomaton, budget: int = 200_000):
    """Least witness in lexicographic function order, forward candidates first."""
    m, n = M.dim, Nb.dim
    count = n ** m
    if 2 * count > budget:
        raise SearchBudgetExceeded(f"{2 * count} candidate maps exceed budget {budget}")
    for direction in ("forward", "dual"):
        for f in itertools.product(range(n), repeat=m):
            if check_simulation(M, Nb, f, direction):
                return SimulationWitness(f, direction)
    return None


@dataclass(frozen=True)
class RefinementWitness:
    """C (n x k, letter-linear entries) with maps rho_i: k -> m and tau_j: k -> n.

    ``rhos[i][p]`` is the column of the single 1 in row p of the functional
    matrix rho_i; likewise for ``taus``.
    """

    C: Matrix
    rho: tuple
    rhos: tuple
    taus: tuple

    @property
    def k(self):
        return self.C.cols

    def rho_matrices(self, S=None):
        S = S or self.C.semiring
        m = len(self.rho)
        return [functional(g, m, S) for g in self.rhos]

    def tau_matrices(self, S=None):
        S = S or self.C.semiring
        n = self.C.rows
        return [functional(h, n, S) for h in self.taus]

    def side_condition(self) -> bool:
        f = self.rho
        return all(tuple(f[x] for x in g) == self.taus[f[i]] for i, g in enumerate(self.rhos))

    def rebuild(self):
        """(A, B) = ((rho C) || (rho_1..rho_m), C || (tau_1..tau_n))."""
        S = self.C.semiring
        R = functional(self.rho, self.C.rows, S)
        A = row_couple(mat_mul(R, self.C), self.rho_matrices())
        B = row_couple(self.C, self.tau_matrices())
        return A, B


def polynomial_matrix(per_letter: dict, alphabet, coeff: Semiring = N) -> Matrix:
    """Fold per-letter coefficient matrices into one matrix of letter-linear
    polynomials."""
    P = SeriesSemiring(coeff, alphabet, None)
    letters = list(alphabet)
    first = per_letter[letters[0]]
    rows, cols = first.rows, first.cols

    def entry(i, j):
        return Polynomial(coeff, alphabet, {a: per_letter[a][i, j] for a in letters})
    return Matrix.build(P, rows, cols, entry)


def refine(A: dict, B: dict, rho) -> RefinementWitness:
    """Witness that A = (rho C)||(rho_i) and B = C||(tau_j) given A rho = rho B.

    A and B map each letter to a square matrix over N.  Letters are split
    apart, each letter's coefficients are cut into unit atoms, and the
    per-letter pieces are placed side by side in alphabet order.
    """
    alphabet = tuple(A)
    if tuple(B) != alphabet:
        raise ValueError("A and B must use the same letters")
    m = A[alphabet[0]].rows
    n = B[alphabet[0]].rows
    f = _as_map(rho, n)
    if len(f) != m:
        raise ValueError(f"rho has {len(f)} rows, expected {m}")
    R = functional(f, n, N)
    for a in alphabet:
        if mat_mul(A[a], R) != mat_mul(R, B[a]):
            raise PremiseViolated(f"A rho != rho B for letter {a!r}")
    pre = [[i for i in range(m) if f[i] == j] for j in range(n)]
    pad = f[0] if m else 0
    P = SeriesSemiring(N, alphabet, None)
    c_cols = [[] for _ in range(n)]       # per row j: list of letters (one unit atom each) or None
    g = [[] for _ in range(m)]
    h = [[] for _ in range(n)]
    for a in alphabet:
        Ba, Aa = B[a], A[a]
        atoms = [[jj for jj in range(n) for _ in range(Ba[j, jj])] for j in range(n)]
        k = max((len(x) for x in atoms), default=0)
        for j in range(n):
            targets = atoms[j] + [pad] * (k - len(atoms[j]))
            h[j].extend(targets)
            c_cols[j].extend([a] * len(atoms[j]) + [None] * (k - len(atoms[j])))
        for i in range(m):
            j = f[i]
            # greedy left-to-right: each unit of A[i, i'] claims the next atom of its block
            remaining = {ii: Aa[i, ii] for ii in range(m)}
            cursor = {jj: 0 for jj in range(n)}
            assign = []
            for p, jj in enumerate(atoms[j]):
                cols = pre[jj]
                while remaining[cols[cursor[jj]]] == 0:
                    cursor[jj] += 1
                ii = cols[cursor[jj]]
                remaining[ii] -= 1
                assign.append(ii)
            assign += [0] * (k - len(atoms[j]))
            g[i].extend(assign)
    k_total = len(h[0]) if n else 0
    C = Matrix.build(P, n, k_total, lambda j, p: Polynomial(N, alphabet, {c_cols[j][p]: 1} if c_cols[j][p] else {}))
    return RefinementWitness(C, tuple(f), tuple(tuple(x) for x in g), tuple(tuple(x) for x in h))
