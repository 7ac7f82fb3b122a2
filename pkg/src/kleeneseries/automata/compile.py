"""Terms to automata and back."""
from __future__ import annotations

from ..errors import NotInStarDomain
from ..matrix import Matrix, mat_mul, mat_star
from ..semiring import N, NINF, Semiring
from ..terms import (TERMS, Letter, Plus, Prod, Star, Sum, Term, ZERO, add, eval_term,
                     letters_of, mul, nat, to_text)
from .core import WeightedAutomaton, trim


def _const_automaton(S, alphabet, c):
    return WeightedAutomaton.make(S, alphabet, [c], [S.one], {})


def _letter_automaton(S, alphabet, a):
    z, o = S.zero, S.one
    return WeightedAutomaton.make(S, alphabet, [o, z], [z, o], {a: [[z, o], [z, z]]})


def _direct_sum(M1, M2):
    S, m, n = M1.semiring, M1.dim, M2.dim
    z = S.zero
    trans = {}
    for a in M1.alphabet:
        rows = [list(r) + [z] * n for r in M1.trans[a]]
        rows += [[z] * m + list(r) for r in M2.trans[a]]
        trans[a] = rows
    return WeightedAutomaton.make(S, M1.alphabet, M1.alpha + M2.alpha, M1.beta + M2.beta, trans)


def _dot(S, u, v):
    return S.sum(S.mul(x, y) for x, y in zip(u, v))


def _product(M1, M2):
    # alpha = (a1, (a1 b1) a2), A = [[A1, A1 b1 a2], [0, A2]], beta = (0, b2)
    S, m, n = M1.semiring, M1.dim, M2.dim
    z = S.zero
    c = _dot(S, M1.alpha, M1.beta)
    alpha = list(M1.alpha) + [S.mul(c, x) for x in M2.alpha]
    beta = [z] * m + list(M2.beta)
    trans = {}
    for a in M1.alphabet:
        A1 = M1.trans[a]
        A1b1 = [_dot(S, A1[i], M1.beta) for i in range(m)]
        rows = [list(A1[i]) + [S.mul(A1b1[i], x) for x in M2.alpha] for i in range(m)]
        rows += [[z] * m + list(r) for r in M2.trans[a]]
        trans[a] = rows
    return WeightedAutomaton.make(S, M1.alphabet, alpha, beta, trans)


def _plus_parts(M, where):
    """(alpha, K*A, K*beta) with K = beta alpha and K* = E + beta c* alpha,
    c = alpha beta; this automaton recognises |M|+."""
    S, n = M.semiring, M.dim
    c = _dot(S, M.alpha, M.beta)
    if not S.in_domain(c):
        raise NotInStarDomain(f"star outside domain in subterm {_short(where)}: constant term {S.render(c)}")
    cs = S.star(c)
    kstar = [[S.add(S.one if i == j else S.zero, S.mul(S.mul(M.beta[i], cs), M.alpha[j]))
              for j in range(n)] for i in range(n)]
    trans = {}
    for a in M.alphabet:
        A = M.trans[a]
        trans[a] = [[_dot(S, kstar[i], [A[k][j] for k in range(n)]) for j in range(n)] for i in range(n)]
    beta = [_dot(S, kstar[i], M.beta) for i in range(n)]
    return M.alpha, trans, beta


def _plus(M, where):
    alpha, trans, beta = _plus_parts(M, where)
    return WeightedAutomaton.make(M.semiring, M.alphabet, alpha, beta, trans)


def _star(M, where):
    S, n = M.semiring, M.dim
    z = S.zero
    alpha, trans, beta = _plus_parts(M, where)
    trans = {a: [[z] * (n + 1)] + [[z] + list(r) for r in m] for a, m in trans.items()}
    return WeightedAutomaton.make(S, M.alphabet, [S.one] + list(alpha), [S.one] + list(beta), trans)


def _short(t):
    text = to_text(t)
    return text if len(text) <= 60 else text[:57] + "..."


def compile_term(t: Term, alphabet, S: Semiring = NINF) -> WeightedAutomaton:
    """Automaton whose behavior equals eval_term(t) on every word.

    Letter-free subterms become one-state constants; sums are direct sums,
    products chain the first automaton's final weights into the second's
    initial ones, and s* = 1 + alpha (K*A)* K* beta with K = beta alpha.
    Over N a star of a non-proper subterm raises NotInStarDomain.
    """
    if S not in (N, NINF):
        raise ValueError("automata are compiled over N or Ninf")
    alphabet = tuple(alphabet)
    extra = letters_of(t) - set(alphabet)
    if extra:
        raise ValueError(f"letters {sorted(extra)} not in alphabet")
    memo, lettered = {}, {}

    def has_letters(x):
        key = id(x)
        if key not in lettered:
            lettered[key] = isinstance(x, Letter) or any(has_letters(c) for c in x.children)
        return lettered[key]

    def go(x):
        key = id(x)
        if key in memo:
            return memo[key][1]
        if not has_letters(x):
            c = eval_term(x, S, alphabet, 0).coeffs.get("", S.zero)
            r = _const_automaton(S, alphabet, c)
        elif isinstance(x, Letter):
            r = _letter_automaton(S, alphabet, x.a)
        elif isinstance(x, Sum):
            r = _direct_sum(go(x.left), go(x.right))
        elif isinstance(x, Prod):
            r = _product(go(x.left), go(x.right))
        elif isinstance(x, Star):
            r = _star(go(x.arg), x)
        elif isinstance(x, Plus):
            r = _plus(go(x.arg), x)
        else:
            raise TypeError(x)
        r = trim(r)
        memo[key] = (x, r)
        return r

    return go(t)


def automaton_to_term(M: WeightedAutomaton) -> Term:
    """The term alpha A* beta, with A* computed symbolically by block star."""
    n = M.dim
    if n == 0:
        return ZERO
    alpha = Matrix(TERMS, 1, n, tuple(nat(x) for x in M.alpha))
    beta = Matrix(TERMS, n, 1, tuple(nat(x) for x in M.beta))

    def entry(i, j):
        acc = ZERO
        for a in M.alphabet:
            w = M.trans[a][i][j]
            if not M.semiring.is_zero(w):
                acc = add(acc, mul(nat(w), Letter(a)))
        return acc

    A = Matrix.build(TERMS, n, n, entry)
    return mat_mul(mat_mul(alpha, mat_star(A)), beta).entries[0]
