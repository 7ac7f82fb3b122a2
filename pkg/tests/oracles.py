"""Independent reference implementations used as test oracles.

Nothing here calls the library's star, series or automaton code; values over
N_inf use ``math.inf`` with the convention 0 * inf = 0.
"""
import itertools
import math
import random
from functools import lru_cache

from kleeneseries.semiring import INF
from kleeneseries.terms import (ZERO, ONE, INF_CONST, InfConst, Letter, NatConst, One, Plus, Prod,
                                Star, Sum, Zero)

inf = math.inf


def o_add(x, y):
    return x + y


def o_mul(x, y):
    if x == 0 or y == 0:
        return 0
    return x * y


def to_oracle(x):
    return inf if x is INF else x


def from_oracle(x):
    return INF if x == inf else x


class OutsideDomain(Exception):
    pass


def term_coefficient(t, w, over_n=False):
    """Coefficient of the word w in |t|, straight from the definition.

    Products sum over all factorizations; s* with zero constant term sums over
    factorizations into nonempty pieces.  When the constant term c of s is
    nonzero, s* = (c* s0)* c* with c* = inf, so the coefficient is inf exactly
    on the support of s0* (over N that star is undefined).
    """
    n = len(w)

    @lru_cache(maxsize=None)
    def coef(node, i, j):
        if isinstance(node, Zero):
            return 0
        if isinstance(node, One):
            return 1 if i == j else 0
        if isinstance(node, NatConst):
            return node.n if i == j else 0
        if isinstance(node, InfConst):
            return inf if i == j else 0
        if isinstance(node, Letter):
            return 1 if j == i + 1 and w[i] == node.a else 0
        if isinstance(node, Sum):
            return o_add(coef(node.left, i, j), coef(node.right, i, j))
        if isinstance(node, Prod):
            total = 0
            for k in range(i, j + 1):
                total = o_add(total, o_mul(coef(node.left, i, k), coef(node.right, k, j)))
            return total
        if isinstance(node, Star):
            return star_coef(node.arg, i, j)
        if isinstance(node, Plus):
            total = 0
            for k in range(i, j + 1):
                total = o_add(total, o_mul(coef(node.arg, i, k), star_coef(node.arg, k, j)))
            return total
        raise TypeError(node)

    @lru_cache(maxsize=None)
    def star_coef(s, i, j):
        c = coef(s, i, i)
        if c == 0:
            if i == j:
                return 1
            total = 0
            for k in range(i + 1, j + 1):
                total = o_add(total, o_mul(coef(s, i, k), star_coef(s, k, j)))
            return total
        if over_n:
            raise OutsideDomain(str(s))
        return inf if in_support_star(s, i, j) else 0

    @lru_cache(maxsize=None)
    def in_support_star(s, i, j):
        if i == j:
            return True
        return any(coef(s, i, k) != 0 and in_support_star(s, k, j) for k in range(i + 1, j + 1))

    return coef(t, 0, n)


def term_series(t, alphabet, L, over_n=False):
    """{word: coefficient} of t for all words of length <= L, zeros dropped."""
    out = {}
    for n in range(L + 1):
        for letters in itertools.product(alphabet, repeat=n):
            w = "".join(letters)
            c = term_coefficient(t, w, over_n)
            if c != 0:
                out[w] = from_oracle(c)
    return out


def series_dict(s):
    return dict(s.items())


# ------------------------------------------------------------------ matrices

def walk_star(rows):
    """Star of a square N_inf matrix as a sum over walks.

    Entries of the walk sums up to length n - 1 are compared with those up to
    length n^2 + 2n: any entry that grows has a walk through a nonzero cycle,
    hence is infinite; the others are already exact.
    """
    n = len(rows)
    A = [[to_oracle(x) for x in r] for r in rows]

    def mul(X, Y):
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                if X[i][k] == 0:
                    continue
                for j in range(n):
                    out[i][j] = o_add(out[i][j], o_mul(X[i][k], Y[k][j]))
        return out

    def partial(upto):
        total = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        power = [r[:] for r in total]
        for _ in range(upto):
            power = mul(power, A)
            total = [[o_add(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
        return total

    short, long = partial(max(n - 1, 0)), partial(n * n + 2 * n)
    return [[from_oracle(inf if long[i][j] != short[i][j] else short[i][j]) for j in range(n)]
            for i in range(n)]


# ----------------------------------------------------------------- automata

def automaton_coefficient(alpha, trans, beta, w):
    """alpha . A_{w1} ... A_{wn} . beta by plain vector products."""
    v = [to_oracle(x) for x in alpha]
    n = len(v)
    for a in w:
        T = trans[a]
        u = [0] * n
        for i in range(n):
            if v[i] == 0:
                continue
            for j in range(n):
                u[j] = o_add(u[j], o_mul(v[i], to_oracle(T[i][j])))
        v = u
    total = 0
    for x, b in zip(v, beta):
        total = o_add(total, o_mul(x, to_oracle(b)))
    return from_oracle(total)


def automaton_series(M, L):
    out = {}
    for n in range(L + 1):
        for letters in itertools.product(M.alphabet, repeat=n):
            w = "".join(letters)
            c = automaton_coefficient(M.alpha, M.trans, M.beta, w)
            if c != 0:
                out[w] = c
    return out


# ------------------------------------------------------------ random input

def random_term(rng: random.Random, depth, alphabet="ab", constants=(0, 1, 2, "inf"), root=True):
    """Random term of height <= depth built with the raw constructors; the
    root is never a leaf when depth > 1."""
    if depth <= 1 or (not root and rng.random() < 0.2):
        if rng.random() < 0.6:
            return Letter(rng.choice(alphabet))
        c = rng.choice(constants)
        return {0: ZERO, 1: ONE, "inf": INF_CONST}.get(c) or NatConst(c)
    kind = rng.choice(["sum", "prod", "prod", "star", "sum"])
    if kind == "star":
        return Star(random_term(rng, depth - 1, alphabet, constants, False))
    left = random_term(rng, depth - 1, alphabet, constants, False)
    right = random_term(rng, depth - 1, alphabet, constants, False)
    return Sum(left, right) if kind == "sum" else Prod(left, right)


def random_simulation_pair(rng: random.Random, m, n, alphabet="ab", max_coeff=2):
    """Per-letter N matrices A (m x m), B (n x n) and a surjective rho with
    A rho = rho B: each block sum of a row of A is set to the matching entry
    of B and then split at random among the block's columns."""
    rho = list(range(n)) + [rng.randrange(n) for _ in range(m - n)]
    rng.shuffle(rho)
    pre = [[i for i in range(m) if rho[i] == j] for j in range(n)]
    A, B = {}, {}
    for a in alphabet:
        Bm = [[rng.randint(0, max_coeff) for _ in range(n)] for _ in range(n)]
        Am = [[0] * m for _ in range(m)]
        for i in range(m):
            for j in range(n):
                for _ in range(Bm[rho[i]][j]):
                    Am[i][rng.choice(pre[j])] += 1
        A[a], B[a] = Am, Bm
    return A, B, tuple(rho)
