"""Instance generators and exact checkers for star-semiring identities."""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .errors import NotInStarDomain, PremiseViolated
from .matrix import Matrix, col_couple, functional, mat_mul, mat_star, row_couple
from .semiring import INF, NINF, Semiring
from .series import Polynomial, SeriesSemiring, TruncatedSeries, polynomial_eval

__all__ = [
    "CheckReport", "check_conway", "CayleyTable", "GROUPS", "group_matrix",
    "check_group_identity", "CommutativeInstance", "generate_commutative_instance",
    "check_commutative", "check_intertwining", "check_inductive_laws", "random_series",
]


@dataclass
class CheckReport:
    identity: str
    instance: str
    verdict: str                 # pass | fail | skip
    left: object = None
    right: object = None
    detail: str = ""

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_json(self) -> str:
        detail = self.detail
        if self.verdict == "fail" and not detail:
            detail = f"left={self.left} right={self.right}"
        return json.dumps({"identity": self.identity, "instance": self.instance,
                           "verdict": self.verdict, "detail": detail}, ensure_ascii=False)


def _render(S, x):
    return S.render(x) if hasattr(S, "render") else str(x)


def _compare(name, instance, S, left_fn, right_fn):
    try:
        left, right = left_fn(), right_fn()
    except NotInStarDomain as exc:
        return CheckReport(name, instance, "skip", detail=str(exc))
    if left == right:
        return CheckReport(name, instance, "pass", left, right)
    return CheckReport(name, instance, "fail", left, right,
                       f"left={_render(S, left)} right={_render(S, right)}")


def check_conway(S: Semiring, a, b, instance: str | None = None) -> list:
    """Sum star, product star and the four derived identities for (a, b).

    Stars outside the domain turn the affected identity into a skip.
    """
    add, mul = S.add, S.mul

    def st(x):
        if not S.in_domain(x):
            raise NotInStarDomain(f"{_render(S, x)} outside star domain")
        return S.star(x)

    inst = instance or f"a={_render(S, a)}, b={_render(S, b)}"
    return [
        _compare("sum-star", inst, S, lambda: st(add(a, b)), lambda: mul(st(a), st(mul(b, st(a))))),
        _compare("product-star", inst, S, lambda: st(mul(a, b)),
                 lambda: add(S.one, mul(mul(a, st(mul(b, a))), b))),
        _compare("fixed-point", inst, S, lambda: add(mul(a, st(a)), S.one), lambda: st(a)),
        _compare("zero-star", inst, S, lambda: st(S.zero), lambda: S.one),
        _compare("simplified-product-star", inst, S, lambda: mul(st(mul(a, b)), a),
                 lambda: mul(a, st(mul(b, a)))),
        _compare("sum-star-2", inst, S, lambda: st(add(a, b)), lambda: mul(st(mul(st(a), b)), st(a))),
    ]


# ------------------------------------------------------------------ groups

@dataclass(frozen=True)
class CayleyTable:
    """Multiplication table on {0..n-1}; element 0 is the unit."""

    name: str
    table: tuple

    def __post_init__(self):
        n = len(self.table)
        if any(len(r) != n for r in self.table):
            raise ValueError("Cayley table must be square")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise ValueError("Cayley table leaves the carrier")
        if any(self.table[0][x] != x or self.table[x][0] != x for x in range(n)):
            raise ValueError("element 0 must be the unit")
        for x, y, z in itertools.product(range(n), repeat=3):
            if self.table[self.table[x][y]][z] != self.table[x][self.table[y][z]]:
                raise ValueError("Cayley table is not associative")
        if any(0 not in r for r in self.table):
            raise ValueError("some element has no inverse")

    @property
    def order(self):
        return len(self.table)

    def mul(self, x, y):
        return self.table[x][y]

    def inverse(self, x):
        return self.table[x].index(0)

    @classmethod
    def cyclic(cls, n):
        return cls(f"Z{n}", tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))

    @classmethod
    def from_permutations(cls, name, perms):
        perms = [tuple(p) for p in perms]
        compose = lambda p, q: tuple(p[q[i]] for i in range(len(q)))
        idx = {p: i for i, p in enumerate(perms)}
        return cls(name, tuple(tuple(idx[compose(p, q)] for q in perms) for p in perms))

    @classmethod
    def from_json(cls, text):
        data = json.loads(text)
        return cls(data.get("name", "G"), tuple(tuple(r) for r in data["table"]))


GROUPS = {
    "z1": CayleyTable.cyclic(1),
    "z2": CayleyTable.cyclic(2),
    "z3": CayleyTable.cyclic(3),
    "z4": CayleyTable.cyclic(4),
    "s3": CayleyTable.from_permutations("S3", sorted(itertools.permutations(range(3)))),
}


def group_matrix(G: CayleyTable, values, S: Semiring) -> Matrix:
    """M_G with (i, j) entry a_{i^-1 j}."""
    if len(values) != G.order:
        raise ValueError(f"need {G.order} values")
    return Matrix.build(S, G.order, G.order, lambda i, j: values[G.mul(G.inverse(i), j)])


def check_group_identity(G: CayleyTable, values, S: Semiring, instance: str | None = None) -> CheckReport:
    """First-row sum of M_G* against (a_1 + ... + a_n)*."""
    inst = instance or f"{G.name}: " + ", ".join(_render(S, v) for v in values)

    def left():
        Mstar = mat_star(group_matrix(G, values, S))
        return S.sum(Mstar.row(0))

    def right():
        total = S.sum(values)
        if not S.in_domain(total):
            raise NotInStarDomain("sum outside star domain")
        return S.star(total)

    return _compare(f"group-{G.name}", inst, S, left, right)


# ------------------------------------------------------------- commutative

@dataclass(frozen=True)
class CommutativeInstance:
    """Data (C, rho, rho_i, tau_j) of a commutative-identity instance.

    Maps are tuples: ``rho[i]`` is the image of i, ``rhos[i][p]`` and
    ``taus[j][p]`` are the images of p under rho_i and tau_j.  C is n x k for
    the primal identity and k x n for the dual one.
    """

    C: Matrix
    rho: tuple
    rhos: tuple
    taus: tuple
    direction: str = "primal"
    label: str = ""

    @property
    def m(self):
        return len(self.rho)

    @property
    def n(self):
        return len(self.taus)

    @property
    def k(self):
        return self.C.cols if self.direction == "primal" else self.C.rows

    def side_condition(self) -> bool:
        f = self.rho
        return all(tuple(f[x] for x in g) == self.taus[f[i]] for i, g in enumerate(self.rhos))

    def map_entries(self, fn, S: Semiring) -> "CommutativeInstance":
        return CommutativeInstance(self.C.map(fn, S), self.rho, self.rhos, self.taus,
                                   self.direction, self.label)

    def in_series(self, bound: int) -> "CommutativeInstance":
        """Entries as series truncated at ``bound``."""
        coeff = self.C.semiring.coeff
        S = SeriesSemiring(coeff, self.C.semiring.alphabet, bound)
        return self.map_entries(lambda p: p.with_bound(bound), S)

    def at(self, letters: dict, S: Semiring) -> "CommutativeInstance":
        """Entries evaluated in S under a letter assignment."""
        return self.map_entries(lambda p: polynomial_eval(p, S.from_int, letters, S), S)

    def matrices(self):
        """(A, B, rho) as matrices over the entries' semiring."""
        S = self.C.semiring
        R = functional(self.rho, self.n, S)
        rho_ms = [functional(g, self.m, S) for g in self.rhos]
        tau_ms = [functional(h, self.n, S) for h in self.taus]
        if self.direction == "primal":
            A = row_couple(mat_mul(R, self.C), rho_ms)
            B = row_couple(self.C, tau_ms)
        else:
            A = col_couple([r.T for r in rho_ms], mat_mul(self.C, R.T))
            B = col_couple([t.T for t in tau_ms], self.C)
        return A, B, R


def _random_map(rng, size, codomain):
    return tuple(rng.randrange(codomain) for _ in range(size))


def generate_commutative_instance(seed, m, n, k, alphabet, direction="primal", max_coeff=2,
                                  density=0.6) -> CommutativeInstance:
    """Random instance satisfying rho_i rho = tau_{i rho} by construction.

    rho is surjective (so m >= n); each rho_i picks, for every p, a random
    preimage under rho of tau_{rho(i)}(p).  C has letter-linear entries over N.
    """
    from .semiring import N

    if m < n:
        raise ValueError("a surjective rho needs m >= n")
    rng = random.Random(seed)
    rho = list(range(n)) + [rng.randrange(n) for _ in range(m - n)] if n else []
    rng.shuffle(rho)
    rho = tuple(rho)
    pre = [[i for i in range(m) if rho[i] == j] for j in range(n)]
    taus = tuple(_random_map(rng, k, n) for _ in range(n))
    rhos = tuple(tuple(rng.choice(pre[taus[rho[i]][p]]) for p in range(k)) for i in range(m))
    alphabet = tuple(alphabet)
    P = SeriesSemiring(N, alphabet, None)

    def entry(i, j):
        coeffs = {a: rng.randint(1, max_coeff) for a in alphabet if rng.random() < density}
        return Polynomial(N, alphabet, coeffs)

    shape = (n, k) if direction == "primal" else (k, n)
    C = Matrix.build(P, shape[0], shape[1], entry)
    return CommutativeInstance(C, rho, rhos, taus, direction, f"seed={seed} m={m} n={n} k={k}")


def _first_difference(L: Matrix, R: Matrix, S):
    for idx, (x, y) in enumerate(zip(L.entries, R.entries)):
        if x != y:
            i, j = divmod(idx, L.cols)
            return f"entry ({i},{j}): left={_render(S, x)} right={_render(S, y)}"
    return ""


def check_intertwining(A: Matrix, B: Matrix, R: Matrix, direction="primal", name="commutative",
                       instance="") -> CheckReport:
    """A* rho = rho B* (primal) or rho^T A* = B* rho^T (dual)."""
    S = A.semiring
    try:
        if direction == "primal":
            left, right = mat_mul(mat_star(A), R), mat_mul(R, mat_star(B))
        else:
            left, right = mat_mul(R.T, mat_star(A)), mat_mul(mat_star(B), R.T)
    except NotInStarDomain as exc:
        return CheckReport(name, instance, "skip", detail=str(exc))
    if left == right:
        return CheckReport(name, instance, "pass", left, right)
    return CheckReport(name, instance, "fail", left, right, _first_difference(left, right, S))


def check_commutative(inst: CommutativeInstance) -> CheckReport:
    if not inst.side_condition():
        raise PremiseViolated("rho_i rho = tau_{i rho} fails")
    A, B, R = inst.matrices()
    name = "commutative" if inst.direction == "primal" else "dual-commutative"
    return check_intertwining(A, B, R, inst.direction, name, f"{inst.label} in {A.semiring.name}")


# --------------------------------------------------------------- inductive

def check_inductive_laws(S: Semiring, samples, instance: str = "") -> list:
    """Inductive *-semiring laws over an ordered context S (``S.leq``).

    Checks aa* + 1 <= a*, the left and right least pre-fixed point rules on
    every triple of samples whose premise holds, and 1*a = a1*.
    """
    leq, add, mul = S.leq, S.add, S.mul
    one_star = S.star(S.one)
    reports = []
    fails = {"fixed-point-inequation": [], "left-induction": [], "right-induction": [],
             "one-star-commutes": []}
    premises = {"left-induction": 0, "right-induction": 0}
    for a in samples:
        a_star = S.star(a)
        if not leq(add(mul(a, a_star), S.one), a_star):
            fails["fixed-point-inequation"].append(_render(S, a))
        if mul(one_star, a) != mul(a, one_star):
            fails["one-star-commutes"].append(_render(S, a))
        for b, x in itertools.product(samples, repeat=2):
            if leq(add(mul(a, x), b), x):
                premises["left-induction"] += 1
                if not leq(mul(a_star, b), x):
                    fails["left-induction"].append(f"a={_render(S, a)} b={_render(S, b)} x={_render(S, x)}")
            if leq(add(mul(x, a), b), x):
                premises["right-induction"] += 1
                if not leq(mul(b, a_star), x):
                    fails["right-induction"].append(f"a={_render(S, a)} b={_render(S, b)} x={_render(S, x)}")
    for name, bad in fails.items():
        extra = f"{premises[name]} premises held" if name in premises else ""
        if bad:
            reports.append(CheckReport(name, instance, "fail", detail=f"{len(bad)} failures, first: {bad[0]}"))
        else:
            reports.append(CheckReport(name, instance, "pass", detail=extra))
    return reports


def check_least_solution(s, r, x, instance="") -> CheckReport:
    """x = sx + r at truncation and s*r <= x pointwise."""
    from .series import series_combine, series_star

    S = SeriesSemiring(s.semiring, s.alphabet, s.bound)
    rhs = series_combine("add", series_combine("mul", s, x), r)
    if rhs != x:
        return CheckReport("linear-solution", instance, "fail", rhs, x,
                           f"sx + r = {rhs} but x = {x}")
    least = series_combine("mul", series_star(s), r)
    if not S.leq(least, x):
        return CheckReport("least-solution", instance, "fail", least, x, f"s*r = {least} not <= x = {x}")
    return CheckReport("least-solution", instance, "pass", least, x)


def random_series(rng: random.Random, S: Semiring, alphabet, bound: int, terms=3, max_len=None,
                  values=None, proper=False) -> TruncatedSeries:
    """A sparse random series: a few random words with random coefficients."""
    from .series import words

    max_len = bound if max_len is None else max_len
    pool = [w for w in words(alphabet, max_len) if w or not proper]
    values = values or [v for v in S.elements() if not S.is_zero(v)]
    coeffs = {}
    for _ in range(rng.randint(0, terms)):
        coeffs[rng.choice(pool)] = rng.choice(values)
    return TruncatedSeries(S, alphabet, bound, coeffs)
