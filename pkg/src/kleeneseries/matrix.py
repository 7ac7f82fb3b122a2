"""Dense matrices over a semiring descriptor, block star and coupling."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import NotInStarDomain
from .semiring import Semiring

__all__ = [
    "Matrix", "mat_add", "mat_mul", "mat_star", "block_star", "row_couple",
    "col_couple", "functional", "functional_map", "is_functional", "permutation",
    "MatrixSemiring", "matrix_to_json", "matrix_from_json",
]


@dataclass(frozen=True)
class Matrix:
    semiring: Semiring
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, S: Semiring, rows: Sequence[Sequence], cols: int | None = None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(S, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, S, rows, cols):
        return cls(S, rows, cols, (S.zero,) * (rows * cols))

    @classmethod
    def identity(cls, S, n):
        return cls(S, n, n, tuple(S.one if i == j else S.zero for i in range(n) for j in range(n)))

    @classmethod
    def build(cls, S, rows, cols, fn: Callable[[int, int], object]):
        return cls(S, rows, cols, tuple(fn(i, j) for i in range(rows) for j in range(cols)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self):
        return Matrix.build(self.semiring, self.cols, self.rows, lambda i, j: self[j, i])

    def submatrix(self, r0, r1, c0, c1):
        return Matrix.build(self.semiring, r1 - r0, c1 - c0, lambda i, j: self[r0 + i, c0 + j])

    def map(self, fn, target: Semiring | None = None):
        return Matrix(target or self.semiring, self.rows, self.cols, tuple(fn(x) for x in self.entries))

    def __add__(self, other):
        return mat_add(self, other)

    def __matmul__(self, other):
        return mat_mul(self, other)

    def __str__(self):
        render = self.semiring.render
        return "[" + ", ".join("[" + ", ".join(render(x) for x in self.row(i)) + "]"
                               for i in range(self.rows)) + "]"


def _same_semiring(A, B):
    if A.semiring is not B.semiring and A.semiring != B.semiring:
        raise TypeError(f"semiring mismatch: {A.semiring} vs {B.semiring}")


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    _same_semiring(A, B)
    if A.shape != B.shape:
        raise ValueError(f"shape mismatch {A.shape} + {B.shape}")
    add = A.semiring.add
    return Matrix(A.semiring, A.rows, A.cols, tuple(add(x, y) for x, y in zip(A.entries, B.entries)))


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    _same_semiring(A, B)
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    S = A.semiring
    add, mul, zero, is_zero = S.add, S.mul, S.zero, S.is_zero
    out = []
    bcols = [B.col(j) for j in range(B.cols)]
    for i in range(A.rows):
        row = A.row(i)
        nz = [(k, a) for k, a in enumerate(row) if not is_zero(a)]
        for j in range(B.cols):
            col = bcols[j]
            acc = zero
            for k, a in nz:
                b = col[k]
                if not is_zero(b):
                    acc = add(acc, mul(a, b))
            out.append(acc)
    return Matrix(S, A.rows, B.cols, tuple(out))


def _check_domain(A: Matrix):
    S = A.semiring
    if S.total_star:
        return
    for idx, x in enumerate(A.entries):
        if not S.in_domain(x):
            i, j = divmod(idx, A.cols)
            raise NotInStarDomain(f"entry ({i},{j}) = {S.render(x)} is outside the star domain of {S.name}")


def mat_star(A: Matrix) -> Matrix:
    """Star of a square matrix, splitting off the last row and column.

    The top-left block is (A + b d* c)* as in the block definition; the other
    three blocks use the Conway-equivalent forms alpha b d*, d* c alpha and
    d* + d* c alpha b d*, which need no second recursive star and keep the
    cost cubic.
    """
    if A.rows != A.cols:
        raise ValueError("star needs a square matrix")
    _check_domain(A)
    return _star(A)


def _star(A: Matrix) -> Matrix:
    n = A.rows
    rows = [list(A.entries[i * n:(i + 1) * n]) for i in range(n)]
    out = _star_rows(A.semiring, rows)
    return Matrix(A.semiring, n, n, tuple(x for r in out for x in r))


def _star_rows(S, m):
    n = len(m)
    if n == 0:
        return []
    add, mul, zero, is_zero = S.add, S.mul, S.zero, S.is_zero
    if n == 1:
        return [[S.star(m[0][0])]]
    k = n - 1
    ds = S.star(m[k][k])
    b_ds = [mul(m[i][k], ds) for i in range(k)]
    c_ds = [mul(ds, m[k][j]) for j in range(k)]
    c = m[k][:k]
    inner = [[add(m[i][j], mul(b_ds[i], c[j])) if not is_zero(b_ds[i]) else m[i][j]
              for j in range(k)] for i in range(k)]
    alpha = _star_rows(S, inner)
    beta = []
    for i in range(k):
        acc = zero
        for j in range(k):
            if not is_zero(alpha[i][j]) and not is_zero(b_ds[j]):
                acc = add(acc, mul(alpha[i][j], b_ds[j]))
        beta.append(acc)
    gamma = []
    for j in range(k):
        acc = zero
        for i in range(k):
            if not is_zero(c_ds[i]) and not is_zero(alpha[i][j]):
                acc = add(acc, mul(c_ds[i], alpha[i][j]))
        gamma.append(acc)
    delta = ds
    for j in range(k):
        if not is_zero(gamma[j]) and not is_zero(b_ds[j]):
            delta = add(delta, mul(gamma[j], b_ds[j]))
    out = [alpha[i] + [beta[i]] for i in range(k)]
    out.append(gamma + [delta])
    return out


def block_star(M: Matrix, k: int) -> Matrix:
    """Star by the block formula with an explicit split point 0 < k < n.

    alpha = (A + B D* C)*, beta = alpha B D*, gamma = delta C A*,
    delta = (D + C A* B)*.
    """
    n = M.rows
    if M.rows != M.cols:
        raise ValueError("star needs a square matrix")
    if not 0 < k < n:
        raise ValueError(f"split point must satisfy 0 < k < {n}")
    _check_domain(M)
    S = M.semiring
    rows = [list(M.row(i)) for i in range(n)]
    A = [r[:k] for r in rows[:k]]
    B = [r[k:] for r in rows[:k]]
    C = [r[:k] for r in rows[k:]]
    D = [r[k:] for r in rows[k:]]
    a_star, d_star = _star_rows(S, A), _star_rows(S, D)
    alpha = _star_rows(S, _add_rows(S, A, _mul_rows(S, _mul_rows(S, B, d_star), C)))
    delta = _star_rows(S, _add_rows(S, D, _mul_rows(S, _mul_rows(S, C, a_star), B)))
    beta = _mul_rows(S, _mul_rows(S, alpha, B), d_star)
    gamma = _mul_rows(S, _mul_rows(S, delta, C), a_star)
    out = [x + y for x, y in zip(alpha, beta)] + [x + y for x, y in zip(gamma, delta)]
    return Matrix(S, n, n, tuple(x for r in out for x in r))


def _add_rows(S, X, Y):
    return [[S.add(x, y) for x, y in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _mul_rows(S, X, Y):
    add, mul, is_zero = S.add, S.mul, S.is_zero
    cols = len(Y[0]) if Y else 0
    out = []
    for rx in X:
        row = [S.zero] * cols
        for x, ry in zip(rx, Y):
            if is_zero(x):
                continue
            for j, y in enumerate(ry):
                if not is_zero(y):
                    row[j] = add(row[j], mul(x, y))
        out.append(row)
    return out


def row_couple(A: Matrix, Bs: Sequence[Matrix]) -> Matrix:
    """Matrix whose i-th row is (row i of A) times Bs[i]."""
    if len(Bs) != A.rows:
        raise ValueError(f"need {A.rows} matrices, got {len(Bs)}")
    if A.rows == 0:
        return Matrix.zeros(A.semiring, 0, 0)
    p = Bs[0].cols
    rows = []
    for i, Bi in enumerate(Bs):
        if Bi.rows != A.cols or Bi.cols != p:
            raise ValueError(f"coupled matrix {i} has shape {Bi.shape}, expected {(A.cols, p)}")
        ri = Matrix(A.semiring, 1, A.cols, A.row(i))
        rows.append(mat_mul(ri, Bi).entries)
    return Matrix(A.semiring, A.rows, p, tuple(x for r in rows for x in r))


def col_couple(Bs: Sequence[Matrix], A: Matrix) -> Matrix:
    """Matrix whose j-th column is Bs[j] times (column j of A)."""
    if len(Bs) != A.cols:
        raise ValueError(f"need {A.cols} matrices, got {len(Bs)}")
    return row_couple(A.T, [B.T for B in Bs]).T


def functional(mapping: Sequence[int], n: int, S: Semiring) -> Matrix:
    """0-1 matrix with a single 1 in row i at column mapping[i]."""
    m = len(mapping)
    if any(not 0 <= t < n for t in mapping):
        raise ValueError("mapping leaves the codomain")
    return Matrix.build(S, m, n, lambda i, j: S.one if mapping[i] == j else S.zero)


def is_functional(M: Matrix) -> bool:
    S = M.semiring
    for i in range(M.rows):
        row = M.row(i)
        if sum(1 for x in row if x == S.one) != 1 or any(x not in (S.zero, S.one) for x in row):
            return False
    return True


def functional_map(M: Matrix) -> tuple:
    if not is_functional(M):
        raise ValueError("matrix is not functional")
    return tuple(M.row(i).index(M.semiring.one) for i in range(M.rows))


def permutation(perm: Sequence[int], S: Semiring) -> Matrix:
    if sorted(perm) != list(range(len(perm))):
        raise ValueError("not a permutation")
    return functional(perm, len(perm), S)


class MatrixSemiring(Semiring):
    """Square n x n matrices over a base semiring (non-commutative for n > 1)."""

    def __init__(self, base: Semiring, n: int):
        self.base, self.n = base, n
        self.name = f"{base.name}^{n}x{n}"
        self.zero = Matrix.zeros(base, n, n)
        self.one = Matrix.identity(base, n)
        self.total_star = base.total_star
        self.commutative = n <= 1 and base.commutative

    def add(self, x, y):
        return mat_add(x, y)

    def mul(self, x, y):
        return mat_mul(x, y)

    def star(self, x):
        return mat_star(x)

    def in_domain(self, x):
        return all(self.base.in_domain(e) for e in x.entries)

    def contains(self, x):
        return isinstance(x, Matrix) and x.shape == (self.n, self.n) and x.semiring == self.base

    def from_int(self, k):
        c = self.base.from_int(k)
        return Matrix.build(self.base, self.n, self.n, lambda i, j: c if i == j else self.base.zero)

    def render(self, x):
        return str(x)

    def _key(self):
        return ("MatrixSemiring", self.base._key(), self.n)


def matrix_to_json(M: Matrix) -> str:
    return json.dumps([[M.semiring.render(x) for x in M.row(i)] for i in range(M.rows)])


def matrix_from_json(S: Semiring, text: str) -> Matrix:
    data = json.loads(text)
    return Matrix.from_rows(S, [[S.parse(str(x)) for x in row] for row in data])
