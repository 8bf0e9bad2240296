"""Exact dense linear algebra over a :class:`~nilbreadth.gf.GF` level.

Matrices and vectors are numpy ``int64`` arrays of element indices.  All
routines take the field as their first argument.  Subspaces are stored by
their reduced row-echelon basis, so two equal subspaces have identical
arrays and comparisons are exact.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .gf import GF, element_from_json, element_to_json


class SingularMatrix(np.linalg.LinAlgError):
    pass


class ShapeError(ValueError):
    pass


def asarray(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size and (A.min() < 0 or A.max() >= F.q):
        raise ValueError(f"entries outside F_{F.q}")
    return A


def contract(F: GF, X: np.ndarray, T: np.ndarray) -> np.ndarray:
    """``sum_i X[..., i] * T[i, ...]`` over the field."""
    X = np.asarray(X, dtype=np.int64)
    T = np.asarray(T, dtype=np.int64)
    if X.shape[-1] != T.shape[0]:
        raise ShapeError(f"cannot contract {X.shape} with {T.shape}")
    if F.is_prime:
        return np.tensordot(X, T, axes=(-1, 0)) % F.p
    out = np.zeros(X.shape[:-1] + T.shape[1:], dtype=np.int64)
    xs = X.reshape(X.shape[:-1] + (1,) * (T.ndim - 1) + (X.shape[-1],))
    for i in range(T.shape[0]):
        out = F.vadd(out, F.vmul(xs[..., i], T[i]))
    return out


def bilinear(F: GF, u, v, T: np.ndarray) -> np.ndarray:
    """``sum_ij u[..., i] v[..., j] T[i, j, :]``; batch axes of ``u`` and ``v`` broadcast."""
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    left = contract(F, u, T)  # [..., j, k]
    if F.is_prime:
        return np.einsum("...j,...jk->...k", v, left) % F.p
    shape = np.broadcast_shapes(u.shape[:-1], v.shape[:-1]) + (T.shape[2],)
    out = np.zeros(shape, dtype=np.int64)
    for j in range(T.shape[1]):
        out = F.vadd(out, F.vmul(v[..., j, None], left[..., j, :]))
    return out


def matmul(F: GF, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[-1] != B.shape[0]:
        raise ShapeError(f"cannot multiply {A.shape} by {B.shape}")
    return contract(F, A, B)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def rref(F: GF, A) -> tuple[np.ndarray, int, list[int]]:
    """Gauss-Jordan form, rank and pivot columns.

    Pivots are chosen leftmost column first, then topmost row.  Zero rows
    are kept at the bottom, so the result has the shape of ``A``.
    """
    R = np.array(A, dtype=np.int64, copy=True)
    if R.ndim != 2:
        raise ShapeError("rref expects a matrix")
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for j in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, j])[0]
        if nz.size == 0:
            continue
        i = r + nz[0]
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = F.vmul(R[r], F.inv(int(R[r, j])))
        col = R[:, j].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            R[nzr] = F.vsub(R[nzr], F.vmul(col[nzr, None], R[r][None, :]))
        pivots.append(j)
        r += 1
    return R, r, pivots


def rank(F: GF, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return rref(F, A)[1]


def rank_batch(F: GF, A: np.ndarray) -> np.ndarray:
    """Ranks of a stack of matrices, shape ``(B, rows, cols)`` -> ``(B,)``.

    Forward elimination is run on every matrix at once; each matrix keeps its
    own count of pivot rows found so far.
    """
    A = np.array(A, dtype=np.int64, copy=True)
    if A.ndim != 3:
        raise ShapeError("rank_batch expects a 3-d array")
    B, rows, cols = A.shape
    r = np.zeros(B, dtype=np.int64)
    row_ids = np.arange(rows)
    for j in range(cols):
        live = np.nonzero(r < rows)[0]
        if live.size == 0:
            break
        sub = A[live]
        rl = r[live]
        cand = (sub[:, :, j] != 0) & (row_ids[None, :] >= rl[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        live, sub, rl, cand = live[has], sub[has], rl[has], cand[has]
        piv = cand.argmax(axis=1)
        k = np.arange(live.size)
        prow = sub[k, piv].copy()
        sub[k, piv] = sub[k, rl]
        sub[k, rl] = prow
        inv = F.vinv(prow[:, j])
        prow = F.vmul(prow, inv[:, None])
        below = row_ids[None, :] > rl[:, None]
        factors = np.where(below, sub[:, :, j], 0)
        sub = F.vsub(sub, F.vmul(factors[:, :, None], prow[:, None, :]))
        A[live] = sub
        r[live] = rl + 1
    return r


def kernel(F: GF, A) -> Subspace:
    """Null space ``{v : A v = 0}``."""
    A = np.asarray(A, dtype=np.int64)
    if A.ndim != 2:
        raise ShapeError("kernel expects a matrix")
    cols = A.shape[1]
    if A.shape[0] == 0:
        return Subspace.full(F, cols)
    R, rk, pivots = rref(F, A)
    free = [j for j in range(cols) if j not in pivots]
    vecs = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        vecs[t, f] = 1
        for i, pj in enumerate(pivots):
            vecs[t, pj] = F.neg(int(R[i, f]))
    return Subspace.span(F, vecs, cols)


def solve(F: GF, A, b) -> np.ndarray | None:
    """A solution of ``A x = b`` with free variables zero, or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if A.ndim != 2 or b.shape != (A.shape[0],):
        raise ShapeError(f"incompatible shapes {A.shape} and {b.shape}")
    cols = A.shape[1]
    R, rk, pivots = rref(F, np.hstack([A, b[:, None]]))
    if pivots and pivots[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pj in enumerate(pivots):
        x[pj] = R[i, cols]
    return x


def inverse(F: GF, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ShapeError("inverse expects a square matrix")
    R, rk, _ = rref(F, np.hstack([A, identity(n)]))
    if rk < n or not np.array_equal(R[:, :n], identity(n)):
        raise SingularMatrix("matrix is singular")
    return R[:, n:]


def is_invertible(F: GF, A) -> bool:
    A = np.asarray(A)
    return A.ndim == 2 and A.shape[0] == A.shape[1] and rank(F, A) == A.shape[0]


def random_invertible(F: GF, n: int, seed: int) -> np.ndarray:
    """Seeded uniform matrices, rejected until one has full rank."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    while True:
        M = rng.integers(0, F.q, size=(n, n), dtype=np.int64)
        if rank(F, M) == n:
            return M


def enumerate_vectors(q: int, n: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Vectors of ``F^n`` with indices in ``[start, stop)``, first coordinate fastest."""
    stop = q**n if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    return (idx[:, None] // (q ** np.arange(n, dtype=np.int64))[None, :]) % q


def vector_index(q: int, v: Sequence[int]) -> int:
    return int(sum(int(c) * q**t for t, c in enumerate(v)))


class Subspace:
    """A subspace of ``F^n`` held by its canonical (RREF, no zero rows) basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: GF, ambient_dim: int, basis: np.ndarray, pivots: list[int]):
        self.field = field
        self.ambient_dim = ambient_dim
        basis = np.asarray(basis, dtype=np.int64).reshape(-1, ambient_dim)
        basis.setflags(write=False)
        self.basis = basis
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, F: GF, vectors, ambient_dim: int) -> Subspace:
        V = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim)
        if V.shape[0] == 0:
            return cls(F, ambient_dim, V, [])
        R, rk, pivots = rref(F, V)
        return cls(F, ambient_dim, R[:rk], pivots)

    @classmethod
    def zero(cls, F: GF, n: int) -> Subspace:
        return cls(F, n, np.zeros((0, n), dtype=np.int64), [])

    @classmethod
    def full(cls, F: GF, n: int) -> Subspace:
        return cls(F, n, identity(n), list(range(n)))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.field.q**self.dim

    def _check(self, other: Subspace):
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ShapeError("subspaces live in different spaces")

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace.span(self.field, np.vstack([self.basis, other.basis]), self.ambient_dim)

    def annihilator(self) -> np.ndarray:
        """Rows spanning ``{w : <u, w> = 0 for all u}``."""
        if self.dim == 0:
            return identity(self.ambient_dim)
        return kernel(self.field, self.basis).basis

    def intersect(self, other: Subspace) -> Subspace:
        self._check(other)
        constraints = np.vstack([self.annihilator(), other.annihilator()])
        if constraints.shape[0] == 0:
            return Subspace.full(self.field, self.ambient_dim)
        return kernel(self.field, constraints)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.field == other.field
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self):
        return hash((self.field, self.ambient_dim, self.basis.tobytes()))

    def reduce(self, v) -> np.ndarray:
        """Canonical coset representative of ``v`` (zero at every pivot)."""
        v = np.array(v, dtype=np.int64, copy=True)
        F = self.field
        for row, pj in zip(self.basis, self.pivots):
            c = v[..., pj].copy()
            v = F.vsub(v, F.vmul(c[..., None], row))
        return v

    def member(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        if v.shape != (self.ambient_dim,):
            raise ShapeError(f"vector of length {v.shape} in ambient {self.ambient_dim}")
        return not self.reduce(v).any()

    def __contains__(self, v) -> bool:
        return self.member(v)

    def members(self, V: np.ndarray) -> np.ndarray:
        """Boolean membership mask for the rows of ``V``."""
        return ~self.reduce(V).any(axis=-1)

    def contains(self, other: Subspace) -> bool:
        self._check(other)
        return bool(self.members(other.basis).all()) if other.dim else True

    def coordinates(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the canonical basis (assumes membership)."""
        v = np.asarray(v, dtype=np.int64)
        return v[..., list(self.pivots)]

    def complement_basis(self) -> np.ndarray:
        """Standard vectors, added greedily in index order, completing a basis."""
        chosen: list[int] = []
        current = self
        n = self.ambient_dim
        for j in range(n):
            if current.dim == n:
                break
            e = np.zeros(n, dtype=np.int64)
            e[j] = 1
            if not current.member(e):
                chosen.append(j)
                current = current + Subspace.span(self.field, e, n)
        out = np.zeros((len(chosen), n), dtype=np.int64)
        out[np.arange(len(chosen)), chosen] = 1
        return out

    def elements(self) -> np.ndarray:
        """All ``q**dim`` members, in canonical coefficient order."""
        coeffs = enumerate_vectors(self.field.q, self.dim)
        if self.dim == 0:
            return np.zeros((1, self.ambient_dim), dtype=np.int64)
        return contract(self.field, coeffs, self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim}/{self.ambient_dim} over F_{self.field.q})"

    def to_json(self) -> list:
        return matrix_to_json(self.field, self.basis)


def subspace_ops(U: Subspace, V: Subspace, kind: str):
    """Named dispatch: ``sum intersect equals contains``; ``member`` takes a vector as ``V``."""
    if kind == "sum":
        return U + V
    if kind == "intersect":
        return U.intersect(V)
    if kind == "equals":
        U._check(V)
        return U == V
    if kind == "contains":
        return U.contains(V)
    if kind == "member":
        return U.member(V)
    raise ValueError(f"unknown subspace operation {kind!r}")


def matrix_to_json(F: GF, M) -> list:
    M = np.asarray(M)
    return [[element_to_json(F, int(x)) for x in row] for row in M]


def matrix_from_json(F: GF, obj) -> np.ndarray:
    rows = [[element_from_json(F, x) for x in row] for row in obj]
    if len({len(r) for r in rows}) > 1:
        raise ShapeError("ragged matrix")
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), -1)


def vectors_to_json(F: GF, V: Iterable) -> list:
    return [[element_to_json(F, int(x)) for x in v] for v in V]
