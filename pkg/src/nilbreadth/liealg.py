"""Lie algebras given by structure constants over a finite field.

``L.c[i, j]`` holds the coordinates of ``[e_i, e_j]``.  Everything else
(centralizers, lower central series, breadth, quotients) is exact linear
algebra on that tensor.

Breadth is constant on cosets of the center, since ``ad(x + z) = ad(x)``.
The enumerating routines therefore walk one representative per coset of
``Z(L)`` (the vector vanishing at the pivot columns of the center's canonical
basis) and weight each by ``|Z(L)|``.
"""

from __future__ import annotations

import os
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .gf import GF, element_from_json, element_to_json, tower_from_json, tower_to_json
from .linalg import (
    ShapeError,
    Subspace,
    bilinear,
    contract,
    enumerate_vectors,
    kernel,
    rank,
    rank_batch,
    solve,
)

DEFAULT_BUDGET = 5**7
CHUNK = 4096


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"enumeration needs {required} coset representatives, budget is {budget}")
        self.required = required
        self.budget = budget


class NotAnIdeal(ValueError):
    pass


class NotALieAlgebra(ValueError):
    pass


def default_budget() -> int:
    env = os.environ.get("LBA_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" or "jacobi"
    indices: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    @property
    def first(self) -> Violation | None:
        return self.violations[0] if self.violations else None


class LieAlgebra:
    """Structure-constant tensor ``c`` of shape ``(dim, dim, dim)`` over ``field``."""

    def __init__(self, field: GF, c, labels: Sequence[str] | None = None, name: str = ""):
        c = np.array(c, dtype=np.int64)  # private copy, frozen below
        if c.ndim != 3 or not (c.shape[0] == c.shape[1] == c.shape[2]):
            raise ShapeError(f"structure tensor must be (n, n, n), got {c.shape}")
        c.setflags(write=False)
        self.field = field
        self.c = c
        self.dim = c.shape[0]
        self.labels = tuple(labels) if labels is not None else tuple(f"e{i}" for i in range(self.dim))
        if len(self.labels) != self.dim:
            raise ShapeError("one label per basis vector")
        self.name = name

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{name} dim={self.dim} over F_{self.field.q}>"

    # -- elementary operations --------------------------------------------

    def _vec(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=np.int64)
        if u.shape[-1] != self.dim:
            raise ShapeError(f"vector length {u.shape[-1]} in a {self.dim}-dimensional algebra")
        return u

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.dim, dtype=np.int64)
        e[i] = 1
        return e

    def bracket(self, u, v) -> np.ndarray:
        """``[u, v]``; leading batch axes of ``u`` and ``v`` broadcast."""
        return bilinear(self.field, self._vec(u), self._vec(v), self.c)

    def ad(self, x) -> np.ndarray:
        """Matrix of ``ad_x``: column ``j`` is ``[x, e_j]``."""
        x = self._vec(x)
        return np.swapaxes(contract(self.field, x, self.c), -1, -2)

    def breadth(self, x) -> int:
        return rank(self.field, self.ad(x))

    def ad_and_breadth(self, x) -> tuple[np.ndarray, int]:
        A = self.ad(x)
        return A, rank(self.field, A)

    def relative_breadth(self, I: Subspace, x) -> int:
        """Rank of ``ad_x`` restricted to ``I``, i.e. ``dim [x, I]``."""
        self._check_subspace(I)
        if I.dim == 0:
            return 0
        images = self.bracket(np.broadcast_to(self._vec(x), I.basis.shape), I.basis)
        return rank(self.field, images)

    def _check_subspace(self, U: Subspace):
        if U.ambient_dim != self.dim or U.field != self.field:
            raise ShapeError("subspace does not live in this algebra")

    def span(self, vectors) -> Subspace:
        return Subspace.span(self.field, vectors, self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.field, self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.field, self.dim)

    # -- validation --------------------------------------------------------

    def validate(self) -> ValidationReport:
        F, c, n = self.field, self.c, self.dim
        violations: list[Violation] = []
        sym = F.vadd(c, np.swapaxes(c, 0, 1))
        bad = np.argwhere(sym.any(axis=2))
        for i, j in bad:
            violations.append(Violation("antisymmetry", (int(i), int(j))))
        # T[i, j, k] = [[e_i, e_j], e_k]
        T = contract(F, c, c)
        J = F.vadd(F.vadd(T, np.einsum("jkim->ijkm", T)), np.einsum("kijm->ijkm", T))
        for i, j, k in np.argwhere(J.any(axis=3)):
            violations.append(Violation("jacobi", (int(i), int(j), int(k))))
        return ValidationReport(not violations, tuple(violations))

    def is_valid(self) -> bool:
        return self.validate().ok

    # -- subspaces ---------------------------------------------------------

    def subspace_bracket(self, U: Subspace, V: Subspace) -> Subspace:
        self._check_subspace(U)
        self._check_subspace(V)
        if U.dim == 0 or V.dim == 0:
            return self.zero()
        brackets = self.bracket(U.basis[:, None, :], V.basis[None, :, :])
        return self.span(brackets.reshape(-1, self.dim))

    def centralizer(self, x) -> Subspace:
        return kernel(self.field, self.ad(x))

    def centralizer_of_subspace(self, U: Subspace) -> Subspace:
        self._check_subspace(U)
        if U.dim == 0:
            return self.full()
        return kernel(self.field, self.ad(U.basis).reshape(-1, self.dim))

    @cached_property
    def center(self) -> Subspace:
        return self.centralizer_of_subspace(self.full())

    @cached_property
    def derived(self) -> Subspace:
        return self.subspace_bracket(self.full(), self.full())

    @cached_property
    def lower_central_series(self) -> tuple[Subspace, ...]:
        """``gamma_1 = L, gamma_{i+1} = [L, gamma_i]`` until zero or stable."""
        terms = [self.full()]
        while terms[-1].dim > 0:
            nxt = self.subspace_bracket(self.full(), terms[-1])
            if nxt == terms[-1]:
                break
            terms.append(nxt)
        return tuple(terms)

    def is_abelian_subspace(self, U: Subspace) -> bool:
        return self.subspace_bracket(U, U).dim == 0

    def is_ideal(self, I: Subspace) -> bool:
        return I.contains(self.subspace_bracket(self.full(), I))

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.c, other.c)

    __hash__ = None

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        brackets = []
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                terms = [[int(k), element_to_json(F, int(v))] for k, v in enumerate(self.c[i, j]) if v]
                if terms:
                    brackets.append([i, j, terms])
        out = tower_to_json(F)
        out.update({"dim": self.dim, "labels": list(self.labels), "brackets": brackets})
        if self.name:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj: dict) -> LieAlgebra:
        F = tower_from_json(obj)
        n = int(obj["dim"])
        c = np.zeros((n, n, n), dtype=np.int64)
        for i, j, terms in obj["brackets"]:
            if not 0 <= i < j < n:
                raise ShapeError(f"bracket indices must satisfy 0 <= i < j < dim, got {i}, {j}")
            for k, coeff in terms:
                v = element_from_json(F, coeff)
                c[i, j, k] = v
                c[j, i, k] = F.neg(v)
        return cls(F, c, obj.get("labels"), obj.get("name", ""))


def from_bilinear(F: GF, dim: int, bracket: Callable[[int, int], Sequence[int]], **kw) -> LieAlgebra:
    """Tensor whose ``[i, j]`` entry is ``bracket(i, j)``."""
    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(dim):
        for j in range(dim):
            c[i, j] = bracket(i, j)
    return LieAlgebra(F, c, **kw)


def validated(L: LieAlgebra) -> LieAlgebra:
    report = L.validate()
    if not report.ok:
        raise NotALieAlgebra(f"{L!r}: {report.first}")
    return L


# -- coset enumeration ----------------------------------------------------------


def _coset_chunks(L: LieAlgebra, budget: int | None):
    """Chunks of canonical representatives of ``L / Z(L)``.

    Returns ``(free_columns, count, chunk_bounds)``.
    """
    budget = default_budget() if budget is None else budget
    Z = L.center
    free = [j for j in range(L.dim) if j not in Z.pivots]
    count = L.field.q ** len(free)
    if count > budget:
        raise BudgetExceeded(count, budget)
    bounds = [(s, min(s + CHUNK, count)) for s in range(0, count, CHUNK)]
    return free, count, bounds


def _reps(L: LieAlgebra, free: list[int], start: int, stop: int) -> np.ndarray:
    coeffs = enumerate_vectors(L.field.q, len(free), start, stop)
    X = np.zeros((coeffs.shape[0], L.dim), dtype=np.int64)
    X[:, free] = coeffs
    return X


def _leading_one(X: np.ndarray) -> np.ndarray:
    """Rows whose first nonzero coordinate is 1 (one per scalar orbit)."""
    nz = X != 0
    first = nz.argmax(axis=1)
    lead = X[np.arange(X.shape[0]), first]
    return nz.any(axis=1) & (lead == 1)


def _map_chunks(fn, bounds, workers: int):
    if workers <= 1 or len(bounds) <= 1:
        return [fn(b) for b in bounds]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, bounds))


@dataclass(frozen=True)
class BreadthReport:
    histogram: dict[int, int]

    @property
    def type_set(self) -> tuple[int, ...]:
        return tuple(sorted(self.histogram))

    @property
    def total(self) -> int:
        return sum(self.histogram.values())

    def to_json(self) -> dict:
        return {
            "type_set": list(self.type_set),
            "histogram": {str(b): n for b, n in sorted(self.histogram.items())},
        }


def breadth_report(
    L: LieAlgebra,
    budget: int | None = None,
    workers: int = 1,
    orbits: bool = False,
) -> BreadthReport:
    """Exact count of elements of each breadth.

    With ``orbits=True`` only one vector per line is ranked and its count is
    multiplied by ``q - 1``; the histogram is the same either way.
    """
    F = L.field
    free, count, bounds = _coset_chunks(L, budget)
    zsize = F.q**L.center.dim

    def work(bound):
        X = _reps(L, free, *bound)
        weight = zsize
        if orbits:
            keep = _leading_one(X)
            hist = Counter()
            if bound[0] == 0:
                hist[0] += zsize  # the zero coset
            X = X[keep]
            weight = zsize * (F.q - 1)
        else:
            hist = Counter()
        if X.shape[0]:
            ranks = rank_batch(F, contract(F, X, L.c))
            for r, n in zip(*np.unique(ranks, return_counts=True)):
                hist[int(r)] += int(n) * weight
        return hist

    total = Counter()
    for h in _map_chunks(work, bounds, workers):
        total.update(h)
    return BreadthReport(dict(sorted(total.items())))


@dataclass(frozen=True)
class CaminaReport:
    is_camina: bool
    degenerate: bool
    witness: tuple[int, ...] | None = None

    def __bool__(self):
        return self.is_camina


def is_camina(L: LieAlgebra, budget: int | None = None, workers: int = 1) -> CaminaReport:
    """``[x, L] = L'`` for every ``x`` outside ``L'``.

    ``[x, L]`` always lies in ``L'``, so the test is ``rank ad_x == dim L'``.
    A coset ``x + Z`` lies inside ``L'`` only when ``x`` does and ``Z <= L'``;
    every other coset contains elements outside ``L'`` and is tested.
    """
    F = L.field
    D, Z = L.derived, L.center
    stem = D.contains(Z)
    free, count, bounds = _coset_chunks(L, budget)

    def work(bound):
        X = _reps(L, free, *bound)
        if stem:
            X = X[~D.members(X)]
        X = X[_leading_one(X) | ~X.any(axis=1)]
        if X.shape[0] == 0:
            return None
        ranks = rank_batch(F, contract(F, X, L.c))
        bad = np.nonzero(ranks != D.dim)[0]
        return tuple(int(v) for v in X[bad[0]]) if bad.size else None

    witnesses = [w for w in _map_chunks(work, bounds, workers) if w is not None]
    witness = witnesses[0] if witnesses else None
    return CaminaReport(witness is None, D.dim == 0, witness)


def noncentral_centralizers_abelian(
    L: LieAlgebra, budget: int | None = None, workers: int = 1
) -> tuple[bool, tuple[int, ...] | None]:
    """Whether ``C_L(x)`` is abelian for every ``x`` outside ``Z(L)``.

    Returns the verdict and the first representative with a non-abelian
    centralizer.  ``C(x) = C(lambda x)``, so one vector per line suffices.
    """
    free, count, bounds = _coset_chunks(L, budget)

    def work(bound):
        X = _reps(L, free, *bound)
        X = X[_leading_one(X)]
        for x in X:
            C = L.centralizer(x)
            if not L.is_abelian_subspace(C):
                return tuple(int(v) for v in x)
        return None

    found = [w for w in _map_chunks(work, bounds, workers) if w is not None]
    return (not found, found[0] if found else None)


def relative_ranks(L: LieAlgebra, X: np.ndarray, I: Subspace) -> np.ndarray:
    """Relative breadth ``rank(ad_x restricted to I)`` for each row of ``X``."""
    X = L._vec(np.asarray(X, dtype=np.int64))
    if I.dim == 0:
        return np.zeros(X.shape[0], dtype=np.int64)
    M = L.bracket(X[:, None, :], I.basis[None, :, :])  # (N, dim I, dim L)
    return rank_batch(L.field, M)


@dataclass(frozen=True)
class DerivedCentralizerReport:
    """``C_L(x) & L' == Z(L)`` for every ``x`` outside ``L'``; and the span of those ``x``."""

    all_meet_in_center: bool
    witness: tuple[int, ...] | None
    good_span: Subspace


def derived_centralizers(L: LieAlgebra, budget: int | None = None, workers: int = 1) -> DerivedCentralizerReport:
    """Exhaustive over cosets of ``Z``: both properties are constant on cosets.

    ``Z <= C(x) & L'`` whenever ``Z <= L'``, so equality is a rank test:
    ``rank(ad_x on L') == dim L' - dim Z``.
    """
    D, Z = L.derived, L.center
    target = D.dim - D.intersect(Z).dim
    free, count, bounds = _coset_chunks(L, budget)

    def work(bound):
        X = _reps(L, free, *bound)
        ranks = relative_ranks(L, X, D)
        good = (ranks == target) & (D.intersect(Z) == Z)
        outside = ~D.members(X)
        bad = np.nonzero(outside & ~good)[0]
        witness = tuple(int(v) for v in X[bad[0]]) if bad.size else None
        return witness, L.span(X[good].reshape(-1, L.dim))

    witness, span, any_good = None, L.zero(), False
    for w, S in _map_chunks(work, bounds, workers):
        if witness is None and w is not None:
            witness = w
        if S.dim:
            any_good = True
            span = span + S
    if any_good:
        span = span + Z  # x good => x + z good
    return DerivedCentralizerReport(witness is None, witness, span)


@dataclass(frozen=True)
class ShiftReport:
    """For all ``u, v`` outside ``L'`` with ``[u, v]`` central, is ``[u, v + h] = 0`` for some ``h`` in ``L'``?"""

    holds: bool
    pairs_checked: int
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None


def centralizing_shift(L: LieAlgebra, budget: int | None = None) -> ShiftReport:
    """Literal search over all pairs and all ``h`` in ``L'``."""
    budget = default_budget() if budget is None else budget
    F, D, Z = L.field, L.derived, L.center
    required = F.q ** (2 * L.dim)  # ordered pairs of elements
    if required > budget:
        raise BudgetExceeded(required, budget)
    E = enumerate_vectors(F.q, L.dim)
    outside = E[~D.members(E)]
    H = D.elements()
    checked = 0
    for u in outside:
        B = L.bracket(u, outside)
        V = outside[Z.members(B)]
        checked += V.shape[0]
        if not V.shape[0]:
            continue
        shifted = F.vadd(L.bracket(u, V)[:, None, :], L.bracket(u, H)[None, :, :])
        found = (~shifted.any(axis=2)).any(axis=1)
        if not found.all():
            v = V[np.nonzero(~found)[0][0]]
            return ShiftReport(False, checked, (tuple(map(int, u)), tuple(map(int, v))))
    return ShiftReport(True, checked, None)


def nonabelian_witness(L: LieAlgebra, U: Subspace) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """First pair of basis vectors of ``U`` with a nonzero bracket."""
    B = U.basis
    prods = L.bracket(B[:, None, :], B[None, :, :]).any(axis=2)
    hits = np.argwhere(prods)
    if not hits.size:
        return None
    i, j = hits[0]
    return tuple(map(int, B[i])), tuple(map(int, B[j]))


# -- series and fingerprints -------------------------------------------------------


@dataclass(frozen=True)
class SeriesReport:
    gamma_dims: tuple[int, ...]
    derived_dim: int
    center_dim: int
    nilpotency_class: int | None  # None: not nilpotent
    is_stem: bool

    @property
    def is_nilpotent(self) -> bool:
        return self.nilpotency_class is not None

    def to_json(self) -> dict:
        return {
            "gamma_dims": list(self.gamma_dims),
            "derived_dim": self.derived_dim,
            "center_dim": self.center_dim,
            "nilpotency_class": self.nilpotency_class if self.is_nilpotent else "NotNilpotent",
            "is_stem": self.is_stem,
        }


def series(L: LieAlgebra) -> SeriesReport:
    terms = L.lower_central_series
    dims = tuple(t.dim for t in terms)
    # nilpotent of class c: gamma_{c+1} = 0 != gamma_c
    cls = len(dims) - 1 if dims[-1] == 0 else None
    return SeriesReport(dims, L.derived.dim, L.center.dim, cls, L.derived.contains(L.center))


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    nilpotency_class: int | None
    gamma_dims: tuple[int, ...]
    center_dim: int
    derived_dim: int
    histogram: tuple[tuple[int, int], ...]
    all_noncentral_centralizers_abelian: bool
    is_camina: bool
    is_stem: bool

    @property
    def type_set(self) -> tuple[int, ...]:
        return tuple(b for b, _ in self.histogram)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "nilpotency_class": self.nilpotency_class if self.nilpotency_class is not None else "NotNilpotent",
            "gamma_dims": list(self.gamma_dims),
            "center_dim": self.center_dim,
            "derived_dim": self.derived_dim,
            "type_set": list(self.type_set),
            "histogram": {str(b): n for b, n in self.histogram},
            "all_noncentral_centralizers_abelian": self.all_noncentral_centralizers_abelian,
            "is_camina": self.is_camina,
            "is_stem": self.is_stem,
        }


def fingerprint(L: LieAlgebra, budget: int | None = None, workers: int = 1) -> Fingerprint:
    s = series(L)
    hist = breadth_report(L, budget, workers, orbits=True)
    abelian, _ = noncentral_centralizers_abelian(L, budget, workers)
    return Fingerprint(
        dim=L.dim,
        nilpotency_class=s.nilpotency_class,
        gamma_dims=s.gamma_dims,
        center_dim=s.center_dim,
        derived_dim=s.derived_dim,
        histogram=tuple(hist.histogram.items()),
        all_noncentral_centralizers_abelian=abelian,
        is_camina=is_camina(L, budget, workers).is_camina,
        is_stem=s.is_stem,
    )


# -- quotients and generation ----------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    algebra: LieAlgebra
    projection: np.ndarray  # (dim L/I, dim L)
    section: np.ndarray  # rows: the standard vectors lifting the quotient basis

    def project(self, v) -> np.ndarray:
        return contract(self.algebra.field, np.asarray(v), self.projection.T)


def quotient(L: LieAlgebra, I: Subspace) -> Quotient:
    """``L / I`` on the basis of standard vectors completing ``I`` greedily."""
    L._check_subspace(I)
    if not L.is_ideal(I):
        raise NotAnIdeal("[L, I] is not contained in I")
    F = L.field
    S = I.complement_basis()
    k = S.shape[0]
    B = np.vstack([S, I.basis])  # rows form a basis of L
    # v = coeffs @ B  =>  coeffs = solve(B^T, v); the first k coordinates project
    P = np.zeros((k, L.dim), dtype=np.int64)
    for j in range(L.dim):
        x = solve(F, B.T, L.basis_vector(j))
        P[:, j] = x[:k]
    images = L.bracket(S[:, None, :], S[None, :, :])  # (k, k, dim)
    cq = contract(F, images, P.T)
    labels = [L.labels[int(np.argmax(s))] for s in S]
    Q = validated(LieAlgebra(F, cq, labels, name=f"{L.name}/I" if L.name else ""))
    return Quotient(Q, P, S)


def generated(L: LieAlgebra, vectors) -> Subspace:
    """Smallest subalgebra containing ``vectors``."""
    V = np.asarray(vectors, dtype=np.int64).reshape(-1, L.dim)
    U = L.span(V)
    while True:
        nxt = U + L.subspace_bracket(U, U)
        if nxt == U:
            return U
        U = nxt


# -- presentations ---------------------------------------------------------------


@dataclass
class PresentationData:
    """Generators and the full list of nonzero basis brackets.

    ``relations[(i, j)]`` (``i < j``) maps generator indices to coefficients of
    ``[g_i, g_j]``; every unlisted bracket of generators is zero.
    """

    generators: list[str]
    relations: dict[tuple[int, int], dict[int, int]] = field(default_factory=dict)

    def tensor(self, F: GF) -> LieAlgebra:
        n = len(self.generators)
        c = np.zeros((n, n, n), dtype=np.int64)
        for (i, j), combo in self.relations.items():
            for k, v in combo.items():
                c[i, j, k] = F.add(int(c[i, j, k]), v)
                c[j, i, k] = F.neg(int(c[i, j, k]))
        return LieAlgebra(F, c, self.generators)


@dataclass(frozen=True)
class HomReport:
    relations_hold: bool
    images_generate: bool
    is_isomorphism_evidence: bool
    failed_relations: tuple[tuple[str, str], ...] = ()

    def to_json(self) -> dict:
        return {
            "relations_hold": self.relations_hold,
            "images_generate": self.images_generate,
            "is_isomorphism_evidence": self.is_isomorphism_evidence,
            "failed_relations": [list(r) for r in self.failed_relations],
        }


def check_hom(presentation: PresentationData, target: LieAlgebra, images) -> HomReport:
    """Does ``g_i -> images[i]`` respect every relation, and do the images generate?"""
    F = target.field
    imgs = target._vec(np.asarray(images, dtype=np.int64))
    n = len(presentation.generators)
    if imgs.shape != (n, target.dim):
        raise ShapeError(f"need {n} images of length {target.dim}")
    failed = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = target.bracket(imgs[i], imgs[j])
            rhs = np.zeros(target.dim, dtype=np.int64)
            for k, v in presentation.relations.get((i, j), {}).items():
                rhs = F.vadd(rhs, F.vmul(v, imgs[k]))
            if not np.array_equal(lhs, rhs):
                failed.append((presentation.generators[i], presentation.generators[j]))
    gen = generated(target, imgs).dim == target.dim
    holds = not failed
    return HomReport(holds, gen, holds and gen and target.dim == n, tuple(failed))


def is_homomorphism(source: LieAlgebra, target: LieAlgebra, M: np.ndarray) -> bool:
    """Check ``M [e_i, e_j] = [M e_i, M e_j]`` on all basis pairs (``M`` acts on columns)."""
    F = source.field
    M = np.asarray(M, dtype=np.int64)
    imgs = M.T  # row i = image of e_i
    lhs = contract(F, source.c, imgs)
    rhs = target.bracket(imgs[:, None, :], imgs[None, :, :])
    return np.array_equal(lhs, rhs)
