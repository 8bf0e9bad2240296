"""Finite (pre-)semifields as bilinear multiplication tensors.

``P.mult[i, j]`` holds the coordinates of ``e_i * e_j`` over the base field,
so both distributive laws hold by construction and only the absence of zero
divisors and the identity need checking.

Matrices act on column vectors: ``L_a`` is ``b -> a*b`` and ``R_b`` is
``a -> a*b``.  An isotopism ``(A, B, C)`` from ``P1`` to ``P2`` satisfies
``C(a *1 b) = A(a) *2 B(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .gf import GF, element_from_json, element_to_json, find_nonsquare, tower_from_json, tower_to_json
from .liealg import BudgetExceeded, LieAlgebra, default_budget, is_camina, is_homomorphism, series, validated
from .linalg import (
    ShapeError,
    Subspace,
    bilinear,
    contract,
    enumerate_vectors,
    identity,
    inverse,
    is_invertible,
    kernel,
    matrix_from_json,
    matrix_to_json,
    random_invertible,
    rank_batch,
    solve,
)


class UnsupportedParameters(ValueError):
    pass


class BadParameter(ValueError):
    pass


class NotCertified(ValueError):
    pass


class SingularMap(ValueError):
    pass


class IsotopismInvalid(ValueError):
    pass


class HypothesisFailure(ValueError):
    def __init__(self, check: str, detail: str = ""):
        super().__init__(f"{check}: {detail}" if detail else check)
        self.check = check


class PreSemifield:
    """Bilinear multiplication on ``F^n``."""

    def __init__(self, field: GF, mult, certified_f3: bool = False, name: str = ""):
        mult = np.array(mult, dtype=np.int64)  # private copy, frozen below
        if mult.ndim != 3 or not (mult.shape[0] == mult.shape[1] == mult.shape[2]):
            raise ShapeError(f"multiplication tensor must be (n, n, n), got {mult.shape}")
        mult.setflags(write=False)
        self.field = field
        self.mult = mult
        self.certified_f3 = certified_f3
        self.name = name

    identity: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.mult.shape[0]

    def __repr__(self):
        kind = type(self).__name__
        return f"<{kind} {self.name} n={self.n} over F_{self.field.q}>"

    def mul(self, a, b) -> np.ndarray:
        return bilinear(self.field, a, b, self.mult)

    def left_matrix(self, a) -> np.ndarray:
        """``L_a``: column ``j`` is ``a * e_j``."""
        return np.swapaxes(contract(self.field, np.asarray(a), self.mult), -1, -2)

    def right_matrix(self, b) -> np.ndarray:
        """``R_b``: column ``i`` is ``e_i * b``."""
        return np.swapaxes(contract(self.field, np.asarray(b), np.swapaxes(self.mult, 0, 1)), -1, -2)

    def basis_vector(self, i: int) -> np.ndarray:
        e = np.zeros(self.n, dtype=np.int64)
        e[i] = 1
        return e

    def elements(self) -> np.ndarray:
        return enumerate_vectors(self.field.q, self.n)

    def __eq__(self, other):
        if not isinstance(other, PreSemifield):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.mult, other.mult)

    __hash__ = None

    def to_json(self) -> dict:
        F = self.field
        out = tower_to_json(F)
        out.update(
            {
                "n": self.n,
                "mult": [[[element_to_json(F, int(x)) for x in self.mult[i, j]] for j in range(self.n)] for i in range(self.n)],
                "identity": None if self.identity is None else [element_to_json(F, int(x)) for x in self.identity],
            }
        )
        if self.name:
            out["name"] = self.name
        return out

    @staticmethod
    def from_json(obj: dict) -> PreSemifield:
        F = tower_from_json(obj)
        n = int(obj["n"])
        mult = np.array(
            [[[element_from_json(F, x) for x in obj["mult"][i][j]] for j in range(n)] for i in range(n)],
            dtype=np.int64,
        ).reshape(n, n, n)
        ident = obj.get("identity")
        if ident is None:
            return PreSemifield(F, mult, name=obj.get("name", ""))
        return Semifield(F, mult, [element_from_json(F, x) for x in ident], name=obj.get("name", ""))


class Semifield(PreSemifield):
    """A pre-semifield with a two-sided identity (checked on basis vectors)."""

    def __init__(self, field: GF, mult, identity, certified_f3: bool = False, name: str = ""):
        super().__init__(field, mult, certified_f3, name)
        e = np.array(identity, dtype=np.int64)
        e.setflags(write=False)
        self.identity = e
        I = np.eye(self.n, dtype=np.int64)
        if not (np.array_equal(self.mul(e, I), I) and np.array_equal(self.mul(I, e), I)):
            raise BadParameter("identity element does not act as the identity")


# -- axioms ----------------------------------------------------------------------------


@dataclass(frozen=True)
class F3Report:
    ok: bool
    witness: tuple[tuple[int, ...], tuple[int, ...]] | None
    left_ok: bool
    right_ok: bool

    def __bool__(self):
        return self.ok


def certify_f3(P: PreSemifield) -> F3Report:
    """No zero divisors: ``L_a`` invertible for every ``a != 0``.

    The witness ``(a, b)`` has ``a`` first in canonical order with singular
    ``L_a`` and ``b`` the first canonical kernel vector.  Right
    multiplications are checked as well and must agree.
    """
    F, n = P.field, P.n
    X = P.elements()[1:]
    left = rank_batch(F, contract(F, X, P.mult))
    right = rank_batch(F, contract(F, X, np.swapaxes(P.mult, 0, 1)))
    bad = np.nonzero(left < n)[0]
    witness = None
    if bad.size:
        a = X[bad[0]]
        b = kernel(F, P.left_matrix(a)).basis[0]
        witness = (tuple(int(v) for v in a), tuple(int(v) for v in b))
    left_ok, right_ok = not bad.size, bool((right == n).all())
    return F3Report(left_ok and right_ok, witness, left_ok, right_ok)


def certified(P: PreSemifield) -> PreSemifield:
    report = certify_f3(P)
    P.certified_f3 = report.ok
    return P


@dataclass(frozen=True)
class AssocComm:
    is_commutative: bool
    is_associative: bool
    commutativity_witness: tuple[int, int] | None
    associativity_witness: tuple[int, int, int] | None


def _associator(P: PreSemifield) -> np.ndarray:
    """``A[i, j, k] = e_i*(e_j*e_k) - (e_i*e_j)*e_k``."""
    F, M = P.field, P.mult
    # e_i * (e_j*e_k) = sum_t M[j,k,t] M[i,t,:]
    right = np.transpose(contract(F, M, np.swapaxes(M, 0, 1)), (2, 0, 1, 3))
    left = contract(F, M, M)
    return F.vsub(right, left)


def assoc_comm(P: PreSemifield) -> AssocComm:
    F, M = P.field, P.mult
    comm_bad = np.argwhere(F.vsub(M, np.swapaxes(M, 0, 1)).any(axis=2))
    assoc_bad = np.argwhere(_associator(P).any(axis=3))
    return AssocComm(
        not comm_bad.size,
        not assoc_bad.size,
        tuple(int(v) for v in comm_bad[0]) if comm_bad.size else None,
        tuple(int(v) for v in assoc_bad[0]) if assoc_bad.size else None,
    )


@dataclass(frozen=True)
class NucleusReport:
    subspace: Subspace
    is_field: bool

    @property
    def size(self) -> int:
        return self.subspace.field.q ** self.subspace.dim


def middle_nucleus(F: Semifield, budget: int | None = None) -> NucleusReport:
    """``{z : x*(z*y) = (x*z)*y}`` as the kernel of the (linear in z) associator map."""
    K, n = F.field, F.n
    A = _associator(F)  # A[i, l, j] = e_i*(e_l*e_j) - (e_i*e_l)*e_j
    M = np.transpose(A, (0, 2, 3, 1)).reshape(-1, n)
    mid = kernel(K, M)
    return NucleusReport(mid, _is_subfield(F, mid, budget))


def _is_subfield(F: Semifield, S: Subspace, budget: int) -> bool:
    if F.identity is None or not S.member(F.identity):
        return False
    if S.dim == 0:
        return False
    prods = F.mul(S.basis[:, None, :], S.basis[None, :, :]).reshape(-1, F.n)
    if not S.members(prods).all():
        return False
    budget = default_budget() if budget is None else budget
    if F.field.q**S.dim > budget:
        raise BudgetExceeded(F.field.q**S.dim, budget)
    for z in S.elements()[1:]:
        w = solve(F.field, F.left_matrix(z), F.identity)
        if w is None or not S.member(w):
            return False
    return True


# -- constructions ---------------------------------------------------------------------


def dickson_mul(Fq: GF, k: int, sigma: int, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
    """``(a,b)*(c,d) = (ac + k s(b) s(d), ad + bc)`` with ``s = x -> x^(p^sigma)``."""
    (a, b), (c, d) = u, v
    s = lambda x: Fq.frob(x, sigma)  # noqa: E731
    first = Fq.add(Fq.mul(a, c), Fq.mul(k, Fq.mul(s(b), s(d))))
    second = Fq.add(Fq.mul(a, d), Fq.mul(b, c))
    return first, second


def dickson_vector(Fq: GF, a: int, b: int) -> np.ndarray:
    """Prime-field coordinates of the pair ``(a, b)``."""
    return np.array(Fq.prime_digits(a) + Fq.prime_digits(b), dtype=np.int64)


def dickson_pair(Fq: GF, v) -> tuple[int, int]:
    e = Fq.total_degree
    return Fq.from_prime_digits(v[:e]), Fq.from_prime_digits(v[e:])


def dickson(Fq: GF, sigma: int = 1, k: int | str = "auto") -> Semifield:
    """Dickson's commutative semifield on ``F_q x F_q``.

    The multiplication is only linear over the fixed field of the twist, so
    the tensor is written over the prime field: ``n = 2s`` for ``q = p^s``.
    """
    p, s = Fq.p, Fq.total_degree
    if p == 2 or s == 1:
        raise UnsupportedParameters("needs odd characteristic and q = p^s with s > 1")
    if not 1 <= sigma < s:
        raise UnsupportedParameters(f"automorphism index must be in 1..{s - 1}")
    if k == "auto":
        k = find_nonsquare(Fq)
    k = int(k)
    if k in Fq.squares():
        raise BadParameter(f"{k} is a square in F_{Fq.q}")
    n = 2 * s
    basis = [dickson_pair(Fq, np.eye(n, dtype=np.int64)[i]) for i in range(n)]
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mult[i, j] = dickson_vector(Fq, *dickson_mul(Fq, k, sigma, basis[i], basis[j]))
    F = Semifield(GF.prime(p), mult, dickson_vector(Fq, 1, 0), name=f"Dickson(F_{Fq.q}, sigma={sigma}, k={k})")
    report = certify_f3(F)
    if not report.ok:
        raise BadParameter(f"Dickson multiplication has zero divisors: {report.witness}")
    F.certified_f3 = True
    return F


def field_semifield(Fq: GF, n: int, poly=None) -> Semifield:
    """``F_{q^n}`` over ``F_q`` in the power basis of the degree-``n`` extension."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1 and poly is None:
        mult = np.ones((1, 1, 1), dtype=np.int64)
        return Semifield(Fq, mult, [1], certified_f3=True, name=f"F_{Fq.q}")
    K = Fq.extension(n, poly)
    alpha = K.generator
    mult = np.zeros((n, n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            mult[i, j] = K.coords(K.pow(alpha, i + j))
    ident = np.zeros(n, dtype=np.int64)
    ident[0] = 1
    return Semifield(Fq, mult, ident, certified_f3=True, name=f"F_{K.q}/F_{Fq.q}")


# -- isotopisms ------------------------------------------------------------------------


@dataclass(frozen=True)
class Isotopism:
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray

    def check(self, F: GF, n: int):
        for name, M in (("A", self.A), ("B", self.B), ("C", self.C)):
            if np.shape(M) != (n, n) or not is_invertible(F, M):
                raise SingularMap(f"{name} is not an invertible {n}x{n} matrix")

    def to_json(self, F: GF) -> dict:
        return {k: matrix_to_json(F, getattr(self, k)) for k in "ABC"}

    @staticmethod
    def from_json(F: GF, obj: dict) -> Isotopism:
        return Isotopism(*(matrix_from_json(F, obj[k]) for k in "ABC"))

    @staticmethod
    def identity(n: int) -> Isotopism:
        return Isotopism(identity(n), identity(n), identity(n))

    @staticmethod
    def random(F: GF, n: int, seed: int) -> Isotopism:
        return Isotopism(*(random_invertible(F, n, seed * 3 + t) for t in range(3)))


def apply_isotopism(P: PreSemifield, iso: Isotopism) -> PreSemifield:
    """``a *2 b := C(A^-1 a *1 B^-1 b)``."""
    F, n = P.field, P.n
    iso.check(F, n)
    Ai, Bi = inverse(F, iso.A), inverse(F, iso.B)
    prods = P.mul(Ai.T[:, None, :], Bi.T[None, :, :])  # [i, j] = A^-1 e_i * B^-1 e_j
    mult = contract(F, prods, iso.C.T)
    out = PreSemifield(F, mult, P.certified_f3, name=f"{P.name}^iso" if P.name else "")
    return out


def verify_isotopism(P1: PreSemifield, P2: PreSemifield, iso: Isotopism) -> bool:
    """``C(e_i *1 e_j) = A e_i *2 B e_j`` on all basis pairs."""
    F, n = P1.field, P1.n
    if P2.field != F or P2.n != n:
        return False
    try:
        iso.check(F, n)
    except SingularMap:
        return False
    lhs = contract(F, P1.mult, iso.C.T)
    rhs = P2.mul(iso.A.T[:, None, :], iso.B.T[None, :, :])
    return bool(np.array_equal(lhs, rhs))


def normalize_to_semifield(P: PreSemifield) -> tuple[Semifield, Isotopism]:
    """Kaplansky's trick: ``a o b := x * y`` with ``x*e = a`` and ``e*y = b``.

    ``e`` is the first nonzero vector.  The returned isotopism
    ``(R_e, L_e, 1)`` goes from ``P`` to the new semifield, whose identity
    is ``e*e``.
    """
    if not P.certified_f3 and not certify_f3(P).ok:
        raise NotCertified("pre-semifield has zero divisors")
    F, n = P.field, P.n
    e = P.basis_vector(0)
    Re, Le = P.right_matrix(e), P.left_matrix(e)
    Ri, Li = inverse(F, Re), inverse(F, Le)
    mult = P.mul(Ri.T[:, None, :], Li.T[None, :, :])
    name = f"normalized({P.name})" if P.name else ""
    S = Semifield(F, mult, P.mul(e, e), certified_f3=True, name=name)
    return S, Isotopism(Re, Le, identity(n))


# -- the Lie algebra of a pre-semifield ------------------------------------------------------


def lie_of(P: PreSemifield) -> LieAlgebra:
    """``F^3`` with ``[(a1,b1,c1), (a2,b2,c2)] = (0, 0, a1*b2 - a2*b1)``.

    Basis order: the ``A`` block, the ``B`` block, then the ``C`` block.
    """
    F, n = P.field, P.n
    c = np.zeros((3 * n, 3 * n, 3 * n), dtype=np.int64)
    c[:n, n : 2 * n, 2 * n :] = P.mult
    c[n : 2 * n, :n, 2 * n :] = F.vneg(np.swapaxes(P.mult, 0, 1))
    labels = [f"{blk}{i}" for blk in "abc" for i in range(n)]
    name = f"L({P.name})" if P.name else ""
    return validated(LieAlgebra(F, c, labels, name=name))


def block_subspaces(P: PreSemifield) -> tuple[Subspace, Subspace, Subspace]:
    """``A* = A + C``, ``B* = B + C`` and ``C`` inside :func:`lie_of`."""
    n = P.n
    I = np.eye(3 * n, dtype=np.int64)
    span = lambda rows: Subspace.span(P.field, rows, 3 * n)  # noqa: E731
    return span(I[list(range(n)) + list(range(2 * n, 3 * n))]), span(I[n:]), span(I[2 * n :])


@dataclass(frozen=True)
class PairCentralizer:
    subspace: Subspace  # inside F x F, coordinates (a2, b2)
    abelian: bool


def centralizer_pair(P: PreSemifield, a, b) -> PairCentralizer:
    """``{(a2, b2) : a*b2 = a2*b}`` and whether ``C x F`` is abelian in ``L(F)``."""
    F, n = P.field, P.n
    a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
    M = np.hstack([F.vneg(P.right_matrix(b)), P.left_matrix(a)])
    C = kernel(F, M)
    U, V = C.basis[:, :n], C.basis[:, n:]
    cross = F.vsub(P.mul(U[:, None, :], V[None, :, :]), P.mul(U[None, :, :], V[:, None, :]))
    return PairCentralizer(C, not cross.any())


def lie_iso_from_isotopism(
    P1: PreSemifield, P2: PreSemifield, iso: Isotopism, strict: bool = True
) -> tuple[np.ndarray, bool]:
    """Block map ``(a, b, c) -> (A a, B b, C c)`` and whether it is a Lie isomorphism.

    With ``strict`` the isotopism itself must verify first.
    """
    if strict and not verify_isotopism(P1, P2, iso):
        raise IsotopismInvalid("C(a*b) != A(a)*B(b) on some basis pair")
    F, n = P1.field, P1.n
    M = np.zeros((3 * n, 3 * n), dtype=np.int64)
    M[:n, :n], M[n : 2 * n, n : 2 * n], M[2 * n :, 2 * n :] = iso.A, iso.B, iso.C
    ok = is_invertible(F, M) and is_homomorphism(lie_of(P1), lie_of(P2), M)
    return M, bool(ok)


# -- recognising a semifield Lie algebra -------------------------------------------------------


def _algebra_hypotheses(L: LieAlgebra, budget: int | None) -> int:
    """Class 2, ``L' = Z(L)`` of dimension ``dim L / 3``, and Camina; returns ``dim L'``."""
    s = series(L)
    D, Z = L.derived, L.center
    if s.nilpotency_class != 2:
        raise HypothesisFailure("class", f"nilpotency class is {s.nilpotency_class}, need 2")
    if D != Z:
        raise HypothesisFailure("derived_equals_center")
    if L.dim % 3 or D.dim != L.dim // 3:
        raise HypothesisFailure("dimensions", f"dim L = {L.dim}, dim L' = {D.dim}")
    camina = is_camina(L, budget)
    if not camina:
        raise HypothesisFailure("camina", f"witness {camina.witness}")
    return D.dim


def _complement(L: LieAlgebra, within: Subspace, D: Subspace) -> np.ndarray:
    """Rows of ``within``'s canonical basis, taken greedily, completing ``D``."""
    chosen, current = [], D
    for row in within.basis:
        if not current.member(row):
            chosen.append(row)
            current = current + L.span(row)
    return np.array(chosen, dtype=np.int64).reshape(-1, L.dim)


def extract_with_map(
    L: LieAlgebra, Astar: Subspace, Bstar: Subspace, budget: int | None = None
) -> tuple[PreSemifield, np.ndarray]:
    """Pre-semifield ``a*b := [a, b]`` read off two abelian subalgebras.

    Also returns the matrix whose columns are the chosen basis
    ``(A-block, B-block, L'-block)``; it maps ``lie_of(P)`` isomorphically
    onto ``L``.
    """
    n = _algebra_hypotheses(L, budget)
    D = L.derived
    for name, S in (("Astar", Astar), ("Bstar", Bstar)):
        L._check_subspace(S)
        if S.dim != 2 * n:
            raise HypothesisFailure(f"{name}_dim", f"dim {S.dim}, need {2 * n}")
        if not S.contains(D):
            raise HypothesisFailure(f"{name}_contains_derived")
        if not L.is_abelian_subspace(S):
            raise HypothesisFailure(f"{name}_abelian")
    if Astar.intersect(Bstar) != D:
        raise HypothesisFailure("intersection", "A* and B* must meet exactly in L'")
    A = _complement(L, Astar, D)
    B = _complement(L, Bstar, D)
    prods = L.bracket(A[:, None, :], B[None, :, :])
    mult = D.coordinates(prods)
    P = PreSemifield(L.field, mult, name=f"extract({L.name})" if L.name else "")
    report = certify_f3(P)
    if not report.ok:
        raise HypothesisFailure("f3", f"zero divisor {report.witness}")
    P.certified_f3 = True
    basis = np.vstack([A, B, D.basis]).T
    return P, basis


def extract(L: LieAlgebra, Astar: Subspace, Bstar: Subspace, budget: int | None = None) -> PreSemifield:
    return extract_with_map(L, Astar, Bstar, budget)[0]


def abelian_centralizer_pair(L: LieAlgebra) -> tuple[Subspace, Subspace]:
    """Two distinct centralizers of elements outside ``L'``, first in canonical order."""
    D = L.derived
    first = None
    for x in enumerate_vectors(L.field.q, L.dim)[1:]:
        if D.member(x):
            continue
        C = L.centralizer(x)
        if first is None:
            first = C
        elif C != first and C.intersect(first) == D:
            return first, C
    raise HypothesisFailure("centralizers", "fewer than two distinct centralizers outside L'")


def extract_auto(L: LieAlgebra, budget: int | None = None) -> tuple[PreSemifield, np.ndarray]:
    """:func:`extract_with_map` with ``A*``, ``B*`` found by :func:`abelian_centralizer_pair`."""
    _algebra_hypotheses(L, budget)
    A, B = abelian_centralizer_pair(L)
    return extract_with_map(L, A, B, budget)
