"""Builders for the named algebras.

All algebras are over ``F_q``.  Those defined over ``K = F_{q^m}`` are
restricted to ``F_q`` through the power basis ``1, alpha, ..., alpha^(m-1)``
of ``K``; coordinate ``s*m + t`` holds the ``alpha^t`` component of slot ``s``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .gf import GF, field_q
from .liealg import LieAlgebra, PresentationData, quotient, validated


class UnsupportedCharacteristic(ValueError):
    pass


def fields(q: int, m: int, poly: Sequence[int] | None = None) -> tuple[GF, GF]:
    """``(F_q, F_{q^m})``; ``poly`` overrides the defining polynomial of the top level."""
    Fq = field_q(q)
    if m < 1:
        raise ValueError("m must be >= 1")
    if poly is None and m == 1:
        return Fq, Fq
    return Fq, Fq.extension(m, poly)


def _coords(Fq: GF, K: GF, x: int) -> tuple[int, ...]:
    return (x,) if K == Fq else K.coords(x)


def power_basis(Fq: GF, K: GF) -> list[int]:
    if K == Fq:
        return [1]
    return [K.pow(K.generator, t) for t in range(K.degree)]


def _require_odd(F: GF):
    if F.p == 2:
        raise UnsupportedCharacteristic("construction needs odd characteristic (it divides by 2)")


def restrict_scalars(
    Fq: GF,
    K: GF,
    slots: Sequence[str],
    bracket: Callable[[list[int], list[int]], list[int]],
    name: str = "",
) -> LieAlgebra:
    """``F_q``-structure constants of a ``K``-bilinear bracket on ``K^len(slots)``.

    ``bracket`` receives and returns lists of ``K`` element indices.
    """
    basis = power_basis(Fq, K)
    m, ns = len(basis), len(slots)
    dim = ns * m

    def unit(i: int) -> list[int]:
        v = [0] * ns
        v[i // m] = basis[i % m]
        return v

    c = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(dim):
        ui = unit(i)
        for j in range(dim):
            out = bracket(ui, unit(j))
            for s, val in enumerate(out):
                c[i, j, s * m : (s + 1) * m] = _coords(Fq, K, val)
    labels = [f"{s}{t}" if m > 1 else s for s in slots for t in range(m)]
    return validated(LieAlgebra(Fq, c, labels, name=name))


def _mat_commutator(K: GF, M, N):
    n = len(M)

    def prod(A, B):
        out = [[0] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                if A[i][k] == 0:
                    continue
                for j in range(n):
                    if B[k][j]:
                        out[i][j] = K.add(out[i][j], K.mul(A[i][k], B[k][j]))
        return out

    MN, NM = prod(M, N), prod(N, M)
    return [[K.sub(MN[i][j], NM[i][j]) for j in range(n)] for i in range(n)]


# -- U_n(q^m) ------------------------------------------------------------------------


def u_n_restricted(n: int, q: int, m: int = 1, poly=None) -> LieAlgebra:
    """Strictly upper triangular ``n x n`` matrices over ``F_{q^m}`` as an ``F_q``-algebra."""
    if n not in (3, 5):
        raise ValueError("only n = 3 and n = 5 are provided")
    Fq, K = fields(q, m, poly)
    pairs = [(r, s) for r in range(n) for s in range(r + 1, n)]

    def to_matrix(v):
        M = [[0] * n for _ in range(n)]
        for (r, s), x in zip(pairs, v):
            M[r][s] = x
        return M

    def bracket(u, v):
        C = _mat_commutator(K, to_matrix(u), to_matrix(v))
        return [C[r][s] for r, s in pairs]

    slots = [f"E{r + 1}{s + 1}." for r, s in pairs] if m > 1 else [f"E{r + 1}{s + 1}" for r, s in pairs]
    return restrict_scalars(Fq, K, slots, bracket, name=f"U{n}({q}^{m})")


def heisenberg(q: int) -> LieAlgebra:
    return u_n_restricted(3, q, 1)


def abelian(q: int, d: int) -> LieAlgebra:
    return LieAlgebra(field_q(q), np.zeros((d, d, d), dtype=np.int64), name=f"abelian({d})")


# -- the five-slot algebra and its six-slot matrix model ---------------------------------


def gm_bracket(K: GF, u, v) -> list[int]:
    """``[(a,b,c,d,e), (x,y,z,u,v)] = (0, 0, ay-bx, ay-bx+2cx-2az, ay-bx+2bz-2cy)``."""
    a, b, c, _, _ = u[:5]
    x, y, z, _, _ = v[:5]
    mul, add, sub = K.mul, K.add, K.sub
    two = 2 % K.p
    w = sub(mul(a, y), mul(b, x))
    d = add(w, mul(two, sub(mul(c, x), mul(a, z))))
    e = add(w, mul(two, sub(mul(b, z), mul(c, y))))
    return [0, 0, w, d, e]


def lm_bracket(K: GF, u, v) -> list[int]:
    """Six-slot bracket: the five slots above plus ``f = av + dy - bu - ex``."""
    out = gm_bracket(K, u, v)
    a, b, _, d, e, _ = u
    x, y, _, uu, vv, _ = v
    f = K.sub(K.add(K.mul(a, vv), K.mul(d, y)), K.add(K.mul(b, uu), K.mul(e, x)))
    return out + [f]


def lm_matrix(K: GF, t) -> list[list[int]]:
    """5x5 matrix of ``(a,b,c,d,e,f)``.

    Entry ``b`` of the fourth row sits at column 5 (above the diagonal); row 5
    is zero.  This is the strictly upper triangular shape whose commutator
    reproduces :func:`lm_bracket`.
    """
    a, b, c, d, e, f = t
    return [
        [0, a, c, d, f],
        [0, 0, b, K.sub(K.add(a, b), c), e],
        [0, 0, 0, a, c],
        [0, 0, 0, 0, b],
        [0, 0, 0, 0, 0],
    ]


def lm_from_matrix(K: GF, M) -> list[int] | None:
    """Inverse of :func:`lm_matrix`; ``None`` if ``M`` is not of that shape."""
    t = [M[0][1], M[1][2], M[0][2], M[0][3], M[1][4], M[0][4]]
    return t if lm_matrix(K, t) == [list(r) for r in M] else None


def lm_matrix_commutator(K: GF, u, v) -> list[int] | None:
    return lm_from_matrix(K, _mat_commutator(K, lm_matrix(K, u), lm_matrix(K, v)))


def L_m_matrix_algebra(q: int, m: int = 1, poly=None) -> LieAlgebra:
    Fq, K = fields(q, m, poly)
    _require_odd(Fq)
    return restrict_scalars(Fq, K, "abcdef", lambda u, v: lm_bracket(K, u, v), name=f"Lm({q},{m})")


def g_m_direct(q: int, m: int = 1, poly=None) -> LieAlgebra:
    Fq, K = fields(q, m, poly)
    _require_odd(Fq)
    return restrict_scalars(Fq, K, "abcde", lambda u, v: gm_bracket(K, u, v), name=f"g({q},{m})")


def g_m_quotient(q: int, m: int = 1, poly=None) -> LieAlgebra:
    """The six-slot algebra modulo its center.

    The greedy quotient basis keeps slots ``a..e``, which is the identification
    ``(a,b,c,d,e,0) + Z <-> (a,b,c,d,e)``.
    """
    Lm = L_m_matrix_algebra(q, m, poly)
    Q = quotient(Lm, Lm.center).algebra
    return LieAlgebra(Q.field, Q.c, Q.labels, name=f"Lm/Z({q},{m})")


# -- structure constants of U_3(q^m) and the presentation ------------------------------------


@dataclass(frozen=True)
class KappaTensor:
    """``kappa[i, j]`` = coordinates of ``alpha^(i+j)`` (0-based) in the power basis."""

    m: int
    field: GF
    kappa: np.ndarray
    alpha_poly: tuple[int, ...] | None


def kappa(q: int, m: int = 1, poly=None) -> KappaTensor:
    Fq, K = fields(q, m, poly)
    alpha = K.generator if m > 1 else 1
    k = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m):
            k[i, j] = _coords(Fq, K, K.pow(alpha, i + j))
    k.setflags(write=False)
    return KappaTensor(m, Fq, k, K.poly if m > 1 else None)


def v_presentation_data(q: int, m: int = 1, poly=None) -> PresentationData:
    """Generators ``x, y, h, z`` with the nonzero brackets built from ``kappa``.

    For ``m = 1`` the five-generator form ``[x1,x2]=y, [x1,y]=z1, [x2,y]=z2``.
    """
    if m == 1:
        return PresentationData(
            ["x1", "x2", "y", "z1", "z2"],
            {(0, 1): {2: 1}, (0, 2): {3: 1}, (1, 2): {4: 1}},
        )
    K = kappa(q, m, poly)
    F = K.field
    gens = (
        [f"x{i + 1}" for i in range(m)]
        + [f"y{i + 1}" for i in range(m)]
        + [f"h{i + 1}" for i in range(m)]
        + [f"z{i + 1}" for i in range(2 * m)]
    )
    X, Y, H, Z = 0, m, 2 * m, 3 * m
    rel: dict[tuple[int, int], dict[int, int]] = {}

    def put(g1: int, g2: int, combo: dict[int, int]):
        combo = {k: v for k, v in combo.items() if v}
        if not combo:
            return
        if g1 > g2:
            g1, g2 = g2, g1
            combo = {k: F.neg(v) for k, v in combo.items()}
        rel[(g1, g2)] = combo

    for i in range(m):
        for j in range(m):
            kij = [int(v) for v in K.kappa[i, j]]
            put(H + i, X + j, {Z + t: kij[t] for t in range(m)})
            put(H + i, Y + j, {Z + m + t: kij[t] for t in range(m)})
            put(X + i, Y + j, {H + t: kij[t] for t in range(m)})
    return PresentationData(gens, rel)


def v_presentation(q: int, m: int = 1, poly=None) -> tuple[LieAlgebra, PresentationData]:
    Fq, _ = fields(q, m, poly)
    P = v_presentation_data(q, m, poly)
    V = P.tensor(Fq)
    return validated(LieAlgebra(Fq, V.c, V.labels, name=f"V({q},{m})")), P


def v_images_in_gm(q: int, m: int = 1, poly=None) -> np.ndarray:
    """Images of the presentation generators inside :func:`g_m_direct`."""
    Fq, K = fields(q, m, poly)
    _require_odd(Fq)
    two = 2 % Fq.p
    neg_two = Fq.neg(two)
    dim = 5 * m

    def vec(slot_values: dict[int, int], t: int) -> np.ndarray:
        v = np.zeros(dim, dtype=np.int64)
        for s, coeff in slot_values.items():
            v[s * m + t] = coeff
        return v

    if m == 1:
        return np.array(
            [vec({0: 1}, 0), vec({1: 1}, 0), vec({2: 1, 3: 1, 4: 1}, 0), vec({3: neg_two}, 0), vec({4: two}, 0)]
        )
    rows = (
        [vec({0: 1}, t) for t in range(m)]
        + [vec({1: 1}, t) for t in range(m)]
        + [vec({2: 1, 3: 1, 4: 1}, t) for t in range(m)]
        + [vec({3: two}, t) for t in range(m)]
        + [vec({4: neg_two}, t) for t in range(m)]
    )
    return np.array(rows)


# -- catalog --------------------------------------------------------------------------------


def catalog(q: int) -> dict[str, Callable[[], LieAlgebra]]:
    """Named builders at small parameters, in a fixed order."""
    from .semifield import dickson, field_semifield, lie_of

    Fq = field_q(q)
    entries: dict[str, Callable[[], LieAlgebra]] = {
        "abelian(3)": lambda: abelian(q, 3),
        f"heisenberg=U3({q})": lambda: heisenberg(q),
        f"U3({q}^2)": lambda: u_n_restricted(3, q, 2),
        f"U5({q})": lambda: u_n_restricted(5, q, 1),
    }
    if Fq.p != 2:
        entries.update(
            {
                f"Lm({q},1)": lambda: L_m_matrix_algebra(q, 1),
                f"g({q},1)": lambda: g_m_direct(q, 1),
                f"g({q},2)": lambda: g_m_direct(q, 2),
                f"V({q},1)": lambda: v_presentation(q, 1)[0],
                f"V({q},2)": lambda: v_presentation(q, 2)[0],
                f"L(Dickson/F_{Fq.p ** 2})": lambda: lie_of(dickson(field_q(Fq.p**2))),
            }
        )
    entries[f"L(F_{q}^2)"] = lambda: lie_of(field_semifield(Fq, 2))
    return entries
