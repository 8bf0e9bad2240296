"""Structural properties every constructed algebra must satisfy (shared by two test modules)."""

from __future__ import annotations

import numpy as np

from nilbreadth import constructions as C
from nilbreadth import liealg as LA
from nilbreadth import semifield as SF
from nilbreadth.gf import field_q
from nilbreadth.linalg import enumerate_vectors

EXHAUSTIVE_LIMIT = 3**6
SAMPLES = 200


def zoo() -> dict[str, callable]:
    algebras = dict(C.catalog(3))
    algebras.update(
        {
            "g(5,1)": lambda: C.g_m_direct(5, 1),
            "g(7,1)": lambda: C.g_m_direct(7, 1),
            "g(5,2)": lambda: C.g_m_direct(5, 2),
            "Lm/Z(3,2)": lambda: C.g_m_quotient(3, 2),
            "Lm(5,1)": lambda: C.L_m_matrix_algebra(5, 1),
            "U3(5)": lambda: C.u_n_restricted(3, 5, 1),
            "V(5,1)": lambda: C.v_presentation(5, 1)[0],
            "L(F_5^2)": lambda: SF.lie_of(SF.field_semifield(field_q(5), 2)),
            "L(F_9 over F_9)": lambda: SF.lie_of(SF.field_semifield(field_q(9), 1)),
        }
    )
    return algebras


def _samples(L: LA.LieAlgebra, rng: np.random.Generator) -> np.ndarray:
    q, n = L.field.q, L.dim
    if q**n <= EXHAUSTIVE_LIMIT:
        return enumerate_vectors(q, n)
    return rng.integers(0, q, size=(SAMPLES, n))


def property_failures(L: LA.LieAlgebra, seed: int = 0) -> list[str]:
    """Names of violated properties (empty when all hold)."""
    F = L.field
    rng = np.random.default_rng(seed)
    failures = []

    if not L.validate().ok:
        failures.append("antisymmetry/jacobi")

    X = _samples(L, rng)
    for x in X:
        if L.breadth(x) != L.dim - L.centralizer(x).dim:
            failures.append(f"breadth != codim centralizer at {x.tolist()}")
            break

    Z = L.center
    zs = Z.elements()
    for x in X[: min(len(X), 60)]:
        b = L.breadth(x)
        z = zs[rng.integers(len(zs))]
        lam = int(rng.integers(1, F.q))
        if L.breadth(F.vadd(x, z)) != b or L.breadth(F.vmul(lam, x)) != b:
            failures.append(f"breadth not invariant at {x.tolist()}")
            break

    for I in (Z, L.derived):
        Q = LA.quotient(L, I)
        E = np.eye(L.dim, dtype=np.int64)
        lhs = Q.project(L.bracket(E[:, None, :], E[None, :, :]))
        P = Q.project(E)
        rhs = Q.algebra.bracket(P[:, None, :], P[None, :, :])
        if not np.array_equal(lhs, rhs):
            failures.append(f"quotient by ideal of dim {I.dim} not bracket-preserving")

    reports = {
        w: (
            LA.breadth_report(L, workers=w).histogram,
            LA.is_camina(L, workers=w),
            LA.derived_centralizers(L, workers=w).witness,
        )
        for w in (1, 2, 4)
    }
    if not reports[1] == reports[2] == reports[4]:
        failures.append("reports differ across worker counts")
    return failures
