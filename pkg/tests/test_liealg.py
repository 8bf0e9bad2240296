from __future__ import annotations

import json

import numpy as np
import pytest

from nilbreadth import constructions as C
from nilbreadth import liealg as LA
from nilbreadth.gf import GF
from nilbreadth.linalg import Subspace

F3 = GF.prime(3)


@pytest.fixture(scope="module")
def g1():
    return C.g_m_direct(3, 1)


def test_validate_examples():
    assert LA.LieAlgebra(F3, np.zeros((3, 3, 3), dtype=np.int64)).validate().ok
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[1, 2, 0] = c[2, 1, 0] = 1
    report = LA.LieAlgebra(F3, c).validate()
    assert not report.ok
    assert report.first.kind == "antisymmetry"
    assert C.g_m_direct(3, 2).validate().ok


def test_jacobi_violation_is_reported():
    # [e0,e1] = e2, [e0,e2] = e0: antisymmetric, but J(e0,e1,e2) = [e1,-e0] = e2
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 1, 2], c[1, 0, 2] = 1, 2
    c[0, 2, 0], c[2, 0, 0] = 1, 2
    report = LA.LieAlgebra(F3, c).validate()
    assert not report.ok and report.first.kind == "jacobi"
    with pytest.raises(LA.NotALieAlgebra):
        LA.validated(LA.LieAlgebra(F3, c))


def test_bracket_examples(g1):
    x = np.array([1, 0, 0, 0, 0])
    assert not g1.bracket(x, x).any()
    assert g1.bracket(x, [0, 1, 0, 0, 0]).tolist() == [0, 0, 1, 1, 1]
    assert g1.bracket(x, [0, 0, 1, 1, 1]).tolist() == [0, 0, 0, 1, 0]


def test_breadth_examples(g1):
    assert g1.breadth(np.zeros(5, dtype=np.int64)) == 0
    assert g1.breadth([0, 0, 1, 0, 0]) == 2
    g2 = C.g_m_direct(3, 2)
    assert g2.breadth([1, 0, 0, 0, 0, 0, 0, 0, 0, 0]) == 4
    ad, b = g1.ad_and_breadth([1, 0, 0, 0, 0])
    assert b == 2 and ad.shape == (5, 5)
    assert ad[:, 1].tolist() == [0, 0, 1, 1, 1]  # column j is [x, e_j]


def test_relative_breadth(g1):
    D = g1.derived
    assert g1.relative_breadth(D, [1, 0, 0, 0, 0]) == 1
    assert g1.relative_breadth(g1.full(), [1, 0, 0, 0, 0]) == g1.breadth([1, 0, 0, 0, 0])
    for z in g1.center.basis:
        assert g1.relative_breadth(g1.full(), z) == 0


def test_breadth_histograms(g1):
    assert LA.breadth_report(g1).histogram == {0: 9, 2: 234}
    assert LA.breadth_report(C.abelian(3, 3)).histogram == {0: 27}
    u = C.u_n_restricted(3, 3, 2)
    assert LA.breadth_report(u).histogram == {0: 9, 2: 720}


@pytest.mark.parametrize("orbits", [False, True])
@pytest.mark.parametrize("workers", [1, 2, 4])
def test_breadth_report_independent_of_workers_and_orbits(workers, orbits):
    L = C.u_n_restricted(5, 3, 1)  # 3^9 cosets: several chunks
    assert LA.breadth_report(L, workers=workers, orbits=orbits).histogram == LA.breadth_report(L).histogram


def test_budget_is_enforced(monkeypatch, g1):
    with pytest.raises(LA.BudgetExceeded) as err:
        LA.breadth_report(g1, budget=10)
    assert err.value.required == 27 and err.value.budget == 10
    monkeypatch.setenv("LBA_BUDGET", "5")
    with pytest.raises(LA.BudgetExceeded):
        LA.breadth_report(g1)


def test_series_examples(g1):
    s = LA.series(g1)
    assert s.gamma_dims == (5, 3, 2, 0) and s.nilpotency_class == 3 and s.is_stem
    a = LA.series(C.abelian(3, 2))
    assert a.nilpotency_class == 1 and not a.is_stem
    lm = LA.series(C.L_m_matrix_algebra(3, 1))
    # the six-slot bracket has [(1,0,0,0,0,0), (0,0,0,0,1,0)] = f-slot, so gamma_4 = Z != 0
    assert lm.gamma_dims == (6, 4, 3, 1, 0) and lm.center_dim == 1 and lm.nilpotency_class == 4


def test_subspaces(g1):
    assert g1.subspace_bracket(g1.full(), g1.zero()).dim == 0
    D = g1.subspace_bracket(g1.full(), g1.full())
    assert D == g1.derived and D.dim == 3
    assert g1.subspace_bracket(D, D).dim == 0
    assert g1.centralizer(np.zeros(5, dtype=np.int64)) == g1.full()
    assert g1.centralizer([0, 0, 1, 0, 0]) == D
    C1 = g1.centralizer([1, 0, 0, 0, 0])
    assert C1.dim == 3 and C1.intersect(D) == g1.center
    assert g1.centralizer_of_subspace(g1.full()) == g1.center


def test_quotients(g1):
    same = LA.quotient(g1, g1.zero())
    assert np.array_equal(same.algebra.c, g1.c)
    Q = LA.quotient(g1, g1.center)
    assert Q.algebra.dim == 3 and LA.series(Q.algebra).nilpotency_class == 2
    with pytest.raises(LA.NotAnIdeal):
        LA.quotient(g1, g1.span([[1, 0, 0, 0, 0]]))


def test_quotient_projection_preserves_brackets(g1):
    Q = LA.quotient(g1, g1.center)
    for i in range(5):
        for j in range(5):
            ei, ej = g1.basis_vector(i), g1.basis_vector(j)
            lhs = Q.project(g1.bracket(ei, ej))
            rhs = Q.algebra.bracket(Q.project(ei), Q.project(ej))
            assert np.array_equal(lhs, rhs)


def test_generated(g1):
    assert LA.generated(g1, np.eye(5, dtype=np.int64)) == g1.full()
    assert LA.generated(g1, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]) == g1.full()
    z = [0, 0, 0, 1, 0]
    assert LA.generated(g1, [z]) == g1.span([z])


def test_camina_examples():
    ab = LA.is_camina(C.abelian(3, 3))
    assert ab.is_camina and ab.degenerate
    assert LA.is_camina(C.heisenberg(3)).is_camina
    report = LA.is_camina(C.g_m_direct(3, 1))
    assert not report.is_camina and report.witness is not None


def test_check_hom_examples(g1):
    P = C.v_presentation_data(3, 1)
    images = [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 1, 1], [0, 0, 0, 1, 0], [0, 0, 0, 0, 2]]
    r = LA.check_hom(P, g1, images)
    assert r.relations_hold and r.images_generate and r.is_isomorphism_evidence
    bad = list(images)
    bad[2] = [0, 0, 0, 0, 0]
    assert not LA.check_hom(P, g1, bad).relations_hold
    zero = LA.check_hom(P, g1, np.zeros((5, 5), dtype=np.int64))
    assert not zero.images_generate and not zero.is_isomorphism_evidence


def test_fingerprints(g1):
    f = LA.fingerprint(g1)
    assert (f.dim, f.nilpotency_class, f.type_set, f.is_stem) == (5, 3, (0, 2), True)
    assert LA.fingerprint(C.g_m_quotient(3, 1)) == f
    u = LA.fingerprint(C.u_n_restricted(3, 3, 2))
    assert u.nilpotency_class == 2 and u.is_camina and u.all_noncentral_centralizers_abelian


def test_json_roundtrip(g1):
    obj = json.loads(json.dumps(g1.to_json()))
    back = LA.LieAlgebra.from_json(obj)
    assert back == g1 and back.labels == g1.labels
    F9 = GF.prime(3).extension(2)
    L = LA.LieAlgebra(F9, np.zeros((2, 2, 2), dtype=np.int64))
    L2 = LA.from_bilinear(F9, 3, lambda i, j: [0, 0, 3] if (i, j) == (0, 1) else ([0, 0, 6] if (i, j) == (1, 0) else [0, 0, 0]))
    for alg in (L, L2):
        assert LA.LieAlgebra.from_json(json.loads(json.dumps(alg.to_json()))) == alg


def test_derived_centralizers_and_shift(g1):
    r = LA.derived_centralizers(g1)
    assert r.all_meet_in_center and r.good_span == g1.full()
    s = LA.centralizing_shift(g1)
    assert s.holds and s.pairs_checked == 11664
    with pytest.raises(LA.BudgetExceeded):
        LA.centralizing_shift(C.g_m_direct(3, 2))


def test_nonabelian_witness(g1):
    assert LA.nonabelian_witness(g1, g1.derived) is None
    u, v = LA.nonabelian_witness(g1, g1.full())
    assert g1.bracket(np.array(u), np.array(v)).any()


def test_is_homomorphism(g1):
    assert LA.is_homomorphism(g1, g1, np.eye(5, dtype=np.int64))
    assert not LA.is_homomorphism(g1, g1, np.diag([1, 1, 1, 1, 2]))
