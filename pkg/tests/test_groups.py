import numpy as np
import pytest

from qgk import groups as gr

from conftest import SEED


def test_cyclic_table_facts():
    g = gr.cyclic(6)
    assert g.n == 6 and g.is_abelian()
    assert sorted(g.element_orders()) == [1, 2, 3, 3, 6, 6]
    assert g.order_of(1) == 6
    assert g.mul(4, 5) == 3


def test_symmetric3_structure():
    g = gr.symmetric(3)
    assert g.n == 6 and not g.is_abelian()
    classes = g.conjugacy_classes()
    assert sorted(len(c) for c in classes) == [1, 2, 3]
    assert len(g.all_subgroups()) == 6
    assert sorted(gr.irreducible_dimensions(g)) == [1, 1, 2]


def test_symmetric4_structure():
    g = gr.symmetric(4)
    assert g.n == 24
    assert sorted(len(c) for c in g.conjugacy_classes()) == [1, 3, 6, 6, 8]
    assert sorted(gr.irreducible_dimensions(g)) == [1, 1, 2, 3, 3]
    assert len(g.all_subgroups()) == 30


def test_dihedral_quaternion_alternating():
    d4 = gr.dihedral(4)
    q8 = gr.quaternion8()
    a4 = gr.alternating4()
    assert sorted(gr.irreducible_dimensions(d4)) == [1, 1, 1, 1, 2]
    assert sorted(gr.irreducible_dimensions(q8)) == [1, 1, 1, 1, 2]
    assert sorted(gr.irreducible_dimensions(a4)) == [1, 1, 1, 3]
    # d4 and q8 share dimension data but differ in element orders
    assert sorted(d4.element_orders()).count(2) == 5
    assert sorted(q8.element_orders()).count(2) == 1
    assert len(d4.all_subgroups()) == 10
    assert len(q8.all_subgroups()) == 6


def test_direct_product_and_decomposition():
    z2xz2 = gr.direct_product(gr.cyclic(2), gr.cyclic(2))
    dec = gr.abelian_cyclic_decomposition(z2xz2)
    assert sorted(n for _, n in dec) == [2, 2]
    z2xz6 = gr.direct_product(gr.cyclic(2), gr.cyclic(6))
    assert sorted(n for _, n in gr.abelian_cyclic_decomposition(z2xz6)) == [2, 6]
    with pytest.raises(ValueError):
        gr.abelian_cyclic_decomposition(gr.symmetric(3))


def test_normality_and_quotient():
    s3 = gr.symmetric(3)
    a3 = next(s for s in s3.all_subgroups() if len(s) == 3)
    assert s3.is_normal(a3)
    z2 = next(s for s in s3.all_subgroups() if len(s) == 2)
    assert not s3.is_normal(z2)
    q, proj = s3.quotient(a3)
    assert q.n == 2 and len(proj) == 6
    # S4 / V4 is S3
    s4 = gr.symmetric(4)
    v4 = next(s for s in s4.all_subgroups()
              if len(s) == 4 and s4.is_normal(s))
    q2, _ = s4.quotient(v4)
    assert q2.n == 6
    assert sorted(gr.irreducible_dimensions(q2)) == [1, 1, 2]


def test_character_table_orthogonality():
    for g in (gr.symmetric(3), gr.dihedral(4), gr.quaternion8(), gr.alternating4()):
        classes, table = gr.character_table(g)
        sizes = np.array([len(c) for c in classes], dtype=float)
        assert table.shape == (len(classes), len(classes))
        gram = (table * sizes) @ np.conj(table.T) / g.n
        assert np.abs(gram - np.eye(len(classes))).max() < 1e-8
        ident = next(i for i, c in enumerate(classes) if g.e in c)
        dims = sorted(int(round(d.real)) for d in table[:, ident])
        assert dims == sorted(gr.irreducible_dimensions(g))


def test_holomorph_z8_facts():
    g = gr.holomorph_z8()
    assert g.n == 32
    assert sorted(len(c) for c in g.conjugacy_classes()) == \
        [1, 1, 2, 2, 2, 4, 4, 4, 4, 4, 4]
    assert sorted(gr.irreducible_dimensions(g)) == [1] * 8 + [2, 2, 4]
    assert len(g.center_elements()) == 2
    h = gr.semidirect_cyclic(8, [3, 5])
    assert h.n == 32
    assert sorted(len(c) for c in h.conjugacy_classes()) == \
        sorted(len(c) for c in g.conjugacy_classes())


def test_semidirect_rejects_non_automorphism():
    with pytest.raises(ValueError):
        gr.semidirect_cyclic(8, [2])


def test_projective_rep_cocycle_pauli():
    g = gr.direct_product(gr.cyclic(2), gr.cyclic(2))
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    mats = [np.eye(2, dtype=complex), sx, sz, sx @ sz]
    sigma = gr.projective_rep_cocycle(g, mats)
    ok, res = gr.is_classical_cocycle(g, sigma)
    assert ok and max(res.values()) < 1e-10
    assert np.allclose(np.abs(sigma), 1.0)
    # the Pauli system anticommutes, so the cocycle cannot be symmetric
    assert not np.allclose(sigma, sigma.T)


def test_projective_rep_cocycle_rejects_nonscalar_defect(rng):
    g = gr.cyclic(2)
    mats = [np.eye(2, dtype=complex),
            np.array([[0, 1], [1, 0]], dtype=complex) + 0.1 * np.eye(2)]
    with pytest.raises(ValueError):
        gr.projective_rep_cocycle(g, mats)


def test_is_classical_cocycle_rejects_broken():
    g = gr.direct_product(gr.cyclic(2), gr.cyclic(2))
    sigma = np.ones((4, 4), dtype=complex)
    sigma[3, 3] = -1.0
    ok, res = gr.is_classical_cocycle(g, sigma)
    assert not ok and res["cocycle"] > 0.5


def test_conj_and_center():
    g = gr.quaternion8()
    center = g.center_elements()
    assert len(center) == 2
    for z in center:
        assert all(g.conj(x, z) == z for x in range(g.n))
