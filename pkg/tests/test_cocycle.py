import numpy as np
import pytest

from qgk import catalog, groups as gr
from qgk.algebra import verify_hopf_axioms
from qgk.cocycle import (Cocycle, coboundary, cocycle_on_function_algebra,
                         is_invariant, is_left_cocycle, is_normalized,
                         is_right_cocycle, is_trivial_invariant_class,
                         schur_multiplier_abelian, trivial_cocycle,
                         twist_class_map, twist_class_map_inverse,
                         twist_coproduct)

from conftest import random_element


def random_unitary_element(q, rng):
    """Unitary of the algebra, built by exponentiating a random hermitian."""
    import scipy.linalg as sla
    x = random_element(q, rng, hermitian=True)
    u = sla.expm(1j * q.gns(x))
    v, resid = q.gns_pullback(u)
    assert resid < 1e-9
    return v


def test_trivial_cocycle_all_verdicts(cs3):
    w = trivial_cocycle(cs3)
    assert is_left_cocycle(w).passed
    assert is_right_cocycle(w).passed
    assert is_invariant(w).passed
    assert is_normalized(w).passed
    out = is_trivial_invariant_class(w)
    assert out["trivial"]
    assert out["witness"] is not None


def test_is_normalized_rejects_phase(cs3):
    w = trivial_cocycle(cs3)
    bad = Cocycle(cs3, 1j * w.coeffs)
    rep = is_normalized(bad)
    assert not rep.passed
    assert rep.residuals["counit_leg1"] > 0.5


def test_coboundary_is_left_cocycle(rng, cs3):
    v = random_unitary_element(cs3, rng)
    w = coboundary(cs3, v)
    assert is_left_cocycle(w).passed
    assert is_normalized(w).passed
    # unitarity of the cocycle matrix in the double algebra
    from qgk.cocycle import unitarity_residual2
    assert unitarity_residual2(cs3, w.coeffs) < 1e-8


def test_coboundary_rescales_counit(rng, cs3):
    v = random_unitary_element(cs3, rng)
    ev = complex(cs3.eps(v))
    assert abs(abs(ev) - 1.0) < 1e-9
    scaled = np.exp(0.7j) * v
    w1 = coboundary(cs3, v)
    w2 = coboundary(cs3, scaled)
    assert np.abs(w1.coeffs - w2.coeffs).max() < 1e-9


def test_coboundary_rejects_nonunitary_counit(cs3):
    v = np.zeros(cs3.dim, dtype=complex)
    v[0] = 2.0
    with pytest.raises(ValueError):
        coboundary(cs3, v)


def test_catalog_cocycles_are_left_cocycles():
    for name in ("pauli-omega", "heis-omega", "d4-omega", "wall-omega"):
        _, w = catalog.resolve(name)
        assert is_left_cocycle(w).passed, name
        assert is_normalized(w).passed, name


def test_pauli_omega_nontrivial_class():
    _, w = catalog.resolve("pauli-omega")
    assert is_invariant(w).passed
    out = is_trivial_invariant_class(w)
    assert not out["trivial"]


def test_wall_omega_nontrivial_class():
    _, w = catalog.resolve("wall-omega")
    assert is_invariant(w).passed
    out = is_trivial_invariant_class(w)
    assert not out["trivial"]
    assert out["num_projections"] == 11


def test_wall_omega_is_coboundary_of_noncentral_witness():
    # the order-32 cocycle is exactly the coboundary of its witness, yet the
    # witness is not central, so the invariant class stays nontrivial
    _, (q, v) = catalog.resolve("wall-v")
    _, w = catalog.resolve("wall-omega")
    bd = coboundary(q, v)
    assert np.abs(bd.coeffs - w.coeffs).max() < 1e-12
    assert not is_trivial_invariant_class(w)["trivial"]


def test_central_coboundary_is_trivial_class(rng, wall32):
    from qgk.algebra import center_minimal_projections
    zs = center_minimal_projections(wall32)
    v = sum(np.exp(2j * np.pi * rng.random()) * z for z in zs)
    assert np.abs(wall32.mul(v, wall32.star(v)) - wall32.unit).max() < 1e-12
    w = coboundary(wall32, v)
    assert is_invariant(w).passed
    out = is_trivial_invariant_class(w)
    assert out["trivial"]
    back = coboundary(wall32, out["witness"])
    assert np.abs(back.coeffs - w.coeffs).max() < 1e-8


@pytest.mark.parametrize("gname,order", [
    ("z2xz2", 2), ("z3xz3", 3), ("z4xz4", 4), ("z2xz2xz2", 8), ("z6", 1),
])
def test_schur_multiplier_orders(gname, order):
    out = schur_multiplier_abelian(catalog.group(gname))
    assert out["order"] == order
    reps = out["representatives"]
    assert len(reps) == min(order, 64)
    for _, w in reps:
        assert is_left_cocycle(w).passed
        assert is_invariant(w).passed


def test_schur_representatives_classes_split():
    out = schur_multiplier_abelian(catalog.group("z2xz2"))
    verdicts = [is_trivial_invariant_class(w)["trivial"]
                for _, w in out["representatives"]]
    assert sorted(verdicts) == [False, True]


def test_cocycle_on_function_algebra():
    g = catalog.group("z2xz2")
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    sigma = gr.projective_rep_cocycle(g, [np.eye(2, dtype=complex), sx, sz, sx @ sz])
    q = catalog.quantum_group("fn:z2xz2")
    w = cocycle_on_function_algebra(q, sigma)
    assert is_left_cocycle(w).passed
    assert is_normalized(w).passed
    # non-symmetric sigma on an abelian group is a nontrivial class
    assert not is_trivial_invariant_class(w)["trivial"]


def test_twist_by_invariant_cocycle_fixes_coproduct(wall32):
    _, w = catalog.resolve("wall-omega")
    qt = twist_coproduct(wall32, w)
    assert np.abs(qt.comult - wall32.comult).max() < 1e-12
    assert verify_hopf_axioms(qt).passed


def test_twist_by_noninvariant_coboundary(rng, cs3):
    v = random_unitary_element(cs3, rng)
    w = coboundary(cs3, v)
    if is_invariant(w).passed:  # pragma: no cover - generic v is not central
        pytest.skip("random v landed central")
    qt = twist_coproduct(cs3, w)
    assert np.abs(qt.comult - cs3.comult).max() > 1e-3
    rep = verify_hopf_axioms(qt)
    assert rep.passed, rep
    assert np.abs(qt.haar - cs3.haar).max() < 1e-10


def test_twist_class_map_roundtrip(wall32):
    _, w = catalog.resolve("wall-omega")
    qt = twist_coproduct(wall32, w)
    for name in ("wall-omega", "trivial:cstar:wall32"):
        _, w0 = catalog.resolve(name)
        img = twist_class_map(w, w0)
        back = twist_class_map_inverse(w, img)
        assert np.abs(back.coeffs - w0.coeffs).max() < 1e-10
        # transported cocycles satisfy the cocycle identity on the twist
        wq = Cocycle(qt, img.coeffs)
        assert is_left_cocycle(wq).passed


def test_twist_class_map_preserves_triviality(wall32):
    _, w = catalog.resolve("wall-omega")
    qt = twist_coproduct(wall32, w)
    for name in ("wall-omega", "trivial:cstar:wall32"):
        _, w0 = catalog.resolve(name)
        before = is_trivial_invariant_class(w0)["trivial"]
        img = Cocycle(qt, twist_class_map(w, w0).coeffs)
        assert is_invariant(img).passed
        after = is_trivial_invariant_class(img)["trivial"]
        assert before == after
