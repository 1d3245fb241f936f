import numpy as np
import pytest

from qgk import catalog
from qgk.algebra import (center_minimal_projections, dual, is_kac, solve_haar,
                         verify_hopf_axioms)

from conftest import random_element

AXIOM_EXAMPLES = [
    "cstar:z2", "cstar:s3", "cstar:d4", "cstar:q8", "cstar:z4xz4",
    "fn:s3", "fn:d4", "fn:a4", "fn:z8",
]


@pytest.mark.parametrize("name", AXIOM_EXAMPLES)
def test_hopf_axioms_on_catalog(name):
    q = catalog.quantum_group(name)
    rep = verify_hopf_axioms(q)
    assert rep.passed, rep
    assert max(rep.residuals.values()) < 1e-10


def test_hopf_axioms_probe_mode_at_large_dim(wall32):
    rep = verify_hopf_axioms(wall32)
    assert rep.passed, rep
    assert rep.details["bialgebra_mode"].startswith("randomized")
    small = verify_hopf_axioms(catalog.quantum_group("cstar:s3"))
    assert small.details["bialgebra_mode"] == "exhaustive"


def test_hopf_axioms_catch_corruption(cs3):
    import copy
    q = copy.deepcopy(cs3)
    q.antipode = np.eye(q.dim, dtype=complex)
    q._cache.clear()
    rep = verify_hopf_axioms(q)
    assert not rep.passed
    assert max(rep.residuals["antipode_left"],
               rep.residuals["antipode_right"]) > 0.5


def test_dual_of_group_algebra_is_function_algebra(cs3, fs3):
    d = dual(cs3)
    assert np.allclose(d.mult, fs3.mult)
    assert np.allclose(d.comult, fs3.comult)
    assert np.allclose(d.unit, fs3.unit)
    assert np.allclose(d.counit, fs3.counit)
    assert np.allclose(d.antipode, fs3.antipode)
    assert np.allclose(d.star_mat, fs3.star_mat)
    assert np.allclose(d.haar, fs3.haar)


def test_dual_is_involutive(cs3):
    dd = dual(dual(cs3))
    assert np.allclose(dd.mult, cs3.mult)
    assert np.allclose(dd.comult, cs3.comult)
    assert np.allclose(dd.haar, cs3.haar)
    rep = verify_hopf_axioms(dual(catalog.quantum_group("fn:d4")))
    assert rep.passed


def test_solve_haar_reproduces_known_states(cs3, fs3):
    h1 = solve_haar(cs3)
    assert np.abs(h1 - cs3.haar).max() < 1e-10
    h2 = solve_haar(fs3)
    assert np.abs(h2 - np.full(6, 1 / 6.0)).max() < 1e-10


def test_haar_invariance_and_positivity(rng, cs3):
    x = random_element(cs3, rng)
    hx = cs3.h(x)
    # (id (x) h) Delta x = h(x) 1 and same on the other leg
    d = cs3.delta(x)
    left = d @ cs3.haar
    right = cs3.haar @ d
    assert np.abs(left - hx * cs3.unit).max() < 1e-10
    assert np.abs(right - hx * cs3.unit).max() < 1e-10
    pos = cs3.h(cs3.mul(cs3.star(x), x))
    assert pos.real > 0 and abs(pos.imag) < 1e-10


def test_is_kac_on_catalog(wall32):
    assert is_kac(catalog.quantum_group("cstar:s3")).passed
    assert is_kac(catalog.quantum_group("fn:q8")).passed
    assert is_kac(wall32).passed


def test_center_minimal_projections_count(cs3, fs3, wall32):
    # the center of a group algebra has one projection per conjugacy class
    assert len(center_minimal_projections(cs3)) == 3
    assert len(center_minimal_projections(wall32)) == 11
    # a commutative algebra is all center: one projection per point
    assert len(center_minimal_projections(fs3)) == 6


def test_center_projections_are_orthogonal_idempotents(cs3):
    ps = center_minimal_projections(cs3)
    total = np.zeros(cs3.dim, dtype=complex)
    for i, p in enumerate(ps):
        assert np.abs(cs3.mul(p, p) - p).max() < 1e-9
        assert np.abs(cs3.star(p) - p).max() < 1e-9
        for q_ in ps[i + 1:]:
            assert np.abs(cs3.mul(p, q_)).max() < 1e-9
        total = total + p
    assert np.abs(total - cs3.unit).max() < 1e-9


def test_gns_is_multiplicative(rng, cs3):
    x = random_element(cs3, rng)
    y = random_element(cs3, rng)
    gx, gy = cs3.gns(x), cs3.gns(y)
    gxy = cs3.gns(cs3.mul(x, y))
    assert np.abs(gx @ gy - gxy).max() < 1e-10
    back, resid = cs3.gns_pullback(gx)
    assert resid < 1e-10
    assert np.abs(back - x).max() < 1e-10


def test_gram_is_positive_definite(cs3, fs3):
    for q in (cs3, fs3):
        g = q.gram()
        assert np.allclose(g, g.conj().T)
        assert np.linalg.eigvalsh(g).min() > 1e-12


def test_mul2_matches_componentwise(rng, cs3):
    a = rng.standard_normal((cs3.dim, cs3.dim)) + 1j * rng.standard_normal((cs3.dim, cs3.dim))
    b = rng.standard_normal((cs3.dim, cs3.dim)) + 1j * rng.standard_normal((cs3.dim, cs3.dim))
    got = cs3.mul2(a, b)
    d = cs3.dim
    want = np.zeros((d, d), dtype=complex)
    # legwise product of simple tensors e_i (x) e_j
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    coeff = a[i, j] * b[k, l]
                    if abs(coeff) < 1e-14:
                        continue
                    want += coeff * np.outer(cs3.mult[i, k], cs3.mult[j, l])
    assert np.abs(got - want).max() < 1e-8


def test_leg_multiplications_match_oracle(rng, cs3):
    # each leg helper against a direct expansion, in all four placements
    d = cs3.dim
    m = cs3.mult
    y = rng.standard_normal((d, d, d)) + 1j * rng.standard_normal((d, d, d))
    w = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    lm12 = np.zeros((d, d, d), dtype=complex)
    rm12 = np.zeros((d, d, d), dtype=complex)
    lm23 = np.zeros((d, d, d), dtype=complex)
    rm23 = np.zeros((d, d, d), dtype=complex)
    for e in range(d):
        for f in range(d):
            for g in range(d):
                for a in range(d):
                    for b in range(d):
                        c = w[a, b] * y[e, f, g]
                        lm12[:, :, g] += c * np.outer(m[a, e], m[b, f])
                        rm12[:, :, g] += c * np.outer(m[e, a], m[f, b])
                        lm23[e] += c * np.outer(m[a, f], m[b, g])
                        rm23[e] += c * np.outer(m[f, a], m[g, b])
    assert np.abs(cs3.lmul12(w, y) - lm12).max() < 1e-8
    assert np.abs(cs3.rmul12(y, w) - rm12).max() < 1e-8
    assert np.abs(cs3.lmul23(w, y) - lm23).max() < 1e-8
    assert np.abs(cs3.rmul23(y, w) - rm23).max() < 1e-8
