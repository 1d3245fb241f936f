import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgk.linalg import (PhaseSystem, contract, hermitian_part, inv_sqrt_pd,
                        nullspace, resolve_tol, smith_normal_form,
                        solve_phase_system, sqrt_psd)

from conftest import SEED


def random_complex(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_resolve_tol_default_and_override(monkeypatch):
    monkeypatch.delenv("QGK_TOL", raising=False)
    assert resolve_tol(None) == 1e-9
    assert resolve_tol(1e-5) == 1e-5
    monkeypatch.setenv("QGK_TOL", "1e-7")
    assert resolve_tol(None) == 1e-7


def test_hermitian_part(rng):
    m = random_complex(rng, 5, 5)
    h = hermitian_part(m)
    assert np.allclose(h, h.conj().T)
    assert np.allclose(hermitian_part(h), h)


def test_contract_matches_tensordot(rng):
    a = random_complex(rng, 3, 4, 5)
    b = random_complex(rng, 5, 4, 2)
    got = contract(a, b, [(2, 0), (1, 1)])
    want = np.tensordot(a, b, axes=([2, 1], [0, 1]))
    assert np.allclose(got, want)
    outer = contract(a, b, [])
    assert outer.shape == (3, 4, 5, 5, 4, 2)


def test_nullspace_known_kernel():
    m = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    k = nullspace(m)
    assert k.shape == (3, 1)
    assert np.allclose(m @ k, 0)
    # the kernel direction is (1, -1, 0) up to phase
    v = k[:, 0]
    assert abs(abs(v[0]) - abs(v[1])) < 1e-12 and abs(v[2]) < 1e-12


def test_nullspace_zero_and_full_rank(rng):
    assert nullspace(np.zeros((3, 4))).shape == (4, 4)
    m = random_complex(rng, 4, 4) + 5 * np.eye(4)
    assert nullspace(m).shape[1] == 0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(2, 6), r=st.integers(0, 5), seed=st.integers(0, 10**6))
def test_nullspace_dimension_property(n, r, seed):
    rng = np.random.default_rng(seed)
    r = min(r, n)
    basis = random_complex(rng, n, r)
    m = basis @ random_complex(rng, r, n + 1)
    k = nullspace(m)
    rank = np.linalg.matrix_rank(m, tol=1e-9)
    assert k.shape[1] == (n + 1) - rank
    if k.size:
        assert np.abs(m @ k).max() < 1e-8
        assert np.allclose(k.conj().T @ k, np.eye(k.shape[1]))


def test_sqrt_psd_roundtrip(rng):
    a = random_complex(rng, 5, 5)
    m = a @ a.conj().T
    s = sqrt_psd(m)
    assert np.allclose(s, s.conj().T)
    assert np.allclose(s @ s, m)


def test_sqrt_psd_rejects_indefinite():
    with pytest.raises(ValueError):
        sqrt_psd(np.diag([1.0, -1.0]))
    with pytest.raises(ValueError):
        sqrt_psd(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_inv_sqrt_pd(rng):
    a = random_complex(rng, 4, 4)
    m = a @ a.conj().T + np.eye(4)
    w = inv_sqrt_pd(m)
    assert np.allclose(w @ m @ w, np.eye(4))
    with pytest.raises(ValueError):
        inv_sqrt_pd(np.diag([1.0, 0.0]))


def test_smith_normal_form_known():
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    d, l, r = smith_normal_form(a)
    la = [[sum(l[i][k] * a[k][j] for k in range(3)) for j in range(3)]
          for i in range(3)]
    lar = [[sum(la[i][k] * r[k][j] for k in range(3)) for j in range(3)]
           for i in range(3)]
    assert lar == d
    diag = [d[i][i] for i in range(3)]
    # invariant factors from determinantal divisors: gcd of entries is 2,
    # gcd of 2x2 minors is 4, det is 624, so 2, 4/2, 624/4
    assert diag == [2, 2, 156]
    for i in range(3):
        for j in range(3):
            if i != j:
                assert d[i][j] == 0


def _det_int(m):
    n = len(m)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * _det_int(minor)
    return total


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 4), seed=st.integers(0, 10**6))
def test_smith_normal_form_properties(n, seed):
    rng = np.random.default_rng(seed)
    a = [[int(v) for v in row] for row in rng.integers(-5, 6, size=(n, n))]
    d, l, r = smith_normal_form(a)
    assert abs(_det_int(l)) == 1
    assert abs(_det_int(r)) == 1
    la = [[sum(l[i][k] * a[k][j] for k in range(n)) for j in range(n)]
          for i in range(n)]
    lar = [[sum(la[i][k] * r[k][j] for k in range(n)) for j in range(n)]
           for i in range(n)]
    assert lar == d
    diag = [d[i][i] for i in range(n)]
    for x, y in zip(diag, diag[1:]):
        if x != 0:
            assert y % x == 0
        else:
            assert y == 0


def test_phase_system_obstruction():
    # lam**1 = i and lam**-1 = i force i*i = 1, which fails
    out = solve_phase_system(PhaseSystem([[1], [-1]], [1j, 1j]))
    assert not out["solvable"]
    ob = np.asarray(out["obstruction"])
    assert ob.shape == (2,)
    # the obstruction is a left-kernel vector whose target product is not 1
    assert np.all(ob @ np.array([[1], [-1]]) == 0)
    prod = np.prod(np.array([1j, 1j]) ** ob)
    assert abs(prod - 1) > 1e-6


def test_phase_system_solvable_single_row():
    out = solve_phase_system(PhaseSystem([[1, 1, -1]], [-1.0]))
    assert out["solvable"]
    lam = out["witness"]
    assert abs(lam[0] * lam[1] / lam[2] - (-1.0)) < 1e-12
    assert np.allclose(np.abs(lam), 1.0)


def test_phase_system_coupled_rows():
    # lam**2 = 1 and lam**3 = -1 force lam = -1 exactly
    out = solve_phase_system(PhaseSystem([[2], [3]], [1.0, -1.0]))
    assert out["solvable"]
    assert abs(out["witness"][0] - (-1.0)) < 1e-12
    assert out["residual"] < 1e-12


def test_phase_system_rejects_offcircle_target():
    with pytest.raises(ValueError):
        solve_phase_system(PhaseSystem([[1]], [2.0]))


@settings(max_examples=30, deadline=None)
@given(rows=st.integers(1, 4), cols=st.integers(1, 4), seed=st.integers(0, 10**6))
def test_phase_system_planted_solutions(rows, cols, seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(-3, 4, size=(rows, cols))
    lam = np.exp(2j * np.pi * rng.random(cols))
    mu = np.array([np.prod(lam ** row) for row in a])
    out = solve_phase_system(PhaseSystem(a, mu))
    assert out["solvable"]
    w = out["witness"]
    for row, target in zip(a, mu):
        assert abs(np.prod(w ** row) - target) < 1e-8
