"""Dense complex linear algebra helpers and exact integer routines.

Everything numerical is complex double precision.  Tolerances are relative
to the scale of the input unless stated otherwise.  The integer routines
(Smith normal form, unit phase systems) are exact over Python ints.
"""

import os

import numpy as np

DEFAULT_TOL = 1e-9


def resolve_tol(tol=None):
    """Per-call tolerance, falling back to QGK_TOL then the built-in default."""
    if tol is not None:
        return float(tol)
    env = os.environ.get("QGK_TOL")
    if env:
        return float(env)
    return DEFAULT_TOL


def contract(a, b, pairs):
    """Contract two tensors over the listed (axis_of_a, axis_of_b) pairs.

    Thin wrapper around np.tensordot.  Remaining axes of `a` come first,
    in order, followed by the remaining axes of `b`.  An empty pair list
    gives the outer product.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if not pairs:
        return np.tensordot(a, b, axes=0)
    axes_a = [p[0] for p in pairs]
    axes_b = [p[1] for p in pairs]
    return np.tensordot(a, b, axes=(axes_a, axes_b))


def nullspace(m, tol=DEFAULT_TOL):
    """Orthonormal basis of the right null space of m, as matrix columns.

    Singular values s with s <= tol * s_max count as zero.  For the zero
    (or empty) matrix the whole space is returned.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError("nullspace expects a matrix")
    if m.shape[0] == 0 or m.size == 0:
        return np.eye(m.shape[1], dtype=complex)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > tol * smax))
    return vh[rank:].conj().T


def hermitian_part(m):
    m = np.asarray(m, dtype=complex)
    return 0.5 * (m + m.conj().T)


def sqrt_psd(m, tol=DEFAULT_TOL):
    """Hermitian square root of a positive semidefinite matrix.

    Rejects inputs that fail Hermiticity or positivity beyond tol
    (relative to the largest eigenvalue magnitude).  Eigenvalues in
    [-tol*scale, 0) are clipped to zero.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("sqrt_psd expects a square matrix")
    scale = max(1.0, float(np.linalg.norm(m)))
    herm_defect = float(np.linalg.norm(m - m.conj().T))
    if herm_defect > 100 * tol * scale:
        raise ValueError("matrix is not Hermitian (defect %.3e)" % herm_defect)
    vals, vecs = np.linalg.eigh(hermitian_part(m))
    lam_scale = max(1.0, float(np.max(np.abs(vals)))) if vals.size else 1.0
    if vals.size and vals[0] < -100 * tol * lam_scale:
        raise ValueError("matrix is not positive semidefinite (min eig %.3e)" % vals[0])
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def inv_sqrt_pd(m, tol=DEFAULT_TOL):
    """Inverse Hermitian square root of a positive definite matrix."""
    m = np.asarray(m, dtype=complex)
    vals, vecs = np.linalg.eigh(hermitian_part(m))
    if vals.size == 0:
        return m.copy()
    if vals[0] <= tol * max(1.0, vals[-1]):
        raise ValueError("matrix is numerically singular (min eig %.3e)" % vals[0])
    return (vecs * (vals ** -0.5)) @ vecs.conj().T


# ---------------------------------------------------------------------------
# exact integer lattice routines


def _int_matrix(a):
    return [[int(x) for x in row] for row in a]


def smith_normal_form(a):
    """Smith normal form with transforms, exact over Python ints.

    Returns (d, l, r) with l @ a @ r == d, l and r unimodular, d diagonal
    with d[i][i] dividing d[i+1][i+1].  Matrices are lists of lists of ints.
    """
    a = _int_matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    l = [[int(i == j) for j in range(m)] for i in range(m)]
    r = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_add(i, j, q):
        # row i += q * row j  (on a and l)
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        l[i] = [x + q * y for x, y in zip(l[i], l[j])]

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        l[i], l[j] = l[j], l[i]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        l[i] = [-x for x in l[i]]

    def col_add(i, j, q):
        # col i += q * col j  (on a and r)
        for row in a:
            row[i] += q * row[j]
        for row in r:
            row[i] += q * row[j]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in r:
            row[i], row[j] = row[j], row[i]

    def col_neg(i):
        for row in a:
            row[i] = -row[i]
        for row in r:
            row[i] = -row[i]

    t = 0
    while t < min(m, n):
        # find a pivot: smallest nonzero |entry| in the remaining block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = abs(a[i][j])
                if v and (best is None or v < best):
                    best = v
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        row_swap(t, pi)
        col_swap(t, pj)
        if a[t][t] < 0:
            row_neg(t)
        # clear row and column t
        dirty = False
        for i in range(t + 1, m):
            if a[i][t]:
                q = a[i][t] // a[t][t]
                row_add(i, t, -q)
                if a[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if a[t][j]:
                q = a[t][j] // a[t][t]
                col_add(j, t, -q)
                if a[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility d[t] | a[i][j]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_add(t, bad, 1)
            continue
        t += 1
    d = a
    return d, l, r


def _matvec_int(mat, vec):
    return [sum(m_ij * v_j for m_ij, v_j in zip(row, vec)) for row in mat]


class PhaseSystem:
    """Integer-exponent constraints prod_j lam_j**A[k][j] == mu[k] on unit phases."""

    def __init__(self, constraints, targets):
        self.constraints = _int_matrix(constraints)
        self.targets = np.asarray(targets, dtype=complex)
        if len(self.constraints) != len(self.targets):
            raise ValueError("constraint/target length mismatch")


def _pivot_index(row):
    for j, x in enumerate(row):
        if x:
            return j
    return None


def solve_phase_system(system, tol=DEFAULT_TOL):
    """Solve prod_j lam_j**A[k][j] = mu[k] for unit-modulus lam.

    Returns a dict with keys: solvable (bool), witness (complex array or
    None), obstruction (integer left-kernel vector with nontrivial target
    product, or None), residual (max witness error over all rows).

    Targets must be on the unit circle (checked against tol).  The solve
    is exact on the integer side: rows are reduced by a Hermite-style
    elimination carrying targets along as unit complexes, reduced-to-zero
    rows demand target 1, and the resulting independent system is solved
    through a Smith decomposition.
    """
    a = _int_matrix(system.constraints)
    mu = np.asarray(system.targets, dtype=complex)
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        lam = np.ones(ncols, dtype=complex)
        return {"solvable": True, "witness": lam, "obstruction": None, "residual": 0.0}
    bad = np.abs(np.abs(mu) - 1.0)
    if np.any(bad > 100 * tol):
        raise ValueError("phase system target off the unit circle by %.3e" % bad.max())
    mu = mu / np.abs(mu)

    # basis[pivot] = (row, target, combo) with combo an integer vector over
    # the original rows such that combo @ A == row and prod mu**combo == target
    basis = {}
    obstruction = None

    def reduce_in(row, t, combo):
        nonlocal obstruction
        row = list(row)
        combo = list(combo)
        while True:
            p = _pivot_index(row)
            if p is None:
                if abs(t - 1.0) > 1e-7:
                    if obstruction is None:
                        obstruction = combo
                return
            if p not in basis:
                if row[p] < 0:
                    row = [-x for x in row]
                    combo = [-x for x in combo]
                    t = np.conj(t)
                basis[p] = (row, t, combo)
                return
            brow, bt, bcombo = basis[p]
            while row[p]:
                q = row[p] // brow[p]
                if q:
                    row = [x - q * y for x, y in zip(row, brow)]
                    combo = [x - q * y for x, y in zip(combo, bcombo)]
                    t = t * bt ** (-q)
                if row[p] == 0:
                    break
                # remainder smaller than pivot: swap roles
                if row[p] < 0:
                    row = [-x for x in row]
                    combo = [-x for x in combo]
                    t = np.conj(t)
                basis[p], (row, t, combo) = (row, t, combo), (brow, bt, bcombo)
                brow, bt, bcombo = basis[p]
            # pivot cleared, keep reducing the tail

    for k in range(nrows):
        unit = [0] * nrows
        unit[k] = 1
        reduce_in(a[k], mu[k], unit)
        if obstruction is not None:
            return {
                "solvable": False,
                "witness": None,
                "obstruction": obstruction,
                "residual": float("inf"),
            }

    pivots = sorted(basis)
    b = [basis[p][0] for p in pivots]
    bt = np.array([basis[p][1] for p in pivots], dtype=complex)
    if not b:
        lam = np.ones(ncols, dtype=complex)
        return {"solvable": True, "witness": lam, "obstruction": None, "residual": 0.0}

    d, lmat, rmat = smith_normal_form(b)
    k = len(b)
    args = np.angle(bt)
    c = np.array(_matvec_int(lmat, list(args)), dtype=float)
    y = np.zeros(ncols)
    for i in range(k):
        di = d[i][i]
        if di == 0:
            # basis rows are independent by construction, so this cannot
            # happen; guard anyway
            if abs((c[i] + np.pi) % (2 * np.pi) - np.pi) > 1e-7:
                return {
                    "solvable": False,
                    "witness": None,
                    "obstruction": None,
                    "residual": float("inf"),
                }
            continue
        y[i] = c[i] / di
    theta = np.array(_matvec_int(rmat, list(y)), dtype=float)
    lam = np.exp(1j * theta)

    # verify against every original row
    resid = 0.0
    for k2 in range(nrows):
        prod = complex(np.prod(lam ** np.array(a[k2], dtype=float)))
        resid = max(resid, abs(prod - mu[k2]))
    if resid > max(1e-8, 100 * tol):
        return {
            "solvable": False,
            "witness": None,
            "obstruction": None,
            "residual": float(resid),
        }
    return {"solvable": True, "witness": lam, "obstruction": None, "residual": float(resid)}
