"""Finite-dimensional Hopf *-algebras with invariant state, by structure constants.

Conventions, fixed once for the whole package:

  mult[i,j,k]     e_i e_j = sum_k mult[i,j,k] e_k
  comult[i,j,k]   Delta(e_i) = sum_{j,k} comult[i,j,k] e_j (x) e_k
  unit[k]         1 = sum_k unit[k] e_k
  counit[i]       eps(e_i)
  antipode[i,j]   S(e_j) = sum_i antipode[i,j] e_i
  star[i,j]       (e_j)^* = sum_i star[i,j] e_i, extended antilinearly
  haar[i]         h(e_i)

Elements of Q are (d,) complex vectors, elements of Q (x) Q are (d,d)
arrays, of Q (x) Q (x) Q are (d,d,d) arrays.  All products of tensor
factors are computed leg by leg through `mult`.
"""

import numpy as np

from .linalg import nullspace, resolve_tol
from .report import VerificationReport


class FiniteQuantumGroup:
    """Structure-constant container with cached derived data."""

    def __init__(self, mult, unit, comult, counit, antipode, star, haar=None,
                 name="Q", basis_names=None):
        self.mult = np.asarray(mult, dtype=complex)
        self.unit = np.asarray(unit, dtype=complex)
        self.comult = np.asarray(comult, dtype=complex)
        self.counit = np.asarray(counit, dtype=complex)
        self.antipode = np.asarray(antipode, dtype=complex)
        self.star_mat = np.asarray(star, dtype=complex)
        self.dim = self.unit.shape[0]
        d = self.dim
        if self.mult.shape != (d, d, d) or self.comult.shape != (d, d, d):
            raise ValueError("mult/comult must be (d,d,d)")
        if self.antipode.shape != (d, d) or self.star_mat.shape != (d, d):
            raise ValueError("antipode/star must be (d,d)")
        if self.counit.shape != (d,):
            raise ValueError("counit must be (d,)")
        self.haar = None if haar is None else np.asarray(haar, dtype=complex)
        self.name = name
        self.basis_names = list(basis_names) if basis_names else \
            ["e%d" % i for i in range(d)]
        self._cache = {}

    def __repr__(self):
        return "FiniteQuantumGroup(%s, dim=%d)" % (self.name, self.dim)

    # -- single elements -----------------------------------------------------

    def one(self):
        return self.unit.copy()

    def mul(self, x, y):
        return np.einsum("i,j,ijk->k", x, y, self.mult)

    def star(self, x):
        return self.star_mat @ np.conj(x)

    def delta(self, x):
        return np.tensordot(x, self.comult, axes=(0, 0))

    def eps(self, x):
        return complex(self.counit @ x)

    def s(self, x):
        return self.antipode @ x

    def h(self, x):
        if self.haar is None:
            raise ValueError("no invariant state attached; run solve_haar")
        return complex(self.haar @ x)

    # -- tensor-square / cube products ----------------------------------------

    def mul2(self, x, y):
        m = self.mult
        a = np.tensordot(x, m, axes=(0, 0))        # [b,c,i]
        a = np.transpose(a, (0, 2, 1))             # [b,i,c]
        b = np.tensordot(a, y, axes=(2, 0))        # [b,i,d]
        return np.tensordot(b, m, axes=([0, 2], [0, 1]))  # [i,j]

    def mul3(self, x, y):
        m = self.mult
        a = np.tensordot(x, m, axes=(0, 0))            # [b,c,d,i]
        b = np.tensordot(a, y, axes=(2, 0))            # [b,c,i,e,f]
        c = np.tensordot(b, m, axes=([0, 3], [0, 1]))  # [c,i,f,j]
        return np.tensordot(c, m, axes=([0, 2], [0, 1]))  # [i,j,k]

    def lmul12(self, w, y):
        """(w (x) 1) . y for w in Q2, y in Q3."""
        m = self.mult
        a = np.tensordot(w, m, axes=(0, 0))            # [b,d,i]
        t = np.tensordot(a, y, axes=(1, 0))            # [b,i,e,k]
        out = np.tensordot(t, m, axes=([0, 2], [0, 1]))  # [i,k,j]
        return np.transpose(out, (0, 2, 1))

    def lmul23(self, w, y):
        """(1 (x) w) . y for w in Q2, y in Q3."""
        m = self.mult
        wm = np.tensordot(w, m, axes=(0, 0))           # [c,e,j]
        t = np.tensordot(y, wm, axes=(1, 1))           # [i,f,c,j]
        return np.tensordot(t, m, axes=([2, 1], [0, 1]))  # [i,j,k]

    def rmul12(self, y, w):
        """y . (w (x) 1)."""
        m = self.mult
        t1 = np.tensordot(m, w, axes=(1, 0))           # [a,i,e]
        t2 = np.tensordot(y, t1, axes=(0, 0))          # [b,k,i,e]
        out = np.tensordot(t2, m, axes=([0, 3], [0, 1]))  # [k,i,j]
        return np.transpose(out, (1, 2, 0))

    def rmul23(self, y, w):
        """y . (1 (x) w)."""
        m = self.mult
        a = np.tensordot(y, m, axes=(1, 0))            # [i,c,e,j]
        b = np.tensordot(a, w, axes=(2, 0))            # [i,c,j,f]
        return np.tensordot(b, m, axes=([1, 3], [0, 1]))  # [i,j,k]

    def star2(self, x):
        st = self.star_mat
        return st @ np.conj(x) @ st.T

    def one2(self):
        return np.outer(self.unit, self.unit)

    def delta_leg1(self, x):
        """(Delta (x) id) applied to x in Q2, giving Q3."""
        out = np.tensordot(self.comult, x, axes=(0, 0))  # [a,b,j]
        return out

    def delta_leg2(self, x):
        """(id (x) Delta) applied to x in Q2."""
        return np.tensordot(x, self.comult, axes=(1, 0))  # [i,b,c]

    def eps_leg1(self, x):
        return np.tensordot(self.counit, x, axes=(0, 0))

    def eps_leg2(self, x):
        return np.tensordot(x, self.counit, axes=(1, 0))

    # -- cached derived data ---------------------------------------------------

    def gram(self):
        """G[i,j] = h(e_i^* e_j); Hermitian positive definite for a faithful state."""
        if "gram" not in self._cache:
            if self.haar is None:
                raise ValueError("no invariant state attached")
            g = np.einsum("ai,ajk,k->ij", self.star_mat, self.mult, self.haar)
            self._cache["gram"] = g
        return self._cache["gram"]

    def inner(self, x, y):
        """h(x^* y)"""
        return complex(np.conj(x) @ self.gram() @ y)

    def norm_h(self, x):
        v = self.inner(x, x).real
        return float(np.sqrt(max(v, 0.0)))

    def inner2(self, x, y):
        """(h (x) h)(x^* y) on Q2."""
        g = self.gram()
        return complex(np.vdot(x, g @ y @ g.T))

    def norm2_h(self, x):
        v = self.inner2(x, x).real
        return float(np.sqrt(max(v, 0.0)))

    def onb(self):
        """Matrix whose columns are an h-orthonormal basis in coefficients."""
        if "onb" not in self._cache:
            g = self.gram()
            vals, vecs = np.linalg.eigh(0.5 * (g + g.conj().T))
            if vals.min() <= 0:
                raise ValueError("invariant state is not faithful (min gram eig %.3e)"
                                 % vals.min())
            self._cache["onb"] = vecs * (vals ** -0.5)
        return self._cache["onb"]

    def lmat(self, x):
        """Matrix of left multiplication by x on coefficient vectors."""
        return np.einsum("k,kji->ij", x, self.mult)

    def rmat(self, x):
        """Matrix of right multiplication by x."""
        return np.einsum("k,jki->ij", x, self.mult)

    def gns(self, x):
        """Left multiplication by x in the h-orthonormal basis (a *-rep)."""
        c = self.onb()
        if "gns_left" not in self._cache:
            self._cache["gns_left"] = c.conj().T @ self.gram()
        m = self._cache["gns_left"]
        return m @ self.lmat(x) @ c

    def gns_pullback(self, mat, tol=None):
        """Inverse of gns on its image: find x with gns(x) = mat.

        Least squares over coefficients; the residual is returned so the
        caller can tell whether mat was in the image at all.
        """
        d = self.dim
        cols = np.empty((d * d, d), dtype=complex)
        for k in range(d):
            ek = np.zeros(d, dtype=complex)
            ek[k] = 1.0
            cols[:, k] = self.gns(ek).reshape(-1)
        x, *_ = np.linalg.lstsq(cols, np.asarray(mat, dtype=complex).reshape(-1),
                                rcond=None)
        resid = float(np.linalg.norm(cols @ x - mat.reshape(-1)))
        return x, resid


# ---------------------------------------------------------------------------
# verification


def verify_hopf_axioms(q, tol=None, seed=0):
    """Check all Hopf *-algebra axioms plus the invariant-state axioms.

    For dim <= 24 the bialgebra compatibility Delta(xy) = Delta(x)Delta(y)
    is checked on all basis pairs; above that it is checked on 4*dim seeded
    random pairs (the identity is bilinear, so random probes detect any
    violation), and the report records which mode ran.
    """
    tol = resolve_tol(tol)
    d = q.dim
    m, c = q.mult, q.comult
    res = {}

    assoc = np.einsum("ijx,xkl->ijkl", m, m) - np.einsum("jkx,ixl->ijkl", m, m)
    res["associativity"] = float(np.abs(assoc).max())
    eye = np.eye(d)
    res["unit_left"] = float(np.abs(q.lmat(q.unit) - eye).max())
    res["unit_right"] = float(np.abs(q.rmat(q.unit) - eye).max())

    coassoc = np.einsum("ixc,xab->iabc", c, c) - np.einsum("iax,xbc->iabc", c, c)
    res["coassociativity"] = float(np.abs(coassoc).max())
    res["counit_left"] = float(np.abs(np.einsum("ijk,j->ik", c, q.counit) - eye).max())
    res["counit_right"] = float(np.abs(np.einsum("ijk,k->ij", c, q.counit) - eye).max())

    target = np.outer(q.counit, q.unit)
    anti_l = np.einsum("ijk,aj,akb->ib", c, q.antipode, m)
    anti_r = np.einsum("ijk,ak,jab->ib", c, q.antipode, m)
    res["antipode_left"] = float(np.abs(anti_l - target).max())
    res["antipode_right"] = float(np.abs(anti_r - target).max())

    if d <= 24:
        lhs = np.einsum("ijk,kab->ijab", m, c)
        rhs = np.einsum("ipq,jrs,pra,qsb->ijab", c, c, m, m, optimize=True)
        res["bialgebra"] = float(np.abs(lhs - rhs).max())
        bial_mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        worst = 0.0
        for _ in range(4 * d):
            x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            lhs = q.delta(q.mul(x, y))
            rhs = q.mul2(q.delta(x), q.delta(y))
            scale = max(1.0, float(np.abs(lhs).max()))
            worst = max(worst, float(np.abs(lhs - rhs).max()) / scale)
        res["bialgebra"] = worst
        bial_mode = "randomized(%d probes)" % (4 * d)

    st = q.star_mat
    res["star_involution"] = float(np.abs(st @ np.conj(st) - eye).max())
    lhs = np.einsum("ak,ijk->ija", st, np.conj(m))
    rhs = np.einsum("pj,qi,pqa->ija", st, st, m)
    res["star_antihom"] = float(np.abs(lhs - rhs).max())
    lhs = np.einsum("ji,jab->iab", st, c)
    rhs = np.einsum("ipq,ap,bq->iab", np.conj(c), st, st)
    res["star_comult"] = float(np.abs(lhs - rhs).max())
    res["star_counit"] = float(np.abs(q.counit @ st - np.conj(q.counit)).max())
    a = q.antipode @ st
    res["antipode_star"] = float(np.abs(a @ np.conj(a) - eye).max())

    if q.haar is not None:
        res["haar_unital"] = abs(q.h(q.one()) - 1.0)
        res["haar_hermitian"] = float(np.abs(q.haar @ st - np.conj(q.haar)).max())
        left = np.einsum("iab,b->ia", c, q.haar)
        res["haar_invariance_right"] = float(np.abs(left - np.outer(q.haar, q.unit)).max())
        right = np.einsum("iab,a->ib", c, q.haar)
        res["haar_invariance_left"] = float(np.abs(right - np.outer(q.haar, q.unit)).max())
        g = q.gram()
        res["haar_state_hermitian"] = float(np.abs(g - g.conj().T).max())
        vals = np.linalg.eigvalsh(0.5 * (g + g.conj().T))
        res["haar_positive"] = float(max(0.0, -vals.min()))
        faithful_mineig = float(vals.min())
    else:
        faithful_mineig = None

    passed = all(v <= 100 * tol for v in res.values())
    if q.haar is not None:
        passed = passed and faithful_mineig > tol
    return VerificationReport(op="verify_hopf_axioms", passed=passed, tol=tol,
                              residuals=res,
                              details={"dim": d, "name": q.name,
                                       "bialgebra_mode": bial_mode,
                                       "haar_faithful_mineig": faithful_mineig})


def solve_haar(q, tol=None):
    """Solve for the two-sided invariant state; error if not unique.

    Returns the coefficient vector.  Works from mult/comult/unit/counit
    alone, so it can be used on freshly built duals and twists.
    """
    tol = resolve_tol(tol)
    d = q.dim
    c = q.comult
    rows = []
    # (h (x) id) Delta(e_i) = h(e_i) 1  componentwise in e_b
    m1 = np.transpose(c, (0, 2, 1)).reshape(d * d, d).copy()  # [(i,b), a]
    for i in range(d):
        for b in range(d):
            m1[i * d + b, i] -= q.unit[b]
    # (id (x) h) Delta(e_i) = h(e_i) 1
    m2 = c.reshape(d * d, d).copy()  # [(i,a), b]
    for i in range(d):
        for a in range(d):
            m2[i * d + a, i] -= q.unit[a]
    big = np.vstack([m1, m2])
    ns = nullspace(big, tol=tol)
    if ns.shape[1] != 1:
        raise ValueError("invariant functional space has dimension %d, expected 1"
                         % ns.shape[1])
    v = ns[:, 0]
    scale = complex(v @ q.unit)
    if abs(scale) < tol:
        raise ValueError("invariant functional vanishes on the unit")
    return v / scale


def is_kac(q, tol=None):
    """Detect S^2 = id together with a tracial invariant state."""
    tol = resolve_tol(tol)
    d = q.dim
    s2 = q.antipode @ q.antipode - np.eye(d)
    t = np.einsum("ijk,k->ij", q.mult, q.haar)
    res = {
        "antipode_squared": float(np.abs(s2).max()),
        "haar_tracial": float(np.abs(t - t.T).max()),
    }
    passed = all(v <= 100 * tol for v in res.values())
    return VerificationReport(op="is_kac", passed=passed, tol=tol, residuals=res,
                              details={"name": q.name})


# ---------------------------------------------------------------------------
# duality


def dual(q):
    """The dual Hopf *-algebra on the dual basis, with its own Haar state.

    Pairing <f_i, e_j> = delta_ij; structure constants are the transposes
    dictated by the pairing.
    """
    d = q.dim
    mult_hat = np.transpose(q.comult, (1, 2, 0)).copy()
    comult_hat = np.transpose(q.mult, (2, 0, 1)).copy()
    unit_hat = q.counit.copy()
    counit_hat = q.unit.copy()
    antipode_hat = q.antipode.T.copy()
    star_hat = (np.conj(q.star_mat) @ q.antipode).T.copy()
    out = FiniteQuantumGroup(mult_hat, unit_hat, comult_hat, counit_hat,
                             antipode_hat, star_hat, haar=None,
                             name=q.name + "^dual",
                             basis_names=["f:%s" % n for n in q.basis_names])
    out.haar = solve_haar(out)
    return out


# ---------------------------------------------------------------------------
# builders from group tables


def from_group_algebra(g, name=None):
    """Group algebra C*(G): basis u_g, Delta(u_g) = u_g (x) u_g."""
    n = g.n
    mult = np.zeros((n, n, n), dtype=complex)
    comult = np.zeros((n, n, n), dtype=complex)
    antipode = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            mult[i, j, g.table[i][j]] = 1.0
        comult[i, i, i] = 1.0
        antipode[g.inverse[i], i] = 1.0
    unit = np.zeros(n, dtype=complex)
    unit[g.e] = 1.0
    counit = np.ones(n, dtype=complex)
    star = antipode.copy()
    haar = np.zeros(n, dtype=complex)
    haar[g.e] = 1.0
    return FiniteQuantumGroup(mult, unit, comult, counit, antipode, star,
                              haar=haar, name=name or ("cstar:" + g.name),
                              basis_names=["u[%s]" % s for s in g.names])


def from_function_algebra(g, name=None):
    """Function algebra C(G): basis delta_g with pointwise product."""
    n = g.n
    mult = np.zeros((n, n, n), dtype=complex)
    comult = np.zeros((n, n, n), dtype=complex)
    antipode = np.zeros((n, n), dtype=complex)
    for i in range(n):
        mult[i, i, i] = 1.0
        antipode[g.inverse[i], i] = 1.0
    for j in range(n):
        for k in range(n):
            comult[g.table[j][k], j, k] = 1.0
    unit = np.ones(n, dtype=complex)
    counit = np.zeros(n, dtype=complex)
    counit[g.e] = 1.0
    star = np.eye(n, dtype=complex)
    haar = np.full(n, 1.0 / n, dtype=complex)
    return FiniteQuantumGroup(mult, unit, comult, counit, antipode, star,
                              haar=haar, name=name or ("fn:" + g.name),
                              basis_names=["d[%s]" % s for s in g.names])


# ---------------------------------------------------------------------------
# center


def center_basis(q, tol=None):
    """Orthonormal-ish basis (columns) of the center of the algebra."""
    tol = resolve_tol(tol)
    d = q.dim
    # [e_k, a] = 0 for all k:  (L_k - R_k) a = 0
    l = np.transpose(q.mult, (0, 2, 1))      # l[k][i,j] = mult[k,j,i]
    r = np.transpose(q.mult, (1, 2, 0))      # r[k][i,j] = mult[j,k,i]
    big = (l - r).reshape(d * d, d)
    return nullspace(big, tol=tol)


def center_minimal_projections(q, seed=0, tol=None):
    """Minimal projections of the center, deterministically ordered.

    Split a seeded random self-adjoint central element; re-randomize when
    eigenvalues collide.  Each candidate is rescaled to an idempotent and
    the full system (idempotent, self-adjoint, orthogonal, summing to 1)
    is verified before returning.
    """
    tol = resolve_tol(tol)
    z = center_basis(q, tol=tol)
    d, c = z.shape
    if c == 0:
        raise ValueError("center came out zero dimensional; not a unital algebra?")
    # self-adjoint spanning set of the center
    cols = []
    for k in range(c):
        v = z[:, k]
        cols.append(v + q.star(v))
        cols.append(1j * (v - q.star(v)))
    sa = np.stack(cols, axis=1)
    rng = np.random.default_rng(seed)
    zpinv = np.linalg.pinv(z)
    for _ in range(40):
        a = sa @ rng.standard_normal(sa.shape[1])
        # multiplication by a restricted to the center, in center coordinates
        t = zpinv @ (q.lmat(a) @ z)
        vals, vecs = np.linalg.eig(t)
        order = np.argsort(vals.real)
        vals, vecs = vals[order], vecs[:, order]
        if c > 1:
            gaps = np.abs(np.diff(vals))
            if gaps.min() < 1e-8 * max(1.0, np.abs(vals).max()):
                continue
        projs = []
        ok = True
        for k in range(c):
            v = z @ vecs[:, k]
            v2 = q.mul(v, v)
            piv = int(np.argmax(np.abs(v)))
            lam = v2[piv] / v[piv]
            if abs(lam) < 1e-10:
                ok = False
                break
            p = v / lam
            if np.abs(q.mul(p, p) - p).max() > 1e-8:
                ok = False
                break
            projs.append(p)
        if not ok:
            continue
        # verify the system
        s = sum(projs)
        if np.abs(s - q.unit).max() > 1e-8:
            continue
        good = True
        for i in range(c):
            if np.abs(q.star(projs[i]) - projs[i]).max() > 1e-8:
                good = False
            for j in range(i):
                if np.abs(q.mul(projs[i], projs[j])).max() > 1e-8:
                    good = False
        if not good:
            continue
        projs.sort(key=lambda p: (round(q.h(p).real, 9),
                                  tuple(np.round(p.real, 7)),
                                  tuple(np.round(p.imag, 7))))
        return projs
    raise RuntimeError("failed to split the center after 40 random attempts")
