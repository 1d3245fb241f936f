"""Corepresentations: verification, morphism spaces, decomposition.

A corepresentation U on C^n is stored as coeffs[i,j,:] in Q, meaning
U = sum_{ij} e_ij (x) u_ij.  The defining identity is
(id (x) Delta)(U) = U_12 U_13 together with (id (x) eps)(U) = Id.
Mor(u, w) = {T : (T (x) 1) u = w (T (x) 1)}.
"""

import numpy as np

from .linalg import resolve_tol
from .report import VerificationReport


class Corepresentation:
    def __init__(self, parent, coeffs, name="U"):
        self.parent = parent
        self.coeffs = np.asarray(coeffs, dtype=complex)
        if self.coeffs.ndim != 3 or self.coeffs.shape[0] != self.coeffs.shape[1] \
                or self.coeffs.shape[2] != parent.dim:
            raise ValueError("corep coefficients must be (n, n, dim)")
        self.n = self.coeffs.shape[0]
        self.name = name

    def __repr__(self):
        return "Corepresentation(%s, n=%d, over %s)" % (self.name, self.n,
                                                        self.parent.name)

    def entry(self, i, j):
        return self.coeffs[i, j].copy()


def identity_corep(q, n=1):
    coeffs = np.zeros((n, n, q.dim), dtype=complex)
    for i in range(n):
        coeffs[i, i] = q.unit
    return Corepresentation(q, coeffs, name="1_%d" % n)


def one_dim_corep(q, v, name="v"):
    return Corepresentation(q, np.asarray(v, dtype=complex).reshape(1, 1, q.dim),
                            name=name)


def matrix_coaction_residual(u):
    """Residuals of the comodule identity and the counit identity."""
    q = u.parent
    c = u.coeffs
    lhs = np.einsum("ijc,cab->ijab", c, q.comult)
    rhs = np.einsum("ika,kjb->ijab", c, c)
    comodule = float(np.abs(lhs - rhs).max())
    eps_slice = np.einsum("ijc,c->ij", c, q.counit)
    counit = float(np.abs(eps_slice - np.eye(u.n)).max())
    return comodule, counit


def is_corep(u, tol=None):
    tol = resolve_tol(tol)
    comodule, counit = matrix_coaction_residual(u)
    res = {"comodule": comodule, "counit": counit}
    passed = comodule <= 100 * tol and counit <= 100 * tol
    return VerificationReport(op="is_corep", passed=passed, tol=tol, residuals=res,
                              details={"n": u.n, "parent": u.parent.name})


def star_entrywise(u):
    """Entrywise adjoint array s[i,j] = (u_ij)^*; not transposed."""
    q = u.parent
    return np.einsum("ab,ijb->ija", q.star_mat, np.conj(u.coeffs))


def adjoint_times(u, w=None):
    """U^* W as an (n,n,dim) array ((U^*)_ij = (u_ji)^*); W defaults to U."""
    q = u.parent
    ustar = np.transpose(star_entrywise(u), (1, 0, 2))
    wc = u.coeffs if w is None else w.coeffs
    t = np.tensordot(ustar, wc, axes=(1, 0))      # [i,a,j,b]
    return np.tensordot(t, q.mult, axes=([1, 3], [0, 1]))  # [i,j,c]


def times_adjoint(u, w=None):
    """U W^*."""
    q = u.parent
    wc = u if w is None else w
    wstar = np.transpose(star_entrywise(wc), (1, 0, 2))
    t = np.tensordot(u.coeffs, wstar, axes=(1, 0))  # [i,a,j,b]
    return np.tensordot(t, q.mult, axes=([1, 3], [0, 1]))


def unitarity_residual(u):
    q = u.parent
    eye2 = np.einsum("ij,c->ijc", np.eye(u.n), q.unit)
    left = float(np.abs(adjoint_times(u) - eye2).max())
    right = float(np.abs(times_adjoint(u) - eye2).max())
    return left, right


def is_unitary_corep(u, tol=None):
    tol = resolve_tol(tol)
    comodule, counit = matrix_coaction_residual(u)
    left, right = unitarity_residual(u)
    res = {"comodule": comodule, "counit": counit,
           "unitary_left": left, "unitary_right": right}
    passed = all(v <= 100 * tol for v in res.values())
    return VerificationReport(op="is_unitary_corep", passed=passed, tol=tol,
                              residuals=res,
                              details={"n": u.n, "parent": u.parent.name})


def tensor(u, w, name=None):
    if u.parent is not w.parent:
        raise ValueError("tensor factors live over different algebras")
    q = u.parent
    t = np.einsum("ijc,kld,cde->ikjle", u.coeffs, w.coeffs, q.mult)
    n = u.n * w.n
    return Corepresentation(q, t.reshape(n, n, q.dim),
                            name=name or "%s(x)%s" % (u.name, w.name))


def dsum(u, w, name=None):
    if u.parent is not w.parent:
        raise ValueError("summands live over different algebras")
    q = u.parent
    n = u.n + w.n
    c = np.zeros((n, n, q.dim), dtype=complex)
    c[:u.n, :u.n] = u.coeffs
    c[u.n:, u.n:] = w.coeffs
    return Corepresentation(q, c, name=name or "%s(+)%s" % (u.name, w.name))


def conjugate_raw(u, name=None):
    """Entrywise-star conjugate corep; over a Kac algebra it is unitary."""
    return Corepresentation(u.parent, star_entrywise(u),
                            name=name or (u.name + "~"))


def conjugate_by(u, a, name=None):
    """(a (x) 1) U (a^{-1} (x) 1) for an invertible scalar matrix a."""
    ainv = np.linalg.inv(a)
    c = np.einsum("ip,pqc,qj->ijc", a, u.coeffs, ainv)
    return Corepresentation(u.parent, c, name=name or (u.name + ".conj"))


# ---------------------------------------------------------------------------
# morphism spaces


def _mor_gram(u, w):
    """Gram matrix of the intertwiner system for T: H_u -> H_w."""
    uc, wc = u.coeffs, w.coeffs
    nu, nw = u.n, w.n
    a = np.einsum("qjc,rjc->qr", np.conj(uc), uc)          # over H_u
    cmat = np.einsum("ipc,irc->pr", np.conj(wc), wc)       # over H_w
    x = np.einsum("prc,qsc->pqrs", wc, np.conj(uc))        # cross term
    g = np.zeros((nw, nu, nw, nu), dtype=complex)
    idw = np.eye(nw)
    idu = np.eye(nu)
    g += np.einsum("pr,qs->pqrs", idw, a)
    g += np.einsum("pr,qs->pqrs", cmat, idu)
    g -= x
    g -= np.conj(np.transpose(x, (2, 3, 0, 1)))
    return g.reshape(nw * nu, nw * nu)


def _intertwiner_residual(t, u, w):
    lhs = np.einsum("iq,qjc->ijc", t, u.coeffs)
    rhs = np.einsum("ipc,pj->ijc", w.coeffs, t)
    return float(np.linalg.norm(lhs - rhs))


def mor_space(u, w, tol=None):
    """Basis of Mor(u, w) = {T : (T (x) 1)u = w(T (x) 1)}, HS-orthonormal.

    Computed from the normal equations of the linear system; every
    candidate is verified against the original system and the dense SVD
    is used as a fallback if that verification ever fails.
    """
    tol = resolve_tol(tol)
    if u.parent is not w.parent:
        raise ValueError("coreps live over different algebras")
    nu, nw = u.n, w.n
    g = _mor_gram(u, w)
    g = 0.5 * (g + g.conj().T)
    vals, vecs = np.linalg.eigh(g)
    sys_norm = float(np.sqrt(max(np.trace(g).real, 0.0)))  # Frobenius norm of the system
    cut = max(1e-12 * max(1.0, float(vals[-1])), (10 * tol * max(sys_norm, 1.0)) ** 2)
    cand = [vecs[:, k].reshape(nw, nu) for k in range(len(vals)) if vals[k] <= cut]
    good = []
    ok = True
    for t in cand:
        if _intertwiner_residual(t, u, w) <= 10 * tol * max(sys_norm, 1.0):
            good.append(t)
        else:
            ok = False
    if ok:
        return good
    # fallback: dense null space of the explicit system
    d = u.parent.dim
    m = np.zeros((nw, nu, d, nw, nu), dtype=complex)
    ut = np.transpose(u.coeffs, (1, 2, 0))  # [j,c,q]
    for i in range(nw):
        m[i, :, :, i, :] += ut
    wt = np.transpose(w.coeffs, (0, 2, 1))  # [i,c,p]
    for j in range(nu):
        m[:, j, :, :, j] -= wt
    from .linalg import nullspace
    ns = nullspace(m.reshape(nw * nu * d, nw * nu), tol=tol)
    return [ns[:, k].reshape(nw, nu) for k in range(ns.shape[1])]


def end_dim(u, tol=None):
    return len(mor_space(u, u, tol=tol))


# ---------------------------------------------------------------------------
# decomposition into irreducibles


def _compress(u, v):
    c = np.einsum("pi,pqc,qj->ijc", np.conj(v), u.coeffs, v)
    return Corepresentation(u.parent, c, name=u.name + "|")


def _split_once(u, tol, rng):
    """One eigensplit of a random self-adjoint intertwiner.

    Returns a list of (sub_corep, isometry) covering H_u, or None when u
    is already irreducible.
    """
    basis = mor_space(u, u, tol=tol)
    if len(basis) <= 1:
        return None
    for _ in range(20):
        t = np.zeros((u.n, u.n), dtype=complex)
        for b in basis:
            x, y = rng.standard_normal(2)
            t += x * (b + b.conj().T) + y * 1j * (b - b.conj().T)
        t = 0.5 * (t + t.conj().T)
        vals, vecs = np.linalg.eigh(t)
        scale = max(1.0, float(np.abs(vals).max()))
        # merge eigenvalues into clusters at tolerance
        clusters = [[0]]
        for k in range(1, len(vals)):
            if vals[k] - vals[k - 1] <= 1e-6 * scale:
                clusters[-1].append(k)
            else:
                clusters.append([k])
        if len(clusters) == 1:
            continue  # accidental total collision, re-randomize
        out = []
        for cl in clusters:
            v = vecs[:, cl]
            out.append((_compress(u, v), v))
        return out
    raise RuntimeError("could not split a reducible corepresentation")


def _leaves(u, tol, rng):
    split = _split_once(u, tol, rng)
    if split is None:
        return [(u, np.eye(u.n, dtype=complex))]
    leaves = []
    for sub, v in split:
        for leaf, w in _leaves(sub, tol, rng):
            leaves.append((leaf, v @ w))
    return leaves


def decompose(u, tol=None, seed=0):
    """Isotypic decomposition of a unitary corepresentation.

    Returns (components, report).  Each component is a dict with keys
    "corep" (irreducible representative), "multiplicity", "isometries"
    (list of (n x n_x) isometries intertwining the representative into u).
    The report carries the reassembly residual sum_k (V (x) 1) rep (V^* (x) 1).
    """
    tol = resolve_tol(tol)
    rng = np.random.default_rng(seed)
    leaves = _leaves(u, tol, rng)
    components = []
    for leaf, v in leaves:
        placed = False
        for comp in components:
            rep = comp["corep"]
            if leaf.n != rep.n:
                continue
            mors = mor_space(rep, leaf, tol=tol)
            if not mors:
                continue
            s = mors[0]
            c = (s.conj().T @ s)
            lam = float(np.trace(c).real) / rep.n
            s = s / np.sqrt(lam)
            comp["isometries"].append(v @ s)
            comp["multiplicity"] += 1
            placed = True
            break
        if not placed:
            components.append({"corep": leaf, "multiplicity": 1,
                               "isometries": [v]})
    # verification
    q = u.parent
    rebuilt = np.zeros_like(u.coeffs)
    iso_resid = 0.0
    for comp in components:
        rep = comp["corep"]
        for v in comp["isometries"]:
            iso_resid = max(iso_resid, float(np.abs(
                v.conj().T @ v - np.eye(rep.n)).max()))
            rebuilt += np.einsum("pi,ijc,qj->pqc", v, rep.coeffs, np.conj(v))
    reassembly = float(np.abs(rebuilt - u.coeffs).max())
    complete = sum(c["multiplicity"] * c["corep"].n for c in components)
    res = {"reassembly": reassembly, "isometry": iso_resid}
    passed = reassembly <= 1e-8 and iso_resid <= 1e-8 and complete == u.n
    rep_report = VerificationReport(
        op="decompose", passed=passed, tol=tol, residuals=res,
        details={"dims": sorted(c["corep"].n for c in components),
                 "multiplicities": [c["multiplicity"] for c in components],
                 "total": complete})
    return components, rep_report


# ---------------------------------------------------------------------------
# the regular corepresentation


def regular_corep(q):
    """Right regular corepresentation on L^2(Q, h).

    Basis beta_k = sum_i C[i,k] e_i is h-orthonormal; the coaction is
    Delta itself read in that basis: Delta(beta_j) = sum_k beta_k (x) U_kj.
    Unitarity is equivalent to invariance of h.
    """
    c = q.onb()
    gamma = c.conj().T @ q.gram()               # gamma[k,m] = <beta_k, e_m>
    dmat = np.einsum("ij,iml->jml", c, q.comult)  # Delta(beta_j)
    u = np.einsum("km,jml->kjl", gamma, dmat)
    return Corepresentation(q, u, name="reg(%s)" % q.name)
