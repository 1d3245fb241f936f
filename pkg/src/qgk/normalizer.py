"""Quantum subgroups, dual normality, and the group of invariant cocycle classes.

A subalgebra is given by a spanning set of coefficient rows.  All
membership tests use the Haar-orthogonal projection onto the span, so
"x in H" always means a residual against that projection.
"""

from dataclasses import dataclass, field

import numpy as np

from .algebra import FiniteQuantumGroup, dual, solve_haar
from .cocycle import (Cocycle, invariance_residual, is_trivial_invariant_class,
                      left_cocycle_residual, normalization_residual,
                      trivial_cocycle, unitarity_residual2)
from .corep import decompose, mor_space, regular_corep, star_entrywise, Corepresentation
from .groups import GroupTable
from .linalg import resolve_tol
from .report import VerificationReport


@dataclass
class SubgroupSpec:
    """A candidate Hopf *-subalgebra, as rows spanning it."""
    parent: FiniteQuantumGroup
    basis: np.ndarray
    name: str = "H"
    _onb: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        self.basis = np.asarray(self.basis, dtype=complex)
        if self.basis.ndim != 2 or self.basis.shape[1] != self.parent.dim:
            raise ValueError("basis must be rows of length parent.dim")

    def onb(self, tol=None):
        """Rows orthonormal for the Haar inner product, spanning the same space."""
        if self._onb is not None:
            return self._onb
        tol = resolve_tol(tol)
        g = self.parent.gram()
        m = np.conj(self.basis) @ g @ self.basis.T
        vals, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
        keep = vals > max(tol * max(vals.max(), 1.0), 1e-12)
        c = (vecs[:, keep] / np.sqrt(vals[keep])).T @ self.basis
        self._onb = c
        return c

    def projector(self, tol=None):
        """Matrix of the Haar-orthogonal projection onto the span."""
        c = self.onb(tol)
        return c.T @ np.conj(c) @ self.parent.gram()

    @property
    def rank(self):
        return self.onb().shape[0]


def full_subgroup(q, name=None):
    return SubgroupSpec(q, np.eye(q.dim), name=name or q.name)


def group_subgroup(q, elements, name=None):
    """Span of basis vectors picked by index or label.

    The shortcut for a subgroup algebra sitting inside a group algebra:
    pass the element labels (or plain basis indices) and get the
    SubgroupSpec they span.
    """
    names = list(q.basis_names or [])
    idx = []
    for e in elements:
        if isinstance(e, (int, np.integer)):
            i = int(e)
            if not 0 <= i < q.dim:
                raise IndexError("basis index %d out of range" % i)
        else:
            s = str(e)
            if s in names:
                i = names.index(s)
            elif ("u[%s]" % s) in names:
                i = names.index("u[%s]" % s)
            else:
                raise KeyError("no basis element named %r" % s)
        idx.append(i)
    basis = np.zeros((len(idx), q.dim), dtype=complex)
    for r, i in enumerate(idx):
        basis[r, i] = 1.0
    return SubgroupSpec(q, basis, name=name or "H")


def _membership_residual(spec, vectors, tol=None):
    """Worst distance of the given coefficient vectors from the span."""
    p = spec.projector(tol)
    arr = np.atleast_2d(np.asarray(vectors, dtype=complex))
    return float(np.abs(arr - arr @ p.T).max()) if arr.size else 0.0


def is_woronowicz_subalgebra(spec, tol=None):
    """Closure of the span under unit, product, star, antipode and Delta."""
    tol = resolve_tol(tol)
    q = spec.parent
    c = spec.onb(tol)
    p = spec.projector(tol)
    r = c.shape[0]
    res = {}
    res["unit"] = _membership_residual(spec, [q.unit], tol)
    prods = [q.mul(c[i], c[j]) for i in range(r) for j in range(r)]
    res["product"] = _membership_residual(spec, prods, tol)
    res["star"] = _membership_residual(spec, [q.star(c[i]) for i in range(r)], tol)
    res["antipode"] = _membership_residual(spec, [q.s(c[i]) for i in range(r)], tol)
    worst_delta = 0.0
    for i in range(r):
        d = q.delta(c[i])
        worst_delta = max(worst_delta, float(np.abs(d - p @ d @ p.T).max()))
    res["comult"] = worst_delta
    passed = all(v <= 100 * tol for v in res.values())
    return VerificationReport(op="is_woronowicz_subalgebra", passed=passed,
                              tol=tol, residuals=res,
                              details={"rank": r, "name": spec.name})


def sub_quantum_group(spec, tol=None):
    """Structure constants of the span, as a quantum group of its own.

    Requires the span to be closed (raises otherwise).  The Haar state is
    re-solved from invariance on the restricted structure, not assumed to
    be the restriction of the parent's.
    """
    tol = resolve_tol(tol)
    check = is_woronowicz_subalgebra(spec, tol)
    if not check.passed:
        raise ValueError("span is not a Hopf *-subalgebra: %s" % check)
    q = spec.parent
    c = spec.onb(tol)
    r = c.shape[0]
    a = np.conj(c) @ q.gram()
    mult = np.empty((r, r, r), dtype=complex)
    for i in range(r):
        for j in range(r):
            mult[i, j] = a @ q.mul(c[i], c[j])
    comult = np.empty((r, r, r), dtype=complex)
    for i in range(r):
        comult[i] = a @ q.delta(c[i]) @ a.T
    unit = a @ q.unit
    counit = c @ q.counit
    antipode = a @ (q.antipode @ c.T)
    star = a @ (q.star_mat @ np.conj(c.T))
    sub = FiniteQuantumGroup(mult=mult, unit=unit, comult=comult,
                             counit=counit, antipode=antipode, star=star,
                             haar=None, name=spec.name,
                             basis_names=["b%d" % i for i in range(r)])
    sub.haar = solve_haar(sub, tol=tol)
    sub._cache.clear()
    return sub, c


def is_dual_normal(spec, tol=None):
    """Stability of the span under a |--> sum_j u_ij a u_kj^* over the
    regular corepresentation (which contains every irreducible one).
    """
    tol = resolve_tol(tol)
    q = spec.parent
    c = spec.onb(tol)
    p = spec.projector(tol)
    u = regular_corep(q)
    us = star_entrywise(u)
    x1 = np.einsum("ija,xb,abc->xijc", u.coeffs, c, q.mult, optimize=True)
    v = np.einsum("xijc,kjd,cde->xike", x1, us, q.mult, optimize=True)
    flat = v.reshape(-1, q.dim)
    gap = np.abs(flat - flat @ p.T)
    resid = float(gap.max())
    passed = resid <= 100 * tol
    details = {"rank": c.shape[0], "name": spec.name}
    if not passed:
        # the image vector that sticks out of the span the most
        details["violator"] = flat[int(gap.max(axis=1).argmax())].copy()
    return VerificationReport(op="is_dual_normal", passed=passed, tol=tol,
                              residuals={"membership": resid},
                              details=details)


def invariant_subalgebra_check(spec, tol=None):
    """The dual-side criterion: with z(x) = eps(P_H(x)) in the dual, the
    spaces {a: (z (x) 1) Dhat(a) = z (x) a} and {a: (1 (x) z) Dhat(a) = a (x) z}
    coincide exactly when the span is stable in the sense of is_dual_normal.
    """
    tol = resolve_tol(tol)
    q = spec.parent
    p = spec.projector(tol)
    qh = dual(q)
    d = q.dim
    z = p.T @ q.counit
    res = {}
    res["z_idempotent"] = float(np.abs(qh.mul(z, z) - z).max())
    res["z_selfadjoint"] = float(np.abs(qh.star(z) - z).max())
    rows_l = []
    rows_r = []
    for j in range(d):
        dj = qh.comult[j]
        left = np.einsum("a,bc,abd->dc", z, dj, qh.mult) - np.outer(z, np.eye(d)[j])
        right = np.einsum("a,bc,acd->bd", z, dj, qh.mult) - np.outer(np.eye(d)[j], z)
        rows_l.append(left.reshape(-1))
        rows_r.append(right.reshape(-1))
    from .linalg import nullspace
    nl = nullspace(np.array(rows_l).T, tol)
    nr = nullspace(np.array(rows_r).T, tol)
    pl = _column_projector(nl)
    pr = _column_projector(nr)
    res["space_distance"] = float(np.abs(pl - pr).max())
    same = (nl.shape[1] == nr.shape[1]
            and res["space_distance"] <= 1e-7)
    passed = (res["z_idempotent"] <= 100 * tol
              and res["z_selfadjoint"] <= 100 * tol)
    return VerificationReport(op="invariant_subalgebra_check", passed=passed,
                              tol=tol, residuals=res,
                              details={"dim_left": int(nl.shape[1]),
                                       "dim_right": int(nr.shape[1]),
                                       "spaces_coincide": bool(same)})


def _column_projector(m):
    if m.size == 0 or m.shape[1] == 0:
        return np.zeros((m.shape[0], m.shape[0]))
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    keep = s > 1e-10 * max(s.max(), 1.0)
    u = u[:, keep]
    return u @ u.conj().T


# ---------------------------------------------------------------------------
# similarity classes of irreducibles modulo a dual-normal subalgebra


class _UnionFind:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, i):
        while self.p[i] != i:
            self.p[i] = self.p[self.p[i]]
            i = self.p[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.p[max(ri, rj)] = min(ri, rj)


def sim_classes(spec, tol=None, seed=0):
    """Partition of the irreducibles of the parent: alpha ~ beta when some
    irreducible of the subalgebra h has Mor(alpha, beta (x) h) nonzero.

    Refuses spans that are not dual-normal (the relation is only an
    equivalence in that case).
    """
    tol = resolve_tol(tol)
    q = spec.parent
    dn = is_dual_normal(spec, tol)
    if not dn.passed:
        raise ValueError("span is not dual-normal; similarity classes "
                         "are not defined (membership residual %.3e)"
                         % dn.residuals["membership"])
    sub, c = sub_quantum_group(spec, tol)
    comps_h, rep_h = decompose(regular_corep(sub), tol=tol, seed=seed)
    hs = []
    for comp in comps_h:
        hc = comp["corep"]
        hs.append(Corepresentation(q, np.einsum("ijr,rd->ijd", hc.coeffs, c),
                                   name=hc.name + "@" + spec.name))
    comps_q, rep_q = decompose(regular_corep(q), tol=tol, seed=seed)
    alphas = [comp["corep"] for comp in comps_q]
    k = len(alphas)
    uf = _UnionFind(k)
    relation = np.zeros((k, k), dtype=bool)
    from .corep import tensor
    for i, a in enumerate(alphas):
        for j, b in enumerate(alphas):
            if j > i:
                continue
            hit = False
            for h in hs:
                if len(mor_space(a, tensor(b, h), tol=tol)) > 0:
                    hit = True
                    break
            relation[i, j] = relation[j, i] = hit
            if hit:
                uf.union(i, j)
    classes = {}
    for i in range(k):
        classes.setdefault(uf.find(i), []).append(i)
    out = sorted(classes.values(), key=lambda c_: (min(c_),))
    diag_ok = all(relation[i, i] for i in range(k))
    return {"classes": out, "irreducibles": alphas,
            "sub_irreducibles": hs, "relation": relation,
            "reports": {"decompose_parent": rep_q, "decompose_sub": rep_h,
                        "dual_normal": dn},
            "reflexive": bool(diag_ok)}


# ---------------------------------------------------------------------------
# the group of invariant cocycle classes


def _equiv_residual(q, wu, ww, v):
    """min over orientations of || ww - (v (x) v) wu Delta(v*) ||."""
    best = np.inf
    for vec in (v, q.star(v)):
        vv = np.outer(vec, vec)
        t = q.mul2(vv, q.mul2(wu, q.delta(q.star(vec))))
        best = min(best, float(np.abs(t - ww).max()))
        t = q.mul2(vv, q.mul2(ww, q.delta(q.star(vec))))
        best = min(best, float(np.abs(t - wu).max()))
    return best


def _cocycles_equivalent(q, wu, ww, witnesses, tol):
    """(merged?, record) using explicit witnesses, then central triviality
    of wu^* ww."""
    for idx, v in enumerate(witnesses):
        r = _equiv_residual(q, wu, ww, v)
        if r <= 1e-8:
            return True, {"via": "witness", "witness_index": idx,
                          "residual": r}
    x = q.mul2(q.star2(wu), ww)
    if invariance_residual(q, x) <= 1e-7:
        try:
            info = is_trivial_invariant_class(Cocycle(q, x), tol=tol)
        except ValueError:
            return False, None
        if info["trivial"]:
            r = _equiv_residual(q, wu, ww, info["witness"])
            if r <= 1e-8:
                return True, {"via": "central-coboundary",
                              "residual": r}
    return False, None


def _validate_invariant_cocycle(q, w, tol):
    fails = {}
    arr = w.coeffs if isinstance(w, Cocycle) else np.asarray(w, dtype=complex)
    checks = {"left_cocycle": left_cocycle_residual(q, arr),
              "unitary": unitarity_residual2(q, arr),
              "normalized": normalization_residual(q, arr),
              "invariant": invariance_residual(q, arr)}
    for k, v in checks.items():
        if v > 1e-7:
            fails[k] = v
    if fails:
        raise ValueError("not an invariant unitary normalized cocycle: %s"
                         % fails)
    return arr


def gamma_group(q, cocycles, witnesses=(), tol=None, max_new=64):
    """The finite group generated by the given invariant cocycle classes.

    Classes are merged by explicit witnesses (w' = (v(x)v) w Delta(v*)) or
    by central triviality of w^* w'.  The class of 1(x)1 is always present
    and is the identity.  Products of representatives are closed up by
    appending genuinely new classes, up to max_new, then the multiplication
    table is verified to be a group.
    """
    tol = resolve_tol(tol)
    witnesses = [np.asarray(v, dtype=complex) for v in witnesses]
    for v in witnesses:
        if np.abs(q.mul(q.star(v), v) - q.unit).max() > 1e-7:
            raise ValueError("witness is not unitary")
    reps = [trivial_cocycle(q).coeffs]
    names = ["[1]"]
    merges = []
    arrs = [_validate_invariant_cocycle(q, w, tol) for w in cocycles]
    for pos, arr in enumerate(arrs):
        placed = False
        for ci, rep in enumerate(reps):
            ok, rec = _cocycles_equivalent(q, rep, arr, witnesses, tol)
            if ok:
                rec.update({"input_index": pos, "merged_into": ci})
                merges.append(rec)
                placed = True
                break
        if not placed:
            reps.append(arr)
            w = cocycles[pos]
            names.append("[%s]" % (w.name if isinstance(w, Cocycle)
                                   else "w%d" % pos))
    # close under products
    added = 0
    table = None
    while True:
        k = len(reps)
        table = np.full((k, k), -1, dtype=int)
        new_rep = None
        for i in range(k):
            for j in range(k):
                prod = q.mul2(reps[i], reps[j])
                hit = -1
                for ci, rep in enumerate(reps):
                    ok, _ = _cocycles_equivalent(q, rep, prod, witnesses, tol)
                    if ok:
                        hit = ci
                        break
                if hit < 0:
                    new_rep = prod
                    break
                table[i, j] = hit
            if new_rep is not None:
                break
        if new_rep is None:
            break
        added += 1
        if added > max_new:
            raise RuntimeError("class set not closed under products "
                               "within %d extensions" % max_new)
        reps.append(new_rep)
        names.append("[p%d]" % added)
    gt = GroupTable(table.tolist(), names=names, name="Gamma(%s)" % q.name,
                    check=True)
    return {"order": len(reps), "group": gt,
            "representatives": [Cocycle(q, r, name=n)
                                for r, n in zip(reps, names)],
            "merges": merges,
            "names": names}
