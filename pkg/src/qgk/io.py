"""JSON interchange.  All numbers are [re, im] pairs; dumps are sorted
and indented so equal objects serialize to identical bytes.

Schemas:

  quantum group  {"dim": n, "basis": [names], "mult": [[i,j,k,re,im],...],
                  "comult": [[i,j,k,re,im],...], "counit": n pairs,
                  "antipode": dense n x n, "star": dense n x n,
                  "haar": n pairs, "unit": optional n pairs,
                  "name": optional}
                 A missing unit is re-solved from the product table
                 (unique for a unital algebra).
  corep          {"n": n, "coeffs": [[i,j,k,re,im],...], "parent": id}
  cocycle        {"parent": id, "coeffs": dense dim x dim or
                  [[i,j,re,im],...]}
  subgroup       {"parent": id, "basis": [coeff vectors]} or
                 {"parent": id, "subgroup_elements": [labels]}
  group          {"order": n, "elements": [names], "cayley": [[index]]}
  bare array     {"array": nested pairs}

A parent id is a catalog name, a path to another JSON file, or an
inline quantum-group object.
"""

import json
import os

import numpy as np

from .algebra import FiniteQuantumGroup, solve_haar
from .cocycle import Cocycle
from .corep import Corepresentation
from .groups import GroupTable
from .normalizer import SubgroupSpec, group_subgroup


def _pairs_out(a):
    a = np.asarray(a)
    if a.ndim == 0:
        z = complex(a)
        return [z.real, z.imag]
    return [_pairs_out(x) for x in a]


def _pairs_in(obj):
    arr = np.asarray(obj, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("expected [re, im] pairs in the last axis")
    return arr[..., 0] + 1j * arr[..., 1]


def _sparse_out(t):
    t = np.asarray(t, dtype=complex)
    entries = []
    for idx in sorted(zip(*np.nonzero(t))):
        z = t[idx]
        entries.append([int(i) for i in idx] + [z.real, z.imag])
    return entries


def _sparse_in(entries, shape):
    t = np.zeros(shape, dtype=complex)
    k = len(shape)
    for row in entries:
        if len(row) != k + 2:
            raise ValueError("sparse entry %r does not match rank %d" % (row, k))
        idx = tuple(int(i) for i in row[:k])
        t[idx] = row[k] + 1j * row[k + 1]
    return t


def _solve_unit(mult):
    """The unique u with sum_i u_i mult[i,j,k] = delta_jk = sum_i u_i mult[j,i,k]."""
    d = mult.shape[0]
    left = mult.reshape(d, d * d).T
    right = np.transpose(mult, (1, 0, 2)).reshape(d, d * d).T
    a = np.concatenate([left, right])
    b = np.concatenate([np.eye(d).reshape(-1)] * 2)
    u, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = float(np.abs(a @ u - b).max())
    if resid > 1e-8:
        raise ValueError("product table has no unit (residual %.3e)" % resid)
    return u


def _parent_id(q):
    from . import catalog
    try:
        kind, obj = catalog.resolve(q.name)
        if kind == "quantum_group" and obj is q:
            return q.name
    except KeyError:
        pass
    return to_jsonable(q)


def to_jsonable(obj):
    if isinstance(obj, FiniteQuantumGroup):
        out = {"dim": obj.dim, "basis": list(obj.basis_names),
               "mult": _sparse_out(obj.mult),
               "comult": _sparse_out(obj.comult),
               "unit": _pairs_out(obj.unit),
               "counit": _pairs_out(obj.counit),
               "antipode": _pairs_out(obj.antipode),
               "star": _pairs_out(obj.star_mat),
               "name": obj.name}
        if obj.haar is not None:
            out["haar"] = _pairs_out(obj.haar)
        return out
    if isinstance(obj, Corepresentation):
        return {"n": obj.n, "coeffs": _sparse_out(obj.coeffs),
                "parent": _parent_id(obj.parent), "name": obj.name}
    if isinstance(obj, Cocycle):
        return {"parent": _parent_id(obj.parent),
                "coeffs": _pairs_out(obj.coeffs), "name": obj.name}
    if isinstance(obj, SubgroupSpec):
        return {"parent": _parent_id(obj.parent),
                "basis": _pairs_out(obj.basis), "name": obj.name}
    if isinstance(obj, GroupTable):
        return {"order": obj.n, "elements": list(obj.names),
                "cayley": [list(r) for r in obj.table]}
    if isinstance(obj, np.ndarray):
        return {"array": _pairs_out(obj.astype(complex))}
    raise TypeError("cannot serialize %r" % type(obj))


def _resolve_parent(pid, base_dir=""):
    if isinstance(pid, dict):
        return from_jsonable(pid, base_dir)
    if isinstance(pid, str):
        path = pid if os.path.isabs(pid) else os.path.join(base_dir, pid)
        if os.path.exists(path):
            return load_json(path)
        from . import catalog
        kind, obj = catalog.resolve(pid)
        if kind != "quantum_group":
            raise ValueError("parent id %r is a %s" % (pid, kind))
        return obj
    raise ValueError("bad parent id %r" % (pid,))


def from_jsonable(d, base_dir=""):
    if not isinstance(d, dict):
        raise ValueError("expected a JSON object, got %r" % type(d))
    if "cayley" in d:
        return GroupTable(d["cayley"], names=d.get("elements"),
                          name=d.get("name", "G"), check=True)
    if "mult" in d:
        n = int(d["dim"])
        mult = _sparse_in(d["mult"], (n, n, n))
        comult = _sparse_in(d["comult"], (n, n, n))
        unit = _pairs_in(d["unit"]) if "unit" in d else _solve_unit(mult)
        q = FiniteQuantumGroup(
            mult=mult, unit=unit, comult=comult,
            counit=_pairs_in(d["counit"]),
            antipode=_pairs_in(d["antipode"]), star=_pairs_in(d["star"]),
            haar=_pairs_in(d["haar"]) if "haar" in d else None,
            name=d.get("name", "Q"), basis_names=d.get("basis"))
        if q.haar is None:
            q.haar = solve_haar(q)
            q._cache.clear()
        return q
    if "n" in d and "coeffs" in d:
        parent = _resolve_parent(d["parent"], base_dir)
        n = int(d["n"])
        coeffs = _sparse_in(d["coeffs"], (n, n, parent.dim))
        return Corepresentation(parent, coeffs, name=d.get("name", "u"))
    if "parent" in d and ("basis" in d or "subgroup_elements" in d):
        parent = _resolve_parent(d["parent"], base_dir)
        name = d.get("name", "H")
        if "basis" in d:
            return SubgroupSpec(parent, _pairs_in(d["basis"]), name=name)
        return group_subgroup(parent, d["subgroup_elements"], name=name)
    if "parent" in d and "coeffs" in d:
        parent = _resolve_parent(d["parent"], base_dir)
        c = d["coeffs"]
        if c and isinstance(c[0], list) and len(c[0]) == 4 \
                and not isinstance(c[0][0], list):
            coeffs = _sparse_in(c, (parent.dim, parent.dim))
        else:
            coeffs = _pairs_in(c)
        return Cocycle(parent, coeffs, name=d.get("name", "w"))
    if "array" in d:
        return _pairs_in(d["array"])
    raise ValueError("unrecognized object (keys: %s)" % sorted(d))


def dumps(obj):
    payload = obj if isinstance(obj, dict) else to_jsonable(obj)
    return json.dumps(payload, sort_keys=True, indent=2)


def save_json(obj, path):
    with open(path, "w") as fh:
        fh.write(dumps(obj))
        fh.write("\n")


def load_json(path):
    with open(path) as fh:
        data = json.load(fh)
    return from_jsonable(data, base_dir=os.path.dirname(os.path.abspath(path)))
