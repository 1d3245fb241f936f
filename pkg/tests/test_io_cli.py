import json
import os
import subprocess
import sys

import numpy as np
import pytest

from qgk import catalog, io
from qgk.cocycle import Cocycle
from qgk.corep import Corepresentation
from qgk.groups import GroupTable
from qgk.normalizer import SubgroupSpec


def roundtrip(obj, tmp_path, fname="obj.json"):
    path = os.path.join(str(tmp_path), fname)
    io.save_json(obj, path)
    back = io.load_json(path)
    io.save_json(back, os.path.join(str(tmp_path), "again_" + fname))
    with open(path) as fh:
        first = fh.read()
    with open(os.path.join(str(tmp_path), "again_" + fname)) as fh:
        second = fh.read()
    assert first == second, "serialization is not stable"
    return back


def test_quantum_group_roundtrip(tmp_path, cs3):
    back = roundtrip(cs3, tmp_path)
    assert np.abs(back.mult - cs3.mult).max() == 0
    assert np.abs(back.comult - cs3.comult).max() == 0
    assert np.abs(back.unit - cs3.unit).max() == 0
    assert np.abs(back.haar - cs3.haar).max() == 0
    assert back.basis_names == cs3.basis_names


def test_minimal_file_solves_unit_and_haar(tmp_path, cs3):
    d = io.to_jsonable(cs3)
    for extra in ("unit", "haar", "name"):
        d.pop(extra)
    path = os.path.join(str(tmp_path), "minimal.json")
    with open(path, "w") as fh:
        json.dump(d, fh)
    q = io.load_json(path)
    assert np.abs(q.unit - cs3.unit).max() < 1e-10
    assert np.abs(q.haar - cs3.haar).max() < 1e-10


def test_corep_roundtrip_with_catalog_parent(tmp_path):
    _, u = catalog.resolve("pauli")
    back = roundtrip(u, tmp_path)
    assert isinstance(back, Corepresentation)
    assert back.parent is u.parent  # catalog id resolves to the shared object
    assert np.abs(back.coeffs - u.coeffs).max() == 0


def test_cocycle_roundtrip_inline_parent(tmp_path, cs3):
    import copy
    q = copy.deepcopy(cs3)
    q.name = "custom-copy"  # not a catalog name, forces an inline parent
    w = Cocycle(q, np.outer(q.unit, q.unit))
    back = roundtrip(w, tmp_path)
    assert isinstance(back, Cocycle)
    assert back.parent is not cs3
    assert np.abs(back.coeffs - w.coeffs).max() == 0


def test_cocycle_sparse_entries_load(tmp_path, cs3):
    w = np.outer(cs3.unit, cs3.unit)
    entries = [[i, j, w[i, j].real, w[i, j].imag]
               for i in range(6) for j in range(6) if abs(w[i, j]) > 0]
    path = os.path.join(str(tmp_path), "sparse.json")
    with open(path, "w") as fh:
        json.dump({"parent": "cstar:s3", "coeffs": entries}, fh)
    back = io.load_json(path)
    assert np.abs(back.coeffs - w).max() == 0


def test_group_and_array_roundtrip(tmp_path):
    g = catalog.group("d4")
    back = roundtrip(g, tmp_path, "group.json")
    assert isinstance(back, GroupTable)
    assert back.table == g.table
    arr = np.arange(6).reshape(2, 3) * (1 + 2j)
    back2 = roundtrip(arr, tmp_path, "arr.json")
    assert np.abs(back2 - arr).max() == 0


def test_subgroup_spec_roundtrip(tmp_path, cs3):
    from qgk.normalizer import group_subgroup
    s = group_subgroup(cs3, [0, 3, 4], name="A3")
    back = roundtrip(s, tmp_path, "sub.json")
    assert isinstance(back, SubgroupSpec)
    assert np.abs(back.basis - s.basis).max() == 0
    path = os.path.join(str(tmp_path), "short.json")
    with open(path, "w") as fh:
        json.dump({"parent": "cstar:s3",
                   "subgroup_elements": ["012", "120", "201"]}, fh)
    short = io.load_json(path)
    assert np.abs(short.basis - s.basis).max() == 0


def test_parent_by_path(tmp_path, cs3):
    qpath = os.path.join(str(tmp_path), "parent.json")
    io.save_json(cs3, qpath)
    wpath = os.path.join(str(tmp_path), "w.json")
    with open(wpath, "w") as fh:
        json.dump({"parent": "parent.json",
                   "coeffs": io.to_jsonable(np.outer(cs3.unit, cs3.unit))["array"]},
                  fh)
    w = io.load_json(wpath)
    assert isinstance(w, Cocycle)
    assert w.parent.dim == 6


def test_unrecognized_object_raises(tmp_path):
    path = os.path.join(str(tmp_path), "bad.json")
    with open(path, "w") as fh:
        json.dump({"foo": 1}, fh)
    with pytest.raises(ValueError):
        io.load_json(path)


# ---------------------------------------------------------------- CLI


def run_cli(*args):
    proc = subprocess.run([sys.executable, "-m", "qgk.cli", *args],
                          capture_output=True, text=True, timeout=300)
    return proc.returncode, proc.stdout, proc.stderr


def test_cli_catalog_list():
    code, out, _ = run_cli("catalog-list")
    assert code == 0
    assert "wall32" in out and "pauli" in out


def test_cli_verify_axioms_ok():
    code, out, _ = run_cli("verify", "axioms", "--example", "cstar:s3")
    assert code == 0
    assert "PASS" in out


def test_cli_verify_cocycle_and_invariant():
    code, out, _ = run_cli("verify", "cocycle", "--cocycle", "pauli-omega")
    assert code == 0
    code2, _, _ = run_cli("verify", "invariant", "--cocycle", "wall-omega")
    assert code2 == 0


def test_cli_verify_failure_exits_one(tmp_path):
    _, w = catalog.resolve("pauli-omega")
    bad = Cocycle(w.parent, 0.5 * w.coeffs)
    path = os.path.join(str(tmp_path), "bad.json")
    io.save_json(bad, path)
    code, out, _ = run_cli("verify", "cocycle", "--cocycle", path)
    assert code == 1
    assert "FAIL" in out


def test_cli_bad_input_exits_two(tmp_path):
    path = os.path.join(str(tmp_path), "broken.json")
    with open(path, "w") as fh:
        fh.write("{not json")
    code, _, err = run_cli("verify", "axioms", "--input", path)
    assert code == 2
    assert err.strip()


def test_cli_classify_and_decompose():
    code, out, _ = run_cli("classify", "--example", "pauli")
    assert code == 0
    assert "strongly-projective" in out
    code2, out2, _ = run_cli("decompose", "--example", "regular:fn:s3")
    assert code2 == 0
    assert "2" in out2


def test_cli_flags_before_or_after_subcommand(tmp_path):
    out_a = os.path.join(str(tmp_path), "a.json")
    out_b = os.path.join(str(tmp_path), "b.json")
    code_a, _, _ = run_cli("--json-out", out_a, "classify", "--example", "pauli")
    code_b, _, _ = run_cli("classify", "--example", "pauli", "--json-out", out_b)
    assert code_a == 0 and code_b == 0
    with open(out_a) as fh:
        pa = json.load(fh)
    with open(out_b) as fh:
        pb = json.load(fh)
    assert pa["kind"] == pb["kind"] == "strongly-projective"
    for payload in (pa, pb):
        meta = payload["meta"]
        assert meta["tol"] == 1e-9
        assert "classify" in meta["command"]
        assert meta["elapsed_s"] >= 0


def test_cli_cohomology_with_twist():
    code, out, _ = run_cli("cohomology", "--cocycles",
                           "wall-omega,trivial:cstar:wall32",
                           "--twist", "wall-omega")
    assert code == 0
    assert "preserved" in out.lower()


def test_cli_gamma_with_witness():
    code, out, _ = run_cli("gamma", "--example", "wall32",
                           "--cocycles", "trivial:cstar:wall32,wall-omega",
                           "--witness", "wall-v")
    assert code == 0
    assert "order 1" in out or '"order": 1' in out or "order: 1" in out
    code2, out2, _ = run_cli("gamma", "--example", "wall32",
                             "--cocycles", "trivial:cstar:wall32,wall-omega")
    assert code2 == 0
    assert "order 2" in out2 or '"order": 2' in out2 or "order: 2" in out2
