import numpy as np
import pytest

from qgk import catalog
from qgk.algebra import verify_hopf_axioms
from qgk.cocycle import trivial_cocycle
from qgk.corep import decompose, regular_corep
from qgk.normalizer import (SubgroupSpec, full_subgroup, gamma_group,
                            group_subgroup, invariant_subalgebra_check,
                            is_dual_normal, is_woronowicz_subalgebra,
                            sim_classes, sub_quantum_group)


def subgroup_spec_from_indices(q, idx, name="H"):
    return group_subgroup(q, sorted(idx), name=name)


def test_group_subgroup_label_and_index(cs3):
    a = group_subgroup(cs3, ["012", "120", "201"])
    b = group_subgroup(cs3, [0, 3, 4])
    assert np.allclose(a.basis, b.basis)
    with pytest.raises(KeyError):
        group_subgroup(cs3, ["zzz"])


def test_woronowicz_subalgebra_verdicts(cs3):
    a3 = group_subgroup(cs3, [0, 3, 4], name="C*(A3)")
    assert is_woronowicz_subalgebra(a3).passed
    # a span missing closure under the product is refused
    partial = SubgroupSpec(cs3, np.eye(cs3.dim)[[0, 3]], name="partial")
    assert not is_woronowicz_subalgebra(partial).passed
    with pytest.raises(ValueError):
        sub_quantum_group(partial)


def test_sub_quantum_group_restriction(cs3):
    a3 = group_subgroup(cs3, [0, 3, 4], name="C*(A3)")
    sub, emb = sub_quantum_group(a3)
    assert sub.dim == 3
    assert verify_hopf_axioms(sub).passed
    comps, _ = decompose(regular_corep(sub))
    assert sorted(c["corep"].n for c in comps) == [1, 1, 1]
    assert emb.shape == (3, cs3.dim)


def test_dual_normal_matches_classical(cs3):
    g = catalog.group("s3")
    for sub in g.all_subgroups():
        spec = subgroup_spec_from_indices(cs3, sub)
        rep = is_dual_normal(spec)
        assert rep.passed == g.is_normal(sub)
        inv = invariant_subalgebra_check(spec)
        assert inv.details["spaces_coincide"] == rep.passed


def test_dual_normal_violator_is_reported(cs3):
    g = catalog.group("s3")
    z2 = next(s for s in g.all_subgroups() if len(s) == 2)
    spec = subgroup_spec_from_indices(cs3, z2)
    rep = is_dual_normal(spec)
    assert not rep.passed
    assert "violator" in rep.details
    v = rep.details["violator"]
    assert np.abs(v).max() > 1e-3


def test_full_and_trivial_subgroups_are_normal(cs3):
    assert is_dual_normal(full_subgroup(cs3)).passed
    unit_span = SubgroupSpec(cs3, cs3.unit.reshape(1, -1), name="C1")
    assert is_dual_normal(unit_span).passed


def test_sim_classes_s3(fs3):
    # functions constant on A3 cosets form the dual-normal subalgebra
    g = catalog.group("s3")
    a3 = sorted(next(s for s in g.all_subgroups()
                     if len(s) == 3 and g.is_normal(s)))
    basis = np.zeros((2, 6), dtype=complex)
    for i in range(6):
        basis[0 if i in a3 else 1, i] = 1.0
    spec = SubgroupSpec(fs3, basis, name="C(S3/A3)")
    assert is_dual_normal(spec).passed
    out = sim_classes(spec)
    assert out["classes"] == [[0, 2], [1]]
    dims = [sorted(out["irreducibles"][i].n for i in blk)
            for blk in out["classes"]]
    assert dims == [[1, 1], [2]]
    assert out["reflexive"]


def test_sim_classes_refuses_non_normal(fs3, cs3):
    g = catalog.group("s3")
    z2 = next(s for s in g.all_subgroups() if len(s) == 2)
    spec = subgroup_spec_from_indices(cs3, z2)
    with pytest.raises(ValueError):
        sim_classes(spec)


def test_gamma_group_wall32(wall32):
    _, w = catalog.resolve("wall-omega")
    triv = trivial_cocycle(wall32)
    out = gamma_group(wall32, [triv, w])
    assert out["order"] == 2
    _, (q, v) = catalog.resolve("wall-v")
    out2 = gamma_group(wall32, [triv, w], witnesses=[v])
    assert out2["order"] == 1
    assert any(m["via"] == "witness" for m in out2["merges"])


def test_gamma_group_heisenberg():
    q = catalog.quantum_group("cstar:z4xz4")
    _, w = catalog.resolve("heis-omega")
    out = gamma_group(q, [trivial_cocycle(q), w])
    assert out["order"] == 4
    assert sorted(out["group"].element_orders()) == [1, 2, 4, 4]


def test_gamma_group_pauli():
    q = catalog.quantum_group("cstar:z2xz2")
    _, w = catalog.resolve("pauli-omega")
    out = gamma_group(q, [trivial_cocycle(q), w])
    assert out["order"] == 2
    assert sorted(out["group"].element_orders()) == [1, 2]


def test_gamma_group_empty_cocycles(cs3):
    out = gamma_group(cs3, [])
    assert out["order"] == 1
    assert out["names"] == ["[1]"]
