"""Named examples: groups, quantum groups over them, coreps and cocycles.

Names accepted by resolve():

  groups          trivial z2 z3 z4 z6 z8 z2xz2 z3xz3 z2xz2xz2 z4xz4
                  s3 d4 q8 a4 s4 wall32
  quantum groups  cstar:<group>, fn:<group>, and the alias wall32
                  (= cstar:wall32, the order-32 example)
  coreps          pauli (on cstar:z2xz2), d4-projective (on fn:d4),
                  heisenberg (on cstar:z4xz4), regular:<quantum group>
  cocycles        pauli-omega, d4-omega, heis-omega, wall-omega,
                  trivial:<quantum group>
  witnesses       wall-v (the unitary whose coboundary is wall-omega)
"""

import itertools
from dataclasses import dataclass

import numpy as np

from . import groups as G
from .algebra import from_function_algebra, from_group_algebra
from .cocycle import Cocycle, coboundary, cocycle_on_function_algebra, trivial_cocycle
from .corep import Corepresentation, regular_corep
from .linalg import resolve_tol

_GROUP_BUILDERS = {
    "trivial": lambda: G.cyclic(1),
    "z2": lambda: G.cyclic(2),
    "z3": lambda: G.cyclic(3),
    "z4": lambda: G.cyclic(4),
    "z6": lambda: G.cyclic(6),
    "z8": lambda: G.cyclic(8),
    "z2xz2": lambda: G.direct_product(G.cyclic(2), G.cyclic(2), name="z2xz2"),
    "z3xz3": lambda: G.direct_product(G.cyclic(3), G.cyclic(3), name="z3xz3"),
    "z2xz2xz2": lambda: G.direct_product(
        G.direct_product(G.cyclic(2), G.cyclic(2)), G.cyclic(2),
        name="z2xz2xz2"),
    "z4xz4": lambda: G.direct_product(G.cyclic(4), G.cyclic(4), name="z4xz4"),
    "s3": lambda: G.symmetric(3),
    "d4": lambda: G.dihedral(4),
    "q8": lambda: G.quaternion8(),
    "a4": lambda: G.alternating4(),
    "s4": lambda: G.symmetric(4),
    "wall32": lambda: G.holomorph_z8(),
}

_cache = {}


def group(name):
    key = "group:" + name
    if key not in _cache:
        if name not in _GROUP_BUILDERS:
            raise KeyError("unknown group %r (have: %s)"
                           % (name, " ".join(sorted(_GROUP_BUILDERS))))
        _cache[key] = _GROUP_BUILDERS[name]()
    return _cache[key]


def quantum_group(spec):
    """'cstar:<group>' or 'fn:<group>' (or the alias 'wall32')."""
    if spec == "wall32":
        spec = "cstar:wall32"
    if spec in _cache:
        return _cache[spec]
    if ":" not in spec:
        raise KeyError("quantum group spec must look like cstar:<g> or fn:<g>")
    kind, gname = spec.split(":", 1)
    gt = group(gname)
    if kind == "cstar":
        q = from_group_algebra(gt)
    elif kind == "fn":
        q = from_function_algebra(gt)
    else:
        raise KeyError("unknown quantum group kind %r" % kind)
    q.name = spec  # canonical id, used by serialization
    _cache[spec] = q
    return q


# ---------------------------------------------------------------------------
# abelian duality helpers


def _abelian_coords(gt):
    gens = G.abelian_cyclic_decomposition(gt)
    orders = [o for _, o in gens]
    coords = {}
    for powers in itertools.product(*[range(o) for o in orders]):
        x = gt.e
        for (gen, _), k in zip(gens, powers):
            for _ in range(k):
                x = gt.table[x][gen]
        coords[x] = powers
    if len(coords) != gt.n:
        raise RuntimeError("coordinate chart is not a bijection")
    return orders, coords


def _char_matrix(gt):
    """chi[y, g] where the element y doubles as the character with its
    own coordinates: chi_y(g) = prod_i exp(2 pi i y_i x_i / n_i)."""
    orders, coords = _abelian_coords(gt)
    n = gt.n
    chi = np.ones((n, n), dtype=complex)
    for y in range(n):
        for g in range(n):
            phase = sum(coords[y][i] * coords[g][i] / orders[i]
                        for i in range(len(orders)))
            chi[y, g] = np.exp(2j * np.pi * phase)
    return chi, orders, coords


def _weyl_projective(qg_spec, mats_by_coord):
    """U = sum_chi pi(chi) (x) p_chi on the group algebra of an abelian group,
    together with the cocycle it is projective over."""
    q = quantum_group(qg_spec)
    gt = group(qg_spec.split(":", 1)[1])
    chi, orders, coords = _char_matrix(gt)
    n = gt.n
    mats = [np.asarray(mats_by_coord(coords[y]), dtype=complex)
            for y in range(n)]
    p = np.conj(chi) / n                       # p[y, g]
    nn = mats[0].shape[0]
    coeffs = np.zeros((nn, nn, n), dtype=complex)
    for y in range(n):
        coeffs += mats[y][:, :, None] * p[y][None, None, :]
    sigma = G.projective_rep_cocycle(gt, mats)
    omega = p.T @ np.conj(sigma) @ p
    return q, coeffs, Cocycle(q, omega)


def _pauli_data():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.array([[1, 0], [0, -1]], dtype=complex)

    def mats(coord):
        a, b = coord
        return np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b)

    q, coeffs, w = _weyl_projective("cstar:z2xz2", mats)
    return Corepresentation(q, coeffs, name="pauli"), Cocycle(q, w.coeffs,
                                                              name="pauli-omega")


def _heisenberg_data():
    x = np.roll(np.eye(4), 1, axis=0).astype(complex)
    z = np.diag([1, 1j, -1, -1j])

    def mats(coord):
        a, b = coord
        return np.linalg.matrix_power(x, a) @ np.linalg.matrix_power(z, b)

    q, coeffs, w = _weyl_projective("cstar:z4xz4", mats)
    return Corepresentation(q, coeffs, name="heisenberg"), Cocycle(
        q, w.coeffs, name="heis-omega")


def _d4_data():
    gt = group("d4")
    q = quantum_group("fn:d4")
    zeta = np.exp(1j * np.pi / 4)
    r = np.diag([zeta, np.conj(zeta)])
    f = np.array([[0, 1], [1, 0]], dtype=complex)
    mats = []
    for idx in range(8):
        a, b = idx % 4, idx // 4
        mats.append(np.linalg.matrix_power(r, a) @ np.linalg.matrix_power(f, b))
    coeffs = np.zeros((2, 2, 8), dtype=complex)
    for g in range(8):
        coeffs[:, :, g] = mats[g]
    sigma = G.projective_rep_cocycle(gt, mats)
    w = cocycle_on_function_algebra(q, sigma)
    return (Corepresentation(q, coeffs, name="d4-projective"),
            Cocycle(q, w.coeffs, name="d4-omega"))


def build_wall_group():
    """The order-32 group algebra with its distinguished generators.

    Returns (q, gens) where gens maps "u", "s", "t" to basis indices of
    the group elements; the relations s^2 = t^2 = u^8 = e, st = ts,
    s u s^-1 = u^3, t u t^-1 = u^5 are asserted in table arithmetic.
    """
    q = quantum_group("cstar:wall32")
    gt = group("wall32")
    # elements are (x, bits) with index 4x + bits; conjugation by index 2
    # sends u to u^3 (that one is s), by index 1 to u^5 (that one is t)
    gens = {"u": 4, "s": 2, "t": 1}
    e = gt.e
    u, s, t = gens["u"], gens["s"], gens["t"]

    def power(g, k):
        x = e
        for _ in range(k):
            x = gt.mul(x, g)
        return x

    assert power(s, 2) == e and power(t, 2) == e and power(u, 8) == e
    assert gt.mul(s, t) == gt.mul(t, s)
    assert gt.conj(s, u) == power(u, 3)
    assert gt.conj(t, u) == power(u, 5)
    return q, gens


def wall_unitary():
    """The self-adjoint unitary v = (1+u^4)/2 + (sqrt2/4) u (1 - u^2 - u^4 + u^6)
    in the group algebra of wall32, supported on the cyclic part."""
    q = quantum_group("cstar:wall32")
    v = np.zeros(32, dtype=complex)
    s = np.sqrt(2) / 4

    def uidx(k):
        return 4 * (k % 8)

    v[uidx(0)] += 0.5
    v[uidx(4)] += 0.5
    v[uidx(1)] += s
    v[uidx(3)] -= s
    v[uidx(5)] -= s
    v[uidx(7)] += s
    return q, v


def build_wall_v():
    """wall_unitary's element alone, with its defining facts asserted."""
    q, v = wall_unitary()
    assert np.abs(q.star(v) - v).max() <= 1e-12
    assert np.abs(q.mul(v, v) - q.unit).max() <= 1e-12
    assert np.abs(q.mul(v, q.star(v)) - q.unit).max() <= 1e-12
    assert abs(complex(q.eps(v)) - 1.0) <= 1e-12
    return v


def build_pauli_projective():
    return _pauli_data()[0]


def classical_oracles():
    """Brute-force group-theoretic baselines, independent of the kernel.

    Everything here works off Cayley tables only: character tables by
    class-matrix eigenvectors, conjugacy classes and normality by raw
    enumeration, and the scalar-twist test for projective matrix
    representations.
    """
    return {
        "character_table": G.character_table,
        "irreducible_dimensions": G.irreducible_dimensions,
        "conjugacy_classes": lambda gt: gt.conjugacy_classes(),
        "is_normal": lambda gt, subset: gt.is_normal(subset),
        "all_subgroups": lambda gt: gt.all_subgroups(),
        "projective_rep_cocycle": G.projective_rep_cocycle,
        "is_classical_cocycle": G.is_classical_cocycle,
    }


def wall_omega():
    q, v = wall_unitary()
    w = coboundary(q, v, name="wall-omega")
    return Cocycle(q, w.coeffs, name="wall-omega")


# ---------------------------------------------------------------------------


def resolve(name):
    """Look a name up; returns (kind, object) with kind one of
    'group', 'quantum_group', 'corep', 'cocycle', 'unitary'.

    "wall32" means the order-32 quantum group (the bare group stays
    reachable through group())."""
    if name == "wall32":
        return "quantum_group", quantum_group("cstar:wall32")
    if name in _GROUP_BUILDERS:
        return "group", group(name)
    if name.startswith("cstar:") or name.startswith("fn:"):
        return "quantum_group", quantum_group(name)
    if name.startswith("regular:"):
        q = quantum_group(name.split(":", 1)[1])
        return "corep", regular_corep(q)
    if name.startswith("trivial:"):
        q = quantum_group(name.split(":", 1)[1])
        return "cocycle", trivial_cocycle(q)
    if name == "pauli":
        return "corep", _pauli_data()[0]
    if name == "pauli-omega":
        return "cocycle", _pauli_data()[1]
    if name == "heisenberg":
        return "corep", _heisenberg_data()[0]
    if name == "heis-omega":
        return "cocycle", _heisenberg_data()[1]
    if name == "d4-projective":
        return "corep", _d4_data()[0]
    if name == "d4-omega":
        return "cocycle", _d4_data()[1]
    if name == "wall-omega":
        return "cocycle", wall_omega()
    if name == "wall-v":
        return "unitary", wall_unitary()
    raise KeyError("unknown catalog name %r; see catalog_list()" % name)


def default_cocycles(qg_spec):
    """Cocycle names registered for a given quantum group spec."""
    named = {"cstar:z2xz2": ["pauli-omega"],
             "cstar:z4xz4": ["heis-omega"],
             "fn:d4": ["d4-omega"],
             "cstar:wall32": ["wall-omega"],
             "wall32": ["wall-omega"]}
    return named.get(qg_spec, [])


def catalog_list():
    return {
        "groups": sorted(_GROUP_BUILDERS),
        "quantum_groups": (["cstar:<group>", "fn:<group>", "wall32"]),
        "coreps": ["pauli", "heisenberg", "d4-projective",
                   "regular:<quantum group>"],
        "cocycles": ["pauli-omega", "heis-omega", "d4-omega", "wall-omega",
                     "trivial:<quantum group>"],
        "witnesses": ["wall-v"],
    }


# ---------------------------------------------------------------------------


@dataclass
class CatalogEntry:
    """A named example plus the facts its construction is pinned to."""
    name: str
    builder: object
    expected_facts: tuple  # of (property, expected value, how it was obtained)


def _fact_value(obj, prop):
    from .algebra import center_minimal_projections, verify_hopf_axioms
    from .cocycle import is_invariant, is_left_cocycle, is_trivial_invariant_class
    from .projective import classify
    if prop == "dim":
        return obj.dim
    if prop == "order":
        return obj.n
    if prop == "axioms_pass":
        return bool(verify_hopf_axioms(obj).passed)
    if prop == "central_projections":
        return len(center_minimal_projections(obj))
    if prop == "conjugacy_classes":
        return len(obj.conjugacy_classes())
    if prop == "irreducible_dimensions":
        return sorted(G.irreducible_dimensions(obj))
    if prop == "kind":
        return classify(obj)["kind"]
    if prop == "left_cocycle":
        return bool(is_left_cocycle(obj).passed)
    if prop == "invariant":
        return bool(is_invariant(obj).passed)
    if prop == "centrally_trivial":
        return bool(is_trivial_invariant_class(obj)["trivial"])
    if prop == "selfadjoint_residual":
        q, v = obj
        return float(np.abs(q.star(v) - v).max())
    if prop == "involution_residual":
        q, v = obj
        return float(np.abs(q.mul(v, v) - q.unit).max())
    if prop == "counit_value":
        q, v = obj
        return complex(q.eps(v))
    raise KeyError("unknown fact property %r" % prop)


def check_expected_facts(entry, tol=None):
    """Build the entry and evaluate every pinned fact.

    Returns (all_ok, rows); numeric facts compare within 100*tol,
    everything else by equality.
    """
    tol = resolve_tol(tol)
    obj = entry.builder()
    rows = []
    all_ok = True
    for prop, expected, source in entry.expected_facts:
        got = _fact_value(obj, prop)
        if isinstance(got, (float, complex)) or isinstance(expected, (float, complex)):
            ok = abs(got - expected) <= 100 * tol
        else:
            ok = got == expected
        rows.append({"property": prop, "expected": expected, "got": got,
                     "source": source, "ok": bool(ok)})
        all_ok = all_ok and ok
    return all_ok, rows


def entries():
    """Every pinned catalog entry."""
    return [
        CatalogEntry("wall32", lambda: quantum_group("cstar:wall32"),
                     (("dim", 32, "word enumeration closes at 32"),
                      ("axioms_pass", True, "axiom suite"),
                      ("central_projections", 11, "class count, brute force"))),
        CatalogEntry("wall32-group", lambda: group("wall32"),
                     (("order", 32, "word enumeration closes at 32"),
                      ("conjugacy_classes", 11, "brute-force enumeration"),
                      ("irreducible_dimensions", [1] * 8 + [2, 2, 4],
                       "class-matrix eigenvectors"))),
        CatalogEntry("wall-v", wall_unitary,
                     (("selfadjoint_residual", 0.0, "table arithmetic"),
                      ("involution_residual", 0.0, "table arithmetic"),
                      ("counit_value", 1.0 + 0j,
                       "coefficient sum 1/2*2 + sqrt2/4*0"))),
        CatalogEntry("wall-omega", wall_omega,
                     (("left_cocycle", True, "direct identity check"),
                      ("invariant", True, "direct identity check"),
                      ("centrally_trivial", False, "phase-system obstruction"))),
        CatalogEntry("pauli", build_pauli_projective,
                     (("kind", "strongly-projective", "classify run"),)),
        CatalogEntry("pauli-omega", lambda: resolve("pauli-omega")[1],
                     (("left_cocycle", True, "direct identity check"),
                      ("invariant", True, "direct identity check"),
                      ("centrally_trivial", False,
                       "nontrivial Schur class of Z2xZ2"))),
        CatalogEntry("heisenberg", lambda: resolve("heisenberg")[1],
                     (("kind", "strongly-projective", "classify run"),)),
        CatalogEntry("d4-projective", lambda: resolve("d4-projective")[1],
                     (("kind", "strongly-projective", "classify run"),)),
        CatalogEntry("cstar:s3", lambda: quantum_group("cstar:s3"),
                     (("dim", 6, "group order"),
                      ("axioms_pass", True, "axiom suite"),
                      ("central_projections", 3, "class count, brute force"))),
        CatalogEntry("s3-group", lambda: group("s3"),
                     (("order", 6, "definition"),
                      ("conjugacy_classes", 3, "brute-force enumeration"),
                      ("irreducible_dimensions", [1, 1, 2],
                       "class-matrix eigenvectors"))),
    ]
