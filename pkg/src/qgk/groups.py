"""Finite groups as explicit multiplication tables, plus classical oracles.

The quantum-side code never depends on anything here for its own math;
these tables feed the example builders, and the character/cocycle
routines act as independent cross-checks in the test suite.
"""

import itertools

import numpy as np

from .linalg import DEFAULT_TOL


class GroupTable:
    """A finite group given by table[i][j] = index of g_i * g_j."""

    def __init__(self, table, names=None, name="G", check=True):
        self.table = [list(map(int, row)) for row in table]
        self.n = len(self.table)
        self.name = name
        if names is None:
            names = ["g%d" % i for i in range(self.n)]
        self.names = list(names)
        self.e = self._find_identity()
        self.inverse = self._find_inverses()
        if check:
            self.assert_is_group()

    # -- basics ------------------------------------------------------------

    def _find_identity(self):
        for i in range(self.n):
            if all(self.table[i][j] == j and self.table[j][i] == j for j in range(self.n)):
                return i
        raise ValueError("table has no identity element")

    def _find_inverses(self):
        inv = [None] * self.n
        for i in range(self.n):
            for j in range(self.n):
                if self.table[i][j] == self.e and self.table[j][i] == self.e:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise ValueError("element %d has no inverse" % i)
        return inv

    def assert_is_group(self):
        n = self.n
        t = self.table
        for i in range(n):
            row = t[i]
            if sorted(row) != list(range(n)):
                raise ValueError("row %d is not a permutation" % i)
        for i in range(n):
            for j in range(n):
                tij = t[i][j]
                for k in range(n):
                    if t[tij][k] != t[i][t[j][k]]:
                        raise ValueError("associativity fails at (%d,%d,%d)" % (i, j, k))

    def mul(self, i, j):
        return self.table[i][j]

    def conj(self, g, x):
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverse[g]]

    def order_of(self, i):
        k, x = 1, i
        while x != self.e:
            x = self.table[x][i]
            k += 1
        return k

    def element_orders(self):
        return [self.order_of(i) for i in range(self.n)]

    def is_abelian(self):
        t = self.table
        return all(t[i][j] == t[j][i] for i in range(self.n) for j in range(i))

    def center_elements(self):
        t = self.table
        return [i for i in range(self.n)
                if all(t[i][j] == t[j][i] for j in range(self.n))]

    # -- subgroup machinery --------------------------------------------------

    def closure(self, gens):
        seen = set(gens) | {self.e}
        frontier = list(seen)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(seen):
                    for c in (self.table[a][b], self.table[b][a]):
                        if c not in seen:
                            seen.add(c)
                            nxt.append(c)
            frontier = nxt
        return frozenset(seen)

    def all_subgroups(self):
        """Every subgroup, found by closing known subgroups with one extra element."""
        trivial = frozenset({self.e})
        found = {trivial}
        frontier = [trivial]
        while frontier:
            nxt = []
            for h in frontier:
                for g in range(self.n):
                    if g in h:
                        continue
                    k = self.closure(set(h) | {g})
                    if k not in found:
                        found.add(k)
                        nxt.append(k)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def is_subgroup(self, subset):
        s = set(subset)
        if self.e not in s:
            return False
        return all(self.table[a][b] in s for a in s for b in s)

    def is_normal(self, subset):
        s = set(subset)
        if not self.is_subgroup(s):
            return False
        return all(self.conj(g, x) in s for g in range(self.n) for x in s)

    def conjugacy_classes(self):
        seen = [False] * self.n
        classes = []
        for i in range(self.n):
            if seen[i]:
                continue
            cls = set()
            for g in range(self.n):
                cls.add(self.conj(g, i))
            for x in cls:
                seen[x] = True
            classes.append(tuple(sorted(cls)))
        classes.sort(key=lambda c: (self.e not in c, len(c), c))
        return classes

    def quotient(self, normal_subset):
        """Quotient group by a normal subgroup; returns (GroupTable, projection list)."""
        s = frozenset(normal_subset)
        if not self.is_normal(s):
            raise ValueError("subset is not a normal subgroup")
        cosets = []
        proj = [None] * self.n
        for i in range(self.n):
            if proj[i] is not None:
                continue
            coset = frozenset(self.table[i][h] for h in s)
            idx = len(cosets)
            cosets.append(coset)
            for x in coset:
                proj[x] = idx
        table = [[proj[self.table[next(iter(cosets[a]))][next(iter(cosets[b]))]]
                  for b in range(len(cosets))] for a in range(len(cosets))]
        names = ["[%s]" % self.names[min(c)] for c in cosets]
        q = GroupTable(table, names=names, name=self.name + "/N")
        return q, proj


# ---------------------------------------------------------------------------
# builders


def cyclic(n, name=None):
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["e"] + ["u^%d" % k for k in range(1, n)]
    return GroupTable(table, names=names, name=name or ("Z%d" % n))


def direct_product(g1, g2, name=None):
    n1, n2 = g1.n, g2.n
    idx = lambda a, b: a * n2 + b
    table = [[idx(g1.table[a][c], g2.table[b][d])
              for c in range(n1) for d in range(n2)]
             for a in range(n1) for b in range(n2)]
    names = ["(%s,%s)" % (g1.names[a], g2.names[b])
             for a in range(n1) for b in range(n2)]
    return GroupTable(table, names=names, name=name or ("%sx%s" % (g1.name, g2.name)))


def dihedral(n, name=None):
    """Order 2n: r^a f^b with f r f^-1 = r^-1."""
    order = 2 * n
    idx = lambda a, b: a + n * b

    def mul(x, y):
        a1, b1 = x % n, x // n
        a2, b2 = y % n, y // n
        # (r^a1 f^b1)(r^a2 f^b2) = r^(a1 + (-1)^b1 a2) f^(b1+b2)
        a = (a1 + (a2 if b1 == 0 else -a2)) % n
        return idx(a, (b1 + b2) % 2)

    table = [[mul(x, y) for y in range(order)] for x in range(order)]
    names = []
    for b in range(2):
        for a in range(n):
            base = "e" if (a == 0 and b == 0) else ""
            if a:
                base += "r^%d" % a if a > 1 else "r"
            if b:
                base += "f"
            names.append(base or "e")
    names = [names[idx(a, b)] for a, b in
             [(x % n, x // n) for x in range(order)]]
    return GroupTable(table, names=names, name=name or ("D%d" % n))


def quaternion8(name="Q8"):
    """{1,-1,i,-i,j,-j,k,-k} with ij=k."""
    labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # encode as (sign, axis) with axis in {1,i,j,k}
    def enc(s, a):
        return {(1, "1"): 0, (-1, "1"): 1, (1, "i"): 2, (-1, "i"): 3,
                (1, "j"): 4, (-1, "j"): 5, (1, "k"): 6, (-1, "k"): 7}[(s, a)]

    def dec(x):
        return [(1, "1"), (-1, "1"), (1, "i"), (-1, "i"),
                (1, "j"), (-1, "j"), (1, "k"), (-1, "k")][x]

    basemul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }

    def mul(x, y):
        sx, ax = dec(x)
        sy, ay = dec(y)
        s, a = basemul[(ax, ay)]
        return enc(sx * sy * s, a)

    table = [[mul(x, y) for y in range(8)] for x in range(8)]
    return GroupTable(table, names=labels, name=name)


def symmetric(n, name=None):
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(n))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return GroupTable(table, names=names, name=name or ("S%d" % n))


def alternating4(name="A4"):
    perms = sorted(p for p in itertools.permutations(range(4)) if _parity(p) == 0)
    index = {p: i for i, p in enumerate(perms)}

    def compose(p, q):
        return tuple(p[q[i]] for i in range(4))

    table = [[index[compose(p, q)] for q in perms] for p in perms]
    names = ["".join(map(str, p)) for p in perms]
    return GroupTable(table, names=names, name=name)


def _parity(p):
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


def semidirect_cyclic(n, multipliers, name=None):
    """Z_n ⋊ (Z_2)^m where the k-th Z_2 generator acts by x -> multipliers[k]*x.

    Each multiplier must square to 1 mod n and the multipliers must
    commute as automorphisms (they do, multiplication mod n is abelian).
    Elements are tuples (x, bits).
    """
    m = len(multipliers)
    for mult in multipliers:
        if (mult * mult) % n != 1:
            raise ValueError("multiplier %d does not have order <= 2 mod %d" % (mult, n))
    bits_list = list(itertools.product(range(2), repeat=m))
    elems = [(x, bits) for x in range(n) for bits in bits_list]
    index = {g: i for i, g in enumerate(elems)}

    def act(bits, x):
        for k in range(m):
            if bits[k]:
                x = (x * multipliers[k]) % n
        return x

    def mul(g, h):
        x1, b1 = g
        x2, b2 = h
        x = (x1 + act(b1, x2)) % n
        b = tuple((b1[k] + b2[k]) % 2 for k in range(m))
        return (x, b)

    table = [[index[mul(g, h)] for h in elems] for g in elems]
    gen_names = "st"
    names = []
    for (x, bits) in elems:
        s = "" if x == 0 else ("u" if x == 1 else "u^%d" % x)
        for k in range(m):
            if bits[k]:
                s += gen_names[k] if k < 2 else "w%d" % k
        names.append(s or "e")
    return GroupTable(table, names=names, name=name or ("Z%d:2^%d" % (n, m)))


def holomorph_z8(name="wall32"):
    """Z8 ⋊ Aut(Z8), order 32: s u s^-1 = u^3, t u t^-1 = u^5."""
    return semidirect_cyclic(8, [3, 5], name=name)


# ---------------------------------------------------------------------------
# character oracle (Burnside/Dixon style, numerical)


def _class_mult_matrices(g):
    classes = g.conjugacy_classes()
    r = len(classes)
    where = {}
    for ci, cls in enumerate(classes):
        for x in cls:
            where[x] = ci
    mats = np.zeros((r, r, r))
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            for a in ci:
                for b in cj:
                    mats[i, where[g.table[a][b]], j] += 1
    # mats[i] accumulated one count per element; the class-sum coefficient
    # c_{ijk} is that count divided by |C_k|
    for k, ck in enumerate(classes):
        mats[:, k, :] /= len(ck)
    # mats[i] is left multiplication by the class sum K_i in the K basis
    return classes, mats


def character_table(g, seed=0, tol=1e-8):
    """Irreducible characters of a finite group from class-sum eigenvectors.

    Returns (classes, chars) where chars[x][i] is the value of character x
    on class i.  chars[x][0] is the dimension.  Rows sorted by dimension
    then lexicographically.
    """
    classes, mats = _class_mult_matrices(g)
    r = len(classes)
    sizes = np.array([len(c) for c in classes], dtype=float)
    rng = np.random.default_rng(seed)
    for _ in range(20):
        coeffs = rng.standard_normal(r)
        t = np.tensordot(coeffs, mats, axes=(0, 0))
        vals, vecs = np.linalg.eig(t)
        order = np.argsort(vals.real)
        vals = vals[order]
        vecs = vecs[:, order]
        gaps = np.abs(np.diff(vals))
        if r > 1 and gaps.min() < 1e-6 * max(1.0, np.abs(vals).max()):
            continue
        chars = []
        ok = True
        for idx in range(r):
            v = vecs[:, idx]
            pivot = int(np.argmax(np.abs(v)))
            omega = np.empty(r, dtype=complex)
            for i in range(r):
                w = mats[i] @ v
                omega[i] = w[pivot] / v[pivot]
                resid = np.linalg.norm(w - omega[i] * v)
                if resid > 1e-6 * max(1.0, np.linalg.norm(w)):
                    ok = False
            if not ok:
                break
            dim2 = g.n / np.sum(np.abs(omega) ** 2 / sizes)
            dim = np.sqrt(dim2.real)
            if abs(dim - round(dim)) > 1e-6:
                ok = False
                break
            dim = round(dim)
            chi = omega * dim / sizes
            chars.append(chi)
        if not ok:
            continue
        chars.sort(key=lambda c: (round(c[0].real), [(z.real, z.imag) for z in np.round(c, 6)]))
        return classes, np.array(chars)
    raise RuntimeError("character table iteration failed to separate eigenvalues")


def irreducible_dimensions(g, seed=0):
    _, chars = character_table(g, seed=seed)
    return sorted(int(round(c[0].real)) for c in chars)


# ---------------------------------------------------------------------------
# classical 2-cocycles


def is_classical_cocycle(g, sigma, tol=DEFAULT_TOL):
    """Check sigma: G x G -> C* is a normalized 2-cocycle."""
    sigma = np.asarray(sigma, dtype=complex)
    n = g.n
    if sigma.shape != (n, n):
        raise ValueError("cocycle table has wrong shape")
    resid = 0.0
    t = g.table
    for a in range(n):
        for b in range(n):
            for c in range(n):
                lhs = sigma[a, b] * sigma[t[a][b], c]
                rhs = sigma[b, c] * sigma[a, t[b][c]]
                resid = max(resid, abs(lhs - rhs))
    norm = max(abs(sigma[g.e, a] - 1) for a in range(n))
    norm = max(norm, max(abs(sigma[a, g.e] - 1) for a in range(n)))
    return resid <= 100 * tol and norm <= 100 * tol, {"cocycle": resid, "normalized": norm}


def projective_rep_cocycle(g, mats, tol=1e-8):
    """Extract sigma(a,b) from pi(a)pi(b) = sigma(a,b) pi(ab).

    mats is a list of unitary matrices indexed like the group.  Raises if
    the defect pi(a)pi(b)pi(ab)^-1 is not scalar.
    """
    n = g.n
    d = mats[0].shape[0]
    sigma = np.zeros((n, n), dtype=complex)
    for a in range(n):
        for b in range(n):
            m = mats[a] @ mats[b] @ np.linalg.inv(mats[g.table[a][b]])
            s = np.trace(m) / d
            if np.linalg.norm(m - s * np.eye(d)) > tol * max(1.0, np.linalg.norm(m)) * 10:
                raise ValueError("defect at (%d,%d) is not scalar" % (a, b))
            sigma[a, b] = s
    return sigma


def abelian_cyclic_decomposition(g):
    """Generators and orders [(gen, n1), (gen, n2), ...] with A = prod of the
    cyclic subgroups they generate.  Verified by checking the product map is
    a bijection."""
    if not g.is_abelian():
        raise ValueError("group is not abelian")
    gens = _abelian_gens(g)
    # verify bijectivity of (k1..km) -> prod gens[i]^ki
    ranges = [range(order) for _, order in gens]
    seen = set()
    for powers in itertools.product(*ranges):
        x = g.e
        for (gen, _), k in zip(gens, powers):
            y = gen
            acc = g.e
            for _ in range(k):
                acc = g.table[acc][y]
            x = g.table[x][acc]
        seen.add(x)
    if len(seen) != g.n:
        raise RuntimeError("cyclic decomposition failed verification")
    return gens


def _abelian_gens(g):
    if g.n == 1:
        return []
    orders = g.element_orders()
    g1 = int(np.argmax(orders))
    n1 = orders[g1]
    if n1 == g.n:
        return [(g1, n1)]
    sub = g.closure({g1})
    q, proj = g.quotient(sub)
    sub_gens = _abelian_gens(q)
    lifted = [(g1, n1)]
    for qgen, qorder in sub_gens:
        # lift: some element of the coset has the same order as in the quotient
        cands = [x for x in range(g.n) if proj[x] == qgen]
        lift = None
        for x in cands:
            if g.order_of(x) == qorder:
                lift = x
                break
        if lift is None:
            raise RuntimeError("no order-preserving lift; decomposition heuristic failed")
        lifted.append((lift, qorder))
    return lifted
