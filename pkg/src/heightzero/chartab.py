"""Complete complex character tables.

Two independent construction routes:

* dixon_table: the Dixon-Schneider modular method (class-algebra structure
  constants over F_q, common eigenspace splitting, discrete-Fourier lift of
  the values back to the cyclotomic field of the group exponent);
* metacyclic_table: a direct Clifford-theoretic construction for C_n x| H
  with H <= (Z/n)*, used by the realizer and as a cross-check of dixon.

All values are exact CycElt at modulus exponent(G); rows are sorted with the
trivial character first, then by degree and a lexicographic value encoding,
so tables are reproducible bit-for-bit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import gcd, isqrt, lcm

import numpy as np
import sympy

from . import modular
from .cyclotomic import CycElt, rational, root_of_unity, zero
from .groups import ClassData, FiniteGroup, conjugacy_classes, semidirect_cn_h

__all__ = [
    "CharacterTable",
    "ClassInfo",
    "class_constants",
    "dixon_table",
    "metacyclic_table",
    "ClassFunction",
    "inner_product",
    "induce_linear",
    "restrict",
    "decompose",
    "subgroup_as_group",
    "table_to_json",
    "table_from_json",
]


class ClassInfo:
    """Class data detached from a group (ingest path)."""

    def __init__(self, class_sizes, element_orders, power_map, exponent):
        self.class_sizes = list(class_sizes)
        self.element_orders = list(element_orders)
        self.power_map = [list(r) for r in power_map]
        self.exponent = exponent
        self.inverse_class = [
            self.power_map[ci][(exponent - 1) % exponent] if element_orders[ci] > 1 else ci
            for ci in range(len(class_sizes))
        ]

    @property
    def num_classes(self):
        return len(self.class_sizes)


class CharacterTable:
    """Irr(G) as rows of exact cyclotomic values over the classes."""

    def __init__(self, name, order, classes, rows, group=None, validate=True):
        self.name = name
        self.order = order
        self.classes = classes
        self.rows = [tuple(r) for r in rows]
        self.group = group
        self.degrees = [int(r[0].to_rational()) for r in self.rows]
        if validate:
            if len(self.rows) != classes.num_classes:
                raise ValueError("row count != class count")
            if sum(d * d for d in self.degrees) != order:
                raise ValueError("sum of squared degrees != group order")
            if any(v != rational(1, v.n) for v in self.rows[0]):
                raise ValueError("row 0 is not the trivial character")

    @property
    def num_classes(self):
        return self.classes.num_classes

    def check_orthogonality(self):
        """Both orthogonality relations, exactly; raises on failure."""
        c = self.num_classes
        sizes = self.classes.class_sizes
        for r in range(len(self.rows)):
            for s in range(r, len(self.rows)):
                acc = zero(1)
                for j in range(c):
                    acc = acc + self.rows[r][j] * self.rows[s][j].conjugate() * sizes[j]
                want = self.order if r == s else 0
                if acc != rational(want, acc.n):
                    raise ValueError(f"first orthogonality fails at rows {r},{s}")
        for j in range(c):
            for k in range(j, c):
                acc = zero(1)
                for r in range(len(self.rows)):
                    acc = acc + self.rows[r][j] * self.rows[r][k].conjugate()
                want = self.order // sizes[j] if j == k else 0
                if acc != rational(want, acc.n):
                    raise ValueError(f"second orthogonality fails at classes {j},{k}")

    def row_set(self):
        return frozenset(tuple(v.key() for v in row) for row in self.rows)


def _sort_rows(rows):
    def key(row):
        deg = row[0].to_rational()
        enc = tuple(v.key() for v in row)
        trivial = all(v == rational(1, v.n) for v in row)
        return (not trivial, deg, enc)

    return sorted(rows, key=key)


# ---------------------------------------------------------------------------
# class-algebra structure constants


def class_constants(group, cd):
    """a[i, j, k] = #{(x, y) in K_i x K_j : x y = z_k} for the fixed rep z_k.

    Satisfies sum_k a[i, j, k] * |K_k| = |K_i| * |K_j|."""
    c = cd.num_classes
    a = np.zeros((c, c, c), dtype=np.int64)
    inv = [group.inv(x) for x in range(group.order)]
    cls = cd.class_of
    for k, z in enumerate(cd.class_reps):
        for x in range(group.order):
            y = group.mul(inv[x], z)
            a[cls[x], cls[y], k] += 1
    return a


# ---------------------------------------------------------------------------
# Dixon-Schneider


def _dixon_prime(e, order, nclasses):
    lo = max(2 * (isqrt(order) + 1), nclasses + 1, 3)
    q = e + 1
    while True:
        if q > lo and sympy.isprime(q):
            return q
        q += e
        if q > 10_000_000:
            raise RuntimeError("no suitable Dixon prime found")


def _primitive_root_of_unity(q, e):
    fac = sympy.factorint(q - 1)
    g = 2
    while True:
        if all(pow(g, (q - 1) // p, q) != 1 for p in fac):
            break
        g += 1
    return pow(g, (q - 1) // e, q)


def _split_eigenspaces(bmats, q):
    c = bmats[0].shape[0]
    spaces = [modular.rref(np.eye(c, dtype=np.int64), q)]
    for b in bmats[1:]:
        if all(u.shape[0] == 1 for u, _ in spaces):
            break
        bt = b.T % q
        nxt = []
        for u, piv in spaces:
            d = u.shape[0]
            if d == 1:
                nxt.append((u, piv))
                continue
            w = modular.matmul(u, bt, q)
            # w == coords @ u with coords = w[:, piv] (u is in rref); the
            # action on coordinate rows is gamma -> gamma @ coords, so split
            # with the transpose.
            act = w[:, piv].T
            roots = modular.poly_roots(modular.charpoly(act, q), q)
            got = 0
            for lam in roots:
                ker = modular.kernel((act - lam * np.eye(d, dtype=np.int64)) % q, q)
                if ker.shape[0] == 0:
                    continue
                got += ker.shape[0]
                nxt.append(modular.rref(modular.matmul(ker, u, q), q))
            if got != d:
                raise AssertionError("class matrix not diagonalizable mod q")
        spaces = nxt
    if any(u.shape[0] != 1 for u, _ in spaces):
        raise AssertionError("common eigenspaces did not split to lines")
    return [u[0] for u, _ in spaces]


def dixon_table(group, cd=None):
    """Character table via the Dixon-Schneider modular method."""
    if cd is None:
        cd = conjugacy_classes(group)
    c = cd.num_classes
    n = group.order
    e = cd.exponent
    q = _dixon_prime(e, n, c)
    s = _primitive_root_of_unity(q, e)

    a = class_constants(group, cd)
    bmats = [a[i] for i in range(c)]  # bmats[i][j, k] = a_{ijk}
    lines = _split_eigenspaces(bmats, q)

    sizes = cd.class_sizes
    inv_sizes = [pow(sz, -1, q) for sz in sizes]
    omegas = []
    for v in lines:
        if v[0] == 0:
            raise AssertionError("central character with zero identity coordinate")
        omegas.append((v * pow(int(v[0]), -1, q)) % q)

    degrees = []
    root = isqrt(n)
    for om in omegas:
        t = 0
        for j in range(c):
            t = (t + int(om[j]) * int(om[cd.inverse_class[j]]) * inv_sizes[j]) % q
        dsq = n * pow(t, -1, q) % q
        d = next((d for d in range(1, root + 1) if d * d % q == dsq), None)
        if d is None:
            raise AssertionError("no integer degree matches modular value")
        degrees.append(d)
    if sum(d * d for d in degrees) != n:
        raise AssertionError("degree recovery failed")

    # values mod q, then a discrete-Fourier lift per class using power maps
    vals = np.zeros((c, c), dtype=np.int64)
    for r, om in enumerate(omegas):
        vals[r] = (degrees[r] * om * np.array(inv_sizes, dtype=np.int64)) % q
    sinv = pow(s, -1, q)
    rows = []
    per_class_values = []
    for j in range(c):
        o = cd.element_orders[j]
        so_inv = pow(sinv, e // o, q)
        pows = np.array([pow(so_inv, t, q) for t in range(o)], dtype=np.int64)
        smat = pows[np.outer(np.arange(o), np.arange(o)) % o]
        v = vals[:, [cd.power_map[j][l] for l in range(o)]]
        mult = (modular.matmul(v, smat, q) * pow(o, -1, q)) % q  # rows x o
        per_class_values.append((o, mult))
    for r in range(c):
        row = []
        for j in range(c):
            o, mult = per_class_values[j]
            ms = [int(m) for m in mult[r]]
            if sum(ms) != degrees[r]:
                raise AssertionError("multiplicity lift inconsistent with degree")
            row.append(CycElt(e, {u * (e // o): Fraction(m) for u, m in enumerate(ms) if m}))
        rows.append(tuple(row))

    rows = _sort_rows(rows)
    return CharacterTable(group.name, n, cd, rows, group=group)


# ---------------------------------------------------------------------------
# direct construction for C_n x| H


@lru_cache(maxsize=None)
def _unit_group_decomposition(n):
    """Generators (lifted mod n) and their orders for (Z/n)*, via CRT."""
    from .cyclotomic import _prime_powers

    if n <= 2:
        return ()
    gens = []
    for p, pk in _prime_powers(n):
        rest = n // pk

        def lift(g, pk=pk, rest=rest):
            if rest == 1:
                return g % n
            # x = g mod pk, x = 1 mod rest
            inv = pow(rest % pk, -1, pk)
            return (1 + rest * ((g - 1) * inv % pk)) % n

        if p == 2:
            if pk == 4:
                gens.append((lift(3), 2))
            elif pk >= 8:
                gens.append((lift(pk - 1), 2))
                gens.append((lift(5), pk // 4))
        else:
            g = sympy.primitive_root(pk)
            gens.append((lift(g), (pk // p) * (p - 1)))
    return tuple(gens)


@lru_cache(maxsize=None)
def _unit_dlog(n):
    """x -> exponent tuple over the generator decomposition of (Z/n)*."""
    gens = _unit_group_decomposition(n)
    table = {1 % n: tuple(0 for _ in gens)}
    if not gens:
        return table
    for tup in iproduct(*(range(o) for _, o in gens)):
        x = 1
        for (g, _), a in zip(gens, tup):
            x = x * pow(g, a, n) % n
        table.setdefault(x, tup)
    return table


def _subgroup_characters(n, sub):
    """All |sub| characters of the subgroup `sub` of (Z/n)*, each as a dict
    element -> exponent k meaning zeta_M^k, with M the exponent of (Z/n)*."""
    sub = tuple(sorted(set(x % n for x in sub))) if n > 1 else (1,)
    if n <= 2:
        return 1, [{x: 0 for x in sub}]
    gens = _unit_group_decomposition(n)
    dlog = _unit_dlog(n)
    orders = [o for _, o in gens]
    m = 1
    for o in orders:
        m = lcm(m, o)
    chars = []
    seen = set()
    for t in iproduct(*(range(o) for o in orders)):
        vals = {}
        for x in sub:
            a = dlog[x]
            vals[x] = sum(ti * ai * (m // oi) for ti, ai, oi in zip(t, a, orders)) % m
        sig = tuple(vals[x] for x in sub)
        if sig not in seen:
            seen.add(sig)
            chars.append(vals)
        if len(chars) == len(sub):
            break
    if len(chars) != len(sub):
        raise AssertionError("character restriction did not exhaust dual group")
    return m, chars


def _root_power(e, order_mod, k):
    """zeta_{order_mod}^k as a CycElt at modulus e (order must divide e)."""
    ex = _root_power_exponent(e, order_mod, k)
    return rational(1) if ex == 0 else root_of_unity(e, ex)


def _root_power_exponent(e, order_mod, k):
    """Exponent ex with zeta_e^ex = zeta_{order_mod}^k (raw, not reduced)."""
    if k % order_mod == 0:
        return 0
    g = gcd(k, order_mod)
    ordr = order_mod // g
    if e % ordr:
        raise AssertionError(f"root of order {ordr} does not live at modulus {e}")
    return (k // g) % ordr * (e // ordr)


def metacyclic_table(n, hgens, group=None, cd=None):
    """Character table of C_n x| H by orbits of H on Irr(C_n) and extensions
    lambda~(c, h) = zeta_n^{j c} mu(h) induced up from the orbit stabilizer."""
    if group is None:
        group = semidirect_cn_h(n, hgens)
    if cd is None:
        cd = conjugacy_classes(group)
    H = group.meta_params[1]
    e = cd.exponent
    reps = [group.elements[i] for i in cd.class_reps]

    # H-orbits on Z/n (exponents of Irr(C_n)), deterministic by minimal element
    seen = set()
    orbits = []
    for j in range(n):
        if j in seen:
            continue
        orb = sorted({(h * j) % n for h in H})
        seen.update(orb)
        orbits.append(orb)
    orbits.sort(key=lambda o: o[0])

    rows = []
    for orb in orbits:
        j0 = orb[0]
        stab = tuple(h for h in H if (h * j0) % n == j0)
        m, mus = _subgroup_characters(n, stab)
        stab_set = set(stab)
        # raw orbit-sum exponents at modulus e, per class rep
        oexps = []
        for (c, h) in reps:
            if h in stab_set:
                oexps.append([(jp * c % n) * (e // n) if n > 1 else 0 for jp in orb])
            else:
                oexps.append(None)
        for mu in mus:
            row = []
            for (cidx, (c, h)) in enumerate(reps):
                if oexps[cidx] is None:
                    row.append(zero(e))
                else:
                    # fold the stabilizer-character root into the raw sum so
                    # reduction happens once per entry
                    shift = _root_power_exponent(e, m, mu[h if n > 1 else 1])
                    terms = {}
                    for ex in oexps[cidx]:
                        key = (ex + shift) % e
                        terms[key] = terms.get(key, 0) + 1
                    row.append(CycElt(e, terms))
            rows.append(tuple(row))

    if len(rows) != cd.num_classes:
        raise AssertionError("metacyclic construction produced wrong row count")
    rows = _sort_rows(rows)
    return CharacterTable(group.name, group.order, cd, rows, group=group)


# ---------------------------------------------------------------------------
# class functions, induction, restriction


class ClassFunction:
    def __init__(self, values):
        self.values = tuple(values)

    def __getitem__(self, i):
        return self.values[i]

    def __len__(self):
        return len(self.values)

    def __eq__(self, other):
        if isinstance(other, ClassFunction):
            return self.values == other.values
        return NotImplemented


def inner_product(f1, f2, cd, order=None):
    """[f1, f2] = (1/|G|) sum_j |K_j| f1(j) conj(f2(j)); exact CycElt."""
    order = order if order is not None else sum(cd.class_sizes)
    acc = zero(1)
    v1 = f1.values if isinstance(f1, ClassFunction) else f1
    v2 = f2.values if isinstance(f2, ClassFunction) else f2
    for j, sz in enumerate(cd.class_sizes):
        acc = acc + v1[j] * v2[j].conjugate() * sz
    return acc.scalar_mul(Fraction(1, order))


def induce_linear(group, cd, sub_indices, lam):
    """Induce the linear character lam (dict: subgroup index -> CycElt) to G."""
    sub = set(sub_indices)
    inv = [group.inv(x) for x in range(group.order)]
    e = cd.exponent
    values = []
    for z in cd.class_reps:
        counts = {}
        for x in range(group.order):
            y = group.mul(group.mul(x, z), inv[x])
            if y in sub:
                counts[y] = counts.get(y, 0) + 1
        acc = zero(e)
        for y, cnt in counts.items():
            acc = acc + lam[y].scalar_mul(cnt)
        values.append(acc.scalar_mul(Fraction(1, len(sub))))
    return ClassFunction(values)


def subgroup_as_group(group, sub_indices, name=None):
    """The subgroup as its own FiniteGroup plus the index embedding into G."""
    idxs = sorted(sub_indices)
    if 0 not in idxs:
        raise ValueError("subgroup must contain the identity index 0")
    idxs.remove(0)
    idxs.insert(0, 0)
    elements = [group.elements[i] for i in idxs]
    sub = FiniteGroup(elements, group._mul_elems, name or f"{group.name}|sub{len(idxs)}")
    embedding = list(idxs)
    return sub, embedding


def restrict(values, cd_big, sub_cd, embedding):
    """Restrict a row of the big table to a subgroup with its own ClassData."""
    out = []
    for rep in sub_cd.class_reps:
        out.append(values[cd_big.class_of[embedding[rep]]])
    return ClassFunction(out)


def decompose(f, table):
    """Multiplicities of f against the rows of the table; must be in N."""
    cd = table.classes
    mults = []
    for row in table.rows:
        ip = inner_product(f, row, cd, order=table.order)
        r = ip.to_rational()
        if r.denominator != 1 or r < 0:
            raise ValueError("class function is not a nonnegative integer combination")
        mults.append(int(r))
    return mults


# ---------------------------------------------------------------------------
# JSON encoding (also the ingest path for externally produced tables)


def cyc_to_json(x):
    return {
        "n": x.n,
        "terms": [[j, f"{c.numerator}/{c.denominator}"] for j, c in sorted(x.terms.items())],
    }


def cyc_from_json(obj):
    from .cyclotomic import zumbroich_exponents

    n = int(obj["n"])
    basis = set(zumbroich_exponents(n))
    terms = {}
    for j, frac in obj["terms"]:
        j = int(j)
        if j not in basis:
            raise ValueError(f"exponent {j} is not a basis exponent at modulus {n}")
        num, den = frac.split("/")
        terms[j] = Fraction(int(num), int(den))
    return CycElt(n, terms, reduced=True)


def table_to_json(table):
    cd = table.classes
    return {
        "name": table.name,
        "order": table.order,
        "exponent": cd.exponent,
        "classes": [
            {
                "size": cd.class_sizes[j],
                "element_order": cd.element_orders[j],
                "powermap": {str(k): cd.power_map[j][k] for k in range(cd.exponent)},
            }
            for j in range(cd.num_classes)
        ],
        "irr": [[cyc_to_json(v) for v in row] for row in table.rows],
    }


def table_from_json(obj, check_orthogonality=True):
    e = int(obj["exponent"])
    sizes = [int(c["size"]) for c in obj["classes"]]
    orders = [int(c["element_order"]) for c in obj["classes"]]
    pmap = [[int(c["powermap"][str(k)]) for k in range(e)] for c in obj["classes"]]
    info = ClassInfo(sizes, orders, pmap, e)
    rows = [[cyc_from_json(v) for v in row] for row in obj["irr"]]
    table = CharacterTable(obj.get("name", "ingest"), int(obj["order"]), info, rows)
    if check_orthogonality:
        table.check_orthogonality()
    return table
