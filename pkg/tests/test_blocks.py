"""p-blocks: golden values, partition axioms, and an independent oracle.

The oracle reduces central characters against an irreducible factor of the
cyclotomic polynomial mod p using sympy polynomial arithmetic — a completely
different realization of "reduction modulo a maximal ideal above p" than the
library's explicit finite field.  The partitions must coincide.
"""

import pytest
from sympy import Poly, Symbol, cyclotomic_poly

from heightzero.blocks import (
    GF,
    IdealReduction,
    block_partition,
    central_character_value,
    height_zero_rows,
    nu_p,
)
from heightzero.chartab import ClassFunction, decompose, dixon_table, restrict, subgroup_as_group
from heightzero.groups import (
    alternating,
    conjugacy_classes,
    cyclic,
    derived_subgroup,
    dihedral,
    semidihedral,
    semidirect_cn_h,
    sl2,
    subgroup_elements,
    symmetric,
)

_X = Symbol("x")


# ---------------------------------------------------------------------------
# the independent congruence oracle


def _oracle_reduce(value, p, eprime, factor):
    """Reduce a cyclotomic integer mod the ideal (p, factor(zeta_{eprime}))
    via polynomial remainders; returns a coefficient tuple."""
    n = value.n
    a = nu_p(n, p) if n > 1 and n % p == 0 else 0
    npr = n // p**a
    assert eprime % npr == 0
    acc = Poly(0, _X, modulus=p)
    beta = pow(p**a, -1, npr) if npr > 1 else 0
    for j, c in value.terms.items():
        assert c.denominator % p != 0
        cm = (c.numerator * pow(c.denominator, -1, p)) % p
        expo = ((j * beta) % npr) * (eprime // npr) if npr > 1 else 0
        acc = acc + Poly(cm * _X**expo, _X, modulus=p)
    if factor is not None:
        acc = acc.rem(factor)
    return tuple(acc.all_coeffs())


def oracle_partition(table, p):
    """Brute-force block partition: group rows whose reduced central
    characters agree on every class."""
    e = table.classes.exponent
    eprime = e // p ** nu_p(e, p) if e > 1 else 1
    factor = None
    if eprime > 1:
        phi = Poly(cyclotomic_poly(eprime, _X), _X, modulus=p)
        factors = sorted(
            (f for f, _ in phi.factor_list()[1]),
            key=lambda f: (f.degree(), tuple(f.all_coeffs())),
        )
        factor = factors[0]
    sigs = {}
    for r in range(len(table.rows)):
        sig = tuple(
            _oracle_reduce(central_character_value(table, r, j), p, eprime, factor)
            for j in range(table.num_classes)
        )
        sigs.setdefault(sig, []).append(r)
    return sorted(sigs.values(), key=lambda rs: rs[0])


def _lib_partition_rows(table, p, **kw):
    return [b.rows for b in block_partition(table, p, **kw)]


# ---------------------------------------------------------------------------
# golden values (oracle first, then the library must match)


def test_s4_p2_single_block_golden():
    t = dixon_table(symmetric(4))
    assert oracle_partition(t, 2) == [[0, 1, 2, 3, 4]]
    bp = block_partition(t, 2)
    assert _lib_partition_rows(t, 2) == [[0, 1, 2, 3, 4]]
    assert bp.defect == [3]
    assert bp.height == [0, 0, 1, 0, 0]  # degrees 1,1,2,3,3


def test_a5_p2_two_blocks_golden():
    t = dixon_table(alternating(5))
    parts = oracle_partition(t, 2)
    assert _lib_partition_rows(t, 2) == parts
    degs = [sorted(t.degrees[r] for r in rows) for rows in parts]
    assert sorted(map(tuple, degs)) == [(1, 3, 3, 5), (4,)]
    bp = block_partition(t, 2)
    by_degs = {tuple(sorted(t.degrees[r] for r in b.rows)): b for b in bp}
    assert by_degs[(1, 3, 3, 5)].defect == 2
    assert by_degs[(1, 3, 3, 5)].heights == [0, 0, 0, 0]
    assert by_degs[(4,)].defect == 0


def test_s3_p3_single_block_golden():
    t = dixon_table(symmetric(3))
    assert oracle_partition(t, 3) == [[0, 1, 2]]
    bp = block_partition(t, 3)
    assert bp.defect == [1]
    assert bp.height == [0, 0, 0]


def test_oracle_matches_library_on_sample():
    cases = [
        (symmetric(4), 3),
        (symmetric(5), 2),
        (symmetric(5), 5),
        (alternating(5), 3),
        (alternating(5), 5),
        (sl2(3), 2),
        (sl2(3), 3),
        (semidihedral(16), 2),
        (dihedral(12), 3),
        (semidirect_cn_h(12, [11]), 2),
    ]
    for g, p in cases:
        t = dixon_table(g)
        assert _lib_partition_rows(t, p) == oracle_partition(t, p), (g.name, p)


# ---------------------------------------------------------------------------
# central characters


def test_central_character_trivial_row_is_class_sizes():
    t = dixon_table(symmetric(4))
    for j in range(t.num_classes):
        assert central_character_value(t, 0, j).to_rational() == t.classes.class_sizes[j]


def test_s3_degree2_central_values():
    t = dixon_table(symmetric(3))
    r = t.degrees.index(2)
    cd = t.classes
    by_order = {cd.element_orders[j]: j for j in range(3)}
    # 3-cycle class: 2 * (-1) / 2 = -1 ; transposition class: 3 * 0 / 2 = 0
    assert central_character_value(t, r, by_order[3]).to_rational() == -1
    assert central_character_value(t, r, by_order[2]).to_rational() == 0


def test_corrupt_table_detected_by_integrality():
    import json
    from heightzero.chartab import table_from_json, table_to_json

    t = dixon_table(symmetric(3))
    obj = json.loads(json.dumps(table_to_json(t)))
    # make the degree-2 row fail the central-character integrality check while
    # keeping row 0 trivial: swap a value on the 3-cycle class
    obj["irr"][2][2] = {"n": 1, "terms": [[0, "1/3"]]}
    with pytest.raises(ValueError):
        tampered = table_from_json(obj, check_orthogonality=False)
        block_partition(tampered, 3)


# ---------------------------------------------------------------------------
# partition axioms


@pytest.mark.parametrize(
    "group,p",
    [
        (symmetric(4), 2),
        (symmetric(4), 3),
        (alternating(5), 2),
        (alternating(5), 5),
        (semidihedral(16), 2),
        (sl2(3), 2),
        (cyclic(12), 2),
        (dihedral(20), 5),
    ],
)
def test_partition_axioms(group, p):
    t = dixon_table(group)
    bp = block_partition(t, p)
    rows = sorted(r for b in bp for r in b.rows)
    assert rows == list(range(len(t.rows)))  # partition
    assert bp.block_of[0] == bp.principal_block
    for b in bp:
        assert min(b.heights) == 0  # every block has a height-zero row
        assert b.defect >= 0


def test_coprime_prime_gives_defect_zero_singletons():
    t = dixon_table(symmetric(3))
    bp = block_partition(t, 5)
    assert len(bp) == t.num_classes
    assert all(b.defect == 0 and len(b.rows) == 1 for b in bp)


def test_height_zero_rows_sd16():
    t = dixon_table(semidihedral(16))
    hz = height_zero_rows(t, 2)
    assert [t.degrees[r] for r in hz] == [1, 1, 1, 1]


def test_abelian_all_height_zero():
    t = dixon_table(cyclic(8))
    assert height_zero_rows(t, 2) == list(range(8))


def test_degree_coprime_rows_within_height_zero_in_max_defect_blocks():
    # rows with p coprime to the degree are height zero exactly when their
    # block has maximal defect; in general they are a subset of height zero
    for g, p in [(symmetric(4), 2), (sl2(3), 2), (alternating(5), 2)]:
        t = dixon_table(g)
        bp = block_partition(t, p)
        numax = nu_p(t.order, p)
        for r in range(len(t.rows)):
            if t.degrees[r] % p != 0 and bp.defect[bp.block_of[r]] == numax:
                assert bp.height[r] == 0


def test_partition_invariant_under_ideal_choice():
    t = dixon_table(alternating(5))
    base = _lib_partition_rows(t, 2)
    for u in (2, 4, 7, 8):
        assert _lib_partition_rows(t, 2, unit_power=u) == base


def test_partition_galois_stable():
    # applying a Galois map fixing the p'-th roots of unity to the whole table
    # permutes rows without changing the block partition
    from math import gcd

    from heightzero.chartab import CharacterTable

    t = dixon_table(symmetric(4))
    e = t.classes.exponent
    p = 2
    eprime = e // p ** nu_p(e, p)
    for k in range(1, e):
        if gcd(k, e) == 1 and k % eprime == 1 % eprime:
            rows = [tuple(v.embed(e).galois(k) for v in row) for row in t.rows]
            mapped = CharacterTable(t.name, t.order, t.classes, rows, validate=False)
            perm = [t.rows.index(r) for r in mapped.rows]
            base = [sorted(b.rows) for b in block_partition(t, p)]
            moved = [sorted(perm[r] for r in b.rows) for b in block_partition(mapped, p)]
            assert sorted(map(tuple, base)) == sorted(map(tuple, moved))


# ---------------------------------------------------------------------------
# heights restrict properly to normal subgroups


@pytest.mark.parametrize("p", [2, 3])
def test_height_zero_restricts_to_height_zero_constituents(p):
    pairs = []
    g = symmetric(4)
    pairs.append((g, derived_subgroup(g)))  # A4 inside S4
    g3 = symmetric(3)
    pairs.append((g3, derived_subgroup(g3)))  # C3 inside S3
    gm = semidirect_cn_h(12, [11])
    pairs.append((gm, subgroup_elements(gm, [gm.index[(1, 1)]])))  # C12 inside
    for big, nsub in pairs:
        cd = conjugacy_classes(big)
        t = dixon_table(big, cd)
        sub, embedding = subgroup_as_group(big, nsub)
        sub_cd = conjugacy_classes(sub)
        sub_t = dixon_table(sub, sub_cd)
        hz_big = set(height_zero_rows(t, p))
        hz_sub = set(height_zero_rows(sub_t, p))
        for r in hz_big:
            vals = restrict(t.rows[r], cd, sub_cd, embedding)
            mults = decompose(ClassFunction(vals), sub_t)
            for s, m in enumerate(mults):
                if m:
                    assert s in hz_sub, (big.name, p, r, s)


# ---------------------------------------------------------------------------
# finite-field plumbing


def test_gf_axioms_odd_p():
    import random

    g = GF(3, 4)
    rng = random.Random(11)
    els = [tuple(rng.randint(0, 2) for _ in range(4)) for _ in range(40)]
    for a, b, c in zip(els, els[1:], els[2:]):
        assert g.mul(a, b) == g.mul(b, a)
        assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))
        assert g.mul(a, g.add(b, c)) == g.add(g.mul(a, b), g.mul(a, c))
    assert g.element_order(g.multiplicative_generator()) == 80


def test_gf_root_of_order():
    g = GF(2, 10)
    for m in (3, 11, 31, 33, 93, 341, 1023):
        assert g.element_order(g.root_of_order(m)) == m


def test_ideal_reduction_is_ring_homomorphism():
    from heightzero.cyclotomic import root_of_unity

    red = IdealReduction(3, 8)
    xs = [root_of_unity(8, j) for j in range(8)]
    gf = red.gf
    for a in xs:
        for b in xs:
            assert red.reduce(a * b) == gf.mul(red.reduce(a), red.reduce(b))
            assert red.reduce(a + b) == gf.add(red.reduce(a), red.reduce(b))


def test_ideal_reduction_kills_p_power_roots():
    from heightzero.cyclotomic import root_of_unity

    red = IdealReduction(2, 1)
    assert red.reduce(root_of_unity(8)) == red.reduce(root_of_unity(8, 0))
