"""Verification and realization layer.

Ties the table, field, and block machinery together:

* per-row field reports: conductor split n = p^a * m and the containment
  Q_{p^a} <= <Q_m, Q(chi)> that height-zero rows must satisfy at p = 2;
* corpus sweeps of that containment (hard constraint at p = 2, recorded
  findings at odd p);
* the constructive realizer: any field F with 2-part-compatible conductor
  class is produced as the field of values of a height-zero row of the
  semidirect product C_n x| Gal(Q_n / F);
* the quadratic-field sweep (odd squarefree d, and only those, pass at p=2);
* the sigma_1 fixedness test: for height-zero rows at p = 2, being fixed by
  the automorphism raising 2-power roots of unity to the third power is
  equivalent to having odd conductor.
"""

from __future__ import annotations

import re
from math import lcm

from .cyclotomic import CycElt, root_of_unity, sigma_e
from .fields import (
    AbelianField,
    all_subgroups,
    compositum,
    conductor_parts,
    cyclotomic_field,
    field_from_values,
    in_class_Fp,
    quadratic_field,
    subgroup_closure,
)
from .groups import (
    alternating,
    conjugacy_classes,
    cyclic,
    dihedral,
    from_permutation_generators,
    generalized_quaternion,
    semidihedral,
    semidirect_cn_h,
    sl2,
    symmetric,
)
from .chartab import (
    decompose,
    dixon_table,
    induce_linear,
    metacyclic_table,
)
from .blocks import block_partition, height_zero_rows

__all__ = [
    "parse_group_spec",
    "parse_field_spec",
    "build_table",
    "CharacterFieldReport",
    "char_field_report",
    "verify_theorem_A",
    "sweep_theorem_A",
    "RealizerCertificate",
    "realize_field",
    "corollary_c_sweep",
    "sigma_check",
    "default_corpus",
]


# ---------------------------------------------------------------------------
# spec mini-languages


def _parse_perm_spec(body):
    """Generators as products of cycles, 1-based: (1,2)(3,4);(1,2,3)."""
    gens = []
    for part in body.split(";"):
        part = part.strip()
        cycles = re.findall(r"\(([^()]*)\)", part)
        pts = []
        parsed = []
        for cyc in cycles:
            entries = [int(t) for t in cyc.replace(" ", "").split(",") if t]
            parsed.append(entries)
            pts.extend(entries)
        if not pts:
            raise ValueError(f"empty permutation in spec: {part!r}")
        if min(pts) < 1:
            raise ValueError("permutation points are 1-based positive integers")
        deg = max(pts)
        perm = list(range(deg))
        for entries in parsed:
            zero_based = [x - 1 for x in entries]
            if len(set(zero_based)) != len(zero_based):
                raise ValueError(f"repeated point in cycle: {entries}")
            for i, x in enumerate(zero_based):
                perm[x] = zero_based[(i + 1) % len(zero_based)]
        gens.append(tuple(perm))
    return gens


def parse_group_spec(spec):
    """Build the group named by a spec string such as 'sym:4' or 'meta:12:11'."""
    parts = spec.strip().split(":")
    kind = parts[0]
    try:
        if kind == "cyclic" and len(parts) == 2:
            return cyclic(int(parts[1]))
        if kind == "dihedral" and len(parts) == 2:
            return dihedral(int(parts[1]))
        if kind == "semidihedral" and len(parts) == 2:
            return semidihedral(int(parts[1]))
        if kind == "quaternion" and len(parts) == 2:
            return generalized_quaternion(int(parts[1]))
        if kind == "sym" and len(parts) == 2:
            return symmetric(int(parts[1]))
        if kind == "alt" and len(parts) == 2:
            return alternating(int(parts[1]))
        if kind == "sl2" and len(parts) == 2:
            return sl2(int(parts[1]))
        if kind == "meta" and len(parts) == 3:
            n = int(parts[1])
            hgens = [int(t) for t in parts[2].split(",") if t]
            return semidirect_cn_h(n, hgens, name=spec.strip())
        if kind == "perm" and len(parts) >= 2:
            return from_permutation_generators(
                _parse_perm_spec(":".join(parts[1:])), name=spec.strip()
            )
    except ValueError as exc:
        raise ValueError(f"bad group spec {spec!r}: {exc}") from None
    raise ValueError(f"unrecognized group spec {spec!r}")


def parse_field_spec(spec):
    """Build the field named by 'cyclo:n', 'quad:d', or 'fix:n:k1,k2,...'."""
    parts = spec.strip().split(":")
    kind = parts[0]
    try:
        if kind == "cyclo" and len(parts) == 2:
            return cyclotomic_field(int(parts[1]))
        if kind == "quad" and len(parts) == 2:
            return quadratic_field(int(parts[1]))
        if kind == "fix" and len(parts) == 3:
            n = int(parts[1])
            gens = [int(t) for t in parts[2].split(",") if t]
            return AbelianField(n, gens)
    except ValueError as exc:
        raise ValueError(f"bad field spec {spec!r}: {exc}") from None
    raise ValueError(f"unrecognized field spec {spec!r}")


def build_table(group, method="auto", cd=None):
    """Character table of a group (or spec string).

    method 'direct' uses the closed-form metacyclic construction (only for
    meta/cyclic/dihedral-style semidirect groups), 'dixon' the modular
    algorithm, 'auto' the direct route whenever available.
    """
    if isinstance(group, str):
        group = parse_group_spec(group)
    if cd is None:
        cd = conjugacy_classes(group)
    meta = getattr(group, "meta_params", None)
    if method == "direct" or (method == "auto" and meta is not None):
        if meta is None:
            raise ValueError(f"no direct construction for group {group.name}")
        n, H = meta
        return metacyclic_table(n, list(H), group=group, cd=cd)
    if method in ("dixon", "auto"):
        return dixon_table(group, cd)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# per-row field reports


class CharacterFieldReport:
    """Field-of-values facts for one row at one prime."""

    def __init__(self, group_label, row, degree, block_id, height, field, p):
        self.group = group_label
        self.row = row
        self.degree = degree
        self.block_id = block_id
        self.height = height
        self.field = field
        self.p = p
        self.conductor = field.conductor
        self.a, self.m = conductor_parts(field, p)
        self.p_rational = self.a == 0
        comp = compositum(cyclotomic_field(self.m), field)
        self.theorem_containment = cyclotomic_field(p**self.a).is_subfield_of(comp)
        self.in_Fp = in_class_Fp(field, p)

    def to_json(self):
        return {
            "group": self.group,
            "row": self.row,
            "degree": self.degree,
            "block": self.block_id,
            "height": self.height,
            "field": self.field.to_json(),
            "p": self.p,
            "conductor": self.conductor,
            "a": self.a,
            "m": self.m,
            "p_rational": self.p_rational,
            "containment": self.theorem_containment,
            "in_Fp": self.in_Fp,
        }


def char_field_report(table, row, p, partition=None):
    if partition is None:
        partition = block_partition(table, p)
    field = field_from_values(table.rows[row])
    return CharacterFieldReport(
        table.name,
        row,
        table.degrees[row],
        partition.block_of[row],
        partition.height[row],
        field,
        p,
    )


def verify_theorem_A(table, p, partition=None):
    """Reports for all p-height-zero rows of one table, plus the violating
    row indices.  At p = 2 a violation of the cyclotomic containment is a
    genuine failure; at odd p it is a recorded finding (open conjecture)."""
    if partition is None:
        partition = block_partition(table, p)
    reports = []
    violations = []
    for r in height_zero_rows(table, p, partition):
        rep = char_field_report(table, r, p, partition)
        reports.append(rep)
        bad = not rep.theorem_containment if p == 2 else not rep.in_Fp
        if bad:
            violations.append(r)
    return reports, violations


def sweep_theorem_A(specs, p, method="auto", progress=None):
    """Run verify_theorem_A over many group specs; returns a summary dict."""
    groups_out = []
    total_rows = 0
    total_violations = 0
    for spec in specs:
        table = build_table(spec, method=method)
        reports, violations = verify_theorem_A(table, p)
        total_rows += len(reports)
        total_violations += len(violations)
        groups_out.append(
            {
                "group": spec,
                "order": table.order,
                "height_zero_rows": len(reports),
                "violations": violations,
                "reports": [rep.to_json() for rep in reports],
            }
        )
        if progress is not None:
            progress(spec, len(reports), len(violations))
    return {
        "p": p,
        "groups": groups_out,
        "total_height_zero_rows": total_rows,
        "total_violations": total_violations,
    }


# ---------------------------------------------------------------------------
# field realizer


class RealizerCertificate:
    """Witness that a field is the field of values of a height-zero row."""

    def __init__(self, field, p, n, subgroup, group_spec, row, degree,
                 verified_field, verified_height_zero, dixon_checked=False):
        self.field = field
        self.p = p
        self.n = n
        self.subgroup = tuple(subgroup)
        self.group_spec = group_spec
        self.row = row
        self.degree = degree
        self.verified_field = verified_field
        self.verified_height_zero = verified_height_zero
        self.dixon_checked = dixon_checked

    @property
    def valid(self):
        return self.verified_field and self.verified_height_zero

    def to_json(self):
        return {
            "field": self.field.to_json(),
            "p": self.p,
            "n": self.n,
            "subgroup": list(self.subgroup),
            "group": self.group_spec,
            "row": self.row,
            "degree": self.degree,
            "verified_field": self.verified_field,
            "verified_height_zero": self.verified_height_zero,
            "dixon_checked": self.dixon_checked,
            "valid": self.valid,
        }


def realize_field(field, p, cross_check_dixon=False):
    """Realize `field` as the field of values of a p-height-zero character of
    C_n x| H, where n is the conductor and H the fixer subgroup.

    The candidate row is the induction of a faithful linear character of C_n;
    its field of values and its height are then recomputed from scratch, so a
    returned certificate with valid=True is self-verifying.
    """
    if not in_class_Fp(field, p):
        raise ValueError("field fails the conductor-class precondition at p")
    n = field.conductor
    H = list(field.fixer) if n > 1 else []
    group = semidirect_cn_h(n, H)
    n_, Hfull = group.meta_params
    spec = f"meta:{n}:{','.join(map(str, Hfull))}" if n > 1 else "cyclic:1"
    cd = conjugacy_classes(group)
    table = metacyclic_table(n, H, group=group, cd=cd)

    # induce the faithful linear character c |-> zeta_n^c of C_n <= G
    sub_indices = [group.index[(c, 1 % n)] for c in range(n)]
    lam = {group.index[(c, 1 % n)]: root_of_unity(n, c) for c in range(n)}
    induced = induce_linear(group, cd, sub_indices, lam)
    # H acts faithfully on the characters of C_n, so the induced character is
    # irreducible and must literally be a table row
    try:
        row = table.rows.index(tuple(induced.values))
    except ValueError:
        raise AssertionError("induced character is not an irreducible row") from None

    achieved = field_from_values(table.rows[row])
    partition = block_partition(table, p)
    cert = RealizerCertificate(
        field,
        p,
        n,
        Hfull if n > 1 else (),
        spec,
        row,
        table.degrees[row],
        verified_field=(achieved == field),
        verified_height_zero=(partition.height[row] == 0),
    )
    if cross_check_dixon and cert.valid:
        dtab = dixon_table(group, cd)
        drow = dtab.rows.index(table.rows[row])
        dfield = field_from_values(dtab.rows[drow])
        dpart = block_partition(dtab, p)
        cert.dixon_checked = (
            dtab.rows == table.rows
            and dfield == field
            and dpart.height[drow] == 0
        )
        if not cert.dixon_checked:
            raise AssertionError("independent table construction disagrees")
    return cert


# ---------------------------------------------------------------------------
# quadratic-field sweep


def _is_squarefree(m):
    d = 2
    while d * d <= m:
        if m % (d * d) == 0:
            return False
        d += 1
    return True


def corollary_c_sweep(dmax):
    """(d, in_F2, expected) for every squarefree d with |d| <= dmax, d not in
    {0, 1}; expected = d odd.  The two booleans agree exactly when the
    quadratic-field classification at p = 2 holds."""
    if dmax < 2:
        raise ValueError("dmax must be at least 2")
    out = []
    for d in range(-dmax, dmax + 1):
        if d in (0, 1) or not _is_squarefree(abs(d)):
            continue
        in_f2 = in_class_Fp(quadratic_field(d), 2)
        out.append((d, in_f2, d % 2 != 0))
    return out


# ---------------------------------------------------------------------------
# sigma_1 fixedness


def sigma_check(table, partition=None):
    """Per-row: (height at p=2, fixed by sigma_1, 2-rational).

    For height-zero rows the last two booleans must coincide; rows of
    positive height are reported unconstrained.
    """
    if partition is None:
        partition = block_partition(table, 2)
    out = []
    for r, row in enumerate(table.rows):
        fixed = all(sigma_e(v, 1) == v for v in row)
        cond = field_from_values(row).conductor
        out.append(
            {
                "row": r,
                "degree": table.degrees[r],
                "height": partition.height[r],
                "sigma1_fixed": fixed,
                "two_rational": cond % 2 == 1,
                "conductor": cond,
            }
        )
    return out


# ---------------------------------------------------------------------------
# default corpus


def default_corpus():
    """Deterministic list of group specs for the standard sweeps."""
    specs = [f"cyclic:{n}" for n in range(1, 49)]
    specs += [f"dihedral:{m}" for m in range(4, 65, 2)]
    specs += [f"semidihedral:{1 << k}" for k in range(4, 7)]
    specs += [f"quaternion:{1 << k}" for k in range(3, 7)]
    specs += [f"sym:{n}" for n in range(3, 6)]
    specs += [f"alt:{n}" for n in (4, 5)]
    specs += ["sl2:3", "sl2:5"]
    # every conductor-normalized fixed field with conductor <= 40 passing the
    # p=2 conductor-class test, realized as its semidirect-product group
    seen = set()
    for n in range(2, 41):
        for sub in all_subgroups(n):
            field = AbelianField(n, sub)
            if field.conductor != n:
                continue
            if not in_class_Fp(field, 2):
                continue
            spec = f"meta:{n}:{','.join(map(str, sub))}"
            if spec not in seen:
                seen.add(spec)
                specs.append(spec)
    return specs
