"""Abelian number fields as fixed fields of subgroups of (Z/n)*.

A field is stored conductor-normalized: the modulus n is the conductor, so
equality is structural.  Subgroups store their full element sets; desk-scale
phi(n) keeps intersections and preimages cheap as plain set operations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from .cyclotomic import (
    CycElt,
    _divisors,
    _euler_phi,
    _prime_powers,
    rational,
    root_of_unity,
    zero,
)

__all__ = [
    "ResidueSubgroup",
    "AbelianField",
    "cyclotomic_field",
    "rational_field",
    "field_from_values",
    "compositum",
    "intersection",
    "quadratic_field",
    "in_class_Fp",
    "in_subclass_Fp",
    "conductor_parts",
    "subgroup_closure",
    "all_subgroups",
]


def _units(n):
    if n == 1:
        return (0,)
    return tuple(k for k in range(1, n) if gcd(k, n) == 1)


def subgroup_closure(n, gens):
    """Subgroup of (Z/n)* generated by gens, as a sorted tuple."""
    if n == 1:
        return (0,)
    have = {1}
    frontier = [g % n for g in gens]
    for g in frontier:
        if gcd(g, n) != 1:
            raise ValueError(f"{g} is not coprime to {n}")
    while frontier:
        a = frontier.pop()
        for b in list(have):
            c = (a * b) % n
            if c not in have:
                have.add(c)
                frontier.append(c)
    return tuple(sorted(have))


class ResidueSubgroup:
    """A subgroup of (Z/n)* given by its full element set."""

    __slots__ = ("n", "elements")

    def __init__(self, n, elements):
        elements = tuple(sorted(set(e % n for e in elements))) if n > 1 else (0,)
        if n > 1:
            if not elements or 1 not in elements:
                raise ValueError("subgroup must contain 1")
            for a in elements:
                if gcd(a, n) != 1:
                    raise ValueError(f"{a} not coprime to {n}")
                for b in elements:
                    if (a * b) % n not in elements:
                        raise ValueError("set not closed under multiplication")
            if _euler_phi(n) % len(elements):
                raise ValueError("order does not divide phi(n)")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "elements", elements)

    def __setattr__(self, *a):
        raise AttributeError("ResidueSubgroup is immutable")

    def __contains__(self, k):
        return (k % self.n if self.n > 1 else 0) in self.elements

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        return (
            isinstance(other, ResidueSubgroup)
            and self.n == other.n
            and self.elements == other.elements
        )

    def __hash__(self):
        return hash((self.n, self.elements))

    def __repr__(self):
        return f"ResidueSubgroup({self.n}, {list(self.elements)})"


def _kernel_contained(n, m, fixer_set):
    """True iff ker((Z/n)* -> (Z/m)*) is inside fixer_set."""
    return all(k in fixer_set for k in range(1, n) if k % m == 1 % m and gcd(k, n) == 1)


class AbelianField:
    """Fixed field of `fixer` inside Q(zeta_n), stored with n = conductor."""

    __slots__ = ("n", "fixer")

    def __init__(self, n, fixer_elements):
        fixer = set(subgroup_closure(n, fixer_elements)) if n > 1 else {0}
        # conductor-normalize: descend to the smallest admissible divisor
        for m in _divisors(n):
            if m == n:
                break
            if _kernel_contained(n, m, fixer):
                fixer = {k % m for k in fixer}
                n = m
                break
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "fixer", ResidueSubgroup(n, fixer))

    def __setattr__(self, *a):
        raise AttributeError("AbelianField is immutable")

    @property
    def conductor(self):
        return self.n

    @property
    def degree(self):
        return _euler_phi(self.n) // len(self.fixer)

    def preimage_fixer(self, big_n):
        """Fixer elements lifted to (Z/big_n)* (n must divide big_n)."""
        if big_n % self.n:
            raise ValueError("modulus mismatch")
        if big_n == 1:
            return {0}
        return {k for k in _units(big_n) if k % self.n in self.fixer or self.n == 1}

    def is_subfield_of(self, other):
        big = lcm(self.n, other.n)
        return other.preimage_fixer(big) <= self.preimage_fixer(big)

    def contains_value(self, x):
        """True iff the CycElt x lies in this field."""
        big = lcm(self.n, x.n)
        xe = x.embed(big)
        return all(xe.galois(k) == xe for k in self.preimage_fixer(big) if k != 0)

    def __eq__(self, other):
        return (
            isinstance(other, AbelianField)
            and self.n == other.n
            and self.fixer == other.fixer
        )

    def __hash__(self):
        return hash((self.n, self.fixer))

    def __repr__(self):
        return f"AbelianField(n={self.n}, fixer={list(self.fixer.elements)})"

    def to_json(self):
        return {
            "conductor": self.n,
            "fixer": list(self.fixer.elements) if self.n > 1 else [1],
            "degree": self.degree,
        }


def cyclotomic_field(n):
    if n < 1:
        raise ValueError("n must be >= 1")
    return AbelianField(n, [1] if n > 1 else [])


def rational_field():
    return cyclotomic_field(1)


def field_from_values(values):
    """Smallest abelian field containing every value (e.g. Q(chi) for a row)."""
    values = [v for v in values if isinstance(v, CycElt)]
    if not values:
        return rational_field()
    big = 1
    for v in values:
        big = lcm(big, v.n)
    if big == 1:
        return rational_field()
    emb = [v.embed(big) for v in values]
    # stabilizer scan; elements already known to lie in the subgroup are skipped
    fixer = {1}
    for k in _units(big):
        if k in fixer:
            continue
        if all(v.galois(k) == v for v in emb):
            fixer = set(subgroup_closure(big, list(fixer) + [k]))
    return AbelianField(big, fixer)


def compositum(f1, f2):
    big = lcm(f1.n, f2.n)
    if big == 1:
        return rational_field()
    fixer = f1.preimage_fixer(big) & f2.preimage_fixer(big)
    return AbelianField(big, fixer)


def intersection(f1, f2):
    big = lcm(f1.n, f2.n)
    if big == 1:
        return rational_field()
    fixer = f1.preimage_fixer(big) | f2.preimage_fixer(big)
    return AbelianField(big, fixer)


def conductor_parts(field, p):
    """(a, m) with conductor = p^a * m and p not dividing m."""
    n = field.n
    a = 0
    while n % p == 0:
        n //= p
        a += 1
    return a, n


def in_class_Fp(field, p):
    """Membership in the class F_p: p does not divide |Q_n : <Q_m, F>|."""
    a, m = conductor_parts(field, p)
    comp = compositum(cyclotomic_field(m), field)
    index = _euler_phi(field.n) // comp.degree
    return index % p != 0


def in_subclass_Fp(field, p):
    """The stricter subclass: p does not divide [Q_{p^a} : Q_{p^a} meet F]."""
    a, _ = conductor_parts(field, p)
    qa = cyclotomic_field(p**a)
    meet = intersection(qa, field)
    return (qa.degree // meet.degree) % p != 0


def _legendre(t, p):
    s = pow(t % p, (p - 1) // 2, p)
    return -1 if s == p - 1 else s


@lru_cache(maxsize=None)
def _gauss_sum(p):
    """sqrt(p*) with p* = (-1)^((p-1)/2) p, as the quadratic Gauss sum."""
    return CycElt(p, {t: Fraction(_legendre(t, p)) for t in range(1, p)})


def sqrt_cyc(d):
    """A CycElt whose square is the squarefree integer d."""
    if d == 0:
        raise ValueError("d must be nonzero")
    x = rational(1)
    radicand = 1
    m = abs(d)
    for p, q in _prime_powers(m):
        if q != p:
            raise ValueError(f"{d} is not squarefree")
        if p == 2:
            continue
        x = x * _gauss_sum(p)
        radicand *= p if p % 4 == 1 else -p
    u = d // radicand
    if u == -1:
        x = x * root_of_unity(4)
    elif u == 2:
        x = x * (root_of_unity(8) + root_of_unity(8, 7))
    elif u == -2:
        x = x * (root_of_unity(8) + root_of_unity(8, 3))
    elif u != 1:
        raise AssertionError(f"unexpected residual factor {u}")
    assert (x * x) == rational(d, x.n), "Gauss-sum construction failed to square to d"
    return x


def quadratic_field(d):
    """Q(sqrt d) for squarefree d not in {0, 1}."""
    if d in (0, 1):
        raise ValueError("d must be a squarefree integer other than 0 and 1")
    for p, q in _prime_powers(abs(d)):
        if q != p:
            raise ValueError(f"{d} is not squarefree")
    return field_from_values([sqrt_cyc(d)])


def all_subgroups(n):
    """Every subgroup of (Z/n)*, as sorted tuples, deterministically ordered."""
    if n <= 2:
        return [subgroup_closure(n, [])]
    seen = {subgroup_closure(n, [])}
    frontier = [subgroup_closure(n, [])]
    while frontier:
        s = frontier.pop()
        for g in _units(n):
            t = subgroup_closure(n, list(s) + [g])
            if t not in seen:
                seen.add(t)
                frontier.append(t)
    return sorted(seen, key=lambda s: (len(s), s))
