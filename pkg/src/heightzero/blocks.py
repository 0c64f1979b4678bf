"""p-block structure of a character table, computed by exact reduction.

The route is classical: for each irreducible row chi the central character
omega_chi sends a class sum K_j to |K_j| chi(g_j) / chi(1), an algebraic
integer in a cyclotomic field.  Reducing these values modulo a fixed maximal
ideal above p lands them in a finite field GF(p^f); two rows lie in the same
p-block exactly when their reduced central characters agree on every class.
Defect and heights then come from p-valuations of the group order and the
row degrees.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .cyclotomic import CycElt

__all__ = [
    "GF",
    "IdealReduction",
    "Block",
    "BlockPartition",
    "block_partition",
    "height_zero_rows",
    "central_character_value",
    "nu_p",
    "block_report_json",
]


def nu_p(n, p):
    """p-adic valuation of the positive integer n."""
    if n <= 0:
        raise ValueError("valuation needs a positive integer")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


# ---------------------------------------------------------------------------
# finite fields GF(p^f), elements as coefficient tuples of length f


def _gf_irreducible_poly(p, f):
    """Lexicographically least monic irreducible polynomial of degree f over
    F_p, as low-to-high coefficients (length f + 1, leading 1)."""
    from sympy.polys.galoistools import gf_irreducible_p
    from sympy.polys.domains import ZZ

    if f == 1:
        return (0, 1)
    # enumerate constant-first tuples in lexicographic order
    total = p**f
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(f):
            coeffs.append(c % p)
            c //= p
        cand = coeffs + [1]
        # sympy wants high-to-low coefficients
        if gf_irreducible_p([ZZ(x) for x in reversed(cand)], p, ZZ):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class GF:
    """Arithmetic in GF(p^f) = F_p[x] / (m(x)); elements are tuples of f
    residues (constant coefficient first)."""

    def __init__(self, p, f):
        self.p = p
        self.f = f
        self.modulus = _gf_irreducible_poly(p, f)
        self.zero = (0,) * f
        self.one = (1,) + (0,) * (f - 1)
        if p == 2:
            # packed modulus for the carry-less fast path
            self._mod_bits = sum(c << i for i, c in enumerate(self.modulus))
        # x^(f+k) expressed in the basis, for k = 0 .. f-2
        self._high = []
        top = [(-c) % p for c in self.modulus[:f]]  # x^f
        cur = top
        for _ in range(max(f - 1, 0)):
            self._high.append(tuple(cur))
            shifted = [0] + cur[:-1]
            lead = cur[-1]
            cur = [(shifted[i] + lead * top[i]) % p for i in range(f)]

    @property
    def order(self):
        return self.p**self.f

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def scalar(self, c):
        return (c % self.p,) + (0,) * (self.f - 1)

    def mul(self, a, b):
        p, f = self.p, self.f
        if p == 2:
            ai = sum(x << i for i, x in enumerate(a))
            bi = sum(x << i for i, x in enumerate(b))
            prod = 0
            while ai:
                low = ai & -ai
                prod ^= bi << low.bit_length() - 1
                ai ^= low
            mod = self._mod_bits
            for sh in range(prod.bit_length() - f - 1, -1, -1):
                if prod >> (f + sh) & 1:
                    prod ^= mod << sh
            return tuple((prod >> i) & 1 for i in range(f))
        prod = [0] * (2 * f - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:f]]
        for k in range(f, 2 * f - 1):
            c = prod[k] % p
            if c:
                red = self._high[k - f]
                for i in range(f):
                    out[i] = (out[i] + c * red[i]) % p
        return tuple(out)

    def pow(self, a, k):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.one
        base = a
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def element_order(self, a):
        if a == self.zero:
            raise ValueError("zero has no multiplicative order")
        o, cur = 1, a
        while cur != self.one:
            cur = self.mul(cur, a)
            o += 1
        return o

    def multiplicative_generator(self):
        """Least generator of the cyclic group GF(p^f)^* (deterministic)."""
        from sympy import factorint

        n = self.order - 1
        prime_factors = list(factorint(n))
        # iterate elements in the same lexicographic code order as construction
        for code in range(1, self.order):
            coeffs = []
            c = code
            for _ in range(self.f):
                coeffs.append(c % self.p)
                c //= self.p
            a = tuple(coeffs)
            if all(self.pow(a, n // q) != self.one for q in prime_factors):
                return a
        raise AssertionError("no generator found")  # unreachable

    def root_of_order(self, m):
        """The first (in enumeration order) element of exact multiplicative
        order m; m must divide p^f - 1.  Avoids factoring p^f - 1: only the
        prime factors of m itself are needed to certify the order."""
        from sympy import factorint

        if (self.order - 1) % m:
            raise ValueError(f"{m} does not divide {self.order - 1}")
        if m == 1:
            return self.one
        cofactor = (self.order - 1) // m
        prime_factors = list(factorint(m))
        for code in range(1, self.order):
            coeffs = []
            c = code
            for _ in range(self.f):
                coeffs.append(c % self.p)
                c //= self.p
            u = self.pow(tuple(coeffs), cofactor)
            if u != self.zero and all(
                self.pow(u, m // q) != self.one for q in prime_factors
            ):
                return u
        raise AssertionError("no element of the requested order")  # unreachable


# ---------------------------------------------------------------------------
# reduction of cyclotomic integers modulo a maximal ideal above p


@lru_cache(maxsize=None)
def _cached_gf(p, f):
    return GF(p, f)


class IdealReduction:
    """Reduction map Z[zeta_n] -> GF(p^f) for all n whose p'-part divides
    eprime (p does not divide eprime).

    f is the multiplicative order of p mod eprime; the map fixes a root u of
    exact order eprime and sends zeta_{p^a} to 1 and zeta_{n'} to
    u^(eprime / n') for n' | eprime.  `unit_power` (coprime to eprime)
    replaces u by u^unit_power: a different but equally valid maximal ideal.
    Block partitions must not depend on this choice.
    """

    def __init__(self, p, eprime, unit_power=1):
        if eprime % p == 0 and eprime > 1 or eprime < 1:
            raise ValueError("eprime must be a positive integer prime to p")
        if gcd(unit_power, eprime) != 1:
            raise ValueError("unit_power must be coprime to eprime")
        self.p = p
        self.eprime = eprime
        f = 1
        if eprime > 1:
            acc = p % eprime
            while acc != 1:
                acc = (acc * p) % eprime
                f += 1
        self.f = f
        self.gf = _cached_gf(p, f)
        u = self.gf.root_of_order(eprime) if eprime > 1 else self.gf.one
        self.u = self.gf.pow(u, unit_power % max(eprime, 1)) if eprime > 1 else u
        # u^k for k in [0, eprime): every reduction only ever needs these
        self._upow = [self.gf.one]
        for _ in range(eprime - 1):
            self._upow.append(self.gf.mul(self._upow[-1], self.u))
        if p == 2:
            # packed-int variant: reduction accumulates by XOR
            self._upow_int = [
                sum(bit << i for i, bit in enumerate(t)) for t in self._upow
            ]

    def reduce(self, x):
        """Image of the CycElt x in GF(p^f); x must be p-integral and the
        p'-part of its modulus must divide eprime."""
        p, gf = self.p, self.gf
        n = x.n
        a = nu_p(n, p) if n > 1 else 0
        nprime = n // p**a
        if self.eprime % nprime:
            raise ValueError(
                f"modulus {n} has p'-part {nprime}, not dividing {self.eprime}"
            )
        # zeta_n = zeta_{p^a}^alpha * zeta_{n'}^beta with the CRT exponents;
        # zeta_{p^a} |-> 1, so only the n'-component survives.
        if nprime > 1:
            beta = pow(p**a, -1, nprime)
            step = (self.eprime // nprime) * beta
        if p == 2:
            ep = self.eprime
            out = 0
            for j, c in x.terms.items():
                if c.denominator % 2 == 0:
                    raise ValueError("value is not p-integral")
                if c.numerator % 2:
                    out ^= self._upow_int[(j * step) % ep] if nprime > 1 else 1
            return out
        out = gf.zero
        for j, c in x.terms.items():
            if c.denominator % p == 0:
                raise ValueError("value is not p-integral")
            cm = (c.numerator * pow(c.denominator, -1, p)) % p
            if not cm:
                continue
            upow = self._upow[(j * step) % self.eprime] if nprime > 1 else gf.one
            if cm != 1:
                upow = tuple((cm * t) % p for t in upow)
            out = gf.add(out, upow)
        return out


def central_character_value(table, r, j):
    """omega_chi(K_j) = |K_j| chi(g_j) / chi(1) for row r; exact CycElt."""
    chi = table.rows[r]
    size = table.classes.class_sizes[j]
    return chi[j].scalar_mul(Fraction(size, table.degrees[r]))


# ---------------------------------------------------------------------------
# block partition


class Block:
    """One p-block: its rows (indices into the table), defect, and heights."""

    def __init__(self, block_id, rows, defect, heights):
        self.id = block_id
        self.rows = list(rows)
        self.defect = defect
        self.heights = list(heights)

    def __repr__(self):
        return f"Block(id={self.id}, defect={self.defect}, rows={self.rows})"


class BlockPartition:
    """All p-blocks of a table, with per-row lookups."""

    def __init__(self, p, blocks, num_rows):
        self.p = p
        self.blocks = blocks
        self.block_of = [None] * num_rows
        self.height = [None] * num_rows
        self.defect = [b.defect for b in blocks]
        for b in blocks:
            for r, h in zip(b.rows, b.heights):
                self.block_of[r] = b.id
                self.height[r] = h
        self.principal_block = self.block_of[0]

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        return len(self.blocks)


def block_partition(table, p, unit_power=1):
    """Partition of the rows of `table` into p-blocks.

    Returns a BlockPartition whose blocks are ordered by their least row
    index; within a block, rows keep table order.  Each row's central
    character must reduce to algebraic integers; a failure means the table
    data is corrupt and raises ValueError.
    """
    from sympy import isprime

    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    exponent = table.classes.exponent
    eprime = exponent // p ** nu_p(exponent, p) if exponent > 1 else 1
    red = IdealReduction(p, eprime, unit_power=unit_power)

    signatures = {}
    for r in range(len(table.rows)):
        sig = []
        for j in range(table.num_classes):
            w = central_character_value(table, r, j)
            if not w.is_integral():
                raise ValueError(
                    f"central character of row {r} is not an algebraic integer"
                )
            sig.append(red.reduce(w))
        signatures.setdefault(tuple(sig), []).append(r)

    nu_order = nu_p(table.order, p)
    blocks = []
    for rows in sorted(signatures.values(), key=lambda rs: rs[0]):
        degs = [table.degrees[r] for r in rows]
        vals = [nu_p(d, p) for d in degs]
        vmin = min(vals)
        defect = nu_order - vmin
        heights = [v - vmin for v in vals]
        blocks.append(Block(len(blocks), rows, defect, heights))
    return BlockPartition(p, blocks, len(table.rows))


def height_zero_rows(table, p, partition=None):
    """Indices of the rows of p-height zero, in table order."""
    if partition is None:
        partition = block_partition(table, p)
    return [r for r, h in enumerate(partition.height) if h == 0]


def block_report_json(table, p, partition=None):
    """JSON-ready block report for a table at the prime p."""
    blocks = partition if partition is not None else block_partition(table, p)
    return {
        "p": p,
        "group": table.name,
        "order": table.order,
        "blocks": [
            {
                "id": b.id,
                "defect": b.defect,
                "rows": [
                    {"index": r, "degree": table.degrees[r], "height": h}
                    for r, h in zip(b.rows, b.heights)
                ],
            }
            for b in blocks
        ],
    }
