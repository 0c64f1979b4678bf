"""Exact arithmetic in cyclotomic fields with a canonical (Zumbroich) basis.

Elements of Q(zeta_n) are stored as sparse integer-exponent -> Fraction maps
over the Zumbroich basis of Z[zeta_n].  The representation is unique, so
structural equality is mathematical equality at a fixed modulus.  Mixed-modulus
arithmetic embeds both operands into the lcm modulus first; results are never
auto-descended (use conductor_of_element for explicit descent).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

__all__ = [
    "CycElt",
    "root_of_unity",
    "rational",
    "zero",
    "conductor_of_element",
    "sigma_e",
    "zumbroich_exponents",
]


@lru_cache(maxsize=None)
def _prime_powers(n):
    """[(p, p^v)] for p^v || n, p ascending."""
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            q = 1
            while m % p == 0:
                m //= p
                q *= p
            out.append((p, q))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, m))
    return tuple(out)


@lru_cache(maxsize=None)
def _allowed_residues(n):
    """For each p^v || n, the set of residues mod p^v taken by Zumbroich
    basis exponents of Q(zeta_n).

    With u = (n/p^v) mod p^v, the basis exponents are u*d mod p^v where the
    leading base-p digit of d is nonzero for odd p, and zero for p = 2."""
    out = {}
    for p, q in _prime_powers(n):
        u = (n // q) % q
        if p == 2:
            digits = range(max(q // 2, 1))
        else:
            digits = range(q // p, q)
        out[q] = frozenset((u * d) % q for d in digits)
    return out


@lru_cache(maxsize=None)
def zumbroich_exponents(n):
    """Sorted tuple of all Zumbroich basis exponents of Q(zeta_n)."""
    allowed = _allowed_residues(n)
    exps = [j for j in range(n) if all(j % q in a for q, a in allowed.items())]
    return tuple(exps)


@lru_cache(maxsize=None)
def _basis_set(n):
    return frozenset(zumbroich_exponents(n))


@lru_cache(maxsize=None)
def _reduce_single(n, j):
    """Basis expansion of the single power zeta_n^j as ((exponent, +-1), ...)."""
    return tuple(_reduce_pass(n, {j: 1}).items())


def _reduce_terms(n, raw):
    """Rewrite an exponent->coefficient map into the Zumbroich basis.

    Reduction is linear, so each out-of-basis exponent is expanded through a
    cached single-power expansion and the results accumulated."""
    basis = _basis_set(n)
    out = {}
    for j, c in raw.items():
        if not c:
            continue
        if j in basis:
            out[j] = out.get(j, 0) + c
        else:
            for j2, s in _reduce_single(n, j):
                out[j2] = out.get(j2, 0) + (c if s == 1 else s * c)
    return {j: c for j, c in out.items() if c}


def _reduce_pass(n, raw):
    """One full rewrite into the Zumbroich basis by the defining relations.

    Uses 1 + zeta_p + ... + zeta_p^{p-1} = 0 once per prime: fixing prime p
    only shifts exponents by multiples of n/p, which leaves the residues at
    the other prime powers untouched."""
    cur = raw
    for p, q in _prime_powers(n):
        allowed = _allowed_residues(n)[q]
        step = n // p
        nxt = {}
        for j, c in cur.items():
            if j % q in allowed:
                nxt[j] = nxt.get(j, 0) + c
            elif p == 2:
                j2 = (j + step) % n
                nxt[j2] = nxt.get(j2, 0) - c
            else:
                for t in range(1, p):
                    j2 = (j + t * step) % n
                    nxt[j2] = nxt.get(j2, 0) - c
        cur = nxt
    return {j: c for j, c in cur.items() if c != 0}


class CycElt:
    """Immutable element of Q(zeta_n) in canonical basis form."""

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n, terms, reduced=False):
        if n < 1:
            raise ValueError("modulus must be positive")
        clean = {}
        for j, c in terms.items():
            # integer coefficients stay plain ints (hash/eq-compatible with
            # Fraction and far cheaper in the reduction loops)
            if type(c) is not int:
                c = c if isinstance(c, Fraction) else Fraction(c)
                if c.denominator == 1:
                    c = c.numerator
            if c:
                clean[j % n] = clean.get(j % n, 0) + c
        if not reduced:
            clean = _reduce_terms(n, clean)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):
        raise AttributeError("CycElt is immutable")

    # -- representation plumbing -------------------------------------------

    def embed(self, m):
        """This element rewritten at modulus m (n must divide m)."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed modulus {self.n} into {m}")
        k = m // self.n
        return CycElt(m, {j * k: c for j, c in self.terms.items()})

    @staticmethod
    def _unify(x, y):
        m = lcm(x.n, y.n)
        return x.embed(m), y.embed(m)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        x, y = CycElt._unify(self, other)
        t = dict(x.terms)
        for j, c in y.terms.items():
            t[j] = t.get(j, 0) + c
        return CycElt(x.n, {j: c for j, c in t.items() if c}, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycElt(self.n, {j: -c for j, c in self.terms.items()}, reduced=True)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        # rational factors take the cheap linear path instead of a dense
        # convolution at the unified modulus
        if other.n == 1:
            return self.scalar_mul(other.terms.get(0, Fraction(0)))
        if self.n == 1:
            return other.scalar_mul(self.terms.get(0, Fraction(0)))
        x, y = CycElt._unify(self, other)
        t = {}
        for j1, c1 in x.terms.items():
            for j2, c2 in y.terms.items():
                j = (j1 + j2) % x.n
                t[j] = t.get(j, 0) + c1 * c2
        return CycElt(x.n, t)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        return NotImplemented

    def scalar_mul(self, c):
        c = Fraction(c)
        if not c:
            return CycElt(self.n, {}, reduced=True)
        return CycElt(self.n, {j: v * c for j, v in self.terms.items()}, reduced=True)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = CycElt(self.n, {0: 1}, reduced=False)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- Galois ------------------------------------------------------------

    def galois(self, k):
        """Image under zeta_n -> zeta_n^k; requires gcd(k, n) = 1."""
        k %= self.n if self.n > 1 else 1
        if self.n == 1:
            return self
        if gcd(k, self.n) != 1:
            raise ValueError(f"{k} is not coprime to modulus {self.n}")
        if k == 1:
            return self
        return CycElt(self.n, {(j * k) % self.n: c for j, c in self.terms.items()})

    def conjugate(self):
        return self.galois(-1)

    # -- rationality -------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_rational(self):
        if not self.terms:
            return True
        for k in _unit_group_generators(self.n):
            if self.galois(k) != self:
                return False
        return True

    def to_rational(self):
        if not self.terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError("element is not rational")
        # a rational r is r * (canonical form of 1 at this modulus); uniqueness
        # of coordinates lets us read r off a single shared basis coefficient
        one = _one_at(self.n)
        j, c = next(iter(one.terms.items()))
        return Fraction(self.terms.get(j, 0)) / c

    def is_integral(self):
        """All canonical-basis coefficients are integers (algebraic integer)."""
        return all(c.denominator == 1 for c in self.terms.values())

    # -- dunder glue -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _coerce(other, self.n)
        if not isinstance(other, CycElt):
            return NotImplemented
        if self.n != other.n:
            x, y = CycElt._unify(self, other)
            return x.terms == y.terms
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            h = hash((self.n, tuple(sorted(self.terms.items()))))
            object.__setattr__(self, "_hash", h)
        return self._hash

    def key(self):
        """Deterministic sort/encoding key."""
        return (self.n, tuple(sorted((j, c.numerator, c.denominator) for j, c in self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return f"CycElt({self.n}, 0)"
        bits = " + ".join(f"{c}*z{self.n}^{j}" for j, c in sorted(self.terms.items()))
        return f"CycElt({self.n}, {bits})"


def _coerce(v, n=1):
    if isinstance(v, CycElt):
        return v
    if isinstance(v, (int, Fraction)):
        return CycElt(n, {0: Fraction(v)})
    raise TypeError(f"cannot coerce {v!r} to CycElt")


def rational(v, n=1):
    """The rational number v as a CycElt at modulus n."""
    return _coerce(Fraction(v), n)


def zero(n=1):
    return CycElt(n, {}, reduced=True)


def root_of_unity(n, j=1):
    """zeta_n^j in canonical form."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return CycElt(n, {j % n: Fraction(1)})


@lru_cache(maxsize=None)
def _one_at(n):
    """Canonical form of the rational 1 at modulus n."""
    return CycElt(n, {0: Fraction(1)})


@lru_cache(maxsize=None)
def _unit_group_generators(n):
    """A small generating set of (Z/n)*."""
    if n <= 2:
        return (1 % max(n, 1),)
    gens = []
    have = {1}
    for k in range(2, n):
        if gcd(k, n) != 1 or k in have:
            continue
        gens.append(k)
        # close up
        frontier = [k]
        while frontier:
            a = frontier.pop()
            for b in list(have):
                c = (a * b) % n
                if c not in have:
                    have.add(c)
                    frontier.append(c)
        if len(have) == _euler_phi(n):
            break
    return tuple(gens) if gens else (1,)


@lru_cache(maxsize=None)
def _euler_phi(n):
    out = n
    for p, _ in _prime_powers(n):
        out -= out // p
    return out


@lru_cache(maxsize=None)
def _divisors(n):
    out = [d for d in range(1, n + 1) if n % d == 0]
    return tuple(out)


def sigma_e(x, e):
    """Galois map fixing odd-order roots of unity and raising 2-power roots
    to the (1+2^e)-th power, restricted to the modulus of x."""
    n = x.n
    n2 = 1
    while n % (2 * n2) == 0:
        n2 *= 2
    nodd = n // n2
    if n2 == 1:
        return x
    # k = 1 mod nodd, k = 1+2^e mod n2
    k = _crt(1, nodd, (1 + (1 << e)) % n2, n2)
    return x.galois(k)


def _crt(a1, m1, a2, m2):
    if m1 == 1:
        return a2 % m2 if m2 > 1 else 0
    if m2 == 1:
        return a1 % m1
    inv = pow(m1, -1, m2)
    return (a1 + m1 * ((a2 - a1) * inv % m2)) % (m1 * m2)


def _fixed_by_kernel(x, m):
    """True iff galois(x, k) == x for all k = 1 mod m coprime to x.n."""
    n = x.n
    for k in range(1, n):
        if k % m == 1 % m and gcd(k, n) == 1:
            if x.galois(k) != x:
                return False
    return True


def conductor_of_element(x):
    """Smallest m | n with x in Q(zeta_m), plus x rewritten at modulus m."""
    n = x.n
    for m in _divisors(n):
        if _fixed_by_kernel(x, m):
            return m, _descend(x, m)
    raise AssertionError("unreachable: x is fixed by the trivial kernel at m=n")


def _descend(x, m):
    """Rewrite x (known to lie in Q(zeta_m)) at modulus m by exact solve."""
    if m == x.n:
        return x
    basis_m = zumbroich_exponents(m)
    basis_n = zumbroich_exponents(x.n)
    idx = {j: i for i, j in enumerate(basis_n)}
    # columns: embedded images of the Q(zeta_m) basis; solve M a = v.
    cols = []
    for b in basis_m:
        emb = root_of_unity(m, b).embed(x.n)
        col = [Fraction(0)] * len(basis_n)
        for j, c in emb.terms.items():
            col[idx[j]] = Fraction(c)
        cols.append(col)
    v = [Fraction(0)] * len(basis_n)
    for j, c in x.terms.items():
        v[idx[j]] = Fraction(c)
    coeffs = _solve_exact(cols, v)
    return CycElt(m, {b: c for b, c in zip(basis_m, coeffs) if c}, reduced=True)


def _solve_exact(cols, v):
    """Solve sum_i a_i * cols[i] = v over Q; raises if inconsistent."""
    ncols = len(cols)
    nrows = len(v)
    # augmented matrix, row-major
    mat = [[cols[c][r] for c in range(ncols)] + [v[r]] for r in range(nrows)]
    piv_of_col = {}
    row = 0
    for col in range(ncols):
        sel = next((r for r in range(row, nrows) if mat[r][col]), None)
        if sel is None:
            continue
        mat[row], mat[sel] = mat[sel], mat[row]
        inv = 1 / mat[row][col]
        mat[row] = [e * inv for e in mat[row]]
        for r in range(nrows):
            if r != row and mat[r][col]:
                f = mat[r][col]
                mat[r] = [a - f * b for a, b in zip(mat[r], mat[row])]
        piv_of_col[col] = row
        row += 1
    for r in range(row, nrows):
        if mat[r][ncols]:
            raise ValueError("inconsistent descent system")
    return [mat[piv_of_col[c]][ncols] if c in piv_of_col else Fraction(0) for c in range(ncols)]
