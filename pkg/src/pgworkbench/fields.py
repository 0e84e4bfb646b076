"""Exact arithmetic in small Galois fields GF(p^h).

Elements are encoded as integers in [0, q): the base-p digits of the
integer are the coefficients of the residue polynomial, lowest degree
first.  For h = 1 this is just the residue in [0, p).  The encoding is
deterministic, so two fields built with the same (p, h) agree element
by element.
"""

from __future__ import annotations

import itertools

MAX_Q = 1 << 16
# full add/mul tables are built below this size; larger fields fall back
# to per-operation polynomial arithmetic
_TABLE_LIMIT = 512


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomial helpers over GF(p); coefficient lists, lowest degree first --

def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m must be monic
    a = list(a)
    dm = len(m) - 1
    while len(a) > dm:
        coef = a[-1]
        if coef:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - coef * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _is_irreducible(m, p):
    """Trial division by every monic polynomial of degree <= deg(m)/2."""
    h = len(m) - 1
    if h == 1:
        return True
    for d in range(1, h // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(m, divisor, p):
                return False
    return True


def smallest_irreducible(p: int, h: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree h over GF(p).

    Coefficients are compared lowest degree first, so the search order is
    itertools.product over (c0, ..., c_{h-1}).
    """
    for tail in itertools.product(range(p), repeat=h):
        cand = list(tail) + [1]
        if _is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {h} over GF({p})")


class GF:
    """The field GF(p^h) with integer-encoded elements."""

    def __init__(self, p: int, h: int = 1, max_q: int = MAX_Q):
        if not is_prime(p):
            raise FieldError(f"p = {p} is not prime")
        if h < 1:
            raise FieldError(f"h = {h} must be positive")
        q = p**h
        if q > max_q:
            raise FieldError(f"q = {q} exceeds the configured limit {max_q}")
        self.p = p
        self.h = h
        self.q = q
        self.modulus = smallest_irreducible(p, h) if h >= 2 else None
        self._add_table = None
        self._mul_table = None
        self._inv_table = None
        self._neg_table = None
        if q <= _TABLE_LIMIT:
            self._build_tables()

    # -- encoding -------------------------------------------------------

    def decode(self, x: int) -> tuple[int, ...]:
        """Integer -> residue polynomial coefficients (low degree first)."""
        out = []
        for _ in range(self.h):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def encode(self, coeffs) -> int:
        x = 0
        for c in reversed(list(coeffs)[: self.h] + [0] * (self.h - len(coeffs))):
            x = x * self.p + c
        return x

    # -- arithmetic -----------------------------------------------------

    def _raw_add(self, a, b):
        if self.h == 1:
            return (a + b) % self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode([(x + y) % self.p for x, y in zip(ca, cb)])

    def _raw_mul(self, a, b):
        if self.h == 1:
            return (a * b) % self.p
        prod = _poly_mul(self.decode(a), self.decode(b), self.p)
        return self.encode(_poly_mod(prod, self.modulus, self.p))

    def _raw_neg(self, a):
        if self.h == 1:
            return (-a) % self.p
        return self.encode([(-c) % self.p for c in self.decode(a)])

    def _build_tables(self):
        q = self.q
        self._add_table = [[self._raw_add(a, b) for b in range(q)] for a in range(q)]
        self._mul_table = [[self._raw_mul(a, b) for b in range(q)] for a in range(q)]
        self._neg_table = [self._raw_neg(a) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if self._mul_table[a][b] == 1:
                    inv[a] = b
                    break
        self._inv_table = inv

    def add(self, a: int, b: int) -> int:
        if self._add_table is not None:
            return self._add_table[a][b]
        return self._raw_add(a, b)

    def neg(self, a: int) -> int:
        if self._neg_table is not None:
            return self._neg_table[a]
        return self._raw_neg(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self._mul_table is not None:
            return self._mul_table[a][b]
        return self._raw_mul(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inversion of zero field element")
        if self._inv_table is not None:
            return self._inv_table[a]
        # a^(q-2) by square and multiply
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self._raw_mul(result, base)
            base = self._raw_mul(base, base)
            e >>= 1
        return result

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        result = 1
        for _ in range(e):
            result = self.mul(result, a)
        return result

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no multiplicative order")
        x, k = a, 1
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    # -- misc -----------------------------------------------------------

    @property
    def elements(self):
        return range(self.q)

    def descriptor(self) -> str:
        if self.h == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.h})[{','.join(map(str, self.modulus))}]"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.h) == (other.p, other.h)

    def __hash__(self):
        return hash((self.p, self.h))

    def __repr__(self):
        return f"GF(p={self.p}, h={self.h})"


def factor_prime_power(q: int) -> tuple[int, int]:
    """q -> (p, h) with q = p^h, or raise if q is not a prime power."""
    if q < 2:
        raise FieldError(f"q = {q} is not a prime power")
    p = q
    for d in range(2, q + 1):
        if d * d > q:
            break
        if q % d == 0:
            p = d
            break
    if p == q:
        return q, 1
    h = 0
    while q % p == 0:
        q //= p
        h += 1
    if q != 1:
        raise FieldError("not a prime power")
    return p, h


def field_for_order(q: int) -> GF:
    p, h = factor_prime_power(q)
    return GF(p, h)
