"""Exact coefficient fields: the rationals, prime fields, and small extensions.

Field objects mediate all arithmetic so that callers can stay generic:
rationals use ``fractions.Fraction`` values, F_p uses plain ints in
``range(p)``, and F_{p^e} uses length-e coefficient tuples over F_p with a
deterministically chosen modulus (the lexicographically smallest monic
irreducible of degree e).  Nothing here ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterator

__all__ = ["QQ", "GF", "Field", "RationalField", "PrimeField", "ExtensionField", "field_from_json"]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Common interface; concrete fields override everything that matters."""

    char: int

    def zero(self) -> Any:
        raise NotImplementedError

    def one(self) -> Any:
        raise NotImplementedError

    def from_int(self, n: int) -> Any:
        raise NotImplementedError

    def add(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def sub(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def mul(self, a: Any, b: Any) -> Any:
        raise NotImplementedError

    def neg(self, a: Any) -> Any:
        raise NotImplementedError

    def inv(self, a: Any) -> Any:
        raise NotImplementedError

    def is_zero(self, a: Any) -> bool:
        raise NotImplementedError

    def frobenius(self, a: Any) -> Any:
        """The p-th power map; identity in characteristic zero."""
        raise NotImplementedError

    def elements(self) -> Iterator[Any]:
        raise NotImplementedError("field is not enumerable")

    def to_json(self) -> dict:
        raise NotImplementedError

    def element_to_json(self, a: Any):
        raise NotImplementedError

    def element_from_json(self, data: Any):
        raise NotImplementedError


class RationalField(Field):
    char = 0

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a):
        return a == 0

    def frobenius(self, a):
        return a

    def to_json(self):
        return {"kind": "Q"}

    def element_to_json(self, a):
        f = Fraction(a)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

    def element_from_json(self, data):
        return Fraction(data)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    """F_p with elements as plain ints in range(p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def frobenius(self, a):
        return a % self.p

    def elements(self):
        return iter(range(self.p))

    def to_json(self):
        return {"kind": "F", "p": self.p, "e": 1}

    def element_to_json(self, a):
        return a % self.p

    def element_from_json(self, data):
        return int(data) % self.p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def _poly_mul_mod(a: tuple, b: tuple, modulus: tuple, p: int) -> tuple:
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    # reduce by the monic modulus
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for j in range(e):
                prod[k - e + j] = (prod[k - e + j] - c * modulus[j]) % p
    return tuple(prod[:e]) + (0,) * (e - len(prod[:e]))


def _poly_divmod(a: list, b: list, p: int) -> tuple[list, list]:
    a = a[:]
    while a and a[-1] == 0:
        a.pop()
    b = b[:]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db, lb = len(b) - 1, b[-1]
    inv_lb = pow(lb, p - 2, p)
    quot = [0] * max(len(a) - db, 1)
    while len(a) - 1 >= db and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) - 1 < db:
            break
        c = (a[-1] * inv_lb) % p
        shift = len(a) - 1 - db
        quot[shift] = c
        for j in range(db + 1):
            a[shift + j] = (a[shift + j] - c * b[j]) % p
    while a and a[-1] == 0:
        a.pop()
    return quot, a


def _is_irreducible(poly: tuple, p: int) -> bool:
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(d, p):
            _, rem = _poly_divmod(list(poly), list(div), p)
            if not rem:
                return False
    return True


def _monic_polys(deg: int, p: int):
    def rec(coeffs, i):
        if i == deg:
            yield tuple(coeffs) + (1,)
            return
        for c in range(p):
            coeffs.append(c)
            yield from rec(coeffs, i + 1)
            coeffs.pop()

    yield from rec([], 0)


@lru_cache(maxsize=None)
def _default_modulus(p: int, e: int) -> tuple:
    for poly in _monic_polys(e, p):
        if _is_irreducible(poly, p):
            return poly
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class ExtensionField(Field):
    """F_{p^e} as F_p[x] modulo a fixed irreducible; elements are e-tuples."""

    def __init__(self, p: int, e: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if e < 2:
            raise ValueError("use PrimeField for e = 1")
        self.p = p
        self.e = e
        self.q = p**e
        self.char = p
        self.modulus = _default_modulus(p, e)

    def zero(self):
        return (0,) * self.e

    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.e - 1)

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def mul(self, a, b):
        return _poly_mul_mod(a, b, self.modulus, self.p)

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in F_p[x]
        p = self.p
        r0, r1 = list(self.modulus), [c for c in a]
        t0, t1 = [0], [1]
        while any(r1):
            q, r = _poly_divmod(r0, r1, p)
            r0, r1 = r1, r
            qt = [0] * (len(q) + len(t1) - 1)
            for i, qi in enumerate(q):
                if qi:
                    for j, tj in enumerate(t1):
                        qt[i + j] = (qt[i + j] + qi * tj) % p
            new_t = [0] * max(len(t0), len(qt))
            for i in range(len(new_t)):
                v0 = t0[i] if i < len(t0) else 0
                v1 = qt[i] if i < len(qt) else 0
                new_t[i] = (v0 - v1) % p
            t0, t1 = t1, new_t
        while r0 and r0[-1] == 0:
            r0.pop()
        lead = r0[-1] if r0 else 0
        c = pow(lead, p - 2, p)
        out = [(c * t) % p for t in t0]
        out = out[: self.e] + [0] * max(0, self.e - len(out))
        return tuple(out)

    def is_zero(self, a):
        return not any(a)

    def frobenius(self, a):
        result = self.one()
        base = a
        n = self.p
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def elements(self):
        def rec(prefix, i):
            if i == self.e:
                yield tuple(prefix)
                return
            for c in range(self.p):
                prefix.append(c)
                yield from rec(prefix, i + 1)
                prefix.pop()

        return rec([], 0)

    def to_json(self):
        return {"kind": "F", "p": self.p, "e": self.e}

    def element_to_json(self, a):
        return [c % self.p for c in a]

    def element_from_json(self, data):
        if isinstance(data, int):
            return self.from_int(data)
        vals = [int(c) % self.p for c in data]
        if len(vals) != self.e:
            raise ValueError(f"element needs {self.e} coefficients, got {len(vals)}")
        return tuple(vals)

    def __repr__(self):
        return f"GF({self.p}^{self.e})"

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and (other.p, other.e) == (self.p, self.e)

    def __hash__(self):
        return hash(("GF", self.p, self.e))


QQ = RationalField()


def GF(p: int, e: int = 1) -> Field:
    """Finite field F_{p^e}."""
    if e == 1:
        return PrimeField(p)
    return ExtensionField(p, e)


def field_from_json(data: dict) -> Field:
    """Inverse of ``Field.to_json``."""
    if data.get("kind") == "Q":
        return QQ
    if data.get("kind") == "F":
        return GF(int(data["p"]), int(data.get("e", 1)))
    raise ValueError(f"unrecognized field descriptor: {data!r}")
