"""Arithmetic in GF(q), q = p^m.

Elements are plain integers in ``[0, q)``: the base-p digits of the integer
(least significant first) are the coefficients of a polynomial over GF(p),
reduced modulo the field's defining polynomial.  Scalar operations live on
:class:`FieldSpec`; the ``*_arr`` variants take numpy arrays and are what the
geometry code uses to build planes quickly.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DivisionByZero, FieldTooLarge, NotPrime

FIELD_CAP = 2 ** 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m``, or None if q is not a prime power."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, m = fs[0], 0
    while q > 1:
        q //= p
        m += 1
    return p, m


def prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 2), hi + 1) if prime_power(q) is not None]


# -- polynomials over GF(p), little-endian coefficient lists ----------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(list(a))
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        for i, c in enumerate(f):
            a[shift + i] = (a[shift + i] - coef * c) % p
        _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(list(poly))
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not _poly_mod(poly, list(low) + [1], p):
                return False
    return True


def _smallest_irreducible(p: int, m: int) -> tuple[int, ...]:
    # product() walks little-endian tuples in lexicographic order
    for low in itertools.product(range(p), repeat=m):
        cand = low + (1,)
        if low[0] == 0:
            continue  # divisible by x
        if is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible polynomial of degree {m} over GF({p})")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    q: int
    modulus: tuple[int, ...]
    _tables: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    # -- encoding ----------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def elements(self) -> range:
        return range(self.q)

    # -- scalar arithmetic -------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        return self.from_digits([(x + y) % self.p
                                 for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self.from_digits([(-x) % self.p for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        exp, log = self._exp_log()
        return int(exp[(log[a] + log[b]) % (self.q - 1)])

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply; negative exponents invert first."""
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise DivisionByZero("inverse of 0")
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- vectorised arithmetic --------------------------------------------

    def add_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        pw = 1
        for _ in range(self.m):
            out += ((a // pw % self.p + b // pw % self.p) % self.p) * pw
            pw *= self.p
        return out

    def neg_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if self.m == 1:
            return (-a) % self.p
        if self.p == 2:
            return a.copy()
        out = np.zeros_like(a)
        pw = 1
        for _ in range(self.m):
            out += ((-(a // pw % self.p)) % self.p) * pw
            pw *= self.p
        return out

    def mul_arr(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        exp, log = self._exp_log()
        prod = exp[(log[a] + log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, prod)

    def inv_arr(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise DivisionByZero("inverse of 0")
        exp, log = self._exp_log()
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    # -- tables ------------------------------------------------------------

    def primitive_element(self) -> int:
        return int(self._exp_log()[0][1]) if self.q > 2 else 1

    def _exp_log(self):
        t = self._tables
        if "exp" not in t:
            exp = self._build_exp()
            log = np.zeros(self.q, dtype=np.int64)
            log[exp[: self.q - 1]] = np.arange(self.q - 1)
            t["exp"], t["log"] = exp, log
        return t["exp"], t["log"]

    def _poly_pow(self, a: int, e: int) -> list[int]:
        f = list(self.modulus)
        base = self.digits(a)
        result = [1]
        while e:
            if e & 1:
                result = _poly_mod(_poly_mul(result, base, self.p), f, self.p)
            base = _poly_mod(_poly_mul(base, base, self.p), f, self.p)
            e >>= 1
        return result

    def _is_generator(self, g: int) -> bool:
        n = self.q - 1
        for r in prime_factors(n):
            if self.m == 1:
                if pow(g, n // r, self.p) == 1:
                    return False
            elif self._poly_pow(g, n // r) == [1]:
                return False
        return True

    def _mul_matrix(self, c: int) -> np.ndarray:
        """Matrix of x -> c*x acting on little-endian digit vectors."""
        f = list(self.modulus)
        cd = self.digits(c)
        cols = []
        for i in range(self.m):
            prod = _poly_mod(_poly_mul(cd, [0] * i + [1], self.p), f, self.p)
            cols.append(prod + [0] * (self.m - len(prod)))
        return np.array(cols, dtype=np.int64).T

    def _build_exp(self) -> np.ndarray:
        n = self.q - 1
        g = next(x for x in range(1, self.q) if self._is_generator(x))
        if self.m == 1:
            exp = np.empty(n, dtype=np.int64)
            v = 1
            for i in range(n):
                exp[i] = v
                v = v * g % self.p
            return np.concatenate([exp, exp])
        weights = self.p ** np.arange(self.m, dtype=np.int64)
        digits = np.zeros((1, self.m), dtype=np.int64)
        digits[0, 0] = 1
        step = g  # g ** len(digits)
        while len(digits) < n:
            mat = self._mul_matrix(step)
            digits = np.vstack([digits, digits @ mat.T % self.p])
            step = self._scalar_square(step)
        exp = digits[:n] @ weights
        return np.concatenate([exp, exp])

    def _scalar_square(self, a: int) -> int:
        sq = _poly_mod(_poly_mul(self.digits(a), self.digits(a), self.p),
                       list(self.modulus), self.p)
        return self.from_digits(sq + [0] * (self.m - len(sq)))

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(self, value % self.q)


def field_new(p: int, m: int = 1, cap: int = FIELD_CAP) -> FieldSpec:
    """GF(p^m) with the lexicographically smallest monic irreducible modulus."""
    if not is_prime(p):
        raise NotPrime(p)
    if m < 1:
        raise ValueError("m must be >= 1")
    q = p ** m
    if q > cap:
        raise FieldTooLarge(f"q = {q} exceeds cap {cap}")
    modulus = (0, 1) if m == 1 else _smallest_irreducible(p, m)
    return FieldSpec(p, m, q, modulus)


def field_of_order(q: int, cap: int = FIELD_CAP) -> FieldSpec:
    pm = prime_power(q)
    if pm is None:
        raise NotPrime(q, f"{q} is not a prime power")
    return field_new(*pm, cap=cap)


def arith(spec: FieldSpec, op: str, a: int, b: int | None = None) -> int:
    """Dispatch ``op`` in {add, sub, mul, inv, pow} on raw encodings."""
    if op == "inv":
        return spec.inv(a)
    if op == "pow":
        return spec.pow(a, b)
    if op in ("add", "sub", "mul"):
        return getattr(spec, op)(a, b)
    raise ValueError(f"unknown op {op!r}")


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    def __post_init__(self):
        if not 0 <= self.value < self.spec.q:
            raise ValueError(f"{self.value} not in [0, {self.spec.q})")

    def _wrap(self, v):
        return FieldElement(self.spec, v)

    def _other(self, o):
        return o.value if isinstance(o, FieldElement) else o % self.spec.q

    def __add__(self, o):
        return self._wrap(self.spec.add(self.value, self._other(o)))

    def __sub__(self, o):
        return self._wrap(self.spec.sub(self.value, self._other(o)))

    def __mul__(self, o):
        return self._wrap(self.spec.mul(self.value, self._other(o)))

    def __truediv__(self, o):
        return self._wrap(self.spec.div(self.value, self._other(o)))

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return self._wrap(self.spec.sub(self._other(o), self.value))

    def __rtruediv__(self, o):
        return self._wrap(self.spec.div(self._other(o), self.value))

    def __pow__(self, e: int):
        return self._wrap(self.spec.pow(self.value, e))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def inverse(self):
        return self._wrap(self.spec.inv(self.value))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.spec.q})({self.value})"
