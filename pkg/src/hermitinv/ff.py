"""Exact arithmetic in F_{p^m} on base-p integer encodings.

An element of F_{p^m} = F_p[T]/(f) is stored as the integer
``c_0 + c_1 p + ... + c_{m-1} p^{m-1}`` of its residue coefficients.  Fields
of order up to ``TABLE_LIMIT`` get exp/log (and, for odd p, Zech) tables so
that scalar and vectorised operations are table lookups; larger fields fall
back to digit arithmetic.
"""
from __future__ import annotations

import functools
import itertools
import logging
import operator
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    BadParameters,
    BadSubfieldDegree,
    DegreeTooLarge,
    DivisionByZero,
    FieldMismatch,
    FieldTooSmall,
    NoIrreducibleFound,
    NonPrimeP,
)

LOGGER = logging.getLogger(__name__)

TABLE_LIMIT = 1 << 20
MAX_FIELD_BITS = 64
RNG_ALGORITHM = "numpy.PCG64"
_TABLE_BLOCK = 4096
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for small in _MR_BASES:
        if n % small == 0:
            return n == small
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors by trial division (small n only)."""
    factors: List[int] = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        factors.append(n)
    return factors


def split_prime_power(q: int) -> Tuple[int, int]:
    """Return (p, h) with q = p^h."""
    if q < 2:
        raise NonPrimeP(f"q={q} is not a prime power")
    for p in prime_factors(q)[:1]:
        h, rest = 0, q
        while rest % p == 0:
            rest //= p
            h += 1
        if rest == 1:
            return p, h
    raise NonPrimeP(f"q={q} is not a prime power")


# -- polynomials over F_p as coefficient lists (low to high) ----------------

def _ptrim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _ptrim(out)


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo the monic polynomial f."""
    out = list(a)
    n = len(f) - 1
    for i in range(len(out) - 1, n - 1, -1):
        c = out[i]
        if c:
            for j in range(n + 1):
                out[i - n + j] = (out[i - n + j] - c * f[j]) % p
    return _ptrim(out[:n] if len(out) > n else out)


def _pgcd(a: List[int], b: List[int], p: int) -> List[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        monic = [c * inv % p for c in b]
        a, b = b, _pmod(a, monic, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if f[0] == 0:
        return False
    # T^{p^k} mod f by k successive p-th powers
    frob: Dict[int, List[int]] = {}
    current: List[int] = [0, 1]
    for k in range(1, m + 1):
        current = _pmod(_ppow(current, p, f, p), f, p)
        frob[k] = current
    if _ptrim(list(frob[m])) != [0, 1]:
        return False
    for r in prime_factors(m):
        diff = list(frob[m // r]) + [0] * max(0, 2 - len(frob[m // r]))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(list(f), _ptrim(diff), p)) > 1:
            return False
    return True


def _ppow(a: List[int], e: int, f: Sequence[int], p: int) -> List[int]:
    result: List[int] = [1]
    base = list(a)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


# -- field specification ------------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """F_{p^m} with a distinguished q = p^h."""

    p: int
    h: int
    m: int
    modulus: Tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.h

    @property
    def order(self) -> int:
        return self.p ** self.m

    @cached_property
    def kernel(self) -> "FieldKernel":
        return FieldKernel(self)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    def element(self, value: int) -> "FieldElement":
        return FieldElement(self, value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        if len(coeffs) > self.m:
            raise BadParameters(f"{len(coeffs)} coefficients for degree {self.m}")
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + (c % self.p)
        return FieldElement(self, value)

    def elements(self) -> Iterator["FieldElement"]:
        for value in range(self.order):
            yield FieldElement(self, value)

    def contains_fq2(self) -> bool:
        return self.m % (2 * self.h) == 0

    def require_fq2(self) -> None:
        if not self.contains_fq2():
            raise FieldTooSmall(
                f"F_{self.p}^{self.m} does not contain F_q^2 for q={self.q} (2h={2 * self.h} does not divide m)"
            )

    def to_dict(self) -> Dict[str, object]:
        return {"p": self.p, "h": self.h, "m": self.m, "modulus": list(self.modulus)}

    def __repr__(self) -> str:
        return f"FieldSpec(p={self.p}, h={self.h}, m={self.m})"


@functools.lru_cache(maxsize=None)
def field_create(p: int, h: int, m: int) -> FieldSpec:
    """Field with the least monic irreducible modulus of degree m.

    Candidates are ordered by the base-p integer value of their non-leading
    coefficients, so T^{m-1} is the most significant position.
    """
    if not is_prime(p):
        raise NonPrimeP(f"p={p} is not prime")
    if h < 1 or m < 1:
        raise BadParameters(f"h={h} and m={m} must be positive")
    if p ** m > 1 << MAX_FIELD_BITS:
        raise DegreeTooLarge(f"p^m = {p}^{m} exceeds {MAX_FIELD_BITS} bits")
    for value in range(p ** m):
        low = []
        rest = value
        for _ in range(m):
            rest, c = divmod(rest, p)
            low.append(c)
        candidate = tuple(low) + (1,)
        if is_irreducible(candidate, p):
            LOGGER.debug("F_%d^%d modulus %s", p, m, candidate)
            return FieldSpec(p, h, m, candidate)
    raise NoIrreducibleFound(f"no irreducible of degree {m} over F_{p}")


def field_from_modulus(p: int, h: int, modulus: Sequence[int]) -> FieldSpec:
    """Field with an explicitly chosen modulus (low to high, monic)."""
    if not is_prime(p):
        raise NonPrimeP(f"p={p} is not prime")
    modulus = tuple(int(c) % p for c in modulus)
    if not modulus or modulus[-1] != 1 or not is_irreducible(modulus, p):
        raise BadParameters(f"{modulus} is not a monic irreducible over F_{p}")
    return FieldSpec(p, h, len(modulus) - 1, modulus)


def _matpow_mod(mat: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(mat.shape[0], dtype=np.int64)
    base = mat.copy()
    while e:
        if e & 1:
            result = result @ base % p
        base = base @ base % p
        e >>= 1
    return result


class FieldKernel:
    """Arithmetic on the integer encodings of one field.

    The bound attributes ``add``, ``sub``, ``neg``, ``mul`` are chosen once per
    field so hot loops can fetch them into locals.
    """

    def __init__(self, spec: FieldSpec) -> None:
        self.spec = spec
        self.p = spec.p
        self.m = spec.m
        self.q = spec.q
        self.order = spec.order
        self.n1 = self.order - 1
        self._mod_low = list(spec.modulus[:-1])
        self._mod_int = sum(c << i for i, c in enumerate(spec.modulus)) if self.p == 2 else 0
        self._powers = [self.p ** i for i in range(self.m)]
        self.tabulated = self.order <= TABLE_LIMIT
        self.dtype = np.int64 if self.tabulated else object
        self.generator: Optional[int] = None
        if self.tabulated:
            self._build_tables()
            self.mul = self._mul_log
            self.inv = self._inv_log
            self.pow = self._pow_log
        else:
            self.mul = self._mul_slow
            self.inv = self._inv_slow
            self.pow = self._pow_slow
        if self.p == 2:
            self.add = operator.xor
            self.sub = operator.xor
            self.neg = _identity
        elif self.tabulated:
            self.add = self._add_zech
            self.sub = self._sub_zech
            self.neg = self._neg_log
        else:
            self.add = self._add_digits
            self.sub = self._sub_digits
            self.neg = self._neg_digits

    # -- digits -----------------------------------------------------------
    def digits(self, a: int) -> List[int]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def undigits(self, digits: Sequence[int]) -> int:
        value = 0
        p = self.p
        for c in reversed(digits):
            value = value * p + int(c) % p
        return value

    def _add_digits(self, a: int, b: int) -> int:
        p = self.p
        return self.undigits([(x + y) % p for x, y in zip(self.digits(a), self.digits(b))])

    def _neg_digits(self, a: int) -> int:
        p = self.p
        return self.undigits([(-x) % p for x in self.digits(a)])

    def _sub_digits(self, a: int, b: int) -> int:
        return self._add_digits(a, self._neg_digits(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        m = self.m
        if self.p == 2:
            r = 0
            while b:
                if b & 1:
                    r ^= a
                b >>= 1
                a <<= 1
            mod = self._mod_int
            for i in range(r.bit_length() - 1, m - 1, -1):
                if (r >> i) & 1:
                    r ^= mod << (i - m)
            return r
        p = self.p
        prod = [0] * (2 * m - 1)
        da, db = self.digits(a), self.digits(b)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        low = self._mod_low
        for i in range(2 * m - 2, m - 1, -1):
            c = prod[i] % p
            if c:
                for j in range(m):
                    prod[i - m + j] -= c * low[j]
        return self.undigits([c % p for c in prod[:m]])

    def _pow_slow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        e %= self.n1
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _inv_slow(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._pow_slow(a, self.n1 - 1)

    # -- tables -----------------------------------------------------------
    def _find_generator(self) -> int:
        factors = prime_factors(self.n1) if self.n1 > 1 else []
        for g in range(1, self.order):
            if all(self._pow_slow(g, self.n1 // r) != 1 for r in factors):
                return g
        raise NoIrreducibleFound(f"no primitive element in {self.spec}")

    def _build_tables(self) -> None:
        p, m, n1 = self.p, self.m, self.n1
        g = self._find_generator()
        self.generator = g
        # powers g^k as digit columns, advanced one block at a time
        mult = np.array(
            [self.digits(self._mul_slow(g, self._powers[i])) for i in range(m)], dtype=np.int64
        ).T
        weights = np.array(self._powers, dtype=np.int64)
        block = max(1, min(n1, _TABLE_BLOCK))
        cols = np.zeros((m, block), dtype=np.int64)
        vec = np.zeros(m, dtype=np.int64)
        vec[0] = 1
        for j in range(block):
            cols[:, j] = vec
            vec = mult @ vec % p
        step = _matpow_mod(mult, block, p)
        exp = np.empty(n1, dtype=np.int64)
        start = 0
        while start < n1:
            count = min(block, n1 - start)
            exp[start:start + count] = weights @ cols[:, :count]
            cols = step @ cols % p
            start += block
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n1, dtype=np.int64)
        self.exp_np = np.concatenate([exp, exp])
        self.log_np = log
        self._exp = self.exp_np.tolist()
        self._log = log.tolist()
        self._half = n1 // 2
        if p != 2:
            one_plus = exp - exp % p + (exp % p + 1) % p
            zech = np.where(one_plus == 0, -1, log[one_plus])
            self.zech_np = zech
            self._zech = zech.tolist()
        LOGGER.debug("Built tables for %s (generator %d)", self.spec, g)

    def _mul_log(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        log = self._log
        return self._exp[log[a] + log[b]]

    def _inv_log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._exp[self.n1 - self._log[a]]

    def _pow_log(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[self._log[a] * e % self.n1]

    def _add_zech(self, a: int, b: int) -> int:
        if not a:
            return b
        if not b:
            return a
        log = self._log
        la = log[a]
        z = self._zech[(log[b] - la) % self.n1]
        if z < 0:
            return 0
        return self._exp[la + z]

    def _neg_log(self, a: int) -> int:
        return self._exp[self._log[a] + self._half] if a else 0

    def _sub_zech(self, a: int, b: int) -> int:
        return self._add_zech(a, self._neg_log(b)) if b else a

    # -- derived scalar ops -------------------------------------------------
    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, k: int = 1) -> int:
        """a^{q^k}."""
        return self.pow(a, self.q ** k)

    def from_int(self, n: int) -> int:
        """Encoding of the prime-field integer n."""
        return n % self.p

    # -- vectorised ops on numpy arrays -----------------------------------
    def array(self, values: Sequence[int]) -> np.ndarray:
        return np.array(list(values), dtype=self.dtype)

    def zeros(self, n: int) -> np.ndarray:
        return np.zeros(n, dtype=self.dtype) if self.tabulated else np.array([0] * n, dtype=object)

    def vadd(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if not self.tabulated:
            return np.array([self.add(int(x), int(y)) for x, y in zip(a, b)], dtype=object)
        out = np.where(a == 0, b, a)
        both = (a != 0) & (b != 0)
        if both.any():
            la = self.log_np[a[both]]
            z = self.zech_np[(self.log_np[b[both]] - la) % self.n1]
            out[both] = np.where(z < 0, 0, self.exp_np[la + np.maximum(z, 0)])
        return out

    def vneg(self, a: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return a.copy()
        if not self.tabulated:
            return np.array([self.neg(int(x)) for x in a], dtype=object)
        return np.where(a == 0, 0, self.exp_np[self.log_np[a] + self._half])

    def vsub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.p == 2:
            return np.bitwise_xor(a, b)
        return self.vadd(a, self.vneg(b))

    def vscale(self, a: np.ndarray, c: int) -> np.ndarray:
        if c == 0:
            return self.zeros(len(a))
        if c == 1:
            return a.copy()
        if not self.tabulated:
            return np.array([self.mul(int(x), c) for x in a], dtype=object)
        return np.where(a == 0, 0, self.exp_np[self.log_np[a] + self._log[c]])

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if not self.tabulated:
            return np.array([self.mul(int(x), int(y)) for x, y in zip(a, b)], dtype=object)
        zero = (a == 0) | (b == 0)
        return np.where(zero, 0, self.exp_np[self.log_np[a] + self.log_np[b]])

    def vpow(self, a: np.ndarray, e: int) -> np.ndarray:
        if not self.tabulated:
            return np.array([self.pow(int(x), e) for x in a], dtype=object)
        if e == 0:
            return np.ones(len(a), dtype=np.int64)
        reduced = e % self.n1
        return np.where(a == 0, 0, self.exp_np[self.log_np[a] * reduced % self.n1])


def _identity(a: int) -> int:
    return a


# -- elements -----------------------------------------------------------------

Operand = Union["FieldElement", int]


class FieldElement:
    """Immutable element of a FieldSpec.  Plain ints act as prime-field integers."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int) -> None:
        value = int(value)
        if not 0 <= value < spec.order:
            raise BadParameters(f"{value} is not an element encoding of {spec}")
        self.spec = spec
        self.value = value

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(self.spec.kernel.digits(self.value))

    def _raw(self, other: Operand) -> int:
        if isinstance(other, FieldElement):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatch(f"{other.spec} vs {self.spec}")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other) % self.spec.p
        return NotImplemented  # type: ignore[return-value]

    def _wrap(self, value: int) -> "FieldElement":
        out = FieldElement.__new__(FieldElement)
        out.spec = self.spec
        out.value = value
        return out

    def __add__(self, other: Operand) -> "FieldElement":
        return self._wrap(self.spec.kernel.add(self.value, self._raw(other)))

    __radd__ = __add__

    def __sub__(self, other: Operand) -> "FieldElement":
        return self._wrap(self.spec.kernel.sub(self.value, self._raw(other)))

    def __rsub__(self, other: Operand) -> "FieldElement":
        return self._wrap(self.spec.kernel.sub(self._raw(other), self.value))

    def __neg__(self) -> "FieldElement":
        return self._wrap(self.spec.kernel.neg(self.value))

    def __mul__(self, other: Operand) -> "FieldElement":
        return self._wrap(self.spec.kernel.mul(self.value, self._raw(other)))

    __rmul__ = __mul__

    def __truediv__(self, other: Operand) -> "FieldElement":
        return self._wrap(self.spec.kernel.div(self.value, self._raw(other)))

    def __rtruediv__(self, other: Operand) -> "FieldElement":
        return self._wrap(self.spec.kernel.div(self._raw(other), self.value))

    def __pow__(self, e: int) -> "FieldElement":
        if e < 0:
            return self._wrap(self.spec.kernel.pow(self.spec.kernel.inv(self.value), -e))
        return self._wrap(self.spec.kernel.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return self._wrap(self.spec.kernel.inv(self.value))

    def frob_q(self, k: int = 1) -> "FieldElement":
        return self._wrap(self.spec.kernel.frob(self.value, k))

    def norm_tilde(self) -> "FieldElement":
        return self._wrap(self.spec.kernel.pow(self.value, self.spec.q + 1))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.value == other.value and (other.spec is self.spec or other.spec == self.spec)
        if isinstance(other, int):
            return self.value == other % self.spec.p and (self.value < self.spec.p)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.m, self.value))

    def __int__(self) -> int:
        return self.value

    def __lt__(self, other: "FieldElement") -> bool:
        return self.value < other.value

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"FieldElement({self.value} in F_{self.spec.p}^{self.spec.m})"


# -- module-level operations ----------------------------------------------------

_ARITH_OPS = ("add", "sub", "mul", "div", "pow")


def arith(a: FieldElement, b: Union[FieldElement, int], op: str) -> FieldElement:
    """Binary field operation; for ``pow`` b is a nonnegative integer exponent."""
    if op not in _ARITH_OPS:
        raise BadParameters(f"unknown op {op!r}")
    if op == "pow":
        if isinstance(b, FieldElement) or b < 0 or int(b).bit_length() > 128:
            raise BadParameters("pow expects a nonnegative exponent below 2^128")
        return a ** int(b)
    if not isinstance(b, FieldElement):
        raise BadParameters(f"{op} expects two field elements")
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    return a / b


def frob_q(a: FieldElement, k: int) -> FieldElement:
    """a^{q^k}."""
    return a.frob_q(k)


def norm_tilde(a: FieldElement) -> FieldElement:
    """a^{q+1}; the norm F_{q^2} -> F_q on F_{q^2}."""
    return a.norm_tilde()


def _rref_mod_p(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int], np.ndarray]:
    """Row reduction over F_p; returns (rref, pivot columns, T) with T @ matrix = rref."""
    rows, cols = matrix.shape
    dtype = np.int64 if p < (1 << 30) else object
    a = np.array(matrix, dtype=dtype) % p
    t = np.array([[int(i == j) for j in range(rows)] for i in range(rows)], dtype=dtype)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = [i for i in range(r, rows) if a[i, c] % p]
        if not nonzero:
            continue
        i = nonzero[0]
        if i != r:
            a[[r, i]] = a[[i, r]]
            t[[r, i]] = t[[i, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = a[r] * inv % p
        t[r] = t[r] * inv % p
        for i2 in range(rows):
            f = int(a[i2, c])
            if i2 != r and f:
                a[i2] = (a[i2] - f * a[r]) % p
                t[i2] = (t[i2] - f * t[r]) % p
        pivots.append(c)
        r += 1
    return a, pivots, t


class _LinearSolver:
    """Solve L(y) = c for an F_p-linear map L of F_{p^m}."""

    def __init__(self, kernel: FieldKernel, columns: List[List[int]]) -> None:
        self.kernel = kernel
        p = kernel.p
        matrix = np.array(columns, dtype=np.int64 if p < (1 << 30) else object).T
        rref, pivots, transform = _rref_mod_p(matrix, p)
        self.p = p
        self.pivots = pivots
        self.rank = len(pivots)
        self.transform = transform
        free = [c for c in range(kernel.m) if c not in pivots]
        basis = []
        for f in free:
            vec = [0] * kernel.m
            vec[f] = 1
            for i, col in enumerate(pivots):
                vec[col] = (-int(rref[i, f])) % p
            basis.append(vec)
        values = []
        for combo in itertools.product(range(p), repeat=len(basis)):
            digits = [0] * kernel.m
            for coeff, vec in zip(combo, basis):
                if coeff:
                    digits = [(d + coeff * v) % p for d, v in zip(digits, vec)]
            values.append(kernel.undigits(digits))
        self.kernel_values = tuple(sorted(values))

    def solve(self, c: int) -> Tuple[int, ...]:
        k = self.kernel
        rhs = np.array(k.digits(c), dtype=self.transform.dtype)
        d = self.transform @ rhs % self.p
        if any(int(v) for v in d[self.rank:]):
            return ()
        digits = [0] * k.m
        for i, col in enumerate(self.pivots):
            digits[col] = int(d[i])
        y0 = k.undigits(digits)
        add = k.add
        return tuple(sorted(add(y0, z) for z in self.kernel_values))

    def solve_many(self, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Vectorised solve on tabulated fields: (solvable mask, one particular solution each)."""
        p = self.p
        powers = np.array(self.kernel._powers, dtype=np.int64)
        digits = (np.asarray(values, dtype=np.int64)[:, None] // powers[None, :]) % p
        d = digits @ self.transform.T.astype(np.int64) % p
        ok = ~np.any(d[:, self.rank:] != 0, axis=1)
        sol = np.zeros_like(digits)
        for i, col in enumerate(self.pivots):
            sol[:, col] = d[:, i]
        return ok, sol @ powers


@functools.lru_cache(maxsize=None)
def _affine_solver(spec: FieldSpec) -> _LinearSolver:
    k = spec.kernel
    columns = [k.digits(k.add(k.pow(t, spec.q), t)) for t in k._powers]
    return _LinearSolver(k, columns)


@functools.lru_cache(maxsize=None)
def _subfield_solver(spec: FieldSpec, d: int) -> _LinearSolver:
    k = spec.kernel
    e = spec.p ** d
    columns = [k.digits(k.sub(k.pow(t, e), t)) for t in k._powers]
    return _LinearSolver(k, columns)


def solve_affine_raw(spec: FieldSpec, c: int) -> Tuple[int, ...]:
    """All y with y^q + y = c, as sorted encodings."""
    spec.require_fq2()
    return _affine_solver(spec).solve(c)


def solve_affine_many(spec: FieldSpec, values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Solvability mask and particular solutions of y^q + y = c for an array of c."""
    spec.require_fq2()
    return _affine_solver(spec).solve_many(values)


def solve_affine_q(c: FieldElement) -> Tuple[FieldElement, ...]:
    """Solution set of y^q + y = c in the ambient field (empty or of size q), sorted."""
    return tuple(FieldElement(c.spec, v) for v in solve_affine_raw(c.spec, c.value))


def trace_kernel(spec: FieldSpec) -> Tuple[int, ...]:
    """The q encodings b with b^q + b = 0."""
    spec.require_fq2()
    return _affine_solver(spec).kernel_values


def _check_subfield_degree(spec: FieldSpec, d: int) -> None:
    if d < 1 or spec.m % d:
        raise BadSubfieldDegree(f"d={d} does not divide m={spec.m}")


def in_subfield(a: FieldElement, d: int) -> bool:
    """True iff a lies in F_{p^d}."""
    _check_subfield_degree(a.spec, d)
    return a.spec.kernel.pow(a.value, a.spec.p ** d) == a.value


def subfield_elements(spec: FieldSpec, d: int) -> Tuple[int, ...]:
    """Encodings of the p^d elements of F_{p^d} inside the ambient field."""
    _check_subfield_degree(spec, d)
    return _subfield_solver(spec, d).kernel_values


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_raw(spec: FieldSpec, rng: np.random.Generator) -> int:
    if spec.order <= (1 << 62):
        return int(rng.integers(0, spec.order))
    digits = rng.integers(0, spec.p, size=spec.m)
    return spec.kernel.undigits([int(d) for d in digits])


def random_element(spec: FieldSpec, rng: np.random.Generator) -> FieldElement:
    return FieldElement(spec, random_raw(spec, rng))
