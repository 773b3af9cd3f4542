"""Exact polynomials over a FieldSpec.

Three layouts are used:

* ``UniPoly``: dense univariate coefficients in a numpy array (low to high),
  the workhorse for gcds, degree censuses and root scans.
* ``Polynomial``: sparse multivariate terms keyed by packed exponent
  integers; the lex order of the variables is the integer order of the keys.
* ``CurveResidue``: dense residues modulo ``y^q + y - x^{q+1}``, stored as q
  univariate rows in x.
"""
from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import (
    BadParameters,
    DegreeZeroInVar,
    DivisionByZero,
    FieldMismatch,
    NotDivisible,
    ZeroDenominator,
    ZeroPolynomial,
)
from .ff import FieldElement, FieldSpec

LOGGER = logging.getLogger(__name__)

XY = ("x", "y")


def _check_spec(a: FieldSpec, b: FieldSpec) -> None:
    if a is not b and a != b:
        raise FieldMismatch(f"{a} vs {b}")


def _scalar(spec: FieldSpec, value: Union[int, FieldElement]) -> int:
    """Encoding of a field element or of a prime-field integer."""
    if isinstance(value, FieldElement):
        _check_spec(spec, value.spec)
        return value.value
    return int(value) % spec.p


def _encoding(spec: FieldSpec, value: Union[int, FieldElement]) -> int:
    """Like _scalar, but plain ints are already encodings."""
    if isinstance(value, FieldElement):
        _check_spec(spec, value.spec)
        return value.value
    return int(value)


# -- dense univariate -----------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: Union[Sequence[int], np.ndarray]) -> None:
        k = spec.kernel
        arr = coeffs if isinstance(coeffs, np.ndarray) and coeffs.dtype == k.dtype else k.array(coeffs)
        nz = np.flatnonzero(arr)
        self.spec = spec
        self.coeffs = arr[: nz[-1] + 1] if nz.size else arr[:0]

    @classmethod
    def zero(cls, spec: FieldSpec) -> "UniPoly":
        return cls(spec, spec.kernel.zeros(0))

    @classmethod
    def constant(cls, spec: FieldSpec, c: Union[int, FieldElement]) -> "UniPoly":
        return cls(spec, [_scalar(spec, c)])

    @classmethod
    def monomial(cls, spec: FieldSpec, n: int, c: Union[int, FieldElement] = 1) -> "UniPoly":
        arr = spec.kernel.zeros(n + 1)
        arr[n] = _scalar(spec, c)
        return cls(spec, arr)

    @classmethod
    def from_terms(cls, spec: FieldSpec, terms: Mapping[int, int]) -> "UniPoly":
        """Sum of c*x^n over the mapping; repeated exponents never occur in a mapping."""
        if not terms:
            return cls.zero(spec)
        arr = spec.kernel.zeros(max(terms) + 1)
        for n, c in terms.items():
            arr[n] = c
        return cls(spec, arr)

    @classmethod
    def signed_sum(cls, spec: FieldSpec, terms: Sequence[Tuple[int, int]]) -> "UniPoly":
        """Sum of sign*x^n for (n, sign) pairs; exponents may repeat."""
        k = spec.kernel
        acc: Dict[int, int] = {}
        for n, sign in terms:
            c = k.from_int(sign)
            acc[n] = k.add(acc.get(n, 0), c)
        return cls.from_terms(spec, acc)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def leading(self) -> int:
        return int(self.coeffs[-1]) if len(self.coeffs) else 0

    def coefficient(self, n: int) -> int:
        return int(self.coeffs[n]) if 0 <= n < len(self.coeffs) else 0

    def is_prime_field(self) -> bool:
        """All coefficients in F_p (their encodings are then plain residues)."""
        return self.spec.kernel.tabulated and (len(self.coeffs) == 0 or int(self.coeffs.max()) < self.spec.p)

    def over(self, spec: FieldSpec) -> "UniPoly":
        """The same F_p-polynomial in another field of characteristic p."""
        if spec.p != self.spec.p or not self.is_prime_field():
            raise FieldMismatch(f"cannot move {self!r} to {spec!r}")
        return UniPoly(spec, spec.kernel.array(self.coeffs.tolist()))

    def _same(self, other: "UniPoly") -> None:
        _check_spec(self.spec, other.spec)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] = self.spec.kernel.vadd(a[: len(b)], b)
        return UniPoly(self.spec, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.spec, self.spec.kernel.vneg(self.coeffs))

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def scale(self, c: Union[int, FieldElement]) -> "UniPoly":
        """Multiply by a constant given as FieldElement or raw encoding."""
        return UniPoly(self.spec, self.spec.kernel.vscale(self.coeffs, _encoding(self.spec, c)))

    def shift(self, n: int) -> "UniPoly":
        """Multiply by x^n."""
        if self.is_zero() or n == 0:
            return self
        return UniPoly(self.spec, np.concatenate([self.spec.kernel.zeros(n), self.coeffs]))

    def __mul__(self, other: Union["UniPoly", int, FieldElement]) -> "UniPoly":
        if not isinstance(other, UniPoly):
            return self.scale(_scalar(self.spec, other))
        self._same(other)
        k = self.spec.kernel
        a, b = self.coeffs, other.coeffs
        if len(a) == 0 or len(b) == 0:
            return UniPoly.zero(self.spec)
        if self.is_prime_field() and other.is_prime_field():
            return UniPoly(self.spec, np.convolve(a, b) % self.spec.p)
        if np.count_nonzero(a) > np.count_nonzero(b):
            a, b = b, a
        out = k.zeros(len(a) + len(b) - 1)
        n = len(b)
        for i in np.flatnonzero(a):
            out[i:i + n] = k.vadd(out[i:i + n], k.vscale(b, int(a[i])))
        return UniPoly(self.spec, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        result = UniPoly.constant(self.spec, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def frobenius(self, k: int = 1) -> "UniPoly":
        """The (q^k)-th power, computed coefficientwise."""
        if self.is_zero():
            return self
        e = self.spec.q ** k
        kern = self.spec.kernel
        out = kern.zeros(self.degree * e + 1)
        out[::e] = kern.vpow(self.coeffs, e)
        return UniPoly(self.spec, out)

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        self._same(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        k = self.spec.kernel
        n = other.degree
        if self.degree < n:
            return UniPoly.zero(self.spec), self
        r = self.coeffs.copy()
        quot = k.zeros(self.degree - n + 1)
        lc_inv = k.inv(other.leading)
        b = other.coeffs
        for i in range(len(r) - 1, n - 1, -1):
            c = int(r[i])
            if c:
                f = k.mul(c, lc_inv)
                quot[i - n] = f
                r[i - n:i + 1] = k.vsub(r[i - n:i + 1], k.vscale(b, f))
        return UniPoly(self.spec, quot), UniPoly(self.spec, r[:n])

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "UniPoly") -> "UniPoly":
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise NotDivisible("univariate division left a remainder")
        return quot

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.spec.kernel.inv(self.leading))

    def evaluate(self, a: Union[int, FieldElement]) -> int:
        k = self.spec.kernel
        a = _scalar(self.spec, a) if isinstance(a, FieldElement) else int(a)
        mul, add = k.mul, k.add
        acc = 0
        for c in reversed(self.coeffs.tolist()):
            acc = add(mul(acc, a), c)
        return acc

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Horner evaluation at every entry of ``points``."""
        k = self.spec.kernel
        acc = k.zeros(len(points))
        for c in reversed(self.coeffs.tolist()):
            acc = k.vmul(acc, points)
            if c:
                acc = k.vadd(acc, np.full(len(points), c, dtype=k.dtype))
        return acc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.spec.p, self.spec.m, tuple(self.coeffs.tolist())))

    def to_polynomial(self, variables: Sequence[str] = XY, var: str = "x") -> "Polynomial":
        shift = _slot_shift(tuple(variables), var)
        terms = {int(i) << shift: int(self.coeffs[i]) for i in np.flatnonzero(self.coeffs)}
        return Polynomial(self.spec, variables, terms)

    def to_text(self, var: str = "x") -> str:
        return self.to_polynomial((var,), var).to_text()

    def __repr__(self) -> str:
        return f"UniPoly(deg={self.degree}, {self.spec!r})"


def gcd_uni(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd by Euclid; gcd(f, 0) is f made monic."""
    _check_spec(f.spec, g.spec)
    a, b = f, g
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


# -- sparse multivariate ----------------------------------------------------------

_SLOT = 40
_MASK = (1 << _SLOT) - 1


def _slot_shift(variables: Tuple[str, ...], var: str) -> int:
    try:
        index = variables.index(var)
    except ValueError:
        raise BadParameters(f"variable {var!r} not in {variables}") from None
    return _SLOT * (len(variables) - 1 - index)


def _pack(exponents: Sequence[int]) -> int:
    key = 0
    for e in exponents:
        if not 0 <= e <= _MASK:
            raise BadParameters(f"exponent {e} out of range")
        key = (key << _SLOT) | e
    return key


def _unpack(key: int, nvars: int) -> Tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & _MASK
        key >>= _SLOT
    return tuple(out)


class Polynomial:
    """Sparse polynomial in named variables over a FieldSpec.

    Terms map a packed exponent key to a nonzero coefficient encoding.  Plain
    ints in arithmetic are prime-field constants.
    """

    __slots__ = ("spec", "variables", "terms")

    def __init__(
        self,
        spec: FieldSpec,
        variables: Sequence[str],
        terms: Optional[Mapping[int, int]] = None,
    ) -> None:
        self.spec = spec
        self.variables = tuple(variables)
        self.terms: Dict[int, int] = {k: c for k, c in (terms or {}).items() if c}

    # -- constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, spec: FieldSpec, variables: Sequence[str] = XY) -> "Polynomial":
        return cls(spec, variables)

    @classmethod
    def constant(cls, spec: FieldSpec, c: Union[int, FieldElement], variables: Sequence[str] = XY) -> "Polynomial":
        return cls(spec, variables, {0: _scalar(spec, c)})

    @classmethod
    def variable(cls, spec: FieldSpec, name: str, variables: Sequence[str] = XY) -> "Polynomial":
        return cls(spec, variables, {1 << _slot_shift(tuple(variables), name): 1})

    @classmethod
    def monomial(
        cls,
        spec: FieldSpec,
        exponents: Mapping[str, int],
        c: Union[int, FieldElement] = 1,
        variables: Sequence[str] = XY,
    ) -> "Polynomial":
        variables = tuple(variables)
        key = _pack([exponents.get(v, 0) for v in variables])
        return cls(spec, variables, {key: _scalar(spec, c)})

    @classmethod
    def from_terms(
        cls,
        spec: FieldSpec,
        terms: Mapping[Tuple[int, ...], Union[int, FieldElement]],
        variables: Sequence[str] = XY,
    ) -> "Polynomial":
        return cls(spec, variables, {_pack(e): _scalar(spec, c) for e, c in terms.items()})

    # -- inspection -------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def constant_value(self) -> int:
        return self.terms.get(0, 0)

    def monomials(self) -> Iterator[Tuple[Tuple[int, ...], int]]:
        n = len(self.variables)
        for key in sorted(self.terms, reverse=True):
            yield _unpack(key, n), self.terms[key]

    def degree(self, var: str) -> int:
        if not self.terms:
            return -1
        shift = _slot_shift(self.variables, var)
        return max((key >> shift) & _MASK for key in self.terms)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        n = len(self.variables)
        return max(sum(_unpack(key, n)) for key in self.terms)

    def lex_leading(self) -> Tuple[Tuple[int, ...], int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        key = max(self.terms)
        return _unpack(key, len(self.variables)), self.terms[key]

    def __len__(self) -> int:
        return len(self.terms)

    def is_prime_field(self) -> bool:
        return all(c < self.spec.p for c in self.terms.values())

    def over(self, spec: FieldSpec) -> "Polynomial":
        """The same F_p-polynomial in another field of characteristic p."""
        if spec.p != self.spec.p or not self.is_prime_field():
            raise FieldMismatch(f"cannot move {self!r} to {spec!r}")
        return Polynomial(spec, self.variables, self.terms)

    # -- arithmetic ---------------------------------------------------------------
    def _coerce(self, other: Union["Polynomial", int, FieldElement]) -> "Polynomial":
        if isinstance(other, Polynomial):
            _check_spec(self.spec, other.spec)
            if other.variables != self.variables:
                raise BadParameters(f"variables {other.variables} vs {self.variables}")
            return other
        return Polynomial.constant(self.spec, other, self.variables)

    def __add__(self, other: Union["Polynomial", int, FieldElement]) -> "Polynomial":
        other = self._coerce(other)
        add = self.spec.kernel.add
        out = dict(self.terms)
        for key, c in other.terms.items():
            prev = out.get(key)
            out[key] = c if prev is None else add(prev, c)
        return Polynomial(self.spec, self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        neg = self.spec.kernel.neg
        return Polynomial(self.spec, self.variables, {k: neg(c) for k, c in self.terms.items()})

    def __sub__(self, other: Union["Polynomial", int, FieldElement]) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union[int, FieldElement]) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c: Union[int, FieldElement]) -> "Polynomial":
        """Multiply by a constant given as FieldElement or raw encoding."""
        c = _encoding(self.spec, c)
        mul = self.spec.kernel.mul
        return Polynomial(self.spec, self.variables, {k: mul(v, c) for k, v in self.terms.items()})

    def __mul__(self, other: Union["Polynomial", int, FieldElement]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(_scalar(self.spec, other))
        other = self._coerce(other)
        k = self.spec.kernel
        mul, add = k.mul, k.add
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: Dict[int, int] = {}
        get = out.get
        b_items = list(b.items())
        for ka, ca in a.items():
            for kb, cb in b_items:
                key = ka + kb
                c = mul(ca, cb)
                prev = get(key)
                out[key] = c if prev is None else add(prev, c)
        return Polynomial(self.spec, self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        result = Polynomial.constant(self.spec, 1, self.variables)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frobenius(self, k: int = 1) -> "Polynomial":
        """The (q^k)-th power: coefficients raised, exponents multiplied."""
        e = self.spec.q ** k
        pw = self.spec.kernel.pow
        return Polynomial(self.spec, self.variables, {key * e: pw(c, e) for key, c in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.spec == other.spec and self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.variables, frozenset(self.terms.items())))

    # -- structure -----------------------------------------------------------------
    def coefficients(self, var: str) -> Dict[int, "Polynomial"]:
        """Split into {d: coefficient of var^d}; coefficients keep all variables."""
        shift = _slot_shift(self.variables, var)
        parts: Dict[int, Dict[int, int]] = {}
        for key, c in self.terms.items():
            d = (key >> shift) & _MASK
            parts.setdefault(d, {})[key - (d << shift)] = c
        return {d: Polynomial(self.spec, self.variables, t) for d, t in parts.items()}

    def times_var(self, var: str, d: int) -> "Polynomial":
        if d == 0:
            return self
        offset = d << _slot_shift(self.variables, var)
        return Polynomial(self.spec, self.variables, {k + offset: c for k, c in self.terms.items()})

    def with_variables(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed in another variable tuple; dropped variables must not occur."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        n = len(self.variables)
        out: Dict[int, int] = {}
        for key, c in self.terms.items():
            exps = dict(zip(self.variables, _unpack(key, n)))
            for v, e in exps.items():
                if e and v not in variables:
                    raise BadParameters(f"variable {v!r} occurs but is dropped")
            out[_pack([exps.get(v, 0) for v in variables])] = c
        return Polynomial(self.spec, variables, out)

    def homogenize(self, var: str, degree: Optional[int] = None) -> "Polynomial":
        """Homogenize to ``degree`` (default: total degree) with a new last variable."""
        if var in self.variables:
            raise BadParameters(f"variable {var!r} already present")
        d = self.total_degree() if degree is None else degree
        n = len(self.variables)
        terms: Dict[int, int] = {}
        for key, c in self.terms.items():
            exps = _unpack(key, n)
            rest = d - sum(exps)
            if rest < 0:
                raise BadParameters(f"degree {d} is below the total degree")
            terms[_pack(exps + (rest,))] = c
        return Polynomial(self.spec, self.variables + (var,), terms)

    def evaluate(self, assignment: Mapping[str, Union[int, FieldElement]]) -> int:
        """Encoding of the value; plain ints in ``assignment`` are encodings."""
        k = self.spec.kernel
        mul, add, pw = k.mul, k.add, k.pow
        values = [_scalar(self.spec, assignment[v]) if isinstance(assignment[v], FieldElement) else int(assignment[v])
                  for v in self.variables]
        n = len(self.variables)
        acc = 0
        for key, c in self.terms.items():
            term = c
            for value, e in zip(values, _unpack(key, n)):
                if e:
                    term = mul(term, pw(value, e))
            acc = add(acc, term)
        return acc

    def substitute(self, mapping: Mapping[str, "Polynomial"], variables: Optional[Sequence[str]] = None) -> "Polynomial":
        """Replace each variable by a polynomial in ``variables``."""
        if variables is None:
            variables = next(iter(mapping.values())).variables
        variables = tuple(variables)
        n = len(self.variables)
        cache: Dict[Tuple[str, int], Polynomial] = {}

        def power(var: str, e: int) -> Polynomial:
            if (var, e) not in cache:
                cache[(var, e)] = mapping[var] ** e
            return cache[(var, e)]

        out = Polynomial.zero(self.spec, variables)
        for key, c in self.terms.items():
            term = Polynomial(self.spec, variables, {0: c})
            for var, e in zip(self.variables, _unpack(key, n)):
                if e:
                    term = term * power(var, e)
            out = out + term
        return out

    def to_unipoly(self, var: str) -> UniPoly:
        shift = _slot_shift(self.variables, var)
        terms: Dict[int, int] = {}
        for key, c in self.terms.items():
            d = key >> shift & _MASK
            if key != d << shift:
                raise BadParameters(f"polynomial is not univariate in {var!r}")
            terms[d] = c
        return UniPoly.from_terms(self.spec, terms)

    def exact_divide(self, other: "Polynomial") -> "Polynomial":
        """Quotient of an exact division (lex order); NotDivisible otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        k = self.spec.kernel
        if other.is_constant():
            return self.scale(k.inv(other.constant_value()))
        n = len(self.variables)
        lead = max(other.terms)
        lead_exps = _unpack(lead, n)
        lc_inv = k.inv(other.terms[lead])
        mul, sub = k.mul, k.sub
        rem = dict(self.terms)
        heap = [-key for key in rem]
        heapq.heapify(heap)
        quot: Dict[int, int] = {}
        divisor = list(other.terms.items())
        while heap:
            key = -heapq.heappop(heap)
            c = rem.get(key)
            if not c:
                continue
            exps = _unpack(key, n)
            if any(e < d for e, d in zip(exps, lead_exps)):
                raise NotDivisible("multivariate division left a remainder")
            qk = key - lead
            qc = mul(c, lc_inv)
            quot[qk] = qc
            for dk, dc in divisor:
                nk = qk + dk
                prev = rem.get(nk)
                value = sub(prev or 0, mul(qc, dc))
                if value:
                    if prev is None:
                        heapq.heappush(heap, -nk)
                    rem[nk] = value
                elif prev is not None:
                    del rem[nk]
        return Polynomial(self.spec, self.variables, quot)

    # -- text -----------------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps, c in self.monomials():
            if self.variables:
                parts.append(f"{c}*" + "*".join(f"{v}^{e}" for v, e in zip(self.variables, exps)))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str, variables: Sequence[str] = XY) -> "Polynomial":
        variables = tuple(variables)
        out = Polynomial.zero(spec, variables)
        text = text.strip()
        if text == "0":
            return out
        for chunk in text.split(" + "):
            factors = chunk.strip().split("*")
            exps = {}
            for factor in factors[1:]:
                name, _, e = factor.partition("^")
                exps[name] = int(e or 1)
            out = out + Polynomial.monomial(spec, exps, spec.element(int(factors[0])), variables)
        return out

    def __repr__(self) -> str:
        return f"Polynomial({len(self.terms)} terms in {','.join(self.variables)})"


BivariatePolynomial = Polynomial


# -- residues modulo the curve -----------------------------------------------------

class CurveResidue:
    """Residue of F[x,y] modulo y^q + y - x^{q+1}: sum_j rows[j](x) * y^j with j < q."""

    __slots__ = ("spec", "q", "rows")

    def __init__(self, spec: FieldSpec, q: int, rows: Sequence[UniPoly]) -> None:
        rows = list(rows)
        if len(rows) > q:
            raise BadParameters(f"{len(rows)} rows for q={q}")
        rows += [UniPoly.zero(spec)] * (q - len(rows))
        self.spec = spec
        self.q = q
        self.rows: Tuple[UniPoly, ...] = tuple(rows)

    @classmethod
    def zero(cls, spec: FieldSpec, q: int) -> "CurveResidue":
        return cls(spec, q, [])

    @classmethod
    def from_x(cls, poly: UniPoly, q: int) -> "CurveResidue":
        return cls(poly.spec, q, [poly])

    @classmethod
    def y(cls, spec: FieldSpec, q: int) -> "CurveResidue":
        return cls(spec, q, [UniPoly.zero(spec), UniPoly.constant(spec, 1)])

    @classmethod
    def from_polynomial(cls, f: Polynomial, q: Optional[int] = None) -> "CurveResidue":
        """Reduce f(x, y) by Horner's scheme in y."""
        q = q or f.spec.q
        if set(f.variables) - set(XY):
            f = f.with_variables(XY)
        shift_x = _slot_shift(f.variables, "x") if "x" in f.variables else None
        shift_y = _slot_shift(f.variables, "y") if "y" in f.variables else None
        by_y: Dict[int, Dict[int, int]] = {}
        for key, c in f.terms.items():
            i = (key >> shift_x) & _MASK if shift_x is not None else 0
            j = (key >> shift_y) & _MASK if shift_y is not None else 0
            by_y.setdefault(j, {})[i] = c
        acc = cls.zero(f.spec, q)
        if not by_y:
            return acc
        for j in range(max(by_y), -1, -1):
            acc = acc.mul_y()
            if j in by_y:
                acc = acc + cls.from_x(UniPoly.from_terms(f.spec, by_y[j]), q)
        return acc

    @classmethod
    def from_y_poly(cls, g: UniPoly, q: Optional[int] = None) -> "CurveResidue":
        """Residue of g(y) for a univariate g."""
        q = q or g.spec.q
        acc = cls.zero(g.spec, q)
        for c in reversed(g.coeffs.tolist()):
            acc = acc.mul_y()
            if c:
                acc = acc + cls.from_x(UniPoly(g.spec, [c]), q)
        return acc

    def is_zero(self) -> bool:
        return all(r.is_zero() for r in self.rows)

    def mul_y(self) -> "CurveResidue":
        rows, q = self.rows, self.q
        top = rows[-1]
        if top.is_zero():
            return CurveResidue(self.spec, q, [UniPoly.zero(self.spec)] + list(rows[:-1]))
        new = [top.shift(q + 1)] + list(rows[:-1])
        new[1] = new[1] - top
        return CurveResidue(self.spec, q, new)

    def __add__(self, other: "CurveResidue") -> "CurveResidue":
        return CurveResidue(self.spec, self.q, [a + b for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other: "CurveResidue") -> "CurveResidue":
        return CurveResidue(self.spec, self.q, [a - b for a, b in zip(self.rows, other.rows)])

    def __neg__(self) -> "CurveResidue":
        return CurveResidue(self.spec, self.q, [-a for a in self.rows])

    def scale_x(self, poly: UniPoly) -> "CurveResidue":
        return CurveResidue(self.spec, self.q, [r * poly for r in self.rows])

    def __mul__(self, other: Union["CurveResidue", UniPoly]) -> "CurveResidue":
        if isinstance(other, UniPoly):
            return self.scale_x(other)
        q = self.q
        prod = [UniPoly.zero(self.spec) for _ in range(2 * q - 1)]
        for i, a in enumerate(self.rows):
            if a.is_zero():
                continue
            for j, b in enumerate(other.rows):
                if not b.is_zero():
                    prod[i + j] = prod[i + j] + a * b
        # y^k = y^{k-q} (x^{q+1} - y)
        for k in range(2 * q - 2, q - 1, -1):
            c = prod[k]
            if not c.is_zero():
                prod[k - q] = prod[k - q] + c.shift(q + 1)
                prod[k - q + 1] = prod[k - q + 1] - c
        return CurveResidue(self.spec, q, prod[:q])

    def frobenius(self) -> "CurveResidue":
        """The q-th power."""
        q = self.q
        out = CurveResidue.zero(self.spec, q)
        y_power = CurveResidue.from_x(UniPoly.constant(self.spec, 1), q)
        step = _y_power(self.spec, q, q)
        for row in self.rows:
            if not row.is_zero():
                out = out + y_power.scale_x(_frobenius_power(row, q))
            y_power = y_power * step
        return out

    def to_polynomial(self, variables: Sequence[str] = XY) -> Polynomial:
        variables = tuple(variables)
        sx, sy = _slot_shift(variables, "x"), _slot_shift(variables, "y")
        terms: Dict[int, int] = {}
        for j, row in enumerate(self.rows):
            for i in np.flatnonzero(row.coeffs):
                terms[(int(i) << sx) + (j << sy)] = int(row.coeffs[i])
        return Polynomial(self.spec, variables, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveResidue):
            return NotImplemented
        return self.q == other.q and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)


def _frobenius_power(row: UniPoly, q: int) -> UniPoly:
    """row^q where q is a power of the characteristic (not necessarily spec.q)."""
    if row.is_zero():
        return row
    k = row.spec.kernel
    out = k.zeros(row.degree * q + 1)
    out[::q] = k.vpow(row.coeffs, q)
    return UniPoly(row.spec, out)


def _y_power(spec: FieldSpec, q: int, n: int) -> CurveResidue:
    acc = CurveResidue.from_x(UniPoly.constant(spec, 1), q)
    for _ in range(n):
        acc = acc.mul_y()
    return acc


def reduce_mod_curve(f: Polynomial, q: Optional[int] = None) -> Polynomial:
    """Canonical representative of f modulo y^q + y - x^{q+1}, with deg_y < q."""
    return CurveResidue.from_polynomial(f, q).to_polynomial(f.variables if set(f.variables) == set(XY) else XY)


def frobenius_y_power(spec: FieldSpec, q: int, k: int) -> Polynomial:
    """Reduced form of y^{q^k}."""
    acc = CurveResidue.y(spec, q)
    for _ in range(k):
        acc = acc.frobenius()
    return acc.to_polynomial()


# -- resultants ----------------------------------------------------------------------

def _bareiss(matrix: List[List[Polynomial]]) -> Polynomial:
    """Fraction-free determinant with exact divisions."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    spec, variables = m[0][0].spec, m[0][0].variables
    sign = 1
    prev = Polynomial.constant(spec, 1, variables)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(spec, variables)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                value = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = value.exact_divide(prev)
        prev = pivot
        LOGGER.debug("bareiss step %d/%d, pivot %d terms", k + 1, n - 1, len(pivot))
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _coefficient_list(f: Polynomial, var: str) -> List[Polynomial]:
    coeffs = f.coefficients(var)
    zero = Polynomial.zero(f.spec, f.variables)
    return [coeffs.get(d, zero) for d in range(f.degree(var) + 1)]


def sylvester_matrix(f: Polynomial, g: Polynomial, var: str) -> List[List[Polynomial]]:
    """Rows of f (deg g of them) first, then rows of g; highest coefficient leftmost."""
    fc, gc = _coefficient_list(f, var), _coefficient_list(g, var)
    df, dg = len(fc) - 1, len(gc) - 1
    size = df + dg
    zero = Polynomial.zero(f.spec, f.variables)
    rows: List[List[Polynomial]] = []
    for i in range(dg):
        row = [zero] * size
        for d, c in enumerate(reversed(fc)):
            row[i + d] = c
        rows.append(row)
    for i in range(df):
        row = [zero] * size
        for d, c in enumerate(reversed(gc)):
            row[i + d] = c
        rows.append(row)
    return rows


def _norm_resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """lc(f)^{deg g} * det(multiplication by g on K[..][var]/(f/lc f)) for constant lc(f)."""
    k = f.spec.kernel
    fc, gc = _coefficient_list(f, var), _coefficient_list(g, var)
    n = len(fc) - 1
    lc = fc[-1].constant_value()
    lc_inv = k.inv(lc)
    fhat = [c.scale(lc_inv) for c in fc[:-1]]
    rem = list(gc)
    for d in range(len(rem) - 1, n - 1, -1):
        top = rem[d]
        if not top.is_zero():
            for i in range(n):
                rem[d - n + i] = rem[d - n + i] - top * fhat[i]
    col = rem[:n] + [Polynomial.zero(f.spec, f.variables)] * max(0, n - len(rem))
    columns = [col]
    for _ in range(n - 1):
        top = col[-1]
        shifted = [Polynomial.zero(f.spec, f.variables)] + col[:-1]
        if not top.is_zero():
            shifted = [s - top * fh for s, fh in zip(shifted, fhat)]
        col = shifted
        columns.append(col)
    matrix = [[columns[j][i] for j in range(n)] for i in range(n)]
    det = _bareiss(matrix) if n > 1 else matrix[0][0]
    return det.scale(k.pow(lc, len(gc) - 1))


def resultant(f: Polynomial, g: Polynomial, var: str, method: str = "auto") -> Polynomial:
    """Sylvester resultant in ``var`` (f rows first), returned in the remaining variables.

    ``method="auto"`` takes the norm form when a leading coefficient in ``var``
    is constant; ``method="sylvester"`` always expands the Sylvester matrix.
    """
    g = f._coerce(g)
    if f.is_zero() or g.is_zero():
        raise ZeroPolynomial("resultant of a zero polynomial")
    df, dg = f.degree(var), g.degree(var)
    if df < 1 or dg < 1:
        raise DegreeZeroInVar(f"degrees in {var}: {df}, {dg}")
    rest = tuple(v for v in f.variables if v != var)
    if method not in ("auto", "sylvester"):
        raise BadParameters(f"unknown resultant method {method!r}")
    lf = f.coefficients(var)[df]
    lg = g.coefficients(var)[dg]
    if method == "auto" and lf.is_constant():
        res = _norm_resultant(f, g, var)
    elif method == "auto" and lg.is_constant():
        res = _norm_resultant(g, f, var)
        if (df * dg) % 2:
            res = -res
    else:
        res = _bareiss(sylvester_matrix(f, g, var))
    return res.with_variables(rest)


# -- rational functions and evaluation outcomes ----------------------------------------

@dataclass(frozen=True)
class EvalOutcome:
    """Value, Pole or Indeterminate; only a Value carries a field element."""

    kind: str
    value: Optional[FieldElement] = None

    VALUE = "value"
    POLE = "pole"
    INDETERMINATE = "indeterminate"

    @classmethod
    def of_value(cls, value: FieldElement) -> "EvalOutcome":
        return cls(cls.VALUE, value)

    @classmethod
    def pole(cls) -> "EvalOutcome":
        return cls(cls.POLE)

    @classmethod
    def indeterminate(cls) -> "EvalOutcome":
        return cls(cls.INDETERMINATE)

    @classmethod
    def fraction(cls, num: FieldElement, den: FieldElement) -> "EvalOutcome":
        if den:
            return cls.of_value(num / den)
        return cls.pole() if num else cls.indeterminate()

    @property
    def is_value(self) -> bool:
        return self.kind == self.VALUE

    def __mul__(self, other: "EvalOutcome") -> "EvalOutcome":
        kinds = {self.kind, other.kind}
        if self.INDETERMINATE in kinds:
            return EvalOutcome.indeterminate()
        if kinds == {self.VALUE}:
            return EvalOutcome.of_value(self.value * other.value)
        if kinds == {self.POLE}:
            return EvalOutcome.pole()
        finite = self.value if self.is_value else other.value
        return EvalOutcome.pole() if finite else EvalOutcome.indeterminate()

    def __pow__(self, e: int) -> "EvalOutcome":
        if self.is_value:
            return EvalOutcome.of_value(self.value ** e)
        return self

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {"kind": self.kind}
        if self.value is not None:
            out["value"] = self.value.value
        return out


@dataclass(frozen=True)
class RationalFunction:
    num: Union[UniPoly, Polynomial]
    den: Union[UniPoly, Polynomial]

    def evaluate(self, point: Union[FieldElement, Tuple[FieldElement, FieldElement]]) -> EvalOutcome:
        return ratfun_eval(self, point)


def ratfun_reduce(num: UniPoly, den: UniPoly) -> Tuple[RationalFunction, int]:
    """Cancel the gcd, make den monic, report max(deg num, deg den)."""
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        one = UniPoly.constant(den.spec, 1)
        return RationalFunction(num, one), 0
    g = gcd_uni(num, den)
    n, d = num.exact_div(g), den.exact_div(g)
    inv = den.spec.kernel.inv(d.leading)
    n, d = n.scale(inv), d.scale(inv)
    return RationalFunction(n, d), max(n.degree, d.degree)


def ratfun_eval(r: RationalFunction, point: Union[FieldElement, Tuple[FieldElement, FieldElement]]) -> EvalOutcome:
    spec = r.num.spec
    if isinstance(r.num, UniPoly):
        if not isinstance(point, FieldElement):
            raise BadParameters("univariate rational function needs a field element")
        _check_spec(spec, point.spec)
        num, den = r.num.evaluate(point.value), r.den.evaluate(point.value)
    else:
        x, y = point  # type: ignore[misc]
        _check_spec(spec, x.spec)
        assignment = dict(zip(r.num.variables, (x.value, y.value)))
        num, den = r.num.evaluate(assignment), r.den.evaluate(assignment)
    return EvalOutcome.fraction(FieldElement(spec, num), FieldElement(spec, den))
