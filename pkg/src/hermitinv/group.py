"""PGU(3,q) as 3x3 matrices over F_{q^2} modulo scalars.

Matrices act on column vectors (X, Y, Z).  The Hermitian form is
<u, v> = u^T A v^(q) with A = [[1,0,0],[0,0,-1],[0,-1,0]], so <v, v> = 0 is the
curve.  A matrix is unitary when M^dagger A M = mu A for some mu in F_q^*, where
M^dagger is the transpose of the entrywise q-th power.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .curve import HermitianCurve, ProjectivePoint, on_curve
from .errors import (
    BadParameters,
    EntriesNotInFq2,
    FieldMismatch,
    ScaleExceeded,
    SingularMatrix,
    ZeroLambda,
)
from .ff import (
    FieldElement,
    FieldSpec,
    _rref_mod_p,
    field_create,
    solve_affine_raw,
    subfield_elements,
    trace_kernel,
)
from .report import VerificationReport

LOGGER = logging.getLogger(__name__)

Rows = Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]

GENERATOR_KINDS = ("translation", "scaling", "inversion")


@dataclass(frozen=True)
class GramForm:
    spec: FieldSpec

    @property
    def rows(self) -> Rows:
        minus_one = self.spec.kernel.from_int(-1)
        return ((1, 0, 0), (0, 0, minus_one), (0, minus_one, 0))

    def pairing(self, u: Sequence[int], v: Sequence[int]) -> int:
        """u^T A v^(q)."""
        k = self.spec.kernel
        q = self.spec.q
        vq = [k.pow(c, q) for c in v]
        a = self.rows
        acc = 0
        for i in range(3):
            for j in range(3):
                if a[i][j] and u[i] and vq[j]:
                    acc = k.add(acc, k.mul(a[i][j], k.mul(u[i], vq[j])))
        return acc


def _mat_mul(spec: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Tuple[int, ...]:
    k = spec.kernel
    mul, add = k.mul, k.add
    out = []
    for i in range(3):
        r0, r1, r2 = a[3 * i], a[3 * i + 1], a[3 * i + 2]
        for j in range(3):
            out.append(add(add(mul(r0, b[j]), mul(r1, b[3 + j])), mul(r2, b[6 + j])))
    return tuple(out)


def _det(spec: FieldSpec, e: Sequence[int]) -> int:
    k = spec.kernel
    mul, sub, add = k.mul, k.sub, k.add
    t0 = mul(e[0], sub(mul(e[4], e[8]), mul(e[5], e[7])))
    t1 = mul(e[1], sub(mul(e[3], e[8]), mul(e[5], e[6])))
    t2 = mul(e[2], sub(mul(e[3], e[7]), mul(e[4], e[6])))
    return add(sub(t0, t1), t2)


def _canonical(spec: FieldSpec, entries: Sequence[int]) -> Tuple[int, ...]:
    lead = next((c for c in entries if c), 0)
    if lead in (0, 1):
        return tuple(int(c) for c in entries)
    k = spec.kernel
    inv = k.inv(lead)
    return tuple(k.mul(int(c), inv) for c in entries)


@dataclass(frozen=True)
class UnitaryMatrix:
    """Projective class of a unitary matrix; entries row-major, first nonzero entry 1."""

    spec: FieldSpec
    entries: Tuple[int, ...]

    @classmethod
    def create(cls, spec: FieldSpec, rows: Sequence[Sequence[int]]) -> "UnitaryMatrix":
        flat = [int(c.value) if isinstance(c, FieldElement) else int(c) for row in rows for c in row]
        if len(flat) != 9:
            raise BadParameters("a 3x3 matrix needs 9 entries")
        return cls(spec, _canonical(spec, flat))

    @classmethod
    def identity(cls, spec: FieldSpec) -> "UnitaryMatrix":
        return cls(spec, (1, 0, 0, 0, 1, 0, 0, 0, 1))

    @property
    def rows(self) -> Rows:
        e = self.entries
        return (e[0:3], e[3:6], e[6:9])  # type: ignore[return-value]

    def __matmul__(self, other: "UnitaryMatrix") -> "UnitaryMatrix":
        if other.spec != self.spec:
            raise FieldMismatch(f"{other.spec} vs {self.spec}")
        return UnitaryMatrix(self.spec, _canonical(self.spec, _mat_mul(self.spec, self.entries, other.entries)))

    def is_identity(self) -> bool:
        return self.entries == (1, 0, 0, 0, 1, 0, 0, 0, 1)

    def apply(self, P: ProjectivePoint) -> ProjectivePoint:
        return apply(self, P)

    def to_text(self) -> str:
        return " ".join(str(c) for c in self.entries)

    @classmethod
    def from_text(cls, spec: FieldSpec, text: str) -> "UnitaryMatrix":
        values = [int(tok) for tok in text.split()]
        return cls.create(spec, [values[0:3], values[3:6], values[6:9]])

    def __repr__(self) -> str:
        return f"UnitaryMatrix({self.to_text()})"


def _raw(spec: FieldSpec, value) -> int:
    if isinstance(value, FieldElement):
        if value.spec != spec:
            raise FieldMismatch(f"{value.spec} vs {spec}")
        return value.value
    return int(value)


def gen_translation(a: FieldElement, b: FieldElement) -> UnitaryMatrix:
    """T_{a,b}: (x, y) -> (x + a, y + a^q x + b), defined when b^q + b = a^{q+1}."""
    spec = a.spec
    spec.require_fq2()
    if b.spec != spec:
        raise FieldMismatch(f"{b.spec} vs {spec}")
    k = spec.kernel
    q = spec.q
    if k.add(k.pow(b.value, q), b.value) != k.pow(a.value, q + 1):
        raise BadParameters("translation needs b^q + b = a^(q+1)")
    return UnitaryMatrix.create(spec, [[1, 0, a.value], [k.pow(a.value, q), 1, b.value], [0, 0, 1]])


def gen_scaling(lam: FieldElement) -> UnitaryMatrix:
    """(x, y) -> (lam x, lam^{q+1} y)."""
    if not lam:
        raise ZeroLambda("scaling by zero")
    spec = lam.spec
    k = spec.kernel
    return UnitaryMatrix.create(spec, [[lam.value, 0, 0], [0, k.pow(lam.value, spec.q + 1), 0], [0, 0, 1]])


def gen_inversion(spec: FieldSpec) -> UnitaryMatrix:
    """The permutation matrix swapping Y and Z."""
    return UnitaryMatrix.create(spec, [[1, 0, 0], [0, 0, 1], [0, 1, 0]])


def is_unitary(rows: Sequence[Sequence[int]], spec: FieldSpec) -> Tuple[bool, Optional[FieldElement]]:
    """(True, mu) when M^dagger A M = mu A with mu in F_q^*, else (False, None)."""
    spec.require_fq2()
    k = spec.kernel
    q = spec.q
    flat = [_raw(spec, c) for row in rows for c in row]
    if len(flat) != 9:
        raise BadParameters("a 3x3 matrix needs 9 entries")
    if any(k.pow(c, q * q) != c for c in flat):
        raise EntriesNotInFq2("matrix entries must lie in F_q^2")
    if _det(spec, flat) == 0:
        raise SingularMatrix("matrix is singular")
    dagger = [k.pow(flat[3 * j + i], q) for i in range(3) for j in range(3)]
    gram = [c for row in GramForm(spec).rows for c in row]
    lhs = _mat_mul(spec, _mat_mul(spec, dagger, gram), flat)
    mu = lhs[0]
    if not mu or k.pow(mu, q) != mu:
        return False, None
    scaled = tuple(k.mul(mu, c) for c in gram)
    if lhs != scaled:
        return False, None
    return True, FieldElement(spec, mu)


def apply(M: UnitaryMatrix, P: ProjectivePoint) -> ProjectivePoint:
    """Normalized M (X, Y, Z)^T."""
    if M.spec != P.spec:
        raise FieldMismatch(f"{M.spec} vs {P.spec}")
    k = M.spec.kernel
    mul, add = k.mul, k.add
    e = M.entries
    v = (P.X, P.Y, P.Z)
    out = [add(add(mul(e[3 * i], v[0]), mul(e[3 * i + 1], v[1])), mul(e[3 * i + 2], v[2])) for i in range(3)]
    return ProjectivePoint.create(M.spec, *out)


def _fq2_elements(spec: FieldSpec) -> Tuple[int, ...]:
    return subfield_elements(spec, 2 * spec.h)


def random_element(
    rng: np.random.Generator,
    word_length: int,
    spec: FieldSpec,
    kinds: Optional[Sequence[str]] = None,
) -> UnitaryMatrix:
    """Product of ``word_length`` random generators drawn from ``kinds``."""
    if word_length < 1:
        raise BadParameters("word_length must be at least 1")
    kinds = tuple(kinds or GENERATOR_KINDS)
    unknown = set(kinds) - set(GENERATOR_KINDS)
    if unknown:
        raise BadParameters(f"unknown generator kinds {sorted(unknown)}")
    spec.require_fq2()
    k = spec.kernel
    q = spec.q
    fq2 = _fq2_elements(spec)
    result: Optional[UnitaryMatrix] = None
    for _ in range(word_length):
        kind = kinds[int(rng.integers(0, len(kinds)))]
        if kind == "translation":
            a = fq2[int(rng.integers(0, len(fq2)))]
            bs = solve_affine_raw(spec, k.pow(a, q + 1))
            b = bs[int(rng.integers(0, len(bs)))]
            letter = gen_translation(FieldElement(spec, a), FieldElement(spec, b))
        elif kind == "scaling":
            lam = fq2[1 + int(rng.integers(0, len(fq2) - 1))]
            letter = gen_scaling(FieldElement(spec, lam))
        else:
            letter = gen_inversion(spec)
        result = letter if result is None else result @ letter
    assert result is not None
    return result


def _fp_basis(spec: FieldSpec, values: Sequence[int], size: int) -> List[int]:
    """First ``size`` F_p-independent values, greedily in the given order."""
    k = spec.kernel
    chosen: List[int] = []
    for v in values:
        if not v:
            continue
        trial = np.array([k.digits(c) for c in chosen + [v]], dtype=np.int64)
        _, pivots, _ = _rref_mod_p(trial, spec.p)
        if len(pivots) == len(chosen) + 1:
            chosen.append(v)
            if len(chosen) == size:
                break
    return chosen


def generators(spec: FieldSpec) -> List[UnitaryMatrix]:
    """3h + 2 generators: translations over an F_p-basis of F_q^2, translations
    T_{0,b} over a basis of the kernel of b^q + b, one scaling by a primitive
    element, and the Y/Z swap."""
    spec.require_fq2()
    k = spec.kernel
    q, h = spec.q, spec.h
    fq2 = _fq2_elements(spec)
    gens: List[UnitaryMatrix] = []
    for a in _fp_basis(spec, fq2, 2 * h):
        b = solve_affine_raw(spec, k.pow(a, q + 1))[0]
        gens.append(gen_translation(FieldElement(spec, a), FieldElement(spec, b)))
    for b in _fp_basis(spec, trace_kernel(spec), h):
        gens.append(gen_translation(spec.zero, FieldElement(spec, b)))
    order = q * q - 1
    primitive = next(
        w for w in fq2[1:]
        if all(k.pow(w, order // r) != 1 for r in _prime_divisors(order))
    )
    gens.append(gen_scaling(FieldElement(spec, primitive)))
    gens.append(gen_inversion(spec))
    return gens


def _prime_divisors(n: int) -> List[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def group_order(q: int) -> int:
    return q ** 3 * (q ** 3 + 1) * (q ** 2 - 1)


def enumerate_group(p: int, h: int, max_q: int = 4, spec: Optional[FieldSpec] = None) -> Tuple[UnitaryMatrix, ...]:
    """BFS closure of the generators, sorted by entries."""
    q = p ** h
    if q > max_q:
        raise ScaleExceeded(f"group enumeration capped at q <= {max_q}")
    spec = spec or field_create(p, h, 2 * h)
    gens = generators(spec)
    identity = UnitaryMatrix.identity(spec)
    visited = {identity.entries}
    queue = deque([identity.entries])
    while queue:
        current = queue.popleft()
        for g in gens:
            nxt = _canonical(spec, _mat_mul(spec, current, g.entries))
            if nxt not in visited:
                visited.add(nxt)
                queue.append(nxt)
        if len(visited) % 10000 == 0:
            LOGGER.debug("BFS: %d elements", len(visited))
    LOGGER.info("PGU(3,%d) closure: %d elements from %d generators", q, len(visited), len(gens))
    return tuple(UnitaryMatrix(spec, e) for e in sorted(visited))


def subgroup(kind: str, spec: FieldSpec) -> Tuple[UnitaryMatrix, ...]:
    """Psi = {T_{0,b} : b^q + b = 0} or Lambda = {diag(lam, 1, 1) : lam^{q+1} = 1}."""
    spec.require_fq2()
    k = spec.kernel
    if kind == "Psi":
        members = [gen_translation(spec.zero, FieldElement(spec, b)) for b in trace_kernel(spec)]
    elif kind == "Lambda":
        members = [
            gen_scaling(FieldElement(spec, lam))
            for lam in _fq2_elements(spec)
            if lam and k.pow(lam, spec.q + 1) == 1
        ]
    else:
        raise BadParameters(f"unknown subgroup {kind!r}")
    return tuple(sorted(members, key=lambda M: M.entries))


def group_order_check(p: int, h: int, max_q: int = 4) -> VerificationReport:
    """Closure size, plus the orbit and stabilizer of (0:1:0) on H_q(F_q^2)."""
    q = p ** h
    curve = HermitianCurve(p, h)
    spec = curve.base
    elements = enumerate_group(p, h, max_q=max_q, spec=spec)
    infinity = ProjectivePoint.infinity(spec)
    orbit = set()
    stabilizer = 0
    off_curve: List[Dict[str, object]] = []
    off_curve_count = 0
    for M in elements:
        image = apply(M, infinity)
        orbit.add(image)
        if image == infinity:
            stabilizer += 1
        if not on_curve(image):
            off_curve_count += 1
        if not on_curve(image) and len(off_curve) < 3:
            off_curve.append({"kind": "matrix", "matrix": M.to_text(), "image": image.to_text()})
    unitary_failures = sum(1 for g in generators(spec) if not is_unitary(g.rows, spec)[0])
    expected = {
        "order": group_order(q),
        "orbit_of_infinity": q ** 3 + 1,
        "stabilizer_of_infinity": q ** 3 * (q ** 2 - 1),
        "images_off_curve": 0,
        "non_unitary_generators": 0,
    }
    observed = {
        "order": len(elements),
        "orbit_of_infinity": len(orbit),
        "stabilizer_of_infinity": stabilizer,
        "images_off_curve": off_curve_count,
        "non_unitary_generators": unitary_failures,
    }
    return VerificationReport.compare(
        "group_order",
        q,
        expected,
        observed,
        params={"generators": len(generators(spec)), "field": spec.to_dict()},
        witnesses=off_curve,
    )
