"""The Hermitian curve y^q z + y z^q = x^{q+1}: points, enumeration and counts."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from .errors import BadParameters, ScaleExceeded
from .ff import (
    TABLE_LIMIT,
    FieldElement,
    FieldSpec,
    field_create,
    field_from_modulus,
    random_raw,
    solve_affine_many,
    solve_affine_raw,
    trace_kernel,
)
from .report import VerificationReport

LOGGER = logging.getLogger(__name__)

RATIONAL = "rational"
DELTA = "delta"
OTHER = "other"
TAGS = (RATIONAL, DELTA, OTHER)

_SWEEP_CHUNK = 1 << 14


@dataclass(frozen=True)
class ProjectivePoint:
    """(X:Y:Z) as encodings, normalized so the last nonzero coordinate is 1."""

    spec: FieldSpec
    X: int
    Y: int
    Z: int

    @classmethod
    def create(cls, spec: FieldSpec, X: int, Y: int, Z: int) -> "ProjectivePoint":
        coords = [int(X), int(Y), int(Z)]
        pivot = next((c for c in reversed(coords) if c), 0)
        if not pivot:
            raise BadParameters("(0:0:0) is not a projective point")
        if pivot != 1:
            k = spec.kernel
            inv = k.inv(pivot)
            coords = [k.mul(c, inv) for c in coords]
        return cls(spec, *coords)

    @classmethod
    def affine(cls, spec: FieldSpec, x: int, y: int) -> "ProjectivePoint":
        return cls(spec, int(x), int(y), 1)

    @classmethod
    def infinity(cls, spec: FieldSpec) -> "ProjectivePoint":
        return cls(spec, 0, 1, 0)

    @property
    def is_infinity(self) -> bool:
        return self.Z == 0

    @property
    def x(self) -> FieldElement:
        if self.is_infinity:
            raise BadParameters("point at infinity has no affine x")
        return FieldElement(self.spec, self.X)

    @property
    def y(self) -> FieldElement:
        if self.is_infinity:
            raise BadParameters("point at infinity has no affine y")
        return FieldElement(self.spec, self.Y)

    def coords(self) -> Tuple[FieldElement, FieldElement, FieldElement]:
        return tuple(FieldElement(self.spec, c) for c in (self.X, self.Y, self.Z))  # type: ignore[return-value]

    def sort_key(self) -> Tuple[int, int, int, int]:
        return (int(self.is_infinity), self.X, self.Y, self.Z)

    def to_text(self) -> str:
        return f"{self.X} {self.Y} {self.Z}"

    def __repr__(self) -> str:
        return f"({self.X}:{self.Y}:{self.Z})"


def on_curve(P: ProjectivePoint) -> bool:
    """Y^q Z + Y Z^q - X^{q+1} = 0, with q taken from the point's field."""
    k = P.spec.kernel
    q = P.spec.q
    lhs = k.add(k.mul(k.pow(P.Y, q), P.Z), k.mul(P.Y, k.pow(P.Z, q)))
    return lhs == k.pow(P.X, q + 1)


def _tag_arrays(spec: FieldSpec, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    k = spec.kernel
    q2 = spec.q ** 2
    rational = (k.vpow(xs, q2) == xs) & (k.vpow(ys, q2) == ys)
    tags = np.full(len(xs), OTHER, dtype=object)
    if spec.m % (6 * spec.h) == 0:
        q6 = spec.q ** 6
        sextic = (k.vpow(xs, q6) == xs) & (k.vpow(ys, q6) == ys)
        tags[sextic] = DELTA
    tags[rational] = RATIONAL
    return tags


def point_tag(P: ProjectivePoint) -> str:
    spec = P.spec
    xs = np.array([P.X], dtype=spec.kernel.dtype)
    ys = np.array([P.Y], dtype=spec.kernel.dtype)
    if P.is_infinity:
        return RATIONAL
    return str(_tag_arrays(spec, xs, ys)[0])


@dataclass
class PointSet:
    spec: FieldSpec
    points: List[ProjectivePoint] = field(default_factory=list)
    tags: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def count(self, tag: str) -> int:
        return sum(1 for t in self.tags if t == tag)

    def subset(self, tag: str) -> "PointSet":
        pairs = [(P, t) for P, t in zip(self.points, self.tags) if t == tag]
        return PointSet(self.spec, [P for P, _ in pairs], [t for _, t in pairs])

    def affine_arrays(self) -> Tuple[np.ndarray, np.ndarray]:
        """x and y encodings of the affine points, in set order."""
        affine = [P for P in self.points if not P.is_infinity]
        dtype = self.spec.kernel.dtype
        return (
            np.array([P.X for P in affine], dtype=dtype),
            np.array([P.Y for P in affine], dtype=dtype),
        )

    def x_values(self) -> List[int]:
        return sorted({P.X for P in self.points if not P.is_infinity})

    def y_values(self) -> List[int]:
        return sorted({P.Y for P in self.points if not P.is_infinity})

    def to_text(self) -> str:
        s = self.spec
        lines = [f"# field p={s.p} h={s.h} m={s.m} modulus={','.join(str(c) for c in s.modulus)}"]
        lines += [f"{P.to_text()} {tag}" for P, tag in zip(self.points, self.tags)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "PointSet":
        lines = [line.strip() for line in text.splitlines() if line.strip()]
        if not lines or not lines[0].startswith("# field"):
            raise BadParameters("point set text must start with a '# field' header")
        header = dict(item.split("=", 1) for item in lines[0][len("# field"):].split())
        spec = field_from_modulus(
            int(header["p"]), int(header["h"]), [int(c) for c in header["modulus"].split(",")]
        )
        if spec.m != int(header["m"]):
            raise BadParameters(f"modulus degree {spec.m} does not match m={header['m']}")
        out = cls(spec)
        for line in lines[1:]:
            X, Y, Z, tag = line.split()
            if tag not in TAGS:
                raise BadParameters(f"unknown tag {tag!r}")
            out.points.append(ProjectivePoint.create(spec, int(X), int(Y), int(Z)))
            out.tags.append(tag)
        return out


class HermitianCurve:
    """H_q for q = p^h, with points over the fields F_{q^{2k}}."""

    def __init__(self, p: int, h: int) -> None:
        self.p = p
        self.h = h
        self.q = p ** h
        self.genus = self.q * (self.q - 1) // 2
        self.base = field_create(p, h, 2 * h)

    def field(self, k: int) -> FieldSpec:
        return field_create(self.p, self.h, 2 * self.h * k)

    def expected_count(self, k: int) -> int:
        """|H_q(F_{q^{2k}})| for a curve maximal over F_{q^2}."""
        q = self.q
        return q ** (2 * k) + 1 - 2 * self.genus * (-q) ** k

    def delta_size(self) -> int:
        q = self.q
        return q ** 3 * (q ** 2 - 1) * (q + 1)

    def on_curve(self, P: ProjectivePoint) -> bool:
        return on_curve(P)

    def _sweep(self, spec: FieldSpec, xs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        k = spec.kernel
        ok, y0 = solve_affine_many(spec, k.vpow(xs, self.q + 1))
        xs_ok, y0 = xs[ok], y0[ok]
        kernel = np.array(trace_kernel(spec), dtype=np.int64)
        X = np.repeat(xs_ok, len(kernel))
        Y = k.vadd(np.repeat(y0, len(kernel)), np.tile(kernel, len(xs_ok)))
        return X, Y

    def enumerate_points(
        self,
        k: int,
        workers: int = 1,
        progress: bool = False,
        max_order: int = TABLE_LIMIT,
        spec: Optional[FieldSpec] = None,
    ) -> PointSet:
        """All F_{q^{2k}}-points: affine ones sorted by (x, y), then (0:1:0).

        ``spec`` swaps in another modulus for F_{q^{2k}}; counts do not depend on it.
        """
        if k < 1:
            raise BadParameters(f"k={k} must be positive")
        order = self.q ** (2 * k)
        if order > max_order:
            raise ScaleExceeded(f"q^(2k) = {order} exceeds {max_order}")
        if spec is None:
            spec = self.field(k)
        elif (spec.p, spec.h, spec.m) != (self.p, self.h, 2 * self.h * k):
            raise BadParameters(f"{spec} is not F_{self.q}^{2 * k}")
        xs = np.arange(order, dtype=np.int64)
        chunks = [xs[i:i + _SWEEP_CHUNK] for i in range(0, order, _SWEEP_CHUNK)]
        LOGGER.info("Enumerating H_%d over F_%d^%d (%d x-values, %d workers)", self.q, self.p, spec.m, order, workers)
        with ThreadPoolExecutor(max_workers=max(1, workers)) as pool:
            results = list(
                tqdm(pool.map(lambda c: self._sweep(spec, c), chunks), total=len(chunks), disable=not progress,
                     desc=f"points k={k}")
            )
        X = np.concatenate([r[0] for r in results])
        Y = np.concatenate([r[1] for r in results])
        idx = np.lexsort((Y, X))
        X, Y = X[idx], Y[idx]
        tags = _tag_arrays(spec, X, Y)
        points = [ProjectivePoint(spec, int(x), int(y), 1) for x, y in zip(X.tolist(), Y.tolist())]
        points.append(ProjectivePoint.infinity(spec))
        tag_list = [str(t) for t in tags] + [RATIONAL]
        LOGGER.info("Found %d points", len(points))
        return PointSet(spec, points, tag_list)

    def delta_set(self, workers: int = 1, progress: bool = False, max_order: int = TABLE_LIMIT) -> PointSet:
        """F_{q^6}-points that are not F_{q^2}-rational."""
        return self.enumerate_points(3, workers=workers, progress=progress, max_order=max_order).subset(DELTA)

    def sample_point(self, m: int, rng: np.random.Generator) -> ProjectivePoint:
        """Random affine point over F_{p^m}: draw x until y^q + y = x^{q+1} is solvable."""
        spec = field_create(self.p, self.h, m)
        spec.require_fq2()
        k = spec.kernel
        while True:
            x = random_raw(spec, rng)
            ys = solve_affine_raw(spec, k.pow(x, self.q + 1))
            if ys:
                return ProjectivePoint.affine(spec, x, ys[int(rng.integers(0, len(ys)))])

    def count_check(self, k: int, workers: int = 1, progress: bool = False,
                    max_order: int = TABLE_LIMIT) -> VerificationReport:
        q = self.q
        points = self.enumerate_points(k, workers=workers, progress=progress, max_order=max_order)
        expected: Dict[str, int] = {"points": self.expected_count(k), "rational": q ** 3 + 1}
        observed: Dict[str, int] = {"points": len(points), "rational": points.count(RATIONAL)}
        notes = [f"N_k = q^(2k) + 1 - 2g(-q)^k with g = {self.genus}"]
        if k == 1:
            expected["unital"] = q ** 3 + 1
            observed["unital"] = len(points)
        if k == 3:
            delta = points.subset(DELTA)
            expected["delta"] = self.delta_size()
            observed["delta"] = len(delta)
            expected["delta_x_in_fq2"] = 0
            observed["delta_x_in_fq2"] = _count_in_subfield(points.spec, delta.x_values(), 2 * self.h)
            observed["rational_plus_delta"] = observed["rational"] + len(delta)
            expected["rational_plus_delta"] = expected["points"]
        return VerificationReport.compare(
            "count_points",
            q,
            expected,
            observed,
            params={"k": k, "field": points.spec.to_dict()},
            notes=notes,
        )


def _count_in_subfield(spec: FieldSpec, values: Sequence[int], d: int) -> int:
    if not values:
        return 0
    k = spec.kernel
    arr = np.array(values, dtype=k.dtype)
    return int(np.count_nonzero(k.vpow(arr, spec.p ** d) == arr))
