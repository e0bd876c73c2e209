"""Detector placement beside a Dirichlet plane at z = 0.

Lengths and gaps are dimensionless: positions in units of the switching width
sigma, gaps as the product Omega * sigma.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DegenerateGeometryError",
    "GeometryKind",
    "DetectorSpec",
    "GeometryConfig",
    "PairDistances",
    "pair_distances",
    "LABELS",
    "PAIRS",
]

LABELS = ("A", "B", "C")
PAIRS = ("AB", "BC", "AC")


class DegenerateGeometryError(ValueError):
    pass


class GeometryKind(str, enum.Enum):
    PARALLEL = "parallel"
    ORTHOGONAL = "orthogonal"
    GENERAL = "general"


@dataclass(frozen=True)
class DetectorSpec:
    gap: float
    position: tuple[float, float, float]
    label: str = "A"

    def __post_init__(self):
        gap = float(self.gap)
        pos = tuple(float(c) for c in self.position)
        if len(pos) != 3:
            raise ValueError(f"position must have 3 components, got {self.position!r}")
        if not gap >= 0 or math.isinf(gap):
            raise ValueError(f"gap must be finite and >= 0, got {self.gap!r}")
        if not all(math.isfinite(c) for c in pos):
            raise ValueError(f"position must be finite, got {pos!r}")
        if pos[2] < 0:
            raise ValueError(f"detector {self.label} below the boundary (z = {pos[2]})")
        object.__setattr__(self, "gap", gap)
        object.__setattr__(self, "position", pos)

    @property
    def z(self) -> float:
        return self.position[2]


@dataclass(frozen=True)
class PairDistances:
    direct: float
    image: float


def pair_distances(a: DetectorSpec, b: DetectorSpec, boundary: bool = True) -> PairDistances:
    """Distance between two detectors and from one to the mirror image of the other.

    The image of (x, y, z) is (x, y, -z), so the image distance is
    ``hypot(d_perp, z_a + z_b)``. Without a boundary the image distance is inf.
    """
    ra = np.asarray(a.position)
    rb = np.asarray(b.position)
    d_perp = math.hypot(ra[0] - rb[0], ra[1] - rb[1])
    direct = math.hypot(d_perp, ra[2] - rb[2])
    if direct == 0.0:
        raise DegenerateGeometryError(
            f"detectors {a.label} and {b.label} coincide at {a.position}"
        )
    image = math.hypot(d_perp, ra[2] + rb[2]) if boundary else math.inf
    return PairDistances(direct=direct, image=image)


@dataclass(frozen=True)
class GeometryConfig:
    """Three static detectors A, B, C.

    ``parallel`` puts them at x = 0, L, 2L at height dz; ``orthogonal`` stacks
    them along the normal at z = dz, dz + L, dz + 2L. ``general`` takes the
    positions verbatim (``L`` and ``dz`` are then informational only).
    ``boundary=False`` removes the mirror (image terms vanish).
    """

    kind: GeometryKind
    gaps: tuple[float, float, float]
    L: float = 1.0
    dz: float = 1.0
    positions: tuple | None = None
    boundary: bool = True
    detectors: tuple[DetectorSpec, DetectorSpec, DetectorSpec] = field(init=False, repr=False)

    def __post_init__(self):
        kind = GeometryKind(self.kind)
        object.__setattr__(self, "kind", kind)
        gaps = tuple(float(g) for g in self.gaps)
        if len(gaps) != 3:
            raise ValueError("need exactly three gaps (A, B, C)")
        object.__setattr__(self, "gaps", gaps)
        L, dz = float(self.L), float(self.dz)
        if kind is GeometryKind.GENERAL:
            if self.positions is None or len(self.positions) != 3:
                raise ValueError("general geometry needs three positions")
            pos = tuple(tuple(float(c) for c in p) for p in self.positions)
        else:
            if not (L > 0 and math.isfinite(L)):
                raise ValueError(f"L must be finite and > 0, got {self.L!r}")
            if not (dz >= 0 and math.isfinite(dz)):
                raise ValueError(f"dz must be finite and >= 0, got {self.dz!r}")
            if kind is GeometryKind.PARALLEL:
                pos = ((0.0, 0.0, dz), (L, 0.0, dz), (2 * L, 0.0, dz))
            else:
                pos = ((0.0, 0.0, dz), (0.0, 0.0, dz + L), (0.0, 0.0, dz + 2 * L))
        object.__setattr__(self, "L", L)
        object.__setattr__(self, "dz", dz)
        object.__setattr__(self, "positions", pos)
        dets = tuple(DetectorSpec(g, p, lab) for g, p, lab in zip(gaps, pos, LABELS))
        object.__setattr__(self, "detectors", dets)

    @classmethod
    def parallel(cls, gaps, L, dz, boundary=True):
        return cls(GeometryKind.PARALLEL, gaps, L, dz, boundary=boundary)

    @classmethod
    def orthogonal(cls, gaps, L, dz, boundary=True):
        return cls(GeometryKind.ORTHOGONAL, gaps, L, dz, boundary=boundary)

    @classmethod
    def general(cls, gaps, positions, boundary=True):
        return cls(GeometryKind.GENERAL, gaps, positions=positions, boundary=boundary)

    @property
    def gap_order_warning(self) -> bool:
        """True when the conventional ordering gap_C >= gap_B >= gap_A is violated."""
        a, b, c = self.gaps
        return not (c >= b >= a)

    def detector(self, label: str) -> DetectorSpec:
        return self.detectors[LABELS.index(label)]

    def pair(self, name: str) -> tuple[DetectorSpec, DetectorSpec]:
        if name not in PAIRS:
            raise ValueError(f"unknown pair {name!r}; expected one of {PAIRS}")
        return self.detector(name[0]), self.detector(name[1])

    def distances(self, name: str) -> PairDistances:
        a, b = self.pair(name)
        return pair_distances(a, b, boundary=self.boundary)

    def with_params(self, **changes) -> "GeometryConfig":
        args = dict(kind=self.kind, gaps=self.gaps, L=self.L, dz=self.dz,
                    positions=self.positions if self.kind is GeometryKind.GENERAL else None,
                    boundary=self.boundary)
        args.update(changes)
        return GeometryConfig(**args)
