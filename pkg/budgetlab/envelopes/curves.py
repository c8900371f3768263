"""Piecewise boundary curves in the budget and rationalised planes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Literal, Optional, Sequence, Tuple, Union

import numpy as np

from ..errors import DomainError
from ..linalg import DimensionProfile

Plane = Literal["budget", "rationalised"]
Vertex = Tuple[float, float]
ExactVertex = Tuple[Fraction, Fraction]

CONTIGUITY_TOLERANCE = 1e-12


@dataclass(frozen=True)
class LineSegment:
    """Straight piece between two vertices; a vertical segment has ``v0[0] == v1[0]``."""

    v0: Vertex
    v1: Vertex
    exact: Optional[Tuple[ExactVertex, ExactVertex]] = None

    @classmethod
    def between(cls, a: ExactVertex, b: ExactVertex) -> "LineSegment":
        return cls(
            v0=(float(a[0]), float(a[1])),
            v1=(float(b[0]), float(b[1])),
            exact=((Fraction(a[0]), Fraction(a[1])), (Fraction(b[0]), Fraction(b[1]))),
        )

    @property
    def start(self) -> Vertex:
        return self.v0

    @property
    def end(self) -> Vertex:
        return self.v1

    @property
    def is_vertical(self) -> bool:
        return abs(self.v0[0] - self.v1[0]) <= CONTIGUITY_TOLERANCE

    def x_range(self) -> Tuple[float, float]:
        return min(self.v0[0], self.v1[0]), max(self.v0[0], self.v1[0])

    def slope(self) -> float:
        if self.is_vertical:
            return math.inf
        return (self.v1[1] - self.v0[1]) / (self.v1[0] - self.v0[0])

    def exact_slope(self) -> Optional[Fraction]:
        if self.exact is None:
            return None
        (x0, y0), (x1, y1) = self.exact
        if x0 == x1:
            return None
        return (y1 - y0) / (x1 - x0)

    def evaluate(self, x: float) -> float:
        if self.is_vertical:
            return max(self.v0[1], self.v1[1])
        (x0, y0), (x1, y1) = self.v0, self.v1
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)

    def sample(self, resolution: int) -> List[Vertex]:
        ts = np.linspace(0.0, 1.0, max(int(resolution), 2))
        return [
            (self.v0[0] + t * (self.v1[0] - self.v0[0]), self.v0[1] + t * (self.v1[1] - self.v0[1]))
            for t in ts
        ]

    def to_record(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {"type": "segment", "v0": list(self.v0), "v1": list(self.v1)}
        if self.exact is not None:
            record["exact"] = [[str(c) for c in v] for v in self.exact]
        return record


@dataclass(frozen=True)
class QuadraticArc:
    """Piece of the conic ``a X^2 + b Y^2 = c`` over ``x_range``, traversed in the given order."""

    a: float
    b: float
    c: float
    x_range: Tuple[float, float]

    def __post_init__(self) -> None:
        if self.b == 0.0:
            raise DomainError("arc with b = 0 is a vertical line; use a LineSegment")

    def evaluate(self, x: float) -> float:
        value = (self.c - self.a * x * x) / self.b
        return math.sqrt(max(value, 0.0))

    @property
    def start(self) -> Vertex:
        return self.x_range[0], self.evaluate(self.x_range[0])

    @property
    def end(self) -> Vertex:
        return self.x_range[1], self.evaluate(self.x_range[1])

    def sample(self, resolution: int) -> List[Vertex]:
        xs = np.linspace(self.x_range[0], self.x_range[1], max(int(resolution), 2))
        return [(float(x), self.evaluate(float(x))) for x in xs]

    def residual(self, x: float, y: float) -> float:
        return self.a * x * x + self.b * y * y - self.c

    def to_record(self) -> Dict[str, Any]:
        return {"type": "arc", "a": self.a, "b": self.b, "c": self.c, "x_range": list(self.x_range)}


Piece = Union[LineSegment, QuadraticArc]


def _rationalised_vertex(vertex: Vertex, dims: DimensionProfile) -> Vertex:
    bl, bnl = vertex
    D = dims.D
    purity = (1.0 + bl + bnl) / D
    scale = (D - 1) * purity
    return math.sqrt(max(bl, 0.0) / scale), math.sqrt(max(bnl, 0.0) / scale)


def line_to_arc(segment: LineSegment, dims: DimensionProfile) -> Piece:
    """Image of a budget-plane segment in the rationalised plane.

    The line ``B_NL = a + b B_L`` becomes ``(a - b) X^2 + (1 + a) Y^2 = a D / (D - 1)``.
    """

    start = _rationalised_vertex(segment.v0, dims)
    end = _rationalised_vertex(segment.v1, dims)
    if segment.is_vertical:
        raise DomainError("vertical budget-plane segments have no conic image")
    slope = segment.slope()
    intercept = segment.v0[1] - slope * segment.v0[0]
    D = dims.D
    a_coef = intercept - slope
    b_coef = 1.0 + intercept
    c_coef = intercept * D / (D - 1)
    if abs(b_coef) <= 1e-12:
        return LineSegment(v0=(start[0], start[1]), v1=(start[0], end[1]))
    if abs(a_coef) <= 1e-12 and abs(c_coef) <= 1e-12:
        return LineSegment(v0=start, v1=end)
    return QuadraticArc(a=a_coef, b=b_coef, c=c_coef, x_range=(start[0], end[0]))


@dataclass(frozen=True)
class EnvelopeCurve:
    """Ordered contiguous pieces forming one boundary of the geometry."""

    label: str
    plane: Plane
    pieces: Tuple[Piece, ...]
    dims: Optional[DimensionProfile] = None
    notes: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for left, right in zip(self.pieces, self.pieces[1:]):
            gap = math.dist(left.end, right.start)
            if gap > 1e-9:
                raise DomainError(f"envelope '{self.label}' has a gap of {gap:.3e} between pieces")

    def vertices(self) -> List[Vertex]:
        if not self.pieces:
            return []
        return [self.pieces[0].start] + [piece.end for piece in self.pieces]

    def exact_vertices(self) -> List[ExactVertex]:
        segments = [p for p in self.pieces if isinstance(p, LineSegment) and p.exact is not None]
        if len(segments) != len(self.pieces) or not segments:
            raise DomainError(f"envelope '{self.label}' carries no exact vertices")
        return [segments[0].exact[0]] + [s.exact[1] for s in segments]

    def evaluate(self, x: float) -> Optional[float]:
        """Largest boundary ordinate above ``x``; ``None`` when ``x`` is not covered."""

        values = []
        for piece in self.pieces:
            lo, hi = sorted(piece.x_range if isinstance(piece, QuadraticArc) else piece.x_range())
            if lo - 1e-12 <= x <= hi + 1e-12:
                values.append(piece.evaluate(min(max(x, lo), hi)))
        return max(values) if values else None

    def x_extent(self) -> Tuple[float, float]:
        xs = [v[0] for v in self.vertices()]
        return min(xs), max(xs)

    def to_rationalised(self, dims: Optional[DimensionProfile] = None) -> "EnvelopeCurve":
        if self.plane == "rationalised":
            return self
        profile = dims or self.dims
        if profile is None:
            raise DomainError("a dimension profile is required to rationalise an envelope")
        pieces: List[Piece] = []
        for piece in self.pieces:
            if not isinstance(piece, LineSegment):
                raise DomainError("only straight budget-plane pieces can be rationalised")
            pieces.append(line_to_arc(piece, profile))
        return EnvelopeCurve(label=self.label, plane="rationalised", pieces=tuple(pieces), dims=profile, notes=self.notes)

    def sample(self, resolution: int = 101) -> List[Vertex]:
        points: List[Vertex] = []
        for piece in self.pieces:
            chunk = piece.sample(resolution)
            points.extend(chunk if not points else chunk[1:])
        return points

    def to_record(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "plane": self.plane,
            "dims": list(self.dims.dims) if self.dims is not None else None,
            "pieces": [piece.to_record() for piece in self.pieces],
        }


def polyline(label: str, plane: Plane, points: Sequence[Vertex], dims: Optional[DimensionProfile] = None) -> EnvelopeCurve:
    """Curve made of straight segments through ``points``."""

    pieces = [LineSegment(v0=tuple(a), v1=tuple(b)) for a, b in zip(points, points[1:])]
    return EnvelopeCurve(label=label, plane=plane, pieces=tuple(pieces), dims=dims)


def exact_polyline(
    label: str,
    vertices: Iterable[ExactVertex],
    dims: Optional[DimensionProfile] = None,
) -> EnvelopeCurve:
    vertices = list(vertices)
    pieces = [LineSegment.between(a, b) for a, b in zip(vertices, vertices[1:])]
    return EnvelopeCurve(label=label, plane="budget", pieces=tuple(pieces), dims=dims)


__all__ = [
    "EnvelopeCurve",
    "ExactVertex",
    "LineSegment",
    "Piece",
    "Plane",
    "QuadraticArc",
    "Vertex",
    "exact_polyline",
    "line_to_arc",
    "polyline",
]
