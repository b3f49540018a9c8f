# polytope.py
# The two moment tetrahedra and the maps into them.
#
#   TILDE_DELTA: conv{(0,0,0), (0,1,1), (1,0,1), (1,1,0)} -- the image of the
#     trace-angle triple (f1, f2, f3).  Half-space form (derived from the
#     vertex set and certified against a hull oracle in the tests):
#         x1 + x2 - x3 >= 0,   x1 - x2 + x3 >= 0,
#        -x1 + x2 + x3 >= 0,   x1 + x2 + x3 <= 2.
#   STD_DELTA: the standard 3-simplex {x >= 0, x1+x2+x3 <= 1}.
#   HALF_STD_DELTA: (1/2) * STD_DELTA, the image polytope of the projective
#     reference moment map nu (which carries a factor-2 normalization; see
#     NU_NORMALIZATION_NOTE).
#
# The integer quotient matrix M_P maps STD_DELTA onto TILDE_DELTA, vertex to
# vertex; its inverse has denominator 2 and gives the closed form
#     mu_Lambda = ((f1-f2+f3)/2, (f1+f2-f3)/2, (-f1+f2+f3)/2).

from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Optional, TYPE_CHECKING

import numpy as np

from .errors import OutsidePolytope, ZeroVector
from .su2 import GroupElement, commutator, distance, mul, trace_angle
from .tolerances import EPS_MAT, EPS_POLY

if TYPE_CHECKING:  # pragma: no cover
    from .repvar import Representation

# Machine-readable flag for the printed normalization of nu: its image is
# (1/2)*Delta, not Delta, so image-coincidence checks rescale by 2 and report
# this note instead of silently fixing the formula.
NU_NORMALIZATION_NOTE = (
    "nu image spans (1/2)*Delta; coincidence with the mu_Lambda image is "
    "checked after rescaling nu by 2 (printed factor-2 normalization "
    "discrepancy, flagged not fixed)"
)


class PolytopeTag(Enum):
    TILDE_DELTA = "tilde-delta"
    STD_DELTA = "delta"
    HALF_STD_DELTA = "half-delta"


class RegionKind(Enum):
    INTERIOR = "interior"
    FACE = "face"
    EDGE = "edge"
    VERTEX = "vertex"


@dataclass(frozen=True)
class Region:
    """Region of a point relative to a polytope: which constraints are active."""

    kind: RegionKind
    active: tuple[int, ...]

    @property
    def label(self) -> str:
        if self.kind is RegionKind.INTERIOR:
            return "interior"
        return f"{self.kind.value}({'|'.join(str(i) for i in self.active)})"


@dataclass(frozen=True)
class SimplexPoint:
    """A 3-vector tagged with its region relative to one of the polytopes."""

    x: np.ndarray
    region: Region
    polytope: PolytopeTag

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.float64)
        if x.shape != (3,):
            raise ValueError("SimplexPoint expects shape (3,)")
        x.setflags(write=False)
        object.__setattr__(self, "x", x)

    @property
    def is_interior(self) -> bool:
        return self.region.kind is RegionKind.INTERIOR

    @property
    def on_boundary(self) -> bool:
        return not self.is_interior


@dataclass(frozen=True)
class Polytope:
    """Closed convex polytope in half-space form A x <= b."""

    tag: PolytopeTag
    a: np.ndarray
    b: np.ndarray
    vertices: np.ndarray

    def __post_init__(self):
        for name in ("a", "b", "vertices"):
            arr = np.asarray(getattr(self, name), dtype=np.float64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def margin(self, x) -> np.ndarray:
        """max_i (A x - b)_i: <= 0 inside, grows linearly outside."""
        x = np.asarray(x, dtype=np.float64)
        return np.max(x @ self.a.T - self.b, axis=-1)

    def contains(self, x, tol: float = EPS_POLY) -> np.ndarray:
        return self.margin(x) <= tol

    def classify(self, x, tol: float = EPS_POLY) -> Optional[SimplexPoint]:
        """Region-classified point if inside the closed polytope, else None."""
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (3,):
            raise ValueError("classify expects a single 3-vector")
        slack = x @ self.a.T - self.b
        if np.max(slack) > tol:
            return None
        active = tuple(int(i) for i in np.flatnonzero(np.abs(slack) <= tol))
        kind = {0: RegionKind.INTERIOR, 1: RegionKind.FACE, 2: RegionKind.EDGE}.get(
            len(active), RegionKind.VERTEX
        )
        return SimplexPoint(x, Region(kind, active), self.tag)


TILDE_DELTA = Polytope(
    PolytopeTag.TILDE_DELTA,
    a=np.array(
        [
            [-1.0, -1.0, 1.0],
            [-1.0, 1.0, -1.0],
            [1.0, -1.0, -1.0],
            [1.0, 1.0, 1.0],
        ]
    ),
    b=np.array([0.0, 0.0, 0.0, 2.0]),
    vertices=np.array(
        [[0.0, 0.0, 0.0], [0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]
    ),
)

STD_DELTA = Polytope(
    PolytopeTag.STD_DELTA,
    a=np.array(
        [
            [-1.0, 0.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, -1.0],
            [1.0, 1.0, 1.0],
        ]
    ),
    b=np.array([0.0, 0.0, 0.0, 1.0]),
    vertices=np.array(
        [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    ),
)

HALF_STD_DELTA = Polytope(
    PolytopeTag.HALF_STD_DELTA,
    a=STD_DELTA.a,
    b=np.array([0.0, 0.0, 0.0, 0.5]),
    vertices=0.5 * STD_DELTA.vertices,
)


def tilde_delta_contains(x, tol: float = EPS_POLY) -> Optional[SimplexPoint]:
    """Region-classified point of the trace tetrahedron, None if outside."""
    return TILDE_DELTA.classify(x, tol)


def delta_contains(x, tol: float = EPS_POLY) -> Optional[SimplexPoint]:
    return STD_DELTA.classify(x, tol)


# ---------------------------------------------------------------------------
# quotient matrix
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuotientMatrix:
    """The integer matrix carrying STD_DELTA onto TILDE_DELTA (inverse has denominator 2)."""

    m: np.ndarray
    inv_numerator: np.ndarray
    denominator: int

    def apply(self, x) -> np.ndarray:
        return np.asarray(x, dtype=np.float64) @ self.m.T

    def apply_inverse(self, f) -> np.ndarray:
        return np.asarray(f, dtype=np.float64) @ self.inv_numerator.T / self.denominator


M_P = QuotientMatrix(
    m=np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.int64),
    inv_numerator=np.array([[1, -1, 1], [1, 1, -1], [-1, 1, 1]], dtype=np.int64),
    denominator=2,
)


# ---------------------------------------------------------------------------
# moment maps
# ---------------------------------------------------------------------------


def moment_coordinates(rho: "Representation") -> np.ndarray:
    """(f(h1), f(h2), f(h1 h2)) as a raw (..., 3) array; batch-friendly."""
    f1 = trace_angle(rho.h1)
    f2 = trace_angle(rho.h2)
    f3 = trace_angle(mul(rho.h1, rho.h2))
    return np.stack([f1, f2, f3], axis=-1)


def moment_mu(rho: "Representation", tol: float = EPS_POLY) -> SimplexPoint:
    """The moment triple of trace angles, tagged in TILDE_DELTA.

    OutsidePolytope signals a numerical bug: the image of the moment map is
    the whole closed tetrahedron, never more.
    """
    coords = moment_coordinates(rho)
    if coords.shape != (3,):
        raise ValueError("moment_mu expects a single representation")
    point = TILDE_DELTA.classify(coords, tol)
    if point is None:
        raise OutsidePolytope(f"moment triple {coords} violates the tetrahedron")
    return point


def mu_lambda_coordinates(rho: "Representation") -> np.ndarray:
    """Closed form ((f1-f2+f3)/2, (f1+f2-f3)/2, (-f1+f2+f3)/2); batch-friendly."""
    return M_P.apply_inverse(moment_coordinates(rho))


def mu_lambda(rho: "Representation", tol: float = EPS_POLY) -> SimplexPoint:
    """The quotient moment map: inverse quotient matrix applied to moment_mu."""
    coords = mu_lambda_coordinates(rho)
    if coords.shape != (3,):
        raise ValueError("mu_lambda expects a single representation")
    point = STD_DELTA.classify(coords, tol)
    if point is None:
        raise OutsidePolytope(f"quotient moment triple {coords} outside the simplex")
    return point


def nu_P3(z, tol: float = EPS_POLY) -> SimplexPoint:
    """Reference moment map on nonzero complex 4-vectors, as printed:

        nu[z] = (|z_1|^2, |z_2|^2, |z_3|^2) / (2 |z|^2)

    (components 1..3 of z = (z_0, z_1, z_2, z_3)).  The image is
    HALF_STD_DELTA -- see NU_NORMALIZATION_NOTE for the factor-2 flag.
    """
    z = np.asarray(z, dtype=np.complex128)
    if z.shape != (4,):
        raise ValueError("nu_P3 expects a complex 4-vector")
    n2 = float(np.sum(np.abs(z) ** 2))
    if n2 == 0.0:
        raise ZeroVector("nu undefined at z = 0")
    val = np.abs(z[1:]) ** 2 / (2.0 * n2)
    point = HALF_STD_DELTA.classify(val, tol)
    assert point is not None  # |z_i|^2 sum to at most |z|^2
    return point


def boundary_commutation_check(
    rho: "Representation",
    poly_tol: float = EPS_POLY,
    mat_tol: float = EPS_MAT,
) -> bool:
    """True iff (moment on the tetrahedron boundary) == (h1 and h2 commute)."""
    on_boundary = moment_mu(rho, poly_tol).on_boundary
    res = float(distance(commutator(rho.h1, rho.h2), GroupElement.identity()))
    return on_boundary == (res < mat_tol)


# ---------------------------------------------------------------------------
# CSV export
# ---------------------------------------------------------------------------


def write_simplex_csv(points: Iterable[SimplexPoint], stream: IO[str]) -> int:
    """Write (x1, x2, x3, region, polytope) rows; returns the row count."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["x1", "x2", "x3", "region", "polytope"])
    n = 0
    for p in points:
        writer.writerow(
            ["%.17g" % p.x[0], "%.17g" % p.x[1], "%.17g" % p.x[2], p.region.label, p.polytope.value]
        )
        n += 1
    return n
