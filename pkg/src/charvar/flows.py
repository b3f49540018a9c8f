# flows.py
# The three commuting twist circles on interior representation classes: two
# right-multiplication twists along the axes of h1 and h2, and a third flow
# whose generator pair (X, Y) is built from the products h2 h1 and h1 h2,
#
#     X = h2 h1 - (h2 h1)^{-1},   Y = h1 h2 - (h1 h2)^{-1}
#
# (as matrices; as quaternions these are the pure vectors 2 vec(h2 h1) and
# 2 vec(h1 h2), of equal length since both products share a trace).
#
# Normalization: every circle uses the *unit* generator, so angle pi
# multiplies the acted slots by -I and the action has period 2 pi.  With this
# parametrization the kernel of the torus action on classes is exactly
# {(0,0,0), (pi,pi,pi)}: at (pi,pi,pi) the sign from the third circle cancels
# the sign from the first (on g1) and second (on g2) circle, slot by slot --
# and the arithmetic here makes that cancellation bitwise.
#
# Everything broadcasts: a TorusElement may hold angle arrays, and act maps a
# batch of quadruples under a batch of angles elementwise.

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateGenerator
from .repvar import Representation, class_equal
from .su2 import AlgebraElement, GroupElement, exp_alg, mul
from .tolerances import EPS_CENTER, EPS_MAT

__all__ = [
    "TorusElement",
    "FlowGenerators",
    "FlowIdentityReport",
    "KernelFreenessReport",
    "generators",
    "act",
    "verify_flow_identities",
    "kernel_and_freeness_check",
]

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True, eq=False)
class TorusElement:
    """Angles (phi1, phi2, phi3) of the three twist circles, reduced mod 2 pi.

    Fields may be scalars or broadcasting angle arrays.  Composition is
    componentwise addition mod 2 pi.
    """

    phi1: np.ndarray
    phi2: np.ndarray
    phi3: np.ndarray

    def __post_init__(self):
        for name in ("phi1", "phi2", "phi3"):
            a = np.mod(np.asarray(getattr(self, name), dtype=np.float64), TWO_PI)
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    @classmethod
    def zero(cls) -> "TorusElement":
        return cls(0.0, 0.0, 0.0)

    @classmethod
    def kernel(cls) -> "TorusElement":
        """The nontrivial kernel element (pi, pi, pi)."""
        return cls(np.pi, np.pi, np.pi)

    @classmethod
    def from_array(cls, t) -> "TorusElement":
        t = np.asarray(t, dtype=np.float64)
        if t.shape[-1:] != (3,):
            raise ValueError("TorusElement.from_array expects shape (..., 3)")
        return cls(t[..., 0], t[..., 1], t[..., 2])

    def as_array(self) -> np.ndarray:
        return np.stack(
            np.broadcast_arrays(self.phi1, self.phi2, self.phi3), axis=-1
        )

    def compose(self, other: "TorusElement") -> "TorusElement":
        return TorusElement(
            self.phi1 + other.phi1, self.phi2 + other.phi2, self.phi3 + other.phi3
        )

    __add__ = compose

    def inverse(self) -> "TorusElement":
        return TorusElement(-self.phi1, -self.phi2, -self.phi3)

    def kernel_distance(self) -> np.ndarray:
        """max-norm circle distance to the nearer of (0,0,0) and (pi,pi,pi)."""
        t = self.as_array()
        d0 = np.abs((t + np.pi) % TWO_PI - np.pi)
        dk = np.abs(t - np.pi)
        return np.minimum(np.max(d0, axis=-1), np.max(dk, axis=-1))


@dataclass(frozen=True)
class FlowGenerators:
    """Unit twist generators of an interior quadruple.

    xi1_hat, xi2_hat: axes of h1, h2.  X_hat, Y_hat: unit directions of
    h2 h1 - (h2 h1)^{-1} and h1 h2 - (h1 h2)^{-1} (positive multiples).
    """

    xi1_hat: AlgebraElement
    xi2_hat: AlgebraElement
    X_hat: AlgebraElement
    Y_hat: AlgebraElement


def _axis(g: GroupElement, name: str, center_tol: float) -> AlgebraElement:
    v = AlgebraElement(g.vec)
    if np.any(v.norm < center_tol):
        raise DegenerateGenerator(
            f"{name} is within {center_tol:g} of the center; "
            "the twist flows are defined on interior classes only"
        )
    return v.unit()


def generators(
    rho: Representation, center_tol: float = EPS_CENTER
) -> FlowGenerators:
    """Unit generators of the three circles at rho.

    DegenerateGenerator if any of h1, h2, h1 h2 is (numerically) central --
    such classes sit over the boundary of the moment tetrahedron, where the
    torus action is not defined.
    """
    h2h1 = mul(rho.h2, rho.h1)
    h1h2 = mul(rho.h1, rho.h2)
    return FlowGenerators(
        xi1_hat=_axis(rho.h1, "h1", center_tol),
        xi2_hat=_axis(rho.h2, "h2", center_tol),
        X_hat=_axis(h2h1, "h2*h1", center_tol),
        Y_hat=_axis(h1h2, "h1*h2", center_tol),
    )


def _scaled(hat: AlgebraElement, phi: np.ndarray) -> AlgebraElement:
    return AlgebraElement(hat.v * np.asarray(phi, dtype=np.float64)[..., None])


def act(
    t: TorusElement, rho: Representation, center_tol: float = EPS_CENTER
) -> Representation:
    """The torus action:

        (e^{phi3 X^} g1 e^{phi1 xi1^},  h1,  e^{phi3 Y^} g2 e^{phi2 xi2^},  h2).

    h-slots pass through untouched (the moment triple is invariant bitwise);
    the relation is preserved to roundoff.  DegenerateGenerator on boundary
    classes, as for generators().
    """
    gen = generators(rho, center_tol)
    g1 = mul(mul(exp_alg(_scaled(gen.X_hat, t.phi3)), rho.g1),
             exp_alg(_scaled(gen.xi1_hat, t.phi1)))
    g2 = mul(mul(exp_alg(_scaled(gen.Y_hat, t.phi3)), rho.g2),
             exp_alg(_scaled(gen.xi2_hat, t.phi2)))
    h1, h2 = rho.h1, rho.h2
    if g1.batch_shape != h1.batch_shape:
        # batched angles over a scalar tuple: fan the untouched slots out
        shape = g1.batch_shape + (4,)
        h1 = GroupElement(np.broadcast_to(h1.q, shape).copy())
        h2 = GroupElement(np.broadcast_to(h2.q, shape).copy())
    return Representation(g1, h1, g2, h2)


@dataclass(frozen=True)
class FlowIdentityReport:
    """Residuals of the two intertwining identities at flow time t:

        e^{tX} h2 = h2 e^{tY}    and    h1 e^{tX} = e^{tY} h1,

    evaluated with the raw (unnormalized) generators X, Y.
    """

    t: float
    residual_h2: float
    residual_h1: float

    @property
    def max_residual(self) -> float:
        return max(self.residual_h2, self.residual_h1)

    def passed(self, tol: float = EPS_MAT) -> bool:
        return self.max_residual < tol


def verify_flow_identities(rho: Representation, t: float) -> FlowIdentityReport:
    """Check the conjugation identities that make the third circle close up.

    Uses raw X = 2 vec(h2 h1), Y = 2 vec(h1 h2) (the identities hold for the
    unnormalized generators at any common time, including the degenerate
    commuting case where X = Y and both sides agree trivially).
    """
    if rho.batch_shape != ():
        raise ValueError("verify_flow_identities is scalar-only")
    x_raw = AlgebraElement(2.0 * mul(rho.h2, rho.h1).vec)
    y_raw = AlgebraElement(2.0 * mul(rho.h1, rho.h2).vec)
    etx = exp_alg(_scaled(x_raw, t))
    ety = exp_alg(_scaled(y_raw, t))

    def dist(a: GroupElement, b: GroupElement) -> float:
        return float(np.sqrt(2.0) * np.linalg.norm(a.q - b.q))

    return FlowIdentityReport(
        t=float(t),
        residual_h2=dist(mul(etx, rho.h2), mul(rho.h2, ety)),
        residual_h1=dist(mul(rho.h1, etx), mul(ety, rho.h1)),
    )


@dataclass(frozen=True)
class KernelFreenessReport:
    """Empirical kernel/freeness evidence for the torus action at one class."""

    kernel_fixes_exactly: bool
    trials: int
    violations: tuple[np.ndarray, ...]

    @property
    def passed(self) -> bool:
        return self.kernel_fixes_exactly and not self.violations


def kernel_and_freeness_check(
    rho: Representation,
    trials: int,
    rng: np.random.Generator,
    angle_tol: float = 1e-6,
    class_tol: float = EPS_MAT,
) -> KernelFreenessReport:
    """(a) (pi,pi,pi) fixes the quadruple slot-by-slot, bitwise; (b) `trials`
    random angles bounded away from the kernel all move the class."""
    if rho.batch_shape != ():
        raise ValueError("kernel_and_freeness_check is scalar-only")
    acted = act(TorusElement.kernel(), rho)
    kernel_exact = all(
        np.array_equal(a.q, b.q) for a, b in zip(acted.elements(), rho.elements())
    )
    violations: list[np.ndarray] = []
    done = 0
    while done < trials:
        t = TorusElement.from_array(rng.uniform(0.0, TWO_PI, size=3))
        if float(t.kernel_distance()) < angle_tol:
            continue
        done += 1
        if class_equal(act(t, rho), rho, class_tol):
            violations.append(t.as_array())
    return KernelFreenessReport(
        kernel_fixes_exactly=kernel_exact,
        trials=trials,
        violations=tuple(violations),
    )
