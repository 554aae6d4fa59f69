"""The twisted interval bundle nu K and its two Seifert fibrations.

nu K = ([0,1] x S^1 x [-1,1]) / (1, theta, r) ~ (0, -theta, -r), with the
Klein bottle at r = 0.  Its boundary torus T is generated by the interval
circle a = [0,1] x {0} x {+-1} and the fibre circle b = {1/2} x S^1 x {1}.
A Dehn filling glues the meridian mu of a solid torus to (n, l) on T and,
as the simplest complement, the longitude lambda to (1, 0).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..lens_core import Basis, LensSpace, TorusClass, lens_from_meridian_class

TWO_PI = 2.0 * math.pi


class Base(enum.Enum):
    RP2 = "RP2"
    S2 = "S2"


class NuKModel:
    """Parameter model of nu K with its boundary identification."""

    def __init__(self, tol: float = 1e-9):
        self.tol = tol

    @staticmethod
    def glue(t: float, theta: float, r: float) -> Tuple[float, float, float]:
        """Send a point on the t = 1 face to the t = 0 face (and back)."""
        if t == 1.0:
            return 0.0, (-theta) % TWO_PI, -r
        if t == 0.0:
            return 1.0, (-theta) % TWO_PI, -r
        return t, theta % TWO_PI, r

    @staticmethod
    def boundary_basis() -> Tuple[TorusClass, TorusClass]:
        return (TorusClass(1, 0, Basis.NUK_BOUNDARY), TorusClass(0, 1, Basis.NUK_BOUNDARY))

    def is_exceptional(self, theta: float, r: float) -> bool:
        """(theta, r) is fixed by (theta, r) -> (-theta, -r)."""
        if abs(r) > self.tol:
            return False
        th = theta % TWO_PI
        return min(th, TWO_PI - th) <= self.tol or abs(th - math.pi) <= self.tol


@dataclass(frozen=True)
class FiberCurve:
    """A closed fibre, as ordered points (t, theta, r) in the parameter box."""

    points: np.ndarray = field(repr=False)
    length: int
    through: Tuple[float, float]

    @property
    def segments(self) -> int:
        return self.length


def fiber_through(model: NuKModel, theta: float, r: float, samples: int = 16) -> FiberCurve:
    """The Seifert fibre of the S^2(2,2) fibration through (., theta, r).

    Generic fibres are the two intervals at (theta, r) and (-theta, -r) closed
    up by the gluing (length 2); the two exceptional ones close after one
    interval (length 1).
    """
    if abs(r) > 1 + model.tol:
        raise ValueError(f"r = {r} lies outside [-1, 1]")
    ts = np.linspace(0.0, 1.0, samples)
    first = np.column_stack([ts, np.full(samples, theta % TWO_PI), np.full(samples, r)])
    if model.is_exceptional(theta, r):
        return FiberCurve(first, 1, (theta, r))
    second = np.column_stack([ts, np.full(samples, (-theta) % TWO_PI), np.full(samples, -r)])
    return FiberCurve(np.vstack([first, second]), 2, (theta, r))


def filling_longitude(n: int, ell: int) -> TorusClass:
    """A class completing (n, l) to a basis of H_1(T); (1, 0) when l = +-1."""
    if math.gcd(n, ell) != 1:
        raise ValueError(f"attaching class not primitive: gcd({n}, {ell}) != 1")
    if abs(ell) == 1:
        return TorusClass(1, 0, Basis.NUK_BOUNDARY)
    # n*y - l*x = 1
    x = (-pow(ell, -1, abs(n))) % abs(n) if abs(n) > 1 else 0
    y = (1 + ell * x) // n
    return TorusClass(x, y, Basis.NUK_BOUNDARY)


def boundary_to_filling(n: int, ell: int, c: TorusClass) -> TorusClass:
    """Rewrite a class on T in the (mu, lambda) basis of the filling torus."""
    if c.basis is not Basis.NUK_BOUNDARY:
        raise ValueError("expected a class on the boundary of nu K")
    lam = filling_longitude(n, ell)
    # columns: images of mu and lambda in (a, b) coordinates
    a, b, cc, d = n, lam.mu, ell, lam.lam
    det = a * d - b * cc
    mu_coef = (d * c.mu - b * c.lam) * det
    lam_coef = (-cc * c.mu + a * c.lam) * det
    return TorusClass(mu_coef, lam_coef, Basis.FILLING_TORUS)


@dataclass(frozen=True)
class SeifertDescriptor:
    base: Base
    singular_fibers: Tuple[int, ...]
    fiber_class_on_T: TorusClass
    fiber_class_in_filling: TorusClass
    exceptional_points: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        if self.base is Base.RP2 and len(self.singular_fibers) != 1:
            raise ValueError("a fibration over RP^2 here carries exactly one cone point entry")
        if self.base is Base.S2 and self.singular_fibers != (2, 2):
            raise ValueError("the fibration over S^2 has exactly two fibres of order 2")

    @property
    def genuine_singular_fibers(self) -> Tuple[int, ...]:
        return tuple(k for k in self.singular_fibers if k > 1)

    def __str__(self) -> str:
        cones = ",".join(str(k) for k in self.genuine_singular_fibers)
        return f"{self.base.value}({cones})" if cones else self.base.value


def seifert_over_rp2(n: int) -> SeifertDescriptor:
    """Circle bundle over the Moebius band, extended over the (n, 1) filling.

    The fibre {1/2} x S^1 x {1} is (0, 1) on T, which is mu - n lambda in the
    filling torus; that slope fibres the solid torus with an order-n core.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    fiber = TorusClass(0, 1, Basis.NUK_BOUNDARY)
    return SeifertDescriptor(Base.RP2, (n,), fiber, boundary_to_filling(n, 1, fiber))


def seifert_over_s2(n: int) -> SeifertDescriptor:
    """Interval fibres of nu K paired into circles; base D^2(2,2) capped by a disc.

    The regular fibre is (1, 0) on T, i.e. the filling longitude, so the
    fibration extends as a product over the solid torus.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    fiber = TorusClass(1, 0, Basis.NUK_BOUNDARY)
    return SeifertDescriptor(Base.S2, (2, 2), fiber, boundary_to_filling(n, 1, fiber),
                             ((0.0, 0.0), (math.pi, 0.0)))


@dataclass(frozen=True)
class FibrationIdentification:
    n: int
    regular_fiber: TorusClass
    meridian_image: TorusClass
    space: LensSpace
    steps: Tuple[Tuple[str, str], ...]


def heegaard_identification_from_fibration(n: int) -> FibrationIdentification:
    """Track the meridian of V_1 to the boundary of V_2.

    V_1, V_2 are neighbourhoods of the two order-2 fibres.  The regular fibre
    runs twice along V_2 and is 2 lambda2 + mu2 there; mu1 picks up one copy
    of -mu2 and 2n copies of the regular fibre with negative sign (the two
    circles mu - n lambda on the filling torus become -2n lambda = (-2n, 0)).
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    side2 = Basis.HEEGAARD_SIDE_2
    mu2 = TorusClass(1, 0, side2)
    lam2 = TorusClass(0, 1, side2)
    regular = 2 * lam2 + mu2
    # the two arcs of mu1' on T, each (0, 1) = mu - n lambda on the filling
    # torus, slide to -n lambda there; together -2n lambda = (-2n, 0) on T,
    # i.e. -2n regular fibres
    fiber_filling = seifert_over_rp2(n).fiber_class_in_filling
    assert (fiber_filling.mu, fiber_filling.lam) == (1, -n)
    regular_count = 2 * fiber_filling.lam
    meridian = -mu2 + regular_count * regular
    space = lens_from_meridian_class(meridian)
    expected = (2 * n - 1) % (4 * n)
    if (space.p, space.q) != (4 * n, expected):
        raise ArithmeticError(f"identification gives {space}, expected L({4 * n},{expected})")
    steps = (
        ("regular_fiber_on_V2", str(regular)),
        ("mu1_prime_on_T", f"{regular_count}*a"),
        ("mu1", str(meridian)),
        ("raw_lens", f"L({4 * n},{space.raw_q})"),
        ("lens", str(space)),
    )
    return FibrationIdentification(n, regular, meridian, space, steps)
