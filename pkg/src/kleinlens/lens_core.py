"""Lens-space arithmetic.

Normalization and unoriented classification of L(p, q), the deck
transformation on the unit sphere in C^2, genus-one Heegaard gluings and the
two embeddability decisions (Klein bottle, projective plane).
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

__all__ = [
    "Basis", "Sign", "LensSpace", "TorusClass", "GluingMatrix",
    "EmbeddabilityVerdict", "normalize", "lens", "are_homeomorphic",
    "homeomorphism_class", "deck_generator", "deck_power",
    "heegaard_gluing", "apply_gluing", "lens_from_meridian_class",
    "klein_bottle_embeds", "klein_bottle_embeds_by_enumeration",
    "projective_plane_embeds", "SPHERE_TOLERANCE",
]

SPHERE_TOLERANCE = 1e-9


class Basis(enum.Enum):
    """Which torus (and which basis on it) a homology class is written in."""

    HEEGAARD_SIDE_1 = "HeegaardSide1"
    HEEGAARD_SIDE_2 = "HeegaardSide2"
    NUK_BOUNDARY = "NuKBoundary"
    # meridian/longitude of the solid torus used for a Dehn filling of nu K
    FILLING_TORUS = "FillingTorus"


class Sign(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def value_int(self) -> int:
        return 1 if self is Sign.PLUS else -1

    @classmethod
    def parse(cls, text) -> "Sign":
        if isinstance(text, Sign):
            return text
        key = str(text).strip().lower()
        if key in ("+", "plus", "+1", "1"):
            return cls.PLUS
        if key in ("-", "minus", "-1"):
            return cls.MINUS
        raise ValueError(f"unknown sign {text!r}; expected '+' or '-'")


@dataclass(frozen=True)
class LensSpace:
    """L(p, q) in canonical form, remembering the q it was built from.

    ``q`` is canonical: 1 <= q <= p-1 for p >= 2, and (p, q) = (1, 0) for S^3.
    ``raw_q`` is whatever integer the caller supplied.
    """

    p: int
    q: int
    raw_q: int = field(default=None, compare=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self.raw_q is None:
            object.__setattr__(self, "raw_q", self.q)

    def __str__(self) -> str:
        return f"L({self.p},{self.q})"

    @property
    def is_sphere(self) -> bool:
        return self.p == 1


def normalize(p: int, q: int) -> LensSpace:
    """Reduce q mod p into the canonical range.

    >>> normalize(4, -1)
    LensSpace(p=4, q=3, raw_q=-1)
    """
    p, q = int(p), int(q)
    if p <= 0:
        raise ValueError(f"lens space order must be positive, got p={p}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"not a lens space parameterization: gcd({p}, {q}) != 1")
    return LensSpace(p, q % p, raw_q=q)


lens = normalize


def homeomorphism_class(space: LensSpace) -> frozenset:
    """The residues q' mod p with L(p, q') homeomorphic to ``space``."""
    p, q = space.p, space.q
    if p == 1:
        return frozenset({0})
    inv = pow(q, -1, p)
    return frozenset({q % p, -q % p, inv % p, -inv % p})


def are_homeomorphic(a: LensSpace, b: LensSpace) -> bool:
    """Unoriented classification: q_b = +-q_a^{+-1} (mod p)."""
    return a.p == b.p and b.q % b.p in homeomorphism_class(a)


def _check_on_sphere(point, tol: float) -> Tuple[complex, complex]:
    z1, z2 = complex(point[0]), complex(point[1])
    norm2 = abs(z1) ** 2 + abs(z2) ** 2
    if abs(norm2 - 1.0) > tol:
        raise ValueError(f"point is off the unit sphere: |z|^2 = {norm2!r}")
    return z1, z2


def deck_power(space: LensSpace, point, k: int = 1,
               tol: float = SPHERE_TOLERANCE) -> Tuple[complex, complex]:
    """Apply sigma^k, sigma(z1, z2) = (e^{2 pi i/p} z1, e^{2 pi i q/p} z2)."""
    z1, z2 = _check_on_sphere(point, tol)
    p = space.p
    # reduce the exponents first so that sigma^p is the identity on the nose
    k1 = k % p
    k2 = (k * space.q) % p
    return (z1 * cmath.exp(2j * math.pi * k1 / p),
            z2 * cmath.exp(2j * math.pi * k2 / p))


def deck_generator(space: LensSpace, point,
                   tol: float = SPHERE_TOLERANCE) -> Tuple[complex, complex]:
    return deck_power(space, point, 1, tol)


@dataclass(frozen=True)
class TorusClass:
    """An integral first-homology class on a 2-torus.

    For the Heegaard and filling bases the pair is (mu, lambda) coefficients.
    On the boundary of nu K the pair is (n, l): ``mu`` holds the coefficient of
    the interval-direction circle a, ``lam`` that of the fibre circle b.
    """

    mu: int
    lam: int
    basis: Basis

    def __add__(self, other: "TorusClass") -> "TorusClass":
        self._same_basis(other)
        return TorusClass(self.mu + other.mu, self.lam + other.lam, self.basis)

    def __sub__(self, other: "TorusClass") -> "TorusClass":
        self._same_basis(other)
        return TorusClass(self.mu - other.mu, self.lam - other.lam, self.basis)

    def __neg__(self) -> "TorusClass":
        return TorusClass(-self.mu, -self.lam, self.basis)

    def __rmul__(self, k: int) -> "TorusClass":
        return TorusClass(k * self.mu, k * self.lam, self.basis)

    def _same_basis(self, other: "TorusClass"):
        if self.basis is not other.basis:
            raise ValueError(f"cannot combine classes in {self.basis.value} "
                             f"and {other.basis.value}")

    @property
    def is_primitive(self) -> bool:
        return math.gcd(self.mu, self.lam) == 1

    def __str__(self) -> str:
        lam = f"+{self.lam}" if self.lam >= 0 else str(self.lam)
        return f"{self.mu}*mu{lam}*lambda@{self.basis.value}"

    @classmethod
    def parse(cls, text: str) -> "TorusClass":
        body, _, tag = text.partition("@")
        mu_part, _, lam_part = body.partition("*mu")
        lam_part = lam_part.replace("*lambda", "")
        return cls(int(mu_part), int(lam_part), Basis(tag))


@dataclass(frozen=True)
class GluingMatrix:
    """Genus-one Heegaard gluing  mu1 -> p lambda2 - q mu2,  lambda1 -> s lambda2 + r mu2.

    ``entries`` has the images of mu1 and lambda1 as columns, written in
    (mu2, lambda2) coordinates.
    """

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.r + self.q * self.s != 1:
            raise ArithmeticError(
                f"Bezout witnesses fail: {self.p}*{self.r} + {self.q}*{self.s} != 1")

    @property
    def entries(self) -> Tuple[Tuple[int, int], Tuple[int, int]]:
        return ((-self.q, self.r), (self.p, self.s))

    @property
    def determinant(self) -> int:
        (a, b), (c, d) = self.entries
        return a * d - b * c

    @property
    def space(self) -> LensSpace:
        return normalize(self.p, self.q)

    def describe(self) -> Tuple[str, str]:
        mu1 = apply_gluing(self, TorusClass(1, 0, Basis.HEEGAARD_SIDE_1))
        lam1 = apply_gluing(self, TorusClass(0, 1, Basis.HEEGAARD_SIDE_1))
        return str(mu1), str(lam1)


def heegaard_gluing(space: LensSpace, r: Optional[int] = None,
                    s: Optional[int] = None) -> GluingMatrix:
    """Gluing matrix for the canonical L(p, q).

    Without explicit witnesses, r is the representative of p^{-1} mod q in
    [0, q) (r = 0 for q = 1, and (r, s) = (1, 0) for S^3).
    """
    p, q = space.p, space.q
    if r is None and s is None:
        if q == 0:
            r, s = 1, 0
        elif q == 1:
            r, s = 0, 1
        else:
            r = pow(p, -1, q)
            s = (1 - p * r) // q
    elif r is None or s is None:
        raise ValueError("give both Bezout witnesses r and s, or neither")
    return GluingMatrix(p, q, r, s)


def apply_gluing(g: GluingMatrix, c: TorusClass) -> TorusClass:
    if c.basis is not Basis.HEEGAARD_SIDE_1:
        raise ValueError(f"gluing acts on {Basis.HEEGAARD_SIDE_1.value} classes, "
                         f"got {c.basis.value}")
    (a, b), (cc, d) = g.entries
    return TorusClass(a * c.mu + b * c.lam, cc * c.mu + d * c.lam,
                      Basis.HEEGAARD_SIDE_2)


def lens_from_meridian_class(c: TorusClass) -> LensSpace:
    """Read L(p, q) off the class that mu1 is glued to on the second torus.

    mu1 ~ p lambda2 - q mu2 up to the orientation of the curve, so the overall
    sign is dropped by making the lambda coefficient positive.
    """
    if c.basis is not Basis.HEEGAARD_SIDE_2:
        raise ValueError("meridian class must be written on the second Heegaard torus")
    p, q = c.lam, -c.mu
    if p < 0:
        p, q = -p, -q
    return normalize(p, q)


@dataclass(frozen=True)
class EmbeddabilityVerdict:
    embeds: bool
    n: Optional[int] = None
    sign: Optional[Sign] = None

    def __post_init__(self):
        if self.embeds and (self.n is None or self.sign is None):
            raise ValueError("a positive verdict needs n and sign")

    def __str__(self) -> str:
        if not self.embeds:
            return "no"
        return f"yes, n={self.n}, sign={self.sign.value}"


def klein_bottle_embeds(space: LensSpace) -> EmbeddabilityVerdict:
    """Closed form: p = 4n and q = 2n +- 1 (mod p), up to homeomorphism.

    The homeomorphism class of L(4n, 2n+1) is {2n-1, 2n+1} mod 4n, since
    (2n+1)(2n-1) = -1 mod 4n, so the test is on q itself.  The reported sign
    is the one matching the canonical q; for p = 4 both readings coincide
    (q = 1 = 2n-1, q = 3 = 2n+1).
    """
    p, q = space.p, space.q
    if p % 4 != 0:
        return EmbeddabilityVerdict(False)
    n = p // 4
    if q == (2 * n + 1) % p:
        return EmbeddabilityVerdict(True, n, Sign.PLUS)
    if q == (2 * n - 1) % p:
        return EmbeddabilityVerdict(True, n, Sign.MINUS)
    return EmbeddabilityVerdict(False)


def klein_bottle_embeds_by_enumeration(space: LensSpace) -> bool:
    """Oracle: search all L(4n, 2n+-1) for a homeomorphic one."""
    for n in range(1, space.p + 1):
        for q in (2 * n + 1, 2 * n - 1):
            if are_homeomorphic(space, normalize(4 * n, q)):
                return True
    return False


def projective_plane_embeds(space: LensSpace) -> bool:
    return (space.p, space.q) == (2, 1)
