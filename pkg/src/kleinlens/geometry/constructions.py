"""Klein bottles assembled from pieces on a genus-one Heegaard splitting.

Moebius bands in solid tori, the S^1 x S^2 example, the two-Moebius-band
embedding in L(4n, 2n+-1), and the handle decomposition whose boundary curve
is counted against the meridian mu1.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from ..lens_core import (Basis, GluingMatrix, Sign, TorusClass, apply_gluing,
                         are_homeomorphic, klein_bottle_embeds,
                         lens_from_meridian_class, normalize)
from . import meshtools
from .fibration import (heegaard_identification_from_fibration, seifert_over_rp2,
                        seifert_over_s2)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ConstructionReport:
    """Outcome of a construction: computed values plus pass/fail checks."""

    construction: str
    values: List[Tuple[str, object]] = field(default_factory=list)
    checks: List[Check] = field(default_factory=list)
    curves: dict = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, value) -> None:
        self.values.append((name, value))

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)


# -- Moebius bands -----------------------------------------------------------

def moebius_in_solid_torus(t: float, r: float, sign: Sign = Sign.PLUS) -> Tuple[complex, complex]:
    """[(t, r)] -> (e^{2 pi i t}, r e^{+-pi i t}); boundary 2 lambda +- mu."""
    if not (0.0 <= t <= 1.0 and -1.0 <= r <= 1.0):
        raise ValueError(f"(t, r) = ({t}, {r}) outside [0,1] x [-1,1]")
    s = Sign.parse(sign).value_int
    return cmath.exp(2j * math.pi * t), r * cmath.exp(s * 1j * math.pi * t)


def moebius_boundary_trace(samples: int = 10_000, sign: Sign = Sign.PLUS) -> np.ndarray:
    """The boundary circle: r = 1 for t in [0, 1], then r = -1 for t in [0, 1]."""
    half = samples // 2
    ts = np.linspace(0.0, 1.0, half, endpoint=False)
    s = Sign.parse(sign).value_int
    pts = []
    for r in (1.0, -1.0):
        pts.append(np.column_stack([np.exp(2j * np.pi * ts), r * np.exp(s * 1j * np.pi * ts)]))
    return np.vstack(pts)


def winding_numbers(curve: np.ndarray) -> Tuple[float, float]:
    """Accumulated argument of each coordinate around a closed sampled curve, in turns."""
    closed = np.vstack([curve, curve[:1]])
    out = []
    for k in range(2):
        steps = np.angle(closed[1:, k] / closed[:-1, k])
        out.append(float(steps.sum() / (2 * math.pi)))
    return out[0], out[1]


def _moebius_grid(tcells: int, rcells: int, offset: int = 0):
    """Triangulated band; vertex (i, j) at t = i/tcells, r = -1 + 2j/rcells.

    (tcells, j) is glued to (0, rcells - j).  Returns faces and a map from
    boundary position on the torus (i, side) to vertex id.
    """
    def vid(i, j):
        if i == tcells:
            i, j = 0, rcells - j
        return offset + i * (rcells + 1) + j

    faces = []
    for i in range(tcells):
        for j in range(rcells):
            a, b, c, d = vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1)
            faces += [(a, b, c), (a, c, d)]
    boundary = {}
    for i in range(tcells):
        boundary[(i, 1)] = vid(i, rcells)
        boundary[(i, -1)] = vid(i, 0)
    return faces, boundary, vid


def klein_in_s1xs2(tcells: int = 16, rcells: int = 4) -> ConstructionReport:
    """Two Moebius bands with boundary 2 lambda + mu glued by mu1 ~ mu2, lambda1 ~ lambda2.

    The pieces are two solid tori S^1 x D^2 (the gluing is the identity on
    the boundary tori).
    """
    rep = ConstructionReport("klein_in_s1xs2")
    rep.add("ambient", "S1xD2 + S1xD2, identity gluing = S1xS2")
    rep.add("longitude_convention", "lambda = S1 x {*}, mu = {*} x boundary(D2)")
    trace = moebius_boundary_trace()
    wl, wm = winding_numbers(trace)
    side1 = (round(wl), round(wm))
    rep.add("boundary_class_side1_(lambda,mu)", side1)
    # identity gluing carries the class over unchanged
    side2 = side1
    rep.add("boundary_class_side2_(lambda,mu)", side2)
    rep.check("side1_is_2lambda+mu", side1 == (2, 1),
              f"winding ({wl:.17g}, {wm:.17g})")
    rep.check("classes_match_under_gluing", side1 == side2)

    faces1, bd1, _ = _moebius_grid(tcells, rcells)
    nverts = tcells * (rcells + 1)
    faces2, bd2, _ = _moebius_grid(tcells, rcells, offset=nverts)
    merge = {bd2[key]: bd1[key] for key in bd1}
    faces2 = [tuple(merge.get(v, v) for v in f) for f in faces2]
    # merged vertices must sit at the same point of the common boundary torus
    def position(v, offset):
        i, j = divmod(v - offset, rcells + 1)
        return np.array(moebius_in_solid_torus(i / tcells, -1.0 + 2.0 * j / rcells))

    worst = 0.0
    for v2, v1 in merge.items():
        worst = max(worst, float(np.abs(position(v2, nverts) - position(v1, 0)).max()))
    rep.add("boundary_vertex_mismatch", worst)
    rep.check("boundaries_coincide", worst < 1e-12)
    faces = faces1 + faces2
    chi = meshtools.euler_characteristic(faces)
    rep.add("euler_characteristic", chi)
    rep.check("euler_characteristic_zero", chi == 0)
    rep.check("closed_surface", meshtools.is_closed_surface(faces))
    rep.check("nonorientable", not meshtools.is_orientable(faces))
    rep.curves["moebius_boundary"] = trace
    return rep


# -- two Moebius bands in L(4n, 2n+-1) ---------------------------------------

def klein_gluing(n: int, sign: Sign) -> GluingMatrix:
    """Heegaard gluing of L(4n, 2n+-1) with witnesses r = n, s = -(2n-+1)."""
    s = Sign.parse(sign).value_int
    return GluingMatrix(4 * n, 2 * n + s, n, -(2 * n - s))


def two_moebius_construction(n: int, sign: Sign) -> ConstructionReport:
    """Band with boundary 2 lambda1 + mu1 in V1 meets one with boundary
    +-(2 lambda2 - mu2) in V2."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    sign = Sign.parse(sign)
    s = sign.value_int
    rep = ConstructionReport("two_moebius")
    g = klein_gluing(n, sign)
    space = normalize(g.p, g.q)
    rep.add("space", str(space))
    rep.add("bezout", f"{g.p}*{g.r} + {g.q}*{g.s} = {g.p * g.r + g.q * g.s}")
    rep.add("gluing_mu1", g.describe()[0])
    rep.add("gluing_lambda1", g.describe()[1])
    rep.check("bezout", g.p * g.r + g.q * g.s == 1)
    rep.check("determinant_minus_one", g.determinant == -1)
    band1 = TorusClass(1, 2, Basis.HEEGAARD_SIDE_1)
    image = apply_gluing(g, band1)
    expected = TorusClass(-s, 2 * s, Basis.HEEGAARD_SIDE_2)
    rep.add("band1_boundary", str(band1))
    rep.add("band1_boundary_on_side2", str(image))
    rep.add("sign", sign.value)
    rep.check("image_is_+-(2lambda2-mu2)", image == expected, f"expected {expected}")
    wl, wm = winding_numbers(moebius_boundary_trace(sign=Sign.MINUS))
    rep.add("band2_boundary_winding_(lambda,mu)", (round(wl), round(wm)))
    rep.check("band2_realises_2lambda2-mu2", (round(wl), round(wm)) == (2, -1))
    rep.check("klein_bottle_embeds_in_space", klein_bottle_embeds(space).embeds)
    return rep


# -- handle decomposition ----------------------------------------------------

@dataclass(frozen=True)
class Segment:
    """One arc of the 1-handlebody boundary, between two corner labels."""

    label: str
    start: str
    end: str


@dataclass(frozen=True)
class CrossingTerm:
    """A group of intersection points of the boundary curve with mu2 or lambda2.

    ``orientation`` is the sign every point in the group carries.
    """

    label: str
    count: int
    orientation: int


@dataclass(frozen=True)
class HandleLayout:
    """Combinatorial record of the handles on the splitting torus of L(4n, 2n+1).

    The 0-handle is a meridional disc of V2.  Both 1-handles are twisted bands;
    their feet sit on the disc boundary in the order P P' Q Q'.  The second
    band runs once around in each direction and passes ``passes_over_first``
    times over the first band, each pass adding two crossings with mu2 per
    edge of the band and two crossings with lambda2 in total.  The layout for
    the minus sign is the mirror image under (z1, z2) -> (z1, conj z2), which
    reverses mu2.
    """

    n: int
    sign: Sign
    segments: Tuple[Segment, ...]
    mu2_terms: Tuple[CrossingTerm, ...]
    lambda2_terms: Tuple[CrossingTerm, ...]
    passes_over_first: int


def handle_layout(n: int, sign: Sign = Sign.PLUS, twisted: bool = True) -> HandleLayout:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    sign = Sign.parse(sign)
    disc = (Segment("disc P->P'", "p1", "p2"), Segment("disc P'->Q", "p3", "q0"),
            Segment("disc Q->Q'", "q1", "q2"), Segment("disc Q'->P", "q3", "p0"))
    if twisted:
        band1 = (Segment("handle1 edge a", "p0", "p2"), Segment("handle1 edge b", "p1", "p3"))
        band2 = (Segment("handle2 edge a", "q0", "q2"), Segment("handle2 edge b", "q1", "q3"))
    else:
        band1 = (Segment("handle1 edge a", "p0", "p3"), Segment("handle1 edge b", "p1", "p2"))
        band2 = (Segment("handle2 edge a", "q0", "q3"), Segment("handle2 edge b", "q1", "q2"))
    passes = n - 1
    # crossings with mu2 count lambda2 (+), crossings with lambda2 count mu2 (-)
    mirror = -1 if sign is Sign.MINUS else 1
    mu2_terms = (
        CrossingTerm("handle1", 2, 1),
        CrossingTerm("handle2 edge a", 1, 1),
        CrossingTerm("handle2 edge a over handle1", 2 * passes, 1),
        CrossingTerm("handle2 edge b", 1, 1),
        CrossingTerm("handle2 edge b over handle1", 2 * passes, 1),
    )
    lambda2_terms = (
        CrossingTerm("handle1", 2, -mirror),
        CrossingTerm("handle2", 1, -mirror),
        CrossingTerm("handle2 over handle1", 2 * passes, -mirror),
    )
    return HandleLayout(n, sign, disc + band1 + band2, mu2_terms, lambda2_terms, passes)


@dataclass(frozen=True)
class HandleClass:
    layout: HandleLayout
    mu2_intersections: int
    lambda2_intersections: int
    boundary_class: TorusClass
    meridian_image: TorusClass

    @property
    def matches_meridian(self) -> bool:
        return self.boundary_class == self.meridian_image


def handle_boundary_class(layout: HandleLayout) -> HandleClass:
    """Boundary class of the 1-handlebody from its intersection counts."""
    edges = [(seg.start, seg.end) for seg in layout.segments]
    try:
        cycles = meshtools.boundary_cycles(edges)
    except ValueError as exc:
        raise ValueError(f"handle layout boundary is not a closed curve: {exc}") from None
    if cycles != 1:
        raise ValueError(f"handle layout boundary has {cycles} components, expected 1")
    n = layout.n
    geo_mu2 = sum(t.count for t in layout.mu2_terms)
    geo_lam2 = sum(t.count for t in layout.lambda2_terms)
    lam_coef = sum(t.count * t.orientation for t in layout.mu2_terms)
    mu_coef = sum(t.count * t.orientation for t in layout.lambda2_terms)
    cls = TorusClass(mu_coef, lam_coef, Basis.HEEGAARD_SIDE_2)
    if layout.sign is Sign.PLUS:
        g = GluingMatrix(4 * n, 2 * n + 1, n, -(2 * n - 1))
    else:
        # mirror of L(4n, 2n+1) is L(4n, -(2n+1)) = L(4n, 2n-1)
        g = GluingMatrix(4 * n, -(2 * n + 1), n, 2 * n - 1)
    mu1 = apply_gluing(g, TorusClass(1, 0, Basis.HEEGAARD_SIDE_1))
    result = HandleClass(layout, geo_mu2, geo_lam2, cls, mu1)
    if not result.matches_meridian:
        raise ArithmeticError(f"handle boundary {cls} is not the meridian {mu1}")
    return result


def handles_construction(n: int, sign: Sign) -> ConstructionReport:
    sign = Sign.parse(sign)
    rep = ConstructionReport("handles")
    layout = handle_layout(n, sign)
    hc = handle_boundary_class(layout)
    space = lens_from_meridian_class(hc.meridian_image)
    rep.add("space", str(space))
    rep.add("raw_space", f"L({space.p},{space.raw_q})")
    rep.add("mu2_terms", " + ".join(str(t.count) for t in layout.mu2_terms))
    rep.add("lambda2_terms", " + ".join(str(t.count) for t in layout.lambda2_terms))
    rep.add("mu2_intersections", hc.mu2_intersections)
    rep.add("lambda2_intersections", hc.lambda2_intersections)
    rep.add("passes_over_first_handle", layout.passes_over_first)
    rep.add("boundary_class", str(hc.boundary_class))
    rep.add("mu1_image", str(hc.meridian_image))
    rep.check("mu2_count_is_4n", hc.mu2_intersections == 4 * n)
    rep.check("lambda2_count_is_2n+1", hc.lambda2_intersections == 2 * n + 1)
    rep.check("boundary_is_mu1", hc.matches_meridian)
    cycles = meshtools.boundary_cycles((seg.start, seg.end) for seg in layout.segments)
    rep.check("single_boundary_curve", cycles == 1)
    rep.check("klein_bottle_embeds_in_space", klein_bottle_embeds(space).embeds)
    return rep


def seifert_construction(n: int, sign: Sign) -> ConstructionReport:
    """Klein bottle as the preimage of an orientation-reversing loop in RP^2(n)."""
    sign = Sign.parse(sign)
    rep = ConstructionReport("seifert")
    rp2 = seifert_over_rp2(n)
    s2 = seifert_over_s2(n)
    ident = heegaard_identification_from_fibration(n)
    rep.add("longitude_convention", "lambda ~ (1,0) on the boundary of nu K")
    rep.add("attaching_class", f"({n},{sign.value_int})")
    rep.add("fibration_rp2", str(rp2))
    rep.add("rp2_fiber_on_T", str(rp2.fiber_class_on_T))
    rep.add("rp2_fiber_in_filling", str(rp2.fiber_class_in_filling))
    rep.add("fibration_s2", str(s2))
    rep.add("s2_fiber_on_T", str(s2.fiber_class_on_T))
    rep.add("s2_fiber_in_filling", str(s2.fiber_class_in_filling))
    for key, value in ident.steps:
        rep.add(key, value)
    target = normalize(4 * n, 2 * n + sign.value_int)
    rep.add("target", str(target))
    rep.check("rp2_fiber_is_mu-n*lambda",
              (rp2.fiber_class_in_filling.mu, rp2.fiber_class_in_filling.lam) == (1, -n))
    rep.check("s2_fiber_is_lambda",
              (s2.fiber_class_in_filling.mu, s2.fiber_class_in_filling.lam) == (0, 1))
    rep.check("identification_is_L(4n,2n-1)", ident.space.q == (2 * n - 1) % (4 * n))
    rep.check("homeomorphic_to_target", are_homeomorphic(ident.space, target))
    return rep
