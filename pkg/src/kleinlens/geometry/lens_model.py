"""The lens model of L(p, q) and the parametric Klein bottle inside it.

The wedge B = {arg z1 in [0, 2 pi/p]} of the unit sphere is a fundamental
domain for the deck group.  For p = 4n, q = 2n +- 1 the rectangle
[0, pi/2n] x [0, pi] is mapped into B by

    (phi, theta) -> (sin theta e^{i phi}, cos theta e^{+-i phi}),

and the two boundary identifications of the rectangle are realised by sigma
and sigma^{2n}, so the map descends to a Klein bottle in the quotient.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Tuple

import numpy as np
from scipy.spatial import cKDTree

from ..lens_core import LensSpace, Sign, deck_power, normalize
from . import meshtools

TWO_PI = 2.0 * math.pi
MEMBERSHIP_TOL = 1e-9
IDENTITY_TOL = 1e-12
ANGLE_SLACK = 1e-9


def deck_power_array(space: LensSpace, z: np.ndarray, k) -> np.ndarray:
    """sigma^k applied row-wise to an (N, 2) complex array; k may be an array."""
    k = np.asarray(k)
    p = space.p
    k1 = np.mod(k, p)
    k2 = np.mod(k * space.q, p)
    out = np.empty_like(z, dtype=complex)
    out[..., 0] = z[..., 0] * np.exp(2j * np.pi * k1 / p)
    out[..., 1] = z[..., 1] * np.exp(2j * np.pi * k2 / p)
    return out


def _check_sphere(z: np.ndarray, tol: float) -> None:
    norms = np.abs(z[..., 0]) ** 2 + np.abs(z[..., 1]) ** 2
    if np.any(np.abs(norms - 1.0) > tol):
        raise ValueError("point is off the unit sphere")


def canonicalize_array(space: LensSpace, z: np.ndarray, tol: float = MEMBERSHIP_TOL
                       ) -> Tuple[np.ndarray, np.ndarray]:
    """Row-wise version of :func:`lens_fundamental_domain_canonicalize`."""
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    _check_sphere(z, tol)
    p = space.p
    if p == 1:
        return z.copy(), np.zeros(len(z), dtype=np.int64)
    on_axis = np.abs(z[:, 0]) < tol
    # sigma turns z1 by one sector; on the axis z1 = 0 it turns z2 by q sectors
    step = np.where(on_axis, pow(space.q, -1, p), 1)
    angle = np.where(on_axis, np.angle(z[:, 1]), np.angle(z[:, 0]))
    sector = np.floor(_shifted(angle) * p / TWO_PI).astype(np.int64)
    k = np.mod(-sector * step, p)
    w = deck_power_array(space, z, k)
    # rounding can leave a point a hair outside the sector; move it one step
    arg = _shifted(np.where(on_axis, np.angle(w[:, 1]), np.angle(w[:, 0])))
    outside = arg >= TWO_PI / p
    if np.any(outside):
        forward = arg > math.pi + math.pi / p
        k = np.where(outside, np.mod(k + np.where(forward, step, -step), p), k)
        w = deck_power_array(space, z, k)
    return w, k


def _shifted(angle: np.ndarray) -> np.ndarray:
    """Angle in [0, 2 pi) after moving the cut ANGLE_SLACK below zero.

    Points on a sector wall then land at angle 0 (up to rounding) from
    either side, instead of flipping to the far wall.
    """
    return np.mod(angle + ANGLE_SLACK, TWO_PI)


def lens_fundamental_domain_canonicalize(space: LensSpace, z, tol: float = MEMBERSHIP_TOL
                                         ) -> Tuple[Tuple[complex, complex], int]:
    """Return (sigma^k z, k) with arg z1 in [0, 2 pi/p).

    The cut sits ANGLE_SLACK below each sector wall, so the returned argument
    may be up to that much negative.

    Points on the circle z1 = 0 are normalised by arg z2 instead; the orbit
    of (0, z2) rotates z2 through every multiple of 2 pi/p since gcd(p, q) = 1.
    """
    w, k = canonicalize_array(space, np.array([z], dtype=complex), tol)
    return (complex(w[0, 0]), complex(w[0, 1])), int(k[0])


# -- the parametric Klein bottle -------------------------------------------

def klein_map(n: int, sign: Sign, phi, theta) -> np.ndarray:
    """(phi, theta) -> (sin theta e^{i phi}, cos theta e^{+-i phi}).

    The minus branch is the image of the plus branch under (z1, z2) ->
    (z1, conj z2), the orientation-reversing map L(4n, 2n+1) -> L(4n, 2n-1).
    """
    phi = np.asarray(phi, dtype=float)
    theta = np.asarray(theta, dtype=float)
    z = np.stack([np.sin(theta) * np.exp(1j * phi), np.cos(theta) * np.exp(1j * phi)], axis=-1)
    if Sign.parse(sign) is Sign.MINUS:
        z[..., 1] = np.conj(z[..., 1])
    return z


def klein_space(n: int, sign: Sign) -> LensSpace:
    return normalize(4 * n, 2 * n + Sign.parse(sign).value_int)


@dataclass(frozen=True, eq=False)
class QuotientMesh:
    """Triangulated Klein bottle in S^3 with its seam identifications.

    ``vertices`` holds one row per point of the identified surface; ``params``
    the (phi, theta) of that row.  Seam records keep the raw boundary samples:
    ``seam_target[i]`` must equal sigma^{seam_power[i]} of ``seam_source[i]``.
    """

    space: LensSpace
    n: int
    sign: Sign
    resolution: int
    vertices: np.ndarray = field(repr=False)
    params: np.ndarray = field(repr=False)
    faces: np.ndarray = field(repr=False)
    seam_kind: np.ndarray = field(repr=False)
    seam_source_index: np.ndarray = field(repr=False)
    seam_target_index: np.ndarray = field(repr=False)
    seam_source: np.ndarray = field(repr=False)
    seam_target: np.ndarray = field(repr=False)
    seam_power: np.ndarray = field(repr=False)

    @property
    def counts(self) -> Tuple[int, int, int]:
        return meshtools.counts(self.faces)

    @property
    def euler_characteristic(self) -> int:
        v, e, f = self.counts
        return v - e + f


def seam_residuals(mesh: QuotientMesh) -> np.ndarray:
    moved = deck_power_array(mesh.space, mesh.seam_source, mesh.seam_power)
    return np.abs(mesh.seam_target - moved).max(axis=1)


def verify_seams(mesh: QuotientMesh, tol: float = IDENTITY_TOL) -> Tuple[float, bool]:
    res = seam_residuals(mesh)
    worst = float(res.max()) if len(res) else 0.0
    return worst, bool(worst < tol)


class SeamVerificationError(RuntimeError):
    pass


def klein_lens_embedding(n: int, sign: Sign, resolution: int,
                         tol: float = IDENTITY_TOL) -> QuotientMesh:
    """Sample the rectangle on a resolution x resolution cell grid and identify seams.

    Grid vertex (i, j) sits at phi = i pi/(2n R), theta = j pi/R.  Row j = R is
    glued to j = 0 by sigma^{2n}; column i = R to column 0 with theta
    reversed, by sigma.  Each cell is split along its (low, low)-(high, high)
    diagonal.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if resolution < 4:
        raise ValueError(f"resolution must be at least 4, got {resolution}")
    sign = Sign.parse(sign)
    space = klein_space(n, sign)
    R = resolution
    width = math.pi / (2 * n)

    def phi_of(i):
        return np.asarray(i) * (width / R)

    def theta_of(j):
        return np.asarray(j) * (math.pi / R)

    ii, jj = np.meshgrid(np.arange(R), np.arange(R), indexing="ij")
    ii, jj = ii.ravel(), jj.ravel()
    params = np.column_stack([phi_of(ii), theta_of(jj)])
    vertices = klein_map(n, sign, params[:, 0], params[:, 1])

    def vid(i, j):
        i = np.asarray(i).copy()
        j = np.asarray(j).copy()
        right = i == R
        j = np.where(right, R - j, j)
        i = np.where(right, 0, i)
        j = np.where(j == R, 0, j)
        return i * R + j

    ci, cj = np.meshgrid(np.arange(R), np.arange(R), indexing="ij")
    ci, cj = ci.ravel(), cj.ravel()
    a, b = vid(ci, cj), vid(ci + 1, cj)
    c, d = vid(ci + 1, cj + 1), vid(ci, cj + 1)
    faces = np.concatenate([np.column_stack([a, b, c]), np.column_stack([a, c, d])])

    k = np.arange(R + 1)
    # (phi, pi) = sigma^{2n} (phi, 0)
    top_src = klein_map(n, sign, phi_of(k), theta_of(0 * k))
    top_dst = klein_map(n, sign, phi_of(k), theta_of(R + 0 * k))
    # (pi/2n, pi - theta) = sigma (0, theta)
    side_src = klein_map(n, sign, phi_of(0 * k), theta_of(k))
    side_dst = klein_map(n, sign, phi_of(R + 0 * k), theta_of(R - k))
    mesh = QuotientMesh(
        space=space, n=n, sign=sign, resolution=R,
        vertices=vertices, params=params, faces=faces,
        seam_kind=np.array(["theta"] * (R + 1) + ["phi"] * (R + 1)),
        seam_source_index=np.concatenate([np.column_stack([k, 0 * k]), np.column_stack([0 * k, k])]),
        seam_target_index=np.concatenate([np.column_stack([k, R + 0 * k]),
                                          np.column_stack([R + 0 * k, R - k])]),
        seam_source=np.concatenate([top_src, side_src]),
        seam_target=np.concatenate([top_dst, side_dst]),
        seam_power=np.concatenate([np.full(R + 1, 2 * n), np.ones(R + 1, dtype=int)]),
    )
    worst, ok = verify_seams(mesh, tol)
    if not ok:
        raise SeamVerificationError(f"seam residual {worst!r} exceeds {tol!r}")
    return mesh


def corrupt_seam(mesh: QuotientMesh, index: int = 0, offset: float = 1e-6) -> QuotientMesh:
    """Copy of ``mesh`` with one seam target moved (a negative control)."""
    target = mesh.seam_target.copy()
    target[index, 1] *= np.exp(1j * offset)
    return replace(mesh, seam_target=target)


# -- injectivity ------------------------------------------------------------

@dataclass(frozen=True)
class InjectivityReport:
    passed: bool
    min_separation: float
    threshold: float
    closest_pair: Optional[Tuple[int, int, int]]
    violations: int
    vertex_count: int


def _real4(z: np.ndarray) -> np.ndarray:
    return np.column_stack([z[:, 0].real, z[:, 0].imag, z[:, 1].real, z[:, 1].imag])


def embedded_injectivity_check(mesh: QuotientMesh, space: Optional[LensSpace] = None,
                               min_sep: float = 1e-4) -> InjectivityReport:
    """Smallest distance in L(p, q) between images of distinct mesh vertices.

    Every vertex is canonicalised into the wedge and the p deck translates of
    all of them go into one k-d tree; each canonical point is then matched
    against the nearest translate of a different vertex.  Distinct vertices of the identified mesh are distinct points of
    the Klein bottle, so any pair closer than ``min_sep`` is a failure.
    """
    space = space or mesh.space
    canon, _ = canonicalize_array(space, mesh.vertices)
    nv = len(canon)
    if nv < 2:
        return InjectivityReport(True, math.inf, min_sep, None, 0, nv)
    # every deck translate of every canonical point, tagged with its vertex
    cloud = np.concatenate([_real4(deck_power_array(space, canon, k)) for k in range(space.p)])
    owner = np.tile(np.arange(nv), space.p)
    power = np.repeat(np.arange(space.p), nv)
    tree = cKDTree(cloud)
    query = _real4(canon)
    own = np.arange(nv)
    d = np.full(nv, math.inf)
    hit = np.zeros(nv, dtype=np.int64)
    pending = own
    kk = min(4, len(cloud))
    while pending.size:
        dist, idx = tree.query(query[pending], k=kk)
        foreign = owner[idx] != pending[:, None]
        found = foreign.any(axis=1)
        first = np.argmax(foreign, axis=1)
        rows = pending[found]
        d[rows] = dist[found, first[found]]
        hit[rows] = idx[found, first[found]]
        if kk == len(cloud):
            break
        # a vertex's own translates crowded out the others; widen the search
        pending = pending[~found]
        kk = min(kk * 4, len(cloud))
    a = int(np.argmin(d))
    best = (float(d[a]), (a, int(owner[hit[a]]), int(power[hit[a]])))
    violations = set()
    for src in np.nonzero(d < min_sep)[0]:
        for j in tree.query_ball_point(query[src], r=min_sep):
            if owner[j] != src:
                violations.add((min(int(src), int(owner[j])), max(int(src), int(owner[j]))))
    min_found = best[0]
    return InjectivityReport(passed=not violations and min_found >= min_sep,
                             min_separation=min_found, threshold=min_sep,
                             closest_pair=best[1], violations=len(violations),
                             vertex_count=nv)


# -- stereographic projection ----------------------------------------------

@dataclass(frozen=True, eq=False)
class Mesh3D:
    vertices: np.ndarray = field(repr=False)
    faces: np.ndarray = field(repr=False)
    pole: Tuple[complex, complex]
    basis: np.ndarray = field(repr=False)
    annotations: dict = field(default_factory=dict, repr=False)


def _pole_frame(pole) -> Tuple[np.ndarray, np.ndarray]:
    N = _real4(np.array([pole], dtype=complex))[0]
    norm = np.linalg.norm(N)
    if abs(norm - 1.0) > MEMBERSHIP_TOL:
        raise ValueError("pole must lie on the unit sphere")
    N = N / norm
    q, _ = np.linalg.qr(np.column_stack([N, np.eye(4)]))
    return N, q[:, 1:4]


def stereographic_project(points: np.ndarray, pole, tol: float = MEMBERSHIP_TOL) -> np.ndarray:
    """Project unit-sphere points from ``pole`` onto the 3-space orthogonal to it."""
    N, E = _pole_frame(pole)
    x = _real4(np.atleast_2d(np.asarray(points, dtype=complex)))
    h = x @ N
    if np.any(np.linalg.norm(x - N, axis=1) < tol):
        raise ValueError("a point coincides with the projection pole")
    return (x @ E) / (1.0 - h)[:, None]


def stereographic_inverse(y: np.ndarray, pole) -> np.ndarray:
    N, E = _pole_frame(pole)
    y = np.atleast_2d(np.asarray(y, dtype=float))
    s = (y ** 2).sum(axis=1)
    x = (2.0 * (y @ E.T) + (s - 1.0)[:, None] * N[None, :]) / (s + 1.0)[:, None]
    return x[:, [0, 2]] + 1j * x[:, [1, 3]]


def stereographic_export(mesh: QuotientMesh, pole, tol: float = MEMBERSHIP_TOL) -> Mesh3D:
    verts = stereographic_project(mesh.vertices, pole, tol)
    _, E = _pole_frame(pole)
    notes = {
        "space": str(mesh.space),
        "seam_count": int(len(mesh.seam_power)),
        "seam_powers": sorted(set(int(k) for k in mesh.seam_power)),
    }
    return Mesh3D(verts, mesh.faces.copy(), (complex(pole[0]), complex(pole[1])), E, notes)


__all__ = [
    "deck_power_array", "canonicalize_array", "lens_fundamental_domain_canonicalize",
    "klein_map", "klein_space", "QuotientMesh", "seam_residuals", "verify_seams",
    "SeamVerificationError", "klein_lens_embedding", "corrupt_seam",
    "InjectivityReport", "embedded_injectivity_check", "Mesh3D",
    "stereographic_project", "stereographic_inverse", "stereographic_export",
    "deck_power",
]
