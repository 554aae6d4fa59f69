"""Text exports: Geomview OFF meshes, key = value sidecars, point lists.

Vertices in C^2 are written as 4-dimensional points (Re z1, Im z1, Re z2,
Im z2) with the ``nOFF`` header; stereographic images use plain ``OFF``.
Every real is printed with 17 significant digits.
"""
from __future__ import annotations

import os
from typing import Dict, Iterable, List, Tuple

import numpy as np

from .lens_model import Mesh3D, QuotientMesh


def fmt_real(x: float) -> str:
    # adding 0.0 folds -0.0 into 0.0
    return f"{float(x) + 0.0:.17g}"


def _real_rows(z: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(z):
        return np.column_stack([z[:, 0].real, z[:, 0].imag, z[:, 1].real, z[:, 1].imag])
    return np.asarray(z, dtype=float)


def off_text(vertices: np.ndarray, faces: np.ndarray) -> str:
    rows = _real_rows(vertices)
    dim = rows.shape[1]
    nedges = len({tuple(sorted(e)) for f in np.asarray(faces).tolist()
                  for e in ((f[0], f[1]), (f[1], f[2]), (f[2], f[0]))})
    lines = ["OFF"] if dim == 3 else ["nOFF", str(dim)]
    lines.append(f"{len(rows)} {len(faces)} {nedges}")
    lines += [" ".join(fmt_real(x) for x in row) for row in rows]
    lines += ["3 " + " ".join(str(int(i)) for i in f) for f in faces]
    return "\n".join(lines) + "\n"


def read_off(path: str) -> Tuple[np.ndarray, np.ndarray]:
    with open(path) as fh:
        tokens = fh.read().split("\n")
    header = tokens[0].strip()
    pos = 1
    if header == "nOFF":
        dim = int(tokens[1])
        pos = 2
    elif header == "OFF":
        dim = 3
    else:
        raise ValueError(f"unsupported OFF header {header!r}")
    nv, nf, _ = (int(x) for x in tokens[pos].split())
    pos += 1
    verts = np.array([[float(x) for x in tokens[pos + i].split()] for i in range(nv)])
    pos += nv
    faces = np.array([[int(x) for x in tokens[pos + i].split()[1:]] for i in range(nf)])
    assert verts.shape[1] == dim
    return verts, faces


def write_text(path: str, text: str) -> str:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(text)
    return path


def metadata_text(entries: Iterable[Tuple[str, object]]) -> str:
    """One ``key = value`` record per line; reals at 17 significant digits."""
    out = []
    for key, value in entries:
        if isinstance(value, bool):
            value = "true" if value else "false"
        elif isinstance(value, (float, np.floating)):
            value = fmt_real(value)
        out.append(f"{key} = {value}")
    return "\n".join(out) + "\n"


def read_metadata(path: str) -> List[Tuple[str, str]]:
    with open(path) as fh:
        return [tuple(part.strip() for part in line.split("=", 1))
                for line in fh if line.strip() and not line.startswith("#")]


def mesh_metadata(mesh: QuotientMesh, summary: Iterable[Tuple[str, object]] = ()
                  ) -> List[Tuple[str, object]]:
    v, e, f = mesh.counts
    entries: List[Tuple[str, object]] = [
        ("format", "kleinlens-quotient-mesh 1"),
        ("space", str(mesh.space)),
        ("n", mesh.n),
        ("sign", mesh.sign.value),
        ("resolution", mesh.resolution),
        ("parameter_domain", "[0, pi/(2n)] x [0, pi]"),
        ("map", "(phi, theta) -> (sin(theta) e^{i phi}, cos(theta) e^{sign i phi})"),
        ("vertex_count", v),
        ("edge_count", e),
        ("face_count", f),
        ("euler_characteristic", v - e + f),
        ("triangulation", "quad split along (low,low)-(high,high)"),
        ("seam_count", len(mesh.seam_power)),
    ]
    entries += list(summary)
    for i in range(len(mesh.seam_power)):
        a = mesh.seam_source_index[i]
        b = mesh.seam_target_index[i]
        entries.append((f"seam.{i}",
                        f"{mesh.seam_kind[i]} ({int(a[0])},{int(a[1])}) -> "
                        f"({int(b[0])},{int(b[1])}) sigma^{int(mesh.seam_power[i])}"))
    return entries


def curve_text(points: np.ndarray) -> str:
    """One point per line, in order."""
    rows = _real_rows(np.atleast_2d(points))
    return "\n".join(" ".join(fmt_real(x) for x in row) for row in rows) + "\n"


def write_mesh_bundle(mesh: QuotientMesh, directory: str, stem: str,
                      summary: Iterable[Tuple[str, object]] = (),
                      projected: Mesh3D = None) -> Dict[str, str]:
    paths = {
        "mesh": write_text(os.path.join(directory, f"{stem}.off"),
                           off_text(mesh.vertices, mesh.faces)),
        "metadata": write_text(os.path.join(directory, f"{stem}.meta"),
                               metadata_text(mesh_metadata(mesh, summary))),
    }
    if projected is not None:
        paths["projected"] = write_text(os.path.join(directory, f"{stem}_r3.off"),
                                        off_text(projected.vertices, projected.faces))
    return paths
