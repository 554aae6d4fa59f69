"""Combinatorics of triangulated surfaces given as index triples."""
from __future__ import annotations

from collections import defaultdict, deque
from typing import Dict, Iterable, Sequence, Tuple

import numpy as np

Edge = Tuple[int, int]


def edge_faces(faces: Sequence[Sequence[int]]) -> Dict[Edge, list]:
    incidence: Dict[Edge, list] = defaultdict(list)
    for f, tri in enumerate(faces):
        for a, b in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            incidence[(min(a, b), max(a, b))].append(f)
    return incidence


def counts(faces: Sequence[Sequence[int]]) -> Tuple[int, int, int]:
    """(V, E, F) counting only vertices that appear in some face."""
    faces = np.asarray(faces)
    return len(np.unique(faces)), len(edge_faces(faces.tolist())), len(faces)


def euler_characteristic(faces) -> int:
    v, e, f = counts(faces)
    return v - e + f


def degenerate_faces(faces) -> int:
    return sum(len(set(t)) < 3 for t in np.asarray(faces).tolist())


def is_closed_surface(faces) -> bool:
    """Every edge lies on exactly two triangles and no triangle is degenerate."""
    faces = np.asarray(faces).tolist()
    if degenerate_faces(faces):
        return False
    return all(len(fs) == 2 for fs in edge_faces(faces).values())


def is_orientable(faces) -> bool:
    """Try to orient all triangles coherently by breadth-first propagation."""
    faces = np.asarray(faces).tolist()
    incidence = edge_faces(faces)
    neighbours = defaultdict(list)
    for fs in incidence.values():
        for i in fs:
            for j in fs:
                if i != j:
                    neighbours[i].append(j)

    def directed(tri, flip):
        a, b, c = tri
        es = ((a, b), (b, c), (c, a))
        return {(y, x) for x, y in es} if flip else set(es)

    flip = [None] * len(faces)
    for start in range(len(faces)):
        if flip[start] is not None:
            continue
        flip[start] = False
        queue = deque([start])
        while queue:
            i = queue.popleft()
            di = directed(faces[i], flip[i])
            for j in neighbours[i]:
                # coherent orientations traverse a shared edge in opposite directions
                want = any(e in di for e in directed(faces[j], False))
                if flip[j] is None:
                    flip[j] = want
                    queue.append(j)
                elif flip[j] != want:
                    return False
    return True


def boundary_cycles(edges: Iterable[Edge]) -> int:
    """Number of connected components of a graph in which every vertex has degree 2.

    Raises ValueError if some vertex does not have degree 2.
    """
    adj = defaultdict(list)
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    bad = [v for v, ns in adj.items() if len(ns) != 2]
    if bad:
        raise ValueError(f"vertices {sorted(map(str, bad))} do not have degree 2")
    seen = set()
    cycles = 0
    for v in adj:
        if v in seen:
            continue
        cycles += 1
        stack = [v]
        while stack:
            x = stack.pop()
            if x in seen:
                continue
            seen.add(x)
            stack.extend(adj[x])
    return cycles
