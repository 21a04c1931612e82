"""The cone spanned by the invariant semigroup ``S_n`` and its faces.

For a minimal weight system the cone has the ``k^2`` extreme rays
``v_ij = d_i e_i + d_j ebar_j`` (``v_ii = l_i``) and every face is spanned by
the rays indexed by a product ``h x v`` of index sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterable, List, Tuple

import numpy as np

from .weights import (
    BasisCoords,
    LatticePoint,
    WeightSystem,
    to_basis_coords,
)

__all__ = [
    "DualVector",
    "Face",
    "FaceGraph",
    "LatticePoint",
    "conjugate",
    "dual_rays",
    "enumerate_faces",
    "face_count",
    "face_graph",
    "generators",
    "hilbert_basis_oracle",
    "in_dual_cone",
    "is_face",
    "pairing",
    "ray",
    "ray_labels",
    "smallest_face",
    "supporting_functional",
]

# Elements of the dual lattice are written in the same basis as M_n.
DualVector = BasisCoords


def ray_labels(k: int) -> List[Tuple[int, int]]:
    """Row-major ``(i, j)`` labels of the extreme rays."""
    return [(i, j) for i in range(k) for j in range(k)]


def ray(ws: WeightSystem, i: int, j: int) -> LatticePoint:
    k = ws.k
    if i == j:
        return LatticePoint.e(k, i) + LatticePoint.ebar(k, i)
    return LatticePoint.e(k, i, ws.d[i]) + LatticePoint.ebar(k, j, ws.d[j])


def generators(ws: WeightSystem) -> List[LatticePoint]:
    """The ``k^2`` Hilbert basis elements ``v_ij`` in row-major order."""
    ws.require_minimal()
    return [ray(ws, i, j) for i, j in ray_labels(ws.k)]


def conjugate(x: LatticePoint) -> LatticePoint:
    return x.conjugate()


def hilbert_basis_oracle(ws: WeightSystem, bound: int) -> List[LatticePoint]:
    """Irreducible elements of ``S_n`` inside the box ``[0, bound]^{2k}``.

    Brute force, usable for non-minimal weights as well.  A point is kept when
    no previously found irreducible lies componentwise below it; since every
    summand of a point in the box is again in the box, a bound that is too
    small can only lose irreducibles, never invent them.
    """
    k = ws.k
    axis = np.arange(bound + 1)
    half = np.stack(np.meshgrid(*([axis] * k), indexing="ij"), axis=-1).reshape(-1, k)
    w = half @ np.array(ws.n)
    blocks = []
    for value in np.unique(w):
        same = half[w == value]
        ia, ib = np.meshgrid(np.arange(len(same)), np.arange(len(same)), indexing="ij")
        blocks.append(np.hstack([same[ia.ravel()], same[ib.ravel()]]))
    pts = np.vstack(blocks)
    pts = pts[pts.sum(axis=1) > 0]
    pts = pts[np.lexsort(pts.T[::-1])]
    pts = pts[np.argsort(pts.sum(axis=1), kind="stable")]
    found: List[np.ndarray] = []
    basis = np.empty((0, 2 * k), dtype=pts.dtype)
    for p in pts:
        if len(basis) and np.any(np.all(basis <= p, axis=1)):
            continue
        found.append(p)
        basis = np.vstack([basis, p])
    return [LatticePoint(p[:k], p[k:]) for p in found]


@dataclass(frozen=True)
class Face:
    """The face spanned by the rays ``v_ij`` with ``(i, j)`` in ``h x v``.

    A product with an empty factor is the zero face and is stored as
    ``(frozenset(), frozenset())``.
    """

    h: frozenset
    v: frozenset

    def __post_init__(self):
        h, v = frozenset(self.h), frozenset(self.v)
        if not h or not v:
            h = v = frozenset()
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "v", v)

    @classmethod
    def zero(cls) -> "Face":
        return cls(frozenset(), frozenset())

    @property
    def is_zero(self) -> bool:
        return not self.h

    @property
    def dim(self) -> int:
        return 0 if self.is_zero else len(self.h) + len(self.v) - 1

    @property
    def rays(self) -> List[Tuple[int, int]]:
        return sorted(product(self.h, self.v))

    def __str__(self):
        if self.is_zero:
            return "F(0)"
        fmt = lambda s: "{" + ",".join(str(i + 1) for i in sorted(s)) + "}"
        return f"F({fmt(self.h)}x{fmt(self.v)})"


def _subsets(k: int) -> List[frozenset]:
    # bitmask order 1..2^k-1
    return [frozenset(i for i in range(k) if mask >> i & 1) for mask in range(1, 1 << k)]


def enumerate_faces(ws: WeightSystem) -> List[Face]:
    ws.require_minimal()
    subs = _subsets(ws.k)
    return [Face.zero()] + [Face(h, v) for h in subs for v in subs]


def face_count(k: int, dim: int) -> int:
    """Number of faces of dimension ``dim``; the zero face counts for ``dim = 0``."""
    if not 0 <= dim <= 2 * k - 1:
        raise ValueError(f"dimension {dim} out of range 0..{2 * k - 1}")
    if dim == 0:
        return 1
    return sum(comb(k, p) * comb(k, dim + 1 - p) for p in range(1, dim + 1))


def _cover(idx: Iterable[Tuple[int, int]]) -> Tuple[frozenset, frozenset]:
    idx = list(idx)
    return frozenset(i for i, _ in idx), frozenset(j for _, j in idx)


def smallest_face(ws: WeightSystem, idx: Iterable[Tuple[int, int]]) -> Face:
    h, v = _cover(idx)
    if not h:
        raise ValueError("index set must be nonempty")
    return Face(h, v)


def is_face(ws: WeightSystem, rays: Iterable[Tuple[int, int]]) -> bool:
    """True when the rays are exactly the rays of some face (product format)."""
    ws.require_minimal()
    rays = set(rays)
    if not rays:
        return True
    h, v = _cover(rays)
    return rays == set(product(h, v))


def pairing(ws: WeightSystem, i: int, j: int, y: BasisCoords) -> int:
    """``<v_ij, y>`` from the pairing table on the basis ``l_m``, ``eta_m``."""
    ws.require_minimal()
    k, d = ws.k, ws.d
    if not (0 <= i < k and 0 <= j < k):
        raise IndexError(f"ray index ({i}, {j}) out of range for k = {k}")
    total = 0
    for m in range(k):
        if i <= m <= j:
            total += d[m] * y.ell[m]
        elif j < m < i:
            total -= d[m] * y.ell[m]
    for m in range(k - 1):
        if i <= m < j:
            total -= y.eta[m]
        elif j <= m < i:
            total += y.eta[m]
    return total


def in_dual_cone(ws: WeightSystem, y: BasisCoords) -> bool:
    return all(pairing(ws, i, j, y) >= 0 for i, j in ray_labels(ws.k))


def dual_rays(ws: WeightSystem) -> List[DualVector]:
    """``[x_1..x_k, y_1..y_k]``, one ray of the dual cone per facet.

    ``x_m`` vanishes on every row of rays except row ``m``; ``y_m`` on every
    column except column ``m``.
    """
    ws.require_minimal()
    k, d = ws.k, ws.d

    def vec(m, eta_at):
        ell = [0] * k
        ell[m] = 1
        eta = [0] * (k - 1)
        if eta_at is not None:
            eta[eta_at] = d[m]
        return BasisCoords(tuple(eta), tuple(ell))

    xs = [vec(m, m - 1 if m > 0 else None) for m in range(k)]
    ys = [vec(m, m if m < k - 1 else None) for m in range(k)]
    return xs + ys


def supporting_functional(ws: WeightSystem, f: Face) -> DualVector:
    """Sum of the dual rays of the facets containing ``f``.

    Vanishes exactly on the rays of ``f`` and is positive on every other ray.
    For the zero face all ``2k`` dual rays are summed.
    """
    rays = dual_rays(ws)
    k = ws.k
    xs, ys = rays[:k], rays[k:]
    s = BasisCoords.zero(k)
    for m in range(k):
        if m not in f.h:
            s = s + xs[m]
        if m not in f.v:
            s = s + ys[m]
    return s


def ray_coords(ws: WeightSystem, i: int, j: int) -> BasisCoords:
    return to_basis_coords(ws, ray(ws, i, j))


@dataclass(frozen=True)
class FaceGraph:
    """Extreme rays as nodes, two-dimensional faces as edges."""

    nodes: Tuple[Tuple[int, int], ...]
    edges: Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]

    def to_dot(self, name: str = "cone") -> str:
        label = lambda p: f"v_{p[0] + 1}_{p[1] + 1}"
        lines = [f"graph {name} {{"]
        lines += [f"  {label(p)};" for p in self.nodes]
        lines += [f"  {label(p)} -- {label(q)};" for p, q in self.edges]
        lines.append("}")
        return "\n".join(lines) + "\n"


def face_graph(ws: WeightSystem) -> FaceGraph:
    ws.require_minimal()
    nodes = tuple(ray_labels(ws.k))
    edges = tuple(
        (p, q)
        for a, p in enumerate(nodes)
        for q in nodes[a + 1:]
        if p[0] == q[0] or p[1] == q[1]
    )
    return FaceGraph(nodes, edges)
