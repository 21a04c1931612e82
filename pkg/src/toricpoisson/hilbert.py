"""The epimorphism F_k, its kernel, and the Hilbert map on the orbit space.

``F_k : Z^{k^2} -> M_n`` sends ``e_ij`` to the generator ``v_ij``.  Evaluating
the generators at ``z`` gives a semigroup homomorphism ``u(z)`` which separates
circle orbits.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.ntheory.modular import crt

from .cone import ray, ray_labels
from .linalg import column_hnf, integer_kernel
from .weights import BasisCoords, LatticePoint, WeightSystem, to_basis_coords

Label = Tuple[int, int]


@dataclass
class Check:
    """Outcome of a verification: truthy on success, with the first failure otherwise."""

    ok: bool
    reason: Optional[str] = None
    witness: object = None

    def __bool__(self):
        return self.ok


def fk_column_order(k: int) -> List[Label]:
    """Identity block ``e_21, e_32, ..., e_11, ..., e_kk`` then the rest row-major."""
    first = [(i + 1, i) for i in range(k - 1)] + [(i, i) for i in range(k)]
    rest = [lab for lab in ray_labels(k) if lab not in first]
    return first + rest


@dataclass(frozen=True)
class FkMap:
    ws: WeightSystem
    columns: Tuple[Label, ...]
    images: Dict[Label, BasisCoords] = field(compare=False, hash=False)
    matrix: Tuple[Tuple[int, ...], ...]

    def column(self, label: Label) -> Tuple[int, ...]:
        return self.images[label].as_vector()

    @property
    def row_labels(self) -> List[str]:
        k = self.ws.k
        return [f"eta_{m + 1}" for m in range(k - 1)] + [f"l_{m + 1}" for m in range(k)]


def fk_matrix(ws: WeightSystem) -> FkMap:
    ws.require_minimal()
    cols = fk_column_order(ws.k)
    images = {lab: to_basis_coords(ws, ray(ws, *lab)) for lab in cols}
    rows = list(zip(*(images[lab].as_vector() for lab in cols)))
    return FkMap(ws, tuple(cols), images, tuple(tuple(r) for r in rows))


def fk_kernel(ws: WeightSystem) -> List[List[int]]:
    """Z-basis of ``ker F_k`` as a ``k^2 x (k-1)^2`` matrix.

    Rows follow ``fk_matrix(ws).columns``; columns are the basis vectors.
    """
    F = fk_matrix(ws)
    basis = integer_kernel(F.matrix)
    return [list(r) for r in zip(*basis)] if basis else [[] for _ in F.columns]


def kernel_relations(ws: WeightSystem) -> List[Dict[Label, int]]:
    """Kernel basis vectors as ``{label: exponent}`` maps (zeros dropped)."""
    cols = fk_matrix(ws).columns
    K = fk_kernel(ws)
    nvec = len(K[0]) if K else 0
    return [{lab: K[r][c] for r, lab in enumerate(cols) if K[r][c]} for c in range(nvec)]


def kernel_hnf(ws: WeightSystem) -> List[List[int]]:
    K = fk_kernel(ws)
    return column_hnf(list(zip(*K)))


@dataclass
class HomPoint:
    """Values of a semigroup homomorphism ``S_n -> C`` on the generators ``v_ij``."""

    values: Dict[Label, complex]

    def __getitem__(self, lab: Label):
        return self.values[lab]

    def max_diff(self, other: "HomPoint", diagonal: bool = True) -> float:
        return max(
            abs(as_complex(self.values[lab]) - as_complex(other.values[lab]))
            for lab in self.values
            if diagonal or lab[0] != lab[1]
        )


def as_complex(x) -> complex:
    """Float complex value of a number or an exact Gaussian rational."""
    if isinstance(x, (int, float, complex)):
        return complex(x)
    if hasattr(x, "x") and hasattr(x, "y"):
        return complex(float(x.x), float(x.y))
    return complex(x)


def _conj(x):
    c = getattr(x, "conjugate", None)
    if c is not None:
        return c()
    # sympy Gaussian rationals have no conjugate() method
    return type(x)(x.x, -x.y)


def hilbert_eval(ws: WeightSystem, z: Sequence) -> HomPoint:
    """``u(z)``: ``|z_i|^2`` on ``l_i`` and ``z_i^{d_i} conj(z_j)^{d_j}`` on ``v_ij``."""
    ws.require_minimal()
    d = ws.d
    vals = {}
    for i, j in ray_labels(ws.k):
        if i == j:
            vals[(i, j)] = z[i] * _conj(z[i])
        else:
            vals[(i, j)] = z[i] ** d[i] * _conj(z[j]) ** d[j]
    return HomPoint(vals)


def _close(x, y, tol) -> bool:
    if tol == 0:
        return x == y
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def _real_part(x):
    return x.real if isinstance(x, complex) else getattr(x, "x", x)


def _imag_part(x):
    if isinstance(x, complex):
        return x.imag
    return getattr(x, "y", 0)


def check_hom_conditions(ws: WeightSystem, p: HomPoint, tol: float = 1e-9) -> Check:
    """Test whether ``p`` lies in the image of the orbit space.

    Conditions are tried in the order conjugation, diagonal, modulus, kernel;
    the reason names the first one violated.  ``tol = 0`` means exact.
    Closeness is relative to the magnitudes compared.
    """
    ws.require_minimal()
    vals = p.values
    d = ws.d
    labels = ray_labels(ws.k)
    for i, j in labels:
        if not _close(vals[(j, i)], _conj(vals[(i, j)]), tol):
            return Check(False, "conjugation", (i, j))
    for i in range(ws.k):
        v = vals[(i, i)]
        if abs(_imag_part(v)) > tol or _real_part(v) < -tol:
            return Check(False, "diagonal", (i, i))
    for i, j in labels:
        if i != j:
            lhs = vals[(i, j)] * _conj(vals[(i, j)])
            rhs = vals[(i, i)] ** d[i] * vals[(j, j)] ** d[j]
            if not _close(lhs, rhs, tol):
                return Check(False, "modulus", (i, j))
    for rel in kernel_relations(ws):
        involved = [vals[lab] for lab in rel]
        if any((not v) if tol == 0 else abs(v) <= tol for v in involved):
            continue
        num, den = 1, 1
        for lab, e in rel.items():
            if e > 0:
                num = num * vals[lab] ** e
            else:
                den = den * vals[lab] ** (-e)
        if not _close(num, den, tol):
            return Check(False, "kernel", rel)
    return Check(True)


class HomConditionError(ValueError):
    pass


def reconstruct_orbit(ws: WeightSystem, p: HomPoint, tol: float = 1e-9) -> List[complex]:
    """A representative ``w`` with ``u(w) = p`` (principal roots throughout)."""
    res = check_hom_conditions(ws, p, tol)
    if not res:
        raise HomConditionError(f"not in the orbit space: {res.reason} condition fails at {res.witness}")
    k, d = ws.k, ws.d
    diag = [as_complex(p.values[(i, i)]).real for i in range(k)]
    base = next((i for i in range(k) if diag[i] > tol), None)
    if base is None:
        return [0j] * k
    w = [0j] * k
    w[base] = complex(math.sqrt(diag[base]))
    denom = w[base].conjugate() ** d[base]
    for i in range(k):
        if i != base:
            w[i] = principal_root(as_complex(p.values[(i, base)]) / denom, d[i])
    return w


def principal_root(x: complex, n: int) -> complex:
    if x == 0:
        return 0j
    return cmath.exp(cmath.log(x) / n)


def orbit_witness(ws: WeightSystem, z: Sequence[complex], w: Sequence[complex], tol: float = 1e-9):
    """A unit ``t`` with ``z_i = t^{n_i} w_i`` for all ``i``, or None.

    If ``u(z) = u(w)`` then each nonzero ratio ``(z_i / w_i)^{d_i}`` equals a
    common unit ``c = exp(i theta)``; writing ``z_i / w_i = exp(i (theta +
    2 pi q_i) / d_i)`` and solving ``q = q_i mod d_i`` gives
    ``t = exp(i (theta + 2 pi q) / (d_1 ... d_k))``.
    """
    ws.require_minimal()
    z = [as_complex(x) for x in z]
    w = [as_complex(x) for x in w]
    scale = max([1.0] + [abs(x) for x in z + w])
    zero_z = [abs(x) <= tol * scale for x in z]
    zero_w = [abs(x) <= tol * scale for x in w]
    if zero_z != zero_w:
        return None
    live = [i for i in range(ws.k) if not zero_z[i]]
    if not live:
        return 1 + 0j
    d, D = ws.d, ws.dprod
    ratios = {i: z[i] / w[i] for i in live}
    units = {i: ratios[i] ** d[i] for i in live}
    c = units[live[0]]
    if any(abs(abs(u) - 1) > tol * 10 or abs(u - c) > tol * 10 for u in units.values()):
        return None
    theta = cmath.phase(c)
    residues, moduli = [], []
    for i in live:
        q = round((d[i] * cmath.phase(ratios[i]) - theta) / (2 * math.pi))
        residues.append(q % d[i])
        moduli.append(d[i])
    q = int(crt(moduli, residues)[0]) if moduli else 0
    t = cmath.exp(1j * (theta + 2 * math.pi * q) / D)
    if all(abs(z[i] - t ** ws.n[i] * w[i]) <= tol * scale for i in range(ws.k)):
        return t
    return None


def same_orbit(ws: WeightSystem, z: Sequence[complex], w: Sequence[complex], tol: float = 1e-9) -> bool:
    return orbit_witness(ws, z, w, tol) is not None


def project_pi(extended: WeightSystem, x: LatticePoint, k: Optional[int] = None) -> BasisCoords:
    """Orthogonal projection from the extended lattice onto the original ``M_n``.

    Keeps the first ``k`` ``l``-coordinates and the first ``k - 1``
    ``eta``-coordinates, ``k`` being the size of the system that was extended.
    """
    k = k or extended.base_k
    if k is None:
        raise ValueError("cannot tell the original number of weights; pass k")
    c = to_basis_coords(extended, x)
    return BasisCoords(c.eta[: k - 1], c.ell[:k])
