"""Weight systems of a circle action on C^k and the lattice of invariant exponents.

A monomial ``z^a zbar^b`` is invariant under ``t.z = (t^n_1 z_1, ..., t^n_k z_k)``
exactly when ``sum n_i (a_i - b_i) == 0``.  When the weights generate a minimal
Hilbert basis the exponent lattice ``M_n`` has the explicit basis
``l_i = e_i + ebar_i`` and ``eta_i = d_{i+1} e_{i+1} + d_i ebar_i``.

Indices are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd, prod
from typing import Optional, Sequence, Tuple


class WeightError(ValueError):
    """Invalid weights."""


class NotMinimalError(WeightError):
    """The weights do not generate a minimal Hilbert basis."""


class NotInLatticeError(ValueError):
    """A point is not in the invariant lattice M_n."""


@dataclass(frozen=True)
class LatticePoint:
    """Exponent pair ``(a, b)`` of the monomial ``z^a zbar^b``."""

    a: Tuple[int, ...]
    b: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")

    @classmethod
    def zero(cls, k: int) -> "LatticePoint":
        return cls((0,) * k, (0,) * k)

    @classmethod
    def e(cls, k: int, i: int, c: int = 1) -> "LatticePoint":
        a = [0] * k
        a[i] = c
        return cls(a, (0,) * k)

    @classmethod
    def ebar(cls, k: int, i: int, c: int = 1) -> "LatticePoint":
        b = [0] * k
        b[i] = c
        return cls((0,) * k, b)

    @property
    def k(self) -> int:
        return len(self.a)

    def __add__(self, other: "LatticePoint") -> "LatticePoint":
        return LatticePoint(
            [x + y for x, y in zip(self.a, other.a)],
            [x + y for x, y in zip(self.b, other.b)],
        )

    def __sub__(self, other: "LatticePoint") -> "LatticePoint":
        return self + (-other)

    def __neg__(self) -> "LatticePoint":
        return LatticePoint([-x for x in self.a], [-x for x in self.b])

    def __mul__(self, c: int) -> "LatticePoint":
        return LatticePoint([c * x for x in self.a], [c * x for x in self.b])

    __rmul__ = __mul__

    def conjugate(self) -> "LatticePoint":
        return LatticePoint(self.b, self.a)

    def weight(self, n: Sequence[int]) -> int:
        return sum(ni * (ai - bi) for ni, ai, bi in zip(n, self.a, self.b))

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.a) and all(x >= 0 for x in self.b)

    @property
    def degree(self) -> int:
        return sum(self.a) + sum(self.b)

    def as_tuple(self) -> Tuple[int, ...]:
        return self.a + self.b

    def __str__(self):
        parts = []
        for sym, vec in (("e", self.a), ("ebar", self.b)):
            for i, c in enumerate(vec):
                if c:
                    parts.append(f"{c}*{sym}_{i + 1}")
        return " + ".join(parts) if parts else "0"


def _cofactor_gcds(n: Sequence[int]) -> Tuple[int, ...]:
    return tuple(reduce(gcd, n[:i] + n[i + 1:], 0) for i in range(len(n)))


@dataclass(frozen=True)
class WeightSystem:
    """Positive, relatively prime weights ``n_1..n_k`` with their cofactor gcds.

    ``d[i]`` is the gcd of every weight except ``n[i]``; ``minimal`` records
    whether ``n[i] == prod(d[j] for j != i)`` for all ``i``.
    """

    n: Tuple[int, ...]
    d: Tuple[int, ...] = field(init=False)
    minimal: bool = field(init=False)
    # number of leading weights of the system this one was extended from
    base_k: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        n = tuple(int(x) for x in self.n)
        if len(n) < 2:
            raise WeightError(f"need at least two weights, got {len(n)}")
        if any(x <= 0 for x in n):
            raise WeightError(f"weights must be positive: {n}")
        if reduce(gcd, n) != 1:
            raise WeightError(f"weights not relatively prime: gcd{n} = {reduce(gcd, n)}")
        d = _cofactor_gcds(n)
        minimal = all(n[i] == prod(d[:i] + d[i + 1:]) for i in range(len(n)))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "minimal", minimal)

    @property
    def k(self) -> int:
        return len(self.n)

    @property
    def dprod(self) -> int:
        return prod(self.d)

    @property
    def ones(self) -> frozenset:
        """Indices ``i`` with ``d_i == 1``."""
        return frozenset(i for i, di in enumerate(self.d) if di == 1)

    def dd(self, i: int, j: int) -> int:
        """``d_i`` when ``i != j`` and 1 on the diagonal."""
        return 1 if i == j else self.d[i]

    def require_minimal(self) -> None:
        if not self.minimal:
            raise NotMinimalError(
                f"weights {self.n} do not generate a minimal Hilbert basis (d = {self.d})"
            )

    def __str__(self):
        return ",".join(map(str, self.n))


def build_weight_system(n: Sequence[int]) -> WeightSystem:
    return WeightSystem(tuple(n))


@dataclass(frozen=True)
class BasisCoords:
    """Coordinates in the basis ``eta_1..eta_{k-1}, l_1..l_k`` of ``M_n``."""

    eta: Tuple[int, ...]
    ell: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "eta", tuple(self.eta))
        object.__setattr__(self, "ell", tuple(self.ell))
        if len(self.eta) != len(self.ell) - 1:
            raise ValueError("eta must have one entry fewer than ell")

    @classmethod
    def zero(cls, k: int) -> "BasisCoords":
        return cls((0,) * (k - 1), (0,) * k)

    @classmethod
    def from_vector(cls, vec: Sequence[int]) -> "BasisCoords":
        k = (len(vec) + 1) // 2
        return cls(tuple(vec[: k - 1]), tuple(vec[k - 1:]))

    def as_vector(self) -> Tuple[int, ...]:
        return self.eta + self.ell

    def __add__(self, other: "BasisCoords") -> "BasisCoords":
        return BasisCoords.from_vector([x + y for x, y in zip(self.as_vector(), other.as_vector())])

    def __mul__(self, c: int) -> "BasisCoords":
        return BasisCoords.from_vector([c * x for x in self.as_vector()])

    __rmul__ = __mul__

    def dot(self, other: "BasisCoords") -> int:
        return sum(x * y for x, y in zip(self.as_vector(), other.as_vector()))


def in_lattice(ws: WeightSystem, x: LatticePoint) -> bool:
    """Membership in ``M_n`` by the defining linear equation."""
    return x.k == ws.k and x.weight(ws.n) == 0


def in_semigroup(ws: WeightSystem, x: LatticePoint) -> bool:
    return in_lattice(ws, x) and x.is_nonnegative()


def basis_elements(ws: WeightSystem) -> list:
    """``[l_1, ..., l_k, eta_1, ..., eta_{k-1}]`` as lattice points."""
    ws.require_minimal()
    k, d = ws.k, ws.d
    ls = [LatticePoint.e(k, i) + LatticePoint.ebar(k, i) for i in range(k)]
    etas = [LatticePoint.e(k, i + 1, d[i + 1]) + LatticePoint.ebar(k, i, d[i]) for i in range(k - 1)]
    return ls + etas


def to_basis_coords(ws: WeightSystem, x: LatticePoint) -> BasisCoords:
    """Expand ``x`` in the lattice basis by forward substitution.

    Raises NotInLatticeError when some ``eta_i`` comes out non-integral or the
    last ``ell`` does not match ``b_k``.
    """
    ws.require_minimal()
    if x.k != ws.k:
        raise NotInLatticeError(f"point has {x.k} coordinates, weights have {ws.k}")
    k, d = ws.k, ws.d
    a, b = x.a, x.b
    ell = [a[0]]
    eta = []
    for i in range(k - 1):
        q, r = divmod(b[i] - ell[i], d[i])
        if r:
            raise NotInLatticeError(f"{x} is not in M_n: eta_{i + 1} is not integral")
        eta.append(q)
        ell.append(a[i + 1] - d[i + 1] * q)
    if ell[-1] != b[-1]:
        raise NotInLatticeError(f"{x} is not in M_n: final coordinate mismatch")
    return BasisCoords(tuple(eta), tuple(ell))


def from_basis_coords(ws: WeightSystem, c: BasisCoords) -> LatticePoint:
    k, d = ws.k, ws.d
    a = [c.ell[i] + (d[i] * c.eta[i - 1] if i > 0 else 0) for i in range(k)]
    b = [c.ell[i] + (d[i] * c.eta[i] if i < k - 1 else 0) for i in range(k)]
    return LatticePoint(a, b)


def iota(ws: WeightSystem, r: Sequence[int]) -> Tuple[int, ...]:
    """Map ``r`` in ``n^perp`` to ``(n_i r_i) / (d_1 ... d_k)`` in ``I^perp``."""
    if len(r) != ws.k or sum(ri * ni for ri, ni in zip(r, ws.n)) != 0:
        raise ValueError(f"{tuple(r)} is not in n^perp for weights {ws.n}")
    D = ws.dprod
    out = []
    for ri, ni in zip(r, ws.n):
        q, rem = divmod(ni * ri, D)
        if rem:
            raise NotMinimalError(f"iota({tuple(r)}) is not integral: iota is not an isomorphism")
        out.append(q)
    return tuple(out)


def iota_inverse(ws: WeightSystem, t: Sequence[int]) -> Tuple[int, ...]:
    if len(t) != ws.k or sum(t) != 0:
        raise ValueError(f"{tuple(t)} is not in I^perp")
    D = ws.dprod
    out = []
    for ti, ni in zip(t, ws.n):
        q, rem = divmod(ti * D, ni)
        if rem:
            raise NotMinimalError(f"{tuple(t)} has no integral preimage under iota")
        out.append(q)
    return tuple(out)


def extend_weights(ws: WeightSystem, m: int) -> WeightSystem:
    """Append ``m`` copies of ``d_1 ... d_k``; keeps the system minimal."""
    ws.require_minimal()
    if m < 1:
        raise ValueError("m must be positive")
    return WeightSystem(ws.n + (ws.dprod,) * m, base_k=ws.base_k or ws.k)
