"""Poisson brackets on ``C[z, zbar]`` built from the invariant cone.

Every bracket here is the biderivation determined by

    {z_i, zbar_j} = -2i eps_ij z_i zbar_j X^{delta_ij F_k(e_ij)},

all other coordinate pairs bracketing to zero.  The four spec kinds differ
only in how ``eps`` and ``delta`` are chosen:

``standard``       eps = id, delta_ii = -1 (the usual symplectic bracket)
``epsilon``        constant brackets {z_i, zbar_j} = -2i eps_ij, eps_ij = 0 if d_i != d_j
``epsilon_delta``  arbitrary integer delta subject to the lower bounds
``face``           delta_ij = -1 on h x h, 0 elsewhere, for h inside {i : d_i = 1}
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ_I

from .hilbert import Check
from .linalg import exact_rank
from .polys import GaussianRational, Poly, RealPoly, gq, to_gq
from .weights import LatticePoint, WeightSystem

KINDS = ("standard", "epsilon", "epsilon_delta", "face")

MINUS_2I = gq(0, -2)


class SpecError(ValueError):
    """A bracket specification violates the conditions for its kind."""


Matrix = Tuple[Tuple[Fraction, ...], ...]


def as_rational_matrix(m, k: int) -> Matrix:
    rows = tuple(tuple(Fraction(x) for x in row) for row in m)
    if len(rows) != k or any(len(r) != k for r in rows):
        raise SpecError(f"expected a {k}x{k} matrix")
    return rows


def as_integer_matrix(m, k: int) -> Tuple[Tuple[int, ...], ...]:
    rows = []
    for row in m:
        out = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise SpecError(f"delta must be an integer matrix, got entry {x}")
            out.append(int(f))
        rows.append(tuple(out))
    rows = tuple(rows)
    if len(rows) != k or any(len(r) != k for r in rows):
        raise SpecError(f"expected a {k}x{k} matrix")
    return rows


def identity(k: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(k)) for i in range(k))


def is_symmetric(m) -> bool:
    return all(m[i][j] == m[j][i] for i in range(len(m)) for j in range(i))


@dataclass(frozen=True)
class BracketSpec:
    """Choice of ``(eps, delta)`` selecting one bracket family; see the module docstring."""

    kind: str
    eps: Matrix
    delta: Optional[Tuple[Tuple[int, ...], ...]] = None
    h: Optional[frozenset] = None

    @property
    def k(self) -> int:
        return len(self.eps)

    def effective_delta(self, ws: WeightSystem) -> Tuple[Tuple[int, ...], ...]:
        k = self.k
        if self.kind == "standard":
            return tuple(tuple(-1 if i == j else 0 for j in range(k)) for i in range(k))
        if self.kind == "epsilon":
            return tuple(tuple(-1 if ws.d[i] == ws.d[j] else 0 for j in range(k)) for i in range(k))
        if self.kind == "face":
            return tuple(tuple(-1 if i in self.h and j in self.h else 0 for j in range(k)) for i in range(k))
        return self.delta

    def validate(self, ws: WeightSystem) -> None:
        ws.require_minimal()
        k = ws.k
        if self.k != k:
            raise SpecError(f"spec is {self.k}x{self.k}, weights have k = {k}")
        if self.kind not in KINDS:
            raise SpecError(f"unknown bracket kind {self.kind!r}")
        eps, d = self.eps, ws.d
        if self.kind == "standard" and eps != identity(k):
            raise SpecError("the standard bracket has eps = identity")
        if self.kind == "epsilon":
            for i, j in product(range(k), repeat=2):
                if eps[i][j] and d[i] != d[j]:
                    raise SpecError(f"eps_{i + 1}{j + 1} must vanish since d_{i + 1} != d_{j + 1}")
        if self.kind == "face":
            if not self.h <= ws.ones:
                raise SpecError(f"face indices {sorted(i + 1 for i in self.h)} must have d_i = 1")
            if not is_symmetric(eps):
                raise SpecError("face brackets require symmetric eps")
            for i, j in product(range(k), repeat=2):
                if eps[i][j] and ((i in self.h) != (j in self.h)):
                    raise SpecError(f"eps_{i + 1}{j + 1} must vanish: exactly one index lies in h")
        delta = self.effective_delta(ws)
        for i, j in product(range(k), repeat=2):
            low = -1 if d[i] == d[j] else 0
            if delta[i][j] < low:
                raise SpecError(
                    f"delta_{i + 1}{j + 1} = {delta[i][j]} violates delta >= {low}"
                    f" (d_{i + 1} {'=' if low == -1 else '!='} d_{j + 1})"
                )


def standard_spec(ws: WeightSystem) -> BracketSpec:
    spec = BracketSpec("standard", identity(ws.k))
    spec.validate(ws)
    return spec


def epsilon_spec(ws: WeightSystem, eps) -> BracketSpec:
    spec = BracketSpec("epsilon", as_rational_matrix(eps, ws.k))
    spec.validate(ws)
    return spec


def epsilon_delta_spec(ws: WeightSystem, eps, delta) -> BracketSpec:
    spec = BracketSpec("epsilon_delta", as_rational_matrix(eps, ws.k), as_integer_matrix(delta, ws.k))
    spec.validate(ws)
    return spec


def face_spec(ws: WeightSystem, h: Iterable[int], eps=None) -> BracketSpec:
    eps = identity(ws.k) if eps is None else as_rational_matrix(eps, ws.k)
    spec = BracketSpec("face", eps, h=frozenset(h))
    spec.validate(ws)
    return spec


def uniform_delta(ws: WeightSystem):
    """``delta_ii = d_i`` and ``delta_ij = 1`` off the diagonal."""
    return tuple(tuple(ws.d[i] if i == j else 1 for j in range(ws.k)) for i in range(ws.k))


def unit_block_delta(ws: WeightSystem):
    """``delta_ij = -1`` when ``d_i = d_j = 1``, else 0."""
    ones = ws.ones
    return tuple(tuple(-1 if i in ones and j in ones else 0 for j in range(ws.k)) for i in range(ws.k))


def generator_exponent(ws: WeightSystem, i: int, j: int, delta: int) -> LatticePoint:
    """Exponent of ``z_i zbar_j X^{delta F_k(e_ij)}``."""
    k = ws.k
    return LatticePoint.e(k, i, 1 + delta * ws.dd(i, j)) + LatticePoint.ebar(k, j, 1 + delta * ws.dd(j, i))


@lru_cache(maxsize=256)
def _generator_table(ws: WeightSystem, spec: BracketSpec) -> Dict[Tuple[int, int], Poly]:
    spec.validate(ws)
    delta = spec.effective_delta(ws)
    table = {}
    for i, j in product(range(ws.k), repeat=2):
        e = spec.eps[i][j]
        if e:
            table[(i, j)] = Poly.monomial(generator_exponent(ws, i, j, delta[i][j]), MINUS_2I * to_gq(e))
    return table


def bracket_generator(ws: WeightSystem, spec: BracketSpec, i: int, j: int) -> Poly:
    """``{z_i, zbar_j}`` for the given spec."""
    return _generator_table(ws, spec).get((i, j), Poly.zero(ws.k))


def bracket(ws: WeightSystem, spec: BracketSpec, f: Poly, g: Poly) -> Poly:
    """``sum_ij {z_i, zbar_j} (df/dz_i dg/dzbar_j - df/dzbar_j dg/dz_i)``."""
    table = _generator_table(ws, spec)
    k = ws.k
    R = f._p.ring
    fv, gv = set(f.variables()), set(g.variables())
    cache = {}

    def d(poly, var):
        key = (id(poly), var)
        if key not in cache:
            cache[key] = poly._p.diff(R.gens[var])
        return cache[key]

    out = R.zero
    for (i, j), c in table.items():
        zi, zbj = i, k + j
        t = R.zero
        if zi in fv and zbj in gv:
            t += d(f, zi) * d(g, zbj)
        if zbj in fv and zi in gv:
            t -= d(f, zbj) * d(g, zi)
        if t:
            out += c._p * t
    return Poly(k, out)


def jacobiator(ws: WeightSystem, spec: BracketSpec, f: Poly, g: Poly, h: Poly) -> Poly:
    br = lambda a, b: bracket(ws, spec, a, b)
    return br(br(f, g), h) + br(br(g, h), f) + br(br(h, f), g)


def coordinates(k: int) -> List[Poly]:
    """``[z_1..z_k, zbar_1..zbar_k]``."""
    return [Poly.z(k, i) for i in range(k)] + [Poly.zb(k, i) for i in range(k)]


def monomial_bracket(ws: WeightSystem, spec: BracketSpec, a: LatticePoint, b: LatticePoint) -> Poly:
    """Closed form on monomials, independent of the derivation route.

    ``-2i sum_ij eps_ij (a_i bbar_j - abar_j b_i) X^{a + b + delta_ij F_k(e_ij)}``
    """
    spec.validate(ws)
    delta = spec.effective_delta(ws)
    k = ws.k
    terms = []
    for i, j in product(range(k), repeat=2):
        coeff = spec.eps[i][j] * (a.a[i] * b.b[j] - a.b[j] * b.a[i])
        if coeff:
            shift = generator_exponent(ws, i, j, delta[i][j]) - LatticePoint.e(k, i) - LatticePoint.ebar(k, j)
            x = a + b + shift
            if not x.is_nonnegative():
                raise ArithmeticError(f"negative exponent {x} with nonzero coefficient")
            terms.append((x.as_tuple(), MINUS_2I * to_gq(coeff)))
    return Poly.from_terms(k, terms)


def standard_monomial_bracket(k: int, a: LatticePoint, b: LatticePoint) -> Poly:
    """``-2i sum_i (a_i bbar_i - abar_i b_i) X^{a + b - l_i}``."""
    terms = []
    for i in range(k):
        coeff = a.a[i] * b.b[i] - a.b[i] * b.a[i]
        if coeff:
            x = a + b - LatticePoint.e(k, i) - LatticePoint.ebar(k, i)
            terms.append((x.as_tuple(), MINUS_2I * coeff))
    return Poly.from_terms(k, terms)


def corollary1_check(ws: WeightSystem, eps, delta) -> Check:
    """Sufficient conditions for ``{ , }_eps^delta`` to be Poisson.

    On failure the reason names the condition and the witness gives the
    (0-based) offending indices; triplets are scanned lexicographically.
    """
    k = ws.k
    eps = [list(r) for r in eps]
    delta = [list(r) for r in delta]
    if any(isinstance(x, complex) and x.imag for r in eps for x in r):
        return Check(False, "eps not real")
    try:
        eps = as_rational_matrix(eps, k)
    except (TypeError, ValueError):
        return Check(False, "eps not real")
    if not is_symmetric(eps):
        return Check(False, "eps not symmetric", _first_asym(eps))
    try:
        delta = as_integer_matrix(delta, k)
    except SpecError:
        return Check(False, "delta not integer")
    if not is_symmetric(delta):
        return Check(False, "delta not symmetric", _first_asym(delta))
    for i, j in product(range(k), repeat=2):
        low = -1 if ws.d[i] == ws.d[j] else 0
        if delta[i][j] < low:
            return Check(False, "delta bound", (i, j))
    for p, q, r in product(range(k), repeat=3):
        if triplet_value(ws, eps, delta, p, q, r):
            return Check(False, "triplet", (p, q, r))
    return Check(True)


def _first_asym(m):
    return next((i, j) for i in range(len(m)) for j in range(len(m)) if m[i][j] != m[j][i])


def triplet_value(ws, eps, delta, p, q, r):
    """``eps_pr eps_qr (delta_pr d_r^p - delta_qr d_r^q)``."""
    return eps[p][r] * eps[q][r] * (delta[p][r] * ws.dd(r, p) - delta[q][r] * ws.dd(r, q))


def mixed_jacobiator_formula(ws: WeightSystem, spec: BracketSpec, p: int, q: int, r: int) -> Poly:
    """Closed form of ``J(z_p, z_q, zbar_r)``.

    ``-4 eps_pr eps_qr (delta_pr d_r^p - delta_qr d_r^q) z_p z_q zbar_r
    X^{delta_pr F_k(e_pr) + delta_qr F_k(e_qr)}``
    """
    k = ws.k
    delta = spec.effective_delta(ws)
    coeff = -4 * triplet_value(ws, spec.eps, delta, p, q, r)
    if not coeff:
        return Poly.zero(k)
    x = (
        generator_exponent(ws, p, r, delta[p][r])
        + generator_exponent(ws, q, r, delta[q][r])
        - LatticePoint.ebar(k, r)
    )
    if not x.is_nonnegative():
        raise ArithmeticError(f"negative exponent {x} with nonzero coefficient")
    return Poly.monomial(x, coeff)


def invariance_check(ws: WeightSystem, spec: BracketSpec, f: Poly, g: Poly) -> bool:
    return bracket(ws, spec, f, g).is_invariant(ws)


@dataclass(frozen=True)
class RealBivector:
    """Coefficients of a bivector on ``R^{2k}`` in the basis ``x_1..x_k, y_1..y_k``.

    ``coeffs[(u, v)]`` with ``u < v`` is the coefficient of ``d/du ^ d/dv``,
    where index ``i`` is ``x_{i+1}`` and index ``k + i`` is ``y_{i+1}``.
    """

    k: int
    coeffs: Dict[Tuple[int, int], RealPoly]

    def coefficient(self, u: int, v: int) -> RealPoly:
        if u == v:
            return RealPoly.zero(self.k)
        if u > v:
            return -self.coefficient(v, u)
        return self.coeffs.get((u, v), RealPoly.zero(self.k))

    def xx(self, i, j):
        return self.coefficient(i, j)

    def yy(self, i, j):
        return self.coefficient(self.k + i, self.k + j)

    def xy(self, i, j):
        return self.coefficient(i, self.k + j)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs.values())

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def matrix_at(self, point: Sequence, exact: bool = False):
        """``2k x 2k`` antisymmetric matrix at ``point = (x_1..x_k, y_1..y_k)``."""
        n = 2 * self.k
        zero = to_gq(0) if exact else 0.0
        M = [[zero] * n for _ in range(n)]
        for (u, v), c in self.coeffs.items():
            val = c.evaluate_exact(point) if exact else c.evaluate(point)
            M[u][v] = val
            M[v][u] = -val
        return M

    def names(self, u: int) -> str:
        return f"x{u + 1}" if u < self.k else f"y{u - self.k + 1}"


def _wedge_terms(k: int, i: int, j: int):
    """``d/dz_i ^ d/dzbar_j`` as ``[(u, v, coefficient)]`` in real coordinates.

    Uses ``d/dz = (d/dx - i d/dy) / 2`` and ``d/dzbar = (d/dx + i d/dy) / 2``.
    """
    quarter = Fraction(1, 4)
    xi, yi, xj, yj = i, k + i, j, k + j
    return [
        (xi, xj, gq(quarter)),
        (xi, yj, gq(0, quarter)),
        (yi, xj, gq(0, -quarter)),
        (yi, yj, gq(quarter)),
    ]


def to_real_bivector(ws: WeightSystem, spec: BracketSpec) -> RealBivector:
    """Rewrite ``sum_ij {z_i, zbar_j} d/dz_i ^ d/dzbar_j`` in ``x, y``.

    Requires symmetric eps and delta; the coefficients then come out real.
    """
    delta = spec.effective_delta(ws)
    if not is_symmetric(spec.eps) or not is_symmetric(delta):
        raise SpecError("reality needs symmetric eps and delta")
    k = ws.k
    acc: Dict[Tuple[int, int], RealPoly] = {}
    for (i, j), c in _generator_table(ws, spec).items():
        rc = RealPoly.from_complex(c)
        for u, v, w in _wedge_terms(k, i, j):
            if u == v:
                continue
            sign = 1
            if u > v:
                u, v, sign = v, u, -1
            acc[(u, v)] = acc.get((u, v), RealPoly.zero(k)) + rc * (w * sign)
    return RealBivector(k, {key: c for key, c in acc.items() if c})


def displayed_real_form(ws: WeightSystem, spec: BracketSpec) -> RealBivector:
    """The same bivector from ``1/2 Re{z_i,zbar_j}`` on ``x_i^x_j + y_i^y_j`` (i<j)
    and ``-1/2 Im{z_i,zbar_j}`` on ``x_i^y_j``; used as a cross-check."""
    k = ws.k
    half = gq(Fraction(1, 2))
    acc: Dict[Tuple[int, int], RealPoly] = {}

    def add(u, v, val):
        acc[(u, v)] = acc.get((u, v), RealPoly.zero(k)) + val

    for i, j in product(range(k), repeat=2):
        c = RealPoly.from_complex(bracket_generator(ws, spec, i, j))
        if i < j:
            add(i, j, c.real_part() * half)
            add(k + i, k + j, c.real_part() * half)
        add(i, k + j, -(c.imag_part() * half))
    return RealBivector(k, {key: c for key, c in acc.items() if c})


def constant_rank(eps) -> int:
    """Rank of ``[[0, eps], [-eps, 0]]``."""
    k = len(eps)
    block = [[0] * k + list(eps[i]) for i in range(k)] + [
        [-Fraction(x) for x in eps[i]] + [0] * k for i in range(k)
    ]
    return exact_rank(block)


def _is_exact(v) -> bool:
    if isinstance(v, (int, Fraction, GaussianRational)):
        return True
    if isinstance(v, complex):
        return v.real.is_integer() and v.imag.is_integer()
    return False


def pointwise_rank(ws: WeightSystem, spec: BracketSpec, z: Sequence) -> int:
    """Rank of the real bivector at ``z``; exact when every ``z_i`` is exact."""
    bv = to_real_bivector(ws, spec)
    if all(_is_exact(v) for v in z):
        gz = [to_gq(v) for v in z]
        point = [QQ_I(c.x, 0) for c in gz] + [QQ_I(c.y, 0) for c in gz]
        return exact_rank(bv.matrix_at(point, exact=True))
    zc = [complex(v) for v in z]
    point = [v.real for v in zc] + [v.imag for v in zc]
    M = np.array(bv.matrix_at(point), dtype=complex)
    return int(np.linalg.matrix_rank(M))
