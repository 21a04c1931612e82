"""Brackets on ``C[X_ij]`` that are F_k related to brackets on the invariants.

Three lifts are supported, each fixed by its values on pairs of generators:

``linear``     {X_pq, X_st} = -2i (eps_pt Y_sq - eps_sq Y_pt)
``quadratic``  {X_pq, X_st} = -2i (eps_pt d_p^q d_t^s - eps_sq d_q^p d_s^t) X_pq X_st
``mixed``      the ``Y`` monomial for index pairs inside h, the quadratic one otherwise

and extended to all of ``C[X_ij]`` as a biderivation.  Here ``Y_sq = X_sq``
except on the diagonal, where ``Y_qq = X_qq^{d_q}``.  The plain ``X_qq`` is
only right when ``d_q = 1``: for ``p, t`` with ``d_p = d_t = 1`` the bracket of
``F_k X_pq`` and ``F_k X_qt`` carries ``|z_q|^{2 d_q}``, which is the image of
``X_qq^{d_q}`` and not of ``X_qq``.  ``naive_linear_monomial`` keeps the plain
version for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .hilbert import Check
from .poisson import (
    MINUS_2I,
    BracketSpec,
    SpecError,
    as_rational_matrix,
    bracket,
    face_spec,
    identity,
    is_symmetric,
)
from .polys import Poly, XPoly, to_gq
from .weights import WeightSystem, extend_weights

LIFT_KINDS = ("linear", "quadratic", "mixed")

Label = Tuple[int, int]


@dataclass(frozen=True)
class LiftSpec:
    kind: str
    eps: Tuple[Tuple[Fraction, ...], ...]
    h: frozenset = frozenset()

    @property
    def k(self) -> int:
        return len(self.eps)

    def validate(self, ws: WeightSystem) -> None:
        ws.require_minimal()
        k = ws.k
        if self.k != k:
            raise SpecError(f"lift is {self.k}x{self.k}, weights have k = {k}")
        if self.kind not in LIFT_KINDS:
            raise SpecError(f"unknown lift kind {self.kind!r}")
        eps = self.eps
        if self.kind == "linear":
            for i, j in product(range(k), repeat=2):
                if eps[i][j] and not (ws.d[i] == ws.d[j] == 1):
                    raise SpecError(f"linear lift needs eps_{i + 1}{j + 1} = 0 unless d_i = d_j = 1")
        if self.kind == "mixed":
            if not self.h <= ws.ones:
                raise SpecError("mixed lift needs h inside {i : d_i = 1}")
            for i, j in product(range(k), repeat=2):
                if eps[i][j] and ((i in self.h) != (j in self.h)):
                    raise SpecError(f"eps_{i + 1}{j + 1} must vanish: exactly one index lies in h")


def linear_lift(ws: WeightSystem, eps) -> LiftSpec:
    spec = LiftSpec("linear", as_rational_matrix(eps, ws.k))
    spec.validate(ws)
    return spec


def quadratic_lift(ws: WeightSystem, eps) -> LiftSpec:
    spec = LiftSpec("quadratic", as_rational_matrix(eps, ws.k))
    spec.validate(ws)
    return spec


def mixed_lift(ws: WeightSystem, eps, h: Iterable[int]) -> LiftSpec:
    spec = LiftSpec("mixed", as_rational_matrix(eps, ws.k), frozenset(h))
    spec.validate(ws)
    return spec


def labels(k: int) -> List[Label]:
    return [(i, j) for i in range(k) for j in range(k)]


def lift_generator(ws: WeightSystem, lspec: LiftSpec, pq: Label, st: Label) -> XPoly:
    """``{X_pq, X_st}`` for the lift."""
    return _lift_table(ws, lspec)[(pq, st)]


def linear_monomial(ws: WeightSystem, s: int, q: int) -> XPoly:
    """``X_sq`` off the diagonal, ``X_qq^{d_q}`` on it: ``F_k`` sends it to ``z_s^{d_s} zbar_q^{d_q}``."""
    X = XPoly.X(ws.k, s, q)
    return X if s != q else X ** ws.d[q]


def naive_linear_monomial(ws: WeightSystem, s: int, q: int) -> XPoly:
    """Plain ``X_sq``; not F_k related once some ``d_q > 1`` sits on the diagonal."""
    return XPoly.X(ws.k, s, q)


@lru_cache(maxsize=128)
def _lift_table(ws: WeightSystem, lspec: LiftSpec) -> Dict[Tuple[Label, Label], XPoly]:
    lspec.validate(ws)
    k, eps, dd = ws.k, lspec.eps, ws.dd
    X = lambda i, j: XPoly.X(k, i, j)
    Y = lambda i, j: linear_monomial(ws, i, j)
    table = {}
    for (p, q), (s, t) in product(labels(k), repeat=2):
        prod_ = X(p, q) * X(s, t)
        left = eps[p][t] * dd(p, q) * dd(t, s)
        right = eps[s][q] * dd(q, p) * dd(s, t)
        if lspec.kind == "linear":
            val = Y(s, q) * eps[p][t] - Y(p, t) * eps[s][q]
        elif lspec.kind == "quadratic":
            val = prod_ * (left - right)
        else:
            h = lspec.h
            first = Y(s, q) * eps[p][t] if (p in h and t in h) else prod_ * left
            second = Y(p, t) * eps[s][q] if (s in h and q in h) else prod_ * right
            val = first - second
        table[((p, q), (s, t))] = val * MINUS_2I
    return table


def lift_bracket(ws: WeightSystem, lspec: LiftSpec, f: XPoly, g: XPoly) -> XPoly:
    table = _lift_table(ws, lspec)
    k = ws.k
    R = f._p.ring
    out = R.zero
    df = {v: f._p.diff(R.gens[v]) for v in f.variables()}
    dg = {v: g._p.diff(R.gens[v]) for v in g.variables()}
    for u, fu in df.items():
        for v, gv in dg.items():
            c = table[(divmod(u, k), divmod(v, k))]
            if c:
                out += fu * gv * c._p
    return XPoly(k, out)


def lift_jacobiator(ws: WeightSystem, lspec: LiftSpec, a: XPoly, b: XPoly, c: XPoly) -> XPoly:
    br = lambda f, g: lift_bracket(ws, lspec, f, g)
    return br(br(a, b), c) + br(br(b, c), a) + br(br(c, a), b)


@lru_cache(maxsize=None)
def _images(ws: WeightSystem):
    k = ws.k
    return {
        (i, j): Poly.z(k, i) ** ws.dd(i, j) * Poly.zb(k, j) ** ws.dd(j, i)
        for i, j in labels(k)
    }


def fk_pushforward(ws: WeightSystem, f: XPoly) -> Poly:
    """Ring homomorphism ``X_ij -> z_i^{d_i^j} zbar_j^{d_j^i}``."""
    ws.require_minimal()
    k = ws.k
    images = _images(ws)
    out = Poly.zero(k)
    for exp, c in f.terms():
        term = Poly.constant(k, c)
        for v, e in enumerate(exp):
            if e:
                term = term * images[divmod(v, k)] ** e
        out = out + term
    return out


def binomial(ws: WeightSystem, relation: Dict[Label, int]) -> XPoly:
    """``prod X^{k+} - prod X^{k-}`` for a kernel vector of F_k."""
    k = ws.k
    pos = {lab: e for lab, e in relation.items() if e > 0}
    neg = {lab: -e for lab, e in relation.items() if e < 0}
    return XPoly.monomial(k, pos) - XPoly.monomial(k, neg)


def matched(ws: WeightSystem, lspec: LiftSpec, spec: BracketSpec) -> bool:
    """Whether ``spec`` is the bracket on the invariants that ``lspec`` lifts."""
    if lspec.eps != spec.eps:
        return False
    k = ws.k
    zero = tuple((0,) * k for _ in range(k))
    if lspec.kind == "linear":
        return spec.kind == "epsilon" or (spec.kind == "face" and spec.h == ws.ones)
    if lspec.kind == "quadratic":
        return (spec.kind == "epsilon_delta" and spec.delta == zero) or (
            spec.kind == "face" and not spec.h
        )
    return spec.kind == "face" and spec.h == lspec.h


def check_fk_related(ws: WeightSystem, lspec: LiftSpec, spec: BracketSpec) -> Check:
    """``F_k({X_pq, X_st}) == {F_k X_pq, F_k X_st}`` on every generator pair."""
    if not matched(ws, lspec, spec):
        raise SpecError(f"{lspec.kind} lift is not matched with a {spec.kind} bracket")
    k = ws.k
    images = _images(ws)
    for pq, st in product(labels(k), repeat=2):
        lhs = fk_pushforward(ws, lift_generator(ws, lspec, pq, st))
        rhs = bracket(ws, spec, images[pq], images[st])
        if lhs != rhs:
            return Check(False, "not related", (pq, st))
    return Check(True)


def generator_triplets(k: int):
    return product(labels(k), repeat=3)


def check_jacobi_lift(
    ws: WeightSystem, lspec: LiftSpec, triplets: Optional[Iterable[Tuple[Label, Label, Label]]] = None
) -> Check:
    """Jacobiator vanishes on generator triplets (all of them by default)."""
    k = ws.k
    if lspec.kind == "linear" and len({tuple(p.terms()) for p in _images(ws).values()}) != k * k:
        # the kernel argument: distinct generator images, so F_k is injective on linear polynomials
        return Check(False, "generator images not distinct")
    X = {lab: XPoly.X(k, *lab) for lab in labels(k)}
    for a, b, c in triplets if triplets is not None else generator_triplets(k):
        if lift_jacobiator(ws, lspec, X[a], X[b], X[c]):
            return Check(False, "jacobi", (a, b, c))
    return Check(True)


def reality_check(ws: WeightSystem, lspec: LiftSpec) -> Check:
    """``conj {X_pq, X_st} == {X_qp, X_ts}`` on every generator pair."""
    for (p, q), (s, t) in product(labels(ws.k), repeat=2):
        lhs = lift_generator(ws, lspec, (p, q), (s, t)).conjugate()
        rhs = lift_generator(ws, lspec, (q, p), (t, s))
        if lhs != rhs:
            return Check(False, "conjugation", ((p, q), (s, t)))
    return Check(True)


def split_support(ws: WeightSystem, eps, h: Optional[Iterable[int]] = None):
    """Split ``eps`` into the part on ``h x h`` and the part off ``h`` in both indices.

    ``h`` defaults to ``{i : d_i = 1}``.
    """
    k = ws.k
    h = ws.ones if h is None else frozenset(h)
    eps = as_rational_matrix(eps, k)
    A = tuple(tuple(eps[i][j] if i in h and j in h else Fraction(0) for j in range(k)) for i in range(k))
    B = tuple(tuple(eps[i][j] if i not in h and j not in h else Fraction(0) for j in range(k)) for i in range(k))
    return A, B


def intertwine_check(ws: WeightSystem, lspec_a: LiftSpec, lspec_b: LiftSpec) -> Check:
    """``cyc {{a,b}_A, c}_B + cyc {{a,b}_B, c}_A == 0`` on generator triplets.

    Needs A linear and B quadratic with row and column supports of their
    eps matrices disjoint.
    """
    if lspec_a.kind != "linear" or lspec_b.kind != "quadratic":
        raise SpecError("intertwining needs a linear A and a quadratic B")
    k = ws.k
    ea, eb = lspec_a.eps, lspec_b.eps
    rows_a = {i for i in range(k) if any(ea[i])}
    cols_a = {j for j in range(k) if any(ea[i][j] for i in range(k))}
    rows_b = {i for i in range(k) if any(eb[i])}
    cols_b = {j for j in range(k) if any(eb[i][j] for i in range(k))}
    if rows_a & rows_b or cols_a & cols_b:
        raise SpecError("eps^A and eps^B supports overlap")
    A = lambda f, g: lift_bracket(ws, lspec_a, f, g)
    B = lambda f, g: lift_bracket(ws, lspec_b, f, g)
    X = {lab: XPoly.X(k, *lab) for lab in labels(k)}
    for a, b, c in generator_triplets(k):
        xa, xb, xc = X[a], X[b], X[c]
        total = (
            B(A(xa, xb), xc) + B(A(xb, xc), xa) + B(A(xc, xa), xb)
            + A(B(xa, xb), xc) + A(B(xb, xc), xa) + A(B(xc, xa), xb)
        )
        if total:
            return Check(False, "intertwining", (a, b, c))
    return Check(True)


def embed_extended(ws: WeightSystem, z: Sequence) -> List:
    """``(z_1..z_k) -> (z_1..z_k, z_1^{d_1}..z_k^{d_k})``."""
    ws.require_minimal()
    return list(z) + [zi ** di for zi, di in zip(z, ws.d)]


def extended_system(ws: WeightSystem) -> Tuple[WeightSystem, BracketSpec]:
    """The doubled weights ``(n, d, .., d)`` with the face bracket on the new indices."""
    ext = extend_weights(ws, ws.k)
    w = range(ws.k, 2 * ws.k)
    return ext, face_spec(ext, w, identity(ext.k))
