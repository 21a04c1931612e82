"""Sparse polynomials with exact Gaussian-rational coefficients.

``Poly`` lives in ``C[z_1..z_k, zbar_1..zbar_k]`` and ``XPoly`` in the ``k^2``
variables ``X_ij``.  Both are thin wrappers over sympy's sparse ring elements
with coefficients in ``QQ_I``; the wrapper fixes variable naming, conjugation
and the canonical text form

    (re,im) * z1^2*zb3^1 + (p/q,0)

with terms in ascending lexicographic exponent order.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Sequence, Tuple

from sympy.polys.domains import QQ, QQ_I
from sympy.polys.rings import ring

from .weights import LatticePoint, WeightSystem

GaussianRational = type(QQ_I(0, 1))

I = QQ_I(0, 1)


def gq(re_part=0, im_part=0):
    """Exact Gaussian rational from int/Fraction/str parts."""
    return QQ_I(_qq(re_part), _qq(im_part))


def _qq(x):
    if isinstance(x, str):
        x = Fraction(x)
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    if isinstance(x, int):
        return QQ(x)
    if isinstance(x, float):
        if not x.is_integer():
            raise TypeError(f"refusing inexact coefficient {x!r}")
        return QQ(int(x))
    return QQ.convert(x)


def to_gq(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        return gq(_exact_float(x.real), _exact_float(x.imag))
    return gq(x)


def _exact_float(x: float):
    if not float(x).is_integer():
        raise TypeError(f"refusing inexact coefficient {x!r}")
    return int(x)


def conj_gq(c):
    return QQ_I(c.x, -c.y)


def frac(q) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def re_im(c) -> Tuple[Fraction, Fraction]:
    return frac(c.x), frac(c.y)


def to_complex(c) -> complex:
    r, i = re_im(c)
    return complex(float(r), float(i))


def format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gq(c) -> str:
    r, i = re_im(c)
    return f"({format_rational(r)},{format_rational(i)})"


@lru_cache(maxsize=None)
def _zring(k: int):
    names = [f"z{i + 1}" for i in range(k)] + [f"zb{i + 1}" for i in range(k)]
    return ring(",".join(names), QQ_I)[0]


@lru_cache(maxsize=None)
def _xring(k: int):
    names = [f"X_{i + 1}_{j + 1}" for i in range(k) for j in range(k)]
    return ring(",".join(names), QQ_I)[0]


_TERM = re.compile(r"\(\s*([^,()]+)\s*,\s*([^,()]+)\s*\)\s*(?:\*\s*(.+))?$")


class _Sparse:
    """Shared behaviour; subclasses choose the ring and the variable names."""

    __slots__ = ("k", "_p")

    def __init__(self, k: int, p=None):
        self.k = k
        self._p = self._ring(k).zero if p is None else p

    @staticmethod
    def _ring(k):
        raise NotImplementedError

    @classmethod
    def zero(cls, k):
        return cls(k)

    @classmethod
    def constant(cls, k, c):
        return cls(k, cls._ring(k).ground_new(to_gq(c)))

    @classmethod
    def from_terms(cls, k, terms: Iterable[Tuple[Sequence[int], object]]):
        R = cls._ring(k)
        data: Dict[Tuple[int, ...], object] = {}
        for exp, c in terms:
            exp = tuple(int(e) for e in exp)
            if len(exp) != R.ngens or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp}")
            data[exp] = data.get(exp, QQ_I.zero) + to_gq(c)
        return cls(k, R.from_dict({e: c for e, c in data.items() if c}))

    def _wrap(self, p):
        return type(self)(self.k, p)

    def _coerce(self, other):
        if isinstance(other, type(self)):
            if other.k != self.k:
                raise ValueError("polynomials over different k")
            return other._p
        if isinstance(other, _Sparse):
            return NotImplemented
        return self._ring(self.k).ground_new(to_gq(other))

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._p - o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._wrap(-self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(self._p * o)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return self._wrap(self._p ** e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._p == o

    __hash__ = None

    def __bool__(self):
        return bool(self._p)

    def __len__(self):
        return len(self._p)

    def terms(self) -> List[Tuple[Tuple[int, ...], object]]:
        """``(exponent, coefficient)`` pairs in ascending exponent order."""
        return sorted(self._p.items())

    def coefficients(self):
        return [c for _, c in self.terms()]

    def diff(self, var: int):
        return self._wrap(self._p.diff(self._ring(self.k).gens[var]))

    def variables(self) -> List[int]:
        """Indices of the variables occurring in some term."""
        present = set()
        for exp in self._p.keys():
            present.update(i for i, e in enumerate(exp) if e)
        return sorted(present)

    def is_real(self) -> bool:
        """Every coefficient has zero imaginary part."""
        return all(c.y == 0 for c in self._p.values())

    def real_part(self):
        return self._wrap(self._p.ring.from_dict({e: QQ_I(c.x, 0) for e, c in self._p.items() if c.x}))

    def imag_part(self):
        return self._wrap(self._p.ring.from_dict({e: QQ_I(c.y, 0) for e, c in self._p.items() if c.y}))

    def evaluate(self, point: Sequence[complex]) -> complex:
        total = 0
        for exp, c in self._p.items():
            term = to_complex(c)
            for v, e in zip(point, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def evaluate_exact(self, point: Sequence):
        total = QQ_I.zero
        for exp, c in self._p.items():
            term = c
            for v, e in zip(point, exp):
                if e:
                    term *= to_gq(v) ** e
            total += term
        return total

    # text form

    def _var_names(self) -> List[str]:
        return [str(g) for g in self._ring(self.k).gens]

    def to_text(self) -> str:
        if not self._p:
            return "0"
        names = self._var_names()
        out = []
        for exp, c in self.terms():
            factors = [f"{names[i]}^{e}" for i, e in enumerate(exp) if e]
            out.append(format_gq(c) + (" * " + "*".join(factors) if factors else ""))
        return " + ".join(out)

    @classmethod
    def from_text(cls, k: int, text: str):
        text = text.strip()
        R = cls._ring(k)
        if text == "0":
            return cls(k)
        index = {str(g): i for i, g in enumerate(R.gens)}
        terms = []
        for chunk in text.split(" + "):
            m = _TERM.match(chunk.strip())
            if not m:
                raise ValueError(f"cannot parse term {chunk!r}")
            exp = [0] * R.ngens
            if m.group(3):
                for factor in m.group(3).split("*"):
                    name, _, e = factor.strip().partition("^")
                    if name not in index:
                        raise ValueError(f"unknown variable {name!r}")
                    exp[index[name]] += int(e or 1)
            terms.append((exp, gq(m.group(1), m.group(2))))
        return cls.from_terms(k, terms)

    def __repr__(self):
        return f"{type(self).__name__}({self.to_text()})"


class Poly(_Sparse):
    """Polynomial in ``z_1..z_k, zbar_1..zbar_k``; variable ``k + j`` is ``zbar_j``."""

    __slots__ = ()

    @staticmethod
    def _ring(k):
        return _zring(k)

    @classmethod
    def z(cls, k, i):
        return cls(k, _zring(k).gens[i])

    @classmethod
    def zb(cls, k, j):
        return cls(k, _zring(k).gens[k + j])

    @classmethod
    def monomial(cls, x: LatticePoint, coeff=1):
        return cls.from_terms(x.k, [(x.a + x.b, coeff)])

    def diff_z(self, i):
        return self.diff(i)

    def diff_zb(self, j):
        return self.diff(self.k + j)

    def exponents(self) -> List[LatticePoint]:
        k = self.k
        return [LatticePoint(e[:k], e[k:]) for e, _ in self.terms()]

    def conjugate(self):
        k = self.k
        return self._wrap(
            self._p.ring.from_dict({e[k:] + e[:k]: conj_gq(c) for e, c in self._p.items()})
        )

    def is_invariant(self, ws: WeightSystem) -> bool:
        return all(x.weight(ws.n) == 0 for x in self.exponents())

    def evaluate_at(self, z: Sequence[complex]) -> complex:
        return self.evaluate(list(z) + [complex(v).conjugate() for v in z])


class XPoly(_Sparse):
    """Polynomial in the ``k^2`` variables ``X_ij``, stored row-major."""

    __slots__ = ()

    @staticmethod
    def _ring(k):
        return _xring(k)

    @classmethod
    def X(cls, k, i, j):
        return cls(k, _xring(k).gens[i * k + j])

    @classmethod
    def monomial(cls, k, exps: Dict[Tuple[int, int], int], coeff=1):
        vec = [0] * (k * k)
        for (i, j), e in exps.items():
            vec[i * k + j] += e
        return cls.from_terms(k, [(vec, coeff)])

    def diff_X(self, i, j):
        return self.diff(i * self.k + j)

    def conjugate(self):
        """Conjugate coefficients and swap ``X_ij`` with ``X_ji``."""
        k = self.k
        perm = [j * k + i for i in range(k) for j in range(k)]

        def swap(e):
            return tuple(e[perm[v]] for v in range(k * k))

        return self._wrap(self._p.ring.from_dict({swap(e): conj_gq(c) for e, c in self._p.items()}))

    def is_linear(self) -> bool:
        return all(sum(e) == 1 for e in self._p.keys())


@lru_cache(maxsize=None)
def _rring(k: int):
    names = [f"x{i + 1}" for i in range(k)] + [f"y{i + 1}" for i in range(k)]
    return ring(",".join(names), QQ_I)[0]


class RealPoly(_Sparse):
    """Polynomial in the real coordinates ``x_1..x_k, y_1..y_k`` (``z = x + i y``)."""

    __slots__ = ()

    @staticmethod
    def _ring(k):
        return _rring(k)

    @classmethod
    def from_complex(cls, f: Poly) -> "RealPoly":
        """Substitute ``z_i = x_i + i y_i`` and ``zbar_i = x_i - i y_i``."""
        k = f.k
        R = _rring(k)
        xs, ys = R.gens[:k], R.gens[k:]
        images = [xs[i] + I * ys[i] for i in range(k)] + [xs[i] - I * ys[i] for i in range(k)]
        powers: Dict[Tuple[int, int], object] = {}
        out = R.zero
        for exp, c in f._p.items():
            term = R.ground_new(c)
            for v, e in enumerate(exp):
                if e:
                    key = (v, e)
                    if key not in powers:
                        powers[key] = images[v] ** e
                    term = term * powers[key]
            out += term
        return cls(k, out)
