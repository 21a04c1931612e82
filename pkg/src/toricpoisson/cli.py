"""Command line front end.

Every command prints a JSON report

    {"schema": 1, "command": ..., "inputs": ..., "results": ..., "checks": [...]}

with integers written as strings, except ``faces --dot`` which prints a
Graphviz graph.  Exit status: 0 when every check passes, 1 when one fails,
2 on bad input.  Indices on the command line and in reports are 1-based.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence

from . import cone, hilbert, lift, poisson
from .linalg import exact_rank, matmul
from .polys import Poly, gq
from .weights import WeightError, WeightSystem, basis_elements

SCHEMA = 1


class InputError(Exception):
    pass


# parsing


def parse_weights(text: str) -> WeightSystem:
    try:
        n = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"weights must be a comma separated list of integers, got {text!r}")
    try:
        return WeightSystem(tuple(n))
    except WeightError as e:
        raise InputError(str(e))


def parse_index_set(text: str, k: int) -> frozenset:
    text = text.strip().strip("{}")
    if not text:
        return frozenset()
    try:
        idx = [int(x) for x in text.split(",")]
    except ValueError:
        raise InputError(f"bad index set {text!r}")
    if any(not 1 <= i <= k for i in idx):
        raise InputError(f"indices must lie in 1..{k}")
    return frozenset(i - 1 for i in idx)


_NUM = r"(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?(?:/\d+)?"
_FORMS = [
    re.compile(rf"^(?P<im>[+-]?(?:{_NUM})?)\*?i$"),
    re.compile(rf"^(?P<re>[+-]?{_NUM})(?P<im>[+-](?:{_NUM})?)\*?i$"),
    re.compile(rf"^(?P<re>[+-]?{_NUM})$"),
]


def _number(s: str):
    """Exact Fraction unless the literal uses an exponent."""
    if "e" in s.lower():
        num, _, den = s.partition("/")
        return float(num) / (float(den) if den else 1.0)
    return Fraction(s)


def parse_complex(text: str):
    """``"re+imi"`` as an exact Gaussian rational when both parts are rational, else a float complex.

    Accepts ``3``, ``-1/2``, ``8i``, ``-i``, ``1+2i``, ``0.5-0.25i``, ``1e-3+2.5i``.
    """
    s = text.strip().replace(" ", "")
    m = next((m for m in (f.match(s) for f in _FORMS) if m), None)
    if m is None:
        raise InputError(f"malformed complex literal {text!r}")
    parts = m.groupdict()
    im = parts.get("im")
    if im is not None and im in ("", "+", "-"):
        im += "1"
    try:
        r = _number(parts.get("re") or "0")
        i = _number(im or "0")
    except (ValueError, ZeroDivisionError):
        raise InputError(f"malformed complex literal {text!r}")
    if isinstance(r, float) or isinstance(i, float):
        return complex(float(r), float(i))
    return gq(r, i)


def parse_vector(text: str) -> list:
    return [parse_complex(x) for x in text.split(",")]


def load_matrix(path: str, k: int, integer: bool = False):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read matrix from {path}: {e}")
    if not isinstance(data, list) or len(data) != k or any(not isinstance(r, list) or len(r) != k for r in data):
        raise InputError(f"{path}: expected a {k}x{k} JSON array")
    try:
        rows = [[Fraction(str(x)) for x in row] for row in data]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"{path}: entries must be integers or rationals like \"3/2\"")
    if integer and any(x.denominator != 1 for r in rows for x in r):
        raise InputError(f"{path}: delta must be an integer matrix")
    return tuple(tuple(int(x) if integer else x for x in r) for r in rows)


def load_hompoint(path: str, k: int) -> hilbert.HomPoint:
    """``{"i,j": "value", ...}``; a missing ``(j, i)`` entry is filled by conjugation."""
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read point from {path}: {e}")
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object keyed by \"i,j\"")
    vals = {}
    for key, val in data.items():
        try:
            i, j = (int(x) - 1 for x in str(key).strip("()").split(","))
        except ValueError:
            raise InputError(f"{path}: bad key {key!r}")
        if not (0 <= i < k and 0 <= j < k):
            raise InputError(f"{path}: key {key!r} out of range")
        vals[(i, j)] = parse_complex(str(val))
    for i, j in cone.ray_labels(k):
        if (i, j) not in vals:
            if (j, i) in vals:
                vals[(i, j)] = hilbert._conj(vals[(j, i)])
            else:
                raise InputError(f"{path}: no value for ({i + 1},{j + 1}) or its conjugate")
    return hilbert.HomPoint(vals)


# formatting


def jsonable(x):
    """Integers become strings; tuples become lists; sets become sorted lists."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, float):
        return repr(x)
    if isinstance(x, complex):
        return format_complex(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (set, frozenset)):
        return [jsonable(v) for v in sorted(x)]
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "x") and hasattr(x, "y"):
        return format_complex(x)
    return str(x)


def format_complex(x) -> str:
    if isinstance(x, complex):
        return f"{x.real!r}{'+' if x.imag >= 0 else '-'}{abs(x.imag)!r}i"
    r, i = Fraction(int(x.x.numerator), int(x.x.denominator)), Fraction(int(x.y.numerator), int(x.y.denominator))
    if not i:
        return str(r)
    if not r:
        return f"{i}i"
    return f"{r}{'+' if i > 0 else '-'}{abs(i)}i"


def label(i: int, j: int) -> str:
    return f"{i + 1},{j + 1}"


def one_based(w):
    if isinstance(w, int):
        return w + 1
    if isinstance(w, tuple):
        return tuple(one_based(x) for x in w)
    if isinstance(w, dict):
        return {label(*k) if isinstance(k, tuple) else k: v for k, v in w.items()}
    return w


def check_entry(name: str, res) -> dict:
    ok = bool(res)
    entry = {"name": name, "pass": ok, "witness": None}
    if not ok and isinstance(res, hilbert.Check):
        entry["reason"] = res.reason
        entry["witness"] = one_based(res.witness)
    return entry


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: dict = {}
        self.checks: List[dict] = []

    def check(self, name: str, res, witness=None):
        entry = check_entry(name, res)
        if witness is not None and not entry["pass"]:
            entry["witness"] = witness
        self.checks.append(entry)

    @property
    def ok(self) -> bool:
        return all(c["pass"] for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "inputs": jsonable(self.inputs),
            "results": jsonable(self.results),
            "checks": jsonable(self.checks),
        }


# commands


def cmd_analyze(args) -> Report:
    ws = parse_weights(args.weights)
    rep = Report("analyze", {"weights": list(ws.n)})
    rep.results.update(k=ws.k, n=list(ws.n), d=list(ws.d), minimal=ws.minimal)
    if ws.minimal:
        rep.results["generators"] = {
            label(i, j): str(cone.ray(ws, i, j)) for i, j in cone.ray_labels(ws.k)
        }
        k = ws.k
        names = [f"l_{i + 1}" for i in range(k)] + [f"eta_{i + 1}" for i in range(k - 1)]
        rep.results["basis"] = {name: str(x) for name, x in zip(names, basis_elements(ws))}
    rep.check("minimal", ws.minimal)
    return rep


def cmd_faces(args):
    ws = parse_weights(args.weights)
    ws.require_minimal()
    k = ws.k
    if args.dot:
        return cone.face_graph(ws).to_dot()
    faces = cone.enumerate_faces(ws)
    enumerated = [sum(1 for f in faces if f.dim == d) for d in range(2 * k)]
    formula = [cone.face_count(k, d) for d in range(2 * k)]
    g = cone.face_graph(ws)
    rep = Report("faces", {"weights": list(ws.n)})
    rep.results.update(
        counts=formula,
        total=sum(formula),
        graph={"nodes": len(g.nodes), "edges": len(g.edges)},
    )
    first = next((d for d in range(2 * k) if enumerated[d] != formula[d]), None)
    rep.check("enumeration matches formula", first is None, None if first is None else first)
    return rep


def cmd_fk(args) -> Report:
    ws = parse_weights(args.weights)
    F = hilbert.fk_matrix(ws)
    rep = Report("fk", {"weights": list(ws.n), "kernel": args.kernel})
    rep.results.update(
        rows=F.row_labels,
        columns=[f"e_{i + 1}_{j + 1}" for i, j in F.columns],
        matrix=[list(r) for r in F.matrix],
    )
    rep.check("full row rank", exact_rank(F.matrix) == 2 * ws.k - 1)
    if args.kernel:
        K = hilbert.fk_kernel(ws)
        rank = len(K[0]) if K and K[0] else 0
        rep.results.update(
            kernel=K,
            kernel_rank=rank,
            kernel_hnf=hilbert.kernel_hnf(ws) if rank else [],
            relations=[
                {f"X_{i + 1}_{j + 1}": e for (i, j), e in rel.items()} for rel in hilbert.kernel_relations(ws)
            ],
        )
        zero = all(x == 0 for row in matmul(F.matrix, K) for x in row) if rank else True
        rep.check("matrix times kernel is zero", zero)
        rep.check("kernel rank is k^2 - 2k + 1", rank == (ws.k - 1) ** 2)
    return rep


def _build_spec(ws: WeightSystem, args) -> poisson.BracketSpec:
    k = ws.k
    kind = args.kind
    eps = load_matrix(args.epsilon, k) if args.epsilon else None
    if kind == "standard":
        return poisson.standard_spec(ws)
    if eps is None:
        if kind == "face":
            eps = poisson.identity(k)
        else:
            raise InputError(f"--kind {kind} needs --epsilon")
    if kind == "epsilon":
        return poisson.epsilon_spec(ws, eps)
    if kind == "epsilon_delta":
        if not args.delta:
            raise InputError("--kind epsilon_delta needs --delta")
        return poisson.epsilon_delta_spec(ws, eps, load_matrix(args.delta, k, integer=True))
    if kind == "face":
        if args.h is None:
            raise InputError("--kind face needs --h")
        return poisson.face_spec(ws, parse_index_set(args.h, k), eps)
    raise InputError(f"unknown kind {kind!r}")


def _matched_lift(ws: WeightSystem, spec: poisson.BracketSpec) -> lift.LiftSpec:
    k = ws.k
    zero = tuple((0,) * k for _ in range(k))
    if spec.kind == "face":
        return lift.mixed_lift(ws, spec.eps, spec.h)
    if spec.kind == "epsilon":
        return lift.linear_lift(ws, spec.eps)
    if spec.kind == "epsilon_delta" and spec.delta == zero:
        return lift.quadratic_lift(ws, spec.eps)
    raise InputError(f"no lift is matched with a {spec.kind} bracket (use face, epsilon, or epsilon_delta with delta = 0)")


def _coord_name(k: int, v: int) -> str:
    return f"z{v + 1}" if v < k else f"zb{v - k + 1}"


def cmd_bracket(args) -> Report:
    ws = parse_weights(args.weights)
    ws.require_minimal()
    k = ws.k
    inputs = {"weights": list(ws.n), "kind": args.kind, "check": args.check}
    if args.h is not None:
        inputs["h"] = sorted(i + 1 for i in parse_index_set(args.h, k))
    spec = _build_spec(ws, args)
    inputs["epsilon"] = [[str(x) for x in r] for r in spec.eps]
    inputs["delta"] = [list(r) for r in spec.effective_delta(ws)]
    rep = Report("bracket", inputs)
    rep.results["generators"] = {
        label(i, j): poisson.bracket_generator(ws, spec, i, j).to_text()
        for i, j in product(range(k), repeat=2)
        if spec.eps[i][j]
    }
    check = args.check
    if check == "jacobi":
        cor = poisson.corollary1_check(ws, spec.eps, spec.effective_delta(ws))
        rep.check("corollary1", cor)
        coords = poisson.coordinates(k)
        bad = None
        for a, b, c in product(range(2 * k), repeat=3):
            if a <= b <= c and poisson.jacobiator(ws, spec, coords[a], coords[b], coords[c]):
                bad = [_coord_name(k, v) for v in (a, b, c)]
                break
        rep.check("jacobi on coordinate triplets", bad is None, bad)
    elif check == "relate":
        lspec = _matched_lift(ws, spec)
        rep.results["lift"] = lspec.kind
        rep.check("fk related", lift.check_fk_related(ws, lspec, spec))
    elif check == "reality":
        lspec = _matched_lift(ws, spec)
        rep.results["lift"] = lspec.kind
        rep.check("lift conjugation", lift.reality_check(ws, lspec))
        try:
            real = poisson.to_real_bivector(ws, spec).is_real()
        except poisson.SpecError:
            real = False
        rep.check("real bivector", real)
    elif check == "intertwine":
        A, B = lift.split_support(ws, spec.eps)
        if any(spec.eps[i][j] != A[i][j] + B[i][j] for i in range(k) for j in range(k)):
            raise InputError("eps mixes indices with d_i = 1 and d_i != 1; it does not split")
        rep.check(
            "intertwining",
            lift.intertwine_check(ws, lift.linear_lift(ws, A), lift.quadratic_lift(ws, B)),
        )
    elif check == "invariance":
        gens = {lab: Poly.monomial(cone.ray(ws, *lab)) for lab in cone.ray_labels(k)}
        bad = None
        for p, q in product(cone.ray_labels(k), repeat=2):
            if not poisson.invariance_check(ws, spec, gens[p], gens[q]):
                bad = [label(*p), label(*q)]
                break
        rep.check("invariance on generator pairs", bad is None, bad)
    return rep


def cmd_orbit(args) -> Report:
    ws = parse_weights(args.weights)
    ws.require_minimal()
    k = ws.k
    tol = args.tol
    rep = Report("orbit", {"weights": list(ws.n), "z": args.z, "w": args.w, "tol": repr(tol)})
    if (args.z is None) != (args.w is None):
        raise InputError("--z and --w go together")
    if args.z is None and args.reconstruct is None:
        raise InputError("give --z and --w, or --reconstruct")
    if args.z is not None:
        z, w = parse_vector(args.z), parse_vector(args.w)
        if len(z) != k or len(w) != k:
            raise InputError(f"points must have {k} coordinates")
        uz, uw = hilbert.hilbert_eval(ws, z), hilbert.hilbert_eval(ws, w)
        t = hilbert.orbit_witness(ws, z, w, tol)
        rep.results.update(
            same_orbit=t is not None,
            witness_t=None if t is None else t,
            u_z={label(*lab): v for lab, v in uz.values.items()},
            u_w={label(*lab): v for lab, v in uw.values.items()},
        )
    if args.reconstruct is not None:
        p = load_hompoint(args.reconstruct, k)
        exact = all(not isinstance(v, complex) for v in p.values.values())
        res = hilbert.check_hom_conditions(ws, p, 0 if exact else tol)
        if not res:
            where = label(*res.witness) if res.witness else "-"
            raise hilbert.HomConditionError(f"not in the orbit space: {res.reason} condition fails at {where}")
        rep.check("orbit space conditions", res)
        fp = hilbert.HomPoint({lab: hilbert.as_complex(v) for lab, v in p.values.items()})
        rep_w = hilbert.reconstruct_orbit(ws, fp, tol)
        back = hilbert.hilbert_eval(ws, rep_w)
        rep.results["representative"] = rep_w
        rep.results["moduli"] = [abs(x) for x in rep_w]
        scale = max(1.0, *(abs(v) for v in fp.values.values()))
        rep.check("u(representative) equals the point", back.max_diff(fp) <= tol * scale)
    return rep


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="toricpoisson", description=__doc__.split("\n\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="cofactor gcds, minimality, generators and lattice basis")
    p.add_argument("--weights", required=True, help="comma separated, e.g. 6,10,15")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("faces", help="face counts by dimension, or the face graph as DOT")
    p.add_argument("--weights", required=True)
    p.add_argument("--dot", action="store_true", help="print the Graphviz graph instead of JSON")
    p.set_defaults(func=cmd_faces)

    p = sub.add_parser("fk", help="matrix of F_k and optionally its kernel")
    p.add_argument("--weights", required=True)
    p.add_argument("--kernel", action="store_true")
    p.set_defaults(func=cmd_fk)

    p = sub.add_parser("bracket", help="run a check on a bracket specification")
    p.add_argument("--weights", required=True)
    p.add_argument("--kind", required=True, choices=poisson.KINDS)
    p.add_argument("--epsilon", help="JSON file with a kxk matrix of rationals, e.g. [[\"1\",\"3/2\"],...]")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--delta", help="JSON file with a kxk integer matrix")
    g.add_argument("--h", help="face index set, e.g. 1,2")
    p.add_argument(
        "--check", required=True, choices=("jacobi", "relate", "reality", "intertwine", "invariance")
    )
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("orbit", help="orbit separation and reconstruction from generator values")
    p.add_argument("--weights", required=True)
    p.add_argument("--z", help="complex coordinates, e.g. 1,0.5-2i")
    p.add_argument("--w")
    p.add_argument("--reconstruct", help="JSON file {\"i,j\": value}")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_orbit)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        out = args.func(args)
    except (InputError, WeightError, poisson.SpecError, hilbert.HomConditionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    if isinstance(out, str):
        sys.stdout.write(out)
        return 0
    json.dump(out.as_dict(), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0 if out.ok else 1
