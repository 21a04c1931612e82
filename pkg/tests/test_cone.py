from itertools import combinations, product
from math import comb

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from conftest import NAMED, minimal_weights
from toricpoisson.cone import (
    Face,
    conjugate,
    dual_rays,
    enumerate_faces,
    face_count,
    face_graph,
    generators,
    hilbert_basis_oracle,
    in_dual_cone,
    is_face,
    pairing,
    ray,
    ray_coords,
    ray_labels,
    smallest_face,
    supporting_functional,
)
from toricpoisson.weights import BasisCoords, LatticePoint, NotMinimalError, WeightSystem, in_semigroup


def lp_smallest_face(ws, idx):
    """Rays v with p - t v in the cone for some t > 0, p the sum of the chosen rays."""
    labels = ray_labels(ws.k)
    V = np.array([ray(ws, *lab).as_tuple() for lab in labels], dtype=float).T
    p = sum(V[:, labels.index(lab)] for lab in idx)
    out = set()
    for c, lab in enumerate(labels):
        # p - t v = V lam, lam >= 0, maximize t in [0, 1]
        A = np.hstack([V, V[:, [c]]])
        res = linprog(
            np.r_[np.zeros(len(labels)), -1.0],
            A_eq=A,
            b_eq=p,
            bounds=[(0, None)] * len(labels) + [(0, 1)],
            method="highs",
        )
        if res.status == 0 and -res.fun > 1e-7:
            out.add(lab)
    return out


def brute_irreducibles(ws, bound):
    """Independent oracle: full box enumeration, irreducibility by subtraction."""
    k = ws.k
    pts = [
        LatticePoint(v[:k], v[k:])
        for v in product(range(bound + 1), repeat=2 * k)
        if any(v) and in_semigroup(ws, LatticePoint(v[:k], v[k:]))
    ]
    s = {p.as_tuple() for p in pts}
    irr = []
    for p in pts:
        t = p.as_tuple()
        if not any(
            q.as_tuple() != t and tuple(a - b for a, b in zip(t, q.as_tuple())) in s for q in pts
        ):
            irr.append(t)
    return set(irr)


# generators


def test_generator_examples():
    gens = {g.as_tuple() for g in generators(WeightSystem((2, 3)))}
    assert gens == {(1, 0, 1, 0), (0, 1, 0, 1), (3, 0, 0, 2), (0, 2, 3, 0)}
    gens = {g.as_tuple() for g in generators(WeightSystem((1, 1)))}
    assert gens == {(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)}
    gens = {g.as_tuple() for g in generators(WeightSystem((6, 10, 15)))}
    assert (5, 0, 0, 0, 3, 0) in gens and (0, 0, 2, 5, 0, 0) in gens


@pytest.mark.parametrize("n", NAMED)
def test_generators_in_semigroup_and_closed(n):
    ws = WeightSystem(n)
    gens = generators(ws)
    assert len(gens) == ws.k ** 2
    for x in gens:
        assert in_semigroup(ws, x)
    for x, y in product(gens, repeat=2):
        assert in_semigroup(ws, x + y)
        assert conjugate(x) + conjugate(y) == conjugate(x + y)


def test_conjugate_examples():
    assert conjugate(LatticePoint((1, 0), (0, 1))) == LatticePoint((0, 1), (1, 0))
    l = LatticePoint((0, 1, 0), (0, 1, 0))
    assert conjugate(l) == l
    ws = WeightSystem((6, 10, 15))
    assert conjugate(ray(ws, 0, 1)) == LatticePoint((0, 3, 0), (5, 0, 0))


def test_generators_reject_non_minimal():
    with pytest.raises(NotMinimalError):
        generators(WeightSystem((2, 3, 5)))


# Hilbert basis oracle


@pytest.mark.parametrize("n,bound", [((2, 3), 5), ((1, 1), 2)])
def test_oracle_examples(n, bound):
    ws = WeightSystem(n)
    found = {p.as_tuple() for p in hilbert_basis_oracle(ws, bound)}
    assert found == {g.as_tuple() for g in generators(ws)}
    assert found == brute_irreducibles(ws, bound)


def test_oracle_non_minimal_has_extra_irreducibles():
    ws = WeightSystem((2, 3, 5))
    found = hilbert_basis_oracle(ws, 5)
    assert len(found) > 9


def test_oracle_agrees_with_brute_force_small_box():
    ws = WeightSystem((2, 3, 5))
    found = {p.as_tuple() for p in hilbert_basis_oracle(ws, 3)}
    assert found == brute_irreducibles(ws, 3)


def test_oracle_small_bound_gives_subset():
    ws = WeightSystem((2, 3))
    found = {p.as_tuple() for p in hilbert_basis_oracle(ws, 2)}
    assert found < {g.as_tuple() for g in generators(ws)}


# faces


def test_enumerate_faces_counts():
    assert len(enumerate_faces(WeightSystem((2, 3)))) == 10
    faces = enumerate_faces(WeightSystem((6, 10, 15)))
    assert len(faces) == 50
    assert sum(f.dim == 1 for f in faces) == 9
    assert sum(f.dim == 5 for f in faces) == 1
    assert faces[0] == Face.zero()


def test_face_count_example_k3():
    assert [face_count(3, d) for d in range(1, 6)] == [9, 18, 15, 6, 1]
    assert face_count(3, 0) == 1


def fc_oracle(k, d):
    # direct count of subset pairs (h, v) with |h| + |v| - 1 = d
    if d == 0:
        return 1
    return sum(
        1
        for p in range(1, k + 1)
        for q in range(1, k + 1)
        if p + q - 1 == d
        for _ in range(comb(k, p) * comb(k, q))
    )


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_face_count_matches_enumeration(k):
    ws = WeightSystem((1,) * k)
    faces = enumerate_faces(ws)
    for d in range(2 * k):
        assert face_count(k, d) == sum(f.dim == d for f in faces) == fc_oracle(k, d)
    assert face_count(k, 2 * k - 2) == 2 * k
    assert face_count(k, 2 * k - 1) == 1


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_codimension_two_count(k):
    assert face_count(k, 2 * k - 3) == k * (2 * k - 1)


def test_codimension_two_count_k2_is_the_rays():
    # k(2k-1) = 6 would need a split with an empty factor; the cone has 4 rays
    assert face_count(2, 1) == 4 == fc_oracle(2, 1)


@pytest.mark.parametrize("k", range(2, 7))
def test_face_total(k):
    assert sum(face_count(k, d) for d in range(2 * k)) == 1 + (2 ** k - 1) ** 2


def test_face_count_range():
    with pytest.raises(ValueError):
        face_count(3, 6)
    with pytest.raises(ValueError):
        face_count(3, -1)


def test_face_canonical():
    assert Face(frozenset({0}), frozenset()) == Face.zero()
    assert Face(frozenset(), frozenset({1})).dim == 0
    f = Face(frozenset({0, 2}), frozenset({0, 1, 2}))
    assert f.dim == 4 and len(f.rays) == 6
    assert str(f) == "F({1,3}x{1,2,3})"


def test_smallest_face_examples():
    ws = WeightSystem((1, 1))
    f = smallest_face(ws, {(0, 1)})
    assert (f.h, f.v, f.dim) == ({0}, {1}, 1)
    f = smallest_face(ws, {(0, 0), (1, 1)})
    assert (f.h, f.v, f.dim) == ({0, 1}, {0, 1}, 3)
    assert smallest_face(ws, {(0, 1), (1, 0)}) == f
    with pytest.raises(ValueError):
        smallest_face(ws, set())


def test_is_face_examples():
    ws = WeightSystem((2, 3))
    assert is_face(ws, {(0, 0), (0, 1)})
    assert not is_face(ws, {(0, 0), (1, 1)})
    assert is_face(ws, set())


@pytest.mark.parametrize("n", [(2, 3), (1, 1), (6, 10, 15)])
def test_smallest_face_matches_lp(n):
    ws = WeightSystem(n)
    labels = ray_labels(ws.k)
    subsets = [set(c) for r in (1, 2) for c in combinations(labels, r)]
    if ws.k == 2:
        subsets = [set(c) for r in range(1, 5) for c in combinations(labels, r)]
    for idx in subsets:
        lp = lp_smallest_face(ws, idx)
        assert set(smallest_face(ws, idx).rays) == lp
        assert is_face(ws, idx) == (lp == idx)


# dual cone


def test_pairing_table_examples():
    ws = WeightSystem((6, 10, 15))
    l2 = BasisCoords((0, 0), (0, 1, 0))
    eta2 = BasisCoords((0, 1), (0, 0, 0))
    assert pairing(ws, 0, 1, l2) == 3
    assert pairing(ws, 2, 0, l2) == -3
    assert pairing(ws, 0, 2, eta2) == -1


@pytest.mark.parametrize("n", NAMED)
def test_pairing_against_coordinates(n):
    """Off the diagonal the table is the dot product of basis coordinates;
    on ``v_ii = l_i`` it is ``d_i`` times it (same sign, so the same dual cone)."""
    ws = WeightSystem(n)
    k = ws.k
    for i, j in ray_labels(k):
        c = ray_coords(ws, i, j)
        scale = ws.d[i] if i == j else 1
        for m in range(2 * k - 1):
            e = [0] * (2 * k - 1)
            e[m] = 1
            y = BasisCoords.from_vector(e)
            assert pairing(ws, i, j, y) == scale * c.dot(y)


def test_dual_rays_examples():
    ws = WeightSystem((6, 10, 15))
    x = dual_rays(ws)
    x2 = x[1]
    assert x2 == BasisCoords((3, 0), (0, 1, 0))
    assert pairing(ws, 0, 1, x2) == 0
    assert pairing(ws, 1, 1, x2) == 3
    assert pairing(ws, 1, 0, x2) == 3
    zero = {lab for lab in ray_labels(3) if pairing(ws, *lab, x2) == 0}
    assert zero == set(product({0, 2}, {0, 1, 2}))

    xs = dual_rays(WeightSystem((1, 1)))
    assert xs == [
        BasisCoords((0,), (1, 0)),
        BasisCoords((1,), (0, 1)),
        BasisCoords((1,), (1, 0)),
        BasisCoords((0,), (0, 1)),
    ]


@pytest.mark.parametrize("n", NAMED)
def test_dual_rays_are_facets(n):
    ws = WeightSystem(n)
    k = ws.k
    rays = dual_rays(ws)
    assert len(rays) == 2 * k == face_count(k, 2 * k - 2)
    for y in rays:
        assert in_dual_cone(ws, y)
        zero = {lab for lab in ray_labels(k) if pairing(ws, *lab, y) == 0}
        f = smallest_face(ws, zero)
        assert set(f.rays) == zero and f.dim == 2 * k - 2


@pytest.mark.parametrize("n", [(2, 3), (6, 10, 15), (2, 2, 1), (6, 10, 15, 30)])
def test_supporting_functional_certificates(n):
    ws = WeightSystem(n)
    for f in enumerate_faces(ws):
        s = supporting_functional(ws, f)
        for lab in ray_labels(ws.k):
            val = pairing(ws, *lab, s)
            if lab in set(f.rays):
                assert val == 0
            else:
                assert val > 0


def test_supporting_functional_examples():
    ws = WeightSystem((6, 10, 15))
    xs = dual_rays(ws)
    whole = Face(frozenset(range(3)), frozenset(range(3)))
    assert supporting_functional(ws, whole) == BasisCoords.zero(3)
    assert supporting_functional(ws, Face(frozenset({0, 2}), frozenset({0, 1, 2}))) == xs[1]

    ws = WeightSystem((2, 3))
    x1, x2, y1, y2 = dual_rays(ws)
    s = supporting_functional(ws, Face(frozenset({0}), frozenset({1})))
    assert s == x2 + y1
    for lab in ray_labels(2):
        assert (pairing(ws, *lab, s) == 0) == (lab == (0, 1))


def test_zero_face_functional_positive():
    ws = WeightSystem((2, 2, 1))
    s = supporting_functional(ws, Face.zero())
    assert all(pairing(ws, *lab, s) > 0 for lab in ray_labels(3))


@given(minimal_weights(max_k=5))
def test_ray_expansion_closed_form(n):
    """v_ij = d_i l_i + ... + d_j l_j - eta_i - ... - eta_{j-1} for i <= j."""
    ws = WeightSystem(n)
    k = ws.k
    for i, j in ray_labels(k):
        if i > j:
            continue
        c = ray_coords(ws, i, j)
        eta = [-1 if i <= m < j else 0 for m in range(k - 1)]
        ell = [ws.dd(m, m) if i == j == m else (ws.d[m] if i <= m <= j else 0) for m in range(k)]
        assert list(c.eta) == eta and list(c.ell) == ell


# face graph


@pytest.mark.parametrize("k,edges", [(2, 4), (3, 18), (4, 48)])
def test_face_graph_counts(k, edges):
    g = face_graph(WeightSystem((1,) * k))
    assert len(g.nodes) == k * k
    assert len(g.edges) == edges == face_count(k, 2)


def test_face_graph_dot():
    dot = face_graph(WeightSystem((6, 10, 15))).to_dot()
    assert dot.startswith("graph cone {")
    assert dot.count(" -- ") == 18
    assert "v_1_3;" in dot
    assert dot.rstrip().endswith("}")
