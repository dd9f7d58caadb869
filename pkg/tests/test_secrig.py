import random
from fractions import Fraction
from itertools import combinations

import pytest

from helpers import rank_by_minors
from cigrid import linalg
from cigrid.matroid import matroid_from_matrix
from cigrid.secrig import (
    Framework,
    complete_graph_edges,
    generic_rigidity_check,
    join_point,
    join_sample,
    mixture_sample,
    random_framework,
    rigidity_matrix,
    rigidity_rank_formula,
    secant_dimension,
    segre_tangent_model,
)
from cigrid.sampling import child_rng


def as_matrix(point, m, n):
    return [[point[i * n + j] for j in range(n)] for i in range(m)]


def test_tangent_basis_contains_its_base_point():
    model = segre_tangent_model(3, 3)
    rng = child_rng(0, "tangent")
    point, tangents = model.draw(rng)
    stacked = [list(t) for t in tangents] + [list(point)]
    assert linalg.rank(stacked) == linalg.rank([list(t) for t in tangents])


def test_secant_dimensions_of_rank_one_three_by_three():
    model = segre_tangent_model(3, 3)
    rng = child_rng(1, "secant")
    assert secant_dimension(model, 1, rng) == 5
    assert secant_dimension(model, 2, rng) == 8
    assert secant_dimension(model, 3, rng) == 9


def test_secant_dimension_formula_on_more_shapes():
    rng = child_rng(2, "secant")
    assert secant_dimension(segre_tangent_model(3, 4), 2, rng) == 10
    assert secant_dimension(segre_tangent_model(4, 4), 3, rng) == 15


def test_secant_dimension_monotone_and_capped():
    model = segre_tangent_model(2, 3)
    rng = child_rng(3, "secant")
    dims = [secant_dimension(model, k, rng) for k in (1, 2, 3)]
    assert dims == sorted(dims)
    assert all(d <= model.ambient for d in dims)
    base = dims[0]
    for k, d in enumerate(dims, start=1):
        assert d <= min(model.ambient, k * base)


def test_mixture_sample_rank_and_positivity():
    rng = child_rng(4, "mixture")
    m1 = mixture_sample(3, 3, 1, rng)
    assert linalg.rank(m1) <= 1
    assert all(x > 0 for row in m1 for x in row)
    assert sum(x for row in m1 for x in row) == 1
    # every 2-minor vanishes exactly
    for r1, r2 in combinations(range(3), 2):
        for c1, c2 in combinations(range(3), 2):
            assert m1[r1][c1] * m1[r2][c2] - m1[r1][c2] * m1[r2][c1] == 0

    m2 = mixture_sample(3, 3, 2, rng)
    assert linalg.rank(m2) <= 2
    assert rank_by_minors(m2) <= 2
    for cols in combinations(range(1, 4), 3):
        assert linalg.det(linalg.column_submatrix(m2, cols)) == 0


def test_join_point_endpoints():
    u = (Fraction(1), Fraction(2))
    v = (Fraction(5), Fraction(7))
    assert join_point(u, v, Fraction(1)) == u
    assert join_point(u, v, Fraction(0)) == v


def test_join_of_two_rank_one_points_has_rank_at_most_two():
    model = segre_tangent_model(3, 3)
    rng = child_rng(5, "join")

    def sampler(r):
        point, _ = model.draw(r)
        return point

    for mixture in (False, True):
        p = join_sample(sampler, sampler, rng, mixture=mixture)
        assert linalg.rank(as_matrix(p, 3, 3)) <= 2


def test_rigidity_matrix_single_edge():
    fw = Framework(2, ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(2))), ((1, 2),))
    R = rigidity_matrix(fw)
    assert len(R) == 1 and len(R[0]) == 4
    assert linalg.rank(R) == 1
    assert R[0] == [Fraction(-1), Fraction(-2), Fraction(1), Fraction(2)]


def test_rigidity_matrix_rejects_coincident_endpoints():
    fw = Framework(2, ((Fraction(1), Fraction(1)), (Fraction(1), Fraction(1))), ((1, 2),))
    with pytest.raises(ValueError):
        rigidity_matrix(fw)


def test_triangle_rank_in_the_plane():
    rng = child_rng(6, "rigidity")
    fw = random_framework(3, 2, rng)
    assert linalg.rank(rigidity_matrix(fw)) == rigidity_rank_formula(3, 2) == 3


def test_k4_is_a_circuit_in_the_plane():
    rng = child_rng(7, "rigidity")
    fw = random_framework(4, 2, rng)
    R = rigidity_matrix(fw)
    assert linalg.rank(R) == 5 and len(R) == 6
    row_matroid = matroid_from_matrix(linalg.transpose(R))
    assert row_matroid.circuits() == (frozenset(range(1, 7)),)


def test_rigidity_row_pattern_and_kernel():
    rng = child_rng(8, "rigidity")
    n, d = 5, 3
    fw = random_framework(n, d, rng)
    R = rigidity_matrix(fw)
    for row in R:
        assert sum(1 for x in row if x != 0) == 2 * d
    # translations lie in the kernel
    for c in range(d):
        v = [Fraction(0)] * (d * n)
        for i in range(n):
            v[i * d + c] = Fraction(1)
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in R)
    # infinitesimal rotations lie in the kernel (one per coordinate pair)
    for a, b in combinations(range(d), 2):
        v = [Fraction(0)] * (d * n)
        for i, p in enumerate(fw.coords):
            v[i * d + a] = -p[b]
            v[i * d + b] = p[a]
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in R)


def test_generic_rigidity_check_reports():
    rng = child_rng(9, "rigidity")
    rep = generic_rigidity_check(4, 2, rng, seed_note=9)
    assert rep.passed
    assert any("rank" in c.name for c in rep.checks)
    rep5 = generic_rigidity_check(5, 2, child_rng(10, "rigidity"), seed_note=10)
    assert rep5.passed
    assert any("5 complete 4-vertex edge sets" in c.name for c in rep5.checks)


def test_generic_rigidity_check_various_shapes():
    for n, d in [(3, 2), (4, 2), (5, 2), (5, 3), (6, 3)]:
        rep = generic_rigidity_check(n, d, child_rng(100 + n + 10 * d, "rigidity"))
        assert rep.passed, (n, d)


def test_framework_text_round_trip():
    fw = random_framework(3, 2, child_rng(11, "fw"))
    assert Framework.from_text(fw.to_text()) == fw
    assert complete_graph_edges(3) == ((1, 2), (1, 3), (2, 3))
