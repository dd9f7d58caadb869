import random
from fractions import Fraction
from itertools import product
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import rank_by_minors
from cigrid import linalg
from cigrid.cimodel import (
    CIStatement,
    DiscreteModel,
    ModelVar,
    ProbTensor,
    ci_file_text,
    ci_ideal,
    ci_minor_generators,
    flatten,
    mixture_parametrization_sample,
    parse_ci_file,
    prob_ring,
    tensor_assignment,
    tensor_of,
)
from cigrid.poly import Var, normalize_sign


def two_binary_model():
    return DiscreteModel.of(ModelVar("X", 2), ModelVar("Y", 2))


def eq21_model():
    return DiscreteModel.of(
        ModelVar("X", 3),
        ModelVar("Y1", 3),
        ModelVar("Y2", 4),
        ModelVar("H1", 2, hidden=True),
        ModelVar("H2", 2, hidden=True),
    )


def test_model_validation():
    with pytest.raises(ValueError):
        DiscreteModel.of(ModelVar("X", 2), ModelVar("X", 3))
    with pytest.raises(ValueError):
        DiscreteModel.of(ModelVar("H", 2, hidden=True))
    with pytest.raises(ValueError):
        ModelVar("X", 0)


def test_statement_validation_rejects_hidden_on_either_side():
    model = eq21_model()
    CIStatement(("X",), ("Y1",), ("Y2", "H1")).validate(model)
    with pytest.raises(ValueError):
        CIStatement(("H1",), ("Y1",), ()).validate(model)
    with pytest.raises(ValueError):
        CIStatement(("X",), ("H2",), ()).validate(model)
    with pytest.raises(ValueError):
        CIStatement(("X",), ("X",), ()).validate(model)


def test_statement_text_round_trip():
    model = eq21_model()
    stmt = CIStatement(("X",), ("Y1",), ("Y2", "H1"))
    text = stmt.to_text(model)
    assert text == "X _||_ Y1 | Y2 H1*"
    assert CIStatement.parse(text) == stmt


def test_flatten_two_slice_sum():
    entries = []
    # slices over Z: z=1 puts mass 1/2 at (1,1); z=2 puts mass 1/2 at (2,2)
    for x, y, z in product(range(1, 3), repeat=3):
        if (x, y, z) == (1, 1, 1) or (x, y, z) == (2, 2, 2):
            entries.append(Fraction(1, 2))
        else:
            entries.append(Fraction(0))
    P = tensor_of(("X", "Y", "Z"), (2, 2, 2), entries)
    M = flatten(P, rows=["X"], cols=["Y"], summed=["Z"])
    assert M == linalg.mat([[Fraction(1, 2), 0], [0, Fraction(1, 2)]])


def test_flatten_without_sum_is_a_reshape():
    rng = random.Random(4)
    entries = [Fraction(rng.randint(0, 9), 10) for _ in range(8)]
    P = tensor_of(("X", "Y", "Z"), (2, 2, 2), entries)
    M = flatten(P, rows=["X"], cols=["Y", "Z"])
    flat = [x for row in M for x in row]
    assert sorted(flat) == sorted(entries)
    assert M[0][0] == P.get((1, 1, 1)) and M[1][3] == P.get((2, 2, 2))


def test_flatten_rejects_non_partition():
    P = tensor_of(("X", "Y"), (2, 2), [1, 0, 0, 0])
    with pytest.raises(ValueError):
        flatten(P, rows=["X"], cols=["X", "Y"])
    with pytest.raises(ValueError):
        flatten(P, rows=["X"], cols=[])


def test_flatten_of_rank_one_slices_has_bounded_rank():
    rng = random.Random(12)
    for _ in range(5):
        slices = []
        for _ in range(2):  # |Z| = 2 rank-one slices
            a = [Fraction(rng.randint(1, 9)) for _ in range(3)]
            b = [Fraction(rng.randint(1, 9)) for _ in range(3)]
            slices.append([[ai * bj for bj in b] for ai in a])
        entries = []
        for x, y in product(range(3), repeat=2):
            for z in range(2):
                entries.append(slices[z][x][y])
        P = tensor_of(("X", "Y", "Z"), (3, 3, 2), entries)
        M = flatten(P, rows=["X"], cols=["Y"], summed=["Z"])
        r = linalg.rank(M)
        assert r <= 2
        assert r == rank_by_minors(M)


def test_flatten_is_linear():
    rng = random.Random(31)
    mk = lambda: tensor_of(("X", "Y", "Z"), (2, 3, 2), [Fraction(rng.randint(-5, 5), 3) for _ in range(12)])
    P, Q = mk(), mk()
    FP = flatten(P, ["X"], ["Y"], ["Z"])
    FQ = flatten(Q, ["X"], ["Y"], ["Z"])
    FS = flatten(P + Q, ["X"], ["Y"], ["Z"])
    assert FS == [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(FP, FQ)]


def test_single_two_minor_for_marginal_independence():
    model = two_binary_model()
    gens = ci_minor_generators(CIStatement(("X",), ("Y",)), model)
    assert len(gens) == 1
    ring = prob_ring(model)
    p = lambda *s: ring.var(Var("p", s))
    expected = p(1, 1) * p(2, 2) - p(1, 2) * p(2, 1)
    assert gens[0] in (normalize_sign(expected), normalize_sign(-expected))
    assert gens[0] == normalize_sign(expected)


def test_eq21_first_statement_gives_four_cubics():
    model = eq21_model()
    gens = ci_minor_generators(CIStatement(("X",), ("Y1",), ("Y2", "H1")), model)
    assert len(gens) == 4
    assert all(g.total_degree() == 3 for g in gens)
    # each generator uses only coordinates of a single Y2 slice
    for g in gens:
        y2_values = {v.index[2] for v in g.support()}
        assert len(y2_values) == 1


def test_eq21_second_statement_gives_twelve_cubics():
    model = eq21_model()
    gens = ci_minor_generators(CIStatement(("X",), ("Y2",), ("Y1", "H2")), model)
    # 3 Y1-slices x C(3,3) row-triples x C(4,3) column-triples
    assert len(gens) == 3 * comb(3, 3) * comb(4, 3) == 12
    assert all(g.total_degree() == 3 for g in gens)


def test_generator_count_formula():
    model = DiscreteModel.of(
        ModelVar("A", 3),
        ModelVar("B", 4),
        ModelVar("C", 2),
        ModelVar("H", 2, hidden=True),
    )
    stmt = CIStatement(("A",), ("B",), ("C", "H"))
    gens = ci_minor_generators(stmt, model)
    h = 2
    assert len(gens) == 2 * comb(3, h + 1) * comb(4, h + 1)


def test_generator_count_formula_across_shapes():
    for a_card, b_card, c_card, h_card in [(2, 2, 1, 1), (3, 3, 2, 1), (4, 3, 1, 2), (3, 4, 3, 2)]:
        model = DiscreteModel.of(
            ModelVar("A", a_card),
            ModelVar("B", b_card),
            ModelVar("C", c_card),
            ModelVar("H", h_card, hidden=True),
        )
        gens = ci_minor_generators(CIStatement(("A",), ("B",), ("C", "H")), model)
        assert len(gens) == c_card * comb(a_card, h_card + 1) * comb(b_card, h_card + 1)


def test_multiple_hidden_conditioners_multiply_the_rank_bound():
    # two binary hidden variables in C force (2*2+1)-minors
    model = DiscreteModel.of(
        ModelVar("A", 5),
        ModelVar("B", 5),
        ModelVar("H1", 2, hidden=True),
        ModelVar("H2", 2, hidden=True),
    )
    gens = ci_minor_generators(CIStatement(("A",), ("B",), ("H1", "H2")), model)
    assert len(gens) == 1
    assert gens[0].total_degree() == 5
    # a rank-4 mixture kills the single 5-minor
    rng = random.Random(3)
    P = mixture_parametrization_sample(model, CIStatement(("A",), ("B",), ("H1", "H2")), rng)
    point = tensor_assignment(model, P)
    assert gens[0].evaluate(point) == 0
    assert linalg.rank(flatten(P, ["A"], ["B"])) <= 4


def test_ci_ideal_eq21_has_sixteen_generators():
    model = eq21_model()
    stmts = [
        CIStatement(("X",), ("Y1",), ("Y2", "H1")),
        CIStatement(("X",), ("Y2",), ("Y1", "H2")),
    ]
    ideal = ci_ideal(stmts, model)
    assert len(ideal.generators) == 16


def test_ci_ideal_empty_and_duplicate_statements():
    model = two_binary_model()
    assert ci_ideal([], model).generators == ()
    stmt = CIStatement(("X",), ("Y",))
    once = ci_ideal([stmt], model)
    twice = ci_ideal([stmt, stmt], model)
    assert once.generators == twice.generators


def test_mixture_sample_rank_one_kills_two_minors():
    model = DiscreteModel.of(ModelVar("X", 3), ModelVar("Y", 3), ModelVar("H", 1, hidden=True))
    conclusion = CIStatement(("X",), ("Y",), ("H",))
    rng = random.Random(5)
    P = mixture_parametrization_sample(model, conclusion, rng)
    M = flatten(P, ["X"], ["Y"])
    assert linalg.rank(M) <= 1
    gens = ci_minor_generators(CIStatement(("X",), ("Y",)), DiscreteModel.of(ModelVar("X", 3), ModelVar("Y", 3)))
    point = {Var("p", (i, j)): M[i - 1][j - 1] for i in range(1, 4) for j in range(1, 4)}
    assert all(g.evaluate(point) == 0 for g in gens)


def test_mixture_sample_is_fully_supported_and_normalized():
    model = eq21_model()
    conclusion = CIStatement(("X",), ("Y1", "Y2"), ("H2",))
    rng = random.Random(99)
    P = mixture_parametrization_sample(model, conclusion, rng)
    assert all(x > 0 for x in P.entries)
    assert sum(P.entries) == 1
    assert P.is_nonnegative() and P.is_normalized()


def test_mixture_sample_kills_all_eq21_generators():
    model = eq21_model()
    stmts = [
        CIStatement(("X",), ("Y1",), ("Y2", "H1")),
        CIStatement(("X",), ("Y2",), ("Y1", "H2")),
    ]
    ideal = ci_ideal(stmts, model)
    conclusion = CIStatement(("X",), ("Y1", "Y2"), ("H2",))
    rng = random.Random(123)
    for _ in range(3):
        P = mixture_parametrization_sample(model, conclusion, rng)
        M = flatten(P, ["X"], ["Y1", "Y2"])
        assert linalg.rank(M) <= 2
        point = tensor_assignment(model, P)
        assert all(g.evaluate(point) == 0 for g in ideal.generators)


@settings(max_examples=20, deadline=None)
@given(
    st.integers(2, 4),
    st.integers(2, 4),
    st.integers(1, 2),
    st.integers(0, 10**6),
)
def test_mixture_rank_bound_across_shapes(a_card, b_card, h, seed):
    model = DiscreteModel.of(
        ModelVar("A", a_card), ModelVar("B", b_card), ModelVar("H", h, hidden=True)
    )
    conclusion = CIStatement(("A",), ("B",), ("H",))
    P = mixture_parametrization_sample(model, conclusion, random.Random(seed))
    M = flatten(P, ["A"], ["B"])
    assert linalg.rank(M) <= h
    assert all(x > 0 for x in P.entries) and sum(P.entries) == 1
    # all (h+1)-minors of the flattening vanish exactly
    from itertools import combinations

    for rows in combinations(range(a_card), h + 1):
        for cols in combinations(range(b_card), h + 1):
            sub = [[M[i][j] for j in cols] for i in rows]
            assert linalg.det(sub) == 0


def test_mixture_sample_rejects_observed_conditioning():
    model = eq21_model()
    rng = random.Random(1)
    with pytest.raises(ValueError):
        mixture_parametrization_sample(model, CIStatement(("X",), ("Y1", "Y2"), ("Y1",)), rng)


def test_marginal_statement_rejected_when_observed_variable_missing():
    model = eq21_model()
    with pytest.raises(ValueError):
        ci_minor_generators(CIStatement(("X",), ("Y1",), ("H1",)), model)


def test_ci_file_round_trip():
    model = eq21_model()
    stmts = [
        CIStatement(("X",), ("Y1",), ("Y2", "H1")),
        CIStatement(("X",), ("Y2",), ("Y1", "H2")),
    ]
    text = ci_file_text(model, stmts)
    model2, stmts2 = parse_ci_file(text)
    assert model2 == model
    assert stmts2 == stmts


def test_tensor_text_round_trip():
    P = tensor_of(("X", "Y"), (2, 2), [Fraction(1, 4)] * 4)
    assert ProbTensor.from_text(P.to_text()) == P
