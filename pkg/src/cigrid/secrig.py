"""Secant dimensions via stacked tangent spaces, mixture samples, joins, and
rigidity-matrix rank checks.

Dimensions are reported for affine cones; the projective dimension is one
less.  Every randomized answer carries a two-draw agreement guard: two
independent draws must agree or the computation fails loudly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Sequence

from .linalg import Mat, rank, row_submatrix
from .matroid import GenericityError
from .report import CheckResult, WitnessReport
from .sampling import mixture_matrix, rand_fraction, rand_nonzero_fraction

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class TangentModel:
    """Sampler of (point, tangent-space basis) pairs with exact entries."""

    name: str
    ambient: int
    draw: Callable[[random.Random], tuple[Point, list[Point]]]


def segre_tangent_model(m: int, n: int) -> TangentModel:
    """Rank-one m x n matrices u v^T, flattened row-major into m*n space.

    The tangent space at u v^T is spanned by the u x e_j and e_i x v slabs.
    """

    def draw(rng: random.Random) -> tuple[Point, list[Point]]:
        u = [rand_nonzero_fraction(rng) for _ in range(m)]
        v = [rand_nonzero_fraction(rng) for _ in range(n)]
        point = tuple(ui * vj for ui in u for vj in v)
        tangents: list[Point] = []
        for j in range(n):
            vec = [Fraction(0)] * (m * n)
            for i in range(m):
                vec[i * n + j] = u[i]
            tangents.append(tuple(vec))
        for i in range(m):
            vec = [Fraction(0)] * (m * n)
            for j in range(n):
                vec[i * n + j] = v[j]
            tangents.append(tuple(vec))
        return point, tangents

    return TangentModel(f"rank-one {m}x{n}", m * n, draw)


def _stacked_tangent_rank(model: TangentModel, k: int, rng: random.Random) -> int:
    rows: list[list[Fraction]] = []
    for _ in range(k):
        _, tangents = model.draw(rng)
        rows.extend(list(t) for t in tangents)
    return rank(rows)


def secant_dimension(model: TangentModel, k: int, rng: random.Random, max_attempts: int = 4) -> int:
    """Affine-cone dimension of the k-th secant: the exact rank of tangent
    bases stacked at k independent random points, with a two-draw guard."""
    if k < 1:
        raise ValueError("need k >= 1")
    for _ in range(max_attempts):
        a = _stacked_tangent_rank(model, k, rng)
        b = _stacked_tangent_rank(model, k, rng)
        if a == b:
            return a
    raise GenericityError(f"stacked tangent ranks kept disagreeing for {model.name}, k={k}")


def mixture_sample(m: int, n: int, k: int, rng: random.Random) -> Mat:
    """Convex combination of k product distributions: a strictly positive
    m x n matrix with entries summing to one and rank at most k."""
    if k < 1:
        raise ValueError("need k >= 1")
    return mixture_matrix(rng, m, n, k)


def join_point(u: Sequence[Fraction], v: Sequence[Fraction], lam: Fraction) -> Point:
    if len(u) != len(v):
        raise ValueError("points live in different ambient spaces")
    lam = Fraction(lam)
    return tuple(lam * a + (1 - lam) * b for a, b in zip(u, v))


def join_sample(
    u_sampler: Callable[[random.Random], Sequence[Fraction]],
    v_sampler: Callable[[random.Random], Sequence[Fraction]],
    rng: random.Random,
    mixture: bool = False,
) -> Point:
    """lam*u + (1-lam)*v for random rational lam; the mixture flag confines
    lam to the open unit interval."""
    u = tuple(u_sampler(rng))
    v = tuple(v_sampler(rng))
    if mixture:
        a = rng.randint(1, 2**31)
        b = rng.randint(1, 2**31)
        lam = Fraction(a, a + b)
    else:
        lam = rand_fraction(rng)
    return join_point(u, v, lam)


# -- bar-joint frameworks ------------------------------------------------------


@dataclass(frozen=True)
class Framework:
    """A graph with one rational configuration point per vertex (1-based)."""

    d: int
    coords: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("configuration dimension must be >= 1")
        for p in self.coords:
            if len(p) != self.d:
                raise ValueError("configuration point of wrong dimension")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"edge ({u}, {v}) has equal endpoints")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValueError(f"edge ({u}, {v}) out of range")

    @property
    def n(self) -> int:
        return len(self.coords)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.d}"]
        lines += [" ".join(str(x) for x in p) for p in self.coords]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "Framework":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
        n, d = (int(t) for t in lines[0].split())
        coords = tuple(tuple(Fraction(t) for t in ln.split()) for ln in lines[1 : 1 + n])
        edges = tuple((int(a), int(b)) for a, b in (ln.split() for ln in lines[1 + n :]))
        return Framework(d, coords, edges)


def complete_graph_edges(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((u, v) for u, v in combinations(range(1, n + 1), 2))


def random_framework(n: int, d: int, rng: random.Random, edges=None) -> Framework:
    coords = tuple(tuple(rand_fraction(rng) for _ in range(d)) for _ in range(n))
    return Framework(d, coords, tuple(edges) if edges is not None else complete_graph_edges(n))


def rigidity_matrix(fw: Framework) -> Mat:
    """One row per edge {u, v}: the block p_u - p_v in u's coordinates and
    its negative in v's.  Coincident endpoints are rejected because the zero
    row would silently change the rank semantics."""
    rows: Mat = []
    for u, v in fw.edges:
        pu, pv = fw.coords[u - 1], fw.coords[v - 1]
        if pu == pv:
            raise ValueError(f"edge ({u}, {v}) has coincident endpoints")
        row = [Fraction(0)] * (fw.d * fw.n)
        for c in range(fw.d):
            row[(u - 1) * fw.d + c] = pu[c] - pv[c]
            row[(v - 1) * fw.d + c] = pv[c] - pu[c]
        rows.append(row)
    return rows


def rigidity_rank_formula(n: int, d: int) -> int:
    return d * n - comb(d + 1, 2)


def _edge_index(n: int) -> dict[tuple[int, int], int]:
    return {e: i + 1 for i, e in enumerate(complete_graph_edges(n))}


def _check_complete_subgraph_circuits(fw: Framework, size: int) -> tuple[bool, str]:
    """Whether the edge rows of every `size`-vertex complete subgraph form a
    circuit of the row matroid: dependent, all one-smaller subsets independent."""
    R = rigidity_matrix(fw)
    index = _edge_index(fw.n)
    for verts in combinations(range(1, fw.n + 1), size):
        rows = [index[(u, v)] for u, v in combinations(verts, 2)]
        sub = row_submatrix(R, rows)
        if rank(sub) >= len(rows):
            return False, f"edge set of vertices {verts} is independent"
        for drop in range(len(rows)):
            kept = rows[:drop] + rows[drop + 1 :]
            if rank(row_submatrix(R, kept)) < len(kept):
                return False, f"proper subset of the {verts} edge set is dependent"
    return True, ""


def generic_rigidity_check(n: int, d: int, rng: random.Random, seed_note: int = 0) -> WitnessReport:
    """Rank of a random complete-graph framework against d*n - (d+1 choose 2),
    plus the complete-subgraph circuit test on d+2 vertices (skipped above
    8 vertices).  Runs on two independent configurations; both must agree."""
    if n < d + 1:
        raise ValueError("need n >= d + 1")
    report = WitnessReport(name=f"rigidity n={n} d={d}", seed=seed_note, trials=2)
    expected = rigidity_rank_formula(n, d)

    ranks = []
    circuit_outcomes: list[tuple[bool, str]] = []
    for _ in range(2):
        fw = random_framework(n, d, rng)
        ranks.append(rank(rigidity_matrix(fw)))
        if n <= 8 and n >= d + 2:
            circuit_outcomes.append(_check_complete_subgraph_circuits(fw, d + 2))

    agree = len(set(ranks)) == 1 and len({o[0] for o in circuit_outcomes}) <= 1
    if not agree:
        raise GenericityError(f"two random configurations disagree: ranks={ranks}")

    report.add(
        CheckResult.outcome(
            f"rank equals {d}*{n} - C({d + 1},2) = {expected}",
            ranks[0] == expected,
            detail=f"computed rank {ranks[0]}",
            counts={"rank": ranks[0], "expected": expected},
        )
    )
    if circuit_outcomes:
        ok, why = circuit_outcomes[0]
        count = comb(n, d + 2)
        report.add(
            CheckResult.outcome(
                f"all {count} complete {d + 2}-vertex edge sets are circuits",
                ok,
                detail=why,
            )
        )
    return report
