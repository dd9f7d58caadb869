"""Matroids from exact matrices, circuit machinery, grid realizations,
algebraic matroids via Jacobians, and plane-arrangement signatures.

Rank queries on linear matroids first try a mod-p shadow (full rank mod p
certifies independence over Q); anything else is settled by exact rational
elimination, so no reported answer ever depends on the shadow alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .hypergraph import GridSpec, Hypergraph, grid_hypergraph
from .ideals import Ideal
from .linalg import Mat, kernel_basis, rank, rank_mod_p, transpose
from .poly import PolyRing, Polynomial, Var, generic_matrix, minor, normalize_sign, parse_polynomial
from .sampling import rand_fraction, rand_matrix, rand_nonzero_fraction

ENUMERATION_CAP = 16


class GenericityError(RuntimeError):
    """Random draws disagreed where a generic answer was required."""


class Matroid:
    """Ground set with a rank oracle; circuits are minimal dependent sets."""

    ground: tuple[int, ...]

    def rank_of(self, subset: Iterable[int]) -> int:
        raise NotImplementedError

    def full_rank(self) -> int:
        return self.rank_of(self.ground)

    def is_independent(self, subset: Iterable[int]) -> bool:
        subset = sorted(set(subset))
        return self.rank_of(subset) == len(subset)

    def is_dependent(self, subset: Iterable[int]) -> bool:
        return not self.is_independent(subset)

    def circuits(self) -> tuple[frozenset[int], ...]:
        """Minimal dependent sets, found breadth-first over subset sizes with
        known-circuit pruning.  Refuses ground sets above the enumeration cap."""
        n = len(self.ground)
        if n > ENUMERATION_CAP:
            raise ValueError(f"circuit enumeration is capped at {ENUMERATION_CAP} elements, got {n}")
        found: list[frozenset[int]] = []
        max_size = min(n, self.full_rank() + 1)
        for size in range(1, max_size + 1):
            for cand in combinations(self.ground, size):
                s = frozenset(cand)
                if any(c <= s for c in found):
                    continue
                if self.is_dependent(cand):
                    found.append(s)
        found.sort(key=lambda c: (len(c), sorted(c)))
        return tuple(found)

    def restrict(self, subset: Iterable[int]) -> "Matroid":
        raise NotImplementedError


@dataclass(frozen=True)
class LinearMatroid(Matroid):
    """Column matroid of an exact rational matrix."""

    ground: tuple[int, ...]
    columns: tuple[tuple[Fraction, ...], ...]  # aligned with ground

    def __post_init__(self):
        if len(self.ground) != len(self.columns):
            raise ValueError("one column per ground element required")

    def _submatrix(self, subset: Sequence[int]) -> Mat:
        pos = {e: i for i, e in enumerate(self.ground)}
        cols = [self.columns[pos[e]] for e in subset]
        return [list(row) for row in zip(*cols)] if cols else []

    def rank_of(self, subset: Iterable[int]) -> int:
        subset = sorted(set(subset))
        if not subset:
            return 0
        m = self._submatrix(subset)
        shadow = rank_mod_p(m)
        if shadow == len(subset):
            return shadow
        return rank(m)

    def restrict(self, subset: Iterable[int]) -> "LinearMatroid":
        subset = sorted(set(subset))
        pos = {e: i for i, e in enumerate(self.ground)}
        missing = [e for e in subset if e not in pos]
        if missing:
            raise ValueError(f"not ground elements: {missing}")
        return LinearMatroid(tuple(subset), tuple(self.columns[pos[e]] for e in subset))


@dataclass(frozen=True)
class CircuitMatroid(Matroid):
    """Matroid presented by its circuit family (assumed to satisfy the
    circuit axioms; see `is_circuit_family`)."""

    ground: tuple[int, ...]
    circuit_family: tuple[frozenset[int], ...]

    def _contains_circuit(self, s: frozenset[int]) -> bool:
        return any(c <= s for c in self.circuit_family)

    def rank_of(self, subset: Iterable[int]) -> int:
        # greedy is exact for matroid rank
        current: set[int] = set()
        for e in sorted(set(subset)):
            if not self._contains_circuit(frozenset(current | {e})):
                current.add(e)
        return len(current)

    def is_independent(self, subset: Iterable[int]) -> bool:
        return not self._contains_circuit(frozenset(subset))

    def circuits(self) -> tuple[frozenset[int], ...]:
        return tuple(sorted(self.circuit_family, key=lambda c: (len(c), sorted(c))))

    def restrict(self, subset: Iterable[int]) -> "CircuitMatroid":
        subset_set = frozenset(subset)
        kept = tuple(c for c in self.circuit_family if c <= subset_set)
        return CircuitMatroid(tuple(sorted(subset_set)), kept)


def matroid_from_matrix(m: Mat, labels: Sequence[int] | None = None) -> LinearMatroid:
    """Column matroid; ground labels default to 1..n."""
    n = len(m[0]) if m else 0
    if labels is None:
        labels = range(1, n + 1)
    labels = tuple(labels)
    cols = tuple(tuple(row[j] for row in m) for j in range(n))
    return LinearMatroid(labels, cols)


def matroid_to_text(m: Matroid) -> str:
    """Ground size, then one sorted circuit per line."""
    lines = [str(len(m.ground))]
    lines += [" ".join(str(e) for e in sorted(c)) for c in m.circuits()]
    return "\n".join(lines) + "\n"


def matroid_from_text(text: str) -> CircuitMatroid:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty matroid text")
    n = int(lines[0])
    circuits = tuple(frozenset(int(t) for t in ln.split()) for ln in lines[1:])
    if n <= 14 and not is_circuit_family(n, circuits):
        raise ValueError("the listed sets do not satisfy the circuit axioms")
    return CircuitMatroid(tuple(range(1, n + 1)), circuits)


def same_matroid(a: Matroid, b: Matroid) -> bool:
    return a.ground == b.ground and a.circuits() == b.circuits()


def is_circuit_family(n: int, family: Iterable[Iterable[int]]) -> bool:
    """Circuit axioms, checked exhaustively: no empty circuit, antichain, and
    circuit elimination.  Capped at n <= 14."""
    if n > 14:
        raise ValueError("circuit-axiom checking is capped at 14 elements")
    circuits = [frozenset(c) for c in family]
    if len(set(circuits)) != len(circuits):
        return False
    for c in circuits:
        if not c or min(c) < 1 or max(c) > n:
            return False
    for c1 in circuits:
        for c2 in circuits:
            if c1 != c2 and c1 <= c2:
                return False
    for i, c1 in enumerate(circuits):
        for c2 in circuits[i + 1:]:
            for e in c1 & c2:
                rest = (c1 | c2) - {e}
                if not any(c3 <= rest for c3 in circuits):
                    return False
    return True


def dependent_contains(m: Matroid, H: Hypergraph) -> bool:
    """Whether every edge of the hypergraph is dependent in the matroid."""
    ground = set(m.ground)
    for edge in H.edges:
        if not edge <= ground:
            raise ValueError(f"edge {sorted(edge)} is not inside the matroid's ground set")
        if m.is_independent(edge):
            return False
    return True


def restriction(m: Matroid, subset: Iterable[int]) -> Matroid:
    return m.restrict(subset)


def grid_circuit_family(spec: GridSpec) -> tuple[frozenset[int], ...]:
    """Inclusion-minimal members of the grid edges together with all
    (d+1)-subsets of the vertex set."""
    H = grid_hypergraph(spec)
    candidates = set(H.edges)
    candidates.update(frozenset(c) for c in combinations(range(1, spec.n + 1), spec.d + 1))
    return Hypergraph.of(spec.n, candidates).edges


def realize_grid_matroid(
    spec: GridSpec,
    rng: random.Random,
    max_attempts: int = 32,
) -> Mat:
    """A d x (k*l) rational matrix whose column at grid cell (i, j) lies in
    the intersection of a generic (t-1)-dimensional row subspace and a
    generic (s-1)-dimensional column subspace.

    Every row t-subset and column s-subset of the grid is then dependent; the
    draw is retried until the matrix also has full rank d.
    """
    if not spec.in_realization_regime():
        raise ValueError(
            "realization needs 3 <= s <= t <= l, s <= k, and t <= d <= s+t-3; "
            f"got {spec}"
        )
    d = spec.d
    expect_dim = (spec.s - 1) + (spec.t - 1) - d
    H = grid_hypergraph(spec)
    for _ in range(max_attempts):
        row_spaces = [rand_matrix(rng, d, spec.t - 1) for _ in range(spec.k)]
        col_spaces = [rand_matrix(rng, d, spec.s - 1) for _ in range(spec.l)]
        if any(rank(u) < spec.t - 1 for u in row_spaces):
            continue
        if any(rank(w) < spec.s - 1 for w in col_spaces):
            continue
        matrix: list[list[Fraction]] = [[Fraction(0)] * spec.n for _ in range(d)]
        ok = True
        for i in range(spec.k):
            for j in range(spec.l):
                u, w = row_spaces[i], col_spaces[j]
                stacked = [u_row + [-x for x in w_row] for u_row, w_row in zip(u, w)]
                kern = kernel_basis(stacked)
                if len(kern) != expect_dim:
                    ok = False
                    break
                coeffs = [rand_nonzero_fraction(rng) for _ in kern]
                a = [sum(c * v[r] for c, v in zip(coeffs, kern)) for r in range(spec.t - 1)]
                point = [sum(u[r][c] * a[c] for c in range(spec.t - 1)) for r in range(d)]
                if all(x == 0 for x in point):
                    ok = False
                    break
                vertex = (j) * spec.k + i  # 0-based position of cell (i+1, j+1)
                for r in range(d):
                    matrix[r][vertex] = point[r]
            if not ok:
                break
        if not ok:
            continue
        if rank(matrix) != d:
            continue
        m = matroid_from_matrix(matrix)
        if dependent_contains(m, H):
            return matrix
    raise GenericityError(f"no generic grid realization found in {max_attempts} attempts")


# -- algebraic matroids --------------------------------------------------------


@dataclass(frozen=True)
class PolyMap:
    """A polynomial parametrization: coordinates in a shared parameter ring."""

    ring: PolyRing
    coords: tuple[Polynomial, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        for f in self.coords:
            if f.ring != self.ring:
                raise ValueError("coordinate outside the parameter ring")
        if self.labels and len(self.labels) != len(self.coords):
            raise ValueError("one label per coordinate required")

    def display_labels(self) -> tuple[str, ...]:
        return self.labels or tuple(str(i) for i in range(1, len(self.coords) + 1))

    def jacobian_at(self, point: dict[Var, Fraction]) -> Mat:
        """Rows are coordinate gradients with respect to the parameters."""
        return [
            [f.derivative(v).evaluate(point) for v in self.ring.variables]
            for f in self.coords
        ]

    @staticmethod
    def parse(text: str) -> "PolyMap":
        """Format: a `params` line, then `coord <label> <polynomial>` lines."""
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln and not ln.startswith("#")]
        if not lines or not lines[0].startswith("params"):
            raise ValueError("expected a leading 'params' line")
        ring = PolyRing.of(Var.parse(tok) for tok in lines[0].split()[1:])
        labels, coords = [], []
        for ln in lines[1:]:
            parts = ln.split(None, 2)
            if len(parts) != 3 or parts[0] != "coord":
                raise ValueError(f"expected 'coord <label> <polynomial>', got {ln!r}")
            labels.append(parts[1])
            coords.append(parse_polynomial(parts[2], ring))
        return PolyMap(ring, tuple(coords), tuple(labels))


def segre_map(m: int, n: int) -> PolyMap:
    """Rank-one m x n matrices u v^T, one coordinate per entry."""
    params = [Var("u", (i,)) for i in range(1, m + 1)] + [Var("v", (j,)) for j in range(1, n + 1)]
    ring = PolyRing.of(params)
    coords, labels = [], []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            coords.append(ring.var(Var("u", (i,))) * ring.var(Var("v", (j,))))
            labels.append(f"{i}{j}")
    return PolyMap(ring, tuple(coords), tuple(labels))


def matrix_product_map(m: int, n: int, r: int) -> PolyMap:
    """Rank <= r m x n matrices A B with A an m x r and B an r x n factor."""
    params = [Var("a", (i, t)) for i in range(1, m + 1) for t in range(1, r + 1)]
    params += [Var("b", (t, j)) for t in range(1, r + 1) for j in range(1, n + 1)]
    ring = PolyRing.of(params)
    coords, labels = [], []
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            total = ring.zero()
            for t in range(1, r + 1):
                total = total + ring.var(Var("a", (i, t))) * ring.var(Var("b", (t, j)))
            coords.append(total)
            labels.append(f"{i}{j}")
    return PolyMap(ring, tuple(coords), tuple(labels))


def identity_map(n: int) -> PolyMap:
    ring = PolyRing.of(Var("u", (i,)) for i in range(1, n + 1))
    return PolyMap(ring, tuple(ring.var(v) for v in ring.variables))


def algebraic_matroid(pm: PolyMap, rng: random.Random, max_attempts: int = 4) -> LinearMatroid:
    """Coordinate-dependence matroid of the parametrized set.

    The Jacobian is evaluated at two independent random rational points; a
    coordinate subset is independent exactly when its gradient rows are.  The
    two draws must induce the same matroid (circuit-for-circuit), otherwise
    the draw is retried and eventually reported as non-generic.
    """
    ground = tuple(range(1, len(pm.coords) + 1))

    def draw() -> LinearMatroid:
        point = {v: rand_fraction(rng) for v in pm.ring.variables}
        jac = pm.jacobian_at(point)
        return matroid_from_matrix(transpose(jac), ground)

    last_pair = None
    for _ in range(max_attempts):
        a, b = draw(), draw()
        if a.circuits() == b.circuits():
            return a
        last_pair = (a, b)
    raise GenericityError(
        f"Jacobian matroids disagree across random points after {max_attempts} attempts: "
        f"{last_pair[0].circuits()} vs {last_pair[1].circuits()}"
    )


# -- sparse low-rank ideals and arrangement signatures -------------------------


def sparse_lowrank_ideal(spec: GridSpec) -> Ideal:
    """Rank and support constraints on a k x l matrix of indeterminates:
    all d-minors, the products over s-subsets of every column, and the
    products over t-subsets of every row."""
    if spec.d > min(spec.k, spec.l) or spec.d < 1:
        raise ValueError("need 1 <= d <= min(k, l)")
    Y = generic_matrix(spec.k, spec.l, base="y")
    memo: dict = {}
    seen = set()
    gens = []

    def push(g: Polynomial) -> None:
        g = normalize_sign(g)
        if g not in seen:
            seen.add(g)
            gens.append(g)

    for rows in combinations(range(1, spec.k + 1), spec.d):
        for cols in combinations(range(1, spec.l + 1), spec.d):
            push(minor(Y, rows, cols, memo))
    for j in range(1, spec.l + 1):
        for rows in combinations(range(1, spec.k + 1), spec.s):
            prod = Y.ring.one()
            for i in rows:
                prod = prod * Y.entry(i, j)
            push(prod)
    for i in range(1, spec.k + 1):
        for cols in combinations(range(1, spec.l + 1), spec.t):
            prod = Y.ring.one()
            for j in cols:
                prod = prod * Y.entry(i, j)
            push(prod)
    return Ideal.of(Y.ring, gens)


@dataclass(frozen=True)
class ArrangementSignature:
    """Coarse projective-plane invariant: rank-2 flats with at least three
    points, their sizes, and how many such lines pass through each point
    that lies on more than one."""

    points: int
    lines: int
    line_sizes: tuple[int, ...]
    multipoint_degrees: tuple[int, ...]

    def to_text(self) -> str:
        sizes = ",".join(str(s) for s in self.line_sizes) or "-"
        degrees = ",".join(str(d) for d in self.multipoint_degrees) or "-"
        return (
            f"points {self.points} lines {self.lines} "
            f"sizes [{sizes}] multipoint-degrees [{degrees}]"
        )


def arrangement_signature(m: Mat) -> ArrangementSignature:
    """Signature of the column configuration of a 3 x n matrix.

    Zero columns are ignored; mutually parallel columns count as one
    projective point.  Equal signatures are necessary (not sufficient) for
    arrangement isomorphism.
    """
    if len(m) != 3:
        raise ValueError("arrangement signatures need a 3-row matrix")
    n = len(m[0]) if m else 0
    cols = {j: [row[j - 1] for row in m] for j in range(1, n + 1)}
    nonzero = [j for j in sorted(cols) if any(x != 0 for x in cols[j])]

    def pair_rank(i, j):
        return rank([[cols[i][r], cols[j][r]] for r in range(3)])

    reps: list[int] = []
    for j in nonzero:
        if not any(pair_rank(r, j) == 1 for r in reps):
            reps.append(j)

    lines: set[frozenset[int]] = set()
    for a, b in combinations(reps, 2):
        if pair_rank(a, b) != 2:
            continue
        flat = frozenset(
            c
            for c in reps
            if rank([[cols[a][r], cols[b][r], cols[c][r]] for r in range(3)]) == 2
        )
        if len(flat) >= 3:
            lines.add(flat)

    degree = {p: sum(1 for ln in lines if p in ln) for p in reps}
    multi = sorted((d for d in degree.values() if d >= 2), reverse=True)
    sizes = sorted((len(ln) for ln in lines), reverse=True)
    return ArrangementSignature(len(reps), len(lines), tuple(sizes), tuple(multi))
