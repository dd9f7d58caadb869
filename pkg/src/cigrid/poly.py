"""Sparse multivariate polynomials with exact rational coefficients.

Variables carry structured integer indices (``x_1_2``, ``p_2_1_3``) and are
totally ordered row-major by (base, index), so polynomial output is
deterministic.  Coefficients are `fractions.Fraction`; all operations are
exact and all values are immutable after construction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Rat = Fraction | int


@dataclass(frozen=True, order=True)
class Var:
    """A named indeterminate such as x_1_2 (base "x", index (1, 2))."""

    base: str
    index: tuple[int, ...] = ()

    def __str__(self) -> str:
        return self.base + "".join(f"_{i}" for i in self.index)

    @staticmethod
    def parse(text: str) -> "Var":
        m = re.fullmatch(r"([A-Za-z]+)((?:_\d+)*)", text)
        if m is None:
            raise ValueError(f"not a variable name: {text!r}")
        idx = tuple(int(p) for p in m.group(2).split("_") if p)
        return Var(m.group(1), idx)


def var(base: str, *index: int) -> Var:
    return Var(base, tuple(index))


@dataclass(frozen=True)
class MonomialOrder:
    """Total order on monomials given as a key function on exponent tuples.

    kind: "lex" (first variable dominates), "degrevlex" (graded, ties broken
    by the reversed exponent vector), or "block" (compare block by block,
    degrevlex inside each block; the first block is the elimination block).
    blocks holds variable positions for "block" orders.
    """

    kind: str
    blocks: tuple[tuple[int, ...], ...] = ()

    def key(self, exps: tuple[int, ...]):
        if self.kind == "lex":
            return exps
        if self.kind == "degrevlex":
            return (sum(exps), tuple(-e for e in reversed(exps)))
        if self.kind == "block":
            return tuple(
                (sum(exps[p] for p in blk), tuple(-exps[p] for p in reversed(blk)))
                for blk in self.blocks
            )
        raise ValueError(f"unknown monomial order kind {self.kind!r}")

    def __str__(self) -> str:
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


@dataclass(frozen=True)
class PolyRing:
    """A polynomial ring over Q with a fixed, row-major-sorted variable tuple."""

    variables: tuple[Var, ...]

    def __post_init__(self):
        if tuple(sorted(set(self.variables))) != self.variables:
            raise ValueError("ring variables must be sorted and distinct")

    @staticmethod
    def of(variables: Iterable[Var]) -> "PolyRing":
        return PolyRing(tuple(sorted(set(variables))))

    def position(self, v: Var) -> int:
        try:
            return self._positions()[v]
        except KeyError:
            raise KeyError(f"{v} is not a variable of this ring") from None

    def _positions(self) -> dict[Var, int]:
        cached = _POSITION_CACHE.get(self.variables)
        if cached is None:
            cached = {v: i for i, v in enumerate(self.variables)}
            _POSITION_CACHE[self.variables] = cached
        return cached

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c: Rat) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Polynomial(self, {(0,) * len(self.variables): c})

    def var(self, v: Var) -> "Polynomial":
        exps = [0] * len(self.variables)
        exps[self.position(v)] = 1
        return Polynomial(self, {tuple(exps): Fraction(1)})

    def monomial(self, powers: Mapping[Var, int], coeff: Rat = 1) -> "Polynomial":
        exps = [0] * len(self.variables)
        for v, e in powers.items():
            if e < 0:
                raise ValueError("exponents must be nonnegative")
            exps[self.position(v)] = e
        return Polynomial(self, {tuple(exps): Fraction(coeff)}) if coeff else self.zero()

    def elimination_order(self, kill: Iterable[Var]) -> MonomialOrder:
        """Block order whose first block is `kill`: monomials touching `kill`
        dominate all others, so Groebner leading terms witness elimination."""
        kill = set(kill)
        first = tuple(i for i, v in enumerate(self.variables) if v in kill)
        rest = tuple(i for i, v in enumerate(self.variables) if v not in kill)
        missing = kill - set(self.variables)
        if missing:
            raise KeyError(f"not ring variables: {sorted(map(str, missing))}")
        return MonomialOrder("block", (first, rest))

    def extend(self, extra: Iterable[Var]) -> "PolyRing":
        return PolyRing.of(self.variables + tuple(extra))


_POSITION_CACHE: dict[tuple[Var, ...], dict[Var, int]] = {}


class Polynomial:
    """Map from exponent tuples to nonzero rational coefficients.

    Never mutate `terms` after construction; arithmetic returns new values.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict[tuple[int, ...], Fraction]):
        self.ring = ring
        self.terms = {m: c for m, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def support(self) -> set[Var]:
        out: set[Var] = set()
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    out.add(self.ring.variables[i])
        return out

    def leading(self, order: MonomialOrder = DEGREVLEX) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def constant_value(self) -> Fraction:
        """Coefficient of the empty monomial (the whole value if constant)."""
        zero = (0,) * len(self.ring.variables)
        return self.terms.get(zero, Fraction(0))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring operations ---------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, Fraction(0)) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        terms: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = terms.get(m, Fraction(0)) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c: Rat) -> "Polynomial":
        c = Fraction(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {m: k * c for m, k in self.terms.items()})

    # -- calculus / evaluation ----------------------------------------------

    def derivative(self, v: Var) -> "Polynomial":
        pos = self.ring.position(v)
        terms: dict[tuple[int, ...], Fraction] = {}
        for m, c in self.terms.items():
            e = m[pos]
            if e:
                m2 = m[:pos] + (e - 1,) + m[pos + 1:]
                terms[m2] = terms.get(m2, Fraction(0)) + c * e
        return Polynomial(self.ring, terms)

    def evaluate(self, assignment: Mapping[Var, Rat]) -> Fraction:
        """Exact value at a point; every variable appearing in self must be
        assigned."""
        values: list[Fraction | None] = [None] * len(self.ring.variables)
        for v, x in assignment.items():
            p = self.ring._positions().get(v)
            if p is not None:
                values[p] = Fraction(x)
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, e in enumerate(m):
                if e:
                    if values[i] is None:
                        raise ValueError(f"unassigned variable {self.ring.variables[i]}")
                    term *= values[i] ** e
            total += term
        return total

    def rename(self, mapping: Mapping[Var, Var], target: PolyRing) -> "Polynomial":
        """Ring morphism sending each support variable through `mapping`."""
        terms: dict[tuple[int, ...], Fraction] = {}
        width = len(target.variables)
        for m, c in self.terms.items():
            exps = [0] * width
            for i, e in enumerate(m):
                if e:
                    v = self.ring.variables[i]
                    w = mapping.get(v, v)
                    exps[target.position(w)] += e
            m2 = tuple(exps)
            s = terms.get(m2, Fraction(0)) + c
            if s:
                terms[m2] = s
            else:
                terms.pop(m2, None)
        return Polynomial(target, terms)

    def transfer(self, target: PolyRing) -> "Polynomial":
        """Re-express in a ring containing all support variables."""
        return self.rename({}, target)

    # -- text form -----------------------------------------------------------

    def to_text(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for m in sorted(self.terms, key=order.key, reverse=True):
            c = self.terms[m]
            factors = [
                str(self.ring.variables[i]) + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            ]
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = " * ".join(factors)
            else:
                body = " * ".join([str(mag)] + factors)
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()})"


def normalize_sign(f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Flip the sign so the leading coefficient is positive (0 stays 0)."""
    if f.is_zero():
        return f
    _, c = f.leading(order)
    return -f if c < 0 else f


_TERM_RE = re.compile(
    r"(?P<coeff>\d+(?:/\d+)?)|(?P<var>[A-Za-z]+(?:_\d+)*)(?:\^(?P<exp>\d+))?"
)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse the textual form produced by `Polynomial.to_text`.

    Accepts sums of terms like ``2/3 * x_1_1^2 * x_2_2 - p_1_2 + 4``.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    if text == "0":
        return ring.zero()
    # split into signed chunks at top level
    chunks: list[tuple[int, str]] = []
    sign, buf = 1, []
    i = 0
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    while i < len(text):
        ch = text[i]
        if ch in "+-":
            chunks.append((sign, "".join(buf)))
            sign = -1 if ch == "-" else 1
            buf = []
        else:
            buf.append(ch)
        i += 1
    chunks.append((sign, "".join(buf)))

    total = ring.zero()
    for sgn, chunk in chunks:
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"malformed polynomial text: {text!r}")
        coeff = Fraction(sgn)
        powers: dict[Var, int] = {}
        for factor in chunk.split("*"):
            factor = factor.strip()
            m = _TERM_RE.fullmatch(factor)
            if m is None:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            if m.group("coeff"):
                coeff *= Fraction(m.group("coeff"))
            else:
                v = Var.parse(m.group("var"))
                e = int(m.group("exp") or 1)
                powers[v] = powers.get(v, 0) + e
        total = total + ring.monomial(powers, coeff)
    return total


# -- symbolic matrices and minors ---------------------------------------------


@dataclass(frozen=True)
class SymbolicMatrix:
    """A rectangular array of polynomials; rows and columns are 1-based."""

    ring: PolyRing
    entries: tuple[tuple[Polynomial, ...], ...]

    @property
    def shape(self) -> tuple[int, int]:
        return (len(self.entries), len(self.entries[0]) if self.entries else 0)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.entries[i - 1][j - 1]

    def assignment(self, values: Sequence[Sequence[Rat]]) -> dict[Var, Fraction]:
        """Map each single-variable entry to the matching value."""
        d, n = self.shape
        if len(values) != d or any(len(row) != n for row in values):
            raise ValueError("value matrix shape mismatch")
        out: dict[Var, Fraction] = {}
        for i in range(d):
            for j in range(n):
                e = self.entries[i][j]
                sup = e.support()
                if len(sup) != 1:
                    raise ValueError("assignment requires single-variable entries")
                out[next(iter(sup))] = Fraction(values[i][j])
        return out


def generic_matrix(d: int, n: int, base: str = "x") -> SymbolicMatrix:
    """d x n matrix of fresh indeterminates base_i_j, row-major ordered."""
    vs = [Var(base, (i, j)) for i in range(1, d + 1) for j in range(1, n + 1)]
    ring = PolyRing.of(vs)
    entries = tuple(
        tuple(ring.var(Var(base, (i, j))) for j in range(1, n + 1))
        for i in range(1, d + 1)
    )
    return SymbolicMatrix(ring, entries)


MinorMemo = dict[tuple[tuple[int, ...], tuple[int, ...]], Polynomial]


def minor(
    X: SymbolicMatrix,
    rows: Iterable[int],
    cols: Iterable[int],
    memo: MinorMemo | None = None,
) -> Polynomial:
    """Determinant of the submatrix on 1-based row/column index sets.

    Expanded by Laplace recursion along the first row; the sign convention is
    the Leibniz formula with both index sets taken in increasing order.
    """
    rows = tuple(sorted(set(rows)))
    cols = tuple(sorted(set(cols)))
    d, n = X.shape
    if len(rows) != len(cols):
        raise ValueError("row and column sets must have equal size")
    if not rows:
        raise ValueError("empty index sets")
    if rows[0] < 1 or rows[-1] > d or cols[0] < 1 or cols[-1] > n:
        raise ValueError("index out of range")
    if memo is None:
        memo = {}
    return _minor_rec(X, rows, cols, memo)


def _minor_rec(X: SymbolicMatrix, rows, cols, memo) -> Polynomial:
    key = (rows, cols)
    cached = memo.get(key)
    if cached is not None:
        return cached
    if len(rows) == 1:
        result = X.entry(rows[0], cols[0])
    else:
        i0, rest = rows[0], rows[1:]
        result = X.ring.zero()
        for t, j in enumerate(cols):
            e = X.entry(i0, j)
            if e.is_zero():
                continue
            sub = _minor_rec(X, rest, cols[:t] + cols[t + 1:], memo)
            term = e * sub
            result = result - term if t % 2 else result + term
    memo[key] = result
    return result


def all_minors(
    X: SymbolicMatrix,
    size: int,
    row_pool: Iterable[int] | None = None,
    col_pool: Iterable[int] | None = None,
    memo: MinorMemo | None = None,
) -> list[Polynomial]:
    """All size x size minors with rows/cols drawn from the given pools."""
    d, n = X.shape
    row_pool = tuple(sorted(row_pool)) if row_pool is not None else tuple(range(1, d + 1))
    col_pool = tuple(sorted(col_pool)) if col_pool is not None else tuple(range(1, n + 1))
    if memo is None:
        memo = {}
    out = []
    for rows in combinations(row_pool, size):
        for cols in combinations(col_pool, size):
            out.append(minor(X, rows, cols, memo))
    return out
