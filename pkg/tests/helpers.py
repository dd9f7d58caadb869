"""Independent oracles used by the test suite.

These deliberately re-derive answers by routes different from the library:
permutation-sum determinants, minor-search ranks, and a naive textbook
Groebner routine with none of the library's selection strategy or criteria.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations

from cigrid.poly import DEGREVLEX, Polynomial, SymbolicMatrix


def perm_sign(perm: tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


def perm_minor(X: SymbolicMatrix, rows, cols) -> Polynomial:
    """Leibniz expansion of the (rows, cols) minor, fully independent of the
    library's Laplace recursion."""
    rows = sorted(rows)
    cols = sorted(cols)
    total = X.ring.zero()
    for perm in permutations(range(len(cols))):
        term = X.ring.const(perm_sign(perm))
        for r, p in zip(rows, perm):
            term = term * X.entry(r, cols[p])
        total = total + term
    return total


def det_by_permutations(m) -> Fraction:
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        prod = Fraction(perm_sign(perm))
        for i, p in enumerate(perm):
            prod *= m[i][p]
        total += prod
    return total


def rank_by_minors(m) -> int:
    """Largest r such that some r x r submatrix has nonzero determinant."""
    if not m or not m[0]:
        return 0
    nrows, ncols = len(m), len(m[0])
    for r in range(min(nrows, ncols), 0, -1):
        for rows in combinations(range(nrows), r):
            for cols in combinations(range(ncols), r):
                sub = [[m[i][j] for j in cols] for i in rows]
                if det_by_permutations(sub) != 0:
                    return r
    return 0


def naive_division(f: Polynomial, divisors, order=DEGREVLEX) -> Polynomial:
    """Textbook multivariate division, written without reusing the library's
    reducer internals."""
    rem = f.ring.zero()
    p = f
    while not p.is_zero():
        m, c = p.leading(order)
        reduced = False
        for g in divisors:
            gm, gc = g.leading(order)
            if all(a <= b for a, b in zip(gm, m)):
                quot_mono = tuple(b - a for a, b in zip(gm, m))
                q = Polynomial(f.ring, {quot_mono: c / gc})
                p = p - q * g
                reduced = True
                break
        if not reduced:
            head = Polynomial(f.ring, {m: c})
            rem = rem + head
            p = p - head
    return rem


def naive_s_poly(f: Polynomial, g: Polynomial, order=DEGREVLEX) -> Polynomial:
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    l = tuple(max(a, b) for a, b in zip(fm, gm))
    qf = Polynomial(f.ring, {tuple(b - a for a, b in zip(fm, l)): 1 / fc})
    qg = Polynomial(f.ring, {tuple(b - a for a, b in zip(gm, l)): 1 / gc})
    return qf * f - qg * g


def naive_groebner(gens, order=DEGREVLEX, cap: int = 200):
    """Unoptimized Buchberger: no criteria, first-come pair processing."""
    basis = [g for g in gens if not g.is_zero()]
    queue = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    steps = 0
    while queue:
        steps += 1
        if steps > cap:
            raise RuntimeError("oracle cap exceeded")
        i, j = queue.pop(0)
        r = naive_division(naive_s_poly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            basis.append(r)
            k = len(basis) - 1
            queue.extend((i2, k) for i2 in range(k))
    return basis


def random_polynomial(rng: random.Random, ring, max_terms=4, max_exp=3, bound=20) -> Polynomial:
    terms = {}
    width = len(ring.variables)
    for _ in range(rng.randint(0, max_terms)):
        mono = tuple(rng.randint(0, max_exp) if rng.random() < 0.5 else 0 for _ in range(width))
        coeff = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if coeff:
            terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Polynomial(ring, {m: c for m, c in terms.items() if c})
