"""Ideals, a budgeted Buchberger engine, normal forms, and elimination.

The Groebner machinery is deliberately small: it targets ideals in at most a
couple dozen variables with short generator lists.  Budgets (maximum S-pairs
processed, maximum degree touched) are hard limits; exceeding one raises
`BudgetExceeded` rather than returning anything partial.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .poly import DEGREVLEX, MonomialOrder, PolyRing, Polynomial, Var, normalize_sign

DEFAULT_MAX_PAIRS = 4000
DEFAULT_MAX_DEGREE = 24


class BudgetExceeded(RuntimeError):
    """A Groebner computation hit its step or degree budget."""


@dataclass(frozen=True)
class Ideal:
    """Generators over a ring, with an optional cached Groebner basis."""

    ring: PolyRing
    generators: tuple[Polynomial, ...]
    basis: tuple[Polynomial, ...] | None = None
    basis_order: MonomialOrder | None = None

    def __post_init__(self):
        for g in self.generators:
            if g.ring != self.ring:
                raise ValueError("generator outside the ideal's ring")

    @staticmethod
    def of(ring: PolyRing, generators: Iterable[Polynomial]) -> "Ideal":
        return Ideal(ring, tuple(g for g in generators if not g.is_zero()))

    def generator_texts(self, order: MonomialOrder = DEGREVLEX) -> list[str]:
        return [g.to_text(order) for g in self.generators]

    def sign_normalized_set(self, order: MonomialOrder = DEGREVLEX) -> frozenset[Polynomial]:
        return frozenset(normalize_sign(g, order) for g in self.generators if not g.is_zero())


def _divides(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


def _mono_div(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(max(x, y) for x, y in zip(a, b))


def _term_times(f: Polynomial, mono: tuple[int, ...], coeff: Fraction) -> Polynomial:
    return Polynomial(f.ring, {_mono_mul(m, mono): c * coeff for m, c in f.terms.items()})


def reduce_poly(f: Polynomial, basis: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Fully reduced remainder of f modulo the basis (multivariate division)."""
    if not basis:
        return f
    lts = [g.leading(order) for g in basis]
    remainder: dict[tuple[int, ...], Fraction] = {}
    work = f
    while not work.is_zero():
        m, c = work.leading(order)
        for g, (gm, gc) in zip(basis, lts):
            if _divides(gm, m):
                work = work - _term_times(g, _mono_div(m, gm), c / gc)
                break
        else:
            remainder[m] = c
            work = Polynomial(work.ring, {k: v for k, v in work.terms.items() if k != m})
    return Polynomial(f.ring, remainder)


def _s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    fm, fc = f.leading(order)
    gm, gc = g.leading(order)
    l = _mono_lcm(fm, gm)
    return _term_times(f, _mono_div(l, fm), 1 / fc) - _term_times(g, _mono_div(l, gm), 1 / gc)


def buchberger(
    ideal: Ideal,
    order: MonomialOrder = DEGREVLEX,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> Ideal:
    """Return the ideal with a cached reduced Groebner basis.

    Deterministic given the order and the generator sequence: pairs are
    processed in normal-selection order with index tie-breaks.  Budgets are
    hard errors, never silent truncation.
    """
    gens = [g for g in ideal.generators if not g.is_zero()]
    for g in gens:
        if g.total_degree() > max_degree:
            raise BudgetExceeded(f"generator degree {g.total_degree()} exceeds budget {max_degree}")
    basis: list[Polynomial] = []
    for g in gens:
        _, c = g.leading(order)
        basis.append(g.scale(1 / c))

    pairs = {(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))}
    processed = 0
    while pairs:
        # normal selection: smallest lcm under the order, then smallest indices
        def pair_key(p):
            i, j = p
            l = _mono_lcm(basis[i].leading(order)[0], basis[j].leading(order)[0])
            return (order.key(l), i, j)

        i, j = min(pairs, key=pair_key)
        pairs.discard((i, j))
        fm = basis[i].leading(order)[0]
        gm = basis[j].leading(order)[0]
        l = _mono_lcm(fm, gm)
        if l == _mono_mul(fm, gm):  # coprime leading monomials: S-pair reduces to 0
            continue
        if sum(l) > max_degree:
            raise BudgetExceeded(f"S-pair degree {sum(l)} exceeds budget {max_degree}")
        processed += 1
        if processed > max_pairs:
            raise BudgetExceeded(f"S-pair budget {max_pairs} exhausted")
        r = reduce_poly(_s_polynomial(basis[i], basis[j], order), basis, order)
        if r.is_zero():
            continue
        if r.total_degree() > max_degree:
            raise BudgetExceeded(f"basis degree {r.total_degree()} exceeds budget {max_degree}")
        _, c = r.leading(order)
        basis.append(r.scale(1 / c))
        k = len(basis) - 1
        pairs.update((i2, k) for i2 in range(k))

    reduced = _interreduce(basis, order)
    return Ideal(ideal.ring, ideal.generators, tuple(reduced), order)


def _interreduce(basis: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    # minimalize: walk in ascending leading-term order, drop anything whose
    # leading monomial an already-kept element divides (divisors sort first)
    basis = sorted((g for g in basis if not g.is_zero()), key=lambda g: order.key(g.leading(order)[0]))
    kept: list[Polynomial] = []
    for g in basis:
        gm = g.leading(order)[0]
        if any(_divides(h.leading(order)[0], gm) for h in kept):
            continue
        kept.append(g)
    # fully reduce each survivor against the others
    out: list[Polynomial] = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1:]
        r = reduce_poly(g, others, order) if others else g
        if not r.is_zero():
            _, c = r.leading(order)
            out.append(r.scale(1 / c))
    out.sort(key=lambda g: order.key(g.leading(order)[0]))
    return out


def normal_form(f: Polynomial, ideal: Ideal) -> Polynomial:
    """Fully reduced remainder; zero exactly when f lies in the ideal."""
    if ideal.basis is None or ideal.basis_order is None:
        raise ValueError("ideal has no cached Groebner basis; run buchberger first")
    if f.ring != ideal.ring:
        raise ValueError("polynomial outside the ideal's ring")
    return reduce_poly(f, ideal.basis, ideal.basis_order)


def contains(ideal: Ideal, f: Polynomial) -> bool:
    return normal_form(f, ideal).is_zero()


def eliminate(
    ideal: Ideal,
    kill: Iterable[Var],
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> Ideal:
    """Generators of the ideal's intersection with the subring that omits
    `kill`, computed via a block elimination order."""
    kill = set(kill)
    order = ideal.ring.elimination_order(kill)
    gb = buchberger(ideal, order, max_pairs=max_pairs, max_degree=max_degree)
    keep = [v for v in ideal.ring.variables if v not in kill]
    small = PolyRing.of(keep) if keep else PolyRing(())
    out = []
    for g in gb.basis or ():
        if all(v not in kill for v in g.support()):
            out.append(g.transfer(small))
    return Ideal.of(small, out)


def intersect(
    a: Ideal,
    b: Ideal,
    max_pairs: int = DEFAULT_MAX_PAIRS,
    max_degree: int = DEFAULT_MAX_DEGREE,
) -> Ideal:
    """Ideal intersection via the auxiliary-variable trick:
    (t*a + (1-t)*b) with t eliminated."""
    if a.ring != b.ring:
        raise ValueError("ideals live in different rings")
    t = Var("t")
    if t in a.ring.variables:
        t = Var("tt")
        if t in a.ring.variables:
            raise ValueError("no free auxiliary variable name available")
    big = a.ring.extend([t])
    tp = big.var(t)
    gens = [tp * g.transfer(big) for g in a.generators]
    gens += [(big.one() - tp) * g.transfer(big) for g in b.generators]
    return eliminate(Ideal.of(big, gens), {t}, max_pairs=max_pairs, max_degree=max_degree)


def ideal_to_text(ideal: Ideal, order: MonomialOrder = DEGREVLEX) -> str:
    """One generator per line."""
    return "\n".join(g.to_text(order) for g in ideal.generators) + ("\n" if ideal.generators else "")


def ideal_to_cas(ideal: Ideal, order: MonomialOrder = DEGREVLEX, name: str = "I") -> str:
    """A neutral computer-algebra script: ring declaration plus the ideal."""
    vars_txt = ", ".join(str(v) for v in ideal.ring.variables)
    lines = [f"ring R = QQ[{vars_txt}];", f"order {order};", f"ideal {name} ="]
    if ideal.generators:
        body = ",\n".join(f"  {g.to_text(order)}" for g in ideal.generators)
        lines.append(body + ";")
    else:
        lines.append("  0;")
    return "\n".join(lines) + "\n"
