#!/usr/bin/env python3
"""Signatures of three twelve-point, four-line plane configurations.

The three configurations differ in how the four lines meet: no common point,
exactly three concurrent lines, or all four concurrent.  Their signatures
(line sizes plus the degrees of points on several lines) come out pairwise
distinct, so the coarse invariant separates at least these types.
"""

from fractions import Fraction

from cigrid.matroid import arrangement_signature


def homogenize(points):
    return [
        [Fraction(p[0]) for p in points],
        [Fraction(p[1]) for p in points],
        [Fraction(1) for _ in points],
    ]


# four lines in general position: x=0, y=0, x+y=3, x-y=1;
# the six pairwise intersections plus six further points on the lines
GENERIC = [
    (0, 0), (0, 3), (0, -1), (3, 0), (1, 0), (2, 1),
    (0, 5), (0, 7), (6, 0), (11, 0), (-1, 4), (4, 3),
]

# three lines through the origin (directions e1, e2, e1+e2) plus x+y=5
THREE_CONCURRENT = [
    (0, 0), (5, 0), (0, 5), (Fraction(5, 2), Fraction(5, 2)),
    (13, 0), (7, 0), (0, 13), (0, 7), (1, 1), (7, 7), (11, -6), (9, -4),
]

# four lines through the origin (directions e1, e2, e1+e2, e1-e2)
ALL_CONCURRENT = [
    (0, 0),
    (7, 0), (3, 0), (11, 0),
    (0, 3), (0, 9), (0, 2),
    (9, 9), (2, 2), (3, 3),
    (2, -2), (1, -1),
]


def main() -> int:
    signatures = {}
    for name, points in [
        ("no common point", GENERIC),
        ("three lines concurrent", THREE_CONCURRENT),
        ("all four lines concurrent", ALL_CONCURRENT),
    ]:
        sig = arrangement_signature(homogenize(points))
        signatures[name] = sig
        print(f"{name:28s} {sig.to_text()}")
        assert sig.lines == 4, f"{name}: expected exactly four detected lines"

    rendered = [s.to_text() for s in signatures.values()]
    distinct = len(set(rendered)) == len(rendered)
    print(f"\nall signatures pairwise distinct: {distinct}")
    return 0 if distinct else 1


if __name__ == "__main__":
    raise SystemExit(main())
