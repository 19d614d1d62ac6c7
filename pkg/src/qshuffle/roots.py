"""Root systems of small simply-laced type and the loop-root set.

Roots are integer coordinate vectors over the simple roots, plus a
delta-coefficient for loop (affine) roots.  The loop-root set attached to a
finite root system is

    (Delta_+ + N delta)  u  (Delta_- + Z_{>0} delta)  u  (Z_{>0} delta)

and is enumerated here truncated by the delta-coefficient.  Real classes
carry Kac polynomial 1; the pure-imaginary classes n*delta all carry q + rank
(the unique value making the plethystic dimension formula reproduce the
explicit four-term character sum; the characters module tests that match
rather than assuming it).
"""

from __future__ import annotations

from typing import NamedTuple, Sequence

from .exactalg import LaurentPoly, QVAR


class Root(NamedTuple):
    coords: tuple[int, ...]
    delta: int = 0

    def is_imaginary(self) -> bool:
        return all(c == 0 for c in self.coords)

    def height(self) -> int:
        return sum(self.coords)


Matrix = Sequence[Sequence[int]]


def _check_cartan(cartan: Matrix) -> int:
    n = len(cartan)
    for row in cartan:
        if len(row) != n:
            raise ValueError("Cartan matrix must be square")
    for i in range(n):
        if cartan[i][i] != 2:
            raise ValueError("Cartan diagonal must be 2")
        for j in range(n):
            if cartan[i][j] != cartan[j][i]:
                raise ValueError("only symmetric Cartan matrices are supported")
            if i != j and cartan[i][j] > 0:
                raise ValueError("off-diagonal Cartan entries must be <= 0")
    return n


def positive_roots(cartan: Matrix, height_bound: int = 12) -> set[Root]:
    """Positive roots of a symmetric finite-type Cartan matrix, by closing the
    simple roots under reflections and keeping the non-negative ones, up to
    the given height."""
    n = _check_cartan(cartan)
    simple = [Root(tuple(1 if k == i else 0 for k in range(n))) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for k in range(n):
                pairing = sum(r.coords[j] * cartan[k][j] for j in range(n))
                coords = tuple(
                    c - pairing * (1 if j == k else 0) for j, c in enumerate(r.coords)
                )
                s = Root(coords)
                if s in found or any(c < 0 for c in s.coords):
                    continue
                if s.height() > height_bound:
                    continue
                found.add(s)
                nxt.append(s)
        frontier = nxt
    return found


def loop_root_multiset(
    finite_positive_roots: set[Root], rank: int, z_bound: int
) -> list[tuple[Root, int]]:
    """Loop roots with delta-coefficient <= z_bound, each with weight 1.

    Positive classes appear with delta in 0..z_bound, negative classes and the
    pure-imaginary ones with delta in 1..z_bound.
    """
    if z_bound < 0:
        raise ValueError("z_bound must be >= 0")
    out: list[tuple[Root, int]] = []
    for r in sorted(finite_positive_roots):
        for b in range(z_bound + 1):
            out.append((Root(r.coords, b), 1))
    for r in sorted(finite_positive_roots):
        neg = tuple(-c for c in r.coords)
        for b in range(1, z_bound + 1):
            out.append((Root(neg, b), 1))
    zero = tuple(0 for _ in range(rank))
    for b in range(1, z_bound + 1):
        out.append((Root(zero, b), 1))
    return out


def kac_polynomial(r: Root, rank: int) -> LaurentPoly:
    """1 on real classes, q + rank on the pure-imaginary classes n*delta."""
    if r.is_imaginary():
        if r.delta <= 0:
            raise ValueError(f"{r} is not a loop root")
        return LaurentPoly.term(1, [(QVAR, 1)]) + LaurentPoly.const(rank)
    pos = all(c >= 0 for c in r.coords)
    neg = all(c <= 0 for c in r.coords)
    if not (pos or neg):
        raise ValueError(f"{r} is not a loop root")
    return LaurentPoly.const(1)
