"""Truncated (q, z)-series: plethystic Exp, loop-algebra characters, PBW counts.

A GradedSeries stores integer coefficients on keys (q-exponent, z-key) where a
z-key lists the exponents of z_1..z_rank and z_delta.  Truncation is by the
q-exponent and by the z-grade

    zgrade(c_1..c_r, d) = c_1 + ... + c_r + d * (rank + 1),

the height of the corresponding root class (delta has height rank+1).  All
arithmetic silently drops terms beyond the bounds, which is consistent because
both gradings are additive and non-negative on every key that occurs.

Three independent routes to the graded dimension of the enveloping algebra of
the positive loop half are implemented:

  dimy_inner_series   sum of p_beta(q^2) q^{2 alpha} z^beta over loop roots,
                      with p the Kac-polynomial assignment from `roots`
  form4_series        the explicit three-summand dimension count of the
                      positive loop half itself
  pbw_dimension       brute-force multiset enumeration over the PBW basis
                      (root vectors e_beta^i sigma^alpha and central elements
                      c_{alpha,b} with alpha, b > 0)

graded_dimension_check compares Exp(dimy_inner) with Exp(form4) and with the
PBW count coefficient by coefficient.
"""

from __future__ import annotations

from math import comb
from typing import Mapping, NamedTuple, Sequence

from .exactalg import QVAR
from .roots import Root, kac_polynomial, loop_root_multiset

ZKey = tuple[int, ...]
SKey = tuple[int, ZKey]


def zgrade(zk: ZKey) -> int:
    return sum(zk[:-1]) + zk[-1] * len(zk)


def zkey_of(r: Root | Sequence[int], rank: int) -> ZKey:
    if isinstance(r, Root):
        key = (*r.coords, r.delta)
    else:
        key = tuple(int(c) for c in r)
    if len(key) != rank + 1:
        raise ValueError(f"z-key {key} does not match rank {rank}")
    return key


def _zkey_add(a: ZKey, b: ZKey) -> ZKey:
    return tuple(x + y for x, y in zip(a, b))


def _key_order(key: SKey) -> tuple:
    qe, zk = key
    return (zgrade(zk), qe, zk)


class GradedSeries:
    """Integer series in q and z_1..z_rank, z_delta, truncated by bounds."""

    __slots__ = ("rank", "qmax", "zmax", "terms")

    def __init__(self, rank: int, qmax: int, zmax: int,
                 terms: Mapping[SKey, int] | None = None):
        clean: dict[SKey, int] = {}
        if terms:
            for (qe, zk), c in terms.items():
                if not c:
                    continue
                zk = tuple(zk)
                if len(zk) != rank + 1:
                    raise ValueError(f"z-key {zk} does not match rank {rank}")
                if qe < 0:
                    raise ValueError("negative q-exponent in a graded series")
                if zgrade(zk) < 0:
                    raise ValueError("negative z-grade in a graded series")
                if qe > qmax or zgrade(zk) > zmax:
                    continue
                clean[(qe, zk)] = int(c)
        self.rank = rank
        self.qmax = qmax
        self.zmax = zmax
        self.terms = clean

    # -- constructors -----------------------------------------------------------

    @staticmethod
    def zero(rank: int, qmax: int, zmax: int) -> "GradedSeries":
        return GradedSeries(rank, qmax, zmax)

    @staticmethod
    def one(rank: int, qmax: int, zmax: int) -> "GradedSeries":
        return GradedSeries(rank, qmax, zmax, {(0, (0,) * (rank + 1)): 1})

    def zero_key(self) -> ZKey:
        return (0,) * (self.rank + 1)

    # -- access -------------------------------------------------------------------

    def coefficient(self, qe: int, zk: Root | Sequence[int]) -> int:
        return self.terms.get((qe, zkey_of(zk, self.rank)), 0)

    def constant_term(self) -> int:
        return self.terms.get((0, self.zero_key()), 0)

    def support(self) -> list[SKey]:
        return sorted(self.terms, key=_key_order)

    def _check_compatible(self, other: "GradedSeries") -> None:
        if (self.rank, self.qmax, self.zmax) != (other.rank, other.qmax, other.zmax):
            raise ValueError("graded series have different rank or bounds")

    # -- arithmetic -----------------------------------------------------------------

    def __add__(self, other: "GradedSeries") -> "GradedSeries":
        self._check_compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return GradedSeries(self.rank, self.qmax, self.zmax, out)

    def __sub__(self, other: "GradedSeries") -> "GradedSeries":
        return self + other.scale(-1)

    def scale(self, c: int) -> "GradedSeries":
        return GradedSeries(self.rank, self.qmax, self.zmax,
                            {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        self._check_compatible(other)
        out: dict[SKey, int] = {}
        for (q1, z1), c1 in self.terms.items():
            for (q2, z2), c2 in other.terms.items():
                qe = q1 + q2
                if qe > self.qmax:
                    continue
                zk = _zkey_add(z1, z2)
                if zgrade(zk) > self.zmax:
                    continue
                key = (qe, zk)
                out[key] = out.get(key, 0) + c1 * c2
        return GradedSeries(self.rank, self.qmax, self.zmax, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedSeries)
                and (self.rank, self.qmax, self.zmax)
                == (other.rank, other.qmax, other.zmax)
                and self.terms == other.terms)

    def __repr__(self) -> str:
        bits = []
        for (qe, zk) in self.support()[:8]:
            bits.append(f"{self.terms[(qe, zk)]}*q^{qe}*z^{zk}")
        more = "" if len(self.terms) <= 8 else f" ... ({len(self.terms)} terms)"
        return " + ".join(bits) + more if bits else "0"


# -- plethystic exponential -------------------------------------------------------


def _geometric_power(rank: int, qmax: int, zmax: int,
                     qe: int, zk: ZKey, a: int) -> GradedSeries:
    """(1 - q^qe z^zk)^(-a) truncated: the Exp factor of a single term."""
    g = zgrade(zk)
    if g == 0 and qe == 0:
        raise ValueError("constant-term factor in a plethystic exponential")
    terms = {}
    m = 0
    while (g == 0 or m * g <= zmax) and (qe == 0 or m * qe <= qmax):
        if a > 0:
            c = comb(a + m - 1, m)
        else:
            if m > -a:
                break
            c = (-1) ** m * comb(-a, m)
        terms[(m * qe, tuple(m * e for e in zk))] = c
        m += 1
    return GradedSeries(rank, qmax, zmax, terms)


def plethystic_exp(s: GradedSeries) -> GradedSeries:
    """Exp(sum a_k q^alpha z^beta) = prod (1 - q^alpha z^beta)^(-a_k)."""
    if s.constant_term():
        raise ValueError("plethystic Exp needs a zero constant term")
    out = GradedSeries.one(s.rank, s.qmax, s.zmax)
    for (qe, zk) in s.support():
        out = out * _geometric_power(s.rank, s.qmax, s.zmax, qe, zk, s.terms[(qe, zk)])
    return out


def plethystic_log(s: GradedSeries) -> GradedSeries:
    """Formal inverse of plethystic_exp, for round-trip testing."""
    if s.constant_term() != 1:
        raise ValueError("plethystic Log needs constant term 1")
    for (qe, zk) in s.terms:
        if zgrade(zk) == 0 and any(zk):
            raise ValueError("z-grade-0 keys with nonzero z are not supported")
    out = GradedSeries.zero(s.rank, s.qmax, s.zmax)
    exp = GradedSeries.one(s.rank, s.qmax, s.zmax)
    while True:
        diff = s - exp
        if not diff.terms:
            return out
        key = min(diff.terms, key=_key_order)
        out = out + GradedSeries(s.rank, s.qmax, s.zmax, {key: diff.terms[key]})
        exp = plethystic_exp(out)


# -- loop-algebra dimension series --------------------------------------------------


def dimy_inner_series(pos_roots: set[Root], rank: int,
                      qmax: int, zmax: int) -> GradedSeries:
    """sum over loop roots beta and alpha >= 0 of p_beta(q^2) q^{2 alpha} z^beta."""
    terms: dict[SKey, int] = {}
    for root, _ in loop_root_multiset(pos_roots, rank, zmax):
        zk = zkey_of(root, rank)
        if zgrade(zk) > zmax:
            continue
        p = kac_polynomial(root, rank)
        for mono, c in p.terms.items():
            # p_beta(q^2): a monomial q^e contributes at q-exponent 2e
            qbase = 2 * dict(mono).get(QVAR, 0)
            for alpha in range(0, (qmax - qbase) // 2 + 1):
                key = (qbase + 2 * alpha, zk)
                terms[key] = terms.get(key, 0) + int(c)
    return GradedSeries(rank, qmax, zmax, terms)


def form4_series(pos_roots: set[Root], rank: int,
                 qmax: int, zmax: int) -> GradedSeries:
    """The explicit three-summand graded dimension of the positive loop half:
    real classes beta+b*delta contribute q^{2 alpha}; the pure-imaginary
    classes (b+1)*delta contribute (q^2 + rank) q^{2 alpha}."""
    terms: dict[SKey, int] = {}

    def bump(qe: int, zk: ZKey, c: int) -> None:
        if qe <= qmax and zgrade(zk) <= zmax:
            terms[(qe, zk)] = terms.get((qe, zk), 0) + c

    alphas = range(0, qmax // 2 + 1)
    for r in sorted(pos_roots):
        for b in range(0, zmax + 1):
            zk = zkey_of(Root(r.coords, b), rank)
            if zgrade(zk) > zmax:
                break
            for a in alphas:
                bump(2 * a, zk, 1)
    for r in sorted(pos_roots):
        neg = tuple(-c for c in r.coords)
        for b in range(0, zmax + 1):
            zk = zkey_of(Root(neg, b + 1), rank)
            if zgrade(zk) > zmax:
                break
            for a in alphas:
                bump(2 * a, zk, 1)
    for b in range(0, zmax + 1):
        zk = zkey_of(Root((0,) * rank, b + 1), rank)
        if zgrade(zk) > zmax:
            break
        for a in alphas:
            bump(2 * a + 2, zk, 1)
            bump(2 * a, zk, rank)
    return GradedSeries(rank, qmax, zmax, terms)


# -- PBW enumeration ------------------------------------------------------------------


class PBWBasisElement(NamedTuple):
    kind: str        # "root" or "central"
    root: Root       # the horizontal degree: beta + b*delta, or b*delta
    alpha: int       # sigma power; q-degree is 2*alpha
    index: int = 0   # basis index inside the root space

    def bidegree(self, rank: int) -> SKey:
        return (2 * self.alpha, zkey_of(self.root, rank))


def pbw_basis(pos_roots: set[Root], rank: int, qmax: int, zmax: int,
              cap: int = 200000) -> list[PBWBasisElement]:
    """All PBW basis elements with bidegree within the bounds: root vectors
    e_beta^i sigma^alpha over the loop roots (dim 1 real, dim rank imaginary)
    and centrals c_{alpha,b} with alpha, b > 0 at (2 alpha, b*delta)."""
    items: list[PBWBasisElement] = []
    alphas = range(0, qmax // 2 + 1)
    for root, _ in loop_root_multiset(pos_roots, rank, zmax):
        if zgrade(zkey_of(root, rank)) > zmax:
            continue
        dim = rank if root.is_imaginary() else 1
        for alpha in alphas:
            for i in range(dim):
                items.append(PBWBasisElement("root", root, alpha, i))
    zero = (0,) * rank
    for b in range(1, zmax + 1):
        root = Root(zero, b)
        if zgrade(zkey_of(root, rank)) > zmax:
            break
        for alpha in range(1, qmax // 2 + 1):
            items.append(PBWBasisElement("central", root, alpha))
    if len(items) > cap:
        raise ValueError(f"PBW enumeration needs {len(items)} items, cap is {cap}")
    return items


def _pbw_table(items: Sequence[PBWBasisElement], rank: int,
               qmax: int, zmax: int) -> dict[SKey, int]:
    """Multiset counts: process one basis element at a time, adding all of its
    multiplicities to every state reached so far (unbounded knapsack)."""
    dp: dict[SKey, int] = {(0, (0,) * (rank + 1)): 1}
    for item in items:
        qe, zk = item.bidegree(rank)
        out: dict[SKey, int] = {}
        for (q0, z0), c in dp.items():
            q1, z1 = q0, z0
            while q1 <= qmax and zgrade(z1) <= zmax:
                key = (q1, z1)
                out[key] = out.get(key, 0) + c
                q1 += qe
                z1 = _zkey_add(z1, zk)
                if qe == 0 and zgrade(zk) == 0:
                    break
        dp = out
    return dp


def pbw_dimension(pos_roots: set[Root], rank: int, q_exp: int,
                  z: Root | Sequence[int], cap: int = 200000) -> int:
    """Coefficient of q^{q_exp} z^z in the PBW count, by direct enumeration."""
    zk = zkey_of(z, rank)
    items = pbw_basis(pos_roots, rank, q_exp, zgrade(zk), cap)
    table = _pbw_table(items, rank, q_exp, zgrade(zk))
    return table.get((q_exp, zk), 0)


# -- the three-way comparison -----------------------------------------------------------


def dimension_table(pos_roots: set[Root], rank: int,
                    qmax: int, zmax: int,
                    cap: int = 200000,
                    form4_roots: set[Root] | None = None
                    ) -> tuple[list[dict], int]:
    """Rows {q, z, exp_kac, exp_form4, pbw, agree} for every nonzero key,
    ordered by (z-grade, q-exponent, z-key), plus the basis item count.

    The Kac-polynomial and PBW routes consume pos_roots as given; the
    closed-form route uses form4_roots when provided, so a caller can pin
    it to the reference root list while perturbing the other two.
    """
    inner = dimy_inner_series(pos_roots, rank, qmax, zmax)
    via_kac = plethystic_exp(inner)
    via_form4 = plethystic_exp(form4_series(
        pos_roots if form4_roots is None else form4_roots, rank, qmax, zmax))
    items = pbw_basis(pos_roots, rank, qmax, zmax, cap)
    table = _pbw_table(items, rank, qmax, zmax)
    keys = sorted(set(via_kac.terms) | set(via_form4.terms) | set(table), key=_key_order)
    rows = []
    for qe, zk in keys:
        a = via_kac.terms.get((qe, zk), 0)
        b = via_form4.terms.get((qe, zk), 0)
        c = table.get((qe, zk), 0)
        rows.append({"q": qe, "z": list(zk), "exp_kac": a, "exp_form4": b,
                     "pbw": c, "agree": a == b == c})
    return rows, len(items)


def graded_dimension_check(pos_roots: set[Root], rank: int,
                           qmax: int, zmax: int,
                           cap: int = 200000,
                           form4_roots: set[Root] | None = None) -> dict:
    """Compare Exp(Kac route) == Exp(form4 route) == PBW count within bounds."""
    rows, n_items = dimension_table(pos_roots, rank, qmax, zmax, cap, form4_roots)
    mismatches = [{k: v for k, v in row.items() if k != "agree"}
                  for row in rows if not row["agree"]]
    return {
        "rank": rank,
        "qmax": qmax,
        "zmax": zmax,
        "coefficients_checked": len(rows),
        "basis_items": n_items,
        "agree": not mismatches,
        "mismatches": mismatches,
    }
