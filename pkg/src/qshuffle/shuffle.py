"""Shuffle algebras over a quiver: kernels, symmetrization, products.

An element of degree beta (a dimension vector) is a rational function of the
slot variables x_{i,s}, 1 <= s <= beta_i, symmetric in each vertex's slots.
The product of f (degree alpha) and g (degree gamma) relabels g into the high
slots a_i+1..b_i (b = alpha + gamma), multiplies by a kernel, and sums over
the per-vertex (a_i, c_i)-shuffles, e.g. over the single vertex i,

    e_{i,0} * e_{i,0}
        = (q^-2 x_1 - x_2)/(x_1 - x_2) + (q^-2 x_2 - x_1)/(x_2 - x_1)
        = 1 + q^-2

under the 'bullet' kernel.  Kernels are kept in factored form; sums are
assembled over a factored common denominator, so no polynomial gcd is ever
needed.

Kernel kinds, with r always ranging over one block of slots at the arrow
source and s over a block at the target:

  bullet  prod_{i<j} (q^{-a_ij}x_{i,r}-x_{j,s})/(x_{i,r}-q^{-a_ij}x_{j,s})
          over r low, s high, times prod_i (q^-2 x_r - x_s)/(x_r - x_s).
  star    prod_{h: i->j} (1 - x_{i,r}/q_h t_h x_{j,s}) with r high at the
          source, s low at the target (every arrow, loops included), times
          prod_i (1 - x_high/x_low)^{-1}.
  diamond prod over original arrows h: i->j (partner h') of
          (q_{h'}x_{i,r} - t_{h'}^{-1}x_{j,s})/(x_{i,r} - q_h t_h x_{j,s})
          with r low, s high, times the bullet diagonal.
  circ    prod over doubled arrows, 1/(1 - q_h x_{j,s}/x_{i,r}) when the
          source precedes the target and 1/(1 - x_{i,r}/q_h x_{j,s})
          otherwise (r low at the source, s high at the target, q-weights
          only), times the bullet diagonal.
  super   per up-arrow h: i->j the factor
          (-1)^{|i||j|}(q^{a_ij}x_{i,r} - t^{m_ij}x_{j,s})
              /(x_{i,r} - q^{a_ij}t^{m_ij}x_{j,s})
          with r high at i, s low at j; per even vertex
          (x_{i,r} - q^{2s_i}x_{i,s})/(x_{i,r} - x_{i,s}) and per odd vertex
          1/(x_{i,r} - x_{i,s}), r low, s high.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product as iproduct
from typing import Iterable, Mapping, Sequence

from .exactalg import (
    FactoredProduct,
    LaurentPoly,
    QVAR,
    RationalFunction,
    TVAR,
    Var,
    as_rational,
    exact_poly_divide,
    poly_var,
    rf_equal,
    xvar,
)
from .quiver import (
    CartanData,
    Quiver,
    WeightFunction,
    kac_moody_cartan,
    validate_weight_function,
)

KERNEL_KINDS = ("bullet", "star", "diamond", "circ", "super")

Degree = tuple[tuple[str, int], ...]


def freeze_degree(d: Mapping[str, int] | Degree) -> Degree:
    if isinstance(d, tuple):
        return d
    items = []
    for v, c in d.items():
        if c < 0:
            raise ValueError("negative degree entry")
        if c:
            items.append((str(v), int(c)))
    return tuple(sorted(items))


def degree_dict(d: Mapping[str, int] | Degree) -> dict[str, int]:
    if isinstance(d, tuple):
        return {v: c for v, c in d}
    return {v: c for v, c in d.items() if c}


def degree_add(a: Mapping[str, int] | Degree, b: Mapping[str, int] | Degree) -> Degree:
    out = degree_dict(a)
    for v, c in degree_dict(b).items():
        out[v] = out.get(v, 0) + c
    return freeze_degree(out)


def _x(i: str, s: int) -> LaurentPoly:
    return poly_var(xvar(i, s))


def _qt(qe: int, te: int, extra: Iterable[tuple[Var, int]] = ()) -> LaurentPoly:
    return LaurentPoly.term(1, [(QVAR, qe), (TVAR, te), *extra])


# -- kernels -------------------------------------------------------------------


@dataclass(frozen=True)
class Kernel:
    kind: str
    quiver: Quiver
    wf: WeightFunction | None
    alpha: Degree
    gamma: Degree
    value: FactoredProduct


def _blocks(alpha: dict, gamma: dict, i: str) -> tuple[range, range]:
    """(low slots, high slots) of vertex i for the pair (alpha, gamma)."""
    a = alpha.get(i, 0)
    b = a + gamma.get(i, 0)
    return range(1, a + 1), range(a + 1, b + 1)


def _bullet_diagonal(vertices, alpha, gamma) -> list[tuple[LaurentPoly, int]]:
    fac = []
    for i in vertices:
        low, high = _blocks(alpha, gamma, i)
        for r in low:
            for s in high:
                fac.append((_qt(-2, 0, [(xvar(i, r), 1)]) - _x(i, s), 1))
                fac.append((_x(i, r) - _x(i, s), -1))
    return fac


def _kernel_bullet(quiver, cartan, alpha, gamma) -> list[tuple[LaurentPoly, int]]:
    fac = []
    vs = quiver.vertices
    for ii, i in enumerate(vs):
        for j in vs[ii + 1:]:
            aij = cartan.a_of(i, j)
            if aij == 0:
                continue
            low_i, _ = _blocks(alpha, gamma, i)
            _, high_j = _blocks(alpha, gamma, j)
            for r in low_i:
                for s in high_j:
                    fac.append((_qt(-aij, 0, [(xvar(i, r), 1)]) - _x(j, s), 1))
                    fac.append((_x(i, r) - _qt(-aij, 0, [(xvar(j, s), 1)]), -1))
    fac += _bullet_diagonal(vs, alpha, gamma)
    return fac


def _kernel_star(quiver, wf, alpha, gamma) -> list[tuple[LaurentPoly, int]]:
    fac = []
    for h in quiver.arrows:
        i, j = h.src, h.tgt
        qe, te = wf.q_of(h.name), wf.t_of(h.name)
        _, high_i = _blocks(alpha, gamma, i)
        low_j, _ = _blocks(alpha, gamma, j)
        for r in high_i:
            for s in low_j:
                # 1 - x_{i,r}/(q_h t_h x_{j,s})
                fac.append((_qt(qe, te, [(xvar(j, s), 1)]) - _x(i, r), 1))
                fac.append((_qt(qe, te, [(xvar(j, s), 1)]), -1))
    for i in quiver.vertices:
        low, high = _blocks(alpha, gamma, i)
        for s in low:
            for r in high:
                # (1 - x_{i,r}/x_{i,s})^{-1}
                fac.append((_x(i, s) - _x(i, r), -1))
                fac.append((_x(i, s), 1))
    return fac


def _kernel_diamond(quiver, wf, alpha, gamma) -> list[tuple[LaurentPoly, int]]:
    partner = quiver.partner()
    fac = []
    for h in quiver.original_arrows():
        if h.is_loop():
            continue
        i, j = h.src, h.tgt
        hp = partner[h.name]
        qe, te = wf.q_of(h.name), wf.t_of(h.name)
        qep, tep = wf.q_of(hp), wf.t_of(hp)
        low_i, _ = _blocks(alpha, gamma, i)
        _, high_j = _blocks(alpha, gamma, j)
        for r in low_i:
            for s in high_j:
                num = _qt(qep, 0, [(xvar(i, r), 1)]) - _qt(0, -tep, [(xvar(j, s), 1)])
                den = _x(i, r) - _qt(qe, te, [(xvar(j, s), 1)])
                fac.append((num, 1))
                fac.append((den, -1))
    fac += _bullet_diagonal(quiver.vertices, alpha, gamma)
    return fac


def _kernel_circ(quiver, wf, alpha, gamma) -> list[tuple[LaurentPoly, int]]:
    fac = []
    for h in quiver.arrows:
        if h.is_loop():
            continue
        i, j = h.src, h.tgt
        qe = wf.q_of(h.name)
        low_i, _ = _blocks(alpha, gamma, i)
        _, high_j = _blocks(alpha, gamma, j)
        up = quiver.index(i) < quiver.index(j)
        for r in low_i:
            for s in high_j:
                if up:
                    # 1/(1 - q_h x_{j,s}/x_{i,r})
                    fac.append((_x(i, r) - _qt(qe, 0, [(xvar(j, s), 1)]), -1))
                    fac.append((_x(i, r), 1))
                else:
                    # 1/(1 - x_{i,r}/(q_h x_{j,s}))
                    fac.append((_qt(qe, 0, [(xvar(j, s), 1)]) - _x(i, r), -1))
                    fac.append((_qt(qe, 0, [(xvar(j, s), 1)]), 1))
    fac += _bullet_diagonal(quiver.vertices, alpha, gamma)
    return fac


def _kernel_super(quiver, cartan, alpha, gamma) -> list[tuple[LaurentPoly, int]]:
    fac = []
    for h in quiver.arrows:
        if h.is_loop():
            continue
        i, j = h.src, h.tgt
        if quiver.index(i) >= quiver.index(j):
            continue
        aij = cartan.a_of(i, j)
        mij = cartan.m_of(i, j)
        sign = -1 if quiver.parity(i) and quiver.parity(j) else 1
        _, high_i = _blocks(alpha, gamma, i)
        low_j, _ = _blocks(alpha, gamma, j)
        for r in high_i:
            for s in low_j:
                num = _qt(aij, 0, [(xvar(i, r), 1)]) - _qt(0, mij, [(xvar(j, s), 1)])
                den = _x(i, r) - _qt(aij, mij, [(xvar(j, s), 1)])
                fac.append((num.scale(sign), 1))
                fac.append((den, -1))
    for i in quiver.vertices:
        low, high = _blocks(alpha, gamma, i)
        if quiver.parity(i):
            for r in low:
                for s in high:
                    fac.append((_x(i, r) - _x(i, s), -1))
        else:
            si = cartan.a_of(i, i) // 2
            for r in low:
                for s in high:
                    fac.append((_x(i, r) - _qt(2 * si, 0, [(xvar(i, s), 1)]), 1))
                    fac.append((_x(i, r) - _x(i, s), -1))
    return fac


def _require_homogeneous(quiver: Quiver, wf: WeightFunction | None, kind: str) -> None:
    if wf is None:
        raise ValueError(f"kernel kind {kind!r} needs a weight function")
    if not validate_weight_function(quiver, wf)["homogeneous"]:
        raise ValueError(f"kernel kind {kind!r} needs a homogeneous weight function")


def super_cartan_from_weights(quiver: Quiver, wf: WeightFunction) -> CartanData:
    """Recover (a, m) from a super quiver's arrow weights: the arrow h going up
    the vertex order between adjacent vertices carries q_h = q^{-a_ij},
    t_h = t^{m_ij}, and an even vertex's loop carries q^{-a_ii}."""
    vs = quiver.vertices
    n = len(vs)
    a = [[0] * n for _ in range(n)]
    m = [[0] * n for _ in range(n)]
    for h in quiver.arrows:
        i, j = quiver.index(h.src), quiver.index(h.tgt)
        if i == j:
            a[i][i] = -wf.q_of(h.name)
        elif i < j:
            a[i][j] = a[j][i] = -wf.q_of(h.name)
            m[i][j] = wf.t_of(h.name)
            m[j][i] = -wf.t_of(h.name)
    return CartanData(vs, tuple(map(tuple, a)), tuple(map(tuple, m)))


def build_kernel(kind: str, quiver: Quiver, wf: WeightFunction | None,
                 alpha: Mapping[str, int] | Degree, gamma: Mapping[str, int] | Degree,
                 cartan: CartanData | None = None) -> Kernel:
    a = degree_dict(alpha)
    g = degree_dict(gamma)
    for v in (*a, *g):
        if v not in quiver.vertices:
            raise ValueError(f"degree uses undeclared vertex {v}")
    if kind == "bullet":
        cartan = cartan or kac_moody_cartan(quiver)
        fac = _kernel_bullet(quiver, cartan, a, g)
    elif kind == "star":
        if wf is None:
            raise ValueError("kernel kind 'star' needs a weight function")
        fac = _kernel_star(quiver, wf, a, g)
    elif kind == "diamond":
        _require_homogeneous(quiver, wf, kind)
        fac = _kernel_diamond(quiver, wf, a, g)
    elif kind == "circ":
        _require_homogeneous(quiver, wf, kind)
        fac = _kernel_circ(quiver, wf, a, g)
    elif kind == "super":
        if not quiver.parities:
            raise ValueError("kernel kind 'super' needs vertex parities")
        if cartan is None:
            if wf is None and quiver.arrows:
                raise ValueError("kernel kind 'super' needs a weight function or Cartan data")
            cartan = super_cartan_from_weights(quiver, wf)
        fac = _kernel_super(quiver, cartan, a, g)
    else:
        raise ValueError(f"unknown kernel kind {kind!r}")
    return Kernel(kind, quiver, wf, freeze_degree(a), freeze_degree(g),
                  FactoredProduct(None, fac))


# -- symmetrization ------------------------------------------------------------


def shuffle_count(alpha: Mapping[str, int], gamma: Mapping[str, int]) -> int:
    from math import comb

    total = 1
    for i in set(degree_dict(alpha)) | set(degree_dict(gamma)):
        a = degree_dict(alpha).get(i, 0)
        c = degree_dict(gamma).get(i, 0)
        total *= comb(a + c, a)
    return total


def _shuffle_maps(alpha: dict, gamma: dict) -> list[dict[Var, Var]]:
    """Variable relabelings for the minimal (a_i, c_i)-shuffles, per vertex."""
    per_vertex = []
    for i in sorted(set(alpha) | set(gamma)):
        a = alpha.get(i, 0)
        b = a + gamma.get(i, 0)
        choices = []
        for low_positions in combinations(range(1, b + 1), a):
            high_positions = [k for k in range(1, b + 1) if k not in low_positions]
            w = {}
            for r, pos in enumerate(low_positions, start=1):
                w[xvar(i, r)] = xvar(i, pos)
            for s, pos in enumerate(high_positions, start=a + 1):
                w[xvar(i, s)] = xvar(i, pos)
            choices.append(w)
        per_vertex.append(choices)
    maps = []
    for combo in iproduct(*per_vertex):
        merged: dict[Var, Var] = {}
        for w in combo:
            merged.update(w)
        maps.append(merged)
    return maps


def _fp_poly(fp: FactoredProduct) -> LaurentPoly:
    """Expand a factored product with non-negative multiplicities."""
    out = fp.scalar
    for p, k in fp.factors:
        if k < 0:
            raise ValueError("negative multiplicity in polynomial expansion")
        for _ in range(k):
            out = out * p
    return out


def _split_fraction(fp: FactoredProduct) -> tuple[FactoredProduct, FactoredProduct]:
    """(numerator part with the scalar, denominator part with scalar 1)."""
    num = FactoredProduct(fp.scalar, [(p, k) for p, k in fp.factors if k > 0])
    den = FactoredProduct(None, [(p, -k) for p, k in fp.factors if k < 0])
    return num, den


def _collect_terms(terms: Sequence[tuple[LaurentPoly, FactoredProduct]]
                   ) -> tuple[LaurentPoly, FactoredProduct]:
    """Sum num/den pairs over a factored common denominator."""
    lcm: dict[LaurentPoly, int] = {}
    for _, den in terms:
        for p, k in den.factors:
            lcm[p] = max(lcm.get(p, 0), k)
    common = FactoredProduct(None, tuple(lcm.items()))
    total = LaurentPoly.zero()
    for num, den in terms:
        total = total + num * _fp_poly(common / den)
    return total, common


def _reduce_fraction(num: LaurentPoly, den: FactoredProduct
                     ) -> tuple[LaurentPoly, FactoredProduct]:
    """Divide out every denominator factor that divides the numerator exactly."""
    remaining = []
    for p, k in den.factors:
        while k > 0 and not num.is_zero():
            q = exact_poly_divide(num, p)
            if q is None:
                break
            num, k = q, k - 1
        if k:
            remaining.append((p, k))
    return num, FactoredProduct(None, remaining)


def _sum_terms(terms: Sequence[tuple[LaurentPoly, FactoredProduct]]) -> RationalFunction:
    total, common = _collect_terms(terms)
    total, common = _reduce_fraction(total, common)
    return RationalFunction(total, _fp_poly(common))


def sym_over_shuffles(f: RationalFunction | LaurentPoly,
                      alpha: Mapping[str, int] | Degree,
                      gamma: Mapping[str, int] | Degree) -> RationalFunction:
    """Sum of w(f) over the minimal coset representatives W_{alpha,gamma}."""
    f = as_rational(f)
    a = degree_dict(alpha)
    g = degree_dict(gamma)
    bounds = {i: a.get(i, 0) + g.get(i, 0) for i in set(a) | set(g)}
    for v in f.num.variables() | f.den.variables():
        if v.kind == "x" and v.slot > bounds.get(v.vertex, 0):
            raise ValueError(f"{v!r} exceeds the declared slots")
    den_fp = FactoredProduct(None, [(f.den, 1)])
    terms = [(f.num.relabel(w), den_fp.relabel(w)) for w in _shuffle_maps(a, g)]
    return _sum_terms(terms)


# -- elements and products -------------------------------------------------------


@dataclass(frozen=True)
class ShuffleElement:
    degree: Degree
    value: RationalFunction

    def deg(self, vertex: str) -> int:
        return degree_dict(self.degree).get(vertex, 0)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def __add__(self, other: "ShuffleElement") -> "ShuffleElement":
        if self.degree != other.degree:
            if self.is_zero():
                return other
            if other.is_zero():
                return self
            raise ValueError("cannot add elements of different degrees")
        return ShuffleElement(self.degree, self.value + other.value)

    def __sub__(self, other: "ShuffleElement") -> "ShuffleElement":
        return self + other.scale(-1)

    def __neg__(self) -> "ShuffleElement":
        return self.scale(-1)

    def scale(self, c) -> "ShuffleElement":
        return ShuffleElement(self.degree, self.value * as_rational(c))


def unit() -> ShuffleElement:
    return ShuffleElement((), RationalFunction.const(1))


def generator(i: str, n: int, r: int = 1) -> ShuffleElement:
    """The divided-power generator image (x_{i,1} ... x_{i,r})^n in degree r*alpha_i."""
    if r <= 0:
        raise ValueError("divided-power order must be positive")
    value = LaurentPoly.term(1, [(xvar(str(i), s), n) for s in range(1, r + 1)])
    return ShuffleElement(((str(i), r),), RationalFunction.from_poly(value))


class ShuffleAlgebra:
    """A shuffle algebra instance: a kernel kind bound to a quiver.

    Kernels are cached per (alpha, gamma); products certify per-vertex
    symmetry of the output before returning it.
    """

    def __init__(self, kind: str, quiver: Quiver, wf: WeightFunction | None = None,
                 cartan: CartanData | None = None):
        if kind not in KERNEL_KINDS:
            raise ValueError(f"unknown kernel kind {kind!r}")
        self.kind = kind
        self.quiver = quiver
        self.wf = wf
        if cartan is None:
            if kind == "super":
                if wf is None and quiver.arrows:
                    raise ValueError("super algebra needs weights or Cartan data")
                cartan = super_cartan_from_weights(quiver, wf)
            else:
                cartan = kac_moody_cartan(quiver)
        self.cartan = cartan
        self._kernels: dict[tuple[Degree, Degree], Kernel] = {}

    def kernel(self, alpha, gamma) -> Kernel:
        key = (freeze_degree(degree_dict(alpha)), freeze_degree(degree_dict(gamma)))
        if key not in self._kernels:
            self._kernels[key] = build_kernel(
                self.kind, self.quiver, self.wf, key[0], key[1], self.cartan)
        return self._kernels[key]

    def element(self, degree, value) -> ShuffleElement:
        return ShuffleElement(freeze_degree(degree_dict(degree)), as_rational(value))

    def generator(self, i: str, n: int, r: int = 1) -> ShuffleElement:
        if str(i) not in self.quiver.vertices:
            raise ValueError(f"unknown vertex {i!r}")
        return generator(i, n, r)

    def mul(self, f: ShuffleElement, g: ShuffleElement) -> ShuffleElement:
        alpha = degree_dict(f.degree)
        gamma = degree_dict(g.degree)
        beta = degree_dict(degree_add(alpha, gamma))
        if f.value.is_zero() or g.value.is_zero():
            return ShuffleElement(freeze_degree(beta), RationalFunction.zero())
        shift = {}
        for i, c in gamma.items():
            a = alpha.get(i, 0)
            for s in range(1, c + 1):
                shift[xvar(i, s)] = xvar(i, a + s)
        gval = g.value.relabel(shift)
        ker = self.kernel(alpha, gamma).value
        base_num = f.value.num * gval.num
        base_fp = ker * FactoredProduct(None, [(f.value.den, -1), (gval.den, -1)])
        terms = []
        for w in _shuffle_maps(alpha, gamma):
            pos, den = _split_fraction(base_fp.relabel(w))
            terms.append((base_num.relabel(w) * _fp_poly(pos), den))
        total, common = _collect_terms(terms)
        total, common = _reduce_fraction(total, common)
        self._certify_denominator(common)
        value = RationalFunction(total, _fp_poly(common))
        self._certify_symmetric(value, beta)
        return ShuffleElement(freeze_degree(beta), value)

    def product(self, *elements: ShuffleElement) -> ShuffleElement:
        out = unit()
        for e in elements:
            out = self.mul(out, e)
        return out

    def _certify_symmetric(self, value: RationalFunction, beta: dict) -> None:
        for i, b in beta.items():
            for k in range(1, b):
                swap = {xvar(i, k): xvar(i, k + 1), xvar(i, k + 1): xvar(i, k)}
                if not rf_equal(value, value.relabel(swap)):
                    raise ValueError(
                        f"product is not symmetric in the slots of vertex {i}")

    def _certify_denominator(self, den: FactoredProduct) -> None:
        """Same-vertex denominator factors must cancel under symmetrization;
        only cross-vertex kernel factors (and, for the super kernel, odd-vertex
        slot differences) may survive."""
        for p, _ in den.factors:
            vertices = {v.vertex for v in p.variables() if v.kind == "x"}
            if len(vertices) != 1:
                continue
            (i,) = vertices
            if self.kind == "super" and self.quiver.parity(i):
                continue
            raise ValueError(
                f"uncancelled same-vertex denominator {p!r} at vertex {i}")


def shuffle_mul(f: ShuffleElement, g: ShuffleElement, kind: str,
                quiver: Quiver | None = None, wf: WeightFunction | None = None,
                cartan: CartanData | None = None) -> ShuffleElement:
    """One-off product.  When no quiver is given the degrees must live on a
    single vertex, for which the arrowless quiver determines the kernel."""
    if quiver is None:
        vertices = sorted({v for v, _ in f.degree} | {v for v, _ in g.degree})
        if len(vertices) > 1:
            raise ValueError("pass a quiver for products across several vertices")
        quiver = Quiver(tuple(vertices) or ("1",))
    return ShuffleAlgebra(kind, quiver, wf, cartan).mul(f, g)


# -- q-numbers and Hall-Littlewood ----------------------------------------------


def q_int(n: int) -> LaurentPoly:
    """Balanced [n]_q = q^{n-1} + q^{n-3} + ... + q^{1-n}, n >= 0."""
    if n < 0:
        raise ValueError("q_int wants n >= 0")
    out = LaurentPoly.zero()
    for j in range(n):
        out = out + LaurentPoly.term(1, [(QVAR, n - 1 - 2 * j)])
    return out


def q_factorial(n: int) -> LaurentPoly:
    out = LaurentPoly.const(1)
    for j in range(1, n + 1):
        out = out * q_int(j)
    return out


def q_binomial(l: int, k: int) -> RationalFunction:
    """Balanced Gaussian binomial [l k]_q; 0 when k is out of range."""
    if k < 0 or k > l:
        return RationalFunction.zero()
    num = q_factorial(l)
    den = q_factorial(k) * q_factorial(l - k)
    quot = exact_poly_divide(num, den)
    assert quot is not None
    return RationalFunction.from_poly(quot)


HL_VERTEX = "1"


def _check_partition(lam: Sequence[int], r: int) -> tuple[int, ...]:
    lam = tuple(int(p) for p in lam)
    for a, b in zip(lam, lam[1:]):
        if a < b:
            raise ValueError("partition parts must be weakly decreasing")
    if len(lam) > r:
        raise ValueError("partition longer than the slot count")
    if len(lam) < r:
        if lam and lam[-1] < 0:
            raise ValueError("a partition with negative parts must have full length")
        lam = lam + (0,) * (r - len(lam))
    return lam


def hall_littlewood(lam: Sequence[int], r: int) -> tuple[RationalFunction, RationalFunction]:
    """Symmetrize x^lam against prod_{s<t} (q^-2 x_s - x_t)/(x_s - x_t) over S_r
    and divide by prod_n [i_n]_q! (i_n the multficity of the part n).

    Returns (raw, normalized); normalized strips the extremal q-power so that
    "equal up to a power of q" statements become equalities.  Slots live on
    vertex '1'.
    """
    i = HL_VERTEX
    lam = _check_partition(lam, r)
    if r == 0:
        one = RationalFunction.const(1)
        return one, one
    top = LaurentPoly.term(1, [(xvar(i, s), lam[s - 1]) for s in range(1, r + 1)])
    num_fac = [(top, 1)]
    den_fac = []
    for s in range(1, r + 1):
        for t in range(s + 1, r + 1):
            num_fac.append((_qt(-2, 0, [(xvar(i, s), 1)]) - _x(i, t), 1))
            den_fac.append((_x(i, s) - _x(i, t), 1))
    base_num = FactoredProduct(None, num_fac)
    base_den = FactoredProduct(None, den_fac)
    maps = []
    for perm in permutations(range(1, r + 1)):
        maps.append({xvar(i, s): xvar(i, perm[s - 1]) for s in range(1, r + 1)})
    terms = [(_fp_poly(base_num.relabel(w)), base_den.relabel(w)) for w in maps]
    raw = _sum_terms(terms)
    fact = LaurentPoly.const(1)
    for part in set(lam):
        fact = fact * q_factorial(lam.count(part))
    raw = raw / RationalFunction.from_poly(fact)
    if raw.is_zero():
        return raw, raw
    qmin = min(
        (dict(m).get(QVAR, 0) for m in raw.num.terms),
        default=0,
    ) - min((dict(m).get(QVAR, 0) for m in raw.den.terms), default=0)
    shift = LaurentPoly.term(1, [(QVAR, -qmin)])
    normalized = raw * RationalFunction.from_poly(shift)
    return raw, normalized
