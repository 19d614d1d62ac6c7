"""Quivers, weight functions, Cartan data, parity sequences.

A quiver is a finite ordered vertex list plus named arrows.  The vertex order
matters: every kernel downstream reads "i < j" off the position in
``vertices``.  Doubled quivers record the bijection h -> h' explicitly in
``pairs`` (parallel arrows would make it ambiguous otherwise); the first
member of each pair is the original arrow.

A weight function assigns each arrow h a torus character q_h t_h, stored as
the pair of integer exponents (q-exponent, t-exponent).  All weight functions
used here are pure monomials in q and t.

Cartan data bundles the symmetric matrix a_{ij} with the antisymmetric twist
matrix m_{ij}.  For an ordinary (all-even) quiver, a_{ij} counts arrows:
a_{ij} = 2 delta_{ij} - #(i->j) - #(j->i), and m_{ij} = 1 for i < j with
a_{ij} != 0.  For a parity sequence s of type (m|n), both matrices come from
the cyclic bilinear form

    (alpha_i : alpha_j) = (s_i + s_{i+1}) d_{ij} - s_i d_{i,j+1} - s_j d_{i+1,j}

with indices mod m+n, and m_{i,i+1} = -m_{i+1,i} = -s_{i+1}.  A vertex is odd
exactly when s_i = -s_{i+1}, equivalently a_{ii} = 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .exactalg import LaurentPoly, QVAR, TVAR


class Arrow(NamedTuple):
    name: str
    src: str
    tgt: str

    def is_loop(self) -> bool:
        return self.src == self.tgt


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...] = ()
    parities: tuple[int, ...] = ()
    pairs: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        names = set()
        for a in self.arrows:
            if a.src not in vs or a.tgt not in vs:
                raise ValueError(f"arrow {a.name} references undeclared vertices")
            if a.name in names:
                raise ValueError(f"duplicate arrow name {a.name}")
            names.add(a.name)
        if self.parities and len(self.parities) != len(self.vertices):
            raise ValueError("parities must align with vertices")
        for h, hp in self.pairs:
            if h not in names or hp not in names:
                raise ValueError("pair references unknown arrow")

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def parity(self, v: str) -> int:
        if not self.parities:
            return 0
        return self.parities[self.index(v)]

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def loops(self) -> tuple[Arrow, ...]:
        return tuple(a for a in self.arrows if a.is_loop())

    def original_arrows(self) -> tuple[Arrow, ...]:
        """The arrows playing the role of Q_1 inside a double or triple quiver.

        If the quiver records h -> h' pairs these are the first members;
        otherwise every non-loop arrow counts as original.
        """
        if self.pairs:
            firsts = {h for h, _ in self.pairs}
            return tuple(a for a in self.arrows if a.name in firsts)
        return tuple(a for a in self.arrows if not a.is_loop())

    def partner(self) -> dict[str, str]:
        out = {}
        for h, hp in self.pairs:
            out[h] = hp
            out[hp] = h
        return out

    def arrow_count(self, i: str, j: str) -> int:
        return sum(1 for a in self.arrows if a.src == i and a.tgt == j)


@dataclass(frozen=True)
class WeightFunction:
    qexp: Mapping[str, int]
    texp: Mapping[str, int]

    def q_of(self, arrow_name: str) -> int:
        return self.qexp[arrow_name]

    def t_of(self, arrow_name: str) -> int:
        return self.texp.get(arrow_name, 0)

    def character(self, arrow_name: str, invert: bool = False) -> LaurentPoly:
        """The monomial q_h t_h (or its inverse) as a LaurentPoly."""
        sgn = -1 if invert else 1
        return LaurentPoly.term(1, [(QVAR, sgn * self.q_of(arrow_name)),
                                    (TVAR, sgn * self.t_of(arrow_name))])


@dataclass(frozen=True)
class CartanData:
    order: tuple[str, ...]
    a: tuple[tuple[int, ...], ...]
    m: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.order)
        for row in self.a:
            if len(row) != n:
                raise ValueError("Cartan matrix shape mismatch")
        for i in range(n):
            for j in range(n):
                if self.a[i][j] != self.a[j][i]:
                    raise ValueError("a must be symmetric")
                if self.m[i][j] != -self.m[j][i]:
                    raise ValueError("m must be antisymmetric")

    def a_of(self, i: str, j: str) -> int:
        return self.a[self.order.index(i)][self.order.index(j)]

    def m_of(self, i: str, j: str) -> int:
        return self.m[self.order.index(i)][self.order.index(j)]

    def pairing(self, u: Mapping[str, int], v: Mapping[str, int]) -> int:
        """Bilinear form (u : v) = sum u_i a_{ij} v_j on dimension vectors."""
        total = 0
        for i, ci in u.items():
            if not ci:
                continue
            for j, cj in v.items():
                if cj:
                    total += ci * self.a_of(i, j) * cj
        return total


DimensionVector = Mapping[str, int]


def dim_add(a: DimensionVector, b: DimensionVector) -> dict[str, int]:
    out = dict(a)
    for v, c in b.items():
        out[v] = out.get(v, 0) + c
    return {v: c for v, c in out.items() if c}


def dim_check(quiver: Quiver, d: DimensionVector) -> None:
    for v, c in d.items():
        if v not in quiver.vertices:
            raise ValueError(f"dimension vector uses undeclared vertex {v}")
        if c < 0:
            raise ValueError("dimension vector entries must be non-negative")


@dataclass(frozen=True)
class ParitySequence:
    s: tuple[int, ...]

    def __post_init__(self):
        if not self.s:
            raise ValueError("empty parity sequence")
        if any(e not in (1, -1) for e in self.s):
            raise ValueError("parity sequence entries must be +-1")

    @property
    def m(self) -> int:
        return sum(1 for e in self.s if e == 1)

    @property
    def n(self) -> int:
        return sum(1 for e in self.s if e == -1)

    @property
    def standard_range(self) -> bool:
        """Whether m*n avoids {1, 2}.

        The small-rank cases outside this range are still constructed (the
        acceptance checks need gl(2|1)); the flag just records the fact.
        """
        return self.m * self.n not in (1, 2)

    @staticmethod
    def parse(pattern: str) -> "ParitySequence":
        """Parse '+', '-' strings like '++-'."""
        table = {"+": 1, "-": -1}
        try:
            return ParitySequence(tuple(table[c] for c in pattern))
        except KeyError:
            raise ValueError(f"bad parity pattern {pattern!r}") from None


# -- constructions -----------------------------------------------------------


def double_quiver(q: Quiver) -> Quiver:
    """Add a reversed partner h' for every arrow; records the pairing."""
    if q.pairs:
        raise ValueError("quiver already carries an h -> h' pairing")
    new_arrows = list(q.arrows)
    pairs = []
    for a in q.arrows:
        rev = Arrow(a.name + "'", a.tgt, a.src)
        new_arrows.append(rev)
        pairs.append((a.name, rev.name))
    return Quiver(q.vertices, tuple(new_arrows), q.parities, tuple(pairs))


def triple_quiver(q: Quiver) -> Quiver:
    """The double quiver with one extra loop per vertex."""
    d = q if q.pairs else double_quiver(q)
    arrows = list(d.arrows)
    for v in d.vertices:
        arrows.append(Arrow(f"w_{v}", v, v))
    return Quiver(d.vertices, tuple(arrows), d.parities, d.pairs)


LOOP_Q_EXP = -2
LOOP_T_EXP = 0


def normal_weights(q: Quiver, cartan: CartanData) -> WeightFunction:
    """The normal weight function on a double or triple quiver.

    Original arrows between i < j receive q-exponents 2 + a_{ij}, 4 + a_{ij},
    ..., -a_{ij} (one per arrow, in arrow-name order), partners get the
    complementary exponent so q_h q_{h'} = q^2; original arrows carry t, their
    partners t^{-1}.  Loops are fixed at (q^{-2}, t^0).
    """
    partner = q.partner()
    if not partner and any(not a.is_loop() for a in q.arrows):
        raise ValueError("normal weights need a doubled quiver")
    qexp: dict[str, int] = {}
    texp: dict[str, int] = {}
    originals = [a for a in q.original_arrows() if not a.is_loop()]
    by_pair: dict[tuple[str, str], list[Arrow]] = {}
    for a in originals:
        by_pair.setdefault((a.src, a.tgt), []).append(a)
    for (i, j), group in by_pair.items():
        if q.index(i) >= q.index(j):
            raise ValueError("normal weights require original arrows to go up the vertex order")
        aij = cartan.a_of(i, j)
        if len(group) != -aij:
            raise ValueError("arrow count does not match the Cartan entry")
        group = sorted(group, key=lambda a: a.name)
        for k, a in enumerate(group):
            qexp[a.name] = 2 + aij + 2 * k
            texp[a.name] = 1
            qexp[partner[a.name]] = -aij - 2 * k
            texp[partner[a.name]] = -1
    for a in q.loops():
        qexp[a.name] = LOOP_Q_EXP
        texp[a.name] = LOOP_T_EXP
    return WeightFunction(qexp, texp)


def kac_moody_cartan(base: Quiver) -> CartanData:
    """Cartan data of an ordinary quiver (arrows counted on the base quiver)."""
    vs = base.vertices
    n = len(vs)
    if base.pairs:
        counted = base.original_arrows()
    else:
        counted = base.arrows
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        loops_i = sum(1 for arr in counted if arr.src == arr.tgt == vs[i])
        a[i][i] = 2 - 2 * loops_i
        for j in range(i + 1, n):
            cnt = sum(1 for arr in counted if {arr.src, arr.tgt} == {vs[i], vs[j]})
            a[i][j] = -cnt
            a[j][i] = -cnt
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < j and a[i][j] != 0:
                m[i][j] = 1
                m[j][i] = -1
    return CartanData(vs, tuple(map(tuple, a)), tuple(map(tuple, m)))


def super_cartan(p: ParitySequence) -> CartanData:
    s = p.s
    n = len(s)

    def sv(k: int) -> int:
        return s[k % n]

    a = [[0] * n for _ in range(n)]
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            val = 0
            if i == j:
                val += sv(i) + sv(i + 1)
            if i % n == (j + 1) % n:
                val -= sv(i)
            if (i + 1) % n == j % n:
                val -= sv(j)
            a[i][j] = val
    for i in range(n):
        j = (i + 1) % n
        m[i][j] += -sv(i + 1)
        m[j][i] += sv(i + 1)
    order = tuple(str(k) for k in range(n))
    return CartanData(order, tuple(map(tuple, a)), tuple(map(tuple, m)))


def build_super_quiver(p: ParitySequence) -> tuple[Quiver, WeightFunction, CartanData]:
    """Cyclic super quiver with arrows x_i: i -> i+1, y_i: i+1 -> i and loops
    w_i at even vertices, with the weight table q_{x_i} = q_{y_i} = q^{s_{i+1}},
    t_{x_i} = t^{-s_{i+1}}, t_{y_i} = t^{s_{i+1}}, q_{w_i} = q^{-2 s_i}, t_{w_i} = 1.
    """
    s = p.s
    n = len(s)
    if n < 3:
        raise ValueError("the cyclic super quiver needs at least 3 vertices")
    cartan = super_cartan(p)

    def sv(k: int) -> int:
        return s[k % n]

    vertices = tuple(str(k) for k in range(n))
    parities = tuple(0 if sv(k) == sv(k + 1) else 1 for k in range(n))
    arrows = []
    pairs = []
    qexp: dict[str, int] = {}
    texp: dict[str, int] = {}
    for i in range(n):
        j = (i + 1) % n
        x = Arrow(f"x{i}", str(i), str(j))
        y = Arrow(f"y{i}", str(j), str(i))
        arrows += [x, y]
        pairs.append((x.name, y.name))
        qexp[x.name] = sv(i + 1)
        texp[x.name] = -sv(i + 1)
        qexp[y.name] = sv(i + 1)
        texp[y.name] = sv(i + 1)
    for i in range(n):
        if parities[i] == 0:
            w = Arrow(f"w{i}", str(i), str(i))
            arrows.append(w)
            qexp[w.name] = -2 * sv(i)
            texp[w.name] = 0
    quiver = Quiver(vertices, tuple(arrows), parities, tuple(pairs))
    return quiver, WeightFunction(qexp, texp), cartan


def validate_weight_function(q: Quiver, wf: WeightFunction) -> dict[str, bool]:
    """Flags {homogeneous, normal} for a weight function on a double/triple quiver.

    homogeneous: q-exponents of h and h' sum to 2 and t-exponents to 0 for
    every paired arrow, and any loops carry exactly (q^{-2}, t^0).
    normal: homogeneous, original arrows all go up the vertex order, and for
    every i < j the multiset of q-exponents on arrows i -> j equals
    {2 + a_{ij}, 4 + a_{ij}, ..., -a_{ij}}.
    """
    partner = q.partner()
    for a in q.arrows:
        if not a.is_loop() and a.name not in partner:
            raise ValueError(f"arrow {a.name} has no h' partner")
    homogeneous = True
    for h, hp in q.pairs:
        if wf.q_of(h) + wf.q_of(hp) != 2 or wf.t_of(h) + wf.t_of(hp) != 0:
            homogeneous = False
    for a in q.loops():
        if a.name in partner:
            continue
        if wf.q_of(a.name) != LOOP_Q_EXP or wf.t_of(a.name) != LOOP_T_EXP:
            homogeneous = False
    normal = homogeneous
    for a in q.original_arrows():
        if not a.is_loop() and q.index(a.src) >= q.index(a.tgt):
            normal = False
    if normal:
        nonloop = [a for a in q.arrows if not a.is_loop()]
        seen_pairs = {(a.src, a.tgt) for a in nonloop}
        for (i, j) in seen_pairs:
            if q.index(i) > q.index(j):
                continue
            count = sum(1 for a in nonloop if a.src == i and a.tgt == j)
            aij = -count
            want = sorted(2 + aij + 2 * k for k in range(count))
            got = sorted(wf.q_of(a.name) for a in nonloop if a.src == i and a.tgt == j)
            if want != got:
                normal = False
    return {"homogeneous": homogeneous, "normal": normal}


# -- builtin quivers ----------------------------------------------------------


def linear_quiver(rank: int) -> Quiver:
    """Type A_rank: vertices 1..rank, arrows i -> i+1."""
    vertices = tuple(str(k) for k in range(1, rank + 1))
    arrows = tuple(Arrow(f"a{k}{k + 1}", str(k), str(k + 1)) for k in range(1, rank))
    return Quiver(vertices, arrows)


def kronecker_quiver() -> Quiver:
    return Quiver(("1", "2"), (Arrow("k1", "1", "2"), Arrow("k2", "1", "2")))


def jordan_quiver() -> Quiver:
    return Quiver(("1",), (Arrow("loop", "1", "1"),))


BUILTIN_BASE = {
    "a1": lambda: linear_quiver(1),
    "a2": lambda: linear_quiver(2),
    "a3": lambda: linear_quiver(3),
    "kronecker": kronecker_quiver,
}


def builtin(name: str) -> tuple[Quiver, WeightFunction | None, CartanData]:
    """Resolve a builtin name to (base or super quiver, weights, cartan).

    Names: a1, a2, a3, kronecker, and super:m|n:pattern, e.g. super:2|1:++-.
    For super quivers the weight function ships with the construction; for the
    ordinary ones the caller picks weights once it knows which double/triple
    it needs (see normal_weights).
    """
    if name in BUILTIN_BASE:
        base = BUILTIN_BASE[name]()
        return base, None, kac_moody_cartan(base)
    if name.startswith("super:"):
        bits = name.split(":")
        if len(bits) != 3:
            raise ValueError(f"bad super builtin {name!r}; want super:m|n:pattern")
        mn, pattern = bits[1], bits[2]
        p = ParitySequence.parse(pattern)
        try:
            m_s, n_s = mn.split("|")
            want = (int(m_s), int(n_s))
        except ValueError:
            raise ValueError(f"bad type designation {mn!r}") from None
        if (p.m, p.n) != want:
            raise ValueError(f"pattern {pattern!r} is not of type {mn}")
        return build_super_quiver(p)
    raise ValueError(f"unknown builtin quiver {name!r}")


# -- JSON interchange ----------------------------------------------------------


def quiver_from_dict(data: dict) -> tuple[Quiver, WeightFunction | None, CartanData]:
    """Build from the JSON schema
    {"vertices": [...], "arrows": [{"id","src","tgt","q_exp","t_exp"}],
     "pairs": [[h, h']], "parity": {id: 0|1}}
    or the super shorthand {"super": {"s": [1, 1, -1]}}.
    """
    if "super" in data:
        s = tuple(int(e) for e in data["super"]["s"])
        return build_super_quiver(ParitySequence(s))
    vertices = tuple(str(v) for v in data["vertices"])
    arrows = []
    qexp: dict[str, int] = {}
    texp: dict[str, int] = {}
    has_weights = False
    for rec in data.get("arrows", ()):
        a = Arrow(str(rec["id"]), str(rec["src"]), str(rec["tgt"]))
        arrows.append(a)
        if "q_exp" in rec or "t_exp" in rec:
            has_weights = True
            qexp[a.name] = int(rec.get("q_exp", 0))
            texp[a.name] = int(rec.get("t_exp", 0))
    pairs = tuple((str(h), str(hp)) for h, hp in data.get("pairs", ()))
    parity_map = {str(k): int(v) for k, v in data.get("parity", {}).items()}
    parities = tuple(parity_map.get(v, 0) for v in vertices) if parity_map else ()
    quiver = Quiver(vertices, tuple(arrows), parities, pairs)
    wf = WeightFunction(qexp, texp) if has_weights else None
    return quiver, wf, kac_moody_cartan(quiver)


def quiver_from_json(path: str) -> tuple[Quiver, WeightFunction | None, CartanData]:
    with open(path) as fh:
        return quiver_from_dict(json.load(fh))
