"""Exact sparse arithmetic: Laurent polynomials, rational functions, factored products.

Everything downstream (kernels, shuffle products, relation checkers) reduces to
identities between multivariate Laurent polynomials with rational coefficients,
so this module is deliberately self-contained and exact.  No floats, no
sampling, no external CAS.

Representation
--------------

A variable is a ``Var(kind, vertex, slot)`` with ``kind`` one of ``"q"``,
``"t"`` (the two torus parameters) or ``"x"`` (a slot variable ``x_{i,s}``
attached to vertex ``i``, slot index ``s >= 1``).  Variables are globally
ordered: parameters first, then slots by vertex id, then slot index.

A monomial is a tuple of ``(Var, exponent)`` pairs, sorted by variable, with
no zero exponents; exponents may be negative.  ``()`` is the monomial 1.

A :class:`LaurentPoly` wraps a map ``{monomial: Fraction}`` with no stored
zero coefficients, so the unique representation of 0 is the empty map::

    q, x1, x2 = poly_var(QVAR), poly_var(xvar("i", 1)), poly_var(xvar("i", 2))
    p = q ** -2 * x1 - x2          # two terms, exact Fraction coefficients

A :class:`RationalFunction` is a pair of Laurent polynomials ``num/den`` in a
canonical form: zero has denominator 1, the pair carries no common monomial
or rational content, the denominator's leading coefficient (in the graded
lexicographic order) is positive, and a denominator that divides the
numerator exactly is cancelled.  Equality is decided by cross-multiplication
of expanded polynomials, never by evaluation.

A :class:`FactoredProduct` keeps a product of small (binomial) factors with
integer multiplicities and a monomial scalar prefactor.  Shuffle kernels stay
in this form through symmetrization: permuting slots maps factors to factors,
so common denominators are computed as multiset unions instead of expanded
polynomial gcds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

_KIND_ORDER = {"q": 0, "t": 1, "x": 2}


class Var(NamedTuple):
    kind: str
    vertex: str = ""
    slot: int = 0

    def key(self) -> tuple:
        return (_KIND_ORDER[self.kind], self.vertex, self.slot)

    def __repr__(self) -> str:
        if self.kind == "x":
            return f"x[{self.vertex},{self.slot}]"
        return self.kind


QVAR = Var("q")
TVAR = Var("t")


def xvar(vertex, slot: int) -> Var:
    if slot < 1:
        raise ValueError(f"slot index must be >= 1, got {slot}")
    return Var("x", str(vertex), slot)


Monomial = tuple  # tuple[tuple[Var, int], ...]

_ONE_MONO: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        ne = exps.get(v, 0) + e
        if ne:
            exps[v] = ne
        else:
            del exps[v]
    return tuple(sorted(exps.items(), key=lambda p: p[0].key()))


def _mono_pow(a: Monomial, n: int) -> Monomial:
    if n == 0 or not a:
        return _ONE_MONO
    return tuple((v, e * n) for v, e in a)


def _mono_degree(a: Monomial) -> int:
    return sum(e for _, e in a)


def _mono_order_key(a: Monomial):
    # Graded lexicographic: total degree first, then exponents read along the
    # global variable order with larger exponent on an earlier variable winning.
    return (_mono_degree(a), tuple((v.key(), e) for v, e in a))


def _mono_cmp_key(a: Monomial):
    """A key usable with max(); captures graded lex via pairwise compare."""
    return _MonoKey(a)


class _MonoKey:
    __slots__ = ("mono", "deg")

    def __init__(self, mono: Monomial):
        self.mono = mono
        self.deg = _mono_degree(mono)

    def __lt__(self, other: "_MonoKey") -> bool:
        if self.deg != other.deg:
            return self.deg < other.deg
        # lex: walk the union of variables in global order; the monomial with
        # the larger exponent on the earliest differing variable is larger
        ea, eb = dict(self.mono), dict(other.mono)
        for v in sorted(set(ea) | set(eb), key=lambda w: w.key()):
            da, db = ea.get(v, 0), eb.get(v, 0)
            if da != db:
                return da < db
        return False

    def __eq__(self, other) -> bool:
        return self.mono == other.mono


Coeffish = Union[int, Fraction]


class LaurentPoly:
    """Sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(c: Coeffish) -> "LaurentPoly":
        c = Fraction(c)
        return LaurentPoly({_ONE_MONO: c}) if c else LaurentPoly()

    @staticmethod
    def term(c: Coeffish, pairs: Iterable[tuple[Var, int]]) -> "LaurentPoly":
        mono = tuple(sorted(((v, e) for v, e in pairs if e), key=lambda p: p[0].key()))
        c = Fraction(c)
        return LaurentPoly({mono: c}) if c else LaurentPoly()

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_ONE_MONO: Fraction(1)}

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE_MONO in self.terms)

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            nc = out.get(m, Fraction(0)) + c
            if nc:
                out[m] = nc
            else:
                out.pop(m, None)
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.terms or not other.terms:
            return LaurentPoly()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = _mono_mul(ma, mb)
                nc = out.get(m, Fraction(0)) + ca * cb
                if nc:
                    out[m] = nc
                else:
                    out.pop(m, None)
        return LaurentPoly(out)

    __rmul__ = __mul__

    def scale(self, c: Coeffish) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly({m: cc * c for m, cc in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_term():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            (m, c), = self.terms.items()
            return LaurentPoly({_mono_pow(m, n): c ** n})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- structure -----------------------------------------------------------

    def leading(self) -> tuple[Monomial, Fraction]:
        """Leading (monomial, coefficient) under the graded lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=_mono_cmp_key)
        return m, self.terms[m]

    def mul_term(self, c: Coeffish, mono: Monomial) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly()
        return LaurentPoly({_mono_mul(m, mono): cc * c for m, cc in self.terms.items()})

    def div_term(self, c: Coeffish, mono: Monomial) -> "LaurentPoly":
        return self.mul_term(Fraction(1) / Fraction(c), _mono_pow(mono, -1))

    def content(self) -> tuple[Fraction, Monomial]:
        """gcd of coefficients and the componentwise-minimal monomial."""
        if not self.terms:
            return Fraction(1), _ONE_MONO
        nums = [c.numerator for c in self.terms.values()]
        dens = [c.denominator for c in self.terms.values()]
        g = Fraction(math.gcd(*nums) if len(nums) > 1 else abs(nums[0]),
                     math.lcm(*dens) if len(dens) > 1 else dens[0])
        mins: dict = {}
        first = True
        for m in self.terms:
            em = dict(m)
            if first:
                mins = dict(em)
                first = False
            else:
                for v in list(mins):
                    mins[v] = min(mins[v], em.get(v, 0))
                for v in em:
                    if v not in mins:
                        mins[v] = min(0, em[v])
                for v in list(mins):
                    if mins[v] == 0:
                        del mins[v]
        mono = tuple(sorted(mins.items(), key=lambda p: p[0].key()))
        return g, mono

    def degree_in(self, v: Var) -> int:
        """Largest exponent of v (0 if absent everywhere)."""
        return max((dict(m).get(v, 0) for m in self.terms), default=0)

    def min_degree_in(self, v: Var) -> int:
        return min((dict(m).get(v, 0) for m in self.terms), default=0)

    def coefficient_of(self, v: Var, e: int) -> "LaurentPoly":
        """Coefficient of v**e, as a polynomial in the remaining variables."""
        out = {}
        for m, c in self.terms.items():
            em = dict(m)
            if em.pop(v, 0) == e:
                out[tuple(sorted(em.items(), key=lambda p: p[0].key()))] = c
        return LaurentPoly(out)

    # -- substitution and relabeling ------------------------------------------

    def relabel(self, mapping: Mapping[Var, Var]) -> "LaurentPoly":
        """Rename variables (an injective map on the variables involved)."""
        if not mapping:
            return self
        out: dict = {}
        for m, c in self.terms.items():
            nm = tuple(sorted(((mapping.get(v, v), e) for v, e in m),
                              key=lambda p: p[0].key()))
            if nm in out:
                raise ValueError("relabel mapping is not injective on this polynomial")
            out[nm] = c
        return LaurentPoly(out)

    def substitute(self, values: Mapping[Var, "RationalFunction | LaurentPoly | int | Fraction"]) -> "RationalFunction":
        """Substitute rational functions for variables; exact result."""
        vals: dict[Var, RationalFunction] = {}
        for v, val in values.items():
            vals[v] = as_rational(val)
        total = RationalFunction.zero()
        for m, c in self.terms.items():
            part = RationalFunction.const(c)
            for v, e in m:
                if v in vals:
                    part = part * vals[v].pow(e)
                else:
                    part = part * RationalFunction.from_poly(LaurentPoly.term(1, [(v, e)]))
            total = total + part
        return total

    # -- display --------------------------------------------------------------

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=_mono_order_key, reverse=True):
            c = self.terms[m]
            factors = "*".join(
                (repr(v) if e == 1 else f"{v!r}^{e}") for v, e in m)
            if m == _ONE_MONO:
                bits.append(str(c))
            elif c == 1:
                bits.append(factors)
            elif c == -1:
                bits.append(f"-{factors}")
            else:
                bits.append(f"{c}*{factors}")
        s = " + ".join(bits).replace("+ -", "- ")
        return s


def poly_var(v: Var) -> LaurentPoly:
    return LaurentPoly.term(1, [(v, 1)])


def exact_poly_divide(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly | None:
    """Return f/g if g divides f exactly, else None.

    Laurent exponents are first shifted away so ordinary multivariate long
    division by the single divisor g applies; the shift is undone at the end.
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if f.is_zero():
        return LaurentPoly.zero()
    _, mf = f.content()
    _, mg = g.content()
    # clear negative exponents
    fshift = {v: -e for v, e in mf if e < 0}
    gshift = {v: -e for v, e in mg if e < 0}
    fpos = f.mul_term(1, tuple(sorted(fshift.items(), key=lambda p: p[0].key())))
    gpos = g.mul_term(1, tuple(sorted(gshift.items(), key=lambda p: p[0].key())))
    glead_m, glead_c = gpos.leading()
    rem = fpos
    quot: dict = {}
    glead_inv = _mono_pow(glead_m, -1)
    while not rem.is_zero():
        rlead_m, rlead_c = rem.leading()
        qm = _mono_mul(rlead_m, glead_inv)
        if any(e < 0 for _, e in qm):
            return None
        qc = rlead_c / glead_c
        prev = quot.get(qm, Fraction(0)) + qc
        if prev:
            quot[qm] = prev
        else:
            quot.pop(qm, None)
        rem = rem - gpos.mul_term(qc, qm)
    q = LaurentPoly(quot)
    # undo the shifts: f/g = (fpos / gpos) * x^{gshift - fshift}
    back = {v: e for v, e in gshift.items()}
    for v, e in fshift.items():
        back[v] = back.get(v, 0) - e
    mono = tuple(sorted(((v, e) for v, e in back.items() if e), key=lambda p: p[0].key()))
    return q.mul_term(1, mono)


RFLike = Union["RationalFunction", LaurentPoly, int, Fraction]


class RationalFunction:
    """Quotient of Laurent polynomials in canonical form."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _canonical: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if _canonical:
            self.num, self.den = num, den
            return
        if num.is_zero():
            self.num, self.den = LaurentPoly.zero(), LaurentPoly.const(1)
            return
        if not den.is_one():
            q = exact_poly_divide(num, den)
            if q is not None:
                num, den = q, LaurentPoly.const(1)
        cn, mn = num.content()
        cd, md = den.content()
        gc = Fraction(math.gcd(cn.numerator, cd.numerator),
                      math.lcm(cn.denominator, cd.denominator))
        # common monomial content: componentwise min of the two content monomials
        en, ed = dict(mn), dict(md)
        common = {}
        for v in set(en) | set(ed):
            m = min(en.get(v, 0), ed.get(v, 0))
            if m:
                common[v] = m
        mono = tuple(sorted(common.items(), key=lambda p: p[0].key()))
        if gc != 1 or mono:
            num = num.div_term(gc, mono)
            den = den.div_term(gc, mono)
        _, lead_c = den.leading()
        if lead_c < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    # -- constructors ----------------------------------------------------------

    @staticmethod
    def zero() -> "RationalFunction":
        return RationalFunction(LaurentPoly.zero(), LaurentPoly.const(1), _canonical=True)

    @staticmethod
    def const(c: Coeffish) -> "RationalFunction":
        return RationalFunction(LaurentPoly.const(c), LaurentPoly.const(1), _canonical=True)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RationalFunction":
        return RationalFunction(p, LaurentPoly.const(1), _canonical=True)

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one() or self.den.is_term()

    def as_poly(self) -> LaurentPoly:
        """The Laurent-polynomial form; requires a monomial denominator."""
        if self.den.is_one():
            return self.num
        if not self.den.is_term():
            raise ValueError("not expressible with a monomial denominator")
        (m, c), = self.den.terms.items()
        return self.num.div_term(c, m)

    # -- arithmetic ---------------------------------------------------------------

    def __add__(self, other: RFLike) -> "RationalFunction":
        o = as_rational(other)
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _canonical=True)

    def __sub__(self, other: RFLike) -> "RationalFunction":
        return self + (-as_rational(other))

    def __rsub__(self, other: RFLike) -> "RationalFunction":
        return as_rational(other) + (-self)

    def __mul__(self, other: RFLike) -> "RationalFunction":
        o = as_rational(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: RFLike) -> "RationalFunction":
        o = as_rational(other)
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: RFLike) -> "RationalFunction":
        return as_rational(other) / self

    def pow(self, n: int) -> "RationalFunction":
        if n == 0:
            return RationalFunction.const(1)
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    __pow__ = pow

    def __eq__(self, other) -> bool:
        if not isinstance(other, (RationalFunction, LaurentPoly, int, Fraction)):
            return NotImplemented
        return rf_equal(self, as_rational(other))

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def substitute(self, values: Mapping[Var, RFLike]) -> "RationalFunction":
        n = self.num.substitute(values)
        d = self.den.substitute(values)
        if d.is_zero():
            raise ZeroDivisionError("substitution sends the denominator to zero")
        return n / d

    def relabel(self, mapping: Mapping[Var, Var]) -> "RationalFunction":
        return RationalFunction(self.num.relabel(mapping), self.den.relabel(mapping))

    def __repr__(self) -> str:
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def as_rational(v: RFLike) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, LaurentPoly):
        return RationalFunction.from_poly(v)
    return RationalFunction.const(v)


def rf_equal(f: RFLike, g: RFLike) -> bool:
    """Exact equality by cross multiplication."""
    a, b = as_rational(f), as_rational(g)
    return (a.num * b.den - b.num * a.den).is_zero()


def rf_arith(op: str, lhs: RFLike, rhs=None) -> RationalFunction:
    """Dispatch wrapper over the rational-function operations.

    op is one of add, sub, mul, div, neg, substitute; for substitute, rhs is a
    mapping from Var to values.
    """
    a = as_rational(lhs)
    if op == "neg":
        return -a
    if op == "substitute":
        return a.substitute(rhs)
    b = as_rational(rhs)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def exact_divide(f: RFLike, g: LaurentPoly) -> tuple[bool, LaurentPoly | None]:
    """Certify that g divides the polynomial form of f; return the quotient.

    f must be expressible with a monomial denominator (otherwise polynomiality
    was asserted wrongly upstream and we raise).
    """
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a = as_rational(f)
    p = a.as_poly()
    q = exact_poly_divide(p, g)
    return (True, q) if q is not None else (False, None)


# -- factored products ------------------------------------------------------------


def monic_key(p: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Normalize a nonzero polynomial to (monic form, leading scalar term).

    The leading scalar term is a single-term LaurentPoly such that
    p = scalar * monic.  Proportional factors share their monic form, which is
    what makes multiset cancellation of kernel factors work.
    """
    m, c = p.leading()
    scalar = LaurentPoly.term(c, m)
    monic = p.div_term(c, m)
    return monic, scalar


def _poly_sort_token(p: LaurentPoly):
    return tuple(sorted(((tuple((v.key(), e) for v, e in m), c) for m, c in p.terms.items())))


class FactoredProduct:
    """scalar * prod(factor_i ** mult_i) with monic factors.

    The scalar is a single-term LaurentPoly (a unit); multiplicities may be
    negative, representing denominator factors.  Expansion returns an honest
    RationalFunction, and dividing two factored products cancels matching
    factors without any polynomial gcd.
    """

    __slots__ = ("scalar", "factors")

    def __init__(self, scalar: LaurentPoly | None = None,
                 factors: Sequence[tuple[LaurentPoly, int]] = ()):
        if scalar is None:
            scalar = LaurentPoly.const(1)
        if not scalar.is_term():
            raise ValueError("FactoredProduct scalar must be a single term")
        agg: dict[LaurentPoly, int] = {}
        for p, mult in factors:
            if mult == 0:
                continue
            if p.is_zero():
                raise ValueError("zero factor in FactoredProduct")
            if p.is_term():
                (m, c), = p.terms.items()
                scalar = scalar.mul_term(c ** mult, _mono_pow(m, mult))
                continue
            key, sc = monic_key(p)
            (sm, scc), = sc.terms.items()
            scalar = scalar.mul_term(scc ** mult, _mono_pow(sm, mult))
            agg[key] = agg.get(key, 0) + mult
        self.scalar = scalar
        self.factors = tuple(sorted(((p, m) for p, m in agg.items() if m),
                                    key=lambda pm: _poly_sort_token(pm[0])))

    @staticmethod
    def one() -> "FactoredProduct":
        return FactoredProduct()

    def __mul__(self, other: "FactoredProduct") -> "FactoredProduct":
        return FactoredProduct(self.scalar * other.scalar,
                               list(self.factors) + list(other.factors))

    def inv(self) -> "FactoredProduct":
        (m, c), = self.scalar.terms.items()
        return FactoredProduct(LaurentPoly.term(Fraction(1) / c, _mono_pow(m, -1)),
                               [(p, -k) for p, k in self.factors])

    def __truediv__(self, other: "FactoredProduct") -> "FactoredProduct":
        return self * other.inv()

    def pow(self, n: int) -> "FactoredProduct":
        (m, c), = self.scalar.terms.items()
        return FactoredProduct(LaurentPoly.term(c ** n, _mono_pow(m, n)),
                               [(p, k * n) for p, k in self.factors])

    def is_scalar(self) -> bool:
        return not self.factors

    def numerator_factors(self) -> list[tuple[LaurentPoly, int]]:
        return [(p, k) for p, k in self.factors if k > 0]

    def denominator_factors(self) -> list[tuple[LaurentPoly, int]]:
        return [(p, -k) for p, k in self.factors if k < 0]

    def expand(self) -> RationalFunction:
        num = self.scalar
        den = LaurentPoly.const(1)
        for p, k in self.factors:
            if k > 0:
                for _ in range(k):
                    num = num * p
            else:
                for _ in range(-k):
                    den = den * p
        return RationalFunction(num, den)

    def relabel(self, mapping: Mapping[Var, Var]) -> "FactoredProduct":
        return FactoredProduct(self.scalar.relabel(mapping),
                               [(p.relabel(mapping), k) for p, k in self.factors])

    def substitute(self, values: Mapping[Var, RFLike]) -> "FactoredProduct":
        """Substitute unit monomials or constants; factors must stay nonzero."""
        sc = self.scalar.substitute(values)
        if not (sc.den.is_one() or sc.den.is_term()) or not sc.as_poly().is_term():
            raise ValueError("substitution must keep the scalar a unit")
        out = [(sc.as_poly(), 1)]
        for p, k in self.factors:
            sub = p.substitute(values)
            sp = sub.as_poly() if sub.is_polynomial() else None
            if sp is None:
                # a factor picked up a denominator: fold it in as two factors
                out.append((sub.num, k))
                out.append((sub.den, -k))
                continue
            if sp.is_zero():
                raise ZeroDivisionError("substitution sends a factor to zero")
            out.append((sp, k))
        return FactoredProduct(LaurentPoly.const(1), out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FactoredProduct)
                and self.scalar == other.scalar and self.factors == other.factors)

    def __repr__(self) -> str:
        bits = [] if self.scalar.is_one() else [f"({self.scalar!r})"]
        for p, k in self.factors:
            bits.append(f"({p!r})" + (f"^{k}" if k != 1 else ""))
        return " * ".join(bits) if bits else "1"
