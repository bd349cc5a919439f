"""Exact sparse multivariate polynomial and rational-function arithmetic.

Everything downstream (degeneracy-locus classes, pushforward identities,
slope computations) reduces to exact arithmetic over the rationals, so this
module is deliberately floating-point free.

Representations
---------------
Variable   = (kind, index) tuple.  Kinds give the fixed global ordering used
             by the graded-lex term order; indices are ints for the root
             alphabets and strings for named parameters / formal symbols.
Monomial   = tuple of ((kind, index), exponent) pairs, sorted by variable,
             with no zero exponents.  The empty tuple is the unit monomial.
Polynomial = wrapper around {Monomial: coefficient}; zero coefficients are
             never stored, so structural equality is semantic equality.

Coefficients are `gmpy2.mpq` when available (exact, much faster) and
`fractions.Fraction` otherwise; both expose the same arithmetic surface.

Rational functions keep an optional multiset factorization of their
denominator into linear forms.  The fraction sums produced by fixed-point
localization have denominators that are products of linear forms, so keeping
the factorization makes the least-common-denominator bookkeeping and the
final exact cancellation cheap.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

try:  # gmpy2's mpq is a drop-in exact rational, ~5x faster than Fraction
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ


class AlgebraError(Exception):
    """Base class for algebra failures."""


class DivisionNotExact(AlgebraError):
    """Raised when polynomial division leaves a remainder."""


class DenominatorSurvives(AlgebraError):
    """Raised when a fraction sum expected to be polynomial is not."""


class NotSymmetric(AlgebraError):
    """Raised with a witnessing transposition when a symmetry check fails."""

    def __init__(self, message: str, transposition=None):
        super().__init__(message)
        self.transposition = transposition


# Variable kinds, in the fixed global order used by the term order.
ALPHA, BETA, GAMMA, XI, ZVAR, UVAR, TVAR, PARAM, SYM = range(9)

_KIND_NAMES = {
    ALPHA: "a", BETA: "b", GAMMA: "g", XI: "xi", ZVAR: "z",
    UVAR: "u", TVAR: "t", PARAM: "", SYM: "",
}

Variable = tuple  # (kind, index)


def alpha(i: int) -> Variable:
    return (ALPHA, i)


def beta(j: int) -> Variable:
    return (BETA, j)


def gamma_var(i: int) -> Variable:
    return (GAMMA, i)


def xi() -> Variable:
    return (XI, 0)


def zvar() -> Variable:
    return (ZVAR, 0)


def uvar(j: int) -> Variable:
    return (UVAR, j)


def param(name: str) -> Variable:
    return (PARAM, name)


def sym(name: str) -> Variable:
    return (SYM, name)


def var_name(v: Variable) -> str:
    kind, idx = v
    if kind in (PARAM, SYM):
        return str(idx)
    if kind in (XI, ZVAR, TVAR):
        return _KIND_NAMES[kind]
    return "%s%s" % (_KIND_NAMES[kind], idx)


def _merge_exponents(m1, m2):
    """Merge two sorted monomials, adding exponents."""
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def monomial_degree(m) -> int:
    return sum(e for _, e in m)


def _grlex_key(m):
    """Sort key putting the graded-lex largest monomial first when sorted().

    Larger total degree wins; ties broken lexicographically with earlier
    variables and higher exponents first.
    """
    deg = monomial_degree(m)
    # negate exponents so that, variable by variable, a higher power sorts
    # as "smaller" key; missing variables are implicitly exponent 0.
    return (-deg, tuple((v, -e) for v, e in m))


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    c = QQ(c)
                    if c:
                        clean[m] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero() -> "Polynomial":
        return Polynomial()

    @staticmethod
    def const(c) -> "Polynomial":
        return Polynomial({(): QQ(c)})

    @staticmethod
    def variable(v: Variable) -> "Polynomial":
        return Polynomial({((v, 1),): QQ(1)})

    @staticmethod
    def _raw(terms: dict) -> "Polynomial":
        """Wrap an already-normalized dict without copying."""
        p = Polynomial.__new__(Polynomial)
        object.__setattr__(p, "terms", terms)
        return p

    # -- basic queries ------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(m == () for m in self.terms)

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.terms.get((), QQ(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(monomial_degree(m) for m in self.terms)

    def is_homogeneous(self, deg: int | None = None) -> bool:
        if not self.terms:
            return True
        degs = {monomial_degree(m) for m in self.terms}
        if len(degs) > 1:
            return False
        return deg is None or degs == {deg}

    def variables(self) -> set:
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return out

    def leading(self):
        """(monomial, coefficient) largest in graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = min(self.terms, key=_grlex_key)
        return m, self.terms[m]

    def coefficient_of(self, v: Variable, power: int) -> "Polynomial":
        """Coefficient of v**power, as a polynomial in the other variables."""
        out = {}
        for m, c in self.terms.items():
            e = dict(m).get(v, 0)
            if e == power:
                rest = tuple((w, k) for w, k in m if w != v)
                out[rest] = out.get(rest, QQ(0)) + c
        return Polynomial._raw({m: c for m, c in out.items() if c})

    def degree_in(self, v: Variable) -> int:
        d = 0
        for m in self.terms:
            for w, e in m:
                if w == v:
                    d = max(d, e)
        return d

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        big, small = self.terms, other.terms
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for m, c in small.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, type(QQ(0)))):
            if not other:
                return Polynomial._raw({})
            q = QQ(other)
            return Polynomial._raw({m: c * q for m, c in self.terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = _merge_exponents(m1, m2)
                s = out.get(m)
                if s is None:
                    out[m] = c1 * c2
                else:
                    s = s + c1 * c2
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.terms == other.terms
        if isinstance(other, (int, type(QQ(0)))):
            return self.terms == Polynomial.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __reduce__(self):
        return (_poly_unpickle, (tuple(self.terms.items()),))

    def __bool__(self):
        return bool(self.terms)

    # -- substitution and evaluation -----------------------------------
    def substitute_poly(self, mapping: Mapping) -> "Polynomial":
        """Simultaneous substitution v -> Polynomial for v in mapping."""
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            got = cache.get(key)
            if got is None:
                got = mapping[v] ** e
                cache[key] = got
            return got

        out = Polynomial.zero()
        for m, c in self.terms.items():
            piece = Polynomial.const(c)
            for v, e in m:
                if v in mapping:
                    piece = piece * power(v, e)
                else:
                    piece = piece * Polynomial._raw({((v, e),): QQ(1)})
            out = out + piece
        return out

    def evaluate(self, point: Mapping):
        """Evaluate at a rational point; every variable must be assigned."""
        total = QQ(0)
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val = val * point[v] ** e
            total += val
        return total

    def rename(self, mapping: Mapping) -> "Polynomial":
        """Substitute variables by variables (bijective on its support)."""
        out = {}
        for m, c in self.terms.items():
            m2 = tuple(sorted(((mapping.get(v, v), e) for v, e in m)))
            out[m2] = out.get(m2, QQ(0)) + c
        return Polynomial({m: c for m, c in out.items()})

    # -- exact division -------------------------------------------------
    def divide_exact(self, q: "Polynomial") -> "Polynomial":
        """Return p/q when q divides exactly; raise DivisionNotExact otherwise."""
        if q.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if q.is_constant():
            inv = QQ(1) / q.constant_value()
            return self * inv
        if self.is_zero():
            return Polynomial.zero()
        qm, qc = q.leading()
        quot: dict = {}
        rem = dict(self.terms)
        while rem:
            m = min(rem, key=_grlex_key)
            c = rem[m]
            mm = _monomial_div(m, qm)
            if mm is None:
                raise DivisionNotExact("leading term %s not divisible" % (m,))
            cc = c / qc
            quot[mm] = quot.get(mm, QQ(0)) + cc
            # rem -= cc * mm * q
            for m2, c2 in q.terms.items():
                key = _merge_exponents(mm, m2)
                s = rem.get(key, QQ(0)) - cc * c2
                if s:
                    rem[key] = s
                else:
                    rem.pop(key, None)
        return Polynomial({m: c for m, c in quot.items()})

    def content_normalized(self):
        """Return (primitive polynomial with positive leading coeff, scale).

        self == scale * primitive.
        """
        if self.is_zero():
            return self, QQ(1)
        _, lead = self.leading()
        nums = [abs(_numerator(c)) for c in self.terms.values()]
        dens = [_denominator(c) for c in self.terms.values()]
        g = 0
        for n in nums:
            g = _gcd(g, n)
        l = 1
        for d in dens:
            l = l * d // _gcd(l, d)
        scale = QQ(g, l) if lead > 0 else -QQ(g, l)
        inv = QQ(1) / scale
        return Polynomial._raw({m: c * inv for m, c in self.terms.items()}), scale

    # -- display --------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in sorted(self.terms, key=_grlex_key):
            c = self.terms[m]
            mono = "*".join(
                var_name(v) + ("^%d" % e if e > 1 else "") for v, e in m
            )
            if mono:
                if c == 1:
                    bits.append(mono)
                elif c == -1:
                    bits.append("-" + mono)
                else:
                    bits.append("%s*%s" % (c, mono))
            else:
                bits.append(str(c))
        out = bits[0]
        for b in bits[1:]:
            out += " - " + b[1:] if b.startswith("-") else " + " + b
        return out

    __repr__ = __str__


def _poly_unpickle(items):
    return Polynomial._raw(dict(items))


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, type(QQ(0)))):
        return Polynomial.const(x)
    return NotImplemented


def _monomial_div(m, d):
    """m / d or None when some exponent would go negative."""
    dd = dict(m)
    for v, e in d:
        have = dd.get(v, 0) - e
        if have < 0:
            return None
        if have:
            dd[v] = have
        else:
            del dd[v]
    return tuple(sorted(dd.items()))


def _numerator(c):
    return int(c.numerator)


def _denominator(c):
    return int(c.denominator)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def poly_sum(items: Iterable[Polynomial]) -> Polynomial:
    out: dict = {}
    for p in items:
        for m, c in p.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
    return Polynomial._raw(out)


def poly_product(items: Sequence[Polynomial]) -> Polynomial:
    out = Polynomial.const(1)
    for p in items:
        out = out * p
    return out


# ---------------------------------------------------------------------------
# linear forms
# ---------------------------------------------------------------------------

def normalize_linear_form(form: Polynomial):
    """Canonical representative of a degree-1 form up to a rational scale.

    Returns (key, scale) with form == scale * key_polynomial and the key's
    coefficients primitive integers, positive on the graded-lex leading
    variable.  Used to detect proportional linear factors in denominators.
    """
    if form.degree() != 1 or not form.is_homogeneous():
        raise ValueError("not a homogeneous linear form: %s" % form)
    prim, scale = form.content_normalized()
    key = tuple(sorted((m[0][0], int(c)) for m, c in prim.terms.items()))
    return key, scale, prim


class FactoredDenominator:
    """Multiset of normalized linear forms with a rational scale."""

    __slots__ = ("forms", "scale")

    def __init__(self, forms: dict | None = None, scale=1):
        self.forms = dict(forms or {})  # key -> (multiplicity, Polynomial)
        self.scale = QQ(scale)

    def copy(self) -> "FactoredDenominator":
        d = FactoredDenominator()
        d.forms = dict(self.forms)
        d.scale = self.scale
        return d

    def __reduce__(self):
        return (_fden_unpickle, (tuple(self.forms.items()), self.scale))

    @staticmethod
    def from_linear_factors(factors: Iterable[Polynomial]) -> "FactoredDenominator":
        den = FactoredDenominator()
        for f in factors:
            key, scale, prim = normalize_linear_form(f)
            mult, _ = den.forms.get(key, (0, prim))
            den.forms[key] = (mult + 1, prim)
            den.scale = den.scale * scale
        return den

    def degree(self) -> int:
        return sum(mult for mult, _ in self.forms.values())

    def expand(self) -> Polynomial:
        out = Polynomial.const(self.scale)
        for mult, prim in self.forms.values():
            out = out * prim ** mult
        return out

    def lcm_cofactors(self, other: "FactoredDenominator"):
        """Return (lcm, self_cofactor_poly, other_cofactor_poly)."""
        lcm = FactoredDenominator()
        keys = set(self.forms) | set(other.forms)
        co_self = Polynomial.const(1)
        co_other = Polynomial.const(1)
        for key in sorted(keys):
            m1, prim = self.forms.get(key, (0, None))
            m2, prim2 = other.forms.get(key, (0, None))
            prim = prim if prim is not None else prim2
            m = max(m1, m2)
            lcm.forms[key] = (m, prim)
            if m > m1:
                co_self = co_self * prim ** (m - m1)
            if m > m2:
                co_other = co_other * prim ** (m - m2)
        lcm.scale = QQ(1)
        co_self = co_self * (QQ(1) / self.scale)
        co_other = co_other * (QQ(1) / other.scale)
        return lcm, co_self, co_other


def _fden_unpickle(items, scale):
    d = FactoredDenominator()
    d.forms = dict(items)
    d.scale = scale
    return d


class RationalFunction:
    """Quotient of polynomials, normalized so den is primitive with
    positive graded-lex leading coefficient.

    Reduction is lazy: `reduce()` first tries full exact division, then
    strips linear factors of the denominator when the factorization is
    known.  Equality testing cross-multiplies, so unreduced representatives
    still compare correctly.
    """

    __slots__ = ("num", "den", "den_factors")

    def __init__(self, num, den=None, den_factors=None):
        num = _coerce(num)
        if den is None:
            den = Polynomial.const(1)
        elif not isinstance(den, Polynomial):
            den = Polynomial.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial.const(1)
            den_factors = FactoredDenominator()
        else:
            prim, scale = den.content_normalized()
            if scale != 1:
                num = num * (QQ(1) / scale)
                den = prim
                if den_factors is not None:
                    den_factors = den_factors.copy()
                    den_factors.scale = QQ(1)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "den_factors", den_factors)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("RationalFunction is immutable")

    def __reduce__(self):
        return (RationalFunction._make, (self.num, self.den, self.den_factors))

    @staticmethod
    def from_factored(num: Polynomial, den: FactoredDenominator) -> "RationalFunction":
        return RationalFunction(num, den.expand(), den_factors=den)

    @staticmethod
    def const(c) -> "RationalFunction":
        return RationalFunction(Polynomial.const(c))

    @staticmethod
    def of_var(v: Variable) -> "RationalFunction":
        return RationalFunction(Polynomial.variable(v))

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_polynomial(self) -> Polynomial:
        if self.den.is_constant():
            return self.num * (QQ(1) / self.den.constant_value())
        reduced = self.reduce()
        if reduced.den.is_constant():
            return reduced.num * (QQ(1) / reduced.den.constant_value())
        raise DenominatorSurvives(
            "denominator %s does not cancel" % reduced.den
        )

    def is_zero(self) -> bool:
        return self.num.is_zero()

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den_factors is not None and other.den_factors is not None:
            lcm, co_s, co_o = self.den_factors.lcm_cofactors(other.den_factors)
            num = self.num * co_s + other.num * co_o
            return RationalFunction.from_factored(num, lcm)
        num = self.num * other.den + other.num * self.den
        return RationalFunction(num, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(-self.num, self.den, self.den_factors)

    def __sub__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce_rf(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        factors = None
        if self.den_factors is not None and other.den_factors is not None:
            factors = self.den_factors.copy()
            for key, (mult, prim) in other.den_factors.forms.items():
                m0, _ = factors.forms.get(key, (0, prim))
                factors.forms[key] = (m0 + mult, prim)
        return RationalFunction(
            self.num * other.num, self.den * other.den, den_factors=factors
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        other = _coerce_rf(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduce()
        return hash((r.num, r.den))

    @staticmethod
    def _make(num, den, factors):
        return RationalFunction(num, den, den_factors=factors)

    # -- reduction -----------------------------------------------------
    def reduce(self) -> "RationalFunction":
        if self.den.is_constant():
            return self
        if self.num.is_zero():
            return RationalFunction(Polynomial.zero())
        try:
            q = self.num.divide_exact(self.den)
            return RationalFunction(q)
        except DivisionNotExact:
            pass
        if self.den_factors is None:
            return self
        num = self.num
        left = FactoredDenominator()
        left.scale = self.den_factors.scale
        for key in sorted(self.den_factors.forms):
            mult, prim = self.den_factors.forms[key]
            while mult > 0:
                try:
                    num = num.divide_exact(prim)
                    mult -= 1
                except DivisionNotExact:
                    break
            if mult:
                left.forms[key] = (mult, prim)
        return RationalFunction.from_factored(num, left)

    def evaluate(self, point: Mapping):
        d = self.den.evaluate(point)
        if not d:
            raise ZeroDivisionError("denominator vanishes at point")
        return self.num.evaluate(point) / d

    def substitute(self, mapping: Mapping) -> "RationalFunction":
        num = substitute(self.num, mapping)
        den = substitute(self.den, mapping)
        return num / den

    def __str__(self):
        if self.den.is_constant():
            if self.den.constant_value() == 1:
                return str(self.num)
            return "(%s)/%s" % (self.num, self.den.constant_value())
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _coerce_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Polynomial):
        return RationalFunction(x)
    if isinstance(x, (int, type(QQ(0)))):
        return RationalFunction(Polynomial.const(x))
    return NotImplemented


# ---------------------------------------------------------------------------
# the four module operations
# ---------------------------------------------------------------------------

def exact_divide(p: Polynomial, q: Polynomial) -> Polynomial:
    """p/q with the guarantee r*q == p; DivisionNotExact otherwise."""
    return p.divide_exact(q)


def substitute(p: Polynomial, mapping: Mapping) -> RationalFunction:
    """Simultaneous substitution of variables by rational functions.

    Variables absent from the mapping are left alone.  When every image is
    polynomial this stays in the polynomial fast path.
    """
    if not mapping:
        return RationalFunction(p)
    poly_map = {}
    all_poly = True
    for v, val in mapping.items():
        if isinstance(val, Polynomial):
            poly_map[v] = val
        elif isinstance(val, RationalFunction):
            if val.is_polynomial():
                poly_map[v] = val.as_polynomial()
            else:
                all_poly = False
                break
        else:
            poly_map[v] = Polynomial.const(val)
    if all_poly:
        return RationalFunction(p.substitute_poly(poly_map))
    rf_map = {
        v: (val if isinstance(val, RationalFunction) else _coerce_rf(val))
        for v, val in mapping.items()
    }
    cache: dict = {}

    def power(v, e):
        key = (v, e)
        if key not in cache:
            cache[key] = rf_map[v] ** e
        return cache[key]

    total = RationalFunction.const(0)
    for m, c in p.terms.items():
        piece = RationalFunction.const(c)
        for v, e in m:
            if v in rf_map:
                piece = piece * power(v, e)
            else:
                piece = piece * RationalFunction(Polynomial._raw({((v, e),): QQ(1)}))
        total = total + piece
    return total.reduce()


def sum_fractions(terms: Sequence[RationalFunction]) -> Polynomial:
    """Exact sum of rational functions, asserted to be a polynomial.

    Terms carrying factored denominators are accumulated over an
    incrementally maintained least common denominator of linear forms,
    with periodic exact cancellation.  Raises DenominatorSurvives when the
    final denominator does not divide the numerator.
    """
    if not terms:
        raise ValueError("sum_fractions needs at least one term")
    if all(t.den_factors is not None for t in terms):
        acc_num = Polynomial.zero()
        acc_den = FactoredDenominator()
        for t in terms:
            lcm, co_acc, co_t = acc_den.lcm_cofactors(t.den_factors)
            acc_num = acc_num * co_acc + t.num * co_t
            acc_den = lcm
            if acc_num.is_zero():
                acc_den = FactoredDenominator()
        result = RationalFunction.from_factored(acc_num, acc_den).reduce()
    else:
        total = terms[0]
        for t in terms[1:]:
            total = total + t
        result = total.reduce()
    if not result.is_polynomial():
        raise DenominatorSurvives(
            "fraction sum is not polynomial; residual denominator %s"
            % result.den
        )
    return result.as_polynomial()


def symmetric_reduce(
    p: Polynomial,
    kind: int,
    n: int | None = None,
    symbol: Callable[[int], Variable] | None = None,
) -> Polynomial:
    """Rewrite p in the elementary symmetric symbols of one root alphabet.

    `kind` selects the alphabet (ALPHA, BETA, ...); `n` is the number of
    roots (default: largest index present).  Other variables pass through
    untouched.  The output uses symbol(i) for the i-th elementary symmetric
    polynomial; by default SYM variables named like "e1(a)".

    Raises NotSymmetric with a witnessing transposition if p is not
    invariant under the alphabet's adjacent transpositions.
    """
    alphabet = sorted(v for v in p.variables() if v[0] == kind)
    if n is None:
        n = max((v[1] for v in alphabet), default=0)
    roots = [(kind, i) for i in range(1, n + 1)]
    if symbol is None:
        tag = _KIND_NAMES.get(kind, "x")
        symbol = lambda i: sym("e%d(%s)" % (i, tag))  # noqa: E731

    for i in range(len(roots) - 1):
        swap = {roots[i]: roots[i + 1], roots[i + 1]: roots[i]}
        if p.rename(swap) != p:
            raise NotSymmetric(
                "not symmetric under swap of %s and %s"
                % (var_name(roots[i]), var_name(roots[i + 1])),
                transposition=(roots[i], roots[i + 1]),
            )

    # split monomials into alphabet part and passenger part
    groups: dict = {}
    for m, c in p.terms.items():
        inside = tuple((v, e) for v, e in m if v[0] == kind)
        outside = tuple((v, e) for v, e in m if v[0] != kind)
        groups.setdefault(outside, {})[inside] = c

    elem = [None] + [_elementary(roots, i) for i in range(1, n + 1)]
    out = Polynomial.zero()
    for outside, inner_terms in groups.items():
        reduced = _reduce_symmetric_part(
            Polynomial(inner_terms), roots, elem, symbol
        )
        out = out + reduced * Polynomial._raw({outside: QQ(1)})
    return out


def _elementary(roots: Sequence[Variable], k: int) -> Polynomial:
    terms = {}
    for combo in itertools.combinations(roots, k):
        terms[tuple((v, 1) for v in combo)] = QQ(1)
    return Polynomial._raw(terms)


def _reduce_symmetric_part(p, roots, elem, symbol):
    """Classic elementary-symmetric rewriting by leading-exponent descent."""
    n = len(roots)
    out = Polynomial.zero()
    while not p.is_zero():
        m, c = p.leading()
        exps = dict(m)
        lam = [exps.get(v, 0) for v in roots]
        if any(lam[i] < lam[i + 1] for i in range(n - 1)):
            raise NotSymmetric("leading exponent vector not dominant: %s" % (m,))
        sym_mono = Polynomial.const(c)
        correction = Polynomial.const(c)
        for i in range(n):
            e = lam[i] - (lam[i + 1] if i + 1 < n else 0)
            if e:
                sym_mono = sym_mono * Polynomial.variable(symbol(i + 1)) ** e
                correction = correction * elem[i + 1] ** e
        out = out + sym_mono
        p = p - correction
    return out


def expand_symmetric(p: Polynomial, kind: int, n: int,
                     symbol: Callable[[int], Variable] | None = None) -> Polynomial:
    """Inverse of symmetric_reduce: substitute e_i symbols by root expansions."""
    if symbol is None:
        tag = _KIND_NAMES.get(kind, "x")
        symbol = lambda i: sym("e%d(%s)" % (i, tag))  # noqa: E731
    roots = [(kind, i) for i in range(1, n + 1)]
    mapping = {symbol(i): _elementary(roots, i) for i in range(1, n + 1)}
    return p.substitute_poly(mapping)


def elementary_symmetric(kind: int, n: int, k: int) -> Polynomial:
    """e_k of the first n roots of an alphabet."""
    return _elementary([(kind, i) for i in range(1, n + 1)], k)
