"""Classes of loci of quadric-bundle maps with degenerate kernels.

Setting: a map of bundles phi from Sym^2(E) to F, ranks e and f.  The locus
where Ker(phi) contains a quadric of corank >= r has an equivariant class in
the Chern roots a_1..a_e, b_1..b_f, computed here three independent ways:

* ``localization_class``   -- the fixed-point sum over pairs (H, gamma) of a
  d-subset H of the Sym^2 weight set W and a marked weight gamma in H, with
  tangent-weight denominators (d = C(e+1,2) - f).
* ``residue_divisor_class`` -- the constant-term (residue at infinity) form
  of the same class, expanded in auxiliary variables z, u_1..u_d; only the
  divisorial case is needed, where the answer has degree 1.
* ``closed_divisor_class``  -- the divisorial closed form
  A_e^r (c1(F) - (2f/e) c1(E)).

The three must agree exactly; the test suite enforces it.

Also here: projectivization of an invariant-cone class and its fixed-point
restrictions, and the two presentations of the degenerate-pencil
(discriminant) divisor class.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import (
    ALPHA,
    BETA,
    SYM,
    DenominatorSurvives,
    FactoredDenominator,
    Polynomial,
    QQ,
    RationalFunction,
    Variable,
    _merge_exponents,
    alpha,
    beta,
    elementary_symmetric,
    gamma_var,
    sym,
    symmetric_reduce,
    xi,
    zvar,
)
from .symfunc import ChernSeries, a_const, sym_degeneracy_class


class PreconditionViolated(Exception):
    pass


class NotDivisorial(Exception):
    pass


class ScalarConditionViolated(Exception):
    pass


def c1E() -> Polynomial:
    return Polynomial.variable(sym("c1E"))


def c1F() -> Polynomial:
    return Polynomial.variable(sym("c1F"))


# ---------------------------------------------------------------------------
# weight sets and scalar data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WeightSet:
    """Ordered list of degree-1 weight forms of a torus representation."""

    forms: tuple

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i):
        return self.forms[i]


@dataclass(frozen=True)
class ScalarData:
    """Integers r_1..r_k and r_total witnessing that a representation
    contains the scalars: sum_i r_i s_{j,i} = r_total for every weight j."""

    r_weights: tuple
    r_total: int

    def __post_init__(self):
        if self.r_total == 0:
            raise ValueError("r_total must be nonzero")


def sym2_weights(e: int) -> WeightSet:
    """Weights a_i + a_j (i <= j, lexicographic) of Sym^2 of a rank-e space."""
    if e < 1:
        raise PreconditionViolated("need e >= 1")
    forms = []
    for i in range(1, e + 1):
        for j in range(i, e + 1):
            forms.append(Polynomial.variable(alpha(i)) + Polynomial.variable(alpha(j)))
    return WeightSet(tuple(forms))


def _validate_scalars(weights: WeightSet, scalars: ScalarData, vars_: list):
    for w in weights:
        total = 0
        terms = dict(w.terms)
        for rv, v in zip(scalars.r_weights, vars_):
            coeff = terms.get(((v, 1),), QQ(0))
            total += rv * coeff
        if total != scalars.r_total:
            raise ScalarConditionViolated(
                "weight %s pairs to %s, expected %s" % (w, total, scalars.r_total)
            )


def projectivize(cls: Polynomial, scalars: ScalarData, weights: WeightSet) -> Polynomial:
    """Class of the projectivized cone: substitute a_i -> a_i - (r_i/r) xi."""
    vars_ = [alpha(i) for i in range(1, len(scalars.r_weights) + 1)]
    _validate_scalars(weights, scalars, vars_)
    xv = Polynomial.variable(xi())
    mapping = {
        v: Polynomial.variable(v) - QQ(rv, scalars.r_total) * xv
        for v, rv in zip(vars_, scalars.r_weights)
    }
    return cls.substitute_poly(mapping)


def fixed_point_restriction(
    cls: Polynomial, weights: WeightSet, j: int, scalars: ScalarData
) -> Polynomial:
    """Restriction to the j-th coordinate fixed point: xi specializes to the
    j-th weight, so a_i -> a_i - (r_i/r) w_j."""
    vars_ = [alpha(i) for i in range(1, len(scalars.r_weights) + 1)]
    _validate_scalars(weights, scalars, vars_)
    wj = weights[j]
    mapping = {
        v: Polynomial.variable(v) - QQ(rv, scalars.r_total) * wj
        for v, rv in zip(vars_, scalars.r_weights)
    }
    return cls.substitute_poly(mapping)


# ---------------------------------------------------------------------------
# localization sum
# ---------------------------------------------------------------------------

def _check_loc_preconditions(e: int, f: int, r: int):
    if not 1 <= r <= e:
        raise PreconditionViolated("need 1 <= r <= e")
    if f < 1:
        raise PreconditionViolated("need f >= 1")
    d = comb(e + 1, 2) - f
    if not 1 <= d <= comb(r + 1, 2):
        raise PreconditionViolated(
            "d = C(e+1,2) - f = %d must lie in [1, C(r+1,2) = %d]"
            % (d, comb(r + 1, 2))
        )
    return d


def target_degree(e: int, f: int, r: int) -> int:
    """Codimension of the locus = degree of its class."""
    d = comb(e + 1, 2) - f
    return comb(r + 1, 2) - d + 1


def localization_class(
    e: int,
    f: int,
    r: int,
    strategy: str = "auto",
    jobs: int = 1,
    subset_order: Sequence[int] | None = None,
) -> Polynomial:
    """Fixed-point sum for the corank->=r locus, as a polynomial in the
    Chern roots a_1..a_e, b_1..b_f.

    strategy:
      "direct" -- exact rational-function summation over a maintained least
                  common denominator of linear forms (the denominator of
                  every fixed-point term is such a product).  The symmetric
                  functions of the b-roots are carried as formal symbols of
                  bounded weight, which keeps the numerators small.
      "lines"  -- exact evaluation of the sum at deterministic rational
                  points plus reconstruction in the elementary-symmetric
                  basis forced by the (S_e x S_f)-symmetry and the
                  homogeneity degree of every term.  Used when the common
                  denominator is too large to expand; over-determined and
                  re-verified at fresh points, so an inconsistency (the sum
                  failing to be polynomial) raises DenominatorSurvives.
      "auto"   -- pick by size.

    `subset_order` permutes the subset enumeration (the result must not
    depend on it; tested).
    """
    d = _check_loc_preconditions(e, f, r)
    W = sym2_weights(e)
    n_subsets = comb(len(W), d)
    if strategy == "auto":
        # the denominator lattice stays small enough for fully symbolic
        # accumulation only for a rank-3 source; beyond that the
        # evaluation/reconstruction path is exact and much faster
        strategy = "direct" if (e <= 3 and n_subsets * d <= 200) else "lines"
    if strategy == "direct":
        return _localization_direct(e, f, r, d, W, jobs, subset_order)
    if strategy == "lines":
        return _localization_points(e, f, r, d, W, jobs, subset_order)
    raise ValueError("unknown strategy %r" % strategy)


def _h_poly(r: int, e: int) -> Polynomial:
    return sym_degeneracy_class(r, e)


def _fvar(m: int) -> Variable:
    return sym("F%d" % m)


def _b_factor_symbolic(delta: Polynomial, f: int, cap: int) -> Polynomial:
    """prod_j (b_j - delta) written in the symbols F_m = e_m(b-roots),
    keeping only F-weight <= cap (higher sectors cannot reach the answer's
    homogeneity degree)."""
    out = Polynomial.zero()
    neg = -delta
    power = [Polynomial.const(1)]
    for _ in range(f):
        power.append(power[-1] * neg)
    for m in range(0, min(f, cap) + 1):
        fm = Polynomial.variable(_fvar(m)) if m else Polynomial.const(1)
        out = out + fm * power[f - m]
    return out


def _fweight(mono) -> int:
    w = 0
    for v, exp in mono:
        if v[0] == SYM and v[1].startswith("F"):
            w += int(v[1][1:]) * exp
    return w


def _mul_fcapped(p: Polynomial, q: Polynomial, cap: int) -> Polynomial:
    out: dict = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            m = _merge_exponents(m1, m2)
            if _fweight(m) > cap:
                continue
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


def _expand_fvars(p: Polynomial, f: int) -> Polynomial:
    mapping = {}
    for v in p.variables():
        if v[0] == SYM and v[1].startswith("F"):
            m = int(v[1][1:])
            mapping[v] = elementary_symmetric(BETA, f, m)
    return p.substitute_poly(mapping) if mapping else p


def _loc_terms(e, f, r, d, W, subset_order):
    """Yield the (H, gamma) pairs in a deterministic order."""
    idx = list(range(len(W)))
    if subset_order is not None:
        idx = [idx[i] for i in subset_order]
    for combo in itertools.combinations(idx, d):
        for g in combo:
            yield combo, g


def _localization_direct(e, f, r, d, W, jobs, subset_order):
    cap = target_degree(e, f, r)
    h = _h_poly(r, e)
    avars = [alpha(i) for i in range(1, e + 1)]
    half = QQ(1, 2)
    bfac_cache = {
        i: _b_factor_symbolic(W[i], f, cap) for i in range(len(W))
    }

    def make_term(combo, g):
        gam = W[g]
        shift = {v: Polynomial.variable(v) - half * gam for v in avars}
        num = h.substitute_poly(shift)
        for i in combo:
            num = _mul_fcapped(num, bfac_cache[i], cap)
        den_forms = []
        for i in range(len(W)):
            if i != g:
                den_forms.append(W[i] - gam)
        comp = [i for i in range(len(W)) if i not in combo]
        for i in combo:
            if i == g:
                continue
            for j in comp:
                den_forms.append(W[j] - W[i])
        return RationalFunction.from_factored(
            num, FactoredDenominator.from_linear_factors(den_forms)
        )

    pairs = list(_loc_terms(e, f, r, d, W, subset_order))
    terms = _parallel_map(lambda p: make_term(*p), pairs, jobs)
    from .algebra import sum_fractions

    total = sum_fractions(terms)
    result = _expand_fvars(total, f)
    _check_class_shape(result, e, f, r)
    return result


def _check_class_shape(p: Polynomial, e: int, f: int, r: int):
    deg = target_degree(e, f, r)
    if not p.is_homogeneous(deg) and not p.is_zero():
        raise AssertionError(
            "class for (e,f,r)=(%d,%d,%d) is not homogeneous of degree %d"
            % (e, f, r, deg)
        )


def _symmetric_basis(e: int, f: int, deg: int):
    """Monomials in e_i(alpha), e_j(beta) of total weighted degree `deg`."""

    def weighted(parts_max: int, total: int):
        # partitions of `total` into parts <= parts_max, as multiplicity dicts
        def rec(remaining, largest):
            if remaining == 0:
                yield {}
                return
            for part in range(min(largest, remaining), 0, -1):
                for rest in rec(remaining - part, part):
                    out = dict(rest)
                    out[part] = out.get(part, 0) + 1
                    yield out

        yield from rec(total, parts_max)

    basis = []
    for p in range(deg + 1):
        q = deg - p
        for pa in weighted(e, p):
            for pb in weighted(f, q):
                basis.append((tuple(sorted(pa.items())), tuple(sorted(pb.items()))))
    return basis


def _basis_polynomial(item, e: int, f: int) -> Polynomial:
    pa, pb = item
    out = Polynomial.const(1)
    for part, mult in pa:
        out = out * elementary_symmetric(ALPHA, e, part) ** mult
    for part, mult in pb:
        out = out * elementary_symmetric(BETA, f, part) ** mult
    return out


def _elem_values(values, k: int):
    """Elementary symmetric values e_1..e_k of a list of numbers."""
    es = [QQ(1)] + [QQ(0)] * k
    for v in values:
        for i in range(min(k, len(values)), 0, -1):
            es[i] = es[i] + v * es[i - 1]
    return es


def _localization_points(e, f, r, d, W, jobs, subset_order):
    deg = target_degree(e, f, r)
    h = _h_poly(r, e)
    avars = [alpha(i) for i in range(1, e + 1)]
    bvars = [beta(j) for j in range(1, f + 1)]
    basis = _symmetric_basis(e, f, deg)
    n_unknown = len(basis)
    rng = random.Random(0xC0FFEE + 1000003 * e + 1009 * f + r)
    pairs = list(_loc_terms(e, f, r, d, W, subset_order))

    def sample_point():
        while True:
            avals = [QQ(rng.randint(10**3, 10**6)) for _ in range(e)]
            wvals = [wf.evaluate(dict(zip(avars, avals))) for wf in W]
            if len(set(wvals)) == len(wvals):
                bvals = [QQ(rng.randint(10**3, 10**6)) for _ in range(f)]
                return avals, bvals, wvals

    def sum_at(avals, bvals, wvals):
        point = dict(zip(avars, avals))
        # per-weight data reused across terms
        bprod = []
        for wv in wvals:
            acc = QQ(1)
            for bv in bvals:
                acc *= bv - wv
            bprod.append(acc)
        hval = []
        for wv in wvals:
            shifted = {v: point[v] - wv / 2 for v in avars}
            hval.append(h.evaluate(shifted))
        total = QQ(0)
        for combo, g in pairs:
            num = hval[g]
            for i in combo:
                num = num * bprod[i]
            den = QQ(1)
            wg = wvals[g]
            for i in range(len(W)):
                if i != g:
                    den *= wvals[i] - wg
            comp = [i for i in range(len(W)) if i not in combo]
            for i in combo:
                if i == g:
                    continue
                wi = wvals[i]
                for j in comp:
                    den *= wvals[j] - wi
            total += num / den
        return total

    def basis_row(avals, bvals):
        ea = _elem_values(avals, e)
        eb = _elem_values(bvals, f)
        row = []
        for pa, pb in basis:
            val = QQ(1)
            for part, mult in pa:
                val *= ea[part] ** mult
            for part, mult in pb:
                val *= eb[part] ** mult
            row.append(val)
        return row

    points = [sample_point() for _ in range(n_unknown + 4)]
    evals = _parallel_map(lambda pt: sum_at(*pt), points, jobs)
    rows = [basis_row(avals, bvals) for avals, bvals, _ in points]
    for _ in range(3):
        try:
            coeffs = _solve_overdetermined(rows, evals)
            break
        except _RankDeficient:
            # a degenerate sample; widen the point set and try again
            extra = [sample_point() for _ in range(n_unknown)]
            evals = evals + _parallel_map(lambda pt: sum_at(*pt), extra, jobs)
            rows = rows + [basis_row(avals, bvals) for avals, bvals, _ in extra]
            points = points + extra
    else:
        raise AssertionError("interpolation system stayed rank-deficient")
    if coeffs is None:
        raise DenominatorSurvives(
            "localization sum for (e,f,r)=(%d,%d,%d) is inconsistent with a "
            "polynomial of its homogeneity degree" % (e, f, r)
        )
    result = Polynomial.zero()
    for c, item in zip(coeffs, basis):
        if c:
            result = result + c * _basis_polynomial(item, e, f)

    # re-verify at fresh points
    for _ in range(3):
        avals, bvals, wvals = sample_point()
        direct = sum_at(avals, bvals, wvals)
        got = result.evaluate(
            {**dict(zip(avars, avals)), **dict(zip(bvars, bvals))}
        )
        if direct != got:
            raise DenominatorSurvives(
                "localization sum disagrees with reconstructed polynomial "
                "at a verification point"
            )
    _check_class_shape(result, e, f, r)
    return result


class _RankDeficient(Exception):
    pass


def _solve_overdetermined(rows, rhs):
    """Exact least-squares-free solve: Gaussian elimination on the full
    overdetermined system; returns None if inconsistent, raises
    _RankDeficient if the solution is not unique."""
    m = len(rows)
    if not m:
        return []
    n = len(rows[0])
    aug = [list(row) + [val] for row, val in zip(rows, rhs)]
    pivots = []
    row_at = 0
    for col in range(n):
        piv = None
        for i in range(row_at, m):
            if aug[i][col]:
                piv = i
                break
        if piv is None:
            continue
        aug[row_at], aug[piv] = aug[piv], aug[row_at]
        inv = QQ(1) / aug[row_at][col]
        aug[row_at] = [x * inv for x in aug[row_at]]
        for i in range(m):
            if i != row_at and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[row_at])]
        pivots.append(col)
        row_at += 1
    # inconsistent?
    for i in range(row_at, m):
        if aug[i][n]:
            return None
    if len(pivots) != n:
        raise _RankDeficient("interpolation system needs more points")
    sol = [QQ(0)] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n]
    return sol


_PARALLEL_FN = None


def _pool_call(item):
    return _PARALLEL_FN(item)


def _parallel_map(fn, items, jobs):
    """Deterministic map: results come back in input order regardless of
    worker scheduling.  Uses fork workers so `fn` may be a closure."""
    items = list(items)
    if jobs is None or jobs <= 1 or len(items) < 8:
        return [fn(x) for x in items]
    global _PARALLEL_FN
    _PARALLEL_FN = fn
    try:
        import multiprocessing as mp

        chunk = max(1, len(items) // (4 * jobs))
        with mp.get_context("fork").Pool(jobs) as pool:
            return pool.map(_pool_call, items, chunksize=chunk)
    finally:
        _PARALLEL_FN = None


# ---------------------------------------------------------------------------
# divisorial closed form and residue form
# ---------------------------------------------------------------------------

def divisorial_f(e: int, r: int) -> int:
    return comb(e + 1, 2) - comb(r + 1, 2)


def closed_divisor_class(e: int, r: int) -> Polynomial:
    """A_e^r (c1F - (2f/e) c1E) in the symbols c1E, c1F."""
    if not 0 <= r <= e or e < 1:
        raise PreconditionViolated("need e >= 1 and 0 <= r <= e")
    f = divisorial_f(e, r)
    if f < 1:
        raise NotDivisorial(
            "f = C(e+1,2) - C(r+1,2) = %d is not >= 1; the locus is not a "
            "virtual divisor" % f
        )
    A = a_const(e, r)
    return A * c1F() - A * QQ(2 * f, e) * c1E()


def chern_difference(e: int, f: int, order: int) -> ChernSeries:
    """Chern series of the virtual difference F-dual minus Sym^2(E)-dual,
    i.e. prod_j(1 - b_j t) / prod_{w in W}(1 - w t) to the given order."""
    if order < 0:
        raise ValueError("order must be >= 0")
    bneg = [-Polynomial.variable(beta(j)) for j in range(1, f + 1)]
    wneg = [-w for w in sym2_weights(e)]
    num = ChernSeries.from_roots(bneg, order)
    den = ChernSeries.from_roots(wneg, order)
    return num.quotient_by(den, order)


def _antisym_coeff_table(d: int):
    """Full expansion of prod_{i<j} (1 - u_i/u_j) as exponent-vector -> coeff.

    Exponents are relative: entry k of the vector is the power of u_{k+1}
    (possibly negative).  Fine for d <= 6.
    """
    table = {(0,) * d: QQ(1)}
    for i in range(d):
        for j in range(i + 1, d):
            new = dict(table)
            for vec, c in table.items():
                lst = list(vec)
                lst[i] += 1
                lst[j] -= 1
                key = tuple(lst)
                s = new.get(key, QQ(0)) - c
                if s:
                    new[key] = s
                else:
                    new.pop(key, None)
            table = new
    return table


def _antisym_coeff(vec) -> QQ:
    """Coefficient of u^vec in prod_{i<j}(1 - u_i/u_j), via the Vandermonde
    determinant: the product equals det(u_j^{sigma(j)-j}) summed with signs,
    so the coefficient is the sign of j -> vec_j + j when that is a
    permutation, else 0."""
    d = len(vec)
    images = [vec[j] + j for j in range(d)]
    if sorted(images) != list(range(d)):
        return QQ(0)
    sign = 1
    seen = [False] * d
    for start in range(d):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = images[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return QQ(sign)


def residue_divisor_class(e: int, r: int, basis: str = "chern") -> Polynomial:
    """Divisorial class via the residue-at-infinity constant-term formula.

    Expands  (-1)^(d+1) { h_r|_{a -> a - z/2} * prod_{i<j}(1 - u_i/u_j)
                          / (z^(d-1) prod_j (1 - u_j/z))
                          * prod_j sum_i c_i(Fdual - Sym2Edual) u_j^{-i} }
    at the constant term in z and u_1..u_d, truncated by homogeneity: the
    answer has degree 1, so only z-powers d-1 and d of the shifted class and
            c-series orders 0 and 1 can contribute.
    """
    if not 0 <= r <= e or e < 1:
        raise PreconditionViolated("need e >= 1 and 0 <= r <= e")
    f = divisorial_f(e, r)
    if f < 1:
        raise NotDivisorial("not in the divisorial range")
    d = comb(e + 1, 2) - f  # = C(r+1,2)
    h = _h_poly(r, e)
    z = zvar()
    half = QQ(1, 2)
    shift = {
        alpha(i): Polynomial.variable(alpha(i)) - half * Polynomial.variable(z)
        for i in range(1, e + 1)
    }
    h_sub = h.substitute_poly(shift)
    c_series = chern_difference(e, f, 1)
    c1 = c_series.c(1)

    if d <= 6:
        vtable = _antisym_coeff_table(d)
        vcoeff = lambda vec: vtable.get(vec, QQ(0))  # noqa: E731
    else:
        vcoeff = _antisym_coeff

    total = Polynomial.zero()
    # z-power d-1 of h_sub: no u_j/z insertions, all c_0
    p0 = h_sub.coefficient_of(z, d - 1)
    if not p0.is_zero():
        total = total + p0 * vcoeff((0,) * d)
    # z-power d: one u_{j0}/z insertion, one c_1 (u-balance kills the rest)
    p1 = h_sub.coefficient_of(z, d)
    if not p1.is_zero():
        acc = QQ(0)
        for j0 in range(d):
            for m in range(d):
                vec = [0] * d
                vec[m] += 1
                vec[j0] -= 1
                acc += vcoeff(tuple(vec))
        total = total + acc * (p1 * c1)
    sign = QQ(1) if (d + 1) % 2 == 0 else QQ(-1)
    result = sign * total
    if basis == "roots":
        return result
    return to_chern_symbols(result, e, f)


def to_chern_symbols(p: Polynomial, e: int, f: int) -> Polynomial:
    """Rewrite a bi-symmetric polynomial in the symbols ciE, cjF."""
    p = symmetric_reduce(p, ALPHA, e, symbol=lambda i: sym("c%dE" % i))
    p = symmetric_reduce(p, BETA, f, symbol=lambda j: sym("c%dF" % j))
    return p


# ---------------------------------------------------------------------------
# degenerate pencils (discriminant loci)
# ---------------------------------------------------------------------------

def pencil_class_sub(e: int) -> Polynomial:
    """Class of tangent 2-planes in the sub-bundle presentation:
    (e-1)(4 sum a_i - e (g_1 + g_2))."""
    if e < 2:
        raise PreconditionViolated("need e >= 2")
    suma = sum(
        (Polynomial.variable(alpha(i)) for i in range(1, e + 1)), Polynomial.zero()
    )
    sumg = Polynomial.variable(gamma_var(1)) + Polynomial.variable(gamma_var(2))
    return (e - 1) * (4 * suma - e * sumg)


def pencil_class_quot(e: int) -> Polynomial:
    """Quotient-bundle presentation: (e-1)(e sum b_i - (e^2+e-4) sum a_i),
    with N = C(e+1,2) - 2 quotient roots."""
    if e < 2:
        raise PreconditionViolated("need e >= 2")
    n_beta = comb(e + 1, 2) - 2
    suma = sum(
        (Polynomial.variable(alpha(i)) for i in range(1, e + 1)), Polynomial.zero()
    )
    sumb = sum(
        (Polynomial.variable(beta(j)) for j in range(1, n_beta + 1)),
        Polynomial.zero(),
    )
    return (e - 1) * (e * sumb - (e * e + e - 4) * suma)


def pencil_sub_from_quot(e: int) -> Polynomial:
    """Rewrite the sub-presentation using g_1 + g_2 =
    (e+1) sum a_i - sum b_j (exactness of 0 -> S -> Sym^2 E -> Q -> 0)."""
    n_beta = comb(e + 1, 2) - 2
    suma = sum(
        (Polynomial.variable(alpha(i)) for i in range(1, e + 1)), Polynomial.zero()
    )
    sumb = sum(
        (Polynomial.variable(beta(j)) for j in range(1, n_beta + 1)),
        Polynomial.zero(),
    )
    g1 = gamma_var(1)
    g2 = gamma_var(2)
    # split the gamma-sum between the two roots; only the sum matters
    mapping = {
        g1: (e + 1) * suma - sumb,
        g2: Polynomial.zero(),
    }
    return pencil_class_sub(e).substitute_poly(mapping)


def discriminant_monomial_weight(e: int) -> Polynomial:
    """Torus weight of the monomial (prod_i K_ii)^(e-1) (prod_i L_ii)^(e-1)
    of the discriminant of det(x K + L): K_ii has weight 2 a_i - g_1 and
    L_ii has weight 2 a_i - g_2.  Must equal pencil_class_sub(e)."""
    total = Polynomial.zero()
    for i in range(1, e + 1):
        total = total + (2 * Polynomial.variable(alpha(i)) - Polynomial.variable(gamma_var(1)))
        total = total + (2 * Polynomial.variable(alpha(i)) - Polynomial.variable(gamma_var(2)))
    return (e - 1) * total
