"""Truncated power series, series substitution, resultant elimination,
and exact linear algebra over field-like scalars.

Scalars are CycNum, Poly, or GenericScalar; series track their
truncation order so that reading an order beyond the known precision is
an error rather than a silent wrong answer.
"""

from .cyclo import CycNum, Z5
from .generic import Poly, GenericScalar, _as_rational

INF = float("inf")


class PrecisionError(Exception):
    """A quantity was requested beyond the known truncation order."""


def _wrap(c):
    if isinstance(c, (CycNum, Poly, GenericScalar)):
        return c
    q = _as_rational(c)
    if q is None:
        raise TypeError("bad series coefficient %r" % (c,))
    return Z5.from_rational(q)


class PowerSeries:
    """A series sum c_k t^k known exactly below its truncation order.

    trunc is None for exact polynomials, otherwise coefficients are
    valid for exponents < trunc.
    """

    __slots__ = ("var", "coeffs", "trunc")

    def __init__(self, var, coeffs, trunc=None):
        self.var = var
        if trunc is not None:
            coeffs = {k: c for k, c in coeffs.items() if k < trunc}
        self.coeffs = {k: c for k, c in coeffs.items() if not c.is_zero()}
        self.trunc = trunc

    @staticmethod
    def from_terms(var, terms, trunc=None):
        return PowerSeries(var, {k: _wrap(c) for k, c in dict(terms).items()}, trunc)

    @staticmethod
    def monomial(var, exp, coeff=1):
        return PowerSeries.from_terms(var, {exp: coeff})

    # -- precision bookkeeping ---------------------------------------------
    def _ord_bound(self):
        """A lower bound for the order: min support, else trunc, else +inf."""
        if self.coeffs:
            return min(self.coeffs)
        return INF if self.trunc is None else self.trunc

    def truncate(self, trunc):
        t = trunc if self.trunc is None else min(self.trunc, trunc)
        return PowerSeries(self.var, self.coeffs, t)

    def coefficient(self, k):
        if self.trunc is not None and k >= self.trunc:
            raise PrecisionError("coefficient of %s^%d beyond truncation %d" % (self.var, k, self.trunc))
        c = self.coeffs.get(k)
        return Z5.zero() if c is None else c

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other):
        if self.var != other.var:
            raise ValueError("series in different variables")

    def __add__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.from_terms(self.var, {0: other})
        self._check(other)
        t = self.trunc
        if other.trunc is not None:
            t = other.trunc if t is None else min(t, other.trunc)
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return PowerSeries(self.var, out, t)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries(self.var, {k: -c for k, c in self.coeffs.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries.from_terms(self.var, {0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PowerSeries):
            c = _wrap(other)
            return PowerSeries(self.var, {k: v * c for k, v in self.coeffs.items()}, self.trunc)
        self._check(other)
        t = None
        oa, ob = self._ord_bound(), other._ord_bound()
        cands = []
        if self.trunc is not None:
            cands.append(self.trunc + ob)
        if other.trunc is not None:
            cands.append(other.trunc + oa)
        if cands:
            t = min(cands)
            t = None if t == INF else int(t)
        out = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                k = i + j
                if t is not None and k >= t:
                    continue
                p = a * b
                s = out.get(k)
                out[k] = p if s is None else s + p
        return PowerSeries(self.var, out, t)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = PowerSeries.from_terms(self.var, {0: 1})
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ----------------------------------------------------------
    def is_structurally_zero(self):
        return not self.coeffs and self.trunc is None

    def order(self, structural_ok=False):
        """Smallest exponent with nonzero coefficient.

        Raises PrecisionError for a truncated series with no visible
        terms; returns INF for an exact zero when structural_ok is set.
        """
        if self.coeffs:
            return min(self.coeffs)
        if self.trunc is None:
            if structural_ok:
                return INF
            raise ValueError("order of the zero series")
        raise PrecisionError("series vanishes to truncation %d" % self.trunc)

    def support(self):
        return sorted(self.coeffs)

    def inflate(self, d):
        """Substitute t -> t^d."""
        t = None if self.trunc is None else self.trunc * d
        return PowerSeries(self.var, {k * d: c for k, c in self.coeffs.items()}, t)

    def deflate(self, d):
        """Extract the series in s = t^d; support must lie in d*Z."""
        if any(k % d for k in self.coeffs):
            raise ValueError("support not divisible by %d" % d)
        t = None if self.trunc is None else -(-self.trunc // d)
        return PowerSeries(self.var, {k // d: c for k, c in self.coeffs.items()}, t)

    def map_coeffs(self, f):
        return PowerSeries(self.var, {k: f(c) for k, c in self.coeffs.items()}, self.trunc)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.var == other.var and self.trunc == other.trunc and (self - other).coeffs == {}

    def __repr__(self):
        parts = ["(%r)*%s^%d" % (c, self.var, k) for k, c in sorted(self.coeffs.items())]
        body = " + ".join(parts) if parts else "0"
        if self.trunc is not None:
            body += " + O(%s^%d)" % (self.var, self.trunc)
        return body


def t_order(s, structural_ok=False):
    return s.order(structural_ok=structural_ok)


def substitute_series(poly, assignment, trunc=None):
    """Compose a Poly with PowerSeries values for (some of) its variables.

    Non-series values stay coefficients.  Powers are cached.
    """
    var = None
    for v in assignment.values():
        if isinstance(v, PowerSeries):
            var = v.var
            break
    if var is None:
        raise ValueError("no series in assignment")
    cache = {}

    def power(name, e):
        got = cache.get((name, e))
        if got is None:
            got = assignment[name] ** e
            if trunc is not None:
                got = got.truncate(trunc)
            cache[(name, e)] = got
        return got

    total = PowerSeries(var, {})
    for mono, coeff in poly.terms.items():
        term = None
        scal = coeff
        for v, e in mono:
            val = assignment.get(v)
            if isinstance(val, PowerSeries):
                p = power(v, e)
                term = p if term is None else (term * p if trunc is None else (term * p).truncate(trunc))
            elif val is not None:
                scal = scal * (val ** e)
            else:
                scal = scal * Poly.var(v, e)
        if term is None:
            term = PowerSeries.from_terms(var, {0: 1})
        total = total + term * scal
    if trunc is not None:
        total = total.truncate(trunc)
    return total


# -- elimination -------------------------------------------------------------


def det_bareiss(mat):
    """Fraction-free determinant of a square matrix of Polys."""
    n = len(mat)
    if n == 0:
        return Poly.const(1)
    m = [list(row) for row in mat]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return Poly.zero()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Poly.zero()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def resultant(p, q, var):
    """Resultant of two Polys with respect to var, via Sylvester/Bareiss."""
    a = p.as_univariate(var)
    b = q.as_univariate(var)
    da, db = len(a) - 1, len(b) - 1
    if da < 0 or db < 0:
        return Poly.zero()
    n = da + db
    zero = Poly.zero()
    mat = []
    for i in range(db):
        row = [zero] * n
        for j, c in enumerate(a):
            row[i + da - j] = c
        mat.append(row)
    for i in range(da):
        row = [zero] * n
        for j, c in enumerate(b):
            row[i + db - j] = c
        mat.append(row)
    return det_bareiss(mat)


def eliminate_t(xs, ys, u="u", v="v"):
    """Implicit equation of the parametrized branch (x(t), y(t)).

    xs, ys must be exact polynomial series with Poly/CycNum coefficients.
    Returns a Poly in u, v (and any formal moduli), primitive and with a
    canonical leading coefficient.
    """
    if xs.trunc is not None or ys.trunc is not None:
        raise ValueError("eliminate_t needs exact polynomial parametrizations")
    tv = xs.var

    def to_poly(s, outvar):
        p = Poly.var(outvar)
        for k, c in s.coeffs.items():
            cc = c if isinstance(c, Poly) else Poly.const(c)
            p = p - cc * Poly.var(tv, k) if k else p - cc
        return p

    res = resultant(to_poly(xs, u), to_poly(ys, v), tv)
    return canonical_equation(res)


def canonical_equation(p):
    """Scale a nonzero Poly so its lex-leading coefficient is one."""
    if p.is_zero():
        return p
    return p.monic()


# -- exact linear algebra ----------------------------------------------------


def _div(a, b):
    if isinstance(b, CycNum):
        return a * b.inverse()
    return a / b


def echelon(rows, ncols=None):
    """Row echelon form over a field; returns (echelon_rows, pivot_cols)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    n = ncols if ncols is not None else len(rows[0])
    pivots = []
    out = []
    for col in range(n):
        piv = None
        for r in rows:
            if not r[col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        rows.remove(piv)
        inv = None
        newrows = []
        for r in rows:
            if r[col].is_zero():
                newrows.append(r)
                continue
            f = _div(r[col], piv[col])
            newrows.append([a - f * b for a, b in zip(r, piv)])
        rows = newrows
        out.append(piv)
        pivots.append(col)
    return out, pivots


def exact_rank(rows, ncols=None):
    return len(echelon(rows, ncols)[0])


def kernel_basis(rows, ncols):
    """Basis of the right kernel of the matrix given by rows."""
    ech, pivots = echelon(rows, ncols)
    # back-substitute to reduced form
    for i in range(len(ech) - 1, -1, -1):
        c = pivots[i]
        inv_row = [_div(a, ech[i][c]) for a in ech[i]]
        ech[i] = inv_row
        for j in range(i):
            f = ech[j][c]
            if not f.is_zero():
                ech[j] = [a - f * b for a, b in zip(ech[j], ech[i])]
    free = [c for c in range(ncols) if c not in pivots]
    one = Z5.one()
    zero = Z5.zero()
    basis = []
    for f in free:
        vec = [zero] * ncols
        vec[f] = one
        for i, c in enumerate(pivots):
            vec[c] = -ech[i][f]
        basis.append(vec)
    return basis


def linear_solve(rows, rhs):
    """Solve A x = b exactly.  Returns (status, solution_or_None, rank).

    status is 'unique', 'multiple', or 'none'.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    n = len(rows[0])
    ech, pivots = echelon(aug, n + 1)
    if n in pivots:
        return "none", None, len(pivots) - 1
    rank = len(pivots)
    # reduced form for back substitution
    for i in range(len(ech) - 1, -1, -1):
        c = pivots[i]
        ech[i] = [_div(a, ech[i][c]) for a in ech[i]]
        for j in range(i):
            f = ech[j][c]
            if not f.is_zero():
                ech[j] = [a - f * b for a, b in zip(ech[j], ech[i])]
    zero = Z5.zero()
    sol = [zero] * n
    for i, c in enumerate(pivots):
        sol[c] = ech[i][n]
    status = "unique" if rank == n else "multiple"
    return status, sol, rank
