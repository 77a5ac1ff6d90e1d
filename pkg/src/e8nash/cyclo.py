"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are coordinate vectors over Q in the power basis
{1, z, ..., z^(phi(n)-1)}, where z is a fixed primitive n-th root of
unity.  Everything is exact; complex embeddings are provided only as a
floating cross-check at a requested precision.

The default field is Q(zeta_5) (see CyclotomicNumber); larger conductors
(15, 20, 60) appear internally when frames at face or mid-edge points
are needed.  Mixed-conductor arithmetic lifts both operands to the
compositum automatically.
"""

from fractions import Fraction
from math import gcd

import mpmath

try:
    from gmpy2 import mpq
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency
    mpq = Fraction

QZERO = mpq(0)
QONE = mpq(1)


def _poly_divide_exact(num, den):
    """Exact division of integer-coefficient polynomial lists (low to high)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = num[len(den) - 1 + i]
        if c % den[-1] != 0:
            raise ArithmeticError("inexact polynomial division")
        q = c // den[-1]
        out[i] = q
        for j, d in enumerate(den):
            num[i + j] -= q * d
    if any(num):
        raise ArithmeticError("nonzero remainder")
    return out


def cyclotomic_polynomial(n):
    """Coefficients of the n-th cyclotomic polynomial, low to high."""
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, cyclotomic_polynomial(d))
    return poly


def euler_phi(n):
    count = 0
    for k in range(1, n + 1):
        if gcd(k, n) == 1:
            count += 1
    return count


class FieldContext:
    """Arithmetic context for one conductor n, with cached reduction data."""

    _registry = {}

    def __init__(self, n):
        self.n = n
        self.degree = euler_phi(n)
        mod = cyclotomic_polynomial(n)
        assert len(mod) == self.degree + 1 and mod[-1] == 1
        self.modulus = tuple(mpq(c) for c in mod)
        m = self.degree
        # reduction rows: coordinates of z^k for k >= m, extended on demand
        self.reduction = [tuple(-c for c in self.modulus[:m])]  # z^m
        self._zero = None
        self._one = None
        self._zeta_pows = {}
        self._roots = {}
        self._descents = {}

    @classmethod
    def get(cls, n):
        ctx = cls._registry.get(n)
        if ctx is None:
            ctx = cls._registry[n] = FieldContext(n)
        return ctx

    def _red_row(self, k):
        """Coordinates of z^k in the power basis, for k >= degree."""
        rows = self.reduction
        while len(rows) <= k - self.degree:
            cur = rows[-1]
            top = cur[-1]
            nxt = [QZERO] + list(cur[:-1])
            if top:
                nxt = [a + top * b for a, b in zip(nxt, rows[0])]
            rows.append(tuple(nxt))
        return rows[k - self.degree]

    def element(self, coords):
        co = list(coords)
        if len(co) > self.degree:
            for k in range(len(co) - 1, self.degree - 1, -1):
                c = co[k]
                if c:
                    row = self._red_row(k)
                    for i, r in enumerate(row):
                        if r:
                            co[i] += c * r
            co = co[: self.degree]
        elif len(co) < self.degree:
            co = co + [QZERO] * (self.degree - len(co))
        return CycNum(self, tuple(mpq(c) for c in co))

    def zero(self):
        if self._zero is None:
            self._zero = CycNum(self, (QZERO,) * self.degree)
        return self._zero

    def one(self):
        if self._one is None:
            self._one = self.from_rational(1)
        return self._one

    def from_rational(self, q):
        if isinstance(q, Fraction):
            q = mpq(q.numerator, q.denominator)
        return CycNum(self, (mpq(q),) + (QZERO,) * (self.degree - 1))

    def zeta(self, k=1):
        k %= self.n
        el = self._zeta_pows.get(k)
        if el is None:
            co = [QZERO] * (k + 1)
            co[k] = QONE
            el = self._zeta_pows[k] = self.element(co)
        return el

    def root_complex(self, precision):
        key = precision
        if key not in self._roots:
            with mpmath.workdps(precision + 10):
                self._roots[key] = mpmath.exp(2j * mpmath.pi / self.n)
        return self._roots[key]

    def _descent_data(self, sub):
        """Row-reduced data for writing elements in the sub-basis, if possible."""
        key = sub.n
        if key in self._descents:
            return self._descents[key]
        assert self.n % sub.n == 0
        cols = [embed(sub.zeta(1) ** j, self).co for j in range(sub.degree)]
        # Gaussian elimination on the (degree x sub.degree) column matrix,
        # recording the operations so arbitrary vectors can be solved later.
        m = self.degree
        mat = [[cols[j][i] for j in range(sub.degree)] for i in range(m)]
        ops = []  # (kind, ...) replayed on target vectors
        pivots = []
        row = 0
        for col in range(sub.degree):
            piv = next(r for r in range(row, m) if mat[r][col])
            if piv != row:
                mat[piv], mat[row] = mat[row], mat[piv]
                ops.append(("swap", piv, row))
            inv = 1 / mat[row][col]
            mat[row] = [x * inv for x in mat[row]]
            ops.append(("scale", row, inv))
            for r in range(m):
                if r != row and mat[r][col]:
                    f = mat[r][col]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[row])]
                    ops.append(("axpy", r, row, f))
            pivots.append(row)
            row += 1
        data = (ops, pivots)
        self._descents[key] = data
        return data

    def __repr__(self):
        return "Q(zeta_%d)" % self.n


def compositum(ctx_a, ctx_b):
    if ctx_a is ctx_b:
        return ctx_a
    n = ctx_a.n * ctx_b.n // gcd(ctx_a.n, ctx_b.n)
    return FieldContext.get(n)


def embed(x, ctx):
    """Image of x under Q(zeta_m) -> Q(zeta_n), zeta_m |-> zeta_n^(n/m)."""
    if x.ctx is ctx:
        return x
    if ctx.n % x.ctx.n != 0:
        raise ValueError("no embedding of Q(zeta_%d) into Q(zeta_%d)" % (x.ctx.n, ctx.n))
    step = ctx.n // x.ctx.n
    co = [QZERO] * (step * (x.ctx.degree - 1) + 1)
    for i, c in enumerate(x.co):
        co[step * i] = c
    return ctx.element(co)


def descend(x, ctx):
    """Write x exactly in the subfield Q(zeta_n); None if x is not in it."""
    if x.ctx is ctx:
        return x
    if x.ctx.n % ctx.n != 0:
        raise ValueError("Q(zeta_%d) is not an extension of Q(zeta_%d)" % (x.ctx.n, ctx.n))
    ops, pivots = x.ctx._descent_data(ctx)
    vec = list(x.co)
    for op in ops:
        if op[0] == "swap":
            vec[op[1]], vec[op[2]] = vec[op[2]], vec[op[1]]
        elif op[0] == "scale":
            vec[op[1]] = vec[op[1]] * op[2]
        else:
            vec[op[1]] = vec[op[1]] - op[3] * vec[op[2]]
    sol = [vec[p] for p in pivots]
    used = set(pivots)
    if any(vec[i] for i in range(len(vec)) if i not in used):
        return None
    return ctx.element(sol)


def _as_rational(v):
    if isinstance(v, int):
        return mpq(v)
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    if isinstance(v, type(QONE)):
        return v
    return None


class CycNum:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("ctx", "co", "_hash")

    def __init__(self, ctx, co):
        self.ctx = ctx
        self.co = co
        self._hash = None

    # -- coercion ---------------------------------------------------------
    def _pair(self, other):
        if isinstance(other, CycNum):
            if other.ctx is self.ctx:
                return self, other
            ctx = compositum(self.ctx, other.ctx)
            return embed(self, ctx), embed(other, ctx)
        q = _as_rational(other)
        if q is None:
            return None, None
        return self, self.ctx.from_rational(q)

    # -- ring operations --------------------------------------------------
    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycNum(a.ctx, tuple(x + y for x, y in zip(a.co, b.co)))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycNum(a.ctx, tuple(x - y for x, y in zip(a.co, b.co)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CycNum(self.ctx, tuple(-x for x in self.co))

    def __mul__(self, other):
        if isinstance(other, CycNum) and other.ctx is self.ctx:
            a, b = self, other
        else:
            a, b = self._pair(other)
            if a is None:
                return NotImplemented
        m = a.ctx.degree
        ac, bc = a.co, b.co
        prod = [QZERO] * (2 * m - 1)
        for i, x in enumerate(ac):
            if x:
                for j, y in enumerate(bc):
                    if y:
                        prod[i + j] += x * y
        out = list(prod[:m])
        for k in range(m, 2 * m - 1):
            c = prod[k]
            if c:
                row = a.ctx._red_row(k)
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycNum(a.ctx, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in %r" % self.ctx)
        # extended Euclid in Q[x] against the cyclotomic modulus
        mod = list(self.ctx.modulus)
        a = list(self.co)
        r0, r1 = mod, a
        s0, s1 = [QZERO], [QONE]
        while True:
            d1 = len(r1) - 1
            while d1 > 0 and not r1[d1]:
                d1 -= 1
            if d1 == 0:
                break
            r1 = r1[: d1 + 1]
            d0 = len(r0) - 1
            while d0 > 0 and not r0[d0]:
                d0 -= 1
            r0 = r0[: d0 + 1]
            if d0 < d1:
                r0, r1 = r1, r0
                s0, s1 = s1, s0
                continue
            # one division step
            rem = list(r0)
            quo = [QZERO] * (d0 - d1 + 1)
            for i in range(d0 - d1, -1, -1):
                c = rem[d1 + i] / r1[d1]
                quo[i] = c
                if c:
                    for j in range(d1 + 1):
                        rem[i + j] -= c * r1[j]
            ns = list(s0) + [QZERO] * max(0, len(quo) + len(s1) - 1 - len(s0))
            for i, qc in enumerate(quo):
                if qc:
                    for j, sc in enumerate(s1):
                        if sc:
                            ns[i + j] -= qc * sc
            r0, r1 = r1, rem
            s0, s1 = s1, ns
        if not r1[0]:
            raise ZeroDivisionError("element not invertible")
        c = r1[0]
        return self.ctx.element([x / c for x in s1])

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.ctx.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure --------------------------------------------------------
    def is_zero(self):
        return not any(self.co)

    def is_rational(self):
        return not any(self.co[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not rational: %r" % self)
        return self.co[0]

    def galois(self, k):
        """The automorphism zeta -> zeta^k, gcd(k, n) = 1."""
        if gcd(k, self.ctx.n) != 1:
            raise ValueError("galois index %d not coprime to %d" % (k, self.ctx.n))
        co = [QZERO] * (k * (self.ctx.degree - 1) % self.ctx.n + 1 + self.ctx.n)
        co = [QZERO] * self.ctx.n
        for i, c in enumerate(self.co):
            co[(i * k) % self.ctx.n] += c
        return self.ctx.element(co)

    def conjugate(self):
        """Complex conjugation, zeta -> zeta^(n-1)."""
        return self.galois(self.ctx.n - 1)

    def embed_complex(self, precision=50):
        """Numerical image under zeta_n -> exp(2 pi i / n)."""
        root = self.ctx.root_complex(precision)
        with mpmath.workdps(precision + 10):
            acc = mpmath.mpc(0)
            p = mpmath.mpc(1)
            for c in self.co:
                if c:
                    acc += mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) * p
                p *= root
            return acc

    def __eq__(self, other):
        if isinstance(other, CycNum):
            if other.ctx is self.ctx:
                return self.co == other.co
            a, b = self._pair(other)
            return a.co == b.co
        q = _as_rational(other)
        if q is None:
            return NotImplemented
        return self.is_rational() and self.co[0] == q

    def __ne__(self, other):
        r = self.__eq__(other)
        return NotImplemented if r is NotImplemented else not r

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.co[0])
            else:
                self._hash = hash((self.ctx.n, self.co))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.co):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                z = "z%d" % self.ctx.n if self.ctx.n != 5 else "z"
                term = z if i == 1 else "%s^%d" % (z, i)
                parts.append(term if c == 1 else "%s*%s" % (c, term))
        return " + ".join(parts)


Z5 = FieldContext.get(5)
Z15 = FieldContext.get(15)
Z20 = FieldContext.get(20)
Z60 = FieldContext.get(60)


class CyclotomicNumber(CycNum):
    """Element of Q(zeta_5) with coordinates (a0, a1, a2, a3)."""

    __slots__ = ()

    def __init__(self, a0=0, a1=0, a2=0, a3=0):
        el = Z5.element([_as_rational(a) for a in (a0, a1, a2, a3)])
        CycNum.__init__(self, Z5, el.co)

    @property
    def coords(self):
        return self.co

    @staticmethod
    def zeta():
        return Z5.zeta(1)

    @staticmethod
    def from_rational(q):
        return Z5.from_rational(q)


def sqrt5():
    """The square root of 5 in Q(zeta_5): 1 + 2*zeta + 2*zeta^4."""
    return Z5.element([QONE, mpq(2), QZERO, QZERO, mpq(2)])


def golden_ratio():
    """(1 + sqrt 5)/2 as an element of Q(zeta_5)."""
    return (Z5.one() + sqrt5()) / 2
