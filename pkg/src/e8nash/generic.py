"""Sparse multivariate polynomials and rational functions over a
cyclotomic field.

A GenericScalar is a quotient of polynomials in formal moduli
(lambda_1, lambda_2, ...).  It is zero iff its numerator is zero, which
is the operational meaning of "generic value of the modulus": a
quantity vanishes generically iff it vanishes as a rational function.
"""

from fractions import Fraction

from .cyclo import CycNum, Z5, QZERO, QONE, mpq, _as_rational

_EMPTY = ()


def _coeff(v):
    if isinstance(v, CycNum):
        return v
    q = _as_rational(v)
    if q is None:
        raise TypeError("cannot use %r as a coefficient" % (v,))
    return Z5.from_rational(q)


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class Poly:
    """Sparse polynomial with CycNum coefficients; variables are strings."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = terms or {}

    @staticmethod
    def const(c):
        c = _coeff(c)
        return Poly({} if c.is_zero() else {_EMPTY: c})

    @staticmethod
    def var(name, exp=1):
        return Poly({((name, exp),): Z5.one()})

    @staticmethod
    def zero():
        return Poly({})

    # -- ring operations --------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, GenericScalar):
            return NotImplemented
        return Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return Poly({})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                p = c1 * c2
                s = out.get(m)
                s = p if s is None else s + p
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, Poly):
            return GenericScalar(self, other)
        return self * _coeff(other).inverse()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(m == _EMPTY for m in self.terms)

    def constant_value(self):
        if self.is_zero():
            return Z5.zero()
        if not self.is_constant():
            raise ValueError("not a constant: %r" % self)
        return self.terms[_EMPTY]

    def variables(self):
        out = set()
        for m in self.terms:
            for v, _ in m:
                out.add(v)
        return sorted(out)

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e for _, e in m) for m in self.terms)

    def degree_in(self, var):
        d = 0
        for m in self.terms:
            for v, e in m:
                if v == var and e > d:
                    d = e
        return d

    def coefficient_of(self, var, exp):
        """Polynomial coefficient of var^exp."""
        out = {}
        for m, c in self.terms.items():
            rest = tuple((v, e) for v, e in m if v != var)
            got = sum(e for v, e in m if v == var)
            if got == exp:
                out[rest] = c
        return Poly(out)

    def as_univariate(self, var):
        """Dense coefficient list [c0, c1, ...] of Polys in the other vars."""
        d = self.degree_in(var)
        out = [{} for _ in range(d + 1)]
        for m, c in self.terms.items():
            e = sum(x for v, x in m if v == var)
            rest = tuple((v, x) for v, x in m if v != var)
            out[e][rest] = c
        return [Poly(t) for t in out]

    @staticmethod
    def from_univariate(coeffs, var):
        out = Poly({})
        for e, p in enumerate(coeffs):
            if not p.is_zero():
                out = out + p * Poly.var(var, e) if e else out + p
        return out

    def _key_order(self):
        vars_ = self.variables()
        idx = {v: i for i, v in enumerate(vars_)}

        def key(m):
            vec = [0] * len(vars_)
            for v, e in m:
                vec[idx[v]] = e
            return tuple(vec)

        return key

    def leading(self):
        """(monomial, coefficient) maximal in lex order on sorted variables."""
        if not self.terms:
            raise ValueError("leading term of zero")
        key = self._key_order()
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def monic(self):
        if self.is_zero():
            return self
        _, c = self.leading()
        inv = c.inverse()
        return Poly({m: co * inv for m, co in self.terms.items()})

    def substitute(self, assignment):
        """Substitute values (CycNum/rational/Poly/GenericScalar) for variables."""
        result = None
        for m, c in self.terms.items():
            term = None
            for v, e in m:
                if v in assignment:
                    val = assignment[v]
                    f = val ** e
                else:
                    f = Poly.var(v, e)
                term = f if term is None else term * f
            if term is None:
                term = Poly.const(1)
            term = term * c
            result = term if result is None else result + term
        if result is None:
            return Poly({})
        return result

    def specialize(self, assignment):
        """Substitute rationals/CycNums for all variables; returns CycNum."""
        acc = Z5.zero()
        for m, c in self.terms.items():
            val = c
            for v, e in m:
                val = val * (_coeff(assignment[v]) ** e)
            acc = acc + val
        return acc

    def exact_div(self, other):
        """Exact polynomial division; raises ArithmeticError if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            inv = other.constant_value().inverse()
            return Poly({m: c * inv for m, c in self.terms.items()})
        rem = Poly(dict(self.terms))
        vars_ = sorted(set(self.variables()) | set(other.variables()))
        idx = {v: i for i, v in enumerate(vars_)}

        def vec(m):
            out = [0] * len(vars_)
            for v, e in m:
                out[idx[v]] = e
            return tuple(out)

        lm, lc = max(((m, c) for m, c in other.terms.items()), key=lambda t: vec(t[0]))
        lcinv = lc.inverse()
        lmv = vec(lm)
        quo = {}
        while not rem.is_zero():
            m = max(rem.terms, key=vec)
            mv = vec(m)
            diff = [a - b for a, b in zip(mv, lmv)]
            if any(d < 0 for d in diff):
                raise ArithmeticError("inexact polynomial division")
            qm = tuple((v, d) for v, d in zip(vars_, diff) if d)
            qc = rem.terms[m] * lcinv
            quo[qm] = qc
            rem = rem - Poly({qm: qc}) * other
        return Poly(quo)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        key = self._key_order()
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            mono = "*".join(v if e == 1 else "%s^%d" % (v, e) for v, e in m)
            if not mono:
                parts.append("(%r)" % c)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append("(%r)*%s" % (c, mono))
        return " + ".join(parts)


def _prim_part_and_content(p, var):
    """Content (gcd of coefficients w.r.t. var) and primitive part."""
    coeffs = [c for c in p.as_univariate(var) if not c.is_zero()]
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = poly_gcd(cont, c)
        if cont.is_constant():
            cont = Poly.const(1)
            break
    return cont, p.exact_div(cont)


def _pseudo_rem(a, b, var):
    """Pseudo-remainder of a by b in var (coefficients stay polynomial)."""
    da, db = a.degree_in(var), b.degree_in(var)
    lb = b.coefficient_of(var, db)
    rem = a
    while not rem.is_zero() and rem.degree_in(var) >= db:
        dr = rem.degree_in(var)
        lr = rem.coefficient_of(var, dr)
        rem = rem * lb - b * lr * Poly.var(var, dr - db) if dr > db else rem * lb - b * lr
    return rem


def poly_gcd(a, b):
    """GCD of polynomials over the field, monic-normalized."""
    if a.is_zero():
        return b.monic() if not b.is_zero() else b
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.const(1)
    vars_ = sorted(set(a.variables()) | set(b.variables()))
    var = vars_[0]
    if len(vars_) == 1:
        # univariate Euclid over the field
        p, q = a, b
        while not q.is_zero():
            p, q = q, _poly_rem_field(p, q, var)
        return p.monic()
    ca, pa = _prim_part_and_content(a, var)
    cb, pb = _prim_part_and_content(b, var)
    cont = poly_gcd(ca, cb)
    p, q = pa, pb
    while not q.is_zero() and q.degree_in(var) > 0:
        r = _pseudo_rem(p, q, var)
        if not r.is_zero():
            _, r = _prim_part_and_content(r, var)
        p, q = q, r
    if not q.is_zero():
        return cont.monic() if cont.is_constant() else cont
    return (cont * p).monic()


def _poly_rem_field(a, b, var):
    db = b.degree_in(var)
    lb = b.coefficient_of(var, db).constant_value().inverse()
    rem = a
    while not rem.is_zero():
        dr = rem.degree_in(var)
        if dr < db:
            break
        lr = rem.coefficient_of(var, dr).constant_value()
        c = lr * lb
        step = Poly({((var, dr - db),) if dr > db else _EMPTY: c})
        rem = rem - step * b
    return rem


_modulus_counter = [0]


def fresh_modulus(prefix="m"):
    """A new formal modulus variable, as a GenericScalar."""
    _modulus_counter[0] += 1
    return GenericScalar(Poly.var("%s%d" % (prefix, _modulus_counter[0])), Poly.const(1))


class GenericScalar:
    """Rational function num/den in formal moduli over the field.

    Zero iff the numerator is zero; equality is exact cross-multiplied
    equality, independent of representation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Poly):
            num = Poly.const(num)
        if den is None:
            den = Poly.const(1)
        elif not isinstance(den, Poly):
            den = Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @staticmethod
    def _lift(v):
        if isinstance(v, GenericScalar):
            return v
        if isinstance(v, Poly):
            return GenericScalar(v)
        return GenericScalar(Poly.const(v))

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self.den is o.den or self.den == o.den:
            return GenericScalar(self.num + o.num, self.den)
        return GenericScalar(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return GenericScalar(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return GenericScalar(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero GenericScalar")
        return GenericScalar(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k):
        if k < 0:
            return (GenericScalar(Poly.const(1)) / self) ** (-k)
        return GenericScalar(self.num ** k, self.den ** k)

    def __eq__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den - o.num * self.den).is_zero()

    def __hash__(self):
        n = self.normalize()
        return hash((frozenset(n.num.terms.items()), frozenset(n.den.terms.items())))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero GenericScalar")
        return GenericScalar(self.den, self.num)

    def normalize(self):
        """Canonical form: coprime, denominator monic in lex order."""
        if self.num.is_zero():
            return GenericScalar(Poly.zero(), Poly.const(1))
        g = poly_gcd(self.num, self.den)
        num, den = self.num, self.den
        if not g.is_constant():
            num = num.exact_div(g)
            den = den.exact_div(g)
        _, lc = den.leading()
        inv = lc.inverse()
        return GenericScalar(
            Poly({m: c * inv for m, c in num.terms.items()}),
            Poly({m: c * inv for m, c in den.terms.items()}),
        )

    def specialize(self, assignment):
        """Evaluate at rational/CycNum values of the moduli."""
        den = self.den.specialize(assignment)
        if den.is_zero():
            raise ZeroDivisionError("denominator vanishes at the sample point")
        return self.num.specialize(assignment) * den.inverse()

    def substitute(self, assignment):
        num = self.num.substitute(assignment)
        den = self.den.substitute(assignment)
        num = GenericScalar._lift(num) if not isinstance(num, GenericScalar) else num
        den = GenericScalar._lift(den) if not isinstance(den, GenericScalar) else den
        return num / den

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self):
        return self.num.constant_value() * self.den.constant_value().inverse()

    def __repr__(self):
        if self.den == Poly.const(1):
            return repr(self.num)
        return "(%r)/(%r)" % (self.num, self.den)
