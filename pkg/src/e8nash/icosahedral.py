"""The binary icosahedral group in SL(2, C), its special orbits on the
projective line, the three invariant forms, and the quotient map onto
the surface x^2 + y^3 + z^5 = 0.

Matrix entries live in Q(zeta_5); the mid-edge and face-centre orbit
points need the extensions Q(zeta_20) and Q(zeta_15) and are handled by
the mixed-field arithmetic in cyclo.
"""

from .cyclo import CycNum, FieldContext, Z5, Z15, Z20, descend, sqrt5
from .generic import Poly
from .algebra import substitute_series, PowerSeries


class Mat2:
    """2x2 matrix over a cyclotomic field, immutable."""

    __slots__ = ("a", "b", "c", "d", "_hash")

    def __init__(self, a, b, c, d):
        self.a, self.b, self.c, self.d = a, b, c, d
        self._hash = None

    def __mul__(self, other):
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def inverse(self):
        det = self.det()
        inv = det.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        return (
            self.a == other.a and self.b == other.b
            and self.c == other.c and self.d == other.d
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.a, self.b, self.c, self.d))
        return self._hash

    def __repr__(self):
        return "[[%r, %r], [%r, %r]]" % (self.a, self.b, self.c, self.d)


def identity():
    one, zero = Z5.one(), Z5.zero()
    return Mat2(one, zero, zero, one)


class ProjPoint:
    """A point of P^1 with coordinates normalized to (1, w) or (0, 1)."""

    __slots__ = ("u", "v", "_hash")

    def __init__(self, u, v):
        if not u.is_zero():
            inv = u.inverse()
            u, v = u * inv, v * inv
        elif v.is_zero():
            raise ValueError("(0 : 0) is not a projective point")
        else:
            u, v = v.ctx.zero(), v.ctx.one()
        self.u, self.v = u, v
        self._hash = None

    def coords(self):
        return (self.u, self.v)

    def apply(self, g):
        return ProjPoint(g.a * self.u + g.b * self.v, g.c * self.u + g.d * self.v)

    def __eq__(self, other):
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        if self._hash is None:
            if self.u.is_zero():
                self._hash = hash("infinity-point")
            else:
                self._hash = hash(self.v)
        return self._hash

    def __repr__(self):
        return "[%r : %r]" % (self.u, self.v)


def generators():
    """Standard generators: an order-10 diagonal and an order-4 rotation."""
    z = Z5.zeta(1)
    zero = Z5.zero()
    g1 = Mat2(z ** 3, zero, zero, z ** 2)
    s5inv = sqrt5().inverse()
    p = (z - z ** 4) * s5inv
    q = (z ** 2 - z ** 3) * s5inv
    g2 = Mat2(p, q, q, -p)
    return [g1, g2]


_group_cache = None


def group():
    """All 120 elements, generated by closure."""
    global _group_cache
    if _group_cache is None:
        gens = generators()
        seen = {identity()}
        frontier = [identity()]
        while frontier:
            nxt = []
            for m in frontier:
                for g in gens:
                    p = m * g
                    if p not in seen:
                        seen.add(p)
                        nxt.append(p)
            frontier = nxt
        _group_cache = sorted(seen, key=_mat_sort_key)
    return _group_cache


def _mat_sort_key(m):
    return tuple((c.ctx.n,) + tuple((q.numerator, q.denominator) for q in c.co) for c in m.entries())


def element_order(g):
    e = identity()
    p = g
    for k in range(1, 200):
        if p == e:
            return k
        p = p * g
    raise ValueError("order not found")


def order_census():
    """Map {element order: count} over the whole group."""
    out = {}
    for g in group():
        k = element_order(g)
        out[k] = out.get(k, 0) + 1
    return out


def orbit(point):
    return list({point.apply(g) for g in group()})


def stabilizer(point):
    return [g for g in group() if point.apply(g) == point]


def _eigen_point(g, eigenvalue):
    """A fixed point of g on P^1 with the given eigenvalue."""
    if not g.b.is_zero():
        return ProjPoint(g.b + (eigenvalue - eigenvalue), eigenvalue - g.a)
    if not g.c.is_zero():
        return ProjPoint(eigenvalue - g.d, g.c + (eigenvalue - eigenvalue))
    # diagonal: eigenvectors are the coordinate axes
    if g.a == eigenvalue:
        return ProjPoint(Z5.one(), Z5.zero())
    return ProjPoint(Z5.zero(), Z5.one())


_special_cache = None


def special_orbits():
    """The three exceptional orbits: vertices (12), faces (20), edges (30)."""
    global _special_cache
    if _special_cache is None:
        verts = orbit(ProjPoint(Z5.one(), Z5.zero()))
        g6 = next(g for g in group() if element_order(g) == 6)
        zeta6 = -(Z15.zeta(10))
        faces = orbit(_eigen_point(g6, zeta6))
        g4 = next(g for g in group() if element_order(g) == 4)
        i = Z20.zeta(5)
        edges = orbit(_eigen_point(g4, i))
        _special_cache = {"V": verts, "F": faces, "E": edges}
    return _special_cache


def orbit_form(points, u="u", v="v"):
    """Product of the linear forms vanishing at the orbit points,
    descended to Q(zeta_5)."""
    form = Poly.const(1)
    for p in points:
        lin = Poly({((u, 1),): p.v}) - Poly({((v, 1),): p.u})
        form = form * lin
    out = {}
    for mono, c in form.terms.items():
        if c.ctx is not Z5:
            c5 = descend(c, Z5)
            if c5 is None:
                raise ArithmeticError("orbit form does not descend to Q(zeta_5)")
            c = c5
        out[mono] = c
    return Poly(out)


def transform_form(poly, g, u="u", v="v"):
    """(g . P)(u, v) = P(g^-1 (u, v))."""
    gi = g.inverse()
    uu = Poly({((u, 1),): gi.a}) + Poly({((v, 1),): gi.b})
    vv = Poly({((u, 1),): gi.c}) + Poly({((v, 1),): gi.d})
    return poly.substitute({u: uu, v: vv})


def is_invariant(poly, u="u", v="v"):
    return all(transform_form(poly, g, u, v) == poly for g in generators())


_forms_cache = None


def invariant_forms():
    """The syzygy-normalized forms (E^, F^, V^) of degrees 30, 20, 12
    with E^2 + F^3 + V^5 = 0 exactly."""
    global _forms_cache
    if _forms_cache is None:
        so = special_orbits()
        V = orbit_form(so["V"])
        F = orbit_form(so["F"])
        E = orbit_form(so["E"])
        for f in (V, F, E):
            if not is_invariant(f):
                raise ArithmeticError("orbit form is not group invariant")
        a, b, c = _syzygy_coefficients(E, F, V)
        # E^2, F^3, V^5 each acquire the factor a^15 b^20 c^24 times a, b, c
        Eh = (a ** 8 * b ** 10 * c ** 12) * E
        Fh = (a ** 5 * b ** 7 * c ** 8) * F
        Vh = (a ** 3 * b ** 4 * c ** 5) * V
        if not (Eh ** 2 + Fh ** 3 + Vh ** 5).is_zero():
            raise ArithmeticError("syzygy normalization failed")
        _forms_cache = (Eh, Fh, Vh)
    return _forms_cache


def _syzygy_coefficients(E, F, V):
    """The 1-dimensional relation a E^2 + b F^3 + c V^5 = 0."""
    from .algebra import kernel_basis

    cols = [E ** 2, F ** 3, V ** 5]
    monos = sorted({m for p in cols for m in p.terms})
    rows = []
    zero = Z5.zero()
    for m in monos:
        rows.append([p.terms.get(m, zero) for p in cols])
    basis = kernel_basis(rows, 3)
    if len(basis) != 1:
        raise ArithmeticError("syzygy kernel has dimension %d" % len(basis))
    a, b, c = basis[0]
    if a.is_zero() or b.is_zero() or c.is_zero():
        raise ArithmeticError("degenerate syzygy relation")
    return a, b, c


def quotient_map(us, vs, trunc=None):
    """Compose the invariant forms with a parametrized branch (u(t), v(t))."""
    Eh, Fh, Vh = invariant_forms()
    assign = {"u": us, "v": vs}
    x = substitute_series(Eh, assign, trunc)
    y = substitute_series(Fh, assign, trunc)
    z = substitute_series(Vh, assign, trunc)
    return x, y, z


def dump():
    """Canonical text dump of the group and the normalized forms."""
    lines = ["group order %d" % len(group())]
    for g in group():
        lines.append(repr(g))
    Eh, Fh, Vh = invariant_forms()
    for name, f in (("E", Eh), ("F", Fh), ("V", Vh)):
        lines.append("%s = %r" % (name, f))
    return "\n".join(lines) + "\n"
