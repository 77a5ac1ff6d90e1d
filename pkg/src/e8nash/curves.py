"""Model branches and orbit curves for the eight divisor classes.

Each exceptional divisor class k has a one-parameter model branch
frame_k . (t^a, lambda t^b); its full preimage curve is the orbit under
the 120 group elements, deduplicated by exact reparametrization
equivalence.  All multiplicities, tangents, and intersection numbers
used downstream are recomputed here exactly.
"""

from math import gcd

from .cyclo import Z5, Z15, Z20, CycNum
from .generic import Poly, GenericScalar
from .algebra import PowerSeries, substitute_series, eliminate_t, t_order, linear_solve
from .icosahedral import (
    Mat2, ProjPoint, group, identity, element_order, special_orbits,
    stabilizer, invariant_forms, transform_form, quotient_map,
)


class ClassData:
    __slots__ = ("k", "orbit", "a", "b", "dicriticals", "covering_degree", "stabilizer_label")

    def __init__(self, k, orbit, a, b, dicriticals, covering_degree, stabilizer_label):
        self.k = k
        self.orbit = orbit
        self.a = a
        self.b = b
        self.dicriticals = dicriticals
        self.covering_degree = covering_degree
        self.stabilizer_label = stabilizer_label


#: The eight divisor classes: special orbit of the tangent direction,
#: parametrization exponents (a, b), dicritical count, covering degree,
#: and stabilizer label of the orbit points.
DIVISOR_CLASSES = {
    1: ClassData(1, "P", 1, 1, 1, 60, None),
    2: ClassData(2, "E", 1, 3, 30, 1, "C_{4,2}"),
    3: ClassData(3, "F", 1, 5, 20, 1, "C_{6,4}"),
    4: ClassData(4, "F", 1, 2, 20, 2, "C_{6,4}"),
    5: ClassData(5, "V", 1, 9, 12, 1, "C_{10,8}"),
    6: ClassData(6, "V", 1, 4, 12, 2, "C_{10,8}"),
    7: ClassData(7, "V", 3, 7, 12, 1, "C_{10,8}"),
    8: ClassData(8, "V", 2, 3, 12, 2, "C_{10,8}"),
}

#: Edges of the resolution graph: the central divisor E1 carries the
#: three arms (E2), (E4, E3) and (E8, E7, E6, E5), ordered outward.
RESOLUTION_GRAPH_EDGES = frozenset(
    {frozenset(e) for e in [(1, 2), (1, 4), (4, 3), (1, 8), (8, 7), (7, 6), (6, 5)]}
)


def graph_adjacent(i, j):
    return frozenset((i, j)) in RESOLUTION_GRAPH_EDGES


_frame_cache = {}


def frame(k):
    """Stabilizer-eigenbasis frame sending [1:0] to a tangent point of class k.

    Classes with vertex tangents (and class 1) use the identity: [1:0]
    is itself a vertex in these coordinates.  Face and edge classes get
    the eigenbasis of an order-6 / order-4 stabilizer element, so that
    stabilizer elements act diagonally on the model parametrization.
    """
    got = _frame_cache.get(k)
    if got is not None:
        return got
    orbit_label = DIVISOR_CLASSES[k].orbit
    if orbit_label in ("P", "V"):
        m = identity()
    else:
        if orbit_label == "F":
            point = special_orbits()["F"][0]
            order, eig = 6, -(Z15.zeta(10))  # zeta_6
        else:
            point = special_orbits()["E"][0]
            order, eig = 4, Z20.zeta(5)  # i
        h = next(g for g in stabilizer(point) if element_order(g) == order)
        cols = []
        for val in (eig, eig.inverse()):
            if not h.b.is_zero():
                cols.append((h.b + (val - val), val - h.a))
            else:
                cols.append((val - h.d, h.c + (val - val)))
        # first column must be the tangent point itself
        if ProjPoint(cols[0][0], cols[0][1]) != point:
            cols.reverse()
        assert ProjPoint(cols[0][0], cols[0][1]) == point
        (u0, v0), (u1, v1) = cols
        det = u0 * v1 - u1 * v0
        inv = det.inverse()
        m = Mat2(u0, u1 * inv, v0, v1 * inv)
        assert m.det() == 1
    _frame_cache[k] = m
    return m


class Branch:
    """A parametrized branch A . (t^a, modulus t^b) with A in SL2."""

    __slots__ = ("k", "matrix", "modulus", "us", "vs", "_equation", "tvar")

    def __init__(self, k, matrix, modulus, tvar="t"):
        self.k = k
        self.matrix = matrix
        self.modulus = modulus  # Poly (typically a modulus variable or constant)
        self.tvar = tvar
        data = DIVISOR_CLASSES[k]
        lam = modulus if isinstance(modulus, Poly) else Poly.const(modulus)
        self.us = PowerSeries(tvar, _two_term(matrix.a, matrix.b, lam, data.a, data.b))
        self.vs = PowerSeries(tvar, _two_term(matrix.c, matrix.d, lam, data.a, data.b))
        self._equation = None

    def tangent(self):
        """Tangent direction as a projective point (classes with a < b)."""
        data = DIVISOR_CLASSES[self.k]
        if data.a == data.b:
            raise ValueError("class 1 branches have modulus-dependent tangents")
        return ProjPoint(self.matrix.a, self.matrix.c)

    def tangent_slope(self):
        """Tangent slope v/u as a normalized rational function (or 'inf')."""
        lam = self.modulus if isinstance(self.modulus, Poly) else Poly.const(self.modulus)
        data = DIVISOR_CLASSES[self.k]
        if data.a == data.b:
            num = _as_poly(self.matrix.c) + _as_poly(self.matrix.d) * lam
            den = _as_poly(self.matrix.a) + _as_poly(self.matrix.b) * lam
        else:
            num, den = _as_poly(self.matrix.c), _as_poly(self.matrix.a)
        if den.is_zero():
            return "inf"
        return GenericScalar(num, den).normalize()

    def multiplicity(self):
        return DIVISOR_CLASSES[self.k].a

    def equation(self):
        """Implicit equation in (u, v), the model equation pulled back."""
        if self._equation is None:
            data = DIVISOR_CLASSES[self.k]
            lam = self.modulus if isinstance(self.modulus, Poly) else Poly.const(self.modulus)
            model_eq = Poly.var("v", data.a) - lam ** data.a * Poly.var("u", data.b)
            self._equation = transform_form(model_eq, self.matrix)
        return self._equation

    def image_series(self, trunc=None):
        """Composition with the quotient map, as exact series (x, y, z)."""
        return quotient_map(self.us, self.vs, trunc)

    def image_content(self):
        """The deck degree d: the composed series live in C[[t^d]]."""
        sup = set()
        for s in self.image_series():
            sup.update(s.support())
        d = 0
        for e in sup:
            d = gcd(d, e)
        return d

    def reduced_image(self, trunc=None):
        """Image reparametrized by s = t^d, truncated to the given order."""
        d = self.image_content()
        out = []
        for s in self.image_series():
            s = s.deflate(d)
            if trunc is not None:
                s = s.truncate(trunc)
            out.append(s)
        return tuple(out)

    def __repr__(self):
        return "Branch(k=%d, u=%r, v=%r)" % (self.k, self.us, self.vs)


def _two_term(c_a, c_b, lam, a, b):
    ca = Poly.const(1) * c_a
    cb = lam * c_b
    if a == b:  # class 1: (c_a + c_b lam) t
        return {a: ca + cb}
    return {a: ca, b: cb}


def model_branch(k, modulus_name=None):
    """The framed model branch of class k with a formal modulus."""
    if modulus_name is None:
        modulus = Poly.const(1)
    elif isinstance(modulus_name, str):
        modulus = Poly.var(modulus_name)
    else:
        modulus = modulus_name if isinstance(modulus_name, Poly) else Poly.const(modulus_name)
    return Branch(k, frame(k), modulus)


def _reparam_equivalent(k, h):
    """Does h (already frame-conjugated) fix the model branch of class k,
    up to t -> ut with the modulus held fixed?"""
    if not (h.b.is_zero() and h.c.is_zero()):
        return False
    data = DIVISOR_CLASSES[k]
    return h.a ** data.b == h.d ** data.a


_subgroup_cache = {}


def branch_stabilizer(k):
    """Group elements g with g.(model branch) equal to the model branch."""
    got = _subgroup_cache.get(k)
    if got is None:
        m = frame(k)
        mi = m.inverse()
        got = [g for g in group() if _reparam_equivalent(k, mi * g * m)]
        _subgroup_cache[k] = got
    return got


class OrbitCurve:
    """The full preimage curve of class k: all distinct branches of the
    orbit of the model branch, with one shared formal modulus."""

    __slots__ = ("k", "modulus_name", "branches")

    def __init__(self, k, modulus_name):
        self.k = k
        self.modulus_name = modulus_name
        stab = set(branch_stabilizer(k))
        reps = []
        seen = set()
        for g in group():
            if g in seen:
                continue
            reps.append(g)
            for h in stab:
                seen.add(g * h)
        m = frame(k)
        lam = Poly.var(modulus_name) if modulus_name else Poly.const(1)
        self.branches = [Branch(k, g * m, lam) for g in reps]

    def branch_count(self):
        return len(self.branches)

    def multiplicity(self):
        return sum(b.multiplicity() for b in self.branches)

    def tangent_structure(self):
        """Map tangent slope -> number of branches with that tangent."""
        out = {}
        for b in self.branches:
            key = b.tangent_slope()
            if isinstance(key, GenericScalar):
                key = (frozenset(key.num.terms.items()), frozenset(key.den.terms.items()))
            out[key] = out.get(key, 0) + 1
        return out


_orbit_cache = {}


def orbit_curve(k, modulus_name):
    key = (k, modulus_name)
    got = _orbit_cache.get(key)
    if got is None:
        got = _orbit_cache[key] = OrbitCurve(k, modulus_name)
    return got


# -- intersections ------------------------------------------------------------


def line_through(point):
    """The line through the origin with direction (u0 : v0)."""
    return Poly({(("u", 1),): point.v}) - Poly({(("v", 1),): point.u})


def compose_on_branch(poly, branch):
    return substitute_series(poly, {"u": branch.us, "v": branch.vs})


def contact_order(poly, branch):
    """ord_t of a polynomial along a branch; generic in the moduli."""
    return t_order(compose_on_branch(poly, branch))


def branch_pair_contact(b1, b2):
    """Intersection multiplicity of two distinct branches at the origin."""
    return t_order(compose_on_branch(b1.equation(), b2))


def intersect_with_line(curve, line):
    return sum(contact_order(line, b) for b in curve.branches)


def intersect_branch(curves, test):
    """Intersection multiplicity at O of a union of orbit curves with a
    test branch (summed branch-by-branch contacts)."""
    total = 0
    for c in curves:
        for b in c.branches:
            total += branch_pair_contact(b, test)
    return total


def tangent_line_of_class(j):
    """The tangent line L_j of the class-j model branch.

    Class 1 branches are lines with generic direction, so L_1 is a
    formal generic line rather than a fixed tangent.
    """
    if j == 1:
        return generic_line("c1")
    return line_through(model_branch(j, "_l").tangent())


def generic_line(modulus_name="c0"):
    """A line with a formal direction modulus: v - c u."""
    return Poly.var("v") - Poly.var(modulus_name) * Poly.var("u")


def form_contacts(test):
    """Contact orders of the three invariant forms with a test branch."""
    Eh, Fh, Vh = invariant_forms()
    return tuple(contact_order(f, test) for f in (Eh, Fh, Vh))


def per_branch_tangent_order(k):
    """Contact of the model branch with its own tangent line.

    Returns None for class 1, whose branches are their own tangent
    lines (infinite contact).
    """
    if k == 1:
        return None
    b = model_branch(k, "_s")
    return contact_order(line_through(b.tangent()), b)


_imatrix_cache = None


def intersection_matrix():
    """I_O(W^gamma_k, L_j) for k, j in 1..8, plus the generic-line column
    under j = 0.  Each entry is computed exactly from the orbit curves."""
    global _imatrix_cache
    if _imatrix_cache is None:
        out = {}
        for k in range(1, 9):
            curve = orbit_curve(k, "w%d" % k)
            out[(k, 0)] = intersect_with_line(curve, generic_line())
            for j in range(1, 9):
                out[(k, j)] = intersect_with_line(curve, tangent_line_of_class(j))
        _imatrix_cache = out
    return _imatrix_cache


def table_multiplicities():
    """Branch count, total multiplicity, and self tangent-line intersection
    for each class (the numerical content of the class table)."""
    out = {}
    imat = intersection_matrix()
    for k in range(1, 9):
        curve = orbit_curve(k, "w%d" % k)
        out[k] = {
            "branches": curve.branch_count(),
            "multiplicity": curve.multiplicity(),
            "tangent_line_intersection": imat[(k, k)],
        }
    return out


# -- invariant equations -------------------------------------------------------


def _homogeneous_parts(p):
    parts = {}
    for m, c in p.terms.items():
        d = sum(e for v, e in m if v in ("u", "v"))
        parts.setdefault(d, {})[m] = c
    return {d: Poly(t) for d, t in parts.items()}


def _band_mul(parts, q, width):
    """Multiply a degree-banded dict of homogeneous parts by a polynomial,
    keeping only degrees within `width` of the minimum."""
    qparts = _homogeneous_parts(q)
    out = {}
    for d1, p1 in parts.items():
        for d2, p2 in qparts.items():
            d = d1 + d2
            prod = p1 * p2
            if d in out:
                out[d] = out[d] + prod
            else:
                out[d] = prod
    lo = min(d for d, p in out.items() if not p.is_zero())
    return {d: p for d, p in out.items() if d <= lo + width and not p.is_zero()}


def curve_equation_banded(curves, width):
    """Product of all branch equations, kept only in the lowest degree
    band of the given width.  Returns {degree: homogeneous Poly}."""
    parts = {0: Poly.const(1)}
    for c in curves:
        for b in c.branches:
            parts = _band_mul(parts, b.equation(), width)
    return parts


def _collect_uv(p):
    """Split a Poly into {(u,v)-monomial: Poly in the remaining moduli}."""
    out = {}
    for m, c in p.terms.items():
        uv = tuple((v, e) for v, e in m if v in ("u", "v"))
        rest = tuple((v, e) for v, e in m if v not in ("u", "v"))
        bucket = out.setdefault(uv, {})
        got = bucket.get(rest)
        bucket[rest] = c if got is None else got + c
    return {uv: Poly({m: c for m, c in t.items() if not c.is_zero()}) for uv, t in out.items()}


def rewrite_invariant(parts):
    """Write banded homogeneous invariants in the forms: returns a dict
    {(i, j, k): coefficient} with E^i F^j V^k, i <= 1.

    Coefficients are rational functions in the curve moduli."""
    Eh, Fh, Vh = invariant_forms()
    out = {}
    for d in sorted(parts):
        collected = _collect_uv(parts[d])
        basis = []
        for i in (0, 1):
            rem = d - 30 * i
            if rem < 0:
                continue
            for j in range(rem // 20 + 1):
                rest = rem - 20 * j
                if rest % 12 == 0:
                    basis.append((i, j, rest // 12))
        if not basis:
            raise ArithmeticError("degree %d is not a weight of the invariant ring" % d)
        cols = [Eh ** i * Fh ** j * Vh ** k for (i, j, k) in basis]
        monos = sorted({m for q in cols for m in q.terms} | set(collected))
        rows = []
        rhs = []
        for m in monos:
            rows.append([GenericScalar(_as_poly(q.terms.get(m, Poly.zero()))) for q in cols])
            rhs.append(GenericScalar(collected.get(m, Poly.zero())))
        status, sol, _ = linear_solve(rows, rhs)
        if status != "unique":
            raise ArithmeticError("invariant rewriting not unique (status %s)" % status)
        for idx, coeff in zip(basis, sol):
            if isinstance(coeff, CycNum):
                coeff = GenericScalar(_as_poly(coeff))
            if not coeff.is_zero():
                out[idx] = coeff.normalize()
    return out


def _as_poly(c):
    if isinstance(c, Poly):
        return c
    return Poly({(): c}) if not c.is_zero() else Poly.zero()


def invariant_equation(curves, width=24):
    """The low-weight part of the invariant equation of a union of orbit
    curves, as a dict {(i, j, k): coefficient} for E^i F^j V^k."""
    return rewrite_invariant(curve_equation_banded(curves, width))


def tangent_cone_class(curves):
    """Exponents (e, f, v) with the tangent cone equal to a scalar times
    E^e F^f V^v; raises if the lowest part is not such a monomial."""
    parts = curve_equation_banded(curves, 0)
    low = parts[min(parts)]
    rewritten = rewrite_invariant({min(parts): low})
    if len(rewritten) != 1:
        raise ArithmeticError("tangent cone is not a monomial in the forms: %r" % rewritten)
    (idx, coeff), = rewritten.items()
    if coeff.is_zero():
        raise ArithmeticError("degenerate tangent cone")
    return idx
