"""Weierstrass models of smooth cubics with a flex, and division polynomials.

A cubic with a flex origin is carried to y^2 z + a1 x y z + a3 y z^2 =
x^3 + a2 x^2 z + a4 x z^2 + a6 z^3 by a projective change of coordinates
sending the flex to [0:1:0] and its tangent to the line z = 0.  The model
supports the textbook affine addition formulas and the univariate division
polynomial machinery used by the torsion oracles, point halving and
trisection.  The chord-tangent law in geometry.py stays the independent
primary route; everything here is a search/oracle device.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .errors import SingularPoint
from .fields import TowerElement, UniPoly, _is_szero, embed_rep, with_splitting
from .geometry import PlaneCurve, ProjPoint, _proportional_forms
from .polysolve import mat3_adjugate, mat3_apply, rational_roots, root_packets


class WeierstrassModel:
    """A Weierstrass form together with the transform back to the source cubic.

    ``to_source`` maps model coordinates to coordinates of the cubic the
    model was derived from; ``from_source`` is its adjugate inverse.
    Affine model points are (x, y) pairs of tower elements, with None for
    the point at infinity.
    """

    __slots__ = ("tower", "a1", "a2", "a3", "a4", "a6", "to_source", "from_source")

    def __init__(self, tower, a_invariants, to_source=None, from_source=None):
        self.tower = tower
        self.a1, self.a2, self.a3, self.a4, self.a6 = a_invariants
        if to_source is None:
            one, zero = tower.one(), tower.zero()
            to_source = [[one, zero, zero], [zero, one, zero], [zero, zero, one]]
        if from_source is None:
            from_source = mat3_adjugate(to_source)
        self.to_source = to_source
        self.from_source = from_source

    # -- the model as a projective curve --------------------------------------

    def curve(self):
        t = self.tower
        one = t.one()
        return PlaneCurve(
            t,
            3,
            {
                (0, 2, 1): one,
                (1, 1, 1): self.a1,
                (0, 1, 2): self.a3,
                (3, 0, 0): -one,
                (2, 0, 1): -self.a2,
                (1, 0, 2): -self.a4,
                (0, 0, 3): -self.a6,
            },
        )

    def b_invariants(self):
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def discriminant(self):
        b2, b4, b6, b8 = self.b_invariants()
        return (
            -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        )

    # -- affine arithmetic ------------------------------------------------------

    def on_curve(self, pt):
        if pt is None:
            return True
        x, y = pt
        lhs = y * y + self.a1 * x * y + self.a3 * y
        rhs = x * x * x + self.a2 * x * x + self.a4 * x + self.a6
        return (lhs - rhs).is_zero()

    def neg(self, pt):
        if pt is None:
            return None
        x, y = pt
        return (x, -y - self.a1 * x - self.a3)

    def add(self, p1, p2):
        if p1 is None:
            return p2
        if p2 is None:
            return p1
        x1, y1 = p1
        x2, y2 = p2
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        if (x1 - x2).is_zero():
            if (y1 + y2 + a1 * x2 + a3).is_zero():
                return None
            den = 2 * y1 + a1 * x1 + a3
            inv = den.invert()
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * inv
            nu = (-(x1 * x1 * x1) + a4 * x1 + 2 * a6 - a3 * y1) * inv
        else:
            inv = (x2 - x1).invert()
            lam = (y2 - y1) * inv
            nu = (y1 * x2 - y2 * x1) * inv
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return (x3, y3)

    def mul(self, n, pt):
        if n < 0:
            return self.mul(-n, self.neg(pt))
        acc = None
        base = pt
        while n:
            if n & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            n >>= 1
        return acc

    def order(self, pt, bound):
        acc = pt
        for n in range(1, bound + 1):
            if acc is None:
                return n
            acc = self.add(acc, pt)
        return None

    # -- moving points between the model and the source cubic --------------------

    def point_to_source(self, pt, tower=None):
        tower = tower or self.tower
        if pt is None:
            v = (tower.zero(), tower.one(), tower.zero())
        else:
            v = (pt[0], pt[1], tower.one())
        mat = self._embedded_matrix(self.to_source, tower)
        return ProjPoint(tower, mat3_apply(mat, v))

    def point_from_source(self, p):
        tower = p.tower
        mat = self._embedded_matrix(self.from_source, tower)
        img = ProjPoint(tower, mat3_apply(mat, p.coords))
        if img.coords[2].is_zero():
            return None
        zinv = img.coords[2].invert()
        return (img.coords[0] * zinv, img.coords[1] * zinv)

    def _embedded_matrix(self, mat, tower):
        if tower == self.tower:
            return mat
        return [
            [TowerElement(tower, embed_rep(self.tower, tower, e.rep)) for e in row]
            for row in mat
        ]

    def embedded(self, tower):
        ai = tuple(
            TowerElement(tower, embed_rep(self.tower, tower, a.rep))
            for a in (self.a1, self.a2, self.a3, self.a4, self.a6)
        )
        to_src = self._embedded_matrix(self.to_source, tower)
        from_src = self._embedded_matrix(self.from_source, tower)
        return WeierstrassModel(tower, ai, to_src, from_src)


def weierstrass_model(e):
    """Derive a Weierstrass model from an elliptic structure.

    The flex goes to [0:1:0] and the inflectional tangent to z = 0; a final
    rational rescaling normalizes the x^3 and y^2 z coefficients.  The
    composite transform is verified against the source form exactly.
    """
    t = e.tower
    cubic = e.cubic
    O = e.origin
    LO = e.origin_tangent
    from .geometry import _line_frame

    A, B0 = _line_frame(LO)
    A_pt = A if A != O else B0
    # a third basis point off the tangent line
    basis_b = None
    for cand in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        p = ProjPoint(t, [t.rational(c) for c in cand])
        if not LO.contains(p):
            basis_b = p
            break
    m = [
        [A_pt.coords[i], O.coords[i], basis_b.coords[i]]
        for i in range(3)
    ]
    g = _pullback(cubic, m)
    alpha = g.coefficient((3, 0, 0))
    beta = g.coefficient((0, 2, 1))
    if alpha.is_zero() or beta.is_zero():
        raise SingularPoint("degenerate flex frame")
    tt = -(alpha * beta)
    ss = alpha * alpha * beta
    scale = [[tt, t.zero(), t.zero()], [t.zero(), ss, t.zero()], [t.zero(), t.zero(), t.one()]]
    w = _mat_mul(m, scale, t)
    g2 = _pullback(cubic, w)
    unit = (beta * ss * ss).invert()

    def coeff(exps):
        return g2.coefficient(exps) * unit

    a1 = coeff((1, 1, 1))
    a3 = coeff((0, 1, 2))
    a2 = -coeff((2, 0, 1))
    a4 = -coeff((1, 0, 2))
    a6 = -coeff((0, 0, 3))
    model = WeierstrassModel(t, (a1, a2, a3, a4, a6), to_source=w)
    if not _proportional_forms(_pullback(cubic, w), model.curve()):
        raise SingularPoint("model derivation failed verification")
    return model


def _pullback(curve, mat):
    """The form curve(mat * (x, y, z)) as a new PlaneCurve."""
    t = curve.tower
    rows = [
        PlaneCurve(
            t,
            1,
            {
                (1, 0, 0): mat[i][0],
                (0, 1, 0): mat[i][1],
                (0, 0, 1): mat[i][2],
            },
        )
        for i in range(3)
    ]
    total = None
    for exps, c in curve.form.items():
        term = None
        for axis, e in enumerate(exps):
            for _ in range(e):
                term = rows[axis] if term is None else term * rows[axis]
        term = term.scale(c) if term is not None else None
        if term is None:
            # constant term cannot occur for positive degree forms
            continue
        if total is None:
            total = dict(term.form)
        else:
            for k, v in term.form.items():
                total[k] = total[k] + v if k in total else v
    total = {k: v for k, v in total.items() if not _is_szero(v.rep, t.height)}
    return PlaneCurve(t, curve.degree, total)


def _mat_mul(a, b, tower):
    out = [[tower.zero()] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            acc = tower.zero()
            for k in range(3):
                acc = acc + a[i][k] * b[k][j]
            out[i][j] = acc
    return out


# ---------------------------------------------------------------------------
# univariate division polynomials
# ---------------------------------------------------------------------------

class DivisionPolynomials:
    """Univariate division polynomial cache for a Weierstrass model.

    Uses the even/odd convention in which the full division polynomial is
    p_n for odd n and p_n * (2y + a1 x + a3) for even n, so every stored
    polynomial lives in the x-line.  ``doubling_cubic`` is the square of the
    even factor, 4x^3 + b2 x^2 + 2 b4 x + b6.
    """

    def __init__(self, model):
        self.model = model
        t = model.tower
        b2, b4, b6, b8 = model.b_invariants()
        one = UniPoly(t, (t.one(),))
        self.doubling_cubic = UniPoly(t, (b6, 2 * b4, b2, t.rational(4)))
        self._cache = {
            0: UniPoly(t, ()),
            1: one,
            2: one,
            3: UniPoly(t, (b8, 3 * b6, 3 * b4, b2, t.rational(3))),
            4: UniPoly(
                t,
                (
                    b4 * b8 - b6 * b6,
                    b2 * b8 - b4 * b6,
                    10 * b8,
                    10 * b6,
                    5 * b4,
                    b2,
                    t.rational(2),
                ),
            ),
        }

    def raw(self, n):
        if n < 0:
            raise ValueError("nonnegative index expected")
        cache = self._cache
        if n in cache:
            return cache[n]
        B2 = self.doubling_cubic * self.doubling_cubic
        m = n // 2
        if n % 2 == 1:
            a = self.raw(m + 2) * self.raw(m) * self.raw(m) * self.raw(m)
            b = self.raw(m - 1) * self.raw(m + 1) * self.raw(m + 1) * self.raw(m + 1)
            val = a * B2 - b if m % 2 == 0 else a - b * B2
        else:
            val = self.raw(m) * (
                self.raw(m + 2) * self.raw(m - 1) * self.raw(m - 1)
                - self.raw(m - 2) * self.raw(m + 1) * self.raw(m + 1)
            )
        cache[n] = val
        return val

    def multiplication_numerator(self, n):
        """phi_n with x(nP) = phi_n(x) / psi_n(x)^2."""
        t = self.model.tower
        x = UniPoly(t, (t.zero(), t.one()))
        pn = self.raw(n)
        side = self.raw(n + 1) * self.raw(n - 1)
        if n % 2 == 0:
            return x * pn * pn * self.doubling_cubic - side
        return x * pn * pn - side * self.doubling_cubic

    def multiplication_denominator(self, n):
        """psi_n^2 as a polynomial in x."""
        pn = self.raw(n)
        sq = pn * pn
        if n % 2 == 0:
            return sq * self.doubling_cubic
        return sq

    def exact_order_poly(self, n):
        """Polynomial whose roots are x-coordinates of points of exact order n."""
        if n < 2:
            raise ValueError("order must be at least 2")
        if n == 2:
            return self.doubling_cubic.monic()
        from .fields import poly_gcd, squarefree_part

        q = squarefree_part(self.raw(n))
        strip = [self.doubling_cubic]
        for d in range(3, n):
            if n % d == 0:
                strip.append(self.raw(d))
        for s in strip:
            s = squarefree_part(s)
            while True:
                g = poly_gcd(q, s)
                if g.degree < 1:
                    break
                q = q.exact_div(g)
        return q.monic()


def _rational_sqrt(q):
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def curve_y_solutions(model, x0):
    """Points (x0, y) on the model with rational y, given rational-ish x0."""
    t = model.tower
    a = model.a1 * x0 + model.a3
    rhs = x0 * x0 * x0 + model.a2 * x0 * x0 + model.a4 * x0 + model.a6
    disc = a * a + 4 * rhs
    try:
        d = disc.as_rational()
    except ValueError:
        return []
    root = _rational_sqrt(d)
    if root is None:
        return []
    half = Fraction(1, 2)
    ys = {(-a + t.rational(root)) * half, (-a - t.rational(root)) * half}
    return [(x0, y) for y in ys]


def rational_points_of_order(model, n, bound=None):
    """All model points of exact order n with rational coordinates.

    The x-coordinates are rational roots of the reduced division polynomial;
    candidate points are verified by explicit multiplication.
    """
    div = DivisionPolynomials(model)
    poly = div.exact_order_poly(n)
    out = []
    for x0, _mult in rational_roots(poly):
        for pt in curve_y_solutions(model, model.tower.rational(x0)):
            if not model.on_curve(pt):
                continue
            if model.order(pt, n) == n:
                out.append(pt)
    return out


def halving_polynomial(model, target):
    """Quartic whose roots are x-coordinates of points P with x(2P) = x(target)."""
    div = DivisionPolynomials(model)
    num = div.multiplication_numerator(2)
    den = div.multiplication_denominator(2)
    xq = target[0]
    return num - UniPoly(model.tower, (xq,)) * den


def halve_point(model, target, name_hint="h"):
    """Points P with 2P = target, each with the tower it needs.

    Prefers rational solutions; otherwise adjoins the squarefree part of the
    halving quartic and, when required, a square root for the y-coordinate.
    Every candidate is verified by doubling (with a sign fix when it doubles
    to -target); reducible adjoined moduli are split transparently, so the
    returned towers may be branch towers.
    """
    t = model.tower
    quartic = halving_polynomial(model, target)
    half = Fraction(1, 2)
    out = []

    def y_case(tower, x0):
        """Classify the y-solution over ``tower``: the discriminant and whether
        a square root extension is needed."""
        m = model.embedded(tower)
        a = m.a1 * x0 + m.a3
        rhs = x0 * x0 * x0 + m.a2 * x0 * x0 + m.a4 * x0 + m.a6
        disc = a * a + 4 * rhs
        try:
            d = disc.as_rational()
        except ValueError:
            d = None
        root = _rational_sqrt(d) if d is not None else None
        if root is not None:
            return ("direct", (-a + tower.rational(root)) * half, disc)
        if disc.is_zero():
            return ("direct", -a * half, disc)
        return ("sqrt", a, disc)

    def verify(tower, x0, y0):
        m = model.embedded(tower)
        pt = (x0, y0)
        if not m.on_curve(pt):
            return None
        dbl = m.mul(2, pt)
        if dbl is None:
            return None
        tgt = (target[0].embedded(tower), target[1].embedded(tower))
        if not (dbl[0] - tgt[0]).is_zero():
            return None
        if (dbl[1] - tgt[1]).is_zero():
            return pt
        return m.neg(pt)

    for packet in root_packets(quartic, t, enumerate_conjugates=False, name_hint=name_hint):
        ext = packet.tower
        x0 = packet.element
        for branch, case in with_splitting(ext, lambda tw: y_case(tw, x0.migrated(tw))):
            kind, val, disc = case
            if kind == "direct":
                pairs = [(branch, x0.migrated(branch), val)]
            else:
                ext2 = branch.extend(
                    UniPoly(branch, (-disc, branch.zero(), branch.one())),
                    name="%sy%d" % (name_hint, branch.height),
                )
                s = ext2.generator()
                y0 = (-val.embedded(ext2) + s) * half
                pairs = [(ext2, x0.migrated(branch).embedded(ext2), y0)]
            for tower2, xx, yy in pairs:
                for final, res in with_splitting(
                    tower2,
                    lambda tw, xx=xx, yy=yy: verify(tw, xx.migrated(tw), yy.migrated(tw)),
                ):
                    if res is not None:
                        out.append((final, res))
    return out


def trisection_polynomial(model, x_target):
    """Degree-9 polynomial whose roots are x(P) with x(3P) = x_target."""
    div = DivisionPolynomials(model)
    num = div.multiplication_numerator(3)
    den = div.multiplication_denominator(3)
    return num - UniPoly(model.tower, (x_target,)) * den
