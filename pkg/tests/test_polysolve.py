"""Root finding, resultants, and exact linear algebra."""

import random
from fractions import Fraction

from maxflex import QQ, UniPoly, extend_field, rational_roots, root_packets
from maxflex.polysolve import kernel_basis, resultant_bivariate, resultant_univariate


def qpoly(*coeffs):
    return UniPoly.from_rationals(QQ, coeffs)


def test_rational_roots_simple():
    assert rational_roots(qpoly(6, -5, 1)) == [(Fraction(2), 1), (Fraction(3), 1)]


def test_rational_roots_with_multiplicity_and_zero():
    # 4 t^2 (1 - t)
    f = qpoly(0, 0, 4, -4)
    assert rational_roots(f) == [(Fraction(0), 2), (Fraction(1), 1)]


def test_rational_roots_fractional():
    f = qpoly(Fraction(1, 3), Fraction(-4, 3), 1)
    assert rational_roots(f) == [(Fraction(1, 3), 1), (Fraction(1), 1)]


def test_rational_roots_none():
    assert rational_roots(qpoly(Fraction(-1, 2), 0, 1)) == []


def test_rational_roots_large_coefficients():
    rng = random.Random(3)
    roots = [Fraction(rng.randint(-50, 50)) for _ in range(3)]
    f = qpoly(1)
    for r in roots:
        f = f * qpoly(-r, 1)
    # multiply in an irreducible factor with huge coefficients
    f = f * qpoly(10**40 + 1, 0, 10**39 + 7, 1)
    found = rational_roots(f)
    assert sorted(r for r, _m in found) == sorted(set(roots))


def test_resultant_of_coprime_and_common_root():
    r = resultant_univariate(qpoly(-1, 0, 1), qpoly(-4, 0, 1))
    assert r.as_rational() == 9
    shared = resultant_univariate(qpoly(-1, 1) * qpoly(-2, 1), qpoly(-1, 1))
    assert shared.is_zero()


def test_resultant_bivariate_eliminates():
    # f = u^2 - x, g = u - x : resultant in u is x^2 - x
    x = UniPoly(QQ, (0, 1))
    one = UniPoly(QQ, (1,))
    f_cols = [-x, UniPoly(QQ, ()), one]
    g_cols = [-x, one]
    r = resultant_bivariate(f_cols, g_cols, QQ)
    assert r.rational_coeffs() == [Fraction(0), Fraction(-1), Fraction(1)]


def test_root_packets_enumerates_conjugates():
    pk = root_packets(qpoly(1, 0, 0, 1), QQ, enumerate_conjugates=True)
    assert [p.orbit for p in pk] == [1, 1, 1]
    degs = sorted(p.tower.absolute_degree for p in pk)
    assert degs == [1, 2, 2]
    # every returned element is a root
    for p in pk:
        f = qpoly(1, 0, 0, 1).embedded(p.tower)
        assert f.evaluate(p.element).is_zero()


def test_root_packets_orbit_mode():
    pk = root_packets(qpoly(1, 0, 0, 1), QQ, enumerate_conjugates=False)
    assert sorted(p.orbit for p in pk) == [1, 2]


def test_root_packets_over_extension():
    k = extend_field(QQ, qpoly(1, 1, 1), name="w", irreducible=True)
    w = k.generator()
    # (t - w)(t - w^2) = t^2 + t + 1 over the tower: no in-tower detection,
    # but the adjoined packet still covers both roots
    f = UniPoly(k, [k.one(), k.one(), k.one()])
    pk = root_packets(f, k)
    assert sum(p.orbit for p in pk) == 2


def test_kernel_basis_dimensions():
    one, zero = QQ.one(), QQ.zero()
    rows = [[one, zero, -one], [zero, one, -one]]
    basis = kernel_basis(rows, 3, QQ)
    assert len(basis) == 1
    v = basis[0]
    assert (v[0] - v[2]).is_zero() and (v[1] - v[2]).is_zero()
