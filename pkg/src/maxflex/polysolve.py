"""Resultants, exact linear algebra, and root finding.

Everything here is exact.  Rational roots of integer polynomials are found
with a modular method: roots mod a few 62-bit primes, CRT-lifted candidates,
then exact verification.  Roots in the algebraic closure are produced either
as conjugate packets (one representative per adjoined factor) or, on request,
fully enumerated inside a nested tower.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from .fields import UniPoly, squarefree_part

# ---------------------------------------------------------------------------
# determinants and resultants
# ---------------------------------------------------------------------------

def det_bareiss_poly(matrix, tower):
    """Fraction-free determinant of a matrix of UniPoly entries."""
    n = len(matrix)
    if n == 0:
        return UniPoly(tower, (Fraction(1),))
    m = [list(row) for row in matrix]
    sign = 1
    prev = UniPoly(tower, (Fraction(1),))
    for k in range(n - 1):
        if m[k][k].is_zero():
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return UniPoly(tower, ())
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = UniPoly(tower, ())
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant_bivariate(f_cols, g_cols, tower):
    """Resultant in u of sum f_cols[j]*u**j and sum g_cols[j]*u**j.

    The columns are UniPoly in the surviving variable.  Returns a UniPoly
    over ``tower``; the zero polynomial signals a common factor (or a zero
    argument).
    """
    f = list(f_cols)
    g = list(g_cols)
    while f and f[-1].is_zero():
        f.pop()
    while g and g[-1].is_zero():
        g.pop()
    if not f or not g:
        return UniPoly(tower, ())
    df, dg = len(f) - 1, len(g) - 1
    if df == 0:
        return _poly_pow(f[0], dg, tower)
    if dg == 0:
        return _poly_pow(g[0], df, tower)
    n = df + dg
    zero = UniPoly(tower, ())
    rows = []
    for i in range(dg):
        row = [zero] * n
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(df):
        row = [zero] * n
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return det_bareiss_poly(rows, tower)


def _poly_pow(p, n, tower):
    out = UniPoly(tower, (Fraction(1),))
    for _ in range(n):
        out = out * p
    return out


def resultant_univariate(f, g):
    """Resultant of two univariate polynomials over the same tower."""
    tower = f.tower
    f_cols = [UniPoly(tower, (c,)) for c in f.coeffs]
    g_cols = [UniPoly(tower, (c,)) for c in g.coeffs]
    r = resultant_bivariate(f_cols, g_cols, tower)
    if r.is_zero():
        return tower.zero()
    return r.coefficient(0)


# ---------------------------------------------------------------------------
# exact linear algebra over a tower
# ---------------------------------------------------------------------------

def row_reduce(rows, tower):
    """Reduced row echelon form; returns (rref rows, pivot column list).

    Pivot tests use the sound zero test, so reduction over a split-pending
    tower may raise ZeroDivisorEncountered for the caller to handle.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(m)):
            if not m[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].invert()
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero():
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def kernel_basis(rows, ncols, tower):
    """Basis of the right kernel of the matrix given by ``rows``."""
    rref, pivots = row_reduce(rows, tower)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [tower.zero()] * ncols
        vec[fc] = tower.one()
        for r, pc in enumerate(pivots):
            vec[pc] = -rref[r][fc]
        basis.append(vec)
    return basis


def mat3_det(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def mat3_adjugate(m):
    def minor(i, j):
        r = [k for k in range(3) if k != i]
        c = [k for k in range(3) if k != j]
        return m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]

    adj = [[None] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            val = minor(j, i)
            if (i + j) % 2 == 1:
                val = -val
            adj[i][j] = val
    return adj


def mat3_apply(m, v):
    return tuple(m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] for i in range(3))


# ---------------------------------------------------------------------------
# rational roots of polynomials over Q (modular method)
# ---------------------------------------------------------------------------

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(n):
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _next_prime(n):
    n += 1
    if n % 2 == 0:
        n += 1
    while not _is_prime(n):
        n += 2
    return n


def _zp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _zp_rem(a, mod, p):
    a = _zp_trim(list(a))
    dm = len(mod) - 1
    inv = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv % p
        k = len(a) - 1 - dm
        for j in range(dm + 1):
            a[k + j] = (a[k + j] - c * mod[j]) % p
        a = _zp_trim(a)
    return a


def _zp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _zp_trim(out)


def _zp_mulmod(a, b, mod, p):
    return _zp_rem(_zp_mul(a, b, p), mod, p)


def _zp_div(a, b, p):
    a = _zp_trim(list(a))
    b = _zp_trim(list(b))
    inv = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for j in range(len(b)):
            a[k + j] = (a[k + j] - c * b[j]) % p
        a = _zp_trim(a)
    return _zp_trim(q)


def _zp_gcd(a, b, p):
    a = _zp_trim(list(a))
    b = _zp_trim(list(b))
    while b:
        a, b = b, _zp_rem(a, b, p)
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def _zp_powmod(base, e, mod, p):
    result = [1]
    base = _zp_rem(list(base), mod, p)
    while e:
        if e & 1:
            result = _zp_mulmod(result, base, mod, p)
        base = _zp_mulmod(base, base, mod, p)
        e >>= 1
    return result


def _roots_mod_p(coeffs, p, rng):
    """All roots in GF(p) of an integer polynomial (deterministic given rng)."""
    f = _zp_trim([c % p for c in coeffs])
    if len(f) <= 1:
        return []
    xp = _zp_powmod([0, 1], p, f, p)
    lin = list(xp) + [0, 0]
    lin[1] = (lin[1] - 1) % p
    h = _zp_gcd(f, _zp_trim(lin), p)
    roots = []
    stack = [h]
    while stack:
        g = _zp_trim(list(stack.pop()))
        if len(g) <= 1:
            continue
        if len(g) == 2:
            roots.append((-g[0] * pow(g[1], p - 2, p)) % p)
            continue
        while True:
            a = rng.randrange(p)
            w = _zp_powmod([a, 1], (p - 1) // 2, g, p)
            w = list(w) + [0]
            w[0] = (w[0] - 1) % p
            d = _zp_gcd(_zp_trim(w), g, p)
            if 0 < len(d) - 1 < len(g) - 1:
                stack.append(d)
                stack.append(_zp_div(g, d, p))
                break
    return sorted(roots)


def _int_nthroot(n, k):
    """Floor of the k-th root of a nonnegative integer (pure integer Newton)."""
    if n == 0:
        return 0
    if k == 1:
        return n
    x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _kth_root_ceil(n, k):
    """Smallest integer r with r**k >= n, for n >= 0."""
    if n <= 0:
        return 0
    r = _int_nthroot(n, k)
    if r**k < n:
        r += 1
    return r


def _root_bound(coeffs):
    """Fujiwara-style bound on the absolute value of any complex root."""
    an = abs(coeffs[-1])
    n = len(coeffs) - 1
    best = 0
    for i in range(n):
        if coeffs[i] == 0:
            continue
        ratio = -(-abs(coeffs[i]) // an)  # ceil division
        best = max(best, _kth_root_ceil(ratio, n - i))
    return 2 * best + 1


def _rational_reconstruct(r, m, num_bound, den_bound):
    """u/v with u/v = r (mod m), |u| <= num_bound, 0 < v <= den_bound, or None."""
    a0, a1 = m, r % m
    u0, u1 = 0, 1
    while a1 > num_bound:
        q = a0 // a1
        a0, a1 = a1, a0 - q * a1
        u0, u1 = u1, u0 - q * u1
    if a1 == 0 or abs(u1) > den_bound:
        return None
    if u1 < 0:
        a1, u1 = -a1, -u1
    return a1, u1


def _qdiv_linear(coeffs, root):
    """Divide a rational coefficient list (lowest first) by (x - root)."""
    n = len(coeffs) - 1
    q = [Fraction(0)] * n
    q[n - 1] = coeffs[n]
    for j in range(n - 1, 0, -1):
        q[j - 1] = coeffs[j] + root * q[j]
    rem = coeffs[0] + root * q[0]
    return q, rem


def rational_roots(f):
    """All rational roots of a polynomial over Q, with multiplicities.

    Returns a list of (Fraction, multiplicity) pairs sorted by value.
    """
    if f.tower.height != 0:
        raise ValueError("rational_roots expects a polynomial over Q")
    if f.is_zero():
        raise ValueError("zero polynomial")
    qs = f.rational_coeffs()
    den = 1
    for q in qs:
        den = den * q.denominator // gcd(den, q.denominator)
    coeffs = [int(q * den) for q in qs]
    roots = []
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        roots.append(Fraction(0))
    roots = roots[:1]  # multiplicity recovered below
    if len(coeffs) > 1:
        g = 0
        for c in coeffs:
            g = gcd(g, abs(c))
        coeffs = [c // g for c in coeffs]
        an = abs(coeffs[-1])
        n = len(coeffs) - 1
        bound = _root_bound(coeffs)
        num_bound = bound * an
        den_bound = an
        target = 2 * num_bound * den_bound + 1
        rng = random.Random(0x5EED)
        prime = 1 << 62
        candidates = None
        modulus = 1
        while modulus < target:
            prime = _next_prime(prime)
            if coeffs[-1] % prime == 0:
                continue
            roots_p = _roots_mod_p(coeffs, prime, rng)
            if candidates is None:
                candidates = [r for r in roots_p]
            else:
                merged = []
                inv = pow(modulus % prime, prime - 2, prime)
                for r in candidates:
                    for s in roots_p:
                        t = (s - r) % prime * inv % prime
                        merged.append(r + modulus * t)
                candidates = merged
            modulus *= prime
            if not candidates:
                break
        seen = set()
        for r in candidates or ():
            rec = _rational_reconstruct(r, modulus, num_bound, den_bound)
            if rec is None:
                continue
            u, v = rec
            x = Fraction(u, v)
            if x in seen:
                continue
            seen.add(x)
            acc = 0
            for i, c in enumerate(coeffs):
                acc += c * u**i * v ** (n - i)
            if acc == 0:
                roots.append(x)
    out = []
    for root in roots:
        mult = 0
        poly = list(qs)
        while len(poly) > 1:
            q, rem = _qdiv_linear(poly, root)
            if rem != 0:
                break
            poly = q
            mult += 1
        if mult:
            out.append((root, mult))
    return sorted(out)


# ---------------------------------------------------------------------------
# roots over towers: packets and full enumeration
# ---------------------------------------------------------------------------

class RootPacket:
    """A representative root together with the tower it lives in.

    ``orbit`` counts how many closure roots the entry stands for: 1 when the
    root was pinned down individually, the degree of the adjoined factor when
    the entry represents a full conjugate packet.
    """

    __slots__ = ("element", "tower", "orbit")

    def __init__(self, element, tower, orbit):
        self.element = element
        self.tower = tower
        self.orbit = orbit

    def __repr__(self):
        return "RootPacket(orbit=%d, tower=%r)" % (self.orbit, self.tower)


def root_packets(f, tower, enumerate_conjugates=False, name_hint=None, on_budget="raise"):
    """Distinct roots of f over the closure of ``tower``.

    Multiplicities are dropped (take the squarefree part first if they
    matter).  With ``enumerate_conjugates`` the factors are peeled root by
    root inside nested extensions (budget permitting); otherwise one
    representative per adjoined squarefree factor is returned with its orbit
    size.  A required extension past the degree cap raises BudgetExceeded,
    or with on_budget="skip" ends the enumeration with the roots found so
    far.
    """
    from .errors import BudgetExceeded

    g = squarefree_part(f)
    out = []
    hint = name_hint or "r"
    if tower.height == 0:
        for root, _m in rational_roots(g):
            out.append(RootPacket(tower.rational(root), tower, 1))
            g = g.exact_div(UniPoly(tower, (-root, Fraction(1))))
    while g.degree >= 1:
        if g.degree == 1:
            root = -(g.coefficient(0) / g.coefficient(1))
            out.append(RootPacket(root, tower, 1))
            break
        try:
            ext = tower.extend(g.monic(), name="%s%d" % (hint, tower.height))
        except BudgetExceeded:
            if on_budget == "skip":
                break
            raise
        alpha = ext.generator()
        if not enumerate_conjugates:
            out.append(RootPacket(alpha, ext, g.degree))
            break
        out.append(RootPacket(alpha, ext, 1))
        lifted = g.monic().embedded(ext)
        g = lifted.exact_div(UniPoly(ext, (-alpha, ext.one())))
        tower = ext
    return out
