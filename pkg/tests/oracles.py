"""Independent oracles used by the test suite.

Everything here is deliberately written against plain Fractions and brute
force so it shares no code path with the implementations it checks.
"""

from fractions import Fraction
from math import gcd


def local_quotient_dimension(f_terms, g_terms, cap=24):
    """Intersection multiplicity at the origin as a quotient-algebra dimension.

    f_terms/g_terms map (i, j) exponent pairs to Fractions; both vanish at
    the origin.  Computes dim K[x,y]/(f, g, m^M) by exact row reduction for
    growing truncation order M until the value stabilizes; that stable value
    is the local intersection number when it is reached before ``cap``.
    """
    prev = None
    for order in range(2, cap):
        dim = _truncated_dimension(f_terms, g_terms, order)
        if prev is not None and dim == prev:
            return dim
        prev = dim
    raise RuntimeError("local dimension did not stabilize below the cap")


def _truncated_dimension(f_terms, g_terms, order):
    monomials = [(i, j) for i in range(order) for j in range(order - i)]
    index = {m: k for k, m in enumerate(monomials)}
    rows = []
    for terms in (f_terms, g_terms):
        for (a, b) in monomials:
            row = [Fraction(0)] * len(monomials)
            nonzero = False
            for (i, j), c in terms.items():
                key = (i + a, j + b)
                if key in index:
                    row[index[key]] += c
                    nonzero = True
            if nonzero:
                rows.append(row)
    rank = _rank(rows)
    return len(monomials) - rank


def _rank(rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        rank += 1
        if r == len(rows):
            break
    return rank


def lattice_subgroup(vectors, modulus):
    """Brute-force closure of a generating set inside (Z/N)^2."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        x = frontier.pop()
        for g in vectors:
            y = ((x[0] + g[0]) % modulus, (x[1] + g[1]) % modulus)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def brute_order(vec, modulus):
    """Order of a lattice vector by explicit repeated addition."""
    acc = (0, 0)
    for n in range(1, modulus + 1):
        acc = ((acc[0] + vec[0]) % modulus, (acc[1] + vec[1]) % modulus)
        if acc == (0, 0):
            return n
    raise RuntimeError("no order found within the modulus")


def divisor_gcd(values):
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
