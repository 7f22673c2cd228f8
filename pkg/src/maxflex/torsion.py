"""Torsion-divisor invariants of maximal-flex arrangements.

An arrangement (D; C_1, ..., C_k) with a smooth distinguished component and a
maximal tangent assigns to every component a torsion class; weight vectors
produce further classes whose orders predict splitting numbers of cyclic
covers and, through order/multiset/group comparisons, certify Zariski pairs.

Classes live either in the abstract lattice (Z/N)^2 standing for the
N-torsion of the Picard group, or as honest points on a cubic through the
chord-tangent law; a spec may carry both backends, which are required to
agree.
"""

from __future__ import annotations

import json
from itertools import permutations, product
from math import gcd

from .errors import (
    BackendDisagreement,
    EmptyAdmissibleSet,
    ModulusMismatch,
    WrongOrder,
    ZeroVector,
)
from .geometry import ec_add, ec_mul, point_order, tangent_line


def _lcm(a, b):
    return a * b // gcd(a, b)


# ---------------------------------------------------------------------------
# the abstract lattice
# ---------------------------------------------------------------------------

class TorsionClass:
    """An element of (Z/N)^2, standing for a class in the N-torsion of Pic^0."""

    __slots__ = ("modulus", "coords")

    def __init__(self, modulus, coords):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        a, b = coords
        self.modulus = modulus
        self.coords = (a % modulus, b % modulus)

    def __add__(self, other):
        if other.modulus != self.modulus:
            raise ModulusMismatch("lattice moduli differ")
        return TorsionClass(
            self.modulus,
            (self.coords[0] + other.coords[0], self.coords[1] + other.coords[1]),
        )

    def __neg__(self):
        return TorsionClass(self.modulus, (-self.coords[0], -self.coords[1]))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, n):
        return TorsionClass(self.modulus, (n * self.coords[0], n * self.coords[1]))

    def is_zero(self):
        return self.coords == (0, 0)

    def order(self):
        a, b = self.coords
        return self.modulus // gcd(a, gcd(b, self.modulus))

    def order_brute(self):
        """Order by explicit iteration; the independent check of order()."""
        acc = self
        for n in range(1, self.modulus + 1):
            if acc.is_zero():
                return n
            acc = acc + self
        raise RuntimeError("element order exceeds the modulus")

    def rescaled(self, modulus):
        """Image under the embedding (Z/N)^2 -> (Z/M)^2 for N | M."""
        if modulus % self.modulus:
            raise ModulusMismatch("no embedding between the lattices")
        f = modulus // self.modulus
        return TorsionClass(modulus, (f * self.coords[0], f * self.coords[1]))

    def __eq__(self, other):
        return (
            isinstance(other, TorsionClass)
            and self.modulus == other.modulus
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.modulus, self.coords))

    def __repr__(self):
        return "TorsionClass(%d, %r)" % (self.modulus, self.coords)


def weil_exponent(u, v):
    """Determinant pairing exponent on (Z/N)^2; 1 on the standard basis."""
    if u.modulus != v.modulus:
        raise ModulusMismatch("lattice moduli differ")
    a, b = u.coords
    c, d = v.coords
    return (a * d - b * c) % u.modulus


def lattice_span(vectors, modulus):
    """All elements of the subgroup of (Z/N)^2 generated by the vectors."""
    seen = {(0, 0)}
    frontier = [(0, 0)]
    gens = [v.coords for v in vectors]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = ((x[0] + g[0]) % modulus, (x[1] + g[1]) % modulus)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


# ---------------------------------------------------------------------------
# arrangement specifications
# ---------------------------------------------------------------------------

class ComponentData:
    """Degree, gcd multiplicity, intersection divisor and class of one component.

    ``divisor`` is a tuple of (point id, multiplicity) pairs; for a geometric
    backend the ids are ProjPoint instances on the distinguished cubic, for
    the abstract backend arbitrary hashable labels.  ``cls`` is the abstract
    TorsionClass when known.
    """

    __slots__ = ("degree", "m", "divisor", "cls")

    def __init__(self, degree, m, divisor, cls=None):
        divisor = tuple((p, int(mult)) for p, mult in divisor)
        if not divisor:
            raise ValueError("empty intersection divisor")
        mults = [mult for _, mult in divisor]
        g = 0
        for mult in mults:
            g = gcd(g, mult)
        if m != g:
            raise ValueError("m must be the gcd of the divisor multiplicities")
        self.degree = degree
        self.m = m
        self.divisor = divisor
        self.cls = cls

    def signature(self):
        return (self.degree, self.m, tuple(sorted(mult for _, mult in self.divisor)))


class ArrangementSpec:
    """A maximal-flex arrangement (D; C_1, ..., C_k) for the invariant calculus.

    ``structure`` is the EllipticStructure of the distinguished cubic when a
    geometric backend is available; abstract classes may coexist with it and
    are then cross-checked on every order computation.
    """

    def __init__(self, d0, components, structure=None, check=True):
        self.d0 = d0
        self.components = tuple(components)
        self.structure = structure
        self._point_cache = {}
        if not self.components:
            raise ValueError("at least one component required")
        if check:
            self._validate()

    def _validate(self):
        for comp in self.components:
            total = sum(mult for _, mult in comp.divisor)
            if total != self.d0 * comp.degree:
                raise ValueError(
                    "divisor degree %d does not match d0*d = %d"
                    % (total, self.d0 * comp.degree)
                )
            for _, mult in comp.divisor:
                if mult % comp.m:
                    raise ValueError("m does not divide a divisor multiplicity")
            if comp.cls is not None and not comp.cls.scale(comp.m).is_zero():
                raise ValueError("m times the class does not vanish")

    @property
    def k(self):
        return len(self.components)

    @property
    def has_abstract(self):
        return all(c.cls is not None for c in self.components)

    @property
    def has_geometric(self):
        return self.structure is not None

    def lattice_modulus(self):
        mod = 1
        for c in self.components:
            if c.cls is not None:
                mod = _lcm(mod, c.cls.modulus)
        return mod

    def abstract_classes(self):
        mod = self.lattice_modulus()
        return [c.cls.rescaled(mod) for c in self.components]

    def weight_box(self):
        """Upper bound (exclusive) for each weight entry in searches."""
        box = 1
        for c in self.components:
            box = _lcm(box, c.m)
        return box

    def signatures(self):
        return tuple(c.signature() for c in self.components)

    def uniform_gcd(self):
        """gcd of all intersection multiplicities and all component degrees."""
        g = 0
        for c in self.components:
            g = gcd(g, c.degree)
            for _, mult in c.divisor:
                g = gcd(g, mult)
        return g

    # -- geometric sums ---------------------------------------------------------

    def component_point(self, index):
        """The E-point sum of the component's normalized intersection divisor."""
        if index in self._point_cache:
            return self._point_cache[index]
        e = self.structure
        comp = self.components[index]
        acc = e.origin
        for p, mult in comp.divisor:
            acc = ec_add(e, acc, ec_mul(e, mult // comp.m, p))
        self._point_cache[index] = acc
        return acc

    # -- serialization ------------------------------------------------------------

    def to_data(self):
        comps = []
        for c in self.components:
            comps.append(
                {
                    "degree": c.degree,
                    "m": c.m,
                    "class": list(c.cls.coords) if c.cls else None,
                    "modulus": c.cls.modulus if c.cls else None,
                    "divisor": [[str(p), mult] for p, mult in c.divisor],
                }
            )
        return {"d0": self.d0, "components": comps}

    @classmethod
    def from_data(cls, data):
        comps = []
        for entry in data["components"]:
            tc = None
            if entry.get("class") is not None:
                tc = TorsionClass(entry["modulus"], tuple(entry["class"]))
            comps.append(
                ComponentData(
                    entry["degree"],
                    entry["m"],
                    [(p, mult) for p, mult in entry["divisor"]],
                    tc,
                )
            )
        return cls(data["d0"], comps)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            data = json.load(fh)
        spec = cls.from_data(data)
        admissible = [tuple(p) for p in data.get("admissible", [])]
        return spec, admissible


# ---------------------------------------------------------------------------
# weight vectors
# ---------------------------------------------------------------------------

class WeightVector(tuple):
    """Integer weights with overall gcd one, acting on the components."""

    def __new__(cls, entries):
        entries = tuple(int(a) for a in entries)
        g = 0
        for a in entries:
            g = gcd(g, abs(a))
        if g != 1:
            raise ValueError("weight entries must have gcd one")
        return super().__new__(cls, entries)

    def permuted(self, perm):
        """The action a |-> (a_{perm^-1(1)}, ...): entry j takes a[perm^-1(j)]."""
        inv = [0] * len(perm)
        for i, v in enumerate(perm):
            inv[v] = i
        return WeightVector(tuple(self[inv[j]] for j in range(len(self))))


def weight_vectors(k, box):
    """All weight vectors with entries in [0, box), in graded lex order."""
    vecs = []
    for entries in product(range(box), repeat=k):
        g = 0
        for a in entries:
            g = gcd(g, a)
        if g == 1:
            vecs.append(WeightVector(entries))
    vecs.sort(key=lambda v: (sum(v), v))
    return vecs


# ---------------------------------------------------------------------------
# the invariants
# ---------------------------------------------------------------------------

def cover_order(spec, weights):
    """gcd(a_1 m_1, ..., a_k m_k, sum a_j d_j): the order of the induced cover."""
    if len(weights) != spec.k:
        raise ValueError("weight length mismatch")
    g = 0
    s = 0
    for a, comp in zip(weights, spec.components):
        g = gcd(g, abs(a) * comp.m)
        s += a * comp.degree
    return gcd(g, abs(s))


def reduce_weights(spec, weights):
    """Reduce weights into [0, n_a) and strip the content.

    Returns (reduced weight vector b, kappa) with n_a | n_b and
    tau(a) = (kappa * n_b / n_a) tau(b).  Raises ZeroVector when every
    reduced entry vanishes (then tau(a) = 0 and its order is 1).
    """
    na = cover_order(spec, weights)
    reduced = [a - na * (a // na) for a in weights]
    kappa = 0
    for b in reduced:
        kappa = gcd(kappa, b)
    if kappa == 0:
        raise ZeroVector("all reduced entries vanish")
    b = WeightVector(tuple(x // kappa for x in reduced))
    return b, kappa


def torsion_order(spec, weights):
    """Order of the weighted torsion class sum(a_j m_j / n_a * t_j).

    Computed on every backend the spec carries; disagreement between the
    abstract lattice and the geometric group law raises BackendDisagreement.
    """
    na = cover_order(spec, weights)
    orders = {}
    if spec.has_abstract:
        mod = spec.lattice_modulus()
        acc = TorsionClass(mod, (0, 0))
        for a, comp in zip(weights, spec.components):
            acc = acc + comp.cls.rescaled(mod).scale(a * comp.m // na)
        orders["abstract"] = acc.order()
    if spec.has_geometric:
        e = spec.structure
        acc = e.origin
        for idx, (a, comp) in enumerate(zip(weights, spec.components)):
            pt = spec.component_point(idx)
            acc = ec_add(e, acc, ec_mul(e, a * comp.m // na, pt))
        if acc == e.origin:
            orders["geometric"] = 1
        else:
            found = point_order(e, acc, na)
            if found is None:
                raise BackendDisagreement(
                    "geometric order exceeds the cover order bound"
                )
            orders["geometric"] = found
    if not orders:
        raise ValueError("spec carries no backend")
    vals = set(orders.values())
    if len(vals) > 1:
        raise BackendDisagreement("backends disagree: %r" % orders)
    return vals.pop()


def splitting_number(spec, weights):
    """Predicted number of components of the pullback of D: n_a / ord(tau(a))."""
    na = cover_order(spec, weights)
    ord_tau = torsion_order(spec, weights)
    if na % ord_tau:
        raise BackendDisagreement("class order does not divide the cover order")
    return na // ord_tau


class GroupDescriptor:
    """The subgroup generated by the uniformly-normalized component classes.

    Carries the generator classes, their orders, the isomorphism type as a
    pair (exponent, order/exponent), and a kernel test for the associated
    weight map.
    """

    def __init__(self, n, generators, modulus):
        self.n = n
        self.generators = list(generators)
        self.modulus = modulus
        if n == 1 or not generators:
            self.elements = {(0, 0)}
        else:
            self.elements = lattice_span(self.generators, modulus)
        self.order = len(self.elements)
        exp = 1
        for coords in self.elements:
            exp = _lcm(exp, TorsionClass(modulus, coords).order())
        self.exponent = exp

    @property
    def generator_orders(self):
        return [g.order() for g in self.generators]

    def group_type(self):
        if self.order == 1:
            return (1, 1)
        return (self.exponent, self.order // self.exponent)

    def type_string(self):
        a, b = self.group_type()
        if a == 1:
            return "trivial"
        if b == 1:
            return "Z/%d" % a
        return "Z/%d x Z/%d" % (a, b)

    def is_cyclic(self):
        return self.group_type()[1] == 1

    def image(self, weights):
        acc = TorsionClass(self.modulus, (0, 0))
        for a, g in zip(weights, self.generators):
            acc = acc + g.scale(a)
        return acc

    def kernel_contains(self, weights):
        return self.image(weights).is_zero()


def uniform_group(spec):
    """Group generated by the per-component classes scaled by m_j / n.

    ``n`` is the gcd of all multiplicities and degrees of the arrangement;
    n = 1 yields the trivial group.
    """
    if not spec.has_abstract:
        raise ValueError("uniform group needs the abstract backend")
    n = spec.uniform_gcd()
    mod = spec.lattice_modulus()
    if n == 1:
        return GroupDescriptor(1, [], mod)
    gens = []
    for comp in spec.components:
        gens.append(comp.cls.rescaled(mod).scale(comp.m // n))
    return GroupDescriptor(n, gens, mod)


def uniform_point_sums(spec):
    """Geometric counterpart of uniform_group: the points sum <mult/n> P."""
    e = spec.structure
    n = spec.uniform_gcd()
    out = []
    for comp in spec.components:
        acc = e.origin
        for p, mult in comp.divisor:
            acc = ec_add(e, acc, ec_mul(e, mult // n, p))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# triangles
# ---------------------------------------------------------------------------

class Triangle:
    """A chord-tangent triangle: three vertices cycled by multiplication by -2."""

    __slots__ = ("vertices", "associated", "lines")

    def __init__(self, vertices, associated, lines=None):
        self.vertices = tuple(vertices)
        self.associated = associated
        self.lines = tuple(lines) if lines else None


def triangle_from(arg, point=None):
    """Triangle derived from a point of order exactly nine.

    Abstract form: triangle_from(cls) for a TorsionClass.  Geometric form:
    triangle_from(structure, point), which also returns the tangent lines.
    """
    if point is None:
        cls = arg
        if cls.order() != 9:
            raise WrongOrder("triangle seeds must have order exactly 9")
        vertices = (cls, cls.scale(-2), cls.scale(4))
        return Triangle(vertices, cls.scale(3))
    e = arg
    if point_order(e, point, 9) != 9:
        raise WrongOrder("triangle seeds must have order exactly 9")
    v1 = point
    v2 = ec_mul(e, -2, v1)
    v3 = ec_mul(e, 4, v1)
    lines = tuple(tangent_line(e.cubic, v) for v in (v1, v2, v3))
    return Triangle((v1, v2, v3), ec_mul(e, 3, v1), lines)


def enumerate_triangles(modulus=9):
    """All triangles of the mod-9 lattice, grouped by associated class.

    Returns (triangles, by_class): 24 triangles in 8 classes of 3.
    """
    if modulus != 9:
        raise ValueError("triangle enumeration is a mod-9 construction")
    seen = {}
    for a in range(9):
        for b in range(9):
            cls = TorsionClass(9, (a, b))
            if cls.order() != 9:
                continue
            tri = triangle_from(cls)
            key = frozenset(v.coords for v in tri.vertices)
            seen.setdefault(key, tri)
    triangles = list(seen.values())
    by_class = {}
    for tri in triangles:
        by_class.setdefault(tri.associated.coords, []).append(tri)
    return triangles, by_class


def classify_triangle_pair(t1, t2):
    """One of "equal", "double", "independent" for two triangle classes."""
    c1, c2 = t1.associated, t2.associated
    if c1 == c2:
        return "equal"
    if c2 == c1.scale(2):
        return "double"
    span = lattice_span([c1, c2], c1.modulus)
    if len(span) == 9:
        return "independent"
    raise ValueError("degenerate triangle pair")


# ---------------------------------------------------------------------------
# bi-gon contact arithmetic
# ---------------------------------------------------------------------------

def bigon_parameters(d, r):
    """Feasibility and orders for the two-curve contact configuration.

    A degree-d pair meeting the cubic at P (multiplicity 3d-1) and Q
    (multiplicity 1) exists iff ord(P) = r divides 3d(3d-2) without dividing
    3d; then Q has the same order and P + Q has order r / gcd(3d-2, r).
    """
    total = 3 * d * (3 * d - 2)
    valid = (total % r == 0) and ((3 * d) % r != 0)
    if not valid:
        return {"valid": False}
    return {
        "valid": True,
        "residual_order": r,
        "sum_order": r // gcd(3 * d - 2, r),
    }


# ---------------------------------------------------------------------------
# distinguishing certificates
# ---------------------------------------------------------------------------

class ZariskiCertificate:
    """Outcome of a distinguishing run.

    ``mode`` is one of "group-witness" (isomorphism or kernel data from the
    uniformly-normalized group), "order-witness" (one weight vector per
    admissible permutation) or "multiset-witness" (an order multiset
    mismatch).  A "distinguished" verdict carries the explicit inequalities.
    """

    def __init__(self, mode, verdict, witnesses):
        self.mode = mode
        self.verdict = verdict
        self.witnesses = witnesses

    def to_data(self):
        return {
            "mode": self.mode,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
        }

    def render(self):
        lines = ["verdict: %s" % self.verdict]
        if self.mode:
            lines.append("mode: %s" % self.mode)
        for key, val in sorted(self.witnesses.items()):
            lines.append("%s: %s" % (key, val))
        return "\n".join(lines)


def self_admissible(spec):
    """Signature-preserving permutations of the components (a superset of the
    true self-admissible set, closed under composition and inverse)."""
    sigs = spec.signatures()
    out = []
    for perm in permutations(range(spec.k)):
        if all(sigs[perm[j]] == sigs[j] for j in range(spec.k)):
            out.append(tuple(perm))
    return out


def _order_table(spec, vectors):
    table = {}
    for v in vectors:
        table[v] = torsion_order(spec, v)
    return table


def distinguish(spec1, spec2, admissible):
    """Search for a certificate that the two arrangements are a Zariski pair.

    Tries, in order: the uniform-group isomorphism witness, the kernel
    witness, the multiset witness, and the per-permutation order witness.
    ``admissible`` must contain (a superset of) the admissible permutations
    from spec1 to spec2; the multiset self-sets are recomputed here from the
    component signatures, keeping the whole family closed under composition.
    """
    admissible = [tuple(p) for p in admissible]
    if not admissible:
        raise EmptyAdmissibleSet("no admissible permutations supplied")
    if spec1.k != spec2.k:
        raise ValueError("component counts differ")
    k = spec1.k

    # uniform group witnesses need both abstract backends
    if spec1.has_abstract and spec2.has_abstract:
        g1 = uniform_group(spec1)
        g2 = uniform_group(spec2)
        if g1.group_type() != g2.group_type():
            return ZariskiCertificate(
                "group-witness",
                "distinguished",
                {
                    "kind": "isomorphism",
                    "group1": g1.type_string(),
                    "group2": g2.type_string(),
                    "orders1": g1.generator_orders,
                    "orders2": g2.generator_orders,
                },
            )
        n = g1.n
        if n > 1:
            box = [v for v in product(range(n), repeat=k)]
            kernel_hits = {}
            for rho in admissible:
                witness = None
                for vec in box:
                    in1 = g1.kernel_contains(vec)
                    rvec = tuple(vec[_inv(rho)[j]] for j in range(k))
                    in2 = g2.kernel_contains(rvec)
                    if in1 != in2:
                        witness = {
                            "weights": list(vec),
                            "kernel1": in1,
                            "kernel2": in2,
                        }
                        break
                if witness is None:
                    kernel_hits = None
                    break
                kernel_hits[str(rho)] = witness
            if kernel_hits:
                return ZariskiCertificate(
                    "group-witness",
                    "distinguished",
                    {"kind": "kernel", "per_permutation": kernel_hits},
                )

    box = max(spec1.weight_box(), spec2.weight_box())
    vectors = weight_vectors(k, box)
    t1 = _order_table(spec1, vectors)
    t2 = _order_table(spec2, vectors)

    # multiset witness over the signature-preserving self sets
    s1 = self_admissible(spec1)
    s2 = self_admissible(spec2)
    for a0 in vectors:
        m1 = sorted(t1[a0.permuted(r1)] for r1 in s1)
        for rho0 in admissible:
            m2 = sorted(t2[a0.permuted(rho0).permuted(r2)] for r2 in s2)
            if m1 != m2:
                _verify_multiset(spec1, spec2, a0, rho0, s1, s2, m1, m2)
                return ZariskiCertificate(
                    "multiset-witness",
                    "distinguished",
                    {
                        "base_weights": list(a0),
                        "pair_permutation": list(rho0),
                        "multiset1": m1,
                        "multiset2": m2,
                    },
                )

    # per-permutation order witness
    per = {}
    for rho in admissible:
        found = None
        for a in vectors:
            if t1[a] != t2[a.permuted(rho)]:
                found = {
                    "weights": list(a),
                    "order1": t1[a],
                    "order2": t2[a.permuted(rho)],
                }
                break
        if found is None:
            per = None
            break
        per[str(rho)] = found
    if per:
        return ZariskiCertificate(
            "order-witness", "distinguished", {"per_permutation": per}
        )

    return ZariskiCertificate(None, "inconclusive", {"searched_box": box})


def _inv(perm):
    inv = [0] * len(perm)
    for i, v in enumerate(perm):
        inv[v] = i
    return inv


def _verify_multiset(spec1, spec2, a0, rho0, s1, s2, m1, m2):
    """Independent brute-force re-evaluation of a multiset witness."""
    def brute(spec, vec):
        na = cover_order(spec, vec)
        mod = spec.lattice_modulus() if spec.has_abstract else None
        if mod is not None:
            acc = TorsionClass(mod, (0, 0))
            for a, comp in zip(vec, spec.components):
                step = comp.cls.rescaled(mod)
                for _ in range((a * comp.m // na) % mod):
                    acc = acc + step
            return acc.order_brute()
        return torsion_order(spec, vec)

    bm1 = sorted(brute(spec1, a0.permuted(r1)) for r1 in s1)
    bm2 = sorted(brute(spec2, a0.permuted(rho0).permuted(r2)) for r2 in s2)
    if bm1 != m1 or bm2 != m2 or bm1 == bm2:
        raise BackendDisagreement("multiset witness failed re-verification")
