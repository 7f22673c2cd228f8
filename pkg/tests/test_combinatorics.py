"""Fingerprints, admissible permutations, incidence reports, bigon clauses."""

import json

from maxflex import (
    QQ,
    PlaneCurve,
    admissible_permutations,
    check_incidence,
    fingerprint,
    verify_bigon,
)
from maxflex.catalog import bigon_conics, bigon_points, catalog_entry


def cyclic_cubic():
    return PlaneCurve(QQ, 3, {(2, 1, 0): 1, (0, 2, 1): 1, (1, 0, 2): 1})


def coordinate_lines():
    one, zero = QQ.one(), QQ.zero()
    return [
        PlaneCurve.line(QQ, (zero, one, zero)),  # y = 0, tangent at [1:0:0]
        PlaneCurve.line(QQ, (one, zero, zero)),  # x = 0, tangent at [0:0:1]
        PlaneCurve.line(QQ, (zero, zero, one)),  # z = 0, tangent at [0:1:0]
    ]


def bigon_package(r, cap=64):
    entry = catalog_entry("90c3").build(cap)
    tw, e, p, q = bigon_points(entry, r)
    c1, c2 = bigon_conics(e, p, q)
    return e, p, q, c1, c2


def test_single_cubic_has_empty_fingerprint():
    f = fingerprint([cyclic_cubic()])
    data = json.loads(f.canonical())
    assert data["points"] == []
    assert data["pieces"] == [[3, True]]


def test_cubic_plus_triangle_fingerprint():
    f = fingerprint([cyclic_cubic()] + coordinate_lines())
    data = json.loads(f.canonical())
    # three vertices: cubic tangent (mult 2) + crossing line (mult 1 each)
    triple = [rec for rec in data["points"] if len(rec) == 3]
    assert len(triple) == 3
    conc = f.concurrency_records()
    assert len(conc) == 3
    for pieces, pairs, orbit in conc:
        assert len(pieces) == 3 and orbit == 1


def test_fingerprint_invariant_under_relabeling():
    cubic = cyclic_cubic()
    lines = coordinate_lines()
    f1 = fingerprint([cubic] + lines)
    f2 = fingerprint([cubic] + [lines[2], lines[0], lines[1]])
    assert f1 == f2


def test_admissible_contains_relabeling_and_identity():
    cubic = cyclic_cubic()
    lines = coordinate_lines()
    f1 = fingerprint([cubic] + lines)
    f2 = fingerprint([cubic] + [lines[1], lines[2], lines[0]])
    grouping = [[1], [2], [3]]
    adm = admissible_permutations(f1, f2, grouping)
    assert adm  # combinatorially equivalent
    # identity present in the self set; the triangle is vertex-cycled, so the
    # self set is the full cyclic relabeling family at least
    self_adm = admissible_permutations(f1, f1, grouping)
    assert (0, 1, 2) in self_adm


def test_admissible_sets_compose_and_invert():
    cubic = cyclic_cubic()
    lines = coordinate_lines()
    arrangements = [
        [cubic] + lines,
        [cubic] + [lines[1], lines[2], lines[0]],
        [cubic] + [lines[2], lines[0], lines[1]],
    ]
    prints = [fingerprint(a) for a in arrangements]
    grouping = [[1], [2], [3]]

    def compose(r2, r1):
        return tuple(r2[r1[j]] for j in range(len(r1)))

    a12 = admissible_permutations(prints[0], prints[1], grouping)
    a23 = admissible_permutations(prints[1], prints[2], grouping)
    a13 = admissible_permutations(prints[0], prints[2], grouping)
    a21 = admissible_permutations(prints[1], prints[0], grouping)
    for r1 in a12:
        # inverse law
        inv = tuple(sorted(range(len(r1)), key=lambda j: r1[j]))
        assert inv in a21
        for r2 in a23:
            assert compose(r2, r1) in a13
    # the self set is a subgroup
    s = admissible_permutations(prints[0], prints[0], grouping)
    for r1 in s:
        inv = tuple(sorted(range(len(r1)), key=lambda j: r1[j]))
        assert inv in s
        for r2 in s:
            assert compose(r2, r1) in s


def test_bigon_fingerprints_equal_and_identity_admissible():
    e4, p4, q4, c14, c24 = bigon_package(4)
    e12, p12, q12, c112, c212 = bigon_package(12)
    f4 = fingerprint([e4.cubic, e4.origin_tangent, c14, c24])
    f12 = fingerprint([e12.cubic, e12.origin_tangent, c112, c212])
    assert f4 == f12
    assert admissible_permutations(f4, f12, [[1], [2, 3]]) == {(0, 1)}
    # a conic and a line can never trade places
    assert admissible_permutations(f4, f12, [[1], [2], [3]]) == {
        (0, 1, 2),
        (0, 2, 1),
    } or admissible_permutations(f4, f12, [[1], [2], [3]]) <= {
        (0, 1, 2),
        (0, 2, 1),
    }


def test_check_incidence_two_lines():
    one, zero = QQ.one(), QQ.zero()
    l1 = PlaneCurve.line(QQ, (one, zero, zero))
    l2 = PlaneCurve.line(QQ, (zero, one, zero))
    report = check_incidence([l1, l2])
    assert report["transversal_pairs"] == [(0, 1)]
    assert report["tangencies"] == []
    assert report["concurrent_line_triples"] == []


def test_check_incidence_cyclic_triangle():
    report = check_incidence([cyclic_cubic()] + coordinate_lines())
    # each tangent line meets the cubic with multiplicity two at its vertex
    assert sorted(report["tangencies"]) == [(0, 1, 2), (0, 2, 2), (0, 3, 2)]
    assert sorted(report["triple_points"]) == [[0, 1, 2], [0, 1, 3], [0, 2, 3]]
    # the three coordinate lines are concurrent nowhere
    assert report["concurrent_line_triples"] == []


def test_check_incidence_flags_concurrent_lines():
    one, zero = QQ.one(), QQ.zero()
    pencil = [
        PlaneCurve.line(QQ, (one, zero, zero)),
        PlaneCurve.line(QQ, (zero, one, zero)),
        PlaneCurve.line(QQ, (one, one, zero)),
    ]
    report = check_incidence(pencil)
    assert report["concurrent_line_triples"] == [(0, 1, 2)]


def test_verify_bigon_clauses_pass():
    e, p, q, c1, c2 = bigon_package(4)
    report = verify_bigon(e, c1, c2, e.origin_tangent, p, q)
    assert report["all"]
    assert report["contact_pattern"] and report["pairwise_transversal"]
    assert report["empty_triple_intersection"]


def test_verify_bigon_rejects_equal_conics():
    e, p, q, c1, c2 = bigon_package(4)
    report = verify_bigon(e, c1, c1, e.origin_tangent, p, q)
    assert not report["all"]
    assert not report["contact_pattern"]
