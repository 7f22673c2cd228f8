"""Catalog curves and arrangement recipes."""

from maxflex import (
    QQ,
    ProjPoint,
    WeightVector,
    flex_points,
    intersection_points,
    point_order,
    torsion_order,
)
from maxflex.catalog import (
    bigon_conics,
    bigon_points,
    bigon_spec,
    catalog_entry,
    cyclic_triangle_chain,
    fermat_triangle,
    fermat_witness,
)
from maxflex.torsion import weight_vectors


def test_90c3_designated_flex_is_found():
    entry = catalog_entry("90c3").build(64)
    cubic = entry["structure"].cubic
    flexes = flex_points(cubic, entry["tower"], on_budget="skip")
    target = ProjPoint(entry["tower"], [0, 1, 0])
    assert any(tw == entry["tower"] and p == target for p, tw in flexes)


def test_bigon_intersection_divisors():
    entry = catalog_entry("90c3").build(64)
    tw, e, p, q = bigon_points(entry, 4)
    c1, c2 = bigon_conics(e, p, q)
    recs = intersection_points(e.cubic, c1, tw)
    assert sorted(r.multiplicity for r in recs) == [1, 5]
    assert sum(r.multiplicity * r.orbit for r in recs) == 6
    found = {(r.multiplicity, r.point == p or r.point == q) for r in recs}
    assert found == {(5, True), (1, True)}
    # the heavy contact sits at p for c1 and at q for c2
    by_mult = {r.multiplicity: r.point for r in recs}
    assert by_mult[5] == p and by_mult[1] == q


def test_backend_agreement_over_the_search_box():
    # every torsion_order call cross-checks the lattice against the honest
    # group law when both backends are present; sweep the whole reduced box
    entry = catalog_entry("90c3").build(64)
    for r in (4, 12):
        tw, e, p, q = bigon_points(entry, r)
        c1, c2 = bigon_conics(e, p, q)
        spec, _ = bigon_spec(e, p, q, c1, c2, r, with_line=True)
        for w in weight_vectors(spec.k, spec.weight_box()):
            torsion_order(spec, w)


def test_cyclic_chain_vertices_have_order_nine():
    data = catalog_entry("cyclic").build(64)
    chain = cyclic_triangle_chain(data)
    assert chain["closes"]
    assert len({str(p.to_data()) for p in chain["points"]}) == 3


def test_fermat_triangle_vertices_cycle():
    data = catalog_entry("fermat").build(64)
    tower, e, tri = fermat_triangle(data)
    v1, v2, v3 = tri.vertices
    for v in tri.vertices:
        assert point_order(e, v, 9) == 9
    assert tri.associated == ProjPoint(
        tower, [tower.one(), -data["w"].embedded(tower), tower.zero()]
    )


def test_witness_weight_orders_match_lattice():
    witness = fermat_witness(64)
    from maxflex.catalog import fermat_witness_spec

    spec = fermat_witness_spec(witness)
    assert torsion_order(spec, WeightVector((1, 2, 1))) == 1
    assert torsion_order(spec, WeightVector((2, 1, 1))) == 3
    assert torsion_order(spec, WeightVector((0, 0, 1))) == 3


def test_witness_pair_admissible_subset_of_swap():
    # the tangent/tangent/triangle arrangements built from the witness have
    # equal fingerprints, and only the two tangent lines may trade places
    from maxflex.combinatorics import admissible_permutations, fingerprint

    wit = fermat_witness(64)
    tower = wit["tower"]
    tri = wit["triangle"]
    shape4 = [wit["structure"].cubic, wit["L_T1"], wit["L_2T1"]] + list(tri.lines)
    shape5 = [wit["structure"].cubic, wit["L_T1"], wit["L_T2"].embedded(tower)] + list(
        tri.lines
    )
    f4 = fingerprint(shape4, tower)
    f5 = fingerprint(shape5, tower)
    grouping = [[1], [2], [3, 4, 5]]
    assert admissible_permutations(f4, f5, grouping) <= {(0, 1, 2), (1, 0, 2)}
    assert admissible_permutations(f4, f5, grouping)
    assert admissible_permutations(f4, f4, grouping) == {(0, 1, 2), (1, 0, 2)}
