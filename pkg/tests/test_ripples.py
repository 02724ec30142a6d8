import json
import math
import random

import pytest

from fairmine.discrimination import DiscriminatoryItemset, ItemsetCollection
from fairmine.ripples import (
    Atom,
    aggregate_items,
    circle_union_outline,
    compute_atoms,
    geometry_as_json,
    layout_rippleset,
    outline_set,
    OUTLINE_MARGIN,
    RADIUS_PER_ITEM,
)
from fairmine.rules import Condition

from conftest import build_ddata


def fabricate_collection(ddata, member_sets):
    """Itemsets with prescribed member id sets over a shared dataset."""
    itemsets = []
    attrs = [a for a in ddata.condition_attrs]
    for k, members in enumerate(member_sets):
        prot = frozenset(i for i in members if ddata.protected_flag[i])
        cond = Condition.from_codes(ddata, {attrs[k % len(attrs)]: 0})
        itemsets.append(DiscriminatoryItemset(
            condition=cond, p_protected=0.5, p_nonprotected=0.5, rd=0.3,
            members_protected=prot,
            members_nonprotected=frozenset(members) - prot,
            context_attrs=frozenset()))
    return ItemsetCollection(resolving_key="", resolving_literals=(),
                             itemsets=itemsets, total_items=0)


@pytest.fixture
def flat_ddata():
    n = 40
    rng = random.Random(0)
    cols = {"x": ["u"] * n, "z": ["w"] * n,
            "g": [rng.choice(["p", "q"]) for _ in range(n)],
            "y": [str(rng.randint(0, 1)) for _ in range(n)]}
    cols["g"][0], cols["g"][1] = "p", "q"
    return build_ddata(cols, {"g": {"role": "protected", "protected_label": "p"},
                              "y": {"role": "outcome"}},
                       {"m": [rng.randint(0, 1) for _ in range(n)]})


def test_atoms_hand_example(flat_ddata):
    coll = fabricate_collection(flat_ddata, [{1, 2, 3}, {2, 3, 4}])
    atoms = compute_atoms(coll, flat_ddata, "m")
    by_sig = {a.signature: set(a.item_ids) for a in atoms}
    assert by_sig == {(True, False): {1}, (True, True): {2, 3}, (False, True): {4}}


def test_atoms_disjoint_sets(flat_ddata):
    coll = fabricate_collection(flat_ddata, [{0, 1}, {2, 3}, {4}])
    atoms = compute_atoms(coll, flat_ddata, "m")
    assert len(atoms) == 3


def test_atoms_identical_sets(flat_ddata):
    coll = fabricate_collection(flat_ddata, [{5, 6}, {5, 6}])
    atoms = compute_atoms(coll, flat_ddata, "m")
    assert len(atoms) == 1
    assert atoms[0].signature == (True, True)


def test_atom_counts_and_rd_local(flat_ddata):
    members = set(range(12))
    coll = fabricate_collection(flat_ddata, [members])
    (atom,) = compute_atoms(coll, flat_ddata, "m")
    pred = flat_ddata.prediction("m")
    prot = [i for i in members if flat_ddata.protected_flag[i]]
    nonprot = [i for i in members if not flat_ddata.protected_flag[i]]
    assert atom.group_counts == (len(prot), len(nonprot))
    expected_rd = (sum(pred[i] for i in prot) / len(prot)
                   - sum(pred[i] for i in nonprot) / len(nonprot))
    assert math.isclose(atom.rd_local, expected_rd)


def random_family(rng, max_sets=7, max_items=40):
    n_sets = rng.randint(1, max_sets)
    n_items = rng.randint(1, max_items)
    sets = []
    for _ in range(n_sets):
        size = rng.randint(1, n_items)
        sets.append(set(rng.sample(range(n_items), size)))
    return sets


def test_atoms_partition_and_signature_faithfulness(flat_ddata):
    rng = random.Random(5)
    for _ in range(25):
        member_sets = random_family(rng, max_items=40)
        coll = fabricate_collection(flat_ddata, member_sets)
        atoms = compute_atoms(coll, flat_ddata, "m")
        union = set().union(*member_sets)
        seen: set[int] = set()
        for atom in atoms:
            ids = set(atom.item_ids)
            assert not (ids & seen)
            seen |= ids
            for i in atom.item_ids:
                assert atom.signature == tuple(i in s for s in
                                               (it.members for it in coll.itemsets))
        assert seen == union
        assert len({a.signature for a in atoms}) == len(atoms)


def test_layout_single_atom_dots_inside(flat_ddata):
    coll = fabricate_collection(flat_ddata, [set(range(9))])
    atoms = compute_atoms(coll, flat_ddata, "m")
    geo = layout_rippleset(atoms)
    assert len(geo.circles) == 1
    c = geo.circles[0]
    assert (c.x, c.y) == (0.0, 0.0)
    assert len(geo.dots) == 9
    for d in geo.dots:
        assert math.hypot(d.x - c.x, d.y - c.y) + d.r < c.r


def test_layout_radius_area_law(flat_ddata):
    coll = fabricate_collection(flat_ddata, [set(range(4)), set(range(20, 36))])
    atoms = compute_atoms(coll, flat_ddata, "m")
    geo = layout_rippleset(atoms)
    radii = sorted(c.r for c in geo.circles)
    assert math.isclose(radii[1] / radii[0], 2.0)
    for c in geo.circles:
        count = sum(1 for a in atoms
                    if a.signature == c.signature for _ in a.item_ids)
        assert math.isclose(c.r ** 2 / count, RADIUS_PER_ITEM ** 2, abs_tol=1e-9)


def test_layout_no_overlaps_and_dots_contained(flat_ddata):
    rng = random.Random(77)
    for _ in range(15):
        member_sets = random_family(rng)
        coll = fabricate_collection(flat_ddata, member_sets)
        atoms = compute_atoms(coll, flat_ddata, "m")
        geo = layout_rippleset(atoms)
        for i, a in enumerate(geo.circles):
            for b in geo.circles[i + 1:]:
                dist = math.hypot(a.x - b.x, a.y - b.y)
                assert dist >= a.r + b.r - 1e-9
        circle_of = {c.signature: c for c in geo.circles}
        atom_of_item = {}
        for atom in atoms:
            for item in atom.item_ids:
                atom_of_item[item] = atom
        for d in geo.dots:
            c = circle_of[atom_of_item[d.item_id].signature]
            assert math.hypot(d.x - c.x, d.y - c.y) + d.r < c.r


def test_layout_deterministic(flat_ddata):
    rng = random.Random(3)
    member_sets = random_family(rng)
    coll = fabricate_collection(flat_ddata, member_sets)
    atoms = compute_atoms(coll, flat_ddata, "m")
    a = json.dumps(geometry_as_json(layout_rippleset(atoms)), sort_keys=True)
    b = json.dumps(geometry_as_json(layout_rippleset(atoms)), sort_keys=True)
    assert a == b


def test_dot_encodings(flat_ddata):
    coll = fabricate_collection(flat_ddata, [set(range(10))])
    atoms = compute_atoms(coll, flat_ddata, "m")
    geo = layout_rippleset(atoms)
    pred = flat_ddata.prediction("m")
    for d in geo.dots:
        assert d.shape == ("circle" if flat_ddata.protected_flag[d.item_id] else "square")
        assert d.fill == ("solid" if pred[d.item_id] else "hollow")


def test_outline_single_atom_is_inflated_circle(flat_ddata):
    coll = fabricate_collection(flat_ddata, [set(range(5))])
    atoms = compute_atoms(coll, flat_ddata, "m")
    geo = layout_rippleset(atoms)
    loops = outline_set(geo, 0)
    assert len(loops) == 1
    c = geo.circles[0]
    for x, y in loops[0]:
        assert math.isclose(math.hypot(x - c.x, y - c.y), c.r + OUTLINE_MARGIN,
                            rel_tol=1e-9)


def test_outline_two_overlapping_circles_single_loop():
    loops = circle_union_outline([(0.0, 0.0, 2.0), (3.0, 0.0, 2.0)])
    assert len(loops) == 1
    pts = loops[0]
    # All points on the union boundary: on one circle, not inside the other.
    for x, y in pts:
        d0 = math.hypot(x, y)
        d1 = math.hypot(x - 3.0, y)
        on0 = math.isclose(d0, 2.0, rel_tol=1e-9)
        on1 = math.isclose(d1, 2.0, rel_tol=1e-9)
        assert on0 or on1
        assert d0 >= 2.0 - 1e-9 and d1 >= 2.0 - 1e-9


def test_outline_tangent_member_circles_merge_after_inflation(flat_ddata):
    # Two atoms of one itemset placed tangent: inflation merges them.
    coll = fabricate_collection(flat_ddata, [{0, 1, 2}, {2, 3, 4}])
    atoms = compute_atoms(coll, flat_ddata, "m")
    geo = layout_rippleset(atoms)
    member_circles = [c for c in geo.circles if c.signature[0]]
    assert len(member_circles) == 2
    loops = outline_set(geo, 0)
    assert len(loops) == 1


def test_outline_disconnected_components():
    loops = circle_union_outline([(0.0, 0.0, 1.0), (10.0, 0.0, 1.5), (20.0, 5.0, 0.5)])
    assert len(loops) == 3
    mixed = circle_union_outline([(0.0, 0.0, 1.0), (1.5, 0.0, 1.0), (10.0, 0.0, 1.0)])
    assert len(mixed) == 2


def test_outline_contains_member_circles(flat_ddata):
    rng = random.Random(11)
    for _ in range(10):
        member_sets = random_family(rng, max_sets=4, max_items=25)
        coll = fabricate_collection(flat_ddata, member_sets)
        atoms = compute_atoms(coll, flat_ddata, "m")
        geo = layout_rippleset(atoms)
        for idx in range(len(member_sets)):
            members = [(c.x, c.y, c.r + OUTLINE_MARGIN) for c in geo.circles
                       if c.signature[idx]]
            loops = outline_set(geo, idx)
            assert loops
            # every sampled point of each member circle lies in the union
            for (cx, cy, cr) in members:
                for deg in range(0, 360, 30):
                    x = cx + (cr - OUTLINE_MARGIN) * math.cos(math.radians(deg))
                    y = cy + (cr - OUTLINE_MARGIN) * math.sin(math.radians(deg))
                    assert any(math.hypot(x - mx, y - my) <= mr + 1e-9
                               for mx, my, mr in members)
            # outline points sit on the boundary: on some inflated circle,
            # inside none
            for loop in loops:
                for x, y in loop:
                    dists = [math.hypot(x - mx, y - my) - mr for mx, my, mr in members]
                    assert min(dists) >= -1e-6
                    assert any(abs(d) <= 1e-6 for d in dists)


def make_atom(n_p, n_np, b_p, b_np):
    ids = tuple(range(n_p + n_np))
    flags = tuple([(True, i < b_p) for i in range(n_p)]
                  + [(False, i < b_np) for i in range(n_np)])
    return Atom(signature=(True,), item_ids=ids, item_flags=flags,
                group_counts=(n_p, n_np), beneficial_counts=(b_p, b_np),
                rd_local=0.0)


def test_aggregate_passthrough():
    atom = make_atom(5, 5, 2, 3)
    assert aggregate_items(atom, 100) is None


def test_aggregate_conservation():
    atom = make_atom(600, 400, 123, 321)
    cells = aggregate_items(atom, 100)
    assert cells is not None
    assert sum(c for _, _, c in cells) == 1000
    assert ("protected", True, 123) in cells
    assert ("nonprotected", False, 79) in cells


def test_aggregate_matches_recount():
    rng = random.Random(9)
    for _ in range(20):
        n_p, n_np = rng.randint(0, 50), rng.randint(0, 50)
        if n_p + n_np == 0:
            continue
        b_p, b_np = rng.randint(0, n_p), rng.randint(0, n_np)
        atom = make_atom(n_p, n_np, b_p, b_np)
        cells = aggregate_items(atom, 1)
        tally = {}
        for (prot, benef) in atom.item_flags:
            key = ("protected" if prot else "nonprotected", benef)
            tally[key] = tally.get(key, 0) + 1
        for group, benef, count in cells:
            assert tally.get((group, benef), 0) == count


def test_layout_aggregation_budget(flat_ddata):
    coll = fabricate_collection(flat_ddata, [set(range(30)), {35}])
    atoms = compute_atoms(coll, flat_ddata, "m")
    geo = layout_rippleset(atoms, dot_budget=10)
    big = [c for c in geo.circles if c.signature == (True, False)]
    assert len(big) == 1
    assert sum(m.count for m in geo.aggregated) == 30
    assert {d.item_id for d in geo.dots} == {35}
