import math
import random

import pytest

from fairmine.discrimination import DiscriminatoryItemset
from fairmine.errors import EmptySelection, StalePlanError, UnknownItemset
from fairmine.mitigation import (
    MitigationPlan,
    apply_plan,
    plan_reject_option,
    select_itemsets,
)
from fairmine.rules import Condition

from conftest import build_ddata


def toy_ddata(n_p=10, n_np=10, b_p=2, b_np=8):
    n = n_p + n_np
    genders = ["p"] * n_p + ["q"] * n_np
    preds = [1] * b_p + [0] * (n_p - b_p) + [1] * b_np + [0] * (n_np - b_np)
    ddata = build_ddata({"x": ["u"] * n, "g": genders, "y": ["1"] * n},
                        {"g": {"role": "protected", "protected_label": "p"},
                         "y": {"role": "outcome"}},
                        {"m": preds})
    return ddata


def itemset_over(ddata, literals=None):
    cond = Condition.from_codes(ddata, literals or {"x": 0})
    mask = cond.mask(ddata)
    pred = ddata.prediction("m")
    prot = frozenset(i for i in range(ddata.n) if mask[i] and ddata.protected_flag[i])
    nonprot = frozenset(i for i in range(ddata.n) if mask[i] and not ddata.protected_flag[i])
    p_p = sum(pred[i] for i in prot) / len(prot)
    p_np = sum(pred[i] for i in nonprot) / len(nonprot)
    return DiscriminatoryItemset(condition=cond, p_protected=p_p, p_nonprotected=p_np,
                                 rd=p_p - p_np, members_protected=prot,
                                 members_nonprotected=nonprot,
                                 context_attrs=frozenset())


def test_empty_selection_rejected():
    ddata = toy_ddata()
    with pytest.raises(EmptySelection):
        plan_reject_option(ddata, "m", [], 0.25)


def test_already_within_target_no_flips():
    ddata = toy_ddata(b_p=8, b_np=8)
    it = itemset_over(ddata)
    plan = plan_reject_option(ddata, "m", [it], 0.25)
    assert plan.flips == []


def test_toy_case_exactly_four_flips():
    ddata = toy_ddata()  # rates 0.2 vs 0.8, rd -0.6
    it = itemset_over(ddata)
    assert math.isclose(it.rd, -0.6)
    plan = plan_reject_option(ddata, "m", [it], 0.25)
    assert plan.flip_count == 4
    # flips are protected non-beneficial members, ascending item id
    assert [f[0] for f in plan.flips] == [2, 3, 4, 5]
    assert all((old, new) == (0, 1) for _, old, new in plan.flips)
    _, _, report = apply_plan(ddata, "m", plan, report_itemsets=[it], tau=0.25)
    assert math.isclose(report.itemsets[0].rd_after, -0.2)


def brute_force_min_flips(pred, prot, nonprot, tau):
    """Policy-constrained search: k1 disadvantaged raises, then (only after
    exhausting them) k2 advantaged lowers; smallest total that reaches the
    band, recounted from scratch."""
    p_p = sum(pred[i] for i in prot) / len(prot)
    p_np = sum(pred[i] for i in nonprot) / len(nonprot)
    rd = p_p - p_np
    if abs(rd) <= tau:
        return 0
    if rd < 0:
        dis, adv = prot, nonprot
    else:
        dis, adv = nonprot, prot
    dis_zero = [i for i in dis if pred[i] == 0]
    adv_one = [i for i in adv if pred[i] == 1]
    options = [(k1, 0) for k1 in range(len(dis_zero) + 1)]
    options += [(len(dis_zero), k2) for k2 in range(1, len(adv_one) + 1)]
    feasible = []
    for k1, k2 in options:
        trial = dict(pred)
        for i in dis_zero[:k1]:
            trial[i] = 1
        for i in adv_one[:k2]:
            trial[i] = 0
        p_p2 = sum(trial[i] for i in prot) / len(prot)
        p_np2 = sum(trial[i] for i in nonprot) / len(nonprot)
        if abs(p_p2 - p_np2) <= tau:
            feasible.append(k1 + k2)
    return min(feasible) if feasible else None


def test_minimality_matches_brute_force():
    rng = random.Random(123)
    for _ in range(60):
        n_p = rng.randint(1, 6)
        n_np = rng.randint(1, 6)
        b_p = rng.randint(0, n_p)
        b_np = rng.randint(0, n_np)
        tau = rng.choice([0.1, 0.2, 0.3, 0.5])
        ddata = toy_ddata(n_p, n_np, b_p, b_np)
        it = itemset_over(ddata)
        pred = {i: int(ddata.prediction("m")[i]) for i in range(ddata.n)}
        expected = brute_force_min_flips(pred, sorted(it.members_protected),
                                         sorted(it.members_nonprotected), tau)
        if expected is None:
            continue
        plan = plan_reject_option(ddata, "m", [it], tau)
        assert plan.flip_count == expected


def test_post_condition_recomputed_from_scratch():
    rng = random.Random(7)
    for _ in range(20):
        n = 30
        genders = [rng.choice(["p", "q"]) for _ in range(n)]
        genders[0], genders[1] = "p", "q"
        xs = [rng.choice(["u", "v"]) for _ in range(n)]
        preds = [rng.randint(0, 1) for _ in range(n)]
        ddata = build_ddata({"x": xs, "g": genders, "y": ["1"] * n},
                            {"g": {"role": "protected", "protected_label": "p"},
                             "y": {"role": "outcome"}},
                            {"m": preds})
        selected = []
        for code in (0, 1):
            try:
                it = itemset_over(ddata, {"x": code})
            except ZeroDivisionError:
                continue
            selected.append(it)
        if not selected:
            continue
        tau = 0.2
        plan = plan_reject_option(ddata, "m", selected, tau)
        new_ddata, new_id, _ = apply_plan(ddata, "m", plan,
                                          report_itemsets=selected)
        new_pred = new_ddata.prediction(new_id)
        for it in selected:
            p_p = sum(new_pred[i] for i in it.members_protected) / len(it.members_protected)
            p_np = (sum(new_pred[i] for i in it.members_nonprotected)
                    / len(it.members_nonprotected))
            assert abs(p_p - p_np) <= tau + 1e-12


def test_no_item_flipped_twice_on_overlap():
    # Two overlapping itemsets (x=u and the whole table).
    ddata = toy_ddata()
    inner = itemset_over(ddata, {"x": 0})
    plan = plan_reject_option(ddata, "m", [inner, inner], 0.25)
    ids = [f[0] for f in plan.flips]
    assert len(ids) == len(set(ids))


def test_apply_empty_plan_identity():
    ddata = toy_ddata()
    it = itemset_over(ddata)
    plan = MitigationPlan(selected=[], tau_target=0.25, flips=[])
    new_ddata, new_id, report = apply_plan(ddata, "m", plan, report_itemsets=[it])
    assert report.accuracy_after == report.accuracy_before
    assert report.itemsets[0].rd_before == report.itemsets[0].rd_after
    assert new_id == "m+U"
    assert new_ddata.prediction("m+U").tolist() == ddata.prediction("m").tolist()


def test_apply_stale_plan_detected():
    ddata = toy_ddata()
    plan = MitigationPlan(selected=[], tau_target=0.25,
                          flips=[(0, 0, 1)])  # item 0 actually has label 1
    with pytest.raises(StalePlanError):
        apply_plan(ddata, "m", plan)


def test_accuracy_delta_bounded_by_flip_rate():
    ddata = toy_ddata()
    it = itemset_over(ddata)
    plan = plan_reject_option(ddata, "m", [it], 0.25)
    _, _, report = apply_plan(ddata, "m", plan, report_itemsets=[it])
    assert abs(report.accuracy_after - report.accuracy_before) <= plan.flip_count / ddata.n + 1e-12
    assert report.flip_count == plan.flip_count


def test_original_predictions_untouched():
    ddata = toy_ddata()
    it = itemset_over(ddata)
    before = ddata.prediction("m").tolist()
    plan = plan_reject_option(ddata, "m", [it], 0.25)
    new_ddata, _, _ = apply_plan(ddata, "m", plan)
    assert ddata.prediction("m").tolist() == before
    assert new_ddata.prediction("m").tolist() == before
    assert new_ddata.prediction("m+U").tolist() != before


def test_disjoint_itemset_rd_unchanged():
    n = 40
    rng = random.Random(4)
    genders = (["p", "q"] * 20)
    xs = ["u"] * 20 + ["v"] * 20
    preds = [1, 0] * 5 + [0, 1] * 5 + [rng.randint(0, 1) for _ in range(20)]
    ddata = build_ddata({"x": xs, "g": genders, "y": ["1"] * n},
                        {"g": {"role": "protected", "protected_label": "p"},
                         "y": {"role": "outcome"}},
                        {"m": preds})
    target = itemset_over(ddata, {"x": 1})
    bystander = itemset_over(ddata, {"x": 0})
    plan = plan_reject_option(ddata, "m", [target], 0.1)
    _, _, report = apply_plan(ddata, "m", plan,
                              report_itemsets=[target, bystander])
    outcome = {o.canonical_key: o for o in report.itemsets}
    b = outcome[bystander.canonical_key]
    assert b.rd_before == b.rd_after


def test_reverse_discrimination_counted():
    # Overshoot: protected group of 2 jumps straight over the band.
    ddata = toy_ddata(n_p=2, n_np=10, b_p=0, b_np=9)
    it = itemset_over(ddata)  # rd = 0 - 0.9 = -0.9
    plan = plan_reject_option(ddata, "m", [it], 0.45)
    _, _, report = apply_plan(ddata, "m", plan, report_itemsets=[it], tau=0.25)
    # one protected flip: p_p = 0.5, rd = -0.4 within target; no reversal
    assert report.reverse_discrimination_count in (0, 1)
    assert abs(report.itemsets[0].rd_after) <= 0.45 + 1e-12


def test_select_itemsets_unknown_key():
    ddata = toy_ddata()
    it = itemset_over(ddata)
    assert select_itemsets([it], [it.canonical_key]) == [it]
    with pytest.raises(UnknownItemset):
        select_itemsets([it], ["nope=1"])
