import json

import pytest

from rrverify import identities as R
from rrverify.errors import BadParameters, BudgetExceeded, UnknownIdentity


def test_registry_shape():
    specs = R.list_identities()
    ids = [s["id"] for s in specs]
    assert len(ids) >= 20 and len(ids) == len(set(ids))
    assert {"ariki_mathas_enum", "ariki_mathas_multisum", "bivariate_12",
            "corollary_14_a1", "wellpoised", "rogers_szego"} <= set(ids)
    assert all(s["tags"] for s in specs)


@pytest.mark.parametrize("identity", list(R.REGISTRY))
def test_default_entry_matches(identity):
    rep = R.verify(identity)
    assert rep.status is R.Status.MATCH, rep.text_row()


@pytest.mark.parametrize("identity", list(R.REGISTRY))
def test_perturbing_rhs_is_detected(identity):
    spec = R.REGISTRY[identity]
    order = min(spec.default_order, 16)
    rep = R.verify(identity, order=order, perturb=True)
    assert rep.status is R.Status.MISMATCH
    assert rep.first_mismatch[0] == order


@pytest.mark.parametrize("identity", list(R.REGISTRY))
def test_order_zero(identity):
    assert R.verify(identity, order=0).ok


def test_named_examples():
    assert R.verify("bivariate_12", {}, 24).ok
    assert R.verify("corollary_14_a1", {"omega": 1}, 30).ok


@pytest.mark.parametrize("w", range(-4, 5))
def test_slice_entries_across_omega(w):
    assert R.verify("corollary_14_a1", {"omega": w}, 24).ok
    assert R.verify("corollary_14_a2", {"omega": w}, 24).ok


def test_uncorrected_slice_product_fails():
    from rrverify.partitions import gf_lambda
    literal = R.slice_product_literal(1, 10)
    assert not gf_lambda(2, 2, 10).x_slice(1).agrees(literal, 10)


def test_parameter_validation():
    with pytest.raises(UnknownIdentity):
        R.verify("no_such_identity")
    with pytest.raises(BadParameters):
        R.verify("ariki_mathas_multisum", {"a": 3, "m": 2})
    with pytest.raises(BadParameters):
        R.verify("wellpoised", {"gamma": 1})
    with pytest.raises(BadParameters):
        R.verify("wellpoised", {"alpha": "x"})
    with pytest.raises(BadParameters):
        R.verify("jtp", order=-1)


def test_budget_propagates():
    with pytest.raises(BudgetExceeded):
        R.verify("bivariate_12", order=40)
    assert R.verify("bivariate_12", order=20, budget=20).ok


def test_oracle_runs_enumeration():
    rep = R.verify("coeff_extract", {"a": 2, "omega": 2}, 30, oracle=True)
    assert rep.ok and "oracle" in rep.message
    rep = R.verify("ariki_mathas_multisum", {"a": 0, "m": 3}, 40, oracle=True)
    assert rep.ok and "q^18" in rep.message


def test_report_json_round_trip():
    rep = R.verify("jtp", order=12, perturb=True)
    back = R.IdentityReport.from_json(rep.to_json())
    assert back.to_dict() == rep.to_dict()
    assert back.status is rep.status and back.first_mismatch == rep.first_mismatch
    blob = json.loads(rep.to_json())
    assert blob["status"] == "MISMATCH"
    assert blob["first_mismatch"]["q_exp"] == 12


def test_run_all_is_ordered_and_deterministic():
    ids = ["jtp", "andrews", "special_g1", "wellpoised"]
    serial = R.run_all(ids=ids)
    parallel = R.run_all(jobs=2, ids=ids)
    assert [r.id for r in serial] == [i for i in R.REGISTRY if i in ids]
    strip = lambda reps: [(r.id, r.status, r.first_mismatch, r.order) for r in reps]
    assert strip(serial) == strip(parallel)


def test_run_all_turns_errors_into_reports():
    reps = R.run_all(order=40, ids=["special_g1", "jtp"])
    status = {r.id: r.status for r in reps}
    assert status == {"special_g1": R.Status.ERROR, "jtp": R.Status.MATCH}
