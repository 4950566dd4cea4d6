import pytest
from hypothesis import given, settings

from stpakit.analysis import losses_reached, trace_back, trace_forward, validate
from stpakit.diagnostics import StpaError
from stpakit.dsl import parse
from stpakit.model import IdKind

from modelgen import models

REFINED = '''model "m" {}
loss L1 "a"
loss L2 "b"
hazard H1 "parent" { leads_to: [L2, L1]; }
hazard H1A "child" { parent: H1; }
hazard H1B "grandchild" { leads_to: [L2]; parent: H1A; }
'''


def test_hazard_traces_to_each_of_its_losses():
    model, _ = parse('model "m" {}\nloss L1 "a"\nhazard H "h" { leads_to: [L1]; }')
    (path,) = trace_back(model, "H")
    assert path.ids == ("H", "L1")


def test_refined_hazard_routes_through_parent():
    model, _ = parse(REFINED)
    assert [p.ids for p in trace_back(model, "H1A")] == [("H1A", "H1", "L1"), ("H1A", "H1", "L2")]
    assert [p.ids for p in trace_back(model, "H1B")] == [
        ("H1B", "L2"), ("H1B", "H1A", "H1", "L1"), ("H1B", "H1A", "H1", "L2")]


def test_forward_trace_includes_refinements():
    model, _ = parse(REFINED)
    assert trace_forward(model, "L1").hazards == ("H1", "H1A", "H1B")


def test_pdmp_h1_back_to_l1_and_l4(pdmp):
    assert [str(p) for p in trace_back(pdmp, "H1")] == ["H1 -> L1", "H1 -> L4"]


def test_cjfr_success_metrics_uca_reaches_loss_of_justice(cjfr):
    uca = next(u for u in cjfr.ucas if u.action == "PF2" and u.guideword.value == "not_providing")
    paths = trace_back(cjfr, uca.id)
    assert "S1" in {p.loss for p in paths}
    assert ("UCA1-3", "H1", "S1") in [p.ids for p in paths]
    assert all(p.scenarios == ("SC-C1",) for p in paths)


def test_requirement_trace_starts_at_requirement(cjfr):
    paths = trace_back(cjfr, "REQ-C1")
    assert paths and all(p.ids[0] == "REQ-C1" and p.chain[-1][0] is IdKind.LOSS for p in paths)


def test_pdmp_l1_forward_lists_h1_and_h2(pdmp):
    fwd = trace_forward(pdmp, "L1")
    assert {"H1", "H2"} <= set(fwd.hazards)
    assert "H5" not in fwd.hazards


def test_cjfr_i5_forward_includes_hazard_10(cjfr):
    assert "H10" in trace_forward(cjfr, "I5").hazards


def test_unreferenced_loss_has_empty_forward_trace():
    model, _ = parse('model "m" {}\nloss L1 "a"')
    fwd = trace_forward(model, "L1")
    assert (fwd.hazards, fwd.ucas, fwd.scenarios, fwd.requirements) == ((), (), (), ())
    assert [d.code for d in validate(model)] == ["R003"]


@pytest.mark.parametrize("fn", [trace_back, trace_forward])
def test_unknown_id_raises_e031(pdmp, fn):
    with pytest.raises(StpaError) as err:
        fn(pdmp, "NOPE")
    assert err.value.code == "E031"


def test_forward_requires_a_loss(pdmp):
    with pytest.raises(StpaError):
        trace_forward(pdmp, "H1")


def test_losses_reached_in_declaration_order(cjfr):
    assert losses_reached(cjfr, "H21") == ("S3",)
    assert losses_reached(cjfr, "H16") == ("I1", "I2", "I3", "I4", "I5")


@settings(max_examples=200)
@given(models())
def test_requirements_of_valid_models_always_reach_a_loss(model):
    assert not [d for d in validate(model) if d.is_error]
    for rq in model.requirements:
        paths = trace_back(model, rq.id)
        assert paths
        assert all(p.chain[-1][0] is IdKind.LOSS for p in paths)


@settings(max_examples=200)
@given(models())
def test_forward_and_backward_traces_agree(model):
    for loss in model.losses:
        forward = set(trace_forward(model, loss.id).ucas)
        for uca in model.ucas:
            backward = any(loss.id in p for p in trace_back(model, uca.id))
            assert (uca.id in forward) == backward
