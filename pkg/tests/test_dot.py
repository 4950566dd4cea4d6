import re

from hypothesis import given, settings

from stpakit import corpus
from stpakit.model import StpaModel
from stpakit.report import export_dot

from fixtures.dot_oracle import count_declarations, count_dot
from modelgen import models


def test_counts_match_corpus_declarations(corpus_name):
    text = corpus.source(corpus_name)
    nodes, edges = count_dot(export_dot(corpus.load(corpus_name)))
    assert nodes == count_declarations(text, "entity")
    assert edges == count_declarations(text, "action") + count_declarations(text, "feedback")


def test_pdmp_edge_count_is_frozen(pdmp):
    # 9 actions + 4 feedbacks, counted in the corpus file
    assert count_dot(export_dot(pdmp)) == (6, 13)


def test_empty_model_has_header_and_no_nodes():
    text = export_dot(StpaModel())
    assert text.startswith('digraph "stpa" {\n')
    assert count_dot(text) == (0, 0)


def test_lifecycle_phases_feed_back_to_development_team(cjfr):
    text = export_dot(cjfr)
    for phase in ("PFDDPhase", "ModelingPhase", "DOAPhase"):
        assert re.search(rf'^  "{phase}" -> "DevTeam" \[.*style=dashed\];$', text, re.M), phase


def test_shapes_by_kind(pdmp):
    text = export_dot(pdmp)
    assert '"ScoreDevTeam" [label="Risk Score Development Team", shape=box];' in text
    assert '"Patient" [label="Patient", shape=ellipse];' in text
    assert 'shape=box, style=rounded' in text


def test_labels_are_escaped():
    from stpakit.dsl import parse
    model, _ = parse('model "m" {}\nentity C "say \\"hi\\"\\n" kind controller')
    assert '[label="say \\"hi\\"\\n", shape=box]' in export_dot(model)


@settings(max_examples=150)
@given(models())
def test_generated_counts(model):
    text = export_dot(model)
    assert count_dot(text) == (len(model.entities), len(model.actions) + len(model.feedbacks))
    assert export_dot(model) == text
