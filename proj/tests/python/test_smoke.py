import csv
import io
import math

import numpy as np
import pytest

import graphtron


def test_standard_graphs():
    bandit = graphtron.FeedbackGraph.standard("bandit", 4)
    assert bandit.n_actions == 4
    assert bandit.revealing_set() == []
    assert bandit.dominating_set() == [0, 1, 2, 3]
    assert graphtron.FeedbackGraph.standard("apple", 2).domination_number() == 1
    assert graphtron.FeedbackGraph.standard("label-efficient", 3).n_actions == 4


def test_graph_validation_error():
    with pytest.raises(ValueError):
        graphtron.FeedbackGraph(3, [[0], [1], []])


def test_losses_at_zero():
    w = np.zeros((3, 4))
    x = np.ones(4)
    assert graphtron.loss_value("smooth-hinge", w, x, 1) == pytest.approx(1.0)
    assert graphtron.loss_value("logistic", w, x, 1) == pytest.approx(1.0)
    g = graphtron.loss_gradient("logistic", w, x, 1)
    assert g.shape == (3, 4)
    assert g[1, 0] == pytest.approx((1 / 3 - 1) / math.log(3))
    assert graphtron.gap("smooth-hinge", w, x) == pytest.approx(1.0)


def test_gappletron_round():
    graph = graphtron.FeedbackGraph.standard("bandit", 4)
    learner = graphtron.Gappletron(graph, 5, seed=3)
    x = np.ones(5)
    pred = learner.predict(x)
    assert sum(pred["p"]) == pytest.approx(1.0)
    assert pred["p"] == pytest.approx([0.25] * 4)
    observed, weight = learner.update(x, 2, graph.feedback(2, 2))
    assert observed and weight == pytest.approx(4.0)
    assert learner.weights.shape == (4, 5)
    assert np.any(learner.weights != 0)

    played = learner.act(x)
    assert 0 <= played < 4
    learner.update(x, played, graph.feedback(played, 0))
    assert learner.rounds == 2


def test_run_csv_is_deterministic():
    kwargs = dict(graph="bandit", k=4, dprime=1, noise=0.1, rounds=500, reps=2, seed=5)
    text = graphtron.run(**kwargs, threads=1)
    assert text == graphtron.run(**kwargs, threads=2)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert {r["run_id"] for r in rows} == {"0", "1"}
    last = [r for r in rows if r["t"] == "500"]
    assert len(last) == 2
    assert all(0.0 <= float(r["error_rate"]) <= 1.0 for r in last)


def test_incompatible_learner():
    with pytest.raises(ValueError):
        graphtron.run(graph="bandit", learner="perceptron", rounds=5)


def test_validate_suite():
    results = graphtron.validate(rounds=500)
    assert results
    assert all(passed or informational for _, passed, informational, _ in results)
