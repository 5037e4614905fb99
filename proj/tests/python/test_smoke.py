import json
import os
import subprocess

import pytest

import qdecomp


def example_graph():
    return qdecomp.Graph(
        6,
        [(0, 1, 1), (0, 2, 1), (0, 3, 1), (3, 5, 1), (3, 4, 1),
         (2, 5, 1), (2, 4, 1), (1, 5, 1), (1, 4, 1)],
    )


def test_graph_and_qubo_agree():
    g = example_graph()
    q = qdecomp.maxcut_to_qubo(g)
    z = [1, 0, 0, 0, 1, 1]
    assert q.evaluate(z) == pytest.approx(g.cut_value(z))
    value, witness, count = qdecomp.exact_optimum(q)
    assert value == pytest.approx(9.0)
    assert g.cut_value(witness) == pytest.approx(9.0)
    assert count >= 2


def test_single_step_decomposition():
    g = example_graph()
    r = qdecomp.decompose(g, max_cut=4, max_iterations=1)
    assert r.iterations == 1
    assert r.final_size == 5
    assert r.c_total == pytest.approx(3.0)
    assert r.all_exact
    total = r.total_instance()
    value, witness, _ = qdecomp.exact_optimum(total)
    assert value == pytest.approx(9.0)
    assert g.cut_value(r.lift(witness)) == pytest.approx(9.0)
    doc = qdecomp.trace(r)
    assert doc["format"] == "qdecomp-trace"
    assert len(doc["iterations"]) == 1


def test_cut_and_errors():
    part = qdecomp.min_vertex_cut(example_graph())
    assert len(part["K"]) == 3
    with pytest.raises(qdecomp.InputError):
        qdecomp.Graph(2, [(0, 5, 1.0)])
    with pytest.raises(qdecomp.InputError):
        qdecomp.generate_regular(5, 3, 0)


def test_closed_form_matches_statevector():
    q = qdecomp.maxcut_to_qubo(qdecomp.generate_regular(8, 3, 4))
    for gamma, beta in [(0.3, 0.2), (-1.1, 0.7), (2.0, -0.4)]:
        a = qdecomp.expectation_p1(q, gamma, beta)
        s = qdecomp.statevector_expectation(q, [gamma], [beta])
        assert a == pytest.approx(s, abs=1e-9)
    gamma, beta, value = qdecomp.optimize_params(q, restarts=10, seed=1)
    assert value == pytest.approx(qdecomp.expectation_p1(q, gamma, beta))
    assert value <= qdecomp.exact_optimum(q)[0] + 1e-9


def test_graph_file_round_trip(tmp_path):
    g = qdecomp.generate_regular(10, 3, 2)
    path = tmp_path / "g.txt"
    qdecomp.write_graph(path, g)
    back = qdecomp.read_graph(path)
    assert back.n == 10
    assert back.edges == g.edges


@pytest.mark.skipif("QDECOMP_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_decompose(tmp_path):
    cli = os.environ["QDECOMP_CLI"]
    gen = subprocess.run([cli, "generate", "--n", "12", "--k", "3", "--count", "1",
                          "--out", str(tmp_path / "gen")], capture_output=True)
    assert gen.returncode == 0
    graph = next((tmp_path / "gen").rglob("*.txt"))
    out = tmp_path / "dec"
    run = subprocess.run([cli, "decompose", str(graph), "--out", str(out)], capture_output=True)
    assert run.returncode == 0
    summary = json.loads((out / "summary.json").read_text())
    assert summary
    bad = subprocess.run([cli, "decompose", str(tmp_path / "missing.txt"), "--out", str(out)],
                         capture_output=True)
    assert bad.returncode == 2
