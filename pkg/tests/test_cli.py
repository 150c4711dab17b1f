import json

import pytest

from hypertrace import Hypergraph, hyperpath, hyperstar, loose_cycle, single_edge
from hypertrace.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_TOPOLOGY, RunConfig, dispatch, main
from hypertrace.errors import InputError


@pytest.fixture
def write(tmp_path):
    def _write(h, name="h.json"):
        p = tmp_path / name
        p.write_text(json.dumps(h.to_dict() if isinstance(h, Hypergraph) else h))
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_trace_single_edge(capsys, write):
    code, out, err = run(capsys, "trace", write(single_edge(3)), "--d", "3")
    assert code == EXIT_OK and json.loads(out) == {"trace": "9/1"} and err == ""


def test_trace_several_orders_and_csv(capsys, write):
    path = write(single_edge(3))
    code, out, _ = run(capsys, "trace", path, "--d", "0", "3", "6")
    assert [r["trace"] for r in json.loads(out)["traces"]] == ["12/1", "9/1", "9/1"]
    code, out, _ = run(capsys, "trace", path, "--d", "0", "3", "--format", "csv")
    assert out.splitlines() == ["d,trace", "0,12/1", "3,9/1"]


def test_trace_terms(capsys, write):
    code, out, _ = run(capsys, "trace", write(hyperpath(2, 3)), "--d", "3", "--terms")
    terms = json.loads(out)["terms"]
    assert code == EXIT_OK and len(terms) == 2


def test_oracle_agrees_with_trace(capsys, write):
    path = write(hyperstar(2, 3))
    _, a, _ = run(capsys, "trace", path, "--d", "6")
    _, b, _ = run(capsys, "oracle", path, "--d", "6")
    assert a == b


def test_estrada_and_compare(capsys, write):
    code, out, _ = run(capsys, "estrada", write(single_edge(2)))
    v = json.loads(out)
    assert code == EXIT_OK and float(v["lower"]) <= 3.0861612697 <= float(v["upper"])
    code, out, _ = run(capsys, "compare", write(hyperstar(3, 3), "a.json"), write(hyperpath(3, 3), "b.json"))
    assert json.loads(out)["verdict"] == "a_greater"


def test_enumerate_round_trip(capsys):
    code, out, _ = run(capsys, "enumerate", "unicyclic", "--m", "3", "--z", "4", "--g", "3")
    data = json.loads(out)
    assert data["count"] == len(data["members"]) >= 2
    for item in data["members"]:
        assert Hypergraph.from_dict(item).to_dict() == item
    code, out, _ = run(capsys, "enumerate", "hypertrees", "--m", "2", "--k", "3", "--format", "csv")
    assert out.splitlines()[0] == "index,n,edges" and len(out.splitlines()) == 3


def test_verify_commands(capsys):
    assert run(capsys, "verify", "--theorem", "6.6", "--m", "3", "--z", "4")[0] == EXIT_OK
    code, out, _ = run(capsys, "verify", "--lemma", "3.3")
    assert code == EXIT_OK and json.loads(out)["status"] == "PASS"
    assert run(capsys, "verify", "--structure", "pm_decomposition")[0] == EXIT_OK
    code, out, _ = run(capsys, "verify", "--problem", "6.7", "--m", "2", "--z", "4")
    assert code == EXIT_OK and "comparisons" in json.loads(out)


def test_verify_failing_instance_exits_1(capsys, tmp_path, monkeypatch):
    import hypertrace.cli as cli

    def failing(inst, d=None):
        return {"status": "FAIL"}

    monkeypatch.setattr(cli, "check_perturbation", failing)
    assert run(capsys, "verify", "--lemma", "6.3")[0] == EXIT_FAIL


def test_exit_codes(capsys, write, tmp_path):
    k4 = {"m": 2, "n": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}
    code, out, err = run(capsys, "trace", write(k4), "--d", "2")
    assert code == EXIT_TOPOLOGY and out == "" and "oracle" in err
    code, _, err = run(capsys, "oracle", write(loose_cycle(3, 3)), "--d", "6", "--budget", "5")
    assert code == EXIT_BUDGET and "budget" in err
    bad = tmp_path / "bad.json"
    bad.write_text('{"m": 3,\n "n": }')
    code, _, err = run(capsys, "trace", str(bad), "--d", "3")
    assert code == EXIT_INPUT and "bad.json:2:" in err
    assert run(capsys, "trace", write({"m": 3, "n": 2, "edges": [[0, 1]]}), "--d", "3")[0] == EXIT_INPUT
    assert run(capsys, "trace", str(tmp_path / "missing.json"), "--d", "3")[0] == EXIT_INPUT
    assert run(capsys, "trace", write(single_edge(3)))[0] == EXIT_INPUT
    assert run(capsys, "nonsense")[0] == EXIT_INPUT


def test_budget_from_environment(capsys, write, monkeypatch):
    monkeypatch.setenv("HYPERTRACE_BUDGET", "3")
    assert run(capsys, "oracle", write(loose_cycle(3, 3)), "--d", "6")[0] == EXIT_BUDGET


def test_outputs_are_byte_identical(capsys, write):
    path = write(loose_cycle(3, 3))
    first = run(capsys, "estrada", path)[1]
    assert run(capsys, "estrada", path)[1] == first
    assert run(capsys, "estrada", path, "--jobs", "2")[1] == first


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig("trace", fmt="xml")
    with pytest.raises(InputError):
        RunConfig("oracle", budget=0)
    with pytest.raises(InputError):
        RunConfig("trace", jobs=0)
    out, code = dispatch(RunConfig("enumerate", options={"family": "pm_hypertrees", "m": 2, "k": 3}))
    assert code == EXIT_OK and json.loads(out)["count"] == 2
