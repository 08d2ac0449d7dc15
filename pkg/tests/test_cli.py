import json

import pytest

from causecov import kripke
from causecov.cli import main
from causecov.kripke import mutate

SPEC = "AG(req -> AF grant)"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check(capsys, req_grant_path, req_grant, tmp_path):
    code, out, _ = run(capsys, "check", req_grant_path, SPEC)
    assert code == 0 and "satisfied" in out
    broken = tmp_path / "broken.json"
    broken.write_text(kripke.dumps(mutate(req_grant, {"w7"}, "grant")))
    code, out, _ = run(capsys, "check", str(broken), SPEC)
    assert code == 1 and "NOT satisfied" in out


def test_check_spec_file(capsys, req_grant_path, tmp_path):
    specs = tmp_path / "specs.txt"
    specs.write_text(f"# properties\n{SPEC}\nEF req\n")
    code, out, _ = run(capsys, "check", req_grant_path, f"@{specs}", "--format", "structured")
    assert code == 0
    assert [d["satisfied"] for d in json.loads(out)] == [True, True]


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "MISSING.json", "p"],
        ["check", "{req_grant}", "AG(req -> "],
        ["check", "{req_grant}", "AF ack"],
        ["coverage", "{req_grant}", SPEC, "-q", "grant", "--engine", "bounded:0"],
        ["coverage", "{req_grant}", "p | q", "-q", "grant"],
    ],
)
def test_usage_errors_exit_2(capsys, req_grant_path, argv):
    argv = [a.replace("{req_grant}", req_grant_path) for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_malformed_model(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"atoms": [], "states": ["a"], "initial": "a", "transitions": []}')
    assert run(capsys, "check", str(p), "true")[0] == 2


def test_argparse_error_exit_2(req_grant_path):
    with pytest.raises(SystemExit) as exc:
        main(["coverage", req_grant_path, SPEC])
    assert exc.value.code == 2


def test_coverage_table(capsys, req_grant_path):
    code, out, _ = run(capsys, "coverage", req_grant_path, SPEC, "-q", "grant", "--engine", "direct")
    assert code == 0
    rows = {ln.split()[0]: ln.split() for ln in out.splitlines()[2:]}
    assert rows["w7"][3] == "1"
    assert [rows[w][3] for w in ("w2", "w3", "w4")] == ["1/3"] * 3
    assert rows["w5"][3] == "0"


def test_coverage_bounded(capsys, req_grant_path):
    code, out, _ = run(capsys, "coverage", req_grant_path, SPEC, "-q", "grant", "--engine", "bounded:2",
                       "--format", "structured")
    doc = json.loads(out)
    dr = {s["state"]: s["dr"] for s in doc["states"]}
    assert dr["w7"] == "1" and dr["w2"] == dr["w3"] == dr["w4"] == "dr < 1/2"


def test_coverage_modes(capsys, req_grant_path, path_path):
    assert "{w7}" in run(capsys, "coverage", req_grant_path, SPEC, "-q", "grant", "--mode", "covered")[1]
    assert "{w2, w3, w4, w7}" in run(capsys, "coverage", req_grant_path, SPEC, "-q", "grant", "--mode", "cause")[1]
    code, out, _ = run(capsys, "coverage", path_path, "A[p U q]", "-q", "q", "--mode", "cover-prime")
    assert code == 0 and "{w1}" in out


def test_coverage_unsatisfied_exit_1(capsys, req_grant_path):
    code, _, err = run(capsys, "coverage", req_grant_path, "AG grant", "-q", "grant")
    assert code == 1 and "does not hold" in err


def test_structured_output_stable_across_jobs(capsys, req_grant_path):
    outs = [
        run(capsys, "coverage", req_grant_path, SPEC, "-q", "grant", "--format", "structured", "--jobs", j)[1]
        for j in ("1", "3", "8")
    ]
    assert outs[0] == outs[1] == outs[2]


def test_compile_then_circuit_resp(capsys, req_grant_path, tmp_path):
    c, a = tmp_path / "c.json", tmp_path / "a.json"
    assert run(capsys, "compile", req_grant_path, SPEC, "-o", str(c), "--assignment", str(a))[0] == 0
    _, out, _ = run(capsys, "coverage", req_grant_path, SPEC, "-q", "grant", "--format", "structured")
    expected = {s["state"]: s["dr"] for s in json.loads(out)["states"]}
    for w, dr in expected.items():
        code, out, _ = run(capsys, "circuit-resp", str(c), str(a), f"grant@{w}",
                           "--mutable", "grant@*", "--format", "structured")
        assert code == 0 and json.loads(out)["dr"] == dr


def test_circuit_resp_algorithms(capsys, tmp_path):
    c, a = tmp_path / "c.json", tmp_path / "a.json"
    c.write_text(json.dumps({
        "inputs": ["X1", "X2", "X3"],
        "gates": [{"id": "g1", "kind": "or", "args": ["X1", "X2"]},
                  {"id": "g2", "kind": "or", "args": ["g1", "X3"]}],
        "output": "g2",
    }))
    a.write_text('{"X1": 1, "X2": 1, "X3": 1}')
    for algo in ("brute", "binsearch", "readonce", "bounded:3"):
        code, out, _ = run(capsys, "circuit-resp", str(c), str(a), "X1", "--algo", algo)
        assert code == 0 and "dr(X1) = 1/3" in out
    code, out, _ = run(capsys, "circuit-resp", str(c), str(a), "X1", "--algo", "bounded:2")
    assert "dr < 1/2" in out


def test_readonce_on_non_tree_exit_2(capsys, tmp_path):
    c, a = tmp_path / "c.json", tmp_path / "a.json"
    c.write_text(json.dumps({
        "inputs": ["a", "b"],
        "gates": [{"id": "g1", "kind": "and", "args": ["a", "b"]},
                  {"id": "g2", "kind": "or", "args": ["g1", "a"]}],
        "output": "g2",
    }))
    a.write_text('{"a": 1, "b": 1}')
    assert run(capsys, "circuit-resp", str(c), str(a), "a", "--algo", "readonce")[0] == 2


def test_clique(capsys, tmp_path):
    g = tmp_path / "k3.json"
    g.write_text('{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]]}')
    code, out, _ = run(capsys, "clique", str(g))
    assert code == 0 and out.strip() == "ω = 3 (responsibility) / 3 (brute force): AGREE"
    code, out, _ = run(capsys, "clique", "--random", "7", "0.5", "--seed", "3", "--format", "structured")
    assert code == 0 and json.loads(out)["agree"]
    assert run(capsys, "clique")[0] == 2


def test_causal(capsys, tmp_path):
    m = tmp_path / "rock.json"
    m.write_text(json.dumps({"exogenous": ["US", "UB"], "equations": {"ST": "US", "BT": "UB", "BS": "ST | BT"}}))
    code, out, _ = run(capsys, "causal", str(m), "ST=1", "BS", "--context", "US=1,UB=1")
    assert code == 0 and "is a cause" in out and "dr = 1/2" in out
    code, out, _ = run(capsys, "causal", str(m), "ST=1", "BS", "--context", "US=0,UB=1")
    assert code == 0 and "not a cause" in out
    assert run(capsys, "causal", str(m), "ST=2", "BS", "--context", "US=1,UB=1")[0] == 2
