"""The command-line front end: determinism, formats, exit codes, golden files."""

import json
import pathlib

import pytest

from bruhatzip.cli import main

GOLDEN = pathlib.Path(__file__).parent / "golden"

GO6 = [
    "--family", "D", "--rank", "3", "--omega", "d-swap",
    "--torus-dim", "4", "--J", "2,3", "--theta", "full",
]


def run(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_cosets_plain(capsys):
    code, out = run(capsys, ["cosets", "--family", "A", "--rank", "2", "--J", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "bruhat-zip/1"
    assert payload["kind"] == "JW"
    assert payload["count"] == 3
    assert [r["length"] for r in payload["rows"]] == [0, 1, 2]


def test_cosets_extended_go6(capsys):
    code, out = run(capsys, ["cosets", *GO6, "--K", "2,3"])
    assert code == 0
    payload = json.loads(out)
    assert payload["kind"] == "JWK-extended"
    assert payload["count"] == 6
    assert all(lbl.count(":") == 2 for lbl in
               (r["label"] for r in payload["rows"]))


def test_poset_deterministic_and_round_trips(capsys):
    outs = [run(capsys, ["poset", *GO6, "--which", "zip"])[1] for _ in range(2)]
    assert outs[0] == outs[1]
    payload = json.loads(outs[0])
    # re-serializing the parsed payload is the identity on the bytes
    assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == outs[0]
    assert len(payload["nodes"]) == 10
    assert len(payload["components"]) == 2


def test_dot_edges_match_json_covers(capsys):
    _, jout = run(capsys, ["poset", *GO6, "--which", "zip"])
    payload = json.loads(jout)
    _, dot = run(capsys, ["poset", *GO6, "--which", "zip", "--format", "dot"])
    labels = [n["label"] for n in payload["nodes"]]
    edges = {
        tuple(part.strip().strip('";') for part in line.split("->"))
        for line in dot.splitlines()
        if "->" in line
    }
    want = {(labels[a].strip('"'), labels[b].strip('"'))
            for a, b in payload["covers"]}
    assert {(a.strip('"'), b.strip('"')) for a, b in edges} == want
    assert dot.startswith("digraph poset {")
    assert "rankdir=BT;" in dot


def test_poset_bruhat_go6(capsys):
    code, out = run(capsys, ["poset", *GO6])
    assert code == 0
    payload = json.loads(out)
    assert payload["which"] == "bruhat"
    assert [n["length"] for n in payload["nodes"]] == [0, 1, 4]
    assert payload["covers"] == [[0, 1], [1, 2]]
    assert payload["gerbe_dims"] == [-12, -9, -8]
    assert payload["stack_dim"] == -8


def test_beta_go6(capsys):
    code, out = run(capsys, ["beta", *GO6])
    assert code == 0
    payload = json.loads(out)
    assert payload["order_preserving"] is True
    assert [len(f["fiber"]) for f in payload["fibers"]] == [2, 6, 2]


def test_k3_exit_codes(capsys):
    code, out = run(capsys, ["k3", "--p", "3", "--d", "1"])
    assert code == 0
    assert json.loads(out)["empty_component"] == "S_2"
    code, _ = run(capsys, ["k3", "--p", "3", "--d", "3"])  # p | 2d
    assert code == 2
    code, _ = run(capsys, ["k3", "--p", "4", "--d", "1"])
    assert code == 2


def test_oracle_exit_code(capsys):
    code, out = run(capsys, ["oracle", "--n", "2", "--q", "2",
                             "--weights", "1,0"])
    assert code == 0
    assert json.loads(out)["pass"] is True
    code, _ = run(capsys, ["oracle", "--n", "5", "--q", "2",
                           "--weights", "1,0,0,0,0"])
    assert code == 2


def test_bad_input_exit_code(capsys):
    code, _ = run(capsys, ["poset", "--family", "B", "--rank", "2",
                           "--omega", "d-swap", "--J", "2"])
    # d-swap only exists for family D
    assert code == 2
    code, _ = run(capsys, ["poset", "--family", "A", "--rank", "2",
                           "--J", "2", "--K", "2"])
    # conjugation by w0 sends J = {2} to K = {1}, so K = {2} is inconsistent
    assert code == 2
    code, _ = run(capsys, ["cosets", "--family", "A", "--rank", "2",
                           "--J", "2;3"])
    assert code == 2


def test_capacity_exit_code(capsys):
    code, _ = run(capsys, ["poset", *GO6, "--which", "zip", "--cap", "3"])
    assert code == 2


def test_config_file_with_flag_override(tmp_path, capsys):
    cfgfile = tmp_path / "go6.json"
    cfgfile.write_text(json.dumps({
        "family": "D", "rank": 3, "omega": "d-swap",
        "torus_dim": 4, "J": [2, 3], "theta": "full",
    }))
    _, base = run(capsys, ["poset", *GO6])
    _, from_file = run(capsys, ["poset", "--config", str(cfgfile)])
    assert from_file == base
    # flag overrides the file
    _, odd = run(capsys, ["poset", "--config", str(cfgfile),
                          "--family", "B", "--omega", "trivial",
                          "--rank", "2", "--J", "2", "--torus-dim", "3"])
    assert [n["length"] for n in json.loads(odd)["nodes"]] == [0, 1, 3]
    code, _ = run(capsys, ["poset", "--config", str(tmp_path / "nope.json")])
    assert code == 2


@pytest.mark.parametrize("name,argv", [
    ("k3_p3_d1.json", ["k3", "--p", "3", "--d", "1"]),
    ("k3_p5_d1.json", ["k3", "--p", "5", "--d", "1"]),
    ("poset_go6.json", ["poset", *GO6]),
])
def test_golden_files(name, argv, capsys):
    code, out = run(capsys, argv)
    assert code == 0
    assert out == (GOLDEN / name).read_text()
