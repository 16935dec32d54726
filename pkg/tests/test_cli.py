import json

import pytest

from dimershuffle import verify
from dimershuffle.cli import main
from dimershuffle.pyramid import empty_room, enumerate_partitions, flip
from dimershuffle.serialize import (
    FormatError,
    config_from_json,
    config_to_json,
    dumps,
    series_from_json,
    series_to_json,
    superrigid_from_json,
    superrigid_to_json,
)
from dimershuffle.series import formula_Z
from dimershuffle.shuffle import delete_blocks
from dimershuffle.solid import SuperRigid, YoungDiagram, enumerate_superrigid


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_json(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(dumps(doc))
    return str(p)


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "1", "--max-degree", "3", "--emit-configs")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 9
    assert series_from_json(doc["series"]) == formula_Z(1, 3)
    assert doc["configs"][0]["diff_dimers"] == []
    assert doc["configs"][1]["weight"] == {"e0": 1, "e1": 0}


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2", "--max-degree", "2", "--format", "text")
    assert code == 0
    assert out.splitlines()[1] == "Z = 1 + 2*q0 + 2*q0*q1 + q0^2"


def test_enumerate_is_thread_independent(capsys):
    outs = [run(capsys, "enumerate", "--n", "2", "--max-degree", "4", "--emit-configs", "--threads", t)[1] for t in "14"]
    assert outs[0] == outs[1]


@pytest.mark.parametrize("n,d", [(1, 5), (2, 5), (3, 4)])
def test_config_round_trip(n, d):
    for cfg, _ in enumerate_partitions(n, d):
        text = dumps(config_to_json(cfg))
        assert config_from_json(json.loads(text)) == cfg
        deficient = delete_blocks(cfg)
        assert config_from_json(json.loads(dumps(config_to_json(deficient)))) == deficient


def test_series_and_triple_round_trip():
    s = formula_Z(2, 4)
    assert series_from_json(json.loads(dumps(series_to_json(s)))) == s
    for sr, _ in enumerate_superrigid(4):
        assert superrigid_from_json(json.loads(dumps(superrigid_to_json(sr)))) == sr


@pytest.mark.parametrize(
    "doc",
    [
        {"n": 1},
        {"n": 0, "window": [-2, -2, 1, 1], "diff_dimers": []},
        {"n": 1, "window": [-2, -2, 1, 1], "diff_dimers": [[[0, 0], [2, 0]]]},
    ],
)
def test_bad_config_json(doc):
    with pytest.raises(FormatError):
        config_from_json(doc)


def test_shuffle_cli(capsys, tmp_path):
    one = flip(empty_room(1), (-1, -1))
    path = write_json(tmp_path, "one.json", config_to_json(one))
    code, out, _ = run(capsys, "shuffle", "--input", path)
    assert code == 0
    outs = json.loads(out)
    m = delete_blocks(one).m
    assert len(outs) == 2 ** (m - 1)
    assert {d["n"] for d in outs} == {2}
    code, out, _ = run(capsys, "shuffle", "--input", path, "--fill", "vertical")
    assert len(json.loads(out)) == 1
    code, out, _ = run(capsys, "shuffle", "--input", path, "--fill", "0")
    assert code == 0 and json.loads(out)[0] in outs


def test_shuffle_of_empty_room(capsys, tmp_path):
    path = write_json(tmp_path, "e.json", config_to_json(empty_room(1)))
    code, out, _ = run(capsys, "shuffle", "--input", path)
    assert code == 0
    assert config_from_json(json.loads(out)[0]) == empty_room(2)


def test_shuffle_bad_mask(capsys, tmp_path):
    path = write_json(tmp_path, "e.json", config_to_json(empty_room(1)))
    code, _, err = run(capsys, "shuffle", "--input", path, "--fill", "7")
    assert code == 2 and "out of range" in err
    code, _, err = run(capsys, "shuffle", "--input", path, "--fill", "diagonal")
    assert code == 2


def test_shuffle_refuses_deficient_input(capsys, tmp_path):
    path = write_json(tmp_path, "d.json", config_to_json(delete_blocks(empty_room(1))))
    code, _, err = run(capsys, "shuffle", "--input", path)
    assert code == 2 and "deficient" in err


def test_missing_and_malformed_input(capsys, tmp_path):
    code, _, err = run(capsys, "render", "--input", str(tmp_path / "none.json"))
    assert code == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "render", "--input", str(bad))
    assert code == 2


def test_render_svg(capsys, tmp_path):
    cfg = enumerate_partitions(1, 3)[-1][0]
    path = write_json(tmp_path, "c.json", config_to_json(cfg))
    out_path = tmp_path / "c.svg"
    code, _, _ = run(capsys, "render", "--input", path, "--window", "-3", "-3", "2", "2", "--out", str(out_path))
    assert code == 0
    svg = out_path.read_text()
    assert svg.startswith("<svg") or svg.startswith("<?xml")
    # a 6x6 vertex window holds 18 dimers when fully covered inside
    assert svg.count('class="vertex"') == 36
    assert svg.count('class="dimer"') == 18


def test_render_deficient_marks_missing_blocks(capsys, tmp_path):
    path = write_json(tmp_path, "d.json", config_to_json(delete_blocks(empty_room(1))))
    code, out, _ = run(capsys, "render", "--input", path, "--window", "-2", "-2", "1", "1")
    assert code == 0
    assert out.count('class="missing"') == 1
    assert out.count('class="dimer"') == 6


def test_weights_dump(capsys):
    code, out, _ = run(capsys, "weights", "dump", "--n", "1", "--level", "1", "--window", "3")
    assert code == 0
    doc = json.loads(out)
    assert doc["level"] == 1 and doc["coloring"] == 0
    assert all(set(e) == {"edge", "e0", "e1"} for e in doc["edges"])


def test_solid_enumerate(capsys):
    code, out, _ = run(capsys, "solid", "enumerate", "--max-n", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == len(doc["triples"]) == len(enumerate_superrigid(2))
    assert doc["triples"][0] == {"lambda": [], "pi0_extra": [], "piInf_extra": [], "weight": {"z": 0, "q": 0}}


def test_solid_render(capsys, tmp_path):
    path = write_json(tmp_path, "t.json", superrigid_to_json(SuperRigid(YoungDiagram((1,)))))
    code, out, _ = run(capsys, "solid", "render", "--input", path, "--window", "4")
    assert code == 0
    assert out.count('class="dimer"') == 2 * 3 * 16
    code, _, err = run(capsys, "solid", "render", "--input", path, "--window", "1")
    assert code == 2


def test_verify_pass_and_json(capsys):
    code, out, _ = run(capsys, "verify", "macmahon", "--degree", "4")
    assert code == 0 and out.startswith("PASS macmahon degree=4")
    code, out, _ = run(capsys, "verify", "macmahon", "--degree", "4", "--format", "json")
    doc = json.loads(out)
    assert doc[0]["equal"] is True and "elapsed" not in doc[0]
    code, out, _ = run(capsys, "verify", "macmahon", "--degree", "4", "--format", "json", "--timing")
    assert "elapsed" in json.loads(out)[0]


def test_verify_failure_exits_one(capsys, monkeypatch):
    monkeypatch.setattr(verify, "formula_Z", lambda n, d: formula_Z(n, d) + formula_Z(n, d))
    code, out, _ = run(capsys, "verify", "general-n", "--n", "1", "--degree", "3")
    assert code == 1 and out.startswith("FAIL general-n")


def test_verify_unknown_check(capsys):
    code, _, err = run(capsys, "verify", "nonsense")
    assert code == 2 and "unknown check" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--n", "0", "--max-degree", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_out_to_unwritable_path(capsys, tmp_path):
    code, _, err = run(capsys, "enumerate", "--n", "1", "--max-degree", "1", "--out", str(tmp_path / "no" / "x.json"))
    assert code == 2 and "cannot write" in err
