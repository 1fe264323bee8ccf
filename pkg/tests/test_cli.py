import json

import pytest

from hwcheck.cli import main, read_config, split_names


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_roots_json(capsys):
    code, out = run(capsys, "roots", "--rank", "4", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["positive_roots"]) == 12


def test_classify(capsys):
    code, out = run(capsys, "classify", "--weight=1/2,0,0,0", "--json")
    data = json.loads(out)
    assert data["in_S_g"] and data["scalar_gvm"] and not data["integral"]


def test_reduce_certificate(capsys):
    code, out = run(capsys, "reduce", "--weight=-3,0,0,0")
    data = json.loads(out)
    assert data["word"] == [1, 2] and data["output"] == ["0", "0", "-1", "-1"]


def test_reduce_regint(capsys):
    code, out = run(capsys, "reduce", "--weight=2,-3,2,2", "--mode", "regint")
    assert json.loads(out)["output"] == ["0", "1", "0", "0"]


def test_module_build(capsys):
    code, out = run(capsys, "module", "build", "--kind", "irr", "--weight", "1,0,0,0", "--depth", "6", "--json")
    assert json.loads(out)["dimension"] == 8
    code, out = run(capsys, "module", "--kind", "verma", "--weight", "0,0,0,0", "--depth", "2", "--gram", "--json")
    blocks = {tuple(b["nu"]): b for b in json.loads(out)["blocks"]}
    assert blocks[(1, 1, 0, 0)]["dim"] == 2 and blocks[(1, 1, 0, 0)]["gram_rank"] == 0


def test_walpha(capsys):
    code, out = run(capsys, "walpha", "--weight", "1/2,1/2,0,0", "--depth", "4", "--json")
    assert code == 0 and json.loads(out)["verdict"] == "holds"


def test_hwsearch(capsys):
    code, out = run(capsys, "hwsearch", "--weight=1/2,-1/2,0,0", "--set", "g[1,2],a[1,2]", "--depth", "5", "--json")
    data = json.loads(out)
    assert data["empty"] and data["caveat"] == "certified only to depth 5"


def test_ebar(capsys):
    code, out = run(capsys, "ebar", "--weight", "1/2,0,0,0", "--beta", "a[2]", "--depth", "4")
    assert "x_a[1,4] d_g[1,2]" in out and "x_a[1,1] d_a[1,2]" in out


def test_trace(capsys):
    code, out = run(capsys, "trace", "--weight=2,-3,2,2")
    assert "regular-integral chain" in out
    code, out = run(capsys, "--family", "A", "trace", "--weight", "1/2,0", "--json")
    assert json.loads(out)["leaf"] == "A2case"


def test_verify_with_config(tmp_path, capsys):
    cfg = tmp_path / "suite.cfg"
    cfg.write_text("# selection\nchecks = 1,10\ndepth = 0\n")
    code, out = run(capsys, "verify", "--config", str(cfg), "--json")
    data = json.loads(out)
    assert code == 0 and [c["id"] for c in data["checks"]] == ["01", "10"]


def test_bad_input_exit_code(capsys):
    assert main(["classify", "--weight", "1,2", "--rank", "4"]) == 2


def test_helpers(tmp_path):
    assert split_names("g[1,2],a[1,2], b[1]") == ["g[1,2]", "a[1,2]", "b[1]"]
    p = tmp_path / "x.cfg"
    p.write_text("a=1\nbad\n")
    with pytest.raises(ValueError):
        read_config(str(p))
