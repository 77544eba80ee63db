import json

import pytest

from extcube.cli import RunConfig, build_config, main, make_parser, read_config_file, run


def test_single_suite_pass(capsys):
    assert main(["verify", "extcube-determinant"]) == 0
    out = capsys.readouterr().out
    assert "extcube-determinant: PASS" in out


def test_negative_control_exit_code(capsys):
    assert main(["verify", "identity", "--degree", "4", "--negative-control"]) == 1
    out = capsys.readouterr().out
    assert "deg=3 fail" in out and "first mismatch ch(0,1,0)" in out


def test_degree_cap_is_a_config_error(capsys):
    assert main(["verify", "identity", "--degree", "17"]) == 2
    assert "exceeds the cap" in capsys.readouterr().err


def test_unknown_suite_rejected():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nope"])
    assert exc.value.code == 2


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# bounds\ndegree = 4\nasai_n = 1-2\nnegative-control = no\n")
    assert read_config_file(str(cfg))["asai_n"] == "1-2"
    args = make_parser().parse_args(["verify", "asai", "--config", str(cfg), "--degree", "6"])
    conf = build_config(args)
    assert conf.degree == 6 and conf.asai_n == [1, 2] and conf.negative_control is False


def test_bad_config_key(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("colour = red\n")
    assert main(["verify", "asai", "--config", str(cfg)]) == 2


def test_json_report(tmp_path, capsys):
    path = tmp_path / "r.json"
    assert main(["verify", "asai", "--asai-n", "1", "--format", "json", "--json", str(path)]) == 0
    data = json.loads(path.read_text())
    assert data["schema_version"] == 1 and data["ok"]
    assert data["config"]["asai_n"] == [1]
    assert json.loads(capsys.readouterr().out)["suites"][0]["name"] == "asai"


def test_report_is_deterministic():
    cfg = RunConfig(degree=3, n_max=2, k_max=2, ext_n=[1, 2], samples=2, asai_n=[1], diagram_n=[2])
    a = run(cfg, ["identity", "asai", "extcube"]).to_dict(timings=False)
    b = run(cfg, ["identity", "asai", "extcube"]).to_dict(timings=False)
    assert a == b


def test_parallel_matches_serial():
    cfg = RunConfig(degree=3, asai_n=[1], samples=2, ext_n=[1])
    serial = run(cfg, ["identity", "asai"]).to_dict(timings=False)["suites"]
    cfg.jobs = 2
    assert run(cfg, ["identity", "asai"]).to_dict(timings=False)["suites"] == serial


def test_crashing_suite_becomes_failure(monkeypatch):
    from extcube import cli

    def boom(cfg):
        raise RuntimeError("kaboom")
    monkeypatch.setitem(cli.SUITES, "asai", boom)
    rep = run(RunConfig(), ["asai"])
    assert not rep.ok and "kaboom" in rep.suites[0].rows[0].detail


def test_report_requires_path(capsys):
    assert main(["report"]) == 2


def test_lfactor_printing(capsys):
    assert main(["lfactor", "--kind", "inert", "--params", "a1=1", "a2=1", "a3=1", "a0=1"]) == 0
    out = capsys.readouterr().out
    assert out.count("(1 - T)") == 8 and out.count("(1 - T^2)") == 6
    assert main(["lfactor", "--kind", "split"]) == 0
    assert "(1 - a0*a1*a2*a3 T)" in capsys.readouterr().out
    assert main(["lfactor", "--kind", "split", "--params", "a9=2"]) == 2
